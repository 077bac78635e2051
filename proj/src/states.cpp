// Copyright 2026 The thermoent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermoent/states.hpp"

#include <cmath>
#include <sstream>

#include "thermoent/errors.hpp"

namespace thermoent {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  }
}

void check_tail(double tail, double tolerance, const std::string& what, int dim) {
  if (tail >= tolerance) {
    std::ostringstream msg;
    msg << what << ": dimension " << dim << " discards probability " << tail
        << " (tolerance " << tolerance << ")";
    throw TruncationError(msg.str());
  }
}

std::vector<double> poisson_weights(double mean, int dim) {
  std::vector<double> p(static_cast<std::size_t>(dim));
  const double log_mean = mean > 0.0 ? std::log(mean) : 0.0;
  for (int n = 0; n < dim; ++n) {
    if (mean == 0.0) {
      p[n] = n == 0 ? 1.0 : 0.0;
    } else {
      p[n] = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    }
  }
  return p;
}

Matrix diagonal_state(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const auto n = static_cast<Index>(weights.size());
  Matrix m = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) m(k, k) = weights[k] / total;
  return m;
}

}  // namespace

double ThermalSpec::resolve() const {
  const bool has_temp = temperature.has_value() || frequency.has_value();
  if (nbar.has_value() == has_temp) {
    throw InvalidArgument("thermal state needs exactly one of nbar or (temperature, frequency)");
  }
  if (nbar) {
    if (!(*nbar >= 0.0) || !std::isfinite(*nbar)) throw InvalidArgument("nbar must be >= 0");
    return *nbar;
  }
  if (!temperature || !frequency) {
    throw InvalidArgument("thermal state needs both temperature and frequency");
  }
  return nbar_from_temperature(*temperature, *frequency);
}

double QubitThermalSpec::resolve() const {
  const bool has_temp = temperature.has_value() || frequency.has_value();
  if (pe.has_value() == has_temp) {
    throw InvalidArgument("thermal qubit needs exactly one of pe or (temperature, frequency)");
  }
  if (pe) {
    if (!(*pe >= 0.0 && *pe <= 1.0)) throw InvalidArgument("pe must lie in [0, 1]");
    return *pe;
  }
  if (!temperature || !frequency) {
    throw InvalidArgument("thermal qubit needs both temperature and frequency");
  }
  return pe_from_temperature(*temperature, *frequency);
}

double nbar_from_temperature(double temperature, double omega) {
  require_positive(temperature, "temperature");
  require_positive(omega, "frequency");
  const double x = kHbar * omega / (kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

double pe_from_temperature(double temperature, double omega_int) {
  require_positive(temperature, "temperature");
  require_positive(omega_int, "frequency");
  const double x = kHbar * omega_int / (kBoltzmann * temperature);
  // exp(-x) / (exp(-x) + 1) written to avoid overflow at large x.
  const double e = std::exp(-x);
  return e / (e + 1.0);
}

double thermal_tail(double nbar, int dim) {
  if (nbar < 0.0) throw InvalidArgument("nbar must be >= 0");
  if (dim <= 0) return 1.0;
  if (nbar == 0.0) return 0.0;
  return std::exp(dim * std::log(nbar / (1.0 + nbar)));
}

double poisson_tail(double mean, int dim) {
  if (mean < 0.0) throw InvalidArgument("Poisson mean must be >= 0");
  if (dim <= 0) return 1.0;
  if (mean == 0.0) return 0.0;
  // Sum the tail directly; 1 - head loses all precision near the tolerance.
  double total = 0.0;
  const double log_mean = std::log(mean);
  for (int n = dim;; ++n) {
    const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    total += term;
    if (n > mean && term < 1e-18 * total) break;
    if (term == 0.0 && n > mean) break;
  }
  return total;
}

DensityMatrix thermal_oscillator(double nbar, int dim, std::string label, double tail_tolerance) {
  if (dim < 2) throw InvalidArgument("mode dimension must be >= 2");
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw InvalidArgument("nbar must be >= 0");
  check_tail(thermal_tail(nbar, dim), tail_tolerance, "thermal state", dim);
  std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
  if (nbar == 0.0) {
    p[0] = 1.0;
  } else {
    const double log_ratio = std::log(nbar / (1.0 + nbar));
    for (int n = 0; n < dim; ++n) p[n] = std::exp(n * log_ratio) / (1.0 + nbar);
  }
  return {HilbertSpace::mode(std::move(label), dim), diagonal_state(p)};
}

DensityMatrix thermal_qubit(double pe, std::string label) {
  if (!(pe >= 0.0 && pe <= 1.0)) throw InvalidArgument("pe must lie in [0, 1]");
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 - pe;
  m(1, 1) = pe;
  return {HilbertSpace::qubit(std::move(label)), std::move(m)};
}

DensityMatrix fock_state(int n, int dim, std::string label) {
  if (dim < 2) throw InvalidArgument("mode dimension must be >= 2");
  if (n < 0 || n >= dim) throw InvalidArgument("Fock level outside the truncated space");
  Matrix m = Matrix::Zero(dim, dim);
  m(n, n) = 1.0;
  return {HilbertSpace::mode(std::move(label), dim), std::move(m)};
}

DensityMatrix coherent_state(Complex alpha, int dim, std::string label, double tail_tolerance) {
  if (dim < 2) throw InvalidArgument("mode dimension must be >= 2");
  const double mean = std::norm(alpha);
  check_tail(poisson_tail(mean, dim), tail_tolerance, "coherent state", dim);
  Vector c(dim);
  c(0) = std::exp(-0.5 * mean);
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return DensityMatrix::pure(HilbertSpace::mode(std::move(label), dim), c);
}

DensityMatrix phase_randomized_coherent(double alpha_abs, int dim, std::string label,
                                        double tail_tolerance) {
  if (dim < 2) throw InvalidArgument("mode dimension must be >= 2");
  if (!(alpha_abs >= 0.0) || !std::isfinite(alpha_abs)) {
    throw InvalidArgument("|alpha| must be >= 0");
  }
  const double mean = alpha_abs * alpha_abs;
  check_tail(poisson_tail(mean, dim), tail_tolerance, "phase-randomized coherent state", dim);
  return {HilbertSpace::mode(std::move(label), dim), diagonal_state(poisson_weights(mean, dim))};
}

DensityMatrix compose(const std::vector<DensityMatrix>& parts) {
  if (parts.empty()) throw InvalidArgument("compose needs at least one state");
  HilbertSpace space = parts.front().space();
  Matrix m = parts.front().matrix();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    space = space.tensor(parts[k].space());
    m = kron(m, parts[k].matrix());
  }
  return {std::move(space), std::move(m)};
}

double mean_occupation(const DensityMatrix& rho) {
  if (rho.space().size() != 1) throw InvalidArgument("mean occupation needs a single-mode state");
  double total = 0.0;
  for (Index n = 0; n < rho.dim(); ++n) total += static_cast<double>(n) * rho.matrix()(n, n).real();
  return total;
}

}  // namespace thermoent
