#include "onebit/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace onebit {

void prox_weighted_l1(std::span<const double> z, double alpha, std::span<const double> gamma,
                      std::span<double> out) {
  if (z.size() != gamma.size() || z.size() != out.size())
    throw std::invalid_argument("prox_weighted_l1: dimension mismatch");
  if (!(alpha > 0.0)) throw std::invalid_argument("prox_weighted_l1: alpha must be positive");
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double shrunk = std::abs(z[j]) - alpha * gamma[j];
    out[j] = shrunk > 0.0 ? std::copysign(shrunk, z[j]) : 0.0;
  }
}

Vector prox_weighted_l1(std::span<const double> z, double alpha, std::span<const double> gamma) {
  Vector out(z.size());
  prox_weighted_l1(z, alpha, gamma, out);
  return out;
}

Vector project_c(std::span<const double> z) {
  if (z.size() < 2) throw std::invalid_argument("project_c: need length >= 2");
  Vector out(z.begin(), z.end());
  for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = std::max(out[i], 0.0);
  out.back() = 1.0;
  return out;
}

void prox_conj_iota_c(std::span<const double> z, double beta, std::span<double> out) {
  if (z.size() < 2 || out.size() != z.size())
    throw std::invalid_argument("prox_conj_iota_c: bad dimensions");
  if (!(beta > 0.0)) throw std::invalid_argument("prox_conj_iota_c: beta must be positive");
  const std::size_t m = z.size() - 1;
  for (std::size_t i = 0; i < m; ++i) out[i] = std::min(z[i], 0.0);
  out[m] = z[m] - beta;
}

Vector prox_conj_iota_c(std::span<const double> z, double beta) {
  Vector out(z.size());
  prox_conj_iota_c(z, beta, out);
  return out;
}

}  // namespace onebit
