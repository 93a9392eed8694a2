#pragma once

#include <span>

#include "onebit/numerics.hpp"

namespace onebit {

enum class SurrogateKind { mangasarian, log_det };

/// Smooth concave ℓ0 surrogate F_ε(x) = Σ f_ε(|x_i|).
///   Mangasarian: f_ε(t) = 1 − exp(−t/ε)
///   Log-Det:     f_ε(t) = log(t + ε)
struct SurrogateSpec {
  SurrogateKind kind = SurrogateKind::log_det;
  double eps = 0.125;

  void validate() const;  // throws std::invalid_argument unless 0 < eps < 1
};

double value(const SurrogateSpec& spec, std::span<const double> x);

/// f'_ε(|x_i|) per coordinate.
Vector weights(const SurrogateSpec& spec, std::span<const double> x);

/// log f'_ε(|x_i|). Stays finite where the Mangasarian weight underflows.
Vector log_weights(const SurrogateSpec& spec, std::span<const double> x);

/// Diagonal of Γ: weights divided by their maximum. Throws on any weight <= 0.
Vector gamma(std::span<const double> weights);

/// Γ from log-weights: exp(lw_i − max lw). Entries may underflow to 0, which
/// the weighted-ℓ1 prox treats as "unpenalized".
Vector gamma_from_log(std::span<const double> log_weights);

}  // namespace onebit
