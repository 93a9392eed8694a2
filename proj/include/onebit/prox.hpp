#pragma once

#include <span>

#include "onebit/numerics.hpp"

namespace onebit {

/// prox of α‖Γ·‖₁: componentwise soft threshold at α·γ_j. Ties map to 0.
void prox_weighted_l1(std::span<const double> z, double alpha, std::span<const double> gamma,
                      std::span<double> out);
Vector prox_weighted_l1(std::span<const double> z, double alpha, std::span<const double> gamma);

/// Projection onto C: clip the first m entries at 0, set the last to 1.
Vector project_c(std::span<const double> z);

/// prox of β·ι_C^*: min(z_i, 0) for i ≤ m, z_{m+1} − β for the last entry.
void prox_conj_iota_c(std::span<const double> z, double beta, std::span<double> out);
Vector prox_conj_iota_c(std::span<const double> z, double beta);

}  // namespace onebit
