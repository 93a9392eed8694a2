#include "onebit/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace onebit {

void SurrogateSpec::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("surrogate: eps must lie in (0, 1)");
}

double value(const SurrogateSpec& spec, std::span<const double> x) {
  spec.validate();
  double s = 0.0;
  if (spec.kind == SurrogateKind::mangasarian) {
    for (double v : x) s += -std::expm1(-std::abs(v) / spec.eps);
  } else {
    for (double v : x) s += std::log(std::abs(v) + spec.eps);
  }
  return s;
}

Vector weights(const SurrogateSpec& spec, std::span<const double> x) {
  spec.validate();
  Vector w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = std::abs(x[i]);
    w[i] = spec.kind == SurrogateKind::mangasarian ? std::exp(-t / spec.eps) / spec.eps
                                                   : 1.0 / (t + spec.eps);
  }
  return w;
}

Vector log_weights(const SurrogateSpec& spec, std::span<const double> x) {
  spec.validate();
  Vector w(x.size());
  const double log_eps = std::log(spec.eps);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = std::abs(x[i]);
    w[i] = spec.kind == SurrogateKind::mangasarian ? -t / spec.eps - log_eps
                                                   : -std::log(t + spec.eps);
  }
  return w;
}

Vector gamma(std::span<const double> weights) {
  if (weights.empty()) throw std::invalid_argument("gamma: empty weight vector");
  double top = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("gamma: weights must be strictly positive");
    top = std::max(top, w);
  }
  Vector g(weights.begin(), weights.end());
  for (double& v : g) v /= top;
  return g;
}

Vector gamma_from_log(std::span<const double> log_weights) {
  if (log_weights.empty()) throw std::invalid_argument("gamma: empty weight vector");
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top)) throw std::invalid_argument("gamma: non-finite log-weight");
  Vector g(log_weights.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::exp(log_weights[i] - top);
  return g;
}

}  // namespace onebit
