#include "isac/fading.hpp"

#include <algorithm>
#include <cmath>

#include "isac/errors.hpp"

namespace isac {

FadingSpec FadingSpec::none() { return FadingSpec{}; }

FadingSpec FadingSpec::exponential() {
  FadingSpec s;
  s.model = FadingModel::Exponential;
  s.q0 = 1.0;
  s.q1 = 1.0;
  s.g0 = 0.0;
  return s;
}

FadingSpec FadingSpec::nakagami(double m) {
  if (!(m >= 0.5)) throw ConfigError("nakagami shape m must be >= 0.5");
  FadingSpec s;
  s.model = FadingModel::Nakagami;
  s.m = m;
  // Conservative exponential tail envelope for Gamma(m, 1/m): rate m/2
  // leaves headroom for the polynomial prefactor.
  s.q1 = m / 2.0;
  s.q0 = std::pow(2.0, m);
  s.g0 = std::max(0.0, 2.0 * (1.0 - 1.0 / m));
  return s;
}

FadingSpec FadingSpec::rician(double K) {
  if (!(K >= 0.0)) throw ConfigError("rician K must be >= 0");
  FadingSpec s;
  s.model = FadingModel::Rician;
  s.K = K;
  s.q1 = (1.0 + K) / 2.0;
  s.q0 = std::exp(K);
  s.g0 = 0.0;
  return s;
}

FadingModel fading_model_from_string(const std::string& name) {
  if (name == "none") return FadingModel::None;
  if (name == "exponential") return FadingModel::Exponential;
  if (name == "nakagami") return FadingModel::Nakagami;
  if (name == "rician") return FadingModel::Rician;
  throw ConfigError("unknown fading model: " + name);
}

std::string to_string(FadingModel model) {
  switch (model) {
    case FadingModel::None: return "none";
    case FadingModel::Exponential: return "exponential";
    case FadingModel::Nakagami: return "nakagami";
    case FadingModel::Rician: return "rician";
  }
  return "none";
}

double sample_fading(const FadingSpec& spec, SmallRng& rng) {
  switch (spec.model) {
    case FadingModel::None:
      return 1.0;
    case FadingModel::Exponential:
      return rng.exponential();
    case FadingModel::Nakagami:
      // Unit-mean power gain: Gamma(shape m, scale 1/m).
      return rng.gamma(spec.m, 1.0 / spec.m);
    case FadingModel::Rician: {
      // |h|^2 with h = sqrt(K/(K+1)) + CN(0, 1/(K+1)); E|h|^2 = 1.
      const double s = std::sqrt(spec.K / (spec.K + 1.0));
      const double sd = std::sqrt(0.5 / (spec.K + 1.0));
      const double re = s + sd * rng.normal();
      const double im = sd * rng.normal();
      return re * re + im * im;
    }
  }
  return 1.0;
}

double FadingField::gain(int a, int b) const {
  if (spec_.model == FadingModel::None) return 1.0;
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  SmallRng rng(derive_seed(seed_, 0x67616a6eULL, lo, hi));  // "gain"
  return sample_fading(spec_, rng);
}

}  // namespace isac
