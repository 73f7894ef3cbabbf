#pragma once
#include <cstdint>
#include <string>

#include "isac/rng.hpp"

namespace isac {

enum class FadingModel { None, Exponential, Nakagami, Rician };

// Quasi-static unit-mean power-fading description plus the exponential tail
// envelope parameters P[g > x] <= q0 * exp(-q1 * x) for x >= g0 used by the
// analytic feasibility checks.
struct FadingSpec {
  FadingModel model = FadingModel::None;
  double m = 1.0;  // Nakagami shape (>= 0.5)
  double K = 0.0;  // Rician K-factor (>= 0)
  double q0 = 1.0;
  double q1 = 1.0;
  double g0 = 0.0;

  static FadingSpec none();
  static FadingSpec exponential();
  static FadingSpec nakagami(double m);
  static FadingSpec rician(double K);
};

FadingModel fading_model_from_string(const std::string& name);
std::string to_string(FadingModel model);

// One draw of the unit-mean power gain.
double sample_fading(const FadingSpec& spec, SmallRng& rng);

// Deterministic quasi-static gain field: the gain for an unordered node pair
// is a pure function of (instance seed, min id, max id), so reciprocity
// g(a,b) == g(b,a) holds by construction and repeated queries always agree.
class FadingField {
 public:
  FadingField(const FadingSpec& spec, std::uint64_t instance_seed)
      : spec_(spec), seed_(instance_seed) {}

  const FadingSpec& spec() const { return spec_; }

  double gain(int a, int b) const;

 private:
  FadingSpec spec_;
  std::uint64_t seed_;
};

}  // namespace isac
