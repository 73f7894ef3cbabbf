// Closed-form scaling laws: achievable orders, TDM benchmark, alternative
// single-scale profiles, and the converse caps.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isac/analytic.hpp"
#include "isac/errors.hpp"

using namespace isac;

TEST_CASE("highway scheme exponents") {
  const OrderExponents e = theorem1_exponents(0.6, 3.0, 2.0);
  CHECK(e.lambda_exponent == doctest::Approx(-0.7).epsilon(1e-15));
  CHECK(e.d_exponent == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_FALSE(e.lambda_has_log);

  const OrderExponents z = theorem1_exponents(0.0, 3.0, 2.0);
  CHECK(z.lambda_exponent == doctest::Approx(-0.5));
  CHECK(z.d_exponent == 0.0);

  // The boundary gamma = alpha_c/2 is admissible; beyond it is not.
  CHECK_NOTHROW(theorem1_exponents(1.5, 3.0, 2.0));
  CHECK_THROWS_AS(theorem1_exponents(1.6, 3.0, 2.0), ConfigError);
  CHECK_THROWS_AS(theorem1_exponents(-0.1, 3.0, 2.0), ConfigError);
  CHECK_THROWS_AS(theorem1_exponents(0.5, 2.0, 2.0), ConfigError);
  CHECK_THROWS_AS(theorem1_exponents(0.5, 3.0, 0.0), ConfigError);
}

TEST_CASE("TDM exponents cover the three power regimes") {
  const TdmOrder sub = tdm_exponents(1.0, 3.0, 2.0);
  CHECK(sub.regime == "subcritical");
  CHECK(sub.lambda_exponent == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK_FALSE(sub.lambda_has_log);
  CHECK(sub.d_exponent == doctest::Approx(0.5));

  const TdmOrder crit = tdm_exponents(1.5, 3.0, 2.0);
  CHECK(crit.regime == "critical");
  CHECK(crit.lambda_exponent == -1.0);
  CHECK_FALSE(crit.lambda_has_log);

  const TdmOrder sup = tdm_exponents(2.0, 3.0, 2.0);
  CHECK(sup.regime == "supercritical");
  CHECK(sup.lambda_exponent == -1.0);
  CHECK(sup.lambda_has_log);
  CHECK(sup.d_exponent == doctest::Approx(1.0));

  CHECK_THROWS_AS(tdm_exponents(-0.1, 3.0, 2.0), ConfigError);
}

TEST_CASE("TDM finite-n value matches each branch") {
  CHECK(tdm_lambda_value(1e8, 1.0, 3.0) == doctest::Approx(1e-12).epsilon(1e-12));
  CHECK(tdm_lambda_value(1e8, 1.5, 3.0) == doctest::Approx(1e-8).epsilon(1e-12));
  CHECK(tdm_lambda_value(1e8, 2.0, 3.0) ==
        doctest::Approx(2.0 * std::log(1e8) / 1e8).epsilon(1e-12));
  CHECK_THROWS_AS(tdm_lambda_value(1.0, 1.0, 3.0), ConfigError);
  CHECK_THROWS_AS(tdm_lambda_value(1e8, 1.0, 2.0), ConfigError);
}

TEST_CASE("exponential transmit power pins TDM at n^-1/2") {
  CHECK(tdm_exponential_power_lambda_exponent() == -0.5);
}

TEST_CASE("alternative profile orders and regime classification") {
  // f1 grows faster than (f2 f3)^alpha_c: regime 1.
  const AlternativeOrder r1 =
      alternative_exponents({0.9, 0.1, 0.1}, 3.0, 2.0);
  CHECK(r1.regime == '1');
  CHECK(r1.lambda_exponent == doctest::Approx(-0.8).epsilon(1e-15));
  CHECK(r1.lambda_strict_exponent == doctest::Approx(-0.7).epsilon(1e-15));
  CHECK(r1.lambda_has_log);  // growing slot count contributes log f3
  CHECK(r1.d_exponent == doctest::Approx(0.3).epsilon(1e-12));

  // Boundary a1 = alpha_c*(a2+a3) classifies as regime 2.
  const AlternativeOrder r2 =
      alternative_exponents({0.9, 0.2, 0.1}, 3.0, 2.0);
  CHECK(r2.regime == '2');
  CHECK(r2.lambda_exponent == doctest::Approx(-0.9).epsilon(1e-15));
  CHECK(r2.lambda_has_log);
  CHECK(r2.d_exponent == doctest::Approx(0.45).epsilon(1e-12));

  // Constant slot count in regime 1 carries no log factor.
  const AlternativeOrder r3 =
      alternative_exponents({0.3, 0.0, 0.0}, 3.0, 2.0);
  CHECK(r3.regime == '1');
  CHECK_FALSE(r3.lambda_has_log);
  CHECK(r3.lambda_exponent == doctest::Approx(-0.5));
  CHECK(r3.d_exponent == 0.0);
}

TEST_CASE("alternative profile validation") {
  CHECK_THROWS_AS(alternative_exponents({0.0, 0.1, 0.1}, 3.0, 2.0),
                  ConfigError);
  // a2 >= a1/alpha_c.
  CHECK_THROWS_AS(alternative_exponents({0.3, 0.15, 0.0}, 3.0, 2.0),
                  ConfigError);
  // a2 >= 1/2.
  CHECK_THROWS_AS(alternative_exponents({2.0, 0.5, 0.0}, 3.0, 2.0),
                  ConfigError);
  // a3 >= 1/2.
  CHECK_THROWS_AS(alternative_exponents({0.9, 0.1, 0.5}, 3.0, 2.0),
                  ConfigError);
  // a2 + a3 > 1/2: cells would outgrow the deployment square.
  CHECK_THROWS_AS(alternative_exponents({1.6, 0.3, 0.3}, 3.0, 2.0),
                  ConfigError);
}

TEST_CASE("alternative profiles are weakly dominated by the highway scheme") {
  CHECK(dominated_by_theorem1(alternative_exponents({0.9, 0.1, 0.1}, 3.0, 2.0),
                              3.0, 2.0));
  CHECK(dominated_by_theorem1(alternative_exponents({0.9, 0.2, 0.1}, 3.0, 2.0),
                              3.0, 2.0));
  // Equal powers with no log factor: a tie still counts as dominated.
  const AlternativeOrder tie =
      alternative_exponents({0.6, 0.1, 0.0}, 3.0, 2.0);
  CHECK(tie.lambda_exponent == doctest::Approx(-0.6).epsilon(1e-15));
  CHECK(dominated_by_theorem1(tie, 3.0, 2.0));

  // A sensing exponent beyond the admissible gamma window cannot be matched.
  AlternativeOrder unreachable;
  unreachable.d_exponent = 2.0;  // would need gamma = 4 > alpha_c/2
  unreachable.lambda_exponent = -0.1;
  CHECK_FALSE(dominated_by_theorem1(unreachable, 3.0, 2.0));
}

TEST_CASE("converse constants") {
  CHECK(converse_delta(8.0, 3.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(converse_delta(1.0, 3.0), ConfigError);
  CHECK_THROWS_AS(converse_delta(8.0, 2.0), ConfigError);

  CHECK(converse_max_transmissions(1e4, 1.0, 10.0) == doctest::Approx(1600.0));
  CHECK_THROWS_AS(converse_max_transmissions(1e4, 1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(converse_max_transmissions(1e4, 0.0, 10.0), ConfigError);

  CHECK(converse_lambda_upper(1.0, 1.0, 10.0, 100.0) ==
        doctest::Approx(0.016).epsilon(1e-12));
  CHECK_THROWS_AS(converse_lambda_upper(0.0, 1.0, 10.0, 100.0), ConfigError);
}

TEST_CASE("converse exponents coincide with the scheme at r_n = n^(gamma/alpha_c)") {
  // Dyadic gamma grid keeps gamma/alpha_c exact, so equality is bitwise.
  for (int k = 0; k <= 128; ++k) {
    const double gamma = 3.0 * k / 256.0;
    const OrderExponents th = theorem1_exponents(gamma, 3.0, 2.0);
    const OrderExponents cv = converse_exponents(gamma / 3.0, 3.0, 2.0);
    CHECK(th.lambda_exponent == cv.lambda_exponent);
    CHECK(th.d_exponent == cv.d_exponent);
  }
  CHECK_THROWS_AS(converse_exponents(-0.01, 3.0, 2.0), ConfigError);
}

TEST_CASE("converse trade-off point and connectivity window") {
  const ConverseTradeoff t =
      converse_tradeoff(10.0, 1e4, 3.0, 2.0, 1.0, 8.0, 100.0, 0.1, 2.0);
  CHECK(t.lambda_upper == doctest::Approx(0.016).epsilon(1e-12));
  CHECK(t.d_upper == doctest::Approx(31.622776601683793).epsilon(1e-12));

  // Range below c1*sqrt(log n) or above c2*sqrt(n) is rejected.
  CHECK_THROWS_AS(
      converse_tradeoff(0.2, 1e4, 3.0, 2.0, 1.0, 8.0, 100.0, 0.1, 2.0),
      DomainError);
  CHECK_THROWS_AS(
      converse_tradeoff(201.0, 1e4, 3.0, 2.0, 1.0, 8.0, 100.0, 0.1, 2.0),
      DomainError);
}

TEST_CASE("trade-off curve evaluates both schemes at finite n") {
  const std::vector<CurvePoint> curve =
      tradeoff_curve(1e8, {0.3}, 3.0, 2.0);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].scheme == "proposed");
  CHECK(curve[0].lambda_order ==
        doctest::Approx(std::pow(10.0, -4.8)).epsilon(1e-12));
  CHECK(curve[0].d_order ==
        doctest::Approx(std::pow(10.0, 1.2)).epsilon(1e-12));
  CHECK(curve[1].scheme == "tdm");
  CHECK(curve[1].lambda_order ==
        doctest::Approx(std::pow(10.0, -17.6)).epsilon(1e-12));
  CHECK(curve[1].d_order == doctest::Approx(std::pow(10.0, 1.2)).epsilon(1e-12));

  // Once gamma reaches alpha_c/2 the proposed scheme drops out
  // (alpha_c = 2.4 puts the cutoff at 1.2, inside the grid cap).
  const std::vector<CurvePoint> edge =
      tradeoff_curve(1e8, {1.25}, 2.4, 2.0);
  REQUIRE(edge.size() == 1);
  CHECK(edge[0].scheme == "tdm");

  CHECK_THROWS_AS(tradeoff_curve(1e8, {0.0}, 3.0, 2.0), ConfigError);
  CHECK_THROWS_AS(tradeoff_curve(1e8, {1.3}, 3.0, 2.0), ConfigError);
  CHECK_THROWS_AS(tradeoff_curve(1.0, {0.3}, 3.0, 2.0), ConfigError);
}
