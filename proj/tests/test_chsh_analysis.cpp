#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include <cmath>

using namespace topobell;
using test_support::kPi;
using test_support::kSqrt2;
using test_support::Real;

TEST_CASE("the standard Bell angle set") {
  const auto st = bell_angles<Real>();
  const auto a = st.angles();
  CHECK(a[0] == 0.0);
  CHECK(a[1] == kPi / 4);
  CHECK(a[2] == 3 * kPi / 4);
  CHECK(a[3] == kPi / 2);
}

TEST_CASE("the singlet reaches the Tsirelson bound at the Bell angles") {
  const Real s = s_function(singlet<Real>(), bell_angles<Real>());
  CHECK(std::abs(s - 2 * kSqrt2) <= 1e-12);
}

TEST_CASE("degenerate settings collapse to 2|E|") {
  auto rng = test_support::make_rng(51);
  for (int iter = 0; iter < 200; ++iter) {
    const Real angle = test_support::random_angle(rng);
    const State4<Real> state =
        test_support::phased_singlet(test_support::uniform(rng, -4, 4));
    const ChshSettings<Real> st(angle, angle, angle, angle);
    const Real e = correlation(state, MeasurementSetting<Real>(angle),
                               MeasurementSetting<Real>(angle));
    CHECK(std::abs(s_function(state, st) - 2 * std::abs(e)) <= 1e-12);
  }
}

TEST_CASE("Bell-angle curve values") {
  CHECK(std::abs(s_bell_curve<Real>(0) - 2 * kSqrt2) <= 1e-15);
  CHECK(std::abs(s_bell_curve(kPi / 2) - kSqrt2) <= 1e-12);
  CHECK(std::abs(s_bell_curve(kPi / 3) - 3 * kSqrt2 / 2) <= 1e-12);
}

TEST_CASE("projector S at the Bell angles follows the closed-form curve") {
  Real max_dev = 0;
  const auto st = bell_angles<Real>();
  for (int i = 0; i < 1024; ++i) {
    const Real delta = 2 * kPi * i / 1024;
    const State4<Real> state =
        evolve(singlet<Real>(), PhaseModel<Real>(AcModel<Real>{1, delta / 2}), Arm::left);
    max_dev = std::max(max_dev, std::abs(s_function(state, st) - s_bell_curve(delta)));
    max_dev = std::max(max_dev, std::abs(s_closed_form(st, delta) - s_bell_curve(delta)));
  }
  CHECK(max_dev <= 1e-12);
}

TEST_CASE("the Bell-angle curve has period pi") {
  Real max_dev = 0;
  for (int i = 0; i < 1024; ++i) {
    const Real delta = 2 * kPi * i / 1024;
    max_dev = std::max(max_dev, std::abs(s_bell_curve(delta) - s_bell_curve(delta + kPi)));
  }
  CHECK(max_dev <= 1e-12);
}

TEST_CASE("S never exceeds the Tsirelson bound") {
  auto rng = test_support::make_rng(52);
  Real max_s = 0;
  for (int iter = 0; iter < 100000; ++iter) {
    const ChshSettings<Real> st(test_support::random_angle(rng),
                                test_support::random_angle(rng),
                                test_support::random_angle(rng),
                                test_support::random_angle(rng));
    max_s = std::max(max_s, s_closed_form(st, test_support::uniform(rng, -7, 7)));
  }
  CHECK(max_s <= 2 * kSqrt2 + 1e-9);

  Real max_s_projector = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    const State4<Real> state = evolve(singlet<Real>(), test_support::random_model(rng),
                                      test_support::random_arm(rng));
    const ChshSettings<Real> st(test_support::random_angle(rng),
                                test_support::random_angle(rng),
                                test_support::random_angle(rng),
                                test_support::random_angle(rng));
    max_s_projector = std::max(max_s_projector, s_function(state, st));
  }
  CHECK(max_s_projector <= 2 * kSqrt2 + 1e-9);
}

TEST_CASE("optimizer recovers the Tsirelson bound at zero phase") {
  const auto report = maximize_s(PhaseModel<Real>(AcModel<Real>{1, 0}), Arm::left);
  CHECK(std::abs(report.s_value - 2 * kSqrt2) <= 1e-6);
  CHECK(report.method == SMethod::optimized);
  CHECK(report.phase == 0.0);
}

TEST_CASE("optimizer finds the classical ceiling at delta = pi/2") {
  const auto report =
      maximize_s(PhaseModel<Real>(AcModel<Real>{1, kPi / 4}), Arm::left);
  CHECK(std::abs(report.s_value - 2.0) <= 1e-6);
}

TEST_CASE("optimizer beats the Bell-angle value at intermediate phases") {
  const auto report =
      maximize_s(PhaseModel<Real>(AcModel<Real>{1, kPi / 6}), Arm::left);
  CHECK(report.s_value > s_bell_curve(kPi / 3) + 0.05);
}

TEST_CASE("optimizer dominates the Bell-angle curve and respects the bound") {
  for (int i = 0; i < 17; ++i) {
    const Real delta = 2 * kPi * i / 17;
    const auto report =
        maximize_s(PhaseModel<Real>(AcModel<Real>{1, delta / 2}), Arm::left);
    CHECK(report.s_value >= s_bell_curve(delta) - 1e-9);
    CHECK(report.s_value <= 2 * kSqrt2 + 1e-9);
    CHECK(report.s_value >= 0);
  }
}

TEST_CASE("optimizer output is flat across AB phases") {
  Real lo = 10, hi = 0;
  for (int i = 0; i < 32; ++i) {
    const Real phase = 2 * kPi * i / 32;
    const auto report = maximize_s(PhaseModel<Real>(AbModel<Real>{1, phase}), Arm::left);
    lo = std::min(lo, report.s_value);
    hi = std::max(hi, report.s_value);
  }
  CHECK(hi - lo < 1e-6);
  CHECK(std::abs(hi - 2 * kSqrt2) <= 1e-6);
}

TEST_CASE("optimizer is deterministic") {
  const PhaseModel<Real> model = AcModel<Real>{1, 0.37};
  const auto first = maximize_s(model, Arm::left);
  const auto second = maximize_s(model, Arm::left);
  CHECK(first.s_value == second.s_value);
  CHECK(first.settings.angles() == second.settings.angles());
}

TEST_CASE("optimizer validates its resolution parameters") {
  const PhaseModel<Real> model = AcModel<Real>{1, 0};
  CHECK_THROWS_AS((void)maximize_s(model, Arm::left, 7, 40), std::invalid_argument);
  CHECK_THROWS_AS((void)maximize_s(model, Arm::left, 24, 0), std::invalid_argument);
}

TEST_CASE("duality summary ties the three effects together") {
  const auto at_zero = duality_summary<Real>(0);
  CHECK(std::abs(at_zero.ab - 2 * kSqrt2) <= 1e-12);
  CHECK(std::abs(at_zero.ac - 2 * kSqrt2) <= 1e-12);
  CHECK(at_zero.ac == at_zero.berry_reduced);

  const auto at_quarter = duality_summary(kPi / 2);
  CHECK(std::abs(at_quarter.ab - 2 * kSqrt2) <= 1e-12);
  CHECK(std::abs(at_quarter.ac - kSqrt2) <= 1e-12);
  CHECK(at_quarter.ac == at_quarter.berry_reduced);

  const auto at_pi = duality_summary(kPi);
  CHECK(std::abs(at_pi.ac - 2 * kSqrt2) <= 1e-12);
  CHECK(std::abs(at_pi.berry_reduced - 2 * kSqrt2) <= 1e-12);
}
