#pragma once

#include "topobell/bell_measurement.hpp"
#include "topobell/phase_models.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace topobell {

/// The four CHSH measurement angles (alpha, beta, alpha', beta'), each
/// canonicalized to [0, 2pi).
template <typename Scalar>
class ChshSettings {
 public:
  ChshSettings() = default;
  ChshSettings(Scalar alpha, Scalar beta, Scalar alpha_p, Scalar beta_p)
      : alpha_(alpha), beta_(beta), alpha_p_(alpha_p), beta_p_(beta_p) {}

  const MeasurementSetting<Scalar>& alpha() const { return alpha_; }
  const MeasurementSetting<Scalar>& beta() const { return beta_; }
  const MeasurementSetting<Scalar>& alpha_p() const { return alpha_p_; }
  const MeasurementSetting<Scalar>& beta_p() const { return beta_p_; }

  std::array<Scalar, 4> angles() const {
    return {alpha_.angle(), beta_.angle(), alpha_p_.angle(), beta_p_.angle()};
  }

 private:
  MeasurementSetting<Scalar> alpha_, beta_, alpha_p_, beta_p_;
};

/// The standard maximal-violation angle set (0, pi/4, 3pi/4, pi/2).
template <typename Scalar>
ChshSettings<Scalar> bell_angles() {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return ChshSettings<Scalar>(Scalar(0), pi / 4, 3 * pi / 4, pi / 2);
}

enum class SMethod { closed_form, projector, optimized };

template <typename Scalar>
struct ViolationReport {
  Scalar s_value = Scalar(0);
  ChshSettings<Scalar> settings;
  Scalar phase = Scalar(0);  // composite phase of the model under study
  SMethod method = SMethod::projector;
};

/// CHSH combination
///   S = |E(alpha, alpha') - E(alpha, beta)| + |E(alpha', beta') + E(beta, beta')|
/// with correlations from the projector pipeline. Bounded by 2 sqrt2.
template <typename Scalar>
Scalar s_function(const State4<Scalar>& state, const ChshSettings<Scalar>& st) {
  const Scalar e_aap = correlation(state, st.alpha(), st.alpha_p());
  const Scalar e_ab = correlation(state, st.alpha(), st.beta());
  const Scalar e_apbp = correlation(state, st.alpha_p(), st.beta_p());
  const Scalar e_bbp = correlation(state, st.beta(), st.beta_p());
  return std::abs(e_aap - e_ab) + std::abs(e_apbp + e_bbp);
}

/// Same combination evaluated from the closed-form correlations of the
/// evolved singlet with relative phase delta.
template <typename Scalar>
Scalar s_closed_form(const ChshSettings<Scalar>& st, Scalar delta) {
  const Scalar e_aap = correlation_closed_form(st.alpha(), st.alpha_p(), delta);
  const Scalar e_ab = correlation_closed_form(st.alpha(), st.beta(), delta);
  const Scalar e_apbp = correlation_closed_form(st.alpha_p(), st.beta_p(), delta);
  const Scalar e_bbp = correlation_closed_form(st.beta(), st.beta_p(), delta);
  return std::abs(e_aap - e_ab) + std::abs(e_apbp + e_bbp);
}

/// S at the standard Bell angles as a function of the relative phase:
/// sqrt2 + sqrt2 |cos delta|.
template <typename Scalar>
Scalar s_bell_curve(Scalar delta) {
  const Scalar r2 = std::numbers::sqrt2_v<Scalar>;
  return r2 + r2 * std::abs(std::cos(delta));
}

namespace detail {

template <typename Scalar>
Scalar s_from_correlations(Scalar e_aap, Scalar e_ab, Scalar e_apbp, Scalar e_bbp) {
  return std::abs(e_aap - e_ab) + std::abs(e_apbp + e_bbp);
}

}  // namespace detail

/// Deterministic maximization of S over the four angles for the evolved
/// singlet of the given model. An exhaustive scan of a uniform
/// grid_resolution^4 grid on [0, 2pi)^4 seeds `refinement_iters` rounds of
/// window-halving coordinate search (initial window one grid step, shrink
/// factor 0.5). Ties keep the lexicographically smallest angle tuple, so the
/// result is independent of evaluation order.
template <typename Scalar>
ViolationReport<Scalar> maximize_s(const PhaseModel<Scalar>& model, Arm arm,
                                   int grid_resolution = 24,
                                   int refinement_iters = 40) {
  if (grid_resolution < 8)
    throw std::invalid_argument("maximize_s: grid_resolution must be >= 8");
  if (refinement_iters < 1)
    throw std::invalid_argument("maximize_s: refinement_iters must be >= 1");

  const State4<Scalar> state = evolve(singlet<Scalar>(), model, arm);
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  const Scalar step = two_pi / Scalar(grid_resolution);
  const int n = grid_resolution;

  std::vector<Scalar> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = Scalar(i) * step;

  // Correlations only depend on pairs of angles, so the n^4 scan runs off an
  // n^2 table.
  std::vector<Scalar> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<std::size_t>(i) * n + j] =
          correlation(state, MeasurementSetting<Scalar>(grid[i]),
                      MeasurementSetting<Scalar>(grid[j]));
  const auto corr = [&](int i, int j) {
    return table[static_cast<std::size_t>(i) * n + j];
  };

  Scalar best_s = Scalar(-1);
  std::array<int, 4> best{0, 0, 0, 0};
  for (int ia = 0; ia < n; ++ia)
    for (int ib = 0; ib < n; ++ib)
      for (int iap = 0; iap < n; ++iap)
        for (int ibp = 0; ibp < n; ++ibp) {
          const Scalar s = detail::s_from_correlations(
              corr(ia, iap), corr(ia, ib), corr(iap, ibp), corr(ib, ibp));
          if (s > best_s) {
            best_s = s;
            best = {ia, ib, iap, ibp};
          }
        }

  const auto evaluate = [&](const std::array<Scalar, 4>& x) {
    const ChshSettings<Scalar> st(x[0], x[1], x[2], x[3]);
    return s_function(state, st);
  };

  std::array<Scalar, 4> x{grid[best[0]], grid[best[1]], grid[best[2]], grid[best[3]]};
  best_s = evaluate(x);
  Scalar window = step;
  for (int iter = 0; iter < refinement_iters; ++iter) {
    for (int c = 0; c < 4; ++c) {
      for (const Scalar candidate : {x[c] - window, x[c] + window}) {
        std::array<Scalar, 4> y = x;
        y[c] = MeasurementSetting<Scalar>::canonicalize(candidate);
        const Scalar s = evaluate(y);
        if (s > best_s) {
          best_s = s;
          x = y;
        }
      }
    }
    window *= Scalar(0.5);
  }

  ViolationReport<Scalar> report;
  report.s_value = best_s;
  report.settings = ChshSettings<Scalar>(x[0], x[1], x[2], x[3]);
  report.phase = composite_phase(model);
  report.method = SMethod::optimized;
  return report;
}

template <typename Scalar>
struct DualitySummary {
  Scalar ab;
  Scalar ac;
  Scalar berry_reduced;
};

/// S at the standard Bell angles for the AB, AC, and reduced-Berry models
/// built from one phase parameter delta. The AC and reduced-Berry entries are
/// equal by construction (their component phases coincide bit for bit) and
/// the AB entry stays at 2 sqrt2 for every delta; both facts are re-checked
/// here.
template <typename Scalar>
DualitySummary<Scalar> duality_summary(Scalar delta) {
  const auto st = bell_angles<Scalar>();
  const auto s_of = [&](const PhaseModel<Scalar>& model) {
    return s_function(evolve(singlet<Scalar>(), model, Arm::left), st);
  };
  DualitySummary<Scalar> out;
  out.ab = s_of(AbModel<Scalar>{Scalar(1), delta});
  out.ac = s_of(AcModel<Scalar>{Scalar(1), delta / Scalar(2)});
  out.berry_reduced = s_of(BerryReducedModel<Scalar>{delta});
  if (out.ac != out.berry_reduced)
    throw std::logic_error("duality_summary: AC and reduced-Berry values diverged");
  const Scalar two_r2 = Scalar(2) * std::numbers::sqrt2_v<Scalar>;
  if (std::abs(out.ab - two_r2) > Scalar(1e-12))
    throw std::logic_error("duality_summary: AB value moved away from 2 sqrt2");
  return out;
}

}  // namespace topobell
