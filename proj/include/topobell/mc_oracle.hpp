#pragma once

#include "topobell/bell_measurement.hpp"
#include "topobell/chsh_analysis.hpp"
#include "topobell/phase_models.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

namespace topobell {

/// SplitMix64 (the Steele/Lea/Flood constants). Counter-based and splittable:
/// the k-th child stream of a seed is reproducible, so per-batch streams are
/// independent of evaluation order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Child generator seeded from the next output.
  SplitMix64 split() { return SplitMix64(next()); }

  /// The stream owned by settings-pair `index` under a root seed.
  static SplitMix64 stream(std::uint64_t seed, std::size_t index) {
    SplitMix64 root(seed);
    SplitMix64 child = root.split();
    for (std::size_t k = 0; k < index; ++k) child = root.split();
    return child;
  }

 private:
  std::uint64_t state_;
};

template <typename Scalar>
struct AnglePair {
  MeasurementSetting<Scalar> a;
  MeasurementSetting<Scalar> b;
};

/// Configuration of one sampling run. `settings` is either a single (a, b)
/// pair or a full CHSH angle set; the latter samples the four canonical
/// correlation pairs on independent streams.
template <typename Scalar>
struct SampleConfig {
  std::uint64_t seed = 0;
  std::uint64_t n_samples = 1;
  std::variant<AnglePair<Scalar>, ChshSettings<Scalar>> settings;
  PhaseModel<Scalar> model = AcModel<Scalar>{};
  Arm arm = Arm::left;
};

/// Outcome counts for one settings pair, ordered (uu, ud, du, dd).
template <typename Scalar>
struct PairCounts {
  AnglePair<Scalar> pair;
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t n_samples = 0;

  Scalar frequency(std::size_t outcome) const {
    return Scalar(counts[outcome]) / Scalar(n_samples);
  }

  /// sqrt(p^ (1 - p^) / N) of the outcome frequency.
  Scalar standard_error(std::size_t outcome) const {
    const Scalar p = frequency(outcome);
    return std::sqrt(p * (Scalar(1) - p) / Scalar(n_samples));
  }

  /// Empirical correlation (+1 for equal outcomes, -1 for opposite).
  Scalar empirical_correlation() const {
    return (Scalar(counts[0]) - Scalar(counts[1]) - Scalar(counts[2]) +
            Scalar(counts[3])) /
           Scalar(n_samples);
  }

  /// Standard error of the empirical correlation, from Var(+-1) = 1 - E^2.
  Scalar correlation_standard_error() const {
    const Scalar e = empirical_correlation();
    const Scalar var = std::max(Scalar(0), Scalar(1) - e * e);
    return std::sqrt(var / Scalar(n_samples));
  }
};

template <typename Scalar>
struct EmpiricalCounts {
  std::vector<PairCounts<Scalar>> pairs;
};

namespace detail {

/// The four correlation pairs of the CHSH combination, in its sign-pattern
/// order: (alpha, alpha'), (alpha, beta), (alpha', beta'), (beta, beta').
template <typename Scalar>
std::vector<AnglePair<Scalar>> settings_pairs(
    const std::variant<AnglePair<Scalar>, ChshSettings<Scalar>>& settings) {
  if (const auto* single = std::get_if<AnglePair<Scalar>>(&settings))
    return {*single};
  const auto& st = std::get<ChshSettings<Scalar>>(settings);
  return {{st.alpha(), st.alpha_p()},
          {st.alpha(), st.beta()},
          {st.alpha_p(), st.beta_p()},
          {st.beta(), st.beta_p()}};
}

}  // namespace detail

/// Draws n_samples i.i.d. outcomes per settings pair by inverse CDF over the
/// four analytic joint probabilities. Identical config (seed included) gives
/// bit-identical counts.
template <typename Scalar>
EmpiricalCounts<Scalar> sample_outcomes(const SampleConfig<Scalar>& cfg) {
  if (cfg.n_samples < 1)
    throw std::invalid_argument("sample_outcomes: n_samples must be >= 1");
  const State4<Scalar> state = evolve(singlet<Scalar>(), cfg.model, cfg.arm);
  const auto pairs = detail::settings_pairs(cfg.settings);

  EmpiricalCounts<Scalar> out;
  out.pairs.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto p = joint_probabilities(state, pairs[k].a, pairs[k].b);
    const double c0 = static_cast<double>(p.p_uu);
    const double c1 = c0 + static_cast<double>(p.p_ud);
    const double c2 = c1 + static_cast<double>(p.p_du);

    PairCounts<Scalar> block;
    block.pair = pairs[k];
    block.n_samples = cfg.n_samples;
    SplitMix64 gen = SplitMix64::stream(cfg.seed, k);
    for (std::uint64_t i = 0; i < cfg.n_samples; ++i) {
      const double u = gen.next_double();
      const std::size_t outcome = u < c0 ? 0 : u < c1 ? 1 : u < c2 ? 2 : 3;
      ++block.counts[outcome];
    }
    out.pairs.push_back(block);
  }
  return out;
}

template <typename Scalar>
struct EmpiricalS {
  Scalar value;
  Scalar std_error;
};

/// Empirical CHSH S: each correlation estimated from its own sample batch,
/// combined with the CHSH sign pattern, errors propagated in quadrature.
/// Requires a config carrying the four CHSH angles.
template <typename Scalar>
EmpiricalS<Scalar> empirical_s(const SampleConfig<Scalar>& cfg) {
  if (!std::holds_alternative<ChshSettings<Scalar>>(cfg.settings))
    throw std::invalid_argument("empirical_s: config must carry four CHSH angles");
  const auto counts = sample_outcomes(cfg);

  std::array<Scalar, 4> e{};
  Scalar var_sum = Scalar(0);
  for (std::size_t k = 0; k < 4; ++k) {
    e[k] = counts.pairs[k].empirical_correlation();
    const Scalar se = counts.pairs[k].correlation_standard_error();
    var_sum += se * se;
  }
  EmpiricalS<Scalar> out;
  out.value = std::abs(e[0] - e[1]) + std::abs(e[2] + e[3]);
  out.std_error = std::sqrt(var_sum);
  return out;
}

}  // namespace topobell
