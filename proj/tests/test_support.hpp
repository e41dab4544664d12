#pragma once

// Shared helpers for the unit tests: seeded generators for angles, states,
// Hermitian matrices, and phase models.

#include "topobell/topobell.hpp"

#include <cstdint>
#include <numbers>
#include <random>

namespace test_support {

using Real = double;
using C = topobell::Complex<Real>;

constexpr Real kPi = std::numbers::pi_v<Real>;
constexpr Real kSqrt2 = std::numbers::sqrt2_v<Real>;

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Real uniform(std::mt19937_64& rng, Real lo, Real hi) {
  return std::uniform_real_distribution<Real>(lo, hi)(rng);
}

inline Real random_angle(std::mt19937_64& rng) { return uniform(rng, 0, 2 * kPi); }

inline C random_complex(std::mt19937_64& rng, Real spread = 1) {
  std::normal_distribution<Real> dist(0, spread);
  return {dist(rng), dist(rng)};
}

inline topobell::Spinor2<Real> random_spinor(std::mt19937_64& rng) {
  topobell::Spinor2<Real> v;
  v << random_complex(rng), random_complex(rng);
  v.normalize();
  return v;
}

inline topobell::State4<Real> random_state(std::mt19937_64& rng) {
  topobell::State4<Real> v;
  v << random_complex(rng), random_complex(rng), random_complex(rng),
      random_complex(rng);
  v.normalize();
  return v;
}

inline topobell::Operator2<Real> random_hermitian(std::mt19937_64& rng,
                                                  Real spread = 2) {
  const Real a = uniform(rng, -spread, spread);
  const Real b = uniform(rng, -spread, spread);
  const C c = random_complex(rng, spread);
  topobell::Operator2<Real> m;
  m << C(a, 0), c, std::conj(c), C(b, 0);
  return m;
}

inline topobell::Operator2<Real> random_unitary(std::mt19937_64& rng) {
  const auto pairs = topobell::eig_hermitian_2x2(random_hermitian(rng));
  topobell::Operator2<Real> u;
  u.col(0) = std::polar(Real(1), random_angle(rng)) * pairs[0].vector;
  u.col(1) = std::polar(Real(1), random_angle(rng)) * pairs[1].vector;
  return u;
}

inline topobell::PhaseModel<Real> random_model(std::mt19937_64& rng) {
  const Real x = uniform(rng, -3, 3);
  const Real y = uniform(rng, -3, 3);
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return topobell::AbModel<Real>{x, y};
    case 1: return topobell::AcModel<Real>{x, y};
    case 2: return topobell::HmwModel<Real>{x, y};
    case 3: return topobell::DualAbModel<Real>{x, y};
    default: return topobell::BerryReducedModel<Real>{x};
  }
}

inline topobell::Arm random_arm(std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? topobell::Arm::left
                                                            : topobell::Arm::right;
}

/// Evolved singlet carrying relative phase delta between its amplitudes.
inline topobell::State4<Real> phased_singlet(Real delta) {
  return topobell::reduce_global_phase(topobell::evolve(
      topobell::singlet<Real>(), topobell::PhaseModel<Real>(topobell::AcModel<Real>{1, delta / 2}),
      topobell::Arm::left));
}

}  // namespace test_support
