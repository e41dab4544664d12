#pragma once

#include "topobell/spinor_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace topobell {

/// Thrown when a state fed to a measurement deviates from unit norm.
class NonNormalizedState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A spin-measurement direction, as the angle in radians from the
/// spin-quantization direction. Canonicalized to [0, 2pi) on construction;
/// non-finite input is rejected.
template <typename Scalar>
class MeasurementSetting {
 public:
  MeasurementSetting() = default;
  explicit MeasurementSetting(Scalar angle) : angle_(canonicalize(angle)) {}

  Scalar angle() const { return angle_; }

  static Scalar canonicalize(Scalar angle) {
    if (!std::isfinite(angle))
      throw std::invalid_argument("MeasurementSetting: angle must be finite");
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    Scalar a = std::fmod(angle, two_pi);
    if (a < Scalar(0)) a += two_pi;
    if (a >= two_pi) a = Scalar(0);
    return a;
  }

 private:
  Scalar angle_ = Scalar(0);
};

template <typename Scalar>
struct DirectionStates {
  Spinor2<Scalar> plus;
  Spinor2<Scalar> minus;
};

/// Measurement eigenstates at angle a:
///   plus  =  cos(a/2)|up> + i sin(a/2)|down>
///   minus = -sin(a/2)|up> + i cos(a/2)|down>
/// Unit norm and mutually orthogonal.
template <typename Scalar>
DirectionStates<Scalar> direction_states(const MeasurementSetting<Scalar>& setting) {
  const Scalar half = setting.angle() / Scalar(2);
  const Scalar c = std::cos(half);
  const Scalar s = std::sin(half);
  DirectionStates<Scalar> out;
  out.plus << Complex<Scalar>(c, 0), Complex<Scalar>(0, s);
  out.minus << Complex<Scalar>(-s, 0), Complex<Scalar>(0, c);
  return out;
}

enum class Outcome { plus, minus };

/// Rank-1 projector |+-a><+-a| onto the measurement direction.
template <typename Scalar>
Operator2<Scalar> projector(const MeasurementSetting<Scalar>& setting, Outcome outcome) {
  const auto dirs = direction_states(setting);
  const Spinor2<Scalar>& v = outcome == Outcome::plus ? dirs.plus : dirs.minus;
  return v * v.adjoint();
}

/// The four joint outcome probabilities at one settings pair, ordered
/// (uu, ud, du, dd) with the left arm first.
template <typename Scalar>
struct JointDistribution {
  Scalar p_uu;
  Scalar p_ud;
  Scalar p_du;
  Scalar p_dd;

  Scalar sum() const { return p_uu + p_ud + p_du + p_dd; }
  std::array<Scalar, 4> as_array() const { return {p_uu, p_ud, p_du, p_dd}; }
};

namespace detail {

template <typename Scalar>
Scalar real_checked(const Complex<Scalar>& z, Scalar tol, const char* what) {
  if (std::abs(z.imag()) > tol)
    throw std::logic_error(std::string(what) + ": imaginary residue exceeds tolerance");
  return z.real();
}

template <typename Scalar>
Scalar outcome_probability(const State4<Scalar>& psi, const Spinor2<Scalar>& left,
                           const Spinor2<Scalar>& right) {
  const Operator4<Scalar> op =
      tensor(Operator2<Scalar>(left * left.adjoint()),
             Operator2<Scalar>(right * right.adjoint()));
  const Complex<Scalar> q = psi.dot(op * psi);
  return real_checked(q, Scalar(1e-12), "joint probability");
}

}  // namespace detail

/// p_ij = <psi| P_i(a) x P_j(b) |psi>. Throws NonNormalizedState if the input
/// norm deviates from 1 beyond 1e-9. The global phase is canonicalized before
/// the quadratic forms, which makes the statistics phase independent at the
/// bit level.
template <typename Scalar>
JointDistribution<Scalar> joint_probabilities(const State4<Scalar>& state,
                                              const MeasurementSetting<Scalar>& a,
                                              const MeasurementSetting<Scalar>& b) {
  if (std::abs(state.norm() - Scalar(1)) > Scalar(1e-9))
    throw NonNormalizedState("joint_probabilities: state is not unit norm");
  const State4<Scalar> psi = phase_canonicalized(state);
  const auto da = direction_states(a);
  const auto db = direction_states(b);
  JointDistribution<Scalar> out;
  out.p_uu = detail::outcome_probability(psi, da.plus, db.plus);
  out.p_ud = detail::outcome_probability(psi, da.plus, db.minus);
  out.p_du = detail::outcome_probability(psi, da.minus, db.plus);
  out.p_dd = detail::outcome_probability(psi, da.minus, db.minus);
  return out;
}

/// Two-arm correlation E = p_uu - p_ud - p_du + p_dd, i.e. the expectation of
/// (P_+ - P_-) x (P_+ - P_-). Always in [-1, 1].
template <typename Scalar>
Scalar correlation(const State4<Scalar>& state, const MeasurementSetting<Scalar>& a,
                   const MeasurementSetting<Scalar>& b) {
  const auto p = joint_probabilities(state, a, b);
  return p.p_uu - p.p_ud - p.p_du + p.p_dd;
}

/// Closed-form probabilities for the evolved singlet whose two amplitudes
/// carry relative phase delta:
///   p_uu = p_dd = (1 - cos a cos b - sin a sin b cos delta)/4
///   p_ud = p_du = (1 + cos a cos b + sin a sin b cos delta)/4
template <typename Scalar>
JointDistribution<Scalar> joint_probabilities_closed_form(
    const MeasurementSetting<Scalar>& a, const MeasurementSetting<Scalar>& b,
    Scalar delta) {
  const Scalar cc = std::cos(a.angle()) * std::cos(b.angle());
  const Scalar ss = std::sin(a.angle()) * std::sin(b.angle()) * std::cos(delta);
  JointDistribution<Scalar> out;
  out.p_uu = out.p_dd = (Scalar(1) - cc - ss) / Scalar(4);
  out.p_ud = out.p_du = (Scalar(1) + cc + ss) / Scalar(4);
  return out;
}

/// Closed-form correlation -cos a cos b - sin a sin b cos delta for the
/// evolved singlet.
template <typename Scalar>
Scalar correlation_closed_form(const MeasurementSetting<Scalar>& a,
                               const MeasurementSetting<Scalar>& b, Scalar delta) {
  return -std::cos(a.angle()) * std::cos(b.angle()) -
         std::sin(a.angle()) * std::sin(b.angle()) * std::cos(delta);
}

}  // namespace topobell
