#pragma once

#include "topobell/spinor_core.hpp"

#include <cmath>
#include <stdexcept>

namespace topobell {

/// Parameters of the planar (2+1-dimensional) Dirac representation.
/// `spin_sign` selects one of the two inequivalent 2x2 representations and
/// must be exactly +1 or -1; `mass` only enters the free Hamiltonian.
template <typename Scalar>
struct PlanarDiracConfig {
  int spin_sign = 1;
  Scalar mass = Scalar(0);
};

/// Gauge-potential configuration for the AB interaction: magnitude |A|,
/// direction angle theta from +x, electron charge e, and enclosed flux Phi.
template <typename Scalar>
struct AbFieldConfig {
  Scalar a_mag = Scalar(0);
  Scalar theta = Scalar(0);
  Scalar e_charge = Scalar(1);
  Scalar flux = Scalar(0);
};

/// Rotated-field configuration for the AC interaction: magnitude of
/// E~ = E x z^, direction angle theta from +x, dipole moment mu, and the
/// linear charge density lambda_E.
template <typename Scalar>
struct AcFieldConfig {
  Scalar e_tilde_mag = Scalar(0);
  Scalar theta = Scalar(0);
  Scalar mu = Scalar(1);
  Scalar lambda_e = Scalar(0);
};

template <typename Scalar>
int checked_spin_sign(const PlanarDiracConfig<Scalar>& cfg) {
  if (cfg.spin_sign != 1 && cfg.spin_sign != -1)
    throw std::invalid_argument("PlanarDiracConfig: spin_sign must be +1 or -1");
  return cfg.spin_sign;
}

template <typename Scalar>
struct AlphaMatrices {
  Operator2<Scalar> alpha_x;
  Operator2<Scalar> alpha_y;
  Operator2<Scalar> beta;
};

/// The 2x2 realization of the planar Clifford algebra:
/// alpha_x = sigma_x, alpha_y = s sigma_y, beta = sigma_z.
template <typename Scalar>
AlphaMatrices<Scalar> alpha_matrices(const PlanarDiracConfig<Scalar>& cfg) {
  const int s = checked_spin_sign(cfg);
  AlphaMatrices<Scalar> out;
  out.alpha_x = pauli_x<Scalar>();
  out.alpha_y = s == 1 ? pauli_y<Scalar>() : Operator2<Scalar>(-pauli_y<Scalar>());
  out.beta = pauli_z<Scalar>();
  return out;
}

/// Free planar Dirac Hamiltonian alpha_x p_x + alpha_y p_y + m beta.
/// Diagnostic only; phase evolution uses the interaction terms alone.
template <typename Scalar>
Operator2<Scalar> h_free(const PlanarDiracConfig<Scalar>& cfg, Scalar p_x, Scalar p_y) {
  const auto a = alpha_matrices(cfg);
  return p_x * a.alpha_x + p_y * a.alpha_y + cfg.mass * a.beta;
}

/// Effective AB interaction -e (alpha . A) with A = |A|(cos theta, sin theta),
/// in the default s=+1 representation. Spectrum is {+eA, -eA}.
template <typename Scalar>
Operator2<Scalar> h_ab(const AbFieldConfig<Scalar>& field) {
  const Scalar a_x = field.a_mag * std::cos(field.theta);
  const Scalar a_y = field.a_mag * std::sin(field.theta);
  return -field.e_charge * (a_x * pauli_x<Scalar>() + a_y * pauli_y<Scalar>());
}

/// Effective AC interaction -s mu (alpha . E~) with
/// E~ = |E~|(cos theta, sin theta). Spectrum is {+mu E~, -mu E~} for either
/// representation sign; the eigenvectors depend on s.
template <typename Scalar>
Operator2<Scalar> h_ac(const AcFieldConfig<Scalar>& field,
                       const PlanarDiracConfig<Scalar>& cfg) {
  const int s = checked_spin_sign(cfg);
  const auto a = alpha_matrices(cfg);
  const Scalar e_x = field.e_tilde_mag * std::cos(field.theta);
  const Scalar e_y = field.e_tilde_mag * std::sin(field.theta);
  const Operator2<Scalar> coupling = e_x * a.alpha_x + e_y * a.alpha_y;
  return (s == 1 ? -field.mu : field.mu) * coupling;
}

/// In-plane part of E x z^: (E_x, E_y) -> (E_y, -E_x). Preserves magnitude
/// and rotates by -pi/2.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> e_tilde_from_e(Scalar e_x, Scalar e_y) {
  Eigen::Matrix<Scalar, 2, 1> out;
  out << e_y, -e_x;
  return out;
}

template <typename Scalar>
struct EigenbasisStates {
  Spinor2<Scalar> up;
  Spinor2<Scalar> down;
};

/// Closed-form interaction eigenstates for the direction at angle theta:
/// up = (-e^{-i theta}, 1)/sqrt2 and down = (e^{-i theta}, 1)/sqrt2.
/// For the s=+1 interaction matrices built above, `up` carries the positive
/// eigenvalue (+eA resp. +mu E~) whenever that product is positive.
template <typename Scalar>
EigenbasisStates<Scalar> analytic_eigenstates(Scalar theta) {
  const Complex<Scalar> w = std::polar(Scalar(1), -theta);
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  EigenbasisStates<Scalar> out;
  out.up << -w * inv_sqrt2, Complex<Scalar>(inv_sqrt2, 0);
  out.down << w * inv_sqrt2, Complex<Scalar>(inv_sqrt2, 0);
  return out;
}

}  // namespace topobell
