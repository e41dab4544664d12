#pragma once

#include "topobell/spinor_core.hpp"

#include <cmath>
#include <type_traits>
#include <variant>

namespace topobell {

/// Which interferometer arm the topological phase acts on.
enum class Arm { left, right };

/// Charge around a magnetic flux line: both spin components pick up e*Phi.
template <typename Scalar>
struct AbModel {
  Scalar e_charge = Scalar(1);
  Scalar flux = Scalar(0);
};

/// Magnetic dipole around an electric line charge: the up/down components
/// pick up -/+ mu*lambda_E.
template <typename Scalar>
struct AcModel {
  Scalar mu = Scalar(1);
  Scalar lambda_e = Scalar(0);
};

/// Electric dipole around a magnetic charge line; dual of the AC form under
/// mu -> d, lambda_E -> lambda_B.
template <typename Scalar>
struct HmwModel {
  Scalar d_moment = Scalar(1);
  Scalar lambda_b = Scalar(0);
};

/// Magnetic monopole around an electric-dipole string; dual of the AB form
/// under e -> g, so the phase stays spin independent.
template <typename Scalar>
struct DualAbModel {
  Scalar g_charge = Scalar(1);
  Scalar flux_e = Scalar(0);
};

/// Spin-antisymmetric phase -/+ delta/2 per component; the azimuthal-angle
/// zero reduction of the adiabatic Berry setup.
template <typename Scalar>
struct BerryReducedModel {
  Scalar delta = Scalar(0);
};

template <typename Scalar>
using PhaseModel = std::variant<AbModel<Scalar>, AcModel<Scalar>, HmwModel<Scalar>,
                                DualAbModel<Scalar>, BerryReducedModel<Scalar>>;

template <typename Scalar>
struct ComponentPhases {
  Scalar up;
  Scalar down;
};

/// Per-spin-component phase acquired on the affected arm after a closed cycle.
template <typename Scalar>
ComponentPhases<Scalar> component_phases(const PhaseModel<Scalar>& model) {
  return std::visit(
      [](const auto& m) -> ComponentPhases<Scalar> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AbModel<Scalar>>) {
          const Scalar phi = m.e_charge * m.flux;
          return {phi, phi};
        } else if constexpr (std::is_same_v<T, AcModel<Scalar>>) {
          const Scalar half = m.mu * m.lambda_e;
          return {-half, half};
        } else if constexpr (std::is_same_v<T, HmwModel<Scalar>>) {
          const Scalar half = m.d_moment * m.lambda_b;
          return {-half, half};
        } else if constexpr (std::is_same_v<T, DualAbModel<Scalar>>) {
          const Scalar phi = m.g_charge * m.flux_e;
          return {phi, phi};
        } else {
          static_assert(std::is_same_v<T, BerryReducedModel<Scalar>>);
          const Scalar half = m.delta / Scalar(2);
          return {-half, half};
        }
      },
      model);
}

/// Phase difference phi_down - phi_up. This is the only model parameter that
/// survives into measurement statistics (zero for the spin-independent AB and
/// dual-AB models).
template <typename Scalar>
Scalar relative_phase(const PhaseModel<Scalar>& model) {
  const auto p = component_phases(model);
  return p.down - p.up;
}

/// The single product parameter of the model: e*Phi, 2*mu*lambda_E,
/// 2*d*lambda_B, g*Phi_E, or delta.
template <typename Scalar>
Scalar composite_phase(const PhaseModel<Scalar>& model) {
  return std::visit(
      [](const auto& m) -> Scalar {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AbModel<Scalar>>)
          return m.e_charge * m.flux;
        else if constexpr (std::is_same_v<T, AcModel<Scalar>>)
          return Scalar(2) * (m.mu * m.lambda_e);
        else if constexpr (std::is_same_v<T, HmwModel<Scalar>>)
          return Scalar(2) * (m.d_moment * m.lambda_b);
        else if constexpr (std::is_same_v<T, DualAbModel<Scalar>>)
          return m.g_charge * m.flux_e;
        else
          return m.delta;
      },
      model);
}

/// The spin singlet (|ud> - |du>)/sqrt2.
template <typename Scalar>
State4<Scalar> singlet() {
  const Scalar a = Scalar(1) / std::sqrt(Scalar(2));
  State4<Scalar> s;
  s << Complex<Scalar>(0, 0), Complex<Scalar>(a, 0), Complex<Scalar>(-a, 0),
      Complex<Scalar>(0, 0);
  return s;
}

/// Unitary for one closed cycle: diag(e^{i phi_up}, e^{i phi_down}) on the
/// chosen arm, identity on the other.
template <typename Scalar>
Operator4<Scalar> evolution_operator(const PhaseModel<Scalar>& model, Arm arm) {
  const auto phases = component_phases(model);
  Operator2<Scalar> local = Operator2<Scalar>::Zero();
  local(0, 0) = std::polar(Scalar(1), phases.up);
  local(1, 1) = std::polar(Scalar(1), phases.down);
  const Operator2<Scalar> id = Operator2<Scalar>::Identity();
  return arm == Arm::left ? tensor(local, id) : tensor(id, local);
}

template <typename Scalar>
State4<Scalar> evolve(const State4<Scalar>& state, const PhaseModel<Scalar>& model,
                      Arm arm) {
  return evolution_operator(model, arm) * state;
}

/// Removes the physically irrelevant overall phase: multiplies by the unit
/// scalar making the first nonzero amplitude real and positive. Idempotent.
template <typename Scalar>
State4<Scalar> reduce_global_phase(const State4<Scalar>& state) {
  return phase_canonicalized(state);
}

}  // namespace topobell
