#pragma once

// Integrated cause/effect information of each unit of a two-unit
// deterministic system, in bits.
//
// A unit's effect information is measured on the partner's next state and its
// cause information on the partner's previous state. Partitioning replaces the
// unit's contribution to the link with an equiprobable bit.

#include <array>
#include <optional>
#include <vector>

#include "dyad/model.hpp"

namespace dyad {

enum class Direction { kCause, kEffect };

constexpr const char* direction_name(Direction d) { return d == Direction::kCause ? "cause" : "effect"; }

// Distribution over the partner unit's state {0, 1}.
struct UnitRepertoire {
  Unit unit;
  Direction direction;
  std::array<double, 2> distribution;
};

struct IntegratedInfo {
  double value = 0.0;
  /// Partner state at which the maximum is attained; empty when the link
  /// does not exist.
  std::optional<int> partner_state;
  /// False when the link being measured is absent (value is then 0).
  bool cross_coupled = true;
};

struct PhiFlag {
  Unit unit;
  Direction direction;
};

struct PhiReport {
  double phi_e_A = 0.0;
  double phi_c_A = 0.0;
  double phi_e_B = 0.0;
  double phi_c_B = 0.0;
  double phi_A = 0.0;
  double phi_B = 0.0;
  double big_phi = 0.0;
  /// Indexed by Unit; the partner state over which each unit's phi was attained.
  std::array<std::optional<int>, 2> maximizing_states;
  /// Links reported as NotCrossCoupled (their phi contribution is 0).
  std::vector<PhiFlag> not_cross_coupled;
};

/// p(target_{t+1} = target_state) when `source` is replaced by an equiprobable
/// bit. `source_state` is the value being noised away and does not enter the
/// result. Throws kDependencyMismatch if `target` does not read `source`.
double noised_effect_prob(const Tpm2& tpm, Unit source, int source_state, Unit target,
                          int target_state);

/// p(partner_{t+1} | unit_t). Throws kNotCrossCoupled if the partner does not read `unit`.
UnitRepertoire effect_repertoire(const Tpm2& tpm, Unit unit, DyadState state);

/// p(partner_{t-1} | unit_t) by Bayes' rule with uniform priors. Throws
/// kNotCrossCoupled if `unit` does not read the partner and kZeroMarginal if
/// the unit's current value cannot be produced.
UnitRepertoire cause_repertoire(const Tpm2& tpm, Unit unit, DyadState state);

IntegratedInfo phi_effect(const Tpm2& tpm, Unit unit, DyadState state);
IntegratedInfo phi_cause(const Tpm2& tpm, Unit unit, DyadState state);

/// min(phi_cause, phi_effect); the maximizer reported is the one of the
/// smaller side (effect on ties).
IntegratedInfo phi_unit(const Tpm2& tpm, Unit unit, DyadState state);

PhiReport big_phi(const Tpm2& tpm, DyadState state);

}  // namespace dyad
