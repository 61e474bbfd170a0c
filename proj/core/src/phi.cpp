#include "dyad/phi.hpp"

#include <algorithm>
#include <cmath>

#include "dyad/error.hpp"

namespace dyad {

namespace {

constexpr double kPrior = 0.5;

// p * log2(p / q) with 0 * log(0 / q) := 0.
double pointwise_id(double p, double ratio_num, double ratio_den) {
  if (p <= 0.0) return 0.0;
  return p * std::log2(ratio_num / ratio_den);
}

}  // namespace

double noised_effect_prob(const Tpm2& tpm, Unit source, int /*source_state*/, Unit target,
                          int target_state) {
  if (tpm.reads(target) != source) {
    throw Error(ErrorCode::kDependencyMismatch,
                std::string("unit ") + unit_name(target) + " does not read " + unit_name(source));
  }
  double p = 0.0;
  for (int v = 0; v < 2; ++v) {
    if (tpm.unit_rule(target, v) == target_state) p += kPrior;
  }
  return p;
}

UnitRepertoire effect_repertoire(const Tpm2& tpm, Unit unit, DyadState state) {
  Unit other = partner(unit);
  if (tpm.reads(other) != unit) {
    throw Error(ErrorCode::kNotCrossCoupled,
                std::string("unit ") + unit_name(other) + " does not read " + unit_name(unit));
  }
  UnitRepertoire rep{unit, Direction::kEffect, {0.0, 0.0}};
  rep.distribution[tpm.unit_rule(other, state.value(unit))] = 1.0;
  return rep;
}

UnitRepertoire cause_repertoire(const Tpm2& tpm, Unit unit, DyadState state) {
  Unit other = partner(unit);
  if (tpm.reads(unit) != other) {
    throw Error(ErrorCode::kNotCrossCoupled,
                std::string("unit ") + unit_name(unit) + " does not read " + unit_name(other));
  }
  const int current = state.value(unit);
  std::array<double, 2> likelihood{};
  double marginal = 0.0;
  for (int x = 0; x < 2; ++x) {
    likelihood[x] = tpm.unit_rule(unit, x) == current ? 1.0 : 0.0;
    marginal += likelihood[x] * kPrior;
  }
  if (marginal <= 0.0) {
    throw Error(ErrorCode::kZeroMarginal, std::string("unit ") + unit_name(unit) +
                                              " can never be in state " + std::to_string(current));
  }
  UnitRepertoire rep{unit, Direction::kCause, {}};
  for (int x = 0; x < 2; ++x) rep.distribution[x] = likelihood[x] * kPrior / marginal;
  return rep;
}

IntegratedInfo phi_effect(const Tpm2& tpm, Unit unit, DyadState state) {
  Unit other = partner(unit);
  if (tpm.reads(other) != unit) return IntegratedInfo{0.0, std::nullopt, false};

  UnitRepertoire rep = effect_repertoire(tpm, unit, state);
  IntegratedInfo best{-1.0, std::nullopt, true};
  for (int x = 0; x < 2; ++x) {
    double p = rep.distribution[x];
    double noised = noised_effect_prob(tpm, unit, state.value(unit), other, x);
    double id = pointwise_id(p, p, noised);
    if (id > best.value) best = IntegratedInfo{id, x, true};
  }
  return best;
}

IntegratedInfo phi_cause(const Tpm2& tpm, Unit unit, DyadState state) {
  Unit other = partner(unit);
  if (tpm.reads(unit) != other) return IntegratedInfo{0.0, std::nullopt, false};

  UnitRepertoire posterior = cause_repertoire(tpm, unit, state);
  const int current = state.value(unit);
  // p^theta(unit_t | partner noised)
  double noised = noised_effect_prob(tpm, other, 0, unit, current);
  IntegratedInfo best{-1.0, std::nullopt, true};
  for (int x = 0; x < 2; ++x) {
    double likelihood = tpm.unit_rule(unit, x) == current ? 1.0 : 0.0;
    double id = pointwise_id(posterior.distribution[x], likelihood, noised);
    if (id > best.value) best = IntegratedInfo{id, x, true};
  }
  return best;
}

IntegratedInfo phi_unit(const Tpm2& tpm, Unit unit, DyadState state) {
  IntegratedInfo cause = phi_cause(tpm, unit, state);
  IntegratedInfo effect = phi_effect(tpm, unit, state);
  IntegratedInfo out = cause.value < effect.value ? cause : effect;
  out.cross_coupled = cause.cross_coupled && effect.cross_coupled;
  return out;
}

PhiReport big_phi(const Tpm2& tpm, DyadState state) {
  PhiReport r;
  for (Unit u : kUnits) {
    IntegratedInfo cause = phi_cause(tpm, u, state);
    IntegratedInfo effect = phi_effect(tpm, u, state);
    IntegratedInfo unit = cause.value < effect.value ? cause : effect;
    if (!cause.cross_coupled) r.not_cross_coupled.push_back({u, Direction::kCause});
    if (!effect.cross_coupled) r.not_cross_coupled.push_back({u, Direction::kEffect});
    if (u == Unit::kA) {
      r.phi_c_A = cause.value;
      r.phi_e_A = effect.value;
      r.phi_A = unit.value;
    } else {
      r.phi_c_B = cause.value;
      r.phi_e_B = effect.value;
      r.phi_B = unit.value;
    }
    r.maximizing_states[static_cast<int>(u)] = unit.partner_state;
  }
  r.big_phi = r.phi_A + r.phi_B;
  return r;
}

}  // namespace dyad
