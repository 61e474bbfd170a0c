#include "dyad/model.hpp"

#include "dyad/error.hpp"

namespace dyad {

namespace {

bool output_depends_on(const std::array<DyadState, 4>& map, Unit output, Unit input) {
  for (DyadState s : kAllStates) {
    DyadState flipped = s.with(input, 1 - s.value(input));
    if (map[s.index()].value(output) != map[flipped.index()].value(output)) return true;
  }
  return false;
}

}  // namespace

DyadState DyadState::from_index(int i) {
  if (i < 0 || i > 3) {
    throw Error(ErrorCode::kInvalidArgument, "state index out of range: " + std::to_string(i));
  }
  return kAllStates[i];
}

std::string to_string(DyadState s) {
  return {static_cast<char>('0' + s.a), static_cast<char>('0' + s.b)};
}

DyadState parse_state(std::string_view text) {
  auto bit = [](char c) { return c == '0' || c == '1'; };
  if (text.size() != 2 || !bit(text[0]) || !bit(text[1])) {
    throw Error(ErrorCode::kInvalidArgument, "invalid state '" + std::string(text) + "'");
  }
  return DyadState{static_cast<std::uint8_t>(text[0] - '0'), static_cast<std::uint8_t>(text[1] - '0')};
}

Tpm2::Tpm2(std::array<DyadState, 4> map, std::array<Unit, 2> inputs) : map_(map), reads_(inputs) {
  for (DyadState s : map_) {
    if (s.a > 1 || s.b > 1) throw Error(ErrorCode::kInvalidTpm, "map produces a non-binary state");
  }
  for (Unit out : kUnits) {
    Unit other = partner(reads(out));
    if (output_depends_on(map_, out, other)) {
      throw Error(ErrorCode::kInvalidTpm, std::string("output unit ") + unit_name(out) +
                                              " depends on " + unit_name(other) +
                                              ", not only on its declared input");
    }
  }
}

Tpm2 Tpm2::from_indices(const std::array<int, 4>& outputs) {
  std::array<DyadState, 4> map{};
  for (int i = 0; i < 4; ++i) {
    if (outputs[i] < 0 || outputs[i] > 3) {
      throw Error(ErrorCode::kInvalidTpm, "output index out of range: " + std::to_string(outputs[i]));
    }
    map[i] = kAllStates[outputs[i]];
  }
  std::array<Unit, 2> reads{};
  for (Unit out : kUnits) {
    bool on_a = output_depends_on(map, out, Unit::kA);
    bool on_b = output_depends_on(map, out, Unit::kB);
    if (on_a && on_b) {
      throw Error(ErrorCode::kInvalidTpm,
                  std::string("output unit ") + unit_name(out) + " depends on both units");
    }
    Unit r = partner(out);
    if (on_a) r = Unit::kA;
    if (on_b) r = Unit::kB;
    reads[static_cast<int>(out)] = r;
  }
  return Tpm2(map, reads);
}

Tpm2 Tpm2::swap() { return from_indices({0, 2, 1, 3}); }

Tpm2 Tpm2::identity() { return Tpm2({kAllStates[0], kAllStates[1], kAllStates[2], kAllStates[3]}, {Unit::kA, Unit::kB}); }

Tpm2 Tpm2::not_swap() { return from_indices({3, 1, 2, 0}); }

Tpm2 Tpm2::constant(DyadState target) {
  int t = target.index();
  return from_indices({t, t, t, t});
}

std::vector<DyadState> Tpm2::predecessors(DyadState s) const {
  std::vector<DyadState> out;
  for (DyadState p : kAllStates) {
    if (map_[p.index()] == s) out.push_back(p);
  }
  return out;
}

int Tpm2::unit_rule(Unit output, int input_bit) const {
  DyadState probe = DyadState{}.with(reads(output), input_bit);
  return map_[probe.index()].value(output);
}

bool Tpm2::is_bijective() const {
  std::array<bool, 4> hit{};
  for (DyadState s : map_) hit[s.index()] = true;
  return hit[0] && hit[1] && hit[2] && hit[3];
}

bool Tpm2::is_cross_coupled() const {
  return reads(Unit::kA) == Unit::kB && reads(Unit::kB) == Unit::kA;
}

std::array<int, 4> Tpm2::output_indices() const {
  return {map_[0].index(), map_[1].index(), map_[2].index(), map_[3].index()};
}

}  // namespace dyad
