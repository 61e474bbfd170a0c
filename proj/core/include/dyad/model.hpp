#pragma once

// State space and update rules of a two-unit binary system.
//
// States are indexed lexicographically, index = 2a + b, so the order is
// (0,0), (0,1), (1,0), (1,1). Every vector and matrix in the library is laid
// out in this order.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dyad {

enum class Unit : std::uint8_t { kA = 0, kB = 1 };

constexpr Unit partner(Unit u) { return u == Unit::kA ? Unit::kB : Unit::kA; }
constexpr char unit_name(Unit u) { return u == Unit::kA ? 'A' : 'B'; }

inline constexpr std::array<Unit, 2> kUnits = {Unit::kA, Unit::kB};

struct DyadState {
  std::uint8_t a = 0;
  std::uint8_t b = 0;

  constexpr int index() const { return 2 * a + b; }
  constexpr int value(Unit u) const { return u == Unit::kA ? a : b; }

  constexpr DyadState with(Unit u, int v) const {
    DyadState s = *this;
    (u == Unit::kA ? s.a : s.b) = static_cast<std::uint8_t>(v);
    return s;
  }

  /// Throws Error(kInvalidArgument) unless 0 <= i < 4.
  static DyadState from_index(int i);

  constexpr auto operator<=>(const DyadState&) const = default;
};

inline constexpr std::array<DyadState, 4> kAllStates = {
    DyadState{0, 0}, DyadState{0, 1}, DyadState{1, 0}, DyadState{1, 1}};

/// "10" for (a=1, b=0).
std::string to_string(DyadState s);

/// Accepts "ab" with a, b in {0,1}; anything else throws kInvalidArgument.
DyadState parse_state(std::string_view text);

// A deterministic update rule in which each output unit is a function of
// exactly one input unit (the unit it "reads").
class Tpm2 {
 public:
  /// Validates that every output unit is a function of its declared input
  /// unit alone; throws kInvalidTpm otherwise.
  Tpm2(std::array<DyadState, 4> map, std::array<Unit, 2> inputs);

  /// Builds from output indices in state order. The read dependency of each
  /// output unit is inferred; an output that depends on both inputs throws
  /// kInvalidTpm, and a constant output is taken to read the other unit.
  static Tpm2 from_indices(const std::array<int, 4>& outputs);

  static Tpm2 swap();
  static Tpm2 identity();
  /// Each unit outputs the negation of the other.
  static Tpm2 not_swap();
  static Tpm2 constant(DyadState target);

  DyadState apply(DyadState s) const { return map_[s.index()]; }
  std::vector<DyadState> predecessors(DyadState s) const;

  Unit reads(Unit output) const { return reads_[static_cast<int>(output)]; }

  /// Next value of `output` when the unit it reads holds `input_bit`.
  int unit_rule(Unit output, int input_bit) const;

  bool is_bijective() const;
  /// A reads B and B reads A.
  bool is_cross_coupled() const;

  std::array<int, 4> output_indices() const;

  bool operator==(const Tpm2&) const = default;

 private:
  std::array<DyadState, 4> map_;
  std::array<Unit, 2> reads_;
};

inline DyadState apply(const Tpm2& tpm, DyadState s) { return tpm.apply(s); }
inline std::vector<DyadState> predecessors(const Tpm2& tpm, DyadState s) {
  return tpm.predecessors(s);
}

}  // namespace dyad
