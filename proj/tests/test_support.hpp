#pragma once

// Test-only helpers: enumeration of the TPM family and small random generators.

#include <array>
#include <random>
#include <vector>

#include "dyad/error.hpp"
#include "dyad/model.hpp"

namespace dyad::fixtures {

inline std::vector<Tpm2> all_valid_tpms() {
  std::vector<Tpm2> out;
  std::array<int, 4> idx{};
  for (idx[0] = 0; idx[0] < 4; ++idx[0])
    for (idx[1] = 0; idx[1] < 4; ++idx[1])
      for (idx[2] = 0; idx[2] < 4; ++idx[2])
        for (idx[3] = 0; idx[3] < 4; ++idx[3]) {
          try {
            out.push_back(Tpm2::from_indices(idx));
          } catch (const Error&) {
          }
        }
  return out;
}

inline std::vector<Tpm2> bijective_cross_coupled_tpms() {
  std::vector<Tpm2> out;
  for (const Tpm2& t : all_valid_tpms()) {
    if (t.is_bijective() && t.is_cross_coupled()) out.push_back(t);
  }
  return out;
}

inline std::array<double, 4> random_distribution(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> p{};
  double s = 0.0;
  for (double& x : p) s += (x = e(rng));
  for (double& x : p) x /= s;
  return p;
}

}  // namespace dyad::fixtures
