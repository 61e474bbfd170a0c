#pragma once

// JSON encodings used by the command-line tool and by downstream consumers.
//
//   DyadState      [a, b]
//   Tpm2           [i0, i1, i2, i3]   output index of each input state
//   DistanceTable  4x4 array
//   QShape         {"source_state": [a, b], "rows": 4x4 array}

#include <nlohmann/json.hpp>

#include "dyad/density.hpp"
#include "dyad/optimizer.hpp"
#include "dyad/phi.hpp"
#include "dyad/qiit.hpp"
#include "dyad/qshape.hpp"

namespace dyad {

void to_json(nlohmann::json& j, const DyadState& s);
void from_json(const nlohmann::json& j, DyadState& s);

void to_json(nlohmann::json& j, const Tpm2& tpm);
/// Throws kInvalidTpm for malformed input.
Tpm2 tpm_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const PhiReport& r);
void to_json(nlohmann::json& j, const QShape& q);
void to_json(nlohmann::json& j, const QShape4Style& q);

void to_json(nlohmann::json& j, const DistanceTable& t);
/// Throws kInvalidArgument for malformed input.
DistanceTable table_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const EigenAssignment& e);
void to_json(nlohmann::json& j, const OptimizationResult& r);

void to_json(nlohmann::json& j, const QuantumSubsystemPhi& p);
void to_json(nlohmann::json& j, const QuantumPhiReport& r);

/// {"re": 4x4, "im": 4x4}
void to_json(nlohmann::json& j, const DensityMatrix4& rho);

/// Four amplitudes, each a number or [re, im]. Throws kInvalidArgument if the
/// vector is malformed or not normalized within 1e-10.
PureState4 amplitudes_from_json(const nlohmann::json& j);

}  // namespace dyad
