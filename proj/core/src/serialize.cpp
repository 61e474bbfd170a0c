#include "dyad/serialize.hpp"

#include "dyad/error.hpp"

namespace dyad {

using nlohmann::json;

void to_json(json& j, const DyadState& s) { j = json::array({s.a, s.b}); }

void from_json(const json& j, DyadState& s) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw Error(ErrorCode::kInvalidArgument, "state must be [a, b]");
  }
  int a = j[0].get<int>();
  int b = j[1].get<int>();
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw Error(ErrorCode::kInvalidArgument, "state bits must be 0 or 1");
  s = DyadState{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
}

void to_json(json& j, const Tpm2& tpm) { j = tpm.output_indices(); }

Tpm2 tpm_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::kInvalidTpm, "TPM must be an array of 4 output indices");
  std::array<int, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_number_integer()) throw Error(ErrorCode::kInvalidTpm, "TPM entries must be integers");
    out[i] = j[i].get<int>();
  }
  return Tpm2::from_indices(out);
}

void to_json(json& j, const PhiReport& r) {
  auto maximizer = [](const std::optional<int>& m) { return m ? json(*m) : json(nullptr); };
  json flags = json::array();
  for (const auto& f : r.not_cross_coupled) {
    flags.push_back({{"unit", std::string(1, unit_name(f.unit))},
                     {"direction", direction_name(f.direction)},
                     {"code", "NotCrossCoupled"}});
  }
  j = json{{"phi_e_A", r.phi_e_A}, {"phi_c_A", r.phi_c_A}, {"phi_e_B", r.phi_e_B}, {"phi_c_B", r.phi_c_B},
           {"phi_A", r.phi_A},     {"phi_B", r.phi_B},     {"big_phi", r.big_phi},
           {"maximizing_states", {{"A", maximizer(r.maximizing_states[0])}, {"B", maximizer(r.maximizing_states[1])}}},
           {"flags", flags}};
}

void to_json(json& j, const QShape& q) { j = json{{"source_state", q.source_state}, {"rows", q.rows}}; }

void to_json(json& j, const QShape4Style& q) {
  j = json{{"phi_A", q.phi_A}, {"phi_B", q.phi_B}, {"maximizer_A", q.maximizer_A}, {"maximizer_B", q.maximizer_B}};
}

void to_json(json& j, const DistanceTable& t) { j = t.entries(); }

DistanceTable table_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::kInvalidArgument, "table must be a 4x4 array");
  Matrix4 m{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4) throw Error(ErrorCode::kInvalidArgument, "table must be a 4x4 array");
    for (std::size_t k = 0; k < 4; ++k) {
      if (!j[i][k].is_number()) throw Error(ErrorCode::kInvalidArgument, "table entries must be numbers");
      m[i][k] = j[i][k].get<double>();
    }
  }
  return DistanceTable(m);
}

void to_json(json& j, const EigenAssignment& e) { j = e.lambda; }

void to_json(json& j, const OptimizationResult& r) {
  j = json{{"minimizers", r.minimizers},
           {"optimal_sum", r.optimal_sum},
           {"pairwise_rate_sums", r.pairwise_rate_sums},
           {"count", r.minimizers.size()}};
}

void to_json(json& j, const QuantumSubsystemPhi& p) {
  j = json{{"phi_c", p.phi_cause}, {"phi_e", p.phi_effect}, {"phi", p.phi}};
}

void to_json(json& j, const QuantumPhiReport& r) {
  j = json{{"A", r.a}, {"B", r.b}, {"AB", r.ab}, {"big_phi", r.big_phi}};
}

void to_json(json& j, const DensityMatrix4& rho) {
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < 4; ++i) {
    json r_row = json::array();
    json i_row = json::array();
    for (int k = 0; k < 4; ++k) {
      r_row.push_back(rho(i, k).real());
      i_row.push_back(rho(i, k).imag());
    }
    re.push_back(r_row);
    im.push_back(i_row);
  }
  j = json{{"re", re}, {"im", im}};
}

PureState4 amplitudes_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::kInvalidArgument, "amplitudes must be an array of 4");
  Vector4c v;
  for (std::size_t i = 0; i < 4; ++i) {
    const json& x = j[i];
    if (x.is_number()) {
      v[static_cast<Eigen::Index>(i)] = x.get<double>();
    } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
      v[static_cast<Eigen::Index>(i)] = Complex(x[0].get<double>(), x[1].get<double>());
    } else {
      throw Error(ErrorCode::kInvalidArgument, "amplitude must be a number or [re, im]");
    }
  }
  return PureState4(v);
}

}  // namespace dyad
