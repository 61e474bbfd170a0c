#include "dyad/qshape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dyad/error.hpp"
#include "dyad/phi.hpp"

namespace dyad {

namespace {

void require_dyad_like(const Tpm2& tpm) {
  if (!tpm.is_bijective()) throw Error(ErrorCode::kNotBijective, "Q-shapes need a bijective TPM");
  if (!tpm.is_cross_coupled()) throw Error(ErrorCode::kNotCrossCoupled, "Q-shapes need a cross-coupled TPM");
}

// Fix `part` at `value`, noise the other unit, step forward once.
Distribution4 forward_image(const Tpm2& tpm, Unit part, int value) {
  Distribution4 out{};
  for (int other = 0; other < 2; ++other) {
    DyadState s = DyadState{}.with(part, value).with(partner(part), other);
    out[tpm.apply(s).index()] += 0.5;
  }
  return out;
}

// Fix `part` at `value`, noise the other unit, retrodict one step.
Distribution4 backward_image(const Tpm2& tpm, Unit part, int value) {
  Distribution4 out{};
  for (int other = 0; other < 2; ++other) {
    DyadState s = DyadState{}.with(part, value).with(partner(part), other);
    auto preds = tpm.predecessors(s);
    for (DyadState p : preds) out[p.index()] += 0.5 / static_cast<double>(preds.size());
  }
  return out;
}

// Successive shortest paths on the 4x4 transport graph. Supplies and demands
// are the two distributions; residual arcs carry negative cost.
double min_cost_transport(const Distribution4& supply, const Distribution4& demand, const Matrix4& cost) {
  constexpr double kEps = 1e-15;
  constexpr int kNodes = 8;  // 0..3 sources, 4..7 sinks
  Matrix4 flow{};
  Distribution4 left = supply;
  Distribution4 need = demand;
  double total = 0.0;

  for (int iter = 0; iter < 64; ++iter) {
    // Bellman-Ford from a virtual root connected to every source with supply left.
    std::array<double, kNodes> dist;
    std::array<int, kNodes> prev;
    dist.fill(std::numeric_limits<double>::infinity());
    prev.fill(-1);
    for (int i = 0; i < 4; ++i) {
      if (left[i] > kEps) dist[i] = 0.0;
    }
    for (int round = 0; round < kNodes; ++round) {
      bool changed = false;
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          // forward arc source i -> sink j, unbounded capacity
          if (dist[i] + cost[i][j] < dist[4 + j] - 1e-15) {
            dist[4 + j] = dist[i] + cost[i][j];
            prev[4 + j] = i;
            changed = true;
          }
          // residual arc sink j -> source i
          if (flow[i][j] > kEps && dist[4 + j] - cost[i][j] < dist[i] - 1e-15) {
            dist[i] = dist[4 + j] - cost[i][j];
            prev[i] = 4 + j;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    int sink = -1;
    for (int j = 0; j < 4; ++j) {
      if (need[j] > kEps && std::isfinite(dist[4 + j]) && (sink < 0 || dist[4 + j] < dist[4 + sink])) sink = j;
    }
    if (sink < 0) break;

    // bottleneck along the path
    double push = need[sink];
    int node = 4 + sink;
    while (prev[node] >= 0) {
      int from = prev[node];
      if (node < 4) push = std::min(push, flow[node][from - 4]);
      node = from;
    }
    push = std::min(push, left[node]);

    node = 4 + sink;
    while (prev[node] >= 0) {
      int from = prev[node];
      if (node >= 4) {
        flow[from][node - 4] += push;
        total += push * cost[from][node - 4];
      } else {
        flow[node][from - 4] -= push;
        total -= push * cost[node][from - 4];
      }
      node = from;
    }
    left[node] -= push;
    need[sink] -= push;
  }
  return total;
}

}  // namespace

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::kTotalVariation: return "tv";
    case Metric::kEarthMovers: return "emd";
    case Metric::kGuardedKl: return "kl";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  if (name == "tv") return Metric::kTotalVariation;
  if (name == "emd") return Metric::kEarthMovers;
  if (name == "kl") return Metric::kGuardedKl;
  throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(name) + "'");
}

bool is_distribution(const Distribution4& p, double tol) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= -tol)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tol;
}

QShape build_qshape(const Tpm2& tpm, DyadState state) {
  require_dyad_like(tpm);
  QShape q;
  q.source_state = state;
  q.rows[static_cast<int>(QShapeRow::kAEffect)] = forward_image(tpm, Unit::kA, state.a);
  q.rows[static_cast<int>(QShapeRow::kACause)] = backward_image(tpm, Unit::kA, state.a);
  q.rows[static_cast<int>(QShapeRow::kBEffect)] = forward_image(tpm, Unit::kB, state.b);
  q.rows[static_cast<int>(QShapeRow::kBCause)] = backward_image(tpm, Unit::kB, state.b);
  return q;
}

QShape4Style build_qshape_iit4(const Tpm2& tpm, DyadState state) {
  require_dyad_like(tpm);
  PhiReport report = big_phi(tpm, state);
  return QShape4Style{report.phi_A, report.phi_B, report.maximizing_states[0].value(),
                      report.maximizing_states[1].value()};
}

Matrix4 discrete_ground_metric() {
  Matrix4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = i == j ? 0.0 : 1.0;
  return m;
}

double earth_movers_distance(const Distribution4& p, const Distribution4& q, const Matrix4& ground) {
  return min_cost_transport(p, q, ground);
}

double row_distance(const Distribution4& p, const Distribution4& q, Metric metric) {
  switch (metric) {
    case Metric::kTotalVariation: {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) s += std::abs(p[i] - q[i]);
      return 0.5 * s;
    }
    case Metric::kEarthMovers:
      return earth_movers_distance(p, q, discrete_ground_metric());
    case Metric::kGuardedKl: {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) {
          throw Error(ErrorCode::kKlUndefined, "q vanishes where p = " + std::to_string(p[i]));
        }
        s += p[i] * std::log2(p[i] / q[i]);
      }
      return s;
    }
  }
  return 0.0;
}

double qshape_distance(const QShape& q, const QShape& other, Metric metric) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += row_distance(q.rows[i], other.rows[i], metric);
  return s;
}

DistanceTable::DistanceTable(const Matrix4& entries) : entries_(entries) {
  for (int i = 0; i < 4; ++i) {
    if (entries_[i][i] != 0.0) throw Error(ErrorCode::kInvalidArgument, "distance table diagonal must be zero");
    for (int j = 0; j < 4; ++j) {
      double d = entries_[i][j];
      if (!std::isfinite(d) || d < 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "distance table entries must be finite and non-negative");
      }
      if (d != entries_[j][i]) throw Error(ErrorCode::kInvalidArgument, "distance table must be symmetric");
    }
  }
}

double DistanceTable::max_entry() const {
  double m = 0.0;
  for (const auto& row : entries_)
    for (double d : row) m = std::max(m, d);
  return m;
}

DistanceTable DistanceTable::uniform(double value) {
  Matrix4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = i == j ? 0.0 : value;
  return DistanceTable(m);
}

DistanceTable distance_table(const Tpm2& tpm, Metric metric) {
  if (!is_symmetric(metric)) {
    throw Error(ErrorCode::kAsymmetricMetric, std::string("metric '") + metric_name(metric) +
                                                  "' cannot fill a symmetric distance table");
  }
  std::array<QShape, 4> shapes;
  for (DyadState s : kAllStates) shapes[s.index()] = build_qshape(tpm, s);
  Matrix4 m{};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      m[i][j] = m[j][i] = qshape_distance(shapes[i], shapes[j], metric);
    }
  }
  return DistanceTable(m);
}

std::array<std::array<std::optional<double>, 4>, 4> directed_distances(const Tpm2& tpm, Metric metric) {
  std::array<QShape, 4> shapes;
  for (DyadState s : kAllStates) shapes[s.index()] = build_qshape(tpm, s);
  std::array<std::array<std::optional<double>, 4>, 4> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      try {
        out[i][j] = qshape_distance(shapes[i], shapes[j], metric);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kKlUndefined) throw;
      }
    }
  }
  return out;
}

std::array<double, 8> part_coordinates(const QShape& q, Unit part) {
  const auto& effect = q.row(part == Unit::kA ? QShapeRow::kAEffect : QShapeRow::kBEffect);
  const auto& cause = q.row(part == Unit::kA ? QShapeRow::kACause : QShapeRow::kBCause);
  std::array<double, 8> out{};
  std::copy(effect.begin(), effect.end(), out.begin());
  std::copy(cause.begin(), cause.end(), out.begin() + 4);
  return out;
}

}  // namespace dyad
