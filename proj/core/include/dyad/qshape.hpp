#pragma once

// Q-shapes of the dyad and distances between them.
//
// A Q-shape is four distributions over the dyad's states: for each part, the
// one-step forward (effect) and backward (cause) images of the system with
// that part fixed and the other part replaced by an equiprobable bit.

#include <array>
#include <optional>

#include "dyad/model.hpp"

namespace dyad {

using Distribution4 = std::array<double, 4>;
using Matrix4 = std::array<std::array<double, 4>, 4>;

enum class QShapeRow { kAEffect = 0, kACause = 1, kBEffect = 2, kBCause = 3 };

struct QShape {
  std::array<Distribution4, 4> rows{};
  DyadState source_state{};

  const Distribution4& row(QShapeRow r) const { return rows[static_cast<int>(r)]; }
  bool operator==(const QShape&) const = default;
};

/// The IIT4.0-style summary: phi of each part and the partner state it was
/// attained over.
struct QShape4Style {
  double phi_A = 0.0;
  double phi_B = 0.0;
  int maximizer_A = 0;  // state of B
  int maximizer_B = 0;  // state of A
};

enum class Metric { kTotalVariation, kEarthMovers, kGuardedKl };

const char* metric_name(Metric m);
/// "tv", "emd" or "kl"; throws kInvalidArgument otherwise.
Metric parse_metric(std::string_view name);
/// Whether the metric satisfies d(p,q) = d(q,p).
constexpr bool is_symmetric(Metric m) { return m != Metric::kGuardedKl; }

/// Entries non-negative and summing to one within `tol`.
bool is_distribution(const Distribution4& p, double tol = 1e-12);

/// Requires a bijective, cross-coupled TPM (kNotBijective / kNotCrossCoupled).
QShape build_qshape(const Tpm2& tpm, DyadState state);

QShape4Style build_qshape_iit4(const Tpm2& tpm, DyadState state);

/// Ground metric with unit distance between distinct states.
Matrix4 discrete_ground_metric();

/// Earth mover's distance on the four-point space under `ground`.
double earth_movers_distance(const Distribution4& p, const Distribution4& q, const Matrix4& ground);

/// Total variation by default. Guarded KL throws kKlUndefined when q = 0
/// somewhere p > 0.
double row_distance(const Distribution4& p, const Distribution4& q,
                    Metric metric = Metric::kTotalVariation);

/// Sum of row distances.
double qshape_distance(const QShape& q, const QShape& other, Metric metric = Metric::kTotalVariation);

class DistanceTable {
 public:
  DistanceTable() = default;
  /// Throws kInvalidArgument unless the matrix is finite, non-negative,
  /// symmetric and has a zero diagonal.
  explicit DistanceTable(const Matrix4& entries);

  double operator()(DyadState p, DyadState q) const { return entries_[p.index()][q.index()]; }
  double at(int i, int j) const { return entries_[i][j]; }
  const Matrix4& entries() const { return entries_; }
  double max_entry() const;

  static DistanceTable zeros() { return DistanceTable(Matrix4{}); }
  /// All off-diagonal entries equal to `value`.
  static DistanceTable uniform(double value);

 private:
  Matrix4 entries_{};
};

/// Pairwise Q-shape distances of all four states. Only symmetric metrics are
/// accepted (kAsymmetricMetric otherwise).
DistanceTable distance_table(const Tpm2& tpm, Metric metric = Metric::kTotalVariation);

/// Directed distances d(Q(row), Q(col)) for any metric; entries where the
/// metric is undefined are empty.
std::array<std::array<std::optional<double>, 4>, 4> directed_distances(const Tpm2& tpm, Metric metric);

/// A part's location in the 8-dimensional phase space: its effect row
/// followed by its cause row.
std::array<double, 8> part_coordinates(const QShape& q, Unit part);

}  // namespace dyad
