#include "dyad/qshape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "dyad/error.hpp"
#include "test_support.hpp"

using namespace dyad;

namespace {

constexpr double kTol = 1e-12;
constexpr double h = 0.5;

// Minimum transport cost by enumerating every plan whose entries are
// multiples of `unit` (exact when all masses are multiples of `unit`).
double enumerate_emd(const Distribution4& p, const Distribution4& q, const Matrix4& ground, double unit) {
  std::array<int, 4> supply{}, demand{};
  for (int i = 0; i < 4; ++i) {
    supply[i] = static_cast<int>(std::lround(p[i] / unit));
    demand[i] = static_cast<int>(std::lround(q[i] / unit));
  }
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, double)> go = [&](int cell, double cost) {
    if (cell == 16) {
      bool done = true;
      for (int i = 0; i < 4; ++i) done = done && supply[i] == 0 && demand[i] == 0;
      if (done) best = std::min(best, cost);
      return;
    }
    int i = cell / 4, j = cell % 4;
    int cap = std::min(supply[i], demand[j]);
    for (int m = 0; m <= cap; ++m) {
      supply[i] -= m;
      demand[j] -= m;
      go(cell + 1, cost + m * unit * ground[i][j]);
      supply[i] += m;
      demand[j] += m;
    }
  };
  go(0, 0.0);
  return best;
}

std::vector<Distribution4> all_rows() {
  std::vector<Distribution4> rows;
  for (const Tpm2& t : fixtures::bijective_cross_coupled_tpms())
    for (DyadState s : kAllStates)
      for (const auto& r : build_qshape(t, s).rows) rows.push_back(r);
  return rows;
}

}  // namespace

TEST(BuildQShape, swap_state_10) {
  QShape q = build_qshape(Tpm2::swap(), {1, 0});
  std::array<Distribution4, 4> expected = {{{0, h, 0, h}, {0, h, 0, h}, {h, h, 0, 0}, {h, h, 0, 0}}};
  EXPECT_EQ(q.rows, expected);
  EXPECT_EQ(q.source_state, (DyadState{1, 0}));
}

TEST(BuildQShape, swap_other_states) {
  Tpm2 swap = Tpm2::swap();
  std::array<Distribution4, 4> q00 = {{{h, 0, h, 0}, {h, 0, h, 0}, {h, h, 0, 0}, {h, h, 0, 0}}};
  std::array<Distribution4, 4> q01 = {{{h, 0, h, 0}, {h, 0, h, 0}, {0, 0, h, h}, {0, 0, h, h}}};
  std::array<Distribution4, 4> q11 = {{{0, h, 0, h}, {0, h, 0, h}, {0, 0, h, h}, {0, 0, h, h}}};
  EXPECT_EQ(build_qshape(swap, {0, 0}).rows, q00);
  EXPECT_EQ(build_qshape(swap, {0, 1}).rows, q01);
  EXPECT_EQ(build_qshape(swap, {1, 1}).rows, q11);
}

TEST(BuildQShape, swap_effect_rows_equal_cause_rows) {
  for (DyadState s : kAllStates) {
    QShape q = build_qshape(Tpm2::swap(), s);
    EXPECT_EQ(q.row(QShapeRow::kAEffect), q.row(QShapeRow::kACause));
    EXPECT_EQ(q.row(QShapeRow::kBEffect), q.row(QShapeRow::kBCause));
  }
}

TEST(BuildQShape, swap_shapes_are_pairwise_distinct) {
  std::set<std::array<Distribution4, 4>> seen;
  for (DyadState s : kAllStates) seen.insert(build_qshape(Tpm2::swap(), s).rows);
  EXPECT_EQ(seen.size(), 4u);
}

TEST(BuildQShape, rejects_unsupported_tpms) {
  try {
    build_qshape(Tpm2::identity(), {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCrossCoupled);
  }
  try {
    build_qshape(Tpm2::constant({0, 0}), {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotBijective);
  }
}

TEST(BuildQShape, not_swap_rows_are_distributions) {
  for (DyadState s : kAllStates) {
    for (const auto& row : build_qshape(Tpm2::not_swap(), s).rows) EXPECT_TRUE(is_distribution(row));
  }
}

TEST(BuildQShapeIit4, maximizers) {
  Tpm2 swap = Tpm2::swap();
  QShape4Style q10 = build_qshape_iit4(swap, {1, 0});
  EXPECT_EQ(q10.phi_A, 1.0);
  EXPECT_EQ(q10.phi_B, 1.0);
  EXPECT_EQ(q10.maximizer_A, 1);
  EXPECT_EQ(q10.maximizer_B, 0);

  QShape4Style q11 = build_qshape_iit4(swap, {1, 1});
  EXPECT_EQ(q11.maximizer_A, 1);
  EXPECT_EQ(q11.maximizer_B, 1);

  // A=0 determines B=0 next; B=0 determines A=0 next.
  QShape4Style q00 = build_qshape_iit4(swap, {0, 0});
  EXPECT_EQ(q00.maximizer_A, 0);
  EXPECT_EQ(q00.maximizer_B, 0);
}

TEST(BuildQShapeIit4, four_states_are_distinct) {
  std::set<std::pair<int, int>> seen;
  for (DyadState s : kAllStates) {
    auto q = build_qshape_iit4(Tpm2::swap(), s);
    seen.insert({q.maximizer_A, q.maximizer_B});
  }
  EXPECT_EQ(seen.size(), 4u);
}

TEST(RowDistance, total_variation) {
  EXPECT_NEAR(row_distance({0, h, 0, h}, {h, 0, h, 0}), 1.0, kTol);
  EXPECT_EQ(row_distance({0, h, 0, h}, {0, h, 0, h}), 0.0);
  EXPECT_NEAR(row_distance({1, 0, 0, 0}, {0, 1, 0, 0}), 1.0, kTol);
}

TEST(RowDistance, guarded_kl) {
  EXPECT_EQ(row_distance({0, h, 0, h}, {0, h, 0, h}, Metric::kGuardedKl), 0.0);
  EXPECT_NEAR(row_distance({h, h, 0, 0}, {0.25, 0.25, 0.25, 0.25}, Metric::kGuardedKl), 1.0, kTol);
  try {
    row_distance({0, h, 0, h}, {h, 0, h, 0}, Metric::kGuardedKl);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKlUndefined);
  }
}

TEST(RowDistance, emd_matches_transport_enumeration) {
  Matrix4 ground = discrete_ground_metric();
  auto rows = all_rows();
  for (const auto& p : rows)
    for (const auto& q : rows)
      EXPECT_NEAR(row_distance(p, q, Metric::kEarthMovers), enumerate_emd(p, q, ground, 0.5), kTol);
}

TEST(RowDistance, emd_with_line_ground_metric) {
  // |i - j| ground distance on a line of four points.
  Matrix4 line{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) line[i][j] = std::abs(i - j);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    // Random distributions on the 1/4 lattice.
    auto lattice = [&] {
      std::array<int, 4> c{};
      int left = 4;
      for (int i = 0; i < 3; ++i) {
        c[i] = std::min(left, pick(rng));
        left -= c[i];
      }
      c[3] = left;
      return Distribution4{c[0] / 4.0, c[1] / 4.0, c[2] / 4.0, c[3] / 4.0};
    };
    Distribution4 p = lattice(), q = lattice();
    EXPECT_NEAR(earth_movers_distance(p, q, line), enumerate_emd(p, q, line, 0.25), kTol);
  }
}

// Half the L1 distance, summed over rows.
double tv_by_hand(const QShape& x, const QShape& y) {
  double total = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int i = 0; i < 4; ++i) total += 0.5 * std::abs(x.rows[r][i] - y.rows[r][i]);
  return total;
}

TEST(QShapeDistance, swap_entries) {
  Tpm2 swap = Tpm2::swap();
  EXPECT_NEAR(qshape_distance(build_qshape(swap, {0, 1}), build_qshape(swap, {1, 0})), 4.0, kTol);
  EXPECT_NEAR(qshape_distance(build_qshape(swap, {0, 0}), build_qshape(swap, {0, 1})), 2.0, kTol);
  QShape q = build_qshape(swap, {1, 0});
  EXPECT_EQ(qshape_distance(q, q), 0.0);
  for (DyadState s : kAllStates)
    for (DyadState t : kAllStates)
      EXPECT_NEAR(qshape_distance(build_qshape(swap, s), build_qshape(swap, t)),
                  tv_by_hand(build_qshape(swap, s), build_qshape(swap, t)), kTol);
}

TEST(QShapeDistance, both_bit_flips_are_equally_far_under_any_symmetric_metric) {
  // Q(00) vs Q(11) and Q(01) vs Q(10) compare the same pairs of rows, so no
  // symmetric row metric can tell the two distances apart.
  Tpm2 swap = Tpm2::swap();
  QShape q00 = build_qshape(swap, {0, 0}), q11 = build_qshape(swap, {1, 1});
  QShape q01 = build_qshape(swap, {0, 1}), q10 = build_qshape(swap, {1, 0});
  for (int r = 0; r < 4; ++r) {
    auto a = std::minmax(q00.rows[r], q11.rows[r]);
    auto b = std::minmax(q01.rows[r], q10.rows[r]);
    EXPECT_EQ(a, b) << r;
  }
  Matrix4 line{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) line[i][j] = std::abs(i - j);
  EXPECT_NEAR(qshape_distance(q00, q11), qshape_distance(q01, q10), kTol);
  EXPECT_NEAR(qshape_distance(q00, q11, Metric::kEarthMovers), qshape_distance(q01, q10, Metric::kEarthMovers), kTol);
  double line_a = 0, line_b = 0;
  for (int r = 0; r < 4; ++r) {
    line_a += earth_movers_distance(q00.rows[r], q11.rows[r], line);
    line_b += earth_movers_distance(q01.rows[r], q10.rows[r], line);
  }
  EXPECT_NEAR(line_a, line_b, kTol);
}

TEST(DistanceTable, swap_table) {
  DistanceTable t = distance_table(Tpm2::swap());
  Matrix4 expected = {{{0, 2, 2, 4}, {2, 0, 4, 2}, {2, 4, 0, 2}, {4, 2, 2, 0}}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(t.at(i, j), expected[i][j], kTol);
}

TEST(DistanceTable, emd_table_equals_tv_table) {
  DistanceTable tv = distance_table(Tpm2::swap(), Metric::kTotalVariation);
  DistanceTable emd = distance_table(Tpm2::swap(), Metric::kEarthMovers);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(tv.at(i, j), emd.at(i, j), kTol);
}

TEST(DistanceTable, kl_is_not_a_table_metric) {
  EXPECT_THROW(distance_table(Tpm2::swap(), Metric::kGuardedKl), Error);
  auto directed = directed_distances(Tpm2::swap(), Metric::kGuardedKl);
  for (int i = 0; i < 4; ++i) {
    ASSERT_TRUE(directed[i][i].has_value());
    EXPECT_EQ(*directed[i][i], 0.0);
    for (int j = 0; j < 4; ++j) {
      if (i != j) EXPECT_FALSE(directed[i][j].has_value());
    }
  }
}

TEST(DistanceTable, validation) {
  Matrix4 bad = {{{0, 1, 0, 0}, {2, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
  EXPECT_THROW(DistanceTable{bad}, Error);
  Matrix4 diag = {{{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
  EXPECT_THROW(DistanceTable{diag}, Error);
  Matrix4 negative = {{{0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
  EXPECT_THROW(DistanceTable{negative}, Error);
}

TEST(QShapeProperties, rows_are_distributions) {
  for (const auto& row : all_rows()) EXPECT_TRUE(is_distribution(row));
}

TEST(QShapeProperties, total_variation_axioms) {
  auto rows = all_rows();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 24; ++i) rows.push_back(fixtures::random_distribution(rng));
  for (const auto& p : rows) {
    for (const auto& q : rows) {
      double d = row_distance(p, q);
      EXPECT_GE(d, 0.0);
      EXPECT_EQ(d, row_distance(q, p));
      EXPECT_EQ(d == 0.0, p == q);
      for (const auto& r : rows) EXPECT_LE(d, row_distance(p, r) + row_distance(r, q) + kTol);
    }
  }
}

TEST(QShapeProperties, tables_symmetric_with_zero_diagonal) {
  for (const Tpm2& t : fixtures::bijective_cross_coupled_tpms()) {
    for (Metric m : {Metric::kTotalVariation, Metric::kEarthMovers}) {
      DistanceTable table = distance_table(t, m);
      for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(table.at(i, i), 0.0);
        for (int j = 0; j < 4; ++j) EXPECT_EQ(table.at(i, j), table.at(j, i));
      }
    }
  }
}

TEST(PartCoordinates, flattening) {
  QShape q = build_qshape(Tpm2::swap(), {1, 0});
  std::array<double, 8> a = {0, h, 0, h, 0, h, 0, h};
  std::array<double, 8> b = {h, h, 0, 0, h, h, 0, 0};
  EXPECT_EQ(part_coordinates(q, Unit::kA), a);
  EXPECT_EQ(part_coordinates(q, Unit::kB), b);
}
