#include "dyad/serialize.hpp"

#include <gtest/gtest.h>

#include "dyad/error.hpp"

using namespace dyad;
using nlohmann::json;

TEST(Serialize, state_round_trip) {
  for (DyadState s : kAllStates) {
    json j = s;
    EXPECT_EQ(j, json::array({s.a, s.b}));
    EXPECT_EQ(j.get<DyadState>(), s);
  }
  EXPECT_THROW(json::array({0, 2}).get<DyadState>(), Error);
}

TEST(Serialize, tpm_round_trip) {
  json j = Tpm2::swap();
  EXPECT_EQ(j, json::parse("[0,2,1,3]"));
  EXPECT_EQ(tpm_from_json(j).output_indices(), Tpm2::swap().output_indices());
  EXPECT_THROW(tpm_from_json(json::parse("[0,1,2]")), Error);
  EXPECT_THROW(tpm_from_json(json::parse("[0,1,2,7]")), Error);
  EXPECT_THROW(tpm_from_json(json::parse("\"swap\"")), Error);
}

TEST(Serialize, phi_report) {
  json j = big_phi(Tpm2::swap(), {1, 0});
  EXPECT_DOUBLE_EQ(j.at("big_phi").get<double>(), 2.0);
  EXPECT_EQ(j.at("maximizing_states").at("A"), 1);
  EXPECT_EQ(j.at("maximizing_states").at("B"), 0);
  EXPECT_TRUE(j.at("flags").empty());

  json flagged = big_phi(Tpm2::identity(), {0, 0});
  EXPECT_DOUBLE_EQ(flagged.at("big_phi").get<double>(), 0.0);
  ASSERT_EQ(flagged.at("flags").size(), 4u);
  EXPECT_EQ(flagged.at("flags")[0].at("code"), "NotCrossCoupled");
  EXPECT_TRUE(flagged.at("maximizing_states").at("A").is_null());
}

TEST(Serialize, distance_table_round_trip) {
  DistanceTable t = distance_table(Tpm2::swap());
  json j = t;
  EXPECT_DOUBLE_EQ(j[1][2].get<double>(), 4.0);
  EXPECT_DOUBLE_EQ(j[0][3].get<double>(), 4.0);
  EXPECT_EQ(table_from_json(j).entries(), t.entries());
  EXPECT_THROW(table_from_json(json::parse("[[0,1],[1,0]]")), Error);
  EXPECT_THROW(table_from_json(json::parse("[[0,1,0,0],[2,0,0,0],[0,0,0,0],[0,0,0,0]]")), Error);
}

TEST(Serialize, optimization_result) {
  json j = solve(distance_table(Tpm2::swap()));
  EXPECT_EQ(j.at("count"), 8);
  EXPECT_DOUBLE_EQ(j.at("optimal_sum").get<double>(), 12.0);
  EXPECT_EQ(j.at("minimizers")[0], json::parse("[0.0,2.0,6.0,4.0]"));
  EXPECT_EQ(j.at("pairwise_rate_sums").size(), 8u);
}

TEST(Serialize, amplitudes) {
  PureState4 psi = amplitudes_from_json(json::parse("[0.6, [0, 0.8], 0, 0]"));
  EXPECT_EQ(psi[1], Complex(0, 0.8));
  EXPECT_THROW(amplitudes_from_json(json::parse("[1, 1, 0, 0]")), Error);
  EXPECT_THROW(amplitudes_from_json(json::parse("[1, 0, 0]")), Error);
  EXPECT_THROW(amplitudes_from_json(json::parse("[1, \"x\", 0, 0]")), Error);
}

TEST(Serialize, quantum_report) {
  json j = quantum_big_phi(DensityMatrix4::from_pure(PureState4::basis({0, 1})));
  EXPECT_NEAR(j.at("big_phi").get<double>(), 2.0, 1e-12);
  EXPECT_TRUE(j.at("AB").contains("phi_c"));
}
