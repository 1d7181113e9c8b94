// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "hyperinv/io.hpp"
#include "hyperinv/sampling.hpp"

using namespace hyperinv;

TEST(StateFile, DensityRoundTripIsExact) {
  const DensityState rho = random_density({2, 3}, 4, std::uint64_t{5});
  const io::State back = io::parse_state(io::state_json(rho));
  ASSERT_TRUE(std::holds_alternative<DensityState>(back));
  const auto& got = std::get<DensityState>(back);
  EXPECT_EQ(got.dims(), rho.dims());
  EXPECT_EQ(got.matrix(), rho.matrix());
}

TEST(StateFile, PureRoundTripIsExact) {
  Rng rng = make_rng(6);
  const PureState phi = random_pure({2, 2, 2}, rng);
  const io::State back = io::parse_state(io::state_json(phi));
  ASSERT_TRUE(std::holds_alternative<PureState>(back));
  EXPECT_EQ(std::get<PureState>(back).amplitudes(), phi.amplitudes());
}

TEST(StateFile, RejectsBadInput) {
  EXPECT_THROW(io::parse_state("{\"kind\": \"density\", \"dims\": [2,"), ValidationError);
  EXPECT_THROW(io::parse_state("{\"dims\": [2]}"), ValidationError);
  EXPECT_THROW(io::parse_state("{\"kind\": \"mixed\", \"dims\": [2], \"matrix\": []}"), ValidationError);
  EXPECT_THROW(io::parse_state("{\"kind\": \"pure\", \"dims\": [0], \"amplitudes\": []}"), ValidationError);
  EXPECT_THROW(io::parse_state("{\"kind\": \"pure\", \"dims\": [2], \"amplitudes\": [[1, 0]]}"), ValidationError);
  // off-diagonal entries are not conjugates of each other
  EXPECT_THROW(io::parse_state("{\"kind\": \"density\", \"dims\": [2], "
                               "\"matrix\": [[[0.5, 0], [0.3, 0]], [[0, 0], [0.5, 0]]]}"),
               ValidationError);
}

TEST(StateFile, AcceptsSmallHermitianNoise) {
  const io::State s = io::parse_state("{\"kind\": \"density\", \"dims\": [2], "
                                      "\"matrix\": [[[0.5, 0], [0.1, 1e-10]], [[0.1, 0], [0.5, 0]]]}");
  const auto& rho = std::get<DensityState>(s);
  EXPECT_EQ(rho.matrix()(0, 1), std::conj(rho.matrix()(1, 0)));
}

TEST(OperatorFile, RoundTripAndGroupCheck) {
  Rng rng = make_rng(7);
  const LocalOperatorChain g = random_chain({2, 3}, GroupTag::SpecialLinear, rng);
  const LocalOperatorChain back = io::parse_operator(io::operator_json(g));
  EXPECT_EQ(back.tag(), GroupTag::SpecialLinear);
  ASSERT_EQ(back.ops().size(), 2u);
  EXPECT_EQ(back.ops()[1], g.ops()[1]);
  EXPECT_THROW(io::parse_operator("{\"kind\": \"operator\", \"group\": \"unitary\", \"dims\": [2], "
                                  "\"ops\": [[[[2, 0], [0, 0]], [[0, 0], [1, 0]]]]}"),
               ValidationError);
}

TEST(FingerprintOutput, JsonIsDeterministicAndFullPrecision) {
  const DensityState rho = random_density({2, 2}, 2, std::uint64_t{8});
  const std::string a = io::fingerprint_json(fingerprint(rho));
  EXPECT_EQ(a, io::fingerprint_json(fingerprint(rho)));
  const nlohmann::json j = nlohmann::json::parse(a);
  const auto fp = fingerprint(rho);
  ASSERT_EQ(j["entries"].size(), fp.entries.size());
  for (std::size_t i = 0; i < fp.entries.size(); ++i) {
    EXPECT_EQ(j["entries"][i]["name"].get<std::string>(), fp.entries[i].name);
    EXPECT_EQ(j["entries"][i]["value"][0].get<double>(), fp.entries[i].value.real());
  }
  EXPECT_EQ(j["convention"].get<std::string>(), kConvention);
}

TEST(FingerprintOutput, CsvLayout) {
  HyperMatrix a(Format{2, 2});
  a.at({0, 0}) = a.at({1, 1}) = 1.0 / std::sqrt(2.0);
  const std::string csv = io::fingerprint_csv(fingerprint(PureState(a)));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,re,im,guaranteed,constant");
  const auto row = csv.substr(csv.find('\n') + 1);
  EXPECT_EQ(row.substr(0, 12), "pure.det@v1,");
  EXPECT_NEAR(std::stod(row.substr(12)), 0.5, 1e-15);
  EXPECT_NE(row.find(",0,slocc,false\n"), std::string::npos) << csv;
}

TEST(Numbers, SeventeenSignificantDigits) {
  EXPECT_EQ(io::number(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(io::number(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(io::scalar({0.25, 0.0}), "0.25");
  EXPECT_EQ(io::scalar({0.25, -1.0}), "0.25 -1");
}

TEST(ReportOutput, JsonParses) {
  AuditConfig cfg;
  cfg.trials = 2;
  cfg.seed = 9;
  const auto reports = audit(random_density({2, 2}, 2, std::uint64_t{9}), cfg);
  const nlohmann::json j = nlohmann::json::parse(io::report_json(reports));
  ASSERT_EQ(j.size(), reports.size());
  EXPECT_EQ(j[0]["seed"].get<std::uint64_t>(), 9u);
  EXPECT_EQ(j[0]["group"].get<std::string>(), "SLOCC");
  EXPECT_NE(io::report_table(reports).find("seed 9"), std::string::npos);
}
