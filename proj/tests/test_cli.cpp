#include <gtest/gtest.h>

#include <sstream>

#include "symcheck/checks.hpp"

using namespace symcheck;

TEST(Registry, SizeAndOrdering) {
  const auto& reg = check_registry();
  EXPECT_GE(reg.size(), 40u);
  for (size_t i = 0; i + 1 < reg.size(); ++i) EXPECT_LT(reg[i].id, reg[i + 1].id);
  for (const auto& d : reg) {
    EXPECT_FALSE(d.description.empty());
    EXPECT_TRUE(static_cast<bool>(d.run));
    EXPECT_GE(d.default_tol, 0.0);
  }
}

TEST(Registry, UnknownIdRejected) {
  EXPECT_THROW(run_check("no-such-check"), std::invalid_argument);
  EXPECT_THROW(find_check("no-such-check"), std::invalid_argument);
}

TEST(Run, PinnedMonotoneRadius) {
  const CheckDescriptor& d = find_check("monotone-radius-quadric");
  CheckParams p;
  p.qp = {{"k", 0}, {"m", 1}};
  CheckOutcome o = d.run(p);
  EXPECT_NEAR(o.value, 0.5, 1e-12);
  EXPECT_LE(o.metric, d.default_tol);
}

TEST(Run, PinnedProfileArea) {
  const CheckDescriptor& d = find_check("area-profile");
  CheckParams p;
  p.qp = {{"alpha", 0.25}};
  CheckOutcome o = d.run(p);
  EXPECT_NEAR(o.value, 3 * M_PI / 4, 1e-6);
  EXPECT_LE(o.metric, 1e-6);
}

TEST(Run, QueryParametersReachTheCheck) {
  CheckParams p;
  p.samples = 50;
  CheckReport r = run_check("monotone-radius-projective?k=1&m=1", p);
  EXPECT_EQ(r.status, "pass");
  EXPECT_EQ(r.id, "monotone-radius-projective?k=1&m=1");
}

TEST(Run, DeterministicForFixedSeed) {
  CheckParams p;
  p.samples = 200;
  p.seed = 11;
  std::vector<std::string> ids = {"quat-sandwich", "helper-f-identity", "lattice-parity"};
  auto a = run_checks(ids, p, false);
  auto b = run_checks(ids, p, true);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].status, b[i].status);
    EXPECT_EQ(a[i].metric, b[i].metric);
    EXPECT_EQ(a[i].tolerance, b[i].tolerance);
    EXPECT_EQ(a[i].seed, b[i].seed);
  }
  // reports come back sorted by id regardless of the requested order
  for (size_t i = 0; i + 1 < a.size(); ++i) EXPECT_LT(a[i].id, a[i + 1].id);
}

TEST(Run, ToleranceOverride) {
  CheckParams p;
  p.samples = 50;
  p.tol = 1e-30;  // stricter than any floating-point metric
  CheckReport r = run_check("helper-f-identity", p);
  EXPECT_EQ(r.tolerance, 1e-30);
}

TEST(Json, RoundTrip) {
  CheckReport r;
  r.id = "area-profile?alpha=0.25";
  r.status = "pass";
  r.metric = 3.25e-9;
  r.tolerance = 1e-6;
  r.samples = 1000;
  r.seed = 7;
  r.elapsed_ms = 12.5;
  r.notes = "quadrature";
  CheckReport back = report_from_json(report_to_json(r));
  EXPECT_EQ(back.id, r.id);
  EXPECT_EQ(back.status, r.status);
  EXPECT_EQ(back.metric, r.metric);
  EXPECT_EQ(back.tolerance, r.tolerance);
  EXPECT_EQ(back.samples, r.samples);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.elapsed_ms, r.elapsed_ms);
  EXPECT_EQ(back.notes, r.notes);

  nlohmann::json top = reports_to_json({r}, 7);
  EXPECT_EQ(top.at("run_seed").get<unsigned long long>(), 7u);
  EXPECT_EQ(top.at("checks").size(), 1u);
}

TEST(Sweep, CsvRows) {
  std::vector<double> alphas;
  for (int i = 1; i <= 9; ++i) alphas.push_back(0.1 * i);
  std::stringstream ss;
  sweep_check("area-profile", "", alphas, ss);
  std::string line;
  ASSERT_TRUE(std::getline(ss, line));
  EXPECT_EQ(line, "parameter,value,expected,abs_error");
  int rows = 0;
  while (std::getline(ss, line)) {
    ++rows;
    double param, value, expected, err;
    char comma;
    std::stringstream row(line);
    row >> param >> comma >> value >> comma >> expected >> comma >> err;
    EXPECT_LE(err, 1e-6) << line;
  }
  EXPECT_EQ(rows, 9);
}

TEST(Sweep, EmptyRangeIsHeaderOnly) {
  std::stringstream ss;
  sweep_check("area-disk-bundle", "a", {}, ss);
  EXPECT_EQ(ss.str(), "parameter,value,expected,abs_error\n");
}

TEST(Sweep, NonSweepableCheckRejected) {
  std::stringstream ss;
  EXPECT_THROW(sweep_check("quat-sandwich", "", {0.5}, ss), std::invalid_argument);
}
