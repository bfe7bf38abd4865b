#include <doctest.h>

#include "jnum/errors.hpp"
#include "jnum/jumping.hpp"
#include "support/support.hpp"

#include <random>

using namespace jnum;
using jnum::testing::data_file;
using jnum::testing::q;

namespace {

ResolutionData load(const char* name) { return parse_resolution(data_file(name)); }

std::vector<Rational> values(const std::vector<SupercandidateRecord>& recs) {
  std::vector<Rational> out;
  for (const auto& r : recs) out.push_back(r.lambda);
  return out;
}

std::vector<Rational> tenths(int lo, int hi) {
  std::vector<Rational> out;
  for (int n = lo; n <= hi; ++n) out.push_back(q(n, 10));
  return out;
}

}  // namespace

TEST_CASE("lct") {
  CHECK(lct(load("cusp.json")) == q(5, 6));
  CHECK(lct(load("example1.json")) == q(5, 9));
  CHECK(lct(load("aad14-ideal.json")) == q(1, 2));
  CHECK(lct(make_example2(3)) == q(1, 2));
}

TEST_CASE("candidates") {
  CHECK(candidates(load("cusp.json"), q(1)) == std::vector<Rational>{q(5, 6), q(1)});
  CHECK(candidates(load("example1.json"), q(5, 9)) == std::vector<Rational>{q(5, 9)});
  CHECK(candidates(load("cusp.json"), q(1, 2)).empty());
}

TEST_CASE("next_supercandidate") {
  auto e1 = load("example1.json");
  auto [l1, g1] = next_supercandidate(e1, Divisor{{"E1", 1}, {"E2", 1}, {"E3", 2}, {"E4", 3}, {"E5", 1}, {"E6", 1}});
  CHECK(l1 == q(2, 3));
  CHECK(g1 == std::vector<std::string>{"E2", "E4"});
  auto c = load("cusp.json");
  auto [l2, g2] = next_supercandidate(c, Divisor{{"E1", 1}, {"E2", 1}, {"E3", 2}});
  CHECK(l2 == q(1));
  CHECK(g2 == std::vector<std::string>{"D_aff"});
}

TEST_CASE("example1 supercandidate table") {
  auto r = load("example1.json");
  auto recs = supercandidates(r, q(1));
  std::vector<std::pair<Rational, std::vector<std::string>>> expected = {
      {q(5, 9), {"E2", "E4"}},  {q(2, 3), {"E2", "E4"}},   {q(20, 27), {"E4"}},
      {q(7, 9), {"E2", "E4"}},  {q(23, 27), {"E4"}},       {q(8, 9), {"E2", "E4"}},
      {q(25, 27), {"E4"}},      {q(26, 27), {"E4"}},
      {q(1), {"D_aff", "E1", "E2", "E3", "E4", "E5", "E6"}}};
  REQUIRE(recs.size() == expected.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].lambda == expected[i].first);
    CHECK(recs[i].g_lambda == expected[i].second);
  }
  CHECK(recs[0].d_lambda == Divisor{{"E1", 1}, {"E2", 1}, {"E3", 2}, {"E4", 3}, {"E5", 1}, {"E6", 1}});
}

TEST_CASE("is_candidate_for and contribution_class") {
  auto c = load("cusp.json");
  CHECK(is_candidate_for(c, q(5, 6), {"E3"}));
  CHECK_FALSE(is_candidate_for(c, q(5, 6), {"E1"}));
  CHECK(is_candidate_for(c, q(1), {"D_aff"}));

  auto r = load("example1.json");
  auto cls = contribution_class(r, q(7, 9), Divisor{{"E2", 1}}, "E2");
  CHECK(decide_effective(r.geometry("E2").oracle, cls).verdict == Verdict::Effective);
  CHECK(contribution_class(r, q(5, 9), Divisor{{"E2", 1}, {"E4", 1}}, "E2").is_zero());
  CHECK(contribution_class(r, q(5, 9), Divisor{{"E2", 1}, {"E4", 1}}, "E4").is_zero());
  CHECK_THROWS_AS(contribution_class(r, q(5, 9), Divisor{{"E1", 1}}, "E1"), NotACandidate);
}

TEST_CASE("example1 certification rules") {
  auto r = load("example1.json");
  auto recs = supercandidates(r, q(1));
  certify_all(r, recs);
  std::vector<Rule> rules = {Rule::R5, Rule::R5, Rule::R3, Rule::R4, Rule::R3,
                             Rule::R4, Rule::R3, Rule::R3, Rule::R1};
  REQUIRE(recs.size() == rules.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].status.verdict == CertVerdict::CertifiedJumping);
    REQUIRE(recs[i].status.rule);
    CHECK(*recs[i].status.rule == rules[i]);
    CHECK(verify_status(r, recs[i], recs));
  }
  CHECK(recs[2].status.witness == Divisor{{"E4", 1}});
  CHECK(recs[1].status.witness == Divisor{{"E2", 1}, {"E4", 1}});
  CHECK(recs[3].status.witness == Divisor{{"E2", 1}});
}

TEST_CASE("verify_status rejects tampered statuses") {
  auto r = load("example1.json");
  auto recs = supercandidates(r, q(1));
  certify_all(r, recs);
  auto bad = recs[2];
  bad.status.witness = Divisor{{"E2", 1}};
  CHECK_FALSE(verify_status(r, bad, recs));
  auto bad2 = recs[1];
  bad2.status.rule = Rule::R6;
  bad2.status.verdict = CertVerdict::CertifiedNotJumping;
  CHECK_FALSE(verify_status(r, bad2, recs));
}

TEST_CASE("cusp and example2 jumping numbers") {
  auto c = load("cusp.json");
  auto recs = supercandidates(c, q(3));
  certify_all(c, recs);
  CHECK(values(recs) == std::vector<Rational>{q(5, 6), q(1), q(11, 6), q(2), q(17, 6), q(3)});
  for (const auto& rec : recs) CHECK(rec.status.verdict == CertVerdict::CertifiedJumping);

  auto e2 = make_example2(3);
  auto r2 = supercandidates(e2, q(1));
  certify_all(e2, r2);
  CHECK(values(r2) == std::vector<Rational>{q(1, 2), q(9, 14), q(11, 14), q(13, 14), q(1)});
  for (const auto& rec : r2) {
    CHECK(rec.status.verdict == CertVerdict::CertifiedJumping);
    CHECK(verify_status(e2, rec, r2));
  }
}

TEST_CASE("ideal dataset") {
  auto r = load("aad14-ideal.json");
  CHECK(skoda_threshold(r) == 2);
  auto one = supercandidates(r, q(1));
  CHECK(values(one) == std::vector<Rational>{q(1, 2), q(7, 10), q(9, 10), q(1)});
  auto recs = supercandidates(r, q(2));
  certify_all(r, recs);
  auto expected = tenths(9, 20);
  expected.insert(expected.begin(), {q(1, 2), q(7, 10)});
  CHECK(values(recs) == expected);
  for (const auto& rec : recs) CHECK(rec.status.verdict == CertVerdict::CertifiedJumping);
  auto ext = extend_by_periodicity(r, recs, q(3));
  auto more = tenths(21, 30);
  expected.insert(expected.end(), more.begin(), more.end());
  CHECK(ext == expected);
  CHECK_THROWS_AS(extend_by_periodicity(r, one, q(3)), InsufficientBaseWindow);
}

TEST_CASE("extend_by_periodicity for divisors") {
  auto c = load("cusp.json");
  auto recs = supercandidates(c, q(1));
  certify_all(c, recs);
  CHECK(extend_by_periodicity(c, recs, q(3)) ==
        std::vector<Rational>{q(5, 6), q(1), q(11, 6), q(2), q(17, 6), q(3)});
  CHECK(extend_by_periodicity(c, recs, q(9, 10)) == std::vector<Rational>{q(5, 6)});
  auto first = std::vector<SupercandidateRecord>{recs[0]};
  CHECK_THROWS_AS(extend_by_periodicity(c, first, q(3)), InsufficientBaseWindow);
}

TEST_CASE("brute_scan") {
  CHECK(brute_scan(load("cusp.json"), q(2)) == std::vector<Rational>{q(5, 6), q(1), q(11, 6), q(2)});
  auto r = load("example1.json");
  CHECK(brute_scan(r, q(1)) == values(supercandidates(r, q(1))));
  CHECK(brute_scan(r, q(1, 2)).empty());
}

TEST_CASE("supercandidate invariants on random surfaces") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = jnum::testing::random_surface(rng, 5);
    auto r = s.data();
    auto recs = supercandidates(r, q(2));
    REQUIRE_FALSE(recs.empty());
    CHECK(recs[0].lambda == lct(r));
    std::int64_t emax = 1;
    for (auto e : s.e) emax = std::max(emax, e);
    for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].lambda - recs[i - 1].lambda >= q(1, emax));
    // Sandwich: candidates strictly between consecutive values keep the old closure.
    auto cands = candidates(r, q(2));
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
      for (const auto& c : cands) {
        if (c > recs[i].lambda && c < recs[i + 1].lambda)
          CHECK(closure(r, twist_divisor(r, c)) == recs[i].d_lambda);
      }
    }
    CHECK(values(recs) == jnum::testing::surface_jumps(s, q(2)));
    certify_all(r, recs);
    for (const auto& rec : recs) {
      CHECK(rec.status.verdict != CertVerdict::CertifiedNotJumping);
      CHECK(verify_status(r, rec, recs));
    }
  }
}
