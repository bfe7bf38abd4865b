#include <doctest.h>

#include "jnum/errors.hpp"
#include "jnum/unloading.hpp"
#include "support/support.hpp"

#include <algorithm>
#include <random>

using namespace jnum;
using jnum::testing::data_file;

namespace {

ResolutionData example1() { return parse_resolution(data_file("example1.json")); }
ResolutionData cusp() { return parse_resolution(data_file("cusp.json")); }

}  // namespace

TEST_CASE("example1: E2+E4 is refuted on E1, its closure is antieffective") {
  auto r = example1();
  auto rep = is_antieffective(r, Divisor{{"E2", 1}, {"E4", 1}});
  CHECK(rep.verdict == Verdict::NotEffective);
  CHECK(rep.decisions.at("E1").verdict == Verdict::NotEffective);
  CHECK(rep.classes.at("E1") == PicClass{{0, -1, 1}});

  Divisor expected{{"E1", 1}, {"E2", 1}, {"E3", 2}, {"E4", 3}, {"E5", 1}, {"E6", 1}};
  CHECK(is_antieffective(r, expected).verdict == Verdict::Effective);
  auto [c, trace] = antieffective_closure(r, Divisor{{"E2", 1}, {"E4", 1}});
  CHECK(c == expected);
  CHECK(trace.final == expected);
  CHECK_FALSE(trace.steps.empty());
  const auto& first = trace.steps.front().added;
  CHECK(std::find(first.begin(), first.end(), "E1") != first.end());
}

TEST_CASE("cusp: closure of E3") {
  auto r = cusp();
  CHECK(closure(r, Divisor{{"E3", 1}}) == Divisor{{"E1", 1}, {"E2", 1}, {"E3", 2}});
}

TEST_CASE("antieffective input comes back unchanged with an empty trace") {
  auto r = example1();
  Divisor d{{"E1", 1}, {"E2", 1}, {"E3", 2}, {"E4", 3}, {"E5", 1}, {"E6", 1}};
  auto [c, trace] = antieffective_closure(r, d);
  CHECK(c == d);
  CHECK(trace.steps.empty());
}

TEST_CASE("sequential mode adds one prime per step") {
  auto r = example1();
  ClosureOptions opts;
  opts.mode = UnloadMode::Sequential;
  auto [c, trace] = antieffective_closure(r, Divisor{{"E2", 1}, {"E4", 1}}, opts);
  CHECK(c == closure(r, Divisor{{"E2", 1}, {"E4", 1}}));
  for (const auto& s : trace.steps) CHECK(s.added.size() == 1);
}

TEST_CASE("iteration cap") {
  auto r = cusp();
  ClosureOptions opts;
  opts.iteration_cap = 1;
  CHECK_THROWS_AS(closure(r, Divisor{{"E3", 1}}, opts), IterationCapExceeded);
}

TEST_CASE("orbit entries are raised as a whole") {
  auto r = make_example2(3);
  Divisor d = closure(r, Divisor{{"E3", 1}});
  CHECK(is_antieffective(r, d).verdict == Verdict::Effective);
  CHECK(Divisor{{"E3", 1}}.leq(d));
}

TEST_CASE("Unknown verdicts stop unloading with the blocking class") {
  // E1 has a necessary half-space x >= 0 and no generators: classes with
  // x >= 0 can be neither confirmed nor refuted.
  ExceptionalGeometry g;
  g.owner = "E1";
  g.pic_rank = 1;
  g.basis_labels = {"deg"};
  g.restrictions = {{"C", PicClass{{1}}}, {"E1", PicClass{{-1}}}};
  g.oracle.necessary = {{1}};
  ResolutionData r({{"C", PrimeKind::Affine, 1, false, 1, 0}, {"E1", PrimeKind::Exceptional, 1, false, 1, 1}},
                   {g}, InputKind::Divisor, std::nullopt, 2);
  try {
    closure(r, Divisor{{"E1", 1}});
    FAIL("expected UnknownEffectivity");
  } catch (const UnknownEffectivity& e) {
    CHECK(e.labels() == std::vector<std::string>{"E1"});
    CHECK(e.classes() == std::vector<PicClass>{PicClass{{1}}});
    CHECK_FALSE(e.lambda());
    auto at = e.at_lambda(jnum::testing::q(1, 2));
    CHECK(at.lambda() == jnum::testing::q(1, 2));
  }
  // A refuted class still drives unloading.
  CHECK(closure(r, Divisor{{"C", 1}}) == Divisor{{"C", 1}, {"E1", 1}});
}

TEST_CASE("2-D closure equals the classical antinef closure") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    auto s = jnum::testing::random_surface(rng);
    auto r = s.data();
    for (int i = 0; i < 8; ++i) {
      Divisor d = jnum::testing::random_divisor(rng, r, -3, 3);
      d.set("C", std::uniform_int_distribution<std::int64_t>(0, 2)(rng));
      CHECK(closure(r, d) == s.antinef_closure(d));
    }
  }
}

TEST_CASE("closure properties on random divisors") {
  std::mt19937_64 rng(43);
  for (const char* name : {"cusp.json", "example1.json", "aad14-ideal.json", "example2-d3.json"}) {
    auto r = parse_resolution(data_file(name));
    auto exc = r.exceptional_labels();
    for (int i = 0; i < 30; ++i) {
      Divisor a = jnum::testing::random_divisor(rng, r, -3, 3);
      Divisor b = a;
      for (const auto& E : exc) b.add(E, std::uniform_int_distribution<std::int64_t>(0, 2)(rng));
      Divisor ca, cb;
      try {
        ca = closure(r, a);
        cb = closure(r, b);
      } catch (const UnknownEffectivity&) {
        continue;
      }
      CHECK(a.leq(ca));
      Divisor added = ca - a;
      for (const auto& [label, v] : added.coefficients()) CHECK(r.is_exceptional(label));
      CHECK(closure(r, ca) == ca);
      CHECK(ca.leq(cb));
      CHECK(is_antieffective(r, Divisor::min(ca, cb)).verdict == Verdict::Effective);

      ClosureOptions seq;
      seq.mode = UnloadMode::Sequential;
      seq.order = exc;
      std::shuffle(seq.order.begin(), seq.order.end(), rng);
      CHECK(closure(r, a, seq) == ca);
    }
  }
}
