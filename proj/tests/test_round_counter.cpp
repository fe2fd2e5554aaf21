#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "snapcx/errors.hpp"
#include "snapcx/round_counter.hpp"
#include "snapcx/small_set.hpp"

using namespace snapcx;

namespace {

RoundCounter random_counter(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 5), count(-1, 3);
  std::map<ProcessId, int> e;
  const int n = size(rng);
  for (int p = 0; p < n; ++p)
    if (int c = count(rng); c >= 0) e[p] = c;
  return RoundCounter(e);
}

ProcessSet random_subset(std::mt19937_64& rng, ProcessSet of) {
  ProcessSet s;
  for (int p : of)
    if (rng() & 1) s.insert(p);
  return s;
}

}  // namespace

TEST_CASE("small sets") {
  ProcessSet s{0, 2, 5};
  CHECK(s.size() == 3);
  CHECK(s.to_string() == "{0,2,5}");
  CHECK(ProcessSet::parse("{0,2,5}") == s);
  CHECK(ProcessSet::parse("0,2,5") == s);
  CHECK(ProcessSet::parse("{}").empty());
  CHECK(ProcessSet::parse("").empty());
  CHECK_THROWS_AS(ProcessSet::parse("{0,64}"), InvalidInput);
  CHECK_THROWS_AS(ProcessSet::parse("{a}"), InvalidInput);
  CHECK((s - ProcessSet{2}) == ProcessSet{0, 5});
  CHECK(ProcessSet{0}.proper_subset_of(s));

  auto subs = subsets_of(ProcessSet{0, 1, 2});
  REQUIRE(subs.size() == 8);
  CHECK(subs.front().empty());
  CHECK(subs[1] == ProcessSet{0});
  CHECK(subs[3] == ProcessSet{2});
  CHECK(subs[4] == ProcessSet{0, 1});
  CHECK(subs.back() == ProcessSet{0, 1, 2});
}

TEST_CASE("classify") {
  auto c = classify(RoundCounter::of({2, 1, 1}));
  CHECK(c.support == ProcessSet{0, 1, 2});
  CHECK(c.active == ProcessSet{0, 1, 2});
  CHECK(c.passive.empty());
  CHECK(c.cardinality == 4);

  c = classify(RoundCounter::of({1, 0, 1}));
  CHECK(c.active == ProcessSet{0, 2});
  CHECK(c.passive == ProcessSet{1});
  CHECK(c.cardinality == 2);

  c = classify(RoundCounter{});
  CHECK(c.support.empty());
  CHECK(c.cardinality == 0);
}

TEST_CASE("text syntax") {
  CHECK(RoundCounter::parse("2,1,1") == RoundCounter::of({2, 1, 1}));
  const auto gap = RoundCounter::parse("2,x,1");
  CHECK(gap.support() == ProcessSet{0, 2});
  CHECK(gap.to_text() == "2,x,1");
  CHECK(RoundCounter::parse("1,x,x").to_text() == "1");
  CHECK(RoundCounter::parse("").support().empty());
  CHECK_THROWS_AS(RoundCounter::parse("1,-1"), InvalidInput);
  CHECK_THROWS_AS(RoundCounter::parse("1,,2"), InvalidInput);
  CHECK_THROWS_AS(RoundCounter::parse("one"), InvalidInput);
}

TEST_CASE("deletion and execution") {
  const auto r = RoundCounter::of({2, 1, 1});
  CHECK(without(r, ProcessSet{1}) == RoundCounter({{0, 2}, {2, 1}}));
  CHECK(without(r, {}) == r);
  CHECK(without(r, ProcessSet{7}) == r);
  CHECK(execute(r, ProcessSet{0}) == RoundCounter::of({1, 1, 1}));
  CHECK(execute(r, ProcessSet{0, 1, 2}) == RoundCounter::of({1, 0, 0}));
  CHECK_THROWS_AS(execute(RoundCounter::of({1, 0}), ProcessSet{1}), InvalidInput);
  CHECK_THROWS_AS(execute(r, ProcessSet{4}), InvalidInput);

  CHECK(restricted(r, ProcessSet{0, 1}, ProcessSet{1}) ==
        RoundCounter({{0, 1}, {2, 1}}));
  CHECK(restricted(r, ProcessSet{0}, {}) == RoundCounter::of({1, 1, 1}));
}

TEST_CASE("chi") {
  CHECK(chi(RoundCounter::of({2, 1, 1})) == RoundCounter::of({1, 1, 1}));
  CHECK(chi(RoundCounter::of({1, 0, 1})) == RoundCounter::of({1, 0, 1}));
  CHECK(chi_of(ProcessSet{0, 2}, ProcessSet{1}) == RoundCounter::of({1, 0, 1}));
  CHECK_THROWS_AS(chi_of(ProcessSet{0}, ProcessSet{0}), InvalidInput);
}

TEST_CASE("random identities") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const RoundCounter r = random_counter(rng);
    const ProcessSet supp = r.support(), act = r.active();

    CHECK(chi(chi(r)) == chi(r));

    const ProcessSet a = random_subset(rng, supp);
    CHECK(without(r, a).support() == supp - a);

    const ProcessSet s = random_subset(rng, act);
    ProcessSet still_active;
    for (int p : act)
      if (!s.contains(p) || r.count(p) >= 2) still_active.insert(p);
    CHECK(execute(r, s).active() == still_active);
    CHECK(execute(r, s).support() == supp);

    // (r ↓ S) \ A = (r \ A) ↓ (S \ A), and = (r \ A) ↓ S for A ∩ S = ∅.
    CHECK(without(execute(r, s), a) == execute(without(r, a), s - a));
    const ProcessSet a_off = a - s;
    CHECK(restricted(r, s, a_off) == execute(without(r, a_off), s));

    const ProcessSet c = random_subset(rng, ProcessSet::range(6));
    const ProcessSet d = random_subset(rng, ProcessSet::range(6) - c);
    const ProcessSet x = random_subset(rng, ProcessSet::range(6));
    CHECK(without(chi_of(c, d), x) == chi_of(c - x, d - x));
    const ProcessSet sub = random_subset(rng, c);
    CHECK(execute(chi_of(c, d), sub) == chi_of(c - sub, d | sub));
  }
}
