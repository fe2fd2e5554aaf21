#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "snapcx/errors.hpp"
#include "snapcx/serialize.hpp"
#include "snapcx/strata.hpp"

using namespace snapcx;

namespace {

Witness w(std::string_view key) { return witness_from_key(key); }

std::vector<SimplexId> meet(const std::vector<SimplexId>& a,
                            const std::vector<SimplexId>& b) {
  std::vector<SimplexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<ProcessSet> nonempty(ProcessSet s) {
  std::vector<ProcessSet> out;
  for (ProcessSet x : subsets_of(s))
    if (!x.empty()) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("stratum names") {
  CHECK(StratumRef::x(ProcessSet{0, 1}).to_string() == "X_{{0,1}}");
  CHECK(StratumRef::x(ProcessSet{0, 1}, ProcessSet{0}).to_string() == "X_{{0,1},{0}}");
  CHECK(StratumRef::z(ProcessSet{0, 1}).to_string() == "Z_{{0,1}}");
  CHECK(StratumRef::b(ProcessSet{2}).to_string() == "B_{{2}}");
  for (const StratumRef& ref :
       {StratumRef::x(ProcessSet{0}), StratumRef::y(ProcessSet{0, 1}, ProcessSet{1}),
        StratumRef::z(ProcessSet{2}), StratumRef::b(ProcessSet{0, 2}),
        StratumRef::xbv(ProcessSet{0}, {}, ProcessSet{1})}) {
    CHECK(StratumRef::parse(ref.to_string()) == ref);
  }
  CHECK(StratumRef::parse("{0,1}/{0}") == StratumRef::x(ProcessSet{0, 1}, ProcessSet{0}));
  CHECK(StratumRef::parse("{1}") == StratumRef::x(ProcessSet{1}));
  CHECK_THROWS_AS(StratumRef::parse("Q_{{0}}"), InvalidInput);
}

TEST_CASE("well-formedness") {
  const auto r = RoundCounter::of({1, 0, 1});
  CHECK_NOTHROW(check_well_formed(StratumRef::x(ProcessSet{0, 2}, ProcessSet{2}), r));
  CHECK_THROWS_AS(check_well_formed(StratumRef::x(ProcessSet{1}), r), InvalidInput);
  CHECK_THROWS_AS(check_well_formed(StratumRef::x(ProcessSet{0}, ProcessSet{2}), r),
                  InvalidInput);
  CHECK_THROWS_AS(check_well_formed(StratumRef::xbv(ProcessSet{0}, {}, ProcessSet{0}), r),
                  InvalidInput);
}

TEST_CASE("members of P(1,1)") {
  const Complex k = Complex::build(RoundCounter::of({1, 1}));
  // X_{0,1}: the central facet and all its faces.
  const SimplexId centre = k.id_of(w("({0,1},{})({0,1},{})"));
  auto faces = k.all_faces(centre);
  std::sort(faces.begin(), faces.end());
  CHECK(members(k, StratumRef::x(ProcessSet{0, 1})) == faces);

  const auto x0 = members(k, StratumRef::x(ProcessSet{0}));
  const auto x1 = members(k, StratumRef::x(ProcessSet{1}));
  CHECK(meet(x0, x1) == members(k, StratumRef::z(ProcessSet{0, 1})));
  CHECK(members(k, StratumRef::x({})).size() == k.size());
}

TEST_CASE("closure and cover") {
  for (const char* text : {"1,1", "2,1", "1,1,1", "2,1,1", "1,0,1", "2,2"}) {
    CAPTURE(text);
    const Complex k = Complex::build(RoundCounter::parse(text));
    const RoundCounter& r = k.counter();
    std::vector<char> covered(k.size(), 0);
    for (ProcessSet s : nonempty(r.active())) {
      for (ProcessSet a : subsets_of(s)) {
        CHECK(is_face_closed(k, members(k, StratumRef::x(s, a))));
        for (ProcessSet v : subsets_of(r.support() - s))
          CHECK(is_face_closed(k, members(k, StratumRef::xbv(s, a, v))));
      }
      for (SimplexId id : members(k, StratumRef::x(s))) covered[id] = 1;
    }
    for (ProcessSet v : subsets_of(r.support()))
      CHECK(is_face_closed(k, members(k, StratumRef::b(v))));
    CHECK(std::count(covered.begin(), covered.end(), 1) ==
          static_cast<long>(k.size()));
  }
}

TEST_CASE("serial and parallel membership agree") {
  const Complex k = Complex::build(RoundCounter::of({2, 1, 1}));
  for (ProcessSet s : nonempty(k.counter().active()))
    for (ProcessSet a : subsets_of(s))
      CHECK(members(k, StratumRef::x(s, a), Exec::serial) ==
            members(k, StratumRef::x(s, a), Exec::parallel));
}

TEST_CASE("gamma and rho") {
  CHECK(gamma(w("({0,1},{})({0,1},{})"), ProcessSet{0, 1}) == w("({0,1},{})"));
  CHECK(gamma(w("({0,1},{})({0},{1})"), ProcessSet{0, 1}) == w("({0},{1})"));
  CHECK_THROWS_AS(gamma(w("({0,1},{})({0},{})({1},{})"), ProcessSet{1}), InvalidInput);

  const Complex k = Complex::build(RoundCounter::of({2, 1, 1}));
  for (ProcessSet s : nonempty(k.counter().active())) {
    for (SimplexId id : members(k, StratumRef::x(s))) {
      const Witness& sigma = k.simplex(id);
      CHECK(rho(gamma(sigma, s), s) == sigma);
      for (ProcessSet a : subsets_of(s)) {
        if (!in_x(sigma, s, a)) continue;
        CHECK(gamma_inverse(gamma(sigma, s, a), s, a) == sigma);
      }
    }
  }
}

TEST_CASE("delta") {
  CHECK(delta(w("({},{0,1})"), ProcessSet{1}) == w("({},{0})"));
  CHECK(delta(w("({0},{1})({0},{})"), ProcessSet{1}) == w("({0},{})({0},{})"));
  CHECK_THROWS_AS(delta(w("({0,1},{})({0,1},{})"), ProcessSet{1}), InvalidInput);
  const Complex k = Complex::build(RoundCounter::of({2, 1, 1}));
  for (ProcessSet v : nonempty(k.counter().support()))
    for (SimplexId id : members(k, StratumRef::b(v)))
      CHECK(delta_inverse(delta(k.simplex(id), v), v) == k.simplex(id));
}

TEST_CASE("isomorphism certificates on P(2,1,1)") {
  const Complex k = Complex::build(RoundCounter::of({2, 1, 1}));
  const RoundCounter& r = k.counter();
  for (ProcessSet s : nonempty(r.active())) {
    for (ProcessSet a : subsets_of(s)) {
      const auto c = certify_gamma(k, s, a);
      CAPTURE(c.parameters);
      CHECK(c.valid());
    }
    CHECK(certify_rho(k, s).valid());
  }
  for (ProcessSet v : nonempty(r.support())) CHECK(certify_delta(k, v).valid());
}

TEST_CASE("pair intersections: closed forms") {
  CHECK(intersect_pair(ProcessSet{0}, {}, ProcessSet{0, 1}, {}) ==
        StratumRef::x(ProcessSet{0, 1}, ProcessSet{0}));
  CHECK(intersect_pair(ProcessSet{0}, {}, ProcessSet{1}, {}) ==
        StratumRef::z(ProcessSet{0, 1}));
  CHECK(intersect_family({ProcessSet{0, 1, 2}, ProcessSet{0}, ProcessSet{1}}).result ==
        StratumRef::x(ProcessSet{0, 1, 2}, ProcessSet{0, 1}));
}

TEST_CASE("pair, Y/Z and family intersections equal setwise ones") {
  for (const char* text : {"1,1,1", "2,1,1"}) {
    CAPTURE(text);
    const Complex k = Complex::build(RoundCounter::parse(text));
    const ProcessSet act = k.counter().active();
    const auto sets = nonempty(act);
    for (ProcessSet s : sets)
      for (ProcessSet a : subsets_of(s))
        for (ProcessSet t : sets)
          for (ProcessSet b : subsets_of(t)) {
            const auto setwise = meet(members(k, StratumRef::x(s, a)),
                                      members(k, StratumRef::x(t, b)));
            CHECK(members(k, intersect_pair(s, a, t, b)) == setwise);
          }

    std::vector<StratumRef> yz;
    for (ProcessSet s : sets) {
      yz.push_back(StratumRef::z(s));
      for (ProcessSet a : subsets_of(s))
        if (a != s) yz.push_back(StratumRef::y(s, a));
    }
    for (const auto& p : yz)
      for (const auto& q : yz) {
        const auto closed = intersect_yz(p, q);
        const auto setwise = meet(members(k, p), members(k, q));
        CHECK((closed ? members(k, *closed) : std::vector<SimplexId>{}) == setwise);
      }

    for (ProcessSet s1 : sets)
      for (ProcessSet s2 : sets)
        for (ProcessSet s3 : sets) {
          if (s1 == s2 || s1 == s3 || s2 == s3) continue;
          const auto setwise =
              meet(meet(members(k, StratumRef::x(s1)), members(k, StratumRef::x(s2))),
                   members(k, StratumRef::x(s3)));
          const auto fam = intersect_family({s1, s2, s3});
          CHECK(members(k, fam.result) == setwise);
          CHECK_FALSE(fam.folded);
          CHECK(members(k, intersect_family_folded({s1, s2, s3})) == setwise);
        }
  }
}

TEST_CASE("incidence closed form") {
  CHECK(incidence(ProcessSet{0, 1}, ProcessSet{0}, ProcessSet{0}, {}));
  CHECK_FALSE(incidence(ProcessSet{0, 1}, ProcessSet{0}, ProcessSet{0, 1}, ProcessSet{0, 1}));
  CHECK(incidence(ProcessSet{0}, ProcessSet{0}, ProcessSet{0}, ProcessSet{0}));
}

// The closed form misses containments X_{S,S} ⊆ X_{act,B} when act \ S is a
// single process and B ⊆ S. Everything else agrees with the setwise test.
TEST_CASE("incidence disagreements are confined to one family") {
  for (auto [text, expected] : {std::pair{"1,1", 4}, {"2,1", 4}, {"1,1,1", 12},
                                {"2,1,1", 12}, {"1,0,1", 4}, {"2,2", 4}}) {
    CAPTURE(text);
    const Complex k = Complex::build(RoundCounter::parse(text));
    const ProcessSet act = k.counter().active();
    int mismatches = 0;
    for (ProcessSet s : nonempty(act))
      for (ProcessSet a : subsets_of(s))
        for (ProcessSet t : nonempty(act))
          for (ProcessSet b : subsets_of(t)) {
            const auto xa = members(k, StratumRef::x(s, a));
            const auto xb = members(k, StratumRef::x(t, b));
            const bool setwise = std::includes(xb.begin(), xb.end(), xa.begin(), xa.end());
            if (setwise == incidence(s, a, t, b)) continue;
            ++mismatches;
            CHECK(setwise);
            CHECK(a == s);
            CHECK(t == act);
            CHECK((act - s).size() == 1);
            CHECK(b.subset_of(s));
          }
    CHECK(mismatches == expected);
  }
}

TEST_CASE("nerve") {
  const auto n11 = nerve(Complex::build(RoundCounter::of({1, 1})));
  CHECK(n11.vertices.size() == 3);
  CHECK(n11.simplices.size() == 5);
  CHECK(n11.is_cone);
  CHECK(n11.vertices[n11.apex] == ProcessSet{0, 1});

  const auto n1 = nerve(Complex::build(RoundCounter::of({1, 0})));
  CHECK(n1.vertices.size() == 1);
  CHECK(n1.is_cone);

  for (const char* text : {"1,1,1", "2,1,1"}) {
    const auto n = nerve(Complex::build(RoundCounter::parse(text)));
    CHECK(n.vertices.size() == 7);
    CHECK(n.is_cone);
  }
}

TEST_CASE("diagrams commute") {
  for (const char* text : {"2,1", "2,1,1", "1,0,1"}) {
    CAPTURE(text);
    const DiagramReport d = verify_diagrams(RoundCounter::parse(text));
    CHECK(d.ok());
    std::set<std::string> names;
    for (const auto& c : d.checks) {
      names.insert(c.diagram);
      CHECK(c.instances_checked > 0);
    }
    CHECK(names == std::set<std::string>{"boundary-square", "nested-strata",
                                         "stratum-boundary"});
  }
}
