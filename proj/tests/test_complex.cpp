#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "snapcx/complex.hpp"
#include "snapcx/errors.hpp"
#include "snapcx/schedule.hpp"
#include "snapcx/serialize.hpp"

using namespace snapcx;

namespace {

oracle::Counts counts_of(const RoundCounter& r) {
  oracle::Counts c(r.support().max() + 1, -1);
  for (auto [p, n] : r.entries()) c[p] = n;
  return c;
}

const char* kCounters[] = {"1,1", "2,1", "1,1,1", "2,2", "3,1",
                           "2,1,1", "1,0,1", "1,1,0", "1,0", "2,x,1"};

}  // namespace

TEST_CASE("facet counts") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> ones(n, 1);
    std::map<ProcessId, int> e;
    for (int p = 0; p < n; ++p) e[p] = 1;
    const Complex k = Complex::build(RoundCounter(e));
    CHECK(k.facets().size() == oracle::fubini(n));
  }
  const Complex k21 = Complex::build(RoundCounter::of({2, 1}));
  CHECK(k21.facets().size() ==
        oracle::brute_force_schedules(counts_of(k21.counter())).size());
  CHECK(k21.facets().size() == 5);
}

TEST_CASE("f-vectors match the protocol simulation") {
  for (const char* text : kCounters) {
    CAPTURE(text);
    const RoundCounter r = RoundCounter::parse(text);
    const Complex k = Complex::build(r);
    CHECK(k.f_vector() == oracle::protocol_f_vector(counts_of(r)));
  }
}

TEST_CASE("known sizes") {
  CHECK(Complex::build(RoundCounter::of({1, 1})).f_vector() ==
        std::vector<std::size_t>{4, 3});
  CHECK(Complex::build(RoundCounter::of({1, 1, 1})).f_vector() ==
        std::vector<std::size_t>{12, 24, 13});
  CHECK(Complex::build(RoundCounter::of({2, 1, 1})).size() == 108);
  CHECK(Complex::build(RoundCounter::of({2, 2})).size() == 28);
}

TEST_CASE("structure") {
  for (const char* text : kCounters) {
    CAPTURE(text);
    const Complex k = Complex::build(RoundCounter::parse(text));
    const int top = k.counter().support().size() - 1;
    CHECK(k.top_dim() == top);
    CHECK(k.dim(k.empty_simplex()) == -1);
    CHECK(k.simplex(0).rows[0].g == k.counter().support());
    for (SimplexId id = 0; id < k.size(); ++id) {
      const Witness& sigma = k.simplex(id);
      CHECK(is_simplex_of(k.counter(), sigma));
      CHECK(k.id_of(sigma) == id);
      // d + 1 distinct faces of dimension d - 1.
      const auto faces = k.faces(id);
      if (k.dim(id) >= 0) {
        CHECK(faces.size() == static_cast<std::size_t>(k.dim(id) + 1));
        std::set<SimplexId> distinct(faces.begin(), faces.end());
        CHECK(distinct.size() == faces.size());
      }
      for (SimplexId f : faces) CHECK(k.dim(f) == k.dim(id) - 1);
      // Maximal simplices are exactly the facets.
      if (k.cofaces(id).empty()) CHECK(k.dim(id) == top);
    }
    for (SimplexId f : k.facets()) CHECK(k.dim(f) == top);
  }
}

TEST_CASE("ids ordered by dimension then key") {
  const Complex k = Complex::build(RoundCounter::of({2, 1}));
  for (SimplexId id = 1; id < k.size(); ++id)
    CHECK(witness_less(k.simplex(id - 1), k.simplex(id)));
  CHECK(k.of_dim(0).size() == 6);
  CHECK(k.of_dim(5).empty());
}

TEST_CASE("build errors and caps") {
  CHECK_THROWS_AS(Complex::build(RoundCounter{}), InvalidInput);
  BuildOptions lenient;
  lenient.allow_empty_support = true;
  const Complex e = Complex::build(RoundCounter{}, lenient);
  CHECK(e.size() == 1);
  CHECK(e.top_dim() == -1);

  BuildOptions small;
  small.max_simplices = 50;
  CHECK_THROWS_AS(Complex::build(RoundCounter::of({2, 1, 1}), small), CapExceeded);
}

TEST_CASE("parallel and serial builds agree") {
  BuildOptions serial;
  serial.exec = Exec::serial;
  for (const char* text : {"2,1,1", "1,1,1,1"}) {
    const auto r = RoundCounter::parse(text);
    const Complex a = Complex::build(r, serial), b = Complex::build(r);
    CHECK(a.simplices() == b.simplices());
    for (SimplexId id = 0; id < a.size(); ++id) {
      CHECK(std::equal(a.faces(id).begin(), a.faces(id).end(), b.faces(id).begin(),
                       b.faces(id).end()));
    }
  }
}

TEST_CASE("cone splitting") {
  for (auto [text, p] : {std::pair{"1,0", 1}, {"1,1,0", 2}, {"1,0,1", 1}, {"2,0,1", 1}}) {
    CAPTURE(text);
    const ConeCertificate c = cone_split(RoundCounter::parse(text), p);
    CHECK(c.valid());
    CHECK(c.failure.empty());
  }
  CHECK_THROWS_AS(cone_split(RoundCounter::of({1, 1}), 0), InvalidInput);
}

TEST_CASE("chromatic subdivision") {
  CHECK(chromatic_oracle(2).size() == 12 + 24 + 13);
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const PhiReport p = phi_iso(n);
    CHECK(p.valid());
    CHECK(p.oracle_f_vector == p.complex_f_vector);
  }
  CHECK(phi_iso(2).oracle_f_vector == std::vector<std::size_t>{12, 24, 13});
  CHECK_THROWS_AS(chromatic_oracle(4), CapExceeded);
}
