#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "snapcx/complex.hpp"
#include "snapcx/errors.hpp"

namespace snapcx {

namespace {

using Vertex = std::pair<ProcessId, ProcessSet>;

// Two vertices may share a simplex iff colors differ, views are nested, and a
// color seen by the other forces its view to be contained.
bool compatible(const Vertex& a, const Vertex& b) {
  if (a.first == b.first) return false;
  if (!a.second.subset_of(b.second) && !b.second.subset_of(a.second))
    return false;
  if (b.second.contains(a.first) && !a.second.subset_of(b.second)) return false;
  if (a.second.contains(b.first) && !b.second.subset_of(a.second)) return false;
  return true;
}

}  // namespace

std::vector<ChromaticSimplex> chromatic_oracle(int n, int bound) {
  if (n < 0) throw InvalidInput("chromatic_oracle: negative dimension");
  if (n > bound) {
    throw CapExceeded("chromatic_oracle: n = " + std::to_string(n) +
                      " above bound " + std::to_string(bound));
  }
  const ProcessSet all = ProcessSet::range(n + 1);
  std::vector<Vertex> verts;
  for (int i = 0; i <= n; ++i) {
    for_each_subset(all, [&](ProcessSet v) {
      if (v.contains(i)) verts.push_back({i, v});
    });
  }
  std::sort(verts.begin(), verts.end(), [](const Vertex& a, const Vertex& b) {
    if (a.first != b.first) return a.first < b.first;
    return lex_less(a.second, b.second);
  });

  // Cliques of the compatibility graph, vertices taken in increasing color.
  std::vector<ChromaticSimplex> out;
  ChromaticSimplex cur;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    for (std::size_t i = from; i < verts.size(); ++i) {
      bool ok = true;
      for (const Vertex& v : cur.vertices) ok = ok && compatible(v, verts[i]);
      if (!ok) continue;
      cur.vertices.push_back(verts[i]);
      out.push_back(cur);
      extend(i + 1);
      cur.vertices.pop_back();
    }
  };
  extend(0);
  return out;
}

ChromaticTuple to_tuple(const ChromaticSimplex& s) {
  std::vector<ProcessSet> views;
  for (const auto& [color, view] : s.vertices) views.push_back(view);
  std::sort(views.begin(), views.end(), [](ProcessSet a, ProcessSet b) {
    return a.size() < b.size();
  });
  views.erase(std::unique(views.begin(), views.end()), views.end());
  ChromaticTuple tuple;
  ProcessSet prev;
  for (ProcessSet v : views) {
    ProcessSet c;
    for (const auto& [color, view] : s.vertices)
      if (view == v) c.insert(color);
    tuple.b.push_back(v - prev);
    tuple.c.push_back(c);
    prev = v;
  }
  return tuple;
}

Witness phi(const ChromaticTuple& tuple, int n) {
  ProcessSet w0;
  for (ProcessSet b : tuple.b) w0 |= b;
  std::vector<Row> rows;
  rows.push_back({w0, ProcessSet::range(n + 1) - w0});
  for (std::size_t i = 0; i < tuple.b.size(); ++i)
    rows.push_back({tuple.c[i], tuple.b[i] - tuple.c[i]});
  return Witness(std::move(rows));
}

PhiReport phi_iso(int n, int bound) {
  PhiReport report;
  report.n = n;
  const auto oracle = chromatic_oracle(n, bound);
  std::map<ProcessId, int> entries;
  for (int i = 0; i <= n; ++i) entries[i] = 1;
  const Complex k = Complex::build(RoundCounter(entries));
  report.complex_f_vector = k.f_vector();
  report.oracle_f_vector.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& s : oracle) ++report.oracle_f_vector[s.dim()];

  auto fail = [&](std::string why) {
    if (report.failure.empty()) report.failure = std::move(why);
  };

  std::vector<SimplexId> ids(oracle.size());
  report.lands_in_complex = true;
  report.dimension_preserving = true;
  std::set<SimplexId> hit;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const Witness w = phi(to_tuple(oracle[i]), n);
    auto id = k.find(w);
    if (!id) {
      report.lands_in_complex = false;
      fail(canonical_key(w) + " is not a simplex of P(1,...,1)");
      continue;
    }
    ids[i] = *id;
    hit.insert(*id);
    if (k.dim(*id) != oracle[i].dim()) {
      report.dimension_preserving = false;
      fail("dimension changes at " + canonical_key(w));
    }
  }
  // Nonempty simplices of the complex are all ids except the empty one.
  report.bijective = report.lands_in_complex && hit.size() == oracle.size() &&
                     hit.size() + 1 == k.size();
  if (!report.bijective) fail("table map is not a bijection");

  report.face_preserving = report.lands_in_complex;
  if (report.lands_in_complex) {
    std::map<std::vector<std::pair<ProcessId, std::uint64_t>>, SimplexId> by_verts;
    auto key_of = [](const ChromaticSimplex& s) {
      std::vector<std::pair<ProcessId, std::uint64_t>> key;
      for (const auto& [c, v] : s.vertices) key.push_back({c, v.bits()});
      return key;
    };
    for (std::size_t i = 0; i < oracle.size(); ++i)
      by_verts[key_of(oracle[i])] = ids[i];
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      std::set<SimplexId> expected;
      const auto& vs = oracle[i].vertices;
      if (vs.size() == 1) {
        expected.insert(k.empty_simplex());
      } else {
        for (std::size_t drop = 0; drop < vs.size(); ++drop) {
          ChromaticSimplex face;
          for (std::size_t j = 0; j < vs.size(); ++j)
            if (j != drop) face.vertices.push_back(vs[j]);
          expected.insert(by_verts.at(key_of(face)));
        }
      }
      const auto got = k.faces(ids[i]);
      if (std::set<SimplexId>(got.begin(), got.end()) != expected) {
        report.face_preserving = false;
        fail("face relation differs at " + canonical_key(k.simplex(ids[i])));
        break;
      }
    }
  }
  return report;
}

}  // namespace snapcx
