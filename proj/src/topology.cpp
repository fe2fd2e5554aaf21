#include "snapcx/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "snapcx/errors.hpp"
#include "snapcx/strata.hpp"

namespace snapcx {

// --- Pseudomanifold structure ----------------------------------------------

SimplexMask g0_boundary(const Complex& k) {
  SimplexMask m(k.size(), 0);
  for (SimplexId id = 0; id < k.size(); ++id)
    m[id] = k.simplex(id).rows[0].g.empty() ? 0 : 1;
  return m;
}

namespace {

// Downward closure of the marked simplices.
void close_down(const Complex& k, SimplexMask& m) {
  for (int d = k.top_dim(); d >= 0; --d) {
    for (SimplexId id : k.of_dim(d)) {
      if (!m[id]) continue;
      for (SimplexId f : k.faces(id)) m[f] = 1;
    }
  }
}

}  // namespace

BoundaryReport boundary(const Complex& k, Exec exec) {
  BoundaryReport report;
  std::vector<std::uint32_t> incidences;
  for (SimplexId f : k.facets())
    for (SimplexId r : k.faces(f)) incidences.push_back(r);
  const auto degree = kernels::count_ids(incidences, k.size(), exec);

  report.boundary.assign(k.size(), 0);
  report.degrees_ok = true;
  for (SimplexId r : k.of_dim(k.top_dim() - 1)) {
    ++report.ridges;
    if (degree[r] == 1) {
      ++report.degree_one;
      report.boundary[r] = 1;
    } else if (degree[r] == 2) {
      ++report.degree_two;
    } else {
      report.degrees_ok = false;
      if (report.failure.empty()) {
        report.failure = "ridge " + canonical_key(k.simplex(r)) + " lies in " +
                         std::to_string(degree[r]) + " facets";
      }
    }
  }
  close_down(k, report.boundary);
  const SimplexMask expected = g0_boundary(k);
  report.matches_g0 = report.boundary == expected;
  if (!report.matches_g0 && report.failure.empty()) {
    for (SimplexId id = 0; id < k.size(); ++id) {
      if (report.boundary[id] != expected[id]) {
        report.failure = "boundary disagrees with G_0 ≠ ∅ at " +
                         canonical_key(k.simplex(id));
        break;
      }
    }
  }
  return report;
}

bool strong_connectivity(const Complex& k) {
  const auto facets = k.facets();
  if (facets.empty()) return true;
  std::vector<SimplexId> parent(k.size());
  std::iota(parent.begin(), parent.end(), SimplexId{0});
  auto find = [&](SimplexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (SimplexId r : k.of_dim(k.top_dim() - 1)) {
    const auto cof = k.cofaces(r);
    for (std::size_t i = 1; i < cof.size(); ++i)
      parent[find(cof[i])] = find(cof[0]);
  }
  const SimplexId root = find(facets[0]);
  return std::all_of(facets.begin(), facets.end(),
                     [&](SimplexId f) { return find(f) == root; });
}

InteriorCell classify_interior(const Complex& k, SimplexId id) {
  const Witness& sigma = k.simplex(id);
  InteriorCell cell;
  if (sigma.t() == 0) {
    cell.passive = true;
    return cell;
  }
  cell.s = sigma.rows[1].w | sigma.rows[1].g;
  cell.a = sigma.rows[1].g;
  cell.v = sigma.rows[0].g;
  return cell;
}

PartitionReport verify_interior_partition(const Complex& k) {
  PartitionReport report;
  const RoundCounter& r = k.counter();
  const ProcessSet act = r.active(), supp = r.support();
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> cells;
  auto fail = [&](const std::string& why) {
    if (report.failure.empty()) report.failure = why;
  };
  for (SimplexId id = 0; id < k.size(); ++id) {
    const Witness& sigma = k.simplex(id);
    const InteriorCell expected = classify_interior(k, id);
    int hits = 0;
    InteriorCell hit;
    for (ProcessSet s : subsets_of(act)) {
      if (s.empty()) continue;
      for (ProcessSet a : subsets_of(s)) {
        if (a == s || !in_x(sigma, s, a)) continue;
        for (ProcessSet v : subsets_of(supp - s)) {
          if (!in_b(sigma, v)) continue;
          if (delta(gamma(sigma, s, a), v).rows[0].g.empty()) {
            ++hits;
            hit = {false, s, a, v};
          }
        }
      }
    }
    if (expected.passive) {
      ++report.passive;
      if (hits != 0) fail(canonical_key(sigma) + " is passive but interior");
      if (!sigma.rows[0].w.subset_of(r.passive()))
        fail(canonical_key(sigma) + " is not a face of the passive simplex");
    } else if (hits != 1 || !(hit == expected)) {
      fail(canonical_key(sigma) + " lies in the interior of " +
           std::to_string(hits) + " cells");
    } else {
      cells.insert({hit.s.bits(), hit.a.bits(), hit.v.bits()});
    }
  }
  report.cells = cells.size();
  report.ok = report.failure.empty();
  return report;
}

// --- Collapses -----------------------------------------------------------

namespace {

struct WitnessStep {
  Witness free, cofacet;
  std::string stage;
};

using Steps = std::vector<WitnessStep>;

class CollapseEngine {
 public:
  // Collapses P(r) onto ∂P(r) \ int B_p(r), as witness pairs of P(r).
  const Steps& lemma(const RoundCounter& r, ProcessId p) {
    const auto key = std::make_pair(r, p);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Steps out = compute(r, p);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  template <typename Map>
  static void append(Steps& out, const Steps& inner, const char* stage,
                     Map&& map) {
    for (const WitnessStep& st : inner)
      out.push_back({map(st.free), map(st.cofacet), stage});
  }

  Steps compute(const RoundCounter& r, ProcessId p) {
    const ProcessSet act = r.active(), supp = r.support();
    const ProcessSet ps = ProcessSet::singleton(p);
    Steps out;
    if (act.empty()) {
      // P(r) is a simplex: pair its top with the facet opposite p.
      out.push_back({Witness({{supp - ps, ps}}), Witness({{supp, {}}}), "base"});
      return out;
    }

    // Stage 1: (X_{S,A,p}, X_{S,A}) ≅ (B_p, P) of r_{S,A}, for p ∉ S.
    struct Cell {
      ProcessSet s, a;
    };
    std::vector<Cell> cells;
    for (ProcessSet s : subsets_of(act - ps)) {
      if (s.empty()) continue;
      for (ProcessSet a : subsets_of(s))
        if (a != s) cells.push_back({s, a});
    }
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
      if (x.a.size() != y.a.size()) return x.a.size() < y.a.size();
      if (x.s != y.s) return lex_less(x.s, y.s);
      return lex_less(x.a, y.a);
    });
    for (const Cell& c : cells) {
      append(out, lemma(restricted(r, c.s, c.a), p), "stage1",
             [&](const Witness& w) { return gamma_inverse(w, c.s, c.a); });
    }
    if (!act.contains(p)) return out;

    // Stage 2: for p ∈ S, pair X_{S,A∪q} with X_{S,A}, q = min(S \ p), via
    // (B_q, P) of r_{S,A}. A ranges over S \ {p,q}; the subsets containing
    // p are left to stage 3.
    for (ProcessSet s : subsets_of(act)) {
      if (!s.contains(p) || s.size() < 2) continue;
      const int q = (s - ps).min();
      const ProcessSet qs = ProcessSet::singleton(q);
      for (ProcessSet a : subsets_of(s - ps - qs)) {
        append(out, lemma(restricted(r, s, a), q), "stage2",
               [&](const Witness& w) { return gamma_inverse(w, s, a); });
      }
    }

    // Stage 3: (X_{p,p}, X_p) ≅ (B_p, P) of r_p through ρ_p.
    append(out, lemma(execute(r, ps), p), "stage3",
           [&](const Witness& w) { return rho(w, ps); });
    return out;
  }

  std::map<std::pair<RoundCounter, ProcessId>, Steps> memo_;
};

std::vector<CollapseStep> to_ids(const Complex& k, const Steps& steps,
                                 const char* relabel = nullptr) {
  std::vector<CollapseStep> out;
  out.reserve(steps.size());
  for (const WitnessStep& st : steps) {
    out.push_back({k.id_of(st.free), k.id_of(st.cofacet),
                   relabel ? std::string(relabel) : st.stage});
  }
  return out;
}

// Replay state shared by the validator and the greedy search.
class Replay {
 public:
  explicit Replay(const Complex& k)
      : k_(k), alive_(k.size(), 1), up_(k.size(), 0) {
    for (SimplexId id = 0; id < k.size(); ++id)
      up_[id] = static_cast<int>(k.cofaces(id).size());
  }

  // Empty string when (σ, τ) is an elementary collapse right now.
  std::string check(SimplexId sigma, SimplexId tau) const {
    if (sigma >= k_.size() || tau >= k_.size()) return "unknown simplex id";
    if (!alive_[sigma] || !alive_[tau]) return "simplex already removed";
    if (k_.dim(tau) != k_.dim(sigma) + 1) return "dimensions do not differ by one";
    const auto cof = k_.cofaces(sigma);
    if (std::find(cof.begin(), cof.end(), tau) == cof.end())
      return "cofacet does not contain the free face";
    if (up_[tau] != 0) return "cofacet is not maximal";
    if (up_[sigma] != 1) return "free face has another coface";
    return {};
  }

  void remove(SimplexId sigma, SimplexId tau) {
    for (SimplexId id : {tau, sigma}) {
      alive_[id] = 0;
      for (SimplexId f : k_.faces(id)) --up_[f];
    }
  }

  // Smallest-key free face with its cofacet, if any.
  std::optional<std::pair<SimplexId, SimplexId>> next_free(
      const std::vector<SimplexId>& by_key) const {
    for (SimplexId id : by_key) {
      if (!alive_[id] || up_[id] != 1) continue;
      for (SimplexId c : k_.cofaces(id))
        if (alive_[c] && up_[c] == 0) return std::make_pair(id, c);
    }
    return std::nullopt;
  }

  const SimplexMask& alive() const { return alive_; }
  bool empty() const {
    return std::none_of(alive_.begin(), alive_.end(), [](char c) { return c; });
  }

 private:
  const Complex& k_;
  SimplexMask alive_;
  std::vector<int> up_;  // live codimension-one cofaces
};

std::vector<SimplexId> ids_by_key(const Complex& k) {
  std::vector<SimplexId> ids(k.size());
  std::iota(ids.begin(), ids.end(), SimplexId{0});
  std::vector<std::string> keys(k.size());
  for (SimplexId id = 0; id < k.size(); ++id) keys[id] = canonical_key(k.simplex(id));
  std::sort(ids.begin(), ids.end(),
            [&](SimplexId a, SimplexId b) { return keys[a] < keys[b]; });
  return ids;
}

// Greedy completion; returns false when stuck.
bool greedy_finish(const Complex& k, Replay& replay,
                   std::vector<CollapseStep>& steps, const char* stage) {
  const auto order = ids_by_key(k);
  while (!replay.empty()) {
    auto pick = replay.next_free(order);
    if (!pick) return false;
    replay.remove(pick->first, pick->second);
    steps.push_back({pick->first, pick->second, stage});
  }
  return true;
}

}  // namespace

CollapseSequence collapse_to_relative_boundary(const Complex& k, ProcessId p) {
  if (!k.counter().support().contains(p)) {
    throw InvalidInput("process " + std::to_string(p) + " is not in supp " +
                       k.counter().to_text());
  }
  CollapseEngine engine;
  CollapseSequence seq;
  seq.steps = to_ids(k, engine.lemma(k.counter(), p));
  const auto check = validate_collapse(k, seq.steps, false);
  if (!check.ok) {
    throw VerificationFailure("relative collapse of " + k.counter().to_text() +
                              " fails at step " +
                              std::to_string(*check.failed_step) + ": " +
                              check.message);
  }
  return seq;
}

CollapseSequence collapse_all(const Complex& k, std::optional<ProcessId> pivot) {
  const RoundCounter& r = k.counter();
  const ProcessSet supp = r.support();
  const ProcessId x = pivot.value_or(supp.min());
  if (!supp.contains(x)) {
    throw InvalidInput("pivot " + std::to_string(x) + " is not in supp " +
                       r.to_text());
  }
  CollapseEngine engine;
  std::vector<CollapseStep> planned;
  for (ProcessSet u : subsets_of(supp - ProcessSet::singleton(x))) {
    Steps mapped;
    for (const WitnessStep& st : engine.lemma(without(r, u), x)) {
      mapped.push_back({delta_inverse(st.free, u), delta_inverse(st.cofacet, u),
                        u.empty() ? st.stage : "recursive"});
    }
    auto ids = to_ids(k, mapped);
    planned.insert(planned.end(), ids.begin(), ids.end());
  }

  CollapseSequence seq;
  Replay replay(k);
  for (const CollapseStep& st : planned) {
    if (!replay.check(st.free, st.cofacet).empty()) break;
    replay.remove(st.free, st.cofacet);
    seq.steps.push_back(st);
  }
  if (!replay.empty()) {
    const std::size_t before = seq.steps.size();
    if (!greedy_finish(k, replay, seq.steps, "greedy-fallback")) {
      throw VerificationFailure("collapse of " + r.to_text() +
                                " stalled and greedy completion got stuck");
    }
    seq.fallback_steps = seq.steps.size() - before;
  }
  return seq;
}

CollapseValidation validate_collapse(const Complex& k,
                                     std::span<const CollapseStep> steps,
                                     bool require_perfect) {
  CollapseValidation v;
  Replay replay(k);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string why = replay.check(steps[i].free, steps[i].cofacet);
    if (!why.empty()) {
      v.failed_step = i;
      v.message = why;
      v.remaining = replay.alive();
      return v;
    }
    replay.remove(steps[i].free, steps[i].cofacet);
  }
  v.remaining = replay.alive();
  v.perfect = replay.empty();
  v.ok = v.perfect || !require_perfect;
  if (!v.ok) {
    v.failed_step = steps.size();
    v.message = "steps do not exhaust the complex";
  }
  return v;
}

std::optional<CollapseSequence> greedy_collapse(const Complex& k) {
  CollapseSequence seq;
  Replay replay(k);
  if (!greedy_finish(k, replay, seq.steps, "greedy")) return std::nullopt;
  return seq;
}

// --- Homology -------------------------------------------------------------

std::vector<int> reduced_betti_z2(const Complex& k, const SimplexMask& mask,
                                  Exec exec) {
  auto in = [&](SimplexId id) { return mask.empty() || mask[id]; };
  const int top = k.top_dim();
  // Position of each included simplex within its dimension.
  std::vector<std::size_t> pos(k.size(), 0);
  std::vector<std::size_t> count(static_cast<std::size_t>(top) + 2, 0);
  for (int d = -1; d <= top; ++d) {
    for (SimplexId id : k.of_dim(d))
      if (in(id)) pos[id] = count[d + 1]++;
  }
  // rank[d + 1] = rank of the boundary map out of dimension d.
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 3, 0);
  for (int d = 0; d <= top; ++d) {
    BitMatrix m(count[d], count[d + 1]);
    for (SimplexId id : k.of_dim(d)) {
      if (!in(id)) continue;
      for (SimplexId f : k.faces(id)) {
        if (!in(f)) {
          throw InvalidInput("mask is not a subcomplex at " +
                             canonical_key(k.simplex(id)));
        }
        m.set(pos[f], pos[id]);
      }
    }
    rank[d + 1] = kernels::rank_gf2(std::move(m), exec);
  }
  std::vector<int> betti;
  for (int d = -1; d <= top; ++d) {
    betti.push_back(static_cast<int>(count[d + 1] - rank[d + 1] - rank[d + 2]));
  }
  return betti;
}

long euler(const Complex& k) { return euler(k, {}); }

long euler(const Complex& k, const SimplexMask& mask) {
  long chi = 0;
  for (int d = 0; d <= k.top_dim(); ++d) {
    for (SimplexId id : k.of_dim(d)) {
      if (!mask.empty() && !mask[id]) continue;
      chi += (d % 2 == 0) ? 1 : -1;
    }
  }
  return chi;
}

}  // namespace snapcx
