#include "snapcx/checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "snapcx/errors.hpp"
#include "snapcx/schedule.hpp"
#include "snapcx/strata.hpp"
#include "snapcx/topology.hpp"

namespace snapcx {

using nlohmann::json;

namespace {

CheckResult make(std::string name, bool ok, json report) {
  report["check"] = name;
  report["status"] = ok ? "pass" : "fail";
  return {std::move(name), ok ? "pass" : "fail", std::move(report)};
}

CheckResult skipped(std::string name, std::string why) {
  json report = {{"check", name}, {"status", "skipped"}, {"reason", why}};
  return {std::move(name), "skipped", std::move(report)};
}

std::vector<SimplexId> set_intersection(const std::vector<SimplexId>& a,
                                        const std::vector<SimplexId>& b) {
  std::vector<SimplexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool includes(const std::vector<SimplexId>& big,
              const std::vector<SimplexId>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<ProcessSet> nonempty_subsets(ProcessSet s) {
  auto all = subsets_of(s);
  all.erase(std::remove_if(all.begin(), all.end(),
                           [](ProcessSet x) { return x.empty(); }),
            all.end());
  return all;
}

// Tally of one family of closed-form comparisons.
struct Tally {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  json examples = json::array();

  void record(bool agree, const std::string& what) {
    ++checked;
    if (agree) return;
    ++mismatches;
    if (examples.size() < 5) examples.push_back(what);
  }
  json to_json() const {
    json j = {{"checked", checked},
              {"mismatches", mismatches},
              {"status", mismatches == 0 ? "pass" : "fail"}};
    if (!examples.empty()) j["examples"] = examples;
    return j;
  }
};

std::string x_name(ProcessSet s, ProcessSet a) {
  return StratumRef::x(s, a).to_string();
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "purity",          "pseudomanifold",     "boundary",
      "strong-connectivity", "euler",          "homology",
      "strata-intersections", "isomorphisms",  "diagrams",
      "gg",              "cone",               "phi",
      "schedule-bijection", "interior-partition", "collapse"};
  return names;
}

CheckResult run_check(const Complex& k, std::string_view name,
                      const CheckOptions& options) {
  static const std::map<std::string, std::function<CheckResult(
                                         const Complex&, const CheckOptions&)>,
                        std::less<>>
      table = {
          {"purity", [](auto& c, auto&) { return check_purity(c); }},
          {"pseudomanifold", [](auto& c, auto&) { return check_pseudomanifold(c); }},
          {"boundary", [](auto& c, auto&) { return check_boundary(c); }},
          {"strong-connectivity",
           [](auto& c, auto&) { return check_strong_connectivity(c); }},
          {"euler", [](auto& c, auto&) { return check_euler(c); }},
          {"homology", [](auto& c, auto&) { return check_homology(c); }},
          {"strata-intersections",
           [](auto& c, auto&) { return check_strata_intersections(c); }},
          {"isomorphisms", [](auto& c, auto&) { return check_isomorphisms(c); }},
          {"diagrams", [](auto& c, auto&) { return check_diagrams(c); }},
          {"gg", [](auto& c, auto& o) { return check_ghosting(c, o); }},
          {"cone", [](auto& c, auto&) { return check_cone(c); }},
          {"phi", [](auto& c, auto&) { return check_phi(c); }},
          {"schedule-bijection",
           [](auto& c, auto&) { return check_schedule_bijection(c); }},
          {"interior-partition",
           [](auto& c, auto&) { return check_interior_partition(c); }},
          {"collapse", [](auto& c, auto&) { return check_collapse(c); }},
      };
  auto it = table.find(name);
  if (it == table.end())
    throw InvalidInput("unknown check '" + std::string(name) + "'");
  return it->second(k, options);
}

CheckResult check_purity(const Complex& k) {
  const int expected = k.counter().support().size() - 1;
  std::size_t bad_facets = 0, maximal_not_facet = 0;
  for (SimplexId f : k.facets())
    if (k.dim(f) != expected) ++bad_facets;
  for (SimplexId id = 0; id < k.size(); ++id)
    if (k.cofaces(id).empty() && k.dim(id) != expected) ++maximal_not_facet;
  json report = {{"facets", k.facets().size()},
                 {"dimension", expected},
                 {"top_dim", k.top_dim()},
                 {"facets_of_wrong_dimension", bad_facets},
                 {"maximal_non_facets", maximal_not_facet}};
  return make("purity", bad_facets == 0 && maximal_not_facet == 0, report);
}

CheckResult check_pseudomanifold(const Complex& k) {
  const BoundaryReport b = boundary(k);
  const bool connected = strong_connectivity(k);
  json report = {{"ridges", b.ridges},
                 {"degree_one", b.degree_one},
                 {"degree_two", b.degree_two},
                 {"strongly_connected", connected}};
  if (!b.degrees_ok) report["failure"] = b.failure;
  return make("pseudomanifold", b.degrees_ok && connected, report);
}

CheckResult check_boundary(const Complex& k) {
  const BoundaryReport b = boundary(k);
  const auto size = std::count(b.boundary.begin(), b.boundary.end(), 1);
  json report = {{"boundary_simplices", size}, {"matches_g0", b.matches_g0}};
  if (!b.valid()) report["failure"] = b.failure;
  return make("boundary", b.valid(), report);
}

CheckResult check_strong_connectivity(const Complex& k) {
  const bool ok = strong_connectivity(k);
  return make("strong-connectivity", ok, {{"facets", k.facets().size()}});
}

CheckResult check_euler(const Complex& k) {
  const long chi = euler(k);
  return make("euler", chi == 1,
              {{"euler", chi}, {"f_vector", k.f_vector()}});
}

CheckResult check_homology(const Complex& k) {
  const auto betti = reduced_betti_z2(k);
  const BoundaryReport b = boundary(k);
  const auto boundary_betti = reduced_betti_z2(k, b.boundary);
  // ∂P should look like S^{n-2}: a single class in dimension n-2.
  const int n = k.counter().support().size();
  std::vector<int> sphere(boundary_betti.size(), 0);
  if (n - 1 < static_cast<int>(sphere.size())) sphere[n - 1] = 1;
  const bool acyclic = std::all_of(betti.begin(), betti.end(),
                                   [](int x) { return x == 0; });
  const bool spherical = boundary_betti == sphere;
  json report = {{"reduced_betti", betti},
                 {"boundary_reduced_betti", boundary_betti},
                 {"sphere_dimension", n - 2},
                 {"acyclic", acyclic},
                 {"boundary_is_homology_sphere", spherical}};
  return make("homology", acyclic && spherical, report);
}

CheckResult check_strata_intersections(const Complex& k) {
  const ProcessSet act = k.counter().active();
  if (act.empty()) return skipped("strata-intersections", "no active process");

  // Member lists of every X_{S,A}, computed once.
  struct Key {
    std::uint64_t s, a;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::vector<SimplexId>> xs;
  const auto strata_sets = nonempty_subsets(act);
  for (ProcessSet s : strata_sets)
    for (ProcessSet a : subsets_of(s))
      xs[{s.bits(), a.bits()}] = members(k, StratumRef::x(s, a));
  auto x_of = [&](ProcessSet s, ProcessSet a) -> const std::vector<SimplexId>& {
    return xs.at({s.bits(), a.bits()});
  };

  Tally incid, pairs, yz, families, folded, xaa;
  for (auto& [p, mp] : xs) {
    const ProcessSet s = ProcessSet::from_bits(p.s), a = ProcessSet::from_bits(p.a);
    for (auto& [q, mq] : xs) {
      const ProcessSet t = ProcessSet::from_bits(q.s), b = ProcessSet::from_bits(q.a);
      const std::string what = x_name(s, a) + " vs " + x_name(t, b);
      incid.record(incidence(s, a, t, b) == includes(mq, mp), what);
      pairs.record(members(k, intersect_pair(s, a, t, b)) ==
                       set_intersection(mp, mq),
                   what);
    }
  }

  // Y and Z strata.
  std::vector<StratumRef> yzs;
  for (ProcessSet s : strata_sets) {
    yzs.push_back(StratumRef::z(s));
    for (ProcessSet a : subsets_of(s))
      if (a != s) yzs.push_back(StratumRef::y(s, a));
  }
  std::vector<std::vector<SimplexId>> yz_members;
  for (const StratumRef& ref : yzs) yz_members.push_back(members(k, ref));
  for (std::size_t i = 0; i < yzs.size(); ++i) {
    for (std::size_t j = 0; j < yzs.size(); ++j) {
      const auto closed = intersect_yz(yzs[i], yzs[j]);
      const auto setwise = set_intersection(yz_members[i], yz_members[j]);
      const auto formula =
          closed ? members(k, *closed) : std::vector<SimplexId>{};
      yz.record(formula == setwise,
                yzs[i].to_string() + " ∩ " + yzs[j].to_string());
    }
  }

  // Families of two or three distinct X_S.
  const std::size_t m = strata_sets.size();
  auto check_family = [&](std::vector<ProcessSet> family) {
    std::vector<SimplexId> setwise = x_of(family[0], {});
    for (std::size_t i = 1; i < family.size(); ++i)
      setwise = set_intersection(setwise, x_of(family[i], {}));
    std::string what;
    for (ProcessSet s : family) what += s.to_string();
    families.record(members(k, intersect_family(family).result) == setwise,
                    what);
    folded.record(members(k, intersect_family_folded(family)) == setwise, what);
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      check_family({strata_sets[i], strata_sets[j]});
      for (std::size_t l = 0; l < m; ++l)
        if (l != i && l != j)
          check_family({strata_sets[i], strata_sets[j], strata_sets[l]});
    }
  }

  // X_{A,A} = ∪_{A ⊂ T ⊆ act} X_{T,A} for A ≠ act.
  for (ProcessSet a : strata_sets) {
    if (a == act) continue;
    std::set<SimplexId> u;
    for (ProcessSet t : strata_sets)
      if (a.proper_subset_of(t)) u.insert(x_of(t, a).begin(), x_of(t, a).end());
    xaa.record(std::vector<SimplexId>(u.begin(), u.end()) == x_of(a, a),
               x_name(a, a));
  }

  std::set<SimplexId> covered;
  for (ProcessSet s : strata_sets) covered.insert(x_of(s, {}).begin(), x_of(s, {}).end());
  const bool cover = covered.size() == k.size();

  json report = {{"incidence", incid.to_json()},
                 {"pairs", pairs.to_json()},
                 {"yz", yz.to_json()},
                 {"families", families.to_json()},
                 {"families_folded", folded.to_json()},
                 {"union_formula", xaa.to_json()},
                 {"cover", cover}};
  const bool ok = incid.mismatches + pairs.mismatches + yz.mismatches +
                      families.mismatches + folded.mismatches +
                      xaa.mismatches ==
                  0 && cover;
  return make("strata-intersections", ok, report);
}

CheckResult check_isomorphisms(const Complex& k) {
  const RoundCounter& r = k.counter();
  std::size_t checked = 0;
  json failures = json::array();
  auto take = [&](const IsoCertificate& c) {
    ++checked;
    if (!c.valid())
      failures.push_back({{"map", c.map}, {"parameters", c.parameters},
                          {"failure", c.failure}});
  };
  for (ProcessSet s : nonempty_subsets(r.active())) {
    for (ProcessSet a : subsets_of(s)) take(certify_gamma(k, s, a));
    take(certify_rho(k, s));
  }
  for (ProcessSet v : nonempty_subsets(r.support())) take(certify_delta(k, v));
  json report = {{"certificates", checked}, {"failures", failures}};
  return make("isomorphisms", failures.empty(), report);
}

CheckResult check_diagrams(const Complex& k) {
  const DiagramReport d = verify_diagrams(k.counter());
  json list = json::array();
  for (const DiagramCheck& c : d.checks) {
    json entry = {{"diagram", c.diagram},
                  {"parameters", c.parameters},
                  {"instances_checked", c.instances_checked},
                  {"status", c.ok ? "pass" : "fail"}};
    if (!c.ok) entry["failure"] = c.failure;
    list.push_back(std::move(entry));
  }
  return make("diagrams", d.ok(), {{"diagrams", list}});
}

CheckResult check_ghosting(const Complex& k, const CheckOptions& options) {
  struct Instance {
    SimplexId id;
    ProcessSet s, t;
  };
  std::vector<Instance> all;
  for (SimplexId id = 0; id < k.size(); ++id) {
    const ProcessSet a = k.simplex(id).active();
    for (ProcessSet s : subsets_of(a))
      for (ProcessSet t : subsets_of(a - s)) all.push_back({id, s, t});
  }
  const std::size_t total = all.size();
  bool sampled = false;
  if (all.size() > options.gg_budget) {
    std::mt19937_64 rng(options.seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(options.gg_budget);
    sampled = true;
  }
  std::size_t failures = 0;
  json examples = json::array();
  for (const Instance& in : all) {
    const Witness& sigma = k.simplex(in.id);
    if (ghost(ghost(sigma, in.s), in.t) != ghost(sigma, in.s | in.t)) {
      if (failures++ < 5) {
        examples.push_back(canonical_key(sigma) + " S=" + in.s.to_string() +
                           " T=" + in.t.to_string());
      }
    }
  }
  json report = {{"instances", total},
                 {"instances_checked", all.size()},
                 {"sampled", sampled},
                 {"failures", failures}};
  if (sampled) report["seed"] = options.seed;
  if (failures) report["examples"] = examples;
  return make("gg", failures == 0, report);
}

CheckResult check_cone(const Complex& k) {
  const RoundCounter& r = k.counter();
  if (r.passive().empty()) return skipped("cone", "no passive process");
  json certs = json::array();
  bool ok = true;
  for (ProcessId p : r.passive()) {
    const ConeCertificate c = cone_split(r, p);
    ok = ok && c.valid();
    json entry = {{"process", p},
                  {"apex", canonical_key(c.apex)},
                  {"pairs", c.pairing.size()},
                  {"status", c.valid() ? "pass" : "fail"}};
    if (!c.valid()) entry["failure"] = c.failure;
    certs.push_back(std::move(entry));
  }
  return make("cone", ok, {{"certificates", certs}});
}

CheckResult check_phi(const Complex& k) {
  const RoundCounter& r = k.counter();
  const int n = r.support().size() - 1;
  if (r.support() != ProcessSet::range(n + 1) || r.passive().size() != 0 ||
      chi(r) != r) {
    return skipped("phi", "counter is not (1,...,1)");
  }
  if (n > kChromaticBound) return skipped("phi", "dimension above oracle bound");
  const PhiReport p = phi_iso(n);
  json report = {{"n", n},
                 {"oracle_f_vector", p.oracle_f_vector},
                 {"complex_f_vector", p.complex_f_vector}};
  if (!p.valid()) report["failure"] = p.failure;
  return make("phi", p.valid(), report);
}

CheckResult check_schedule_bijection(const Complex& k) {
  const RoundCounter& r = k.counter();
  const auto schedules = enumerate_schedules(r);
  std::set<SimplexId> hit;
  std::set<SimplexId> vertices_seen;
  std::size_t invalid = 0, bad_views = 0;
  for (const Schedule& s : schedules) {
    if (!is_valid_schedule(s, r)) ++invalid;
    const auto facet = k.find(to_facet(s, r));
    if (!facet) {
      ++invalid;
      continue;
    }
    hit.insert(*facet);
    const auto facet_vertices = k.vertices(*facet);
    for (const auto& [p, view] : views(s, r)) {
      const auto v = k.find(view);
      if (!v || k.dim(*v) != 0 ||
          std::find(facet_vertices.begin(), facet_vertices.end(), *v) ==
              facet_vertices.end()) {
        ++bad_views;
        continue;
      }
      vertices_seen.insert(*v);
    }
  }
  const std::size_t vertex_count = k.of_dim(0).size();
  const bool bijection = invalid == 0 && hit.size() == schedules.size() &&
                         hit.size() == k.facets().size();
  const bool coverage = bad_views == 0 && vertices_seen.size() == vertex_count;
  json report = {{"schedules", schedules.size()},
                 {"count_schedules", count_schedules(r)},
                 {"facets", k.facets().size()},
                 {"distinct_facets_hit", hit.size()},
                 {"vertices", vertex_count},
                 {"vertices_seen_as_views", vertices_seen.size()},
                 {"bijection", bijection},
                 {"view_coverage", coverage}};
  return make("schedule-bijection",
              bijection && coverage && count_schedules(r) == schedules.size(),
              report);
}

CheckResult check_interior_partition(const Complex& k) {
  const PartitionReport p = verify_interior_partition(k);
  json report = {{"passive_simplices", p.passive}, {"cells", p.cells}};
  if (!p.ok) report["failure"] = p.failure;
  return make("interior-partition", p.ok, report);
}

CheckResult check_collapse(const Complex& k) {
  const CollapseSequence seq = collapse_all(k);
  const CollapseValidation v = validate_collapse(k, seq.steps);
  std::map<std::string, std::size_t> by_stage;
  for (const CollapseStep& st : seq.steps) ++by_stage[st.stage];
  json report = {{"pairs", seq.steps.size()},
                 {"simplices", k.size()},
                 {"fallback_steps", seq.fallback_steps},
                 {"stages", by_stage},
                 {"valid", v.ok}};
  if (!v.ok) report["failure"] = v.message;
  return make("collapse", v.ok && 2 * seq.steps.size() == k.size(), report);
}

}  // namespace snapcx
