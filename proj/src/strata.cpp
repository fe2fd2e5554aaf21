#include "snapcx/strata.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "snapcx/errors.hpp"

namespace snapcx {

const char* to_string(StratumKind k) {
  switch (k) {
    case StratumKind::X:
      return "X";
    case StratumKind::Y:
      return "Y";
    case StratumKind::Z:
      return "Z";
    case StratumKind::B:
      return "B";
    case StratumKind::XBV:
      return "XBV";
  }
  return "?";
}

std::string StratumRef::to_string() const {
  switch (kind) {
    case StratumKind::X:
      if (a.empty()) return "X_{" + s.to_string() + "}";
      return "X_{" + s.to_string() + "," + a.to_string() + "}";
    case StratumKind::Y:
      return "Y_{" + s.to_string() + "," + a.to_string() + "}";
    case StratumKind::Z:
      return "Z_{" + s.to_string() + "}";
    case StratumKind::B:
      return "B_{" + v.to_string() + "}";
    case StratumKind::XBV:
      return "X_{" + s.to_string() + "," + a.to_string() + "," +
             v.to_string() + "}";
  }
  return "?";
}

namespace {

// Splits "a,{b,c},d" at commas outside braces.
std::vector<std::string_view> split_top(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    if (text[i] == '}') --depth;
    if (depth < 0) throw InvalidInput("unbalanced braces in stratum");
    if (text[i] == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw InvalidInput("unbalanced braces in stratum");
  parts.push_back(text.substr(start));
  return parts;
}

std::string_view trim(std::string_view t) {
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  return t;
}

StratumRef normalized_x(ProcessSet s, ProcessSet a) {
  return a == s ? StratumRef::z(s) : StratumRef::x(s, a);
}

}  // namespace

StratumRef StratumRef::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InvalidInput("empty stratum");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const ProcessSet s = ProcessSet::parse(trim(text.substr(0, slash)));
    const ProcessSet a = ProcessSet::parse(trim(text.substr(slash + 1)));
    return normalized_x(s, a);
  }
  const char kind = text.front();
  if (text.size() < 4 || text[1] != '_' || text[2] != '{' ||
      text.back() != '}') {
    // A bare set names X_S.
    return StratumRef::x(ProcessSet::parse(text));
  }
  const auto parts = split_top(text.substr(3, text.size() - 4));
  std::vector<ProcessSet> sets;
  for (auto part : parts) sets.push_back(ProcessSet::parse(trim(part)));
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (sets.size() < lo || sets.size() > hi)
      throw InvalidInput("wrong number of sets in " + std::string(text));
  };
  switch (kind) {
    case 'X':
      need(1, 3);
      if (sets.size() == 1) return StratumRef::x(sets[0]);
      if (sets.size() == 2) return StratumRef::x(sets[0], sets[1]);
      return StratumRef::xbv(sets[0], sets[1], sets[2]);
    case 'Y':
      need(2, 2);
      return StratumRef::y(sets[0], sets[1]);
    case 'Z':
      need(1, 1);
      return StratumRef::z(sets[0]);
    case 'B':
      need(1, 1);
      return StratumRef::b(sets[0]);
    default:
      throw InvalidInput("unknown stratum kind in " + std::string(text));
  }
}

void check_well_formed(const StratumRef& ref, const RoundCounter& r) {
  const std::string name = ref.to_string();
  if (!ref.v.subset_of(r.support()))
    throw InvalidInput(name + ": V is not inside supp r");
  if (ref.kind == StratumKind::B) return;
  if (!ref.a.subset_of(ref.s)) throw InvalidInput(name + ": A is not inside S");
  if (!ref.s.subset_of(r.active()))
    throw InvalidInput(name + ": S is not inside act r");
  if (ref.v.intersects(ref.s)) throw InvalidInput(name + ": V meets S");
}

bool in_z(const Witness& sigma, ProcessSet s) {
  if (sigma.t() == 0) return true;
  return s.subset_of(sigma.rows[1].g);
}

bool in_y(const Witness& sigma, ProcessSet s, ProcessSet a) {
  if (!a.subset_of(s)) return false;
  const Row r1 = sigma.row_or_empty(1);
  return (r1.w | r1.g) == s && a.subset_of(r1.g);
}

bool in_x(const Witness& sigma, ProcessSet s, ProcessSet a) {
  return in_y(sigma, s, a) || in_z(sigma, s);
}

bool in_b(const Witness& sigma, ProcessSet v) {
  return v.subset_of(sigma.rows[0].g);
}

bool contains(const StratumRef& ref, const Witness& sigma) {
  switch (ref.kind) {
    case StratumKind::X:
      return in_x(sigma, ref.s, ref.a);
    case StratumKind::Y:
      return in_y(sigma, ref.s, ref.a);
    case StratumKind::Z:
      return in_z(sigma, ref.s);
    case StratumKind::B:
      return in_b(sigma, ref.v);
    case StratumKind::XBV:
      return in_x(sigma, ref.s, ref.a) && in_b(sigma, ref.v);
  }
  return false;
}

std::vector<SimplexId> members(const Complex& k, const StratumRef& ref,
                               Exec exec) {
  const auto mask = kernels::membership_mask(
      std::span<const Witness>(k.simplices()),
      [&](const Witness& w) { return contains(ref, w); }, exec);
  std::vector<SimplexId> out;
  for (SimplexId id = 0; id < mask.size(); ++id)
    if (mask[id]) out.push_back(id);
  return out;
}

bool is_face_closed(const Complex& k, const std::vector<SimplexId>& ids) {
  std::vector<char> in(k.size(), 0);
  for (SimplexId id : ids) in[id] = 1;
  for (SimplexId id : ids)
    for (SimplexId f : k.faces(id))
      if (!in[f]) return false;
  return true;
}

// --- Isomorphisms --------------------------------------------------------

Witness gamma(const Witness& sigma, ProcessSet s, ProcessSet a) {
  if (s.empty() || !a.subset_of(s))
    throw InvalidInput("gamma needs A ⊆ S with S nonempty");
  if (!in_x(sigma, s, a)) {
    throw InvalidInput(canonical_key(sigma) + " is not in " +
                       StratumRef::x(s, a).to_string());
  }
  const auto& rows = sigma.rows;
  std::vector<Row> out;
  if (sigma.t() == 0) {
    out.push_back({rows[0].w - s, (rows[0].g | s) - a});
  } else if (in_y(sigma, s, a)) {
    // Round 1 is folded into round 0.
    out.push_back({rows[0].w - rows[1].g, (rows[0].g | rows[1].g) - a});
  } else {
    out.push_back({rows[0].w - s, (rows[0].g | s) - a});
    out.push_back({rows[1].w, rows[1].g - s});
  }
  for (int i = 2; i <= sigma.t(); ++i) out.push_back(rows[i]);
  return Witness(std::move(out));
}

Witness rho(const Witness& tau, ProcessSet s) {
  const Row& r0 = tau.rows[0];
  std::vector<Row> out;
  if (r0.w.intersects(s)) {
    out.push_back({r0.w | (r0.g & s), r0.g - s});
    out.push_back({r0.w & s, r0.g & s});
    for (int i = 1; i <= tau.t(); ++i) out.push_back(tau.rows[i]);
  } else if (tau.t() >= 1) {
    out.push_back({r0.w | s, r0.g - s});
    out.push_back({tau.rows[1].w, tau.rows[1].g | s});
    for (int i = 2; i <= tau.t(); ++i) out.push_back(tau.rows[i]);
  } else {
    return tau;
  }
  return Witness(std::move(out));
}

Witness gamma_inverse(const Witness& tau, ProcessSet s, ProcessSet a) {
  Witness t = tau;
  t.rows[0].g |= a;
  return rho(t, s);
}

Witness delta(const Witness& sigma, ProcessSet v) {
  if (!in_b(sigma, v)) {
    throw InvalidInput(canonical_key(sigma) + " is not in B_" + v.to_string());
  }
  Witness out = sigma;
  out.rows[0].g -= v;
  return out;
}

Witness delta_inverse(const Witness& tau, ProcessSet v) {
  if (tau.support().intersects(v)) {
    throw InvalidInput("delta_inverse: V meets the support of " +
                       canonical_key(tau));
  }
  Witness out = tau;
  out.rows[0].g |= v;
  return out;
}

namespace {

BuildOptions lenient(BuildOptions o = {}) {
  o.allow_empty_support = true;
  return o;
}

std::set<SimplexId> id_set(std::span<const SimplexId> ids) {
  return {ids.begin(), ids.end()};
}

// Shared checker: `domain` ids live in `dk`, images in `tk`.
IsoCertificate certify_map(IsoCertificate cert, const Complex& dk,
                           const std::vector<SimplexId>& domain,
                           const Complex& tk, std::size_t target_size,
                           const std::function<bool(const Witness&)>& in_target,
                           const std::function<Witness(const Witness&)>& f,
                           const std::function<Witness(const Witness&)>& f_inv) {
  cert.domain_size = domain.size();
  cert.target_size = target_size;
  cert.lands_in_target = cert.dimension_preserving = cert.inverse_ok = true;
  auto fail = [&](const std::string& why) {
    if (cert.failure.empty()) cert.failure = why;
  };
  std::map<SimplexId, SimplexId> image;
  std::set<SimplexId> hit;
  for (SimplexId id : domain) {
    const Witness& sigma = dk.simplex(id);
    const Witness w = f(sigma);
    auto tid = tk.find(w);
    if (!tid || !in_target(w)) {
      cert.lands_in_target = false;
      fail(canonical_key(sigma) + " maps to " + canonical_key(w) +
           " outside the target");
      continue;
    }
    image[id] = *tid;
    hit.insert(*tid);
    if (dk.dim(id) != tk.dim(*tid)) {
      cert.dimension_preserving = false;
      fail("dimension changes at " + canonical_key(sigma));
    }
    if (!(f_inv(w) == sigma)) {
      cert.inverse_ok = false;
      fail("inverse does not return " + canonical_key(sigma));
    }
  }
  cert.bijective = cert.lands_in_target && hit.size() == domain.size() &&
                   hit.size() == target_size;
  if (!cert.bijective) fail("map is not a bijection");
  cert.face_preserving = cert.lands_in_target;
  for (SimplexId id : domain) {
    if (!cert.face_preserving) break;
    std::set<SimplexId> mapped;
    for (SimplexId f : dk.faces(id)) {
      auto it = image.find(f);
      if (it == image.end()) {
        cert.face_preserving = false;
        break;
      }
      mapped.insert(it->second);
    }
    if (cert.face_preserving && mapped != id_set(tk.faces(image[id]))) {
      cert.face_preserving = false;
    }
    if (!cert.face_preserving)
      fail("face relation differs at " + canonical_key(dk.simplex(id)));
  }
  return cert;
}

}  // namespace

IsoCertificate certify_gamma(const Complex& k, ProcessSet s, ProcessSet a) {
  check_well_formed(StratumRef::x(s, a), k.counter());
  const Complex target =
      Complex::build(restricted(k.counter(), s, a), lenient());
  IsoCertificate cert;
  cert.map = "gamma";
  cert.parameters = "S=" + s.to_string() + ",A=" + a.to_string();
  return certify_map(
      cert, k, members(k, StratumRef::x(s, a)), target, target.size(),
      [](const Witness&) { return true; },
      [&](const Witness& w) { return gamma(w, s, a); },
      [&](const Witness& w) { return gamma_inverse(w, s, a); });
}

IsoCertificate certify_rho(const Complex& k, ProcessSet s) {
  check_well_formed(StratumRef::x(s), k.counter());
  const Complex source = Complex::build(execute(k.counter(), s), lenient());
  std::vector<SimplexId> all(source.size());
  for (SimplexId id = 0; id < all.size(); ++id) all[id] = id;
  IsoCertificate cert;
  cert.map = "rho";
  cert.parameters = "S=" + s.to_string();
  return certify_map(
      cert, source, all, k, members(k, StratumRef::x(s)).size(),
      [&](const Witness& w) { return in_x(w, s, {}); },
      [&](const Witness& w) { return rho(w, s); },
      [&](const Witness& w) { return gamma(w, s); });
}

IsoCertificate certify_delta(const Complex& k, ProcessSet v) {
  check_well_formed(StratumRef::b(v), k.counter());
  const Complex target = Complex::build(without(k.counter(), v), lenient());
  IsoCertificate cert;
  cert.map = "delta";
  cert.parameters = "V=" + v.to_string();
  return certify_map(
      cert, k, members(k, StratumRef::b(v)), target, target.size(),
      [](const Witness&) { return true; },
      [&](const Witness& w) { return delta(w, v); },
      [&](const Witness& w) { return delta_inverse(w, v); });
}

// --- Incidence and intersections ----------------------------------------

bool incidence(ProcessSet s, ProcessSet a, ProcessSet t, ProcessSet b) {
  return (s == t && b.subset_of(a)) || t.subset_of(a);
}

StratumRef intersect_pair(ProcessSet s, ProcessSet a, ProcessSet t,
                          ProcessSet b) {
  if (s == t) return normalized_x(s, a | b);
  if (s.proper_subset_of(t)) return normalized_x(t, s | b);
  if (t.proper_subset_of(s)) return normalized_x(s, t | a);
  return StratumRef::z(s | t);
}

std::optional<StratumRef> intersect_yz(const StratumRef& p,
                                       const StratumRef& q) {
  auto is_yz = [](const StratumRef& r) {
    return r.kind == StratumKind::Y || r.kind == StratumKind::Z;
  };
  if (!is_yz(p) || !is_yz(q))
    throw InvalidInput("intersect_yz takes Y and Z strata only");
  if (p.kind == StratumKind::Z && q.kind == StratumKind::Z)
    return StratumRef::z(p.s | q.s);
  if (p.kind == StratumKind::Z) return intersect_yz(q, p);
  // p is Y_{S,A}.
  const ProcessSet a = q.kind == StratumKind::Z ? p.a | q.s : p.a | q.a;
  if (q.kind == StratumKind::Y && p.s != q.s) return std::nullopt;
  if (!a.subset_of(p.s)) return std::nullopt;  // Y_{S,A} = ∅ when A ⊄ S
  return StratumRef::y(p.s, a);
}

namespace {

std::vector<ProcessSet> normalize_family(std::vector<ProcessSet> family) {
  if (family.empty()) throw InvalidInput("empty family of strata");
  std::vector<ProcessSet> out;
  for (ProcessSet s : family) {
    if (s.empty()) throw InvalidInput("family members must be nonempty");
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

}  // namespace

StratumRef intersect_family_folded(const std::vector<ProcessSet>& family) {
  const auto sets = normalize_family(family);
  StratumRef acc = StratumRef::x(sets[0]);
  for (std::size_t i = 1; i < sets.size(); ++i)
    acc = intersect_pair(acc.s, acc.a, sets[i], {});
  return acc;
}

FamilyIntersection intersect_family(std::vector<ProcessSet> family) {
  FamilyIntersection out;
  auto sets = normalize_family(std::move(family));
  std::optional<std::size_t> lead;
  for (std::size_t i = 0; i < sets.size() && !lead; ++i) {
    bool maximal = true;
    for (ProcessSet other : sets)
      if (sets[i].proper_subset_of(other)) maximal = false;
    if (maximal) lead = i;
  }
  if (!lead) {
    out.folded = true;
    out.order = sets;
    out.result = intersect_family_folded(sets);
    return out;
  }
  if (*lead != 0) {
    std::rotate(sets.begin(), sets.begin() + static_cast<long>(*lead),
                sets.begin() + static_cast<long>(*lead) + 1);
    out.reordered = true;
  }
  out.order = sets;
  ProcessSet rest, all = sets[0];
  bool nested = true;
  for (std::size_t i = 1; i < sets.size(); ++i) {
    rest |= sets[i];
    all |= sets[i];
    if (!sets[i].proper_subset_of(sets[0])) nested = false;
  }
  out.result = nested ? normalized_x(sets[0], rest) : StratumRef::z(all);
  return out;
}

// --- Nerve ----------------------------------------------------------------

NerveReport nerve(const Complex& k) {
  const ProcessSet act = k.counter().active();
  if (act.size() > 4) {
    throw CapExceeded("nerve is limited to at most 4 active processes");
  }
  NerveReport report;
  for (ProcessSet s : subsets_of(act))
    if (!s.empty()) report.vertices.push_back(s);
  const std::size_t n = report.vertices.size();
  if (n == 0) return report;

  // Member masks over nonempty simplices (id 0 is the empty simplex).
  const std::size_t words = (k.size() + 63) / 64;
  using Mask = std::vector<std::uint64_t>;
  std::vector<Mask> masks(n, Mask(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (SimplexId id : members(k, StratumRef::x(report.vertices[i])))
      if (id != k.empty_simplex()) masks[i][id / 64] |= std::uint64_t{1} << (id % 64);
  }
  auto nonempty = [](const Mask& m) {
    return std::any_of(m.begin(), m.end(), [](auto w) { return w != 0; });
  };

  std::set<std::uint32_t> families;
  std::function<void(std::size_t, std::uint32_t, const Mask&)> grow =
      [&](std::size_t from, std::uint32_t fam, const Mask& meet) {
        for (std::size_t i = from; i < n; ++i) {
          Mask next(words);
          for (std::size_t w = 0; w < words; ++w) next[w] = meet[w] & masks[i][w];
          if (!nonempty(next)) continue;
          const std::uint32_t f = fam | (std::uint32_t{1} << i);
          families.insert(f);
          grow(i + 1, f, next);
        }
      };
  grow(0, 0, Mask(words, ~std::uint64_t{0}));

  std::vector<std::uint32_t> ordered(families.begin(), families.end());
  std::sort(ordered.begin(), ordered.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return lex_less(SmallSet::from_bits(a), SmallSet::from_bits(b));
  });
  for (std::uint32_t f : ordered) {
    std::vector<int> idx;
    for (int i : SmallSet::from_bits(f)) idx.push_back(i);
    report.simplices.push_back(std::move(idx));
  }

  const auto it = std::find(report.vertices.begin(), report.vertices.end(), act);
  report.apex = static_cast<int>(it - report.vertices.begin());
  const std::uint32_t apex_bit = std::uint32_t{1} << report.apex;
  report.is_cone = std::all_of(families.begin(), families.end(), [&](auto f) {
    return families.contains(f | apex_bit);
  });
  return report;
}

// --- Diagrams ---------------------------------------------------------------

bool DiagramReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const DiagramCheck& c) { return c.ok; });
}

namespace {

class ComplexCache {
 public:
  explicit ComplexCache(BuildOptions o) : options_(lenient(o)) {}
  const Complex& get(const RoundCounter& r) {
    auto it = cache_.find(r);
    if (it == cache_.end())
      it = cache_.emplace(r, Complex::build(r, options_)).first;
    return it->second;
  }

 private:
  BuildOptions options_;
  std::map<RoundCounter, Complex> cache_;
};

DiagramCheck make_check(std::string name,
                        std::map<std::string, std::string> params) {
  DiagramCheck c;
  c.diagram = std::move(name);
  c.parameters = std::move(params);
  return c;
}

}  // namespace

DiagramReport verify_diagrams(const RoundCounter& r, BuildOptions options) {
  DiagramReport report;
  report.counter = r;
  ComplexCache cache(options);
  const Complex& k = cache.get(r);
  const ProcessSet act = r.active();
  const ProcessSet supp = r.support();

  auto run = [&](DiagramCheck check, const std::vector<SimplexId>& domain,
                 const std::function<std::string(const Witness&)>& compare) {
    for (SimplexId id : domain) {
      const std::string why = compare(k.simplex(id));
      ++check.instances_checked;
      if (!why.empty()) {
        check.ok = false;
        check.failure = canonical_key(k.simplex(id)) + ": " + why;
        break;
      }
    }
    report.checks.push_back(std::move(check));
  };

  // γ_{A,A} against ρ_S ∘ γ_{S∪A,A}, landing in X_S(r \ A).
  for (ProcessSet a : subsets_of(act)) {
    if (a.empty()) continue;
    for (ProcessSet s : subsets_of(act - a)) {
      if (s.empty()) continue;
      const Complex& low = cache.get(without(r, a));
      DiagramCheck check = make_check(
          "nested-strata", {{"S", s.to_string()}, {"A", a.to_string()}});
      run(check, members(k, StratumRef::x(s | a, a)), [&](const Witness& sg) {
        const Witness lhs = gamma(sg, a, a);
        const Witness rhs = rho(gamma(sg, s | a, a), s);
        if (!(lhs == rhs))
          return canonical_key(lhs) + " != " + canonical_key(rhs);
        if (!low.contains(lhs) || !in_x(lhs, s, {}))
          return canonical_key(lhs) + " is not in X_S(r \\ A)";
        return std::string();
      });
    }
  }

  // γ_{S,B} against δ_{A\B}^{-1} ∘ γ_{S,A}, landing in B_{A\B}(r_{S,B}).
  for (ProcessSet s : subsets_of(act)) {
    if (s.empty()) continue;
    for (ProcessSet a : subsets_of(s)) {
      for (ProcessSet b : subsets_of(a)) {
        const Complex& target = cache.get(restricted(r, s, b));
        DiagramCheck check = make_check(
            "stratum-boundary",
            {{"S", s.to_string()}, {"A", a.to_string()}, {"B", b.to_string()}});
        run(check, members(k, StratumRef::x(s, a)), [&](const Witness& sg) {
          const Witness lhs = gamma(sg, s, b);
          const Witness rhs = delta_inverse(gamma(sg, s, a), a - b);
          if (!(lhs == rhs))
            return canonical_key(lhs) + " != " + canonical_key(rhs);
          if (!target.contains(rhs) || !in_b(rhs, a - b))
            return canonical_key(rhs) + " is not in B_{A\\B}(r_{S,B})";
          return std::string();
        });
      }
    }
  }

  // δ_V ∘ γ_{S,A} against γ_{S,A} ∘ δ_V. V may hold passive processes, so
  // the far corner is computed as (r \ V)_{S,A}.
  for (ProcessSet s : subsets_of(act)) {
    if (s.empty()) continue;
    for (ProcessSet a : subsets_of(s)) {
      for (ProcessSet v : subsets_of(supp - s)) {
        if (v.empty()) continue;
        const RoundCounter rv = without(r, v);
        const Complex& target = cache.get(restricted(rv, s, a));
        const Complex& low = cache.get(rv);
        DiagramCheck check = make_check(
            "boundary-square",
            {{"S", s.to_string()}, {"A", a.to_string()}, {"V", v.to_string()}});
        run(check, members(k, StratumRef::xbv(s, a, v)),
            [&](const Witness& sg) {
              const Witness down = delta(sg, v);
              if (!low.contains(down) || !in_x(down, s, a))
                return canonical_key(down) + " is not in X_{S,A}(r \\ V)";
              const Witness lhs = delta(gamma(sg, s, a), v);
              const Witness rhs = gamma(down, s, a);
              if (!(lhs == rhs))
                return canonical_key(lhs) + " != " + canonical_key(rhs);
              if (!target.contains(lhs))
                return canonical_key(lhs) + " is not in P((r \\ V)_{S,A})";
              return std::string();
            });
      }
    }
  }
  return report;
}

}  // namespace snapcx
