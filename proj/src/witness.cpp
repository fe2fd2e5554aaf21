#include "snapcx/witness.hpp"

#include <algorithm>

#include "snapcx/errors.hpp"

namespace snapcx {

ProcessSet Witness::support() const {
  if (rows.empty()) return {};
  return rows[0].w | rows[0].g;
}

ProcessSet Witness::ghosts() const {
  ProcessSet g;
  for (const Row& row : rows) g |= row.g;
  return g;
}

ProcessSet Witness::active() const { return support() - ghosts(); }

LevelSet Witness::trace(ProcessId p) const {
  LevelSet tr;
  for (int i = 0; i <= t(); ++i) {
    if (rows[i].w.contains(p) || rows[i].g.contains(p)) tr.insert(i);
  }
  return tr;
}

int Witness::last(ProcessId p) const {
  for (int i = t(); i >= 0; --i)
    if (rows[i].w.contains(p)) return i;
  return -1;
}

Row Witness::row_or_empty(int i) const {
  if (i < 0 || i > t()) return {};
  return rows[i];
}

std::string canonical_key(const Witness& sigma) {
  std::string out;
  for (const Row& row : sigma.rows) {
    out += '(';
    out += row.w.to_string();
    out += ',';
    out += row.g.to_string();
    out += ')';
  }
  return out;
}

bool witness_less(const Witness& a, const Witness& b) {
  int da = a.dim(), db = b.dim();
  if (da != db) return da < db;
  return canonical_key(a) < canonical_key(b);
}

const char* to_string(Validity v) {
  switch (v) {
    case Validity::invalid:
      return "invalid";
    case Validity::prestructure:
      return "prestructure";
    case Validity::stable:
      return "stable";
    case Validity::witness:
      return "witness";
  }
  return "?";
}

Validity validate(const Witness& pairs) {
  const auto& rows = pairs.rows;
  if (rows.empty()) return Validity::invalid;
  const int t = pairs.t();
  const ProcessSet w0 = rows[0].w;
  // (P1)
  for (int i = 1; i <= t; ++i) {
    if (!rows[i].w.subset_of(w0) || !rows[i].g.subset_of(w0))
      return Validity::invalid;
  }
  // (P2)
  ProcessSet seen;
  for (const Row& row : rows) {
    if (seen.intersects(row.g)) return Validity::invalid;
    seen |= row.g;
  }
  // (P3): G_i ∩ W_j = ∅ for i ≤ j
  ProcessSet ghosts_so_far;
  for (const Row& row : rows) {
    ghosts_so_far |= row.g;
    if (ghosts_so_far.intersects(row.w)) return Validity::invalid;
  }
  if (t >= 1 && rows[t].w.empty()) return Validity::prestructure;
  for (int i = 1; i <= t; ++i)
    if (rows[i].w.empty()) return Validity::stable;
  return Validity::witness;
}

TraceForm to_trace_form(const Witness& sigma) {
  if (sigma.rows.empty()) throw InvalidInput("empty pair sequence");
  TraceForm tf;
  tf.ghost = sigma.ghosts();
  tf.active = sigma.active();
  for (int p : sigma.support()) tf.traces[p] = sigma.trace(p);
  return tf;
}

Witness from_trace_form(const TraceForm& tf) {
  if (tf.active.intersects(tf.ghost)) {
    throw InvalidInput("trace form: active and ghost sets overlap");
  }
  ProcessSet covered;
  int t = 0;
  for (const auto& [p, tr] : tf.traces) {
    if (!tr.contains(0)) {
      throw InvalidInput("trace form: 0 missing from Tr(" + std::to_string(p) +
                         ")");
    }
    covered.insert(p);
    t = std::max(t, tr.max());
  }
  if (covered != (tf.active | tf.ghost)) {
    throw InvalidInput("trace form: traces must cover exactly A ∪ G");
  }
  std::vector<Row> rows(static_cast<std::size_t>(t) + 1);
  for (const auto& [p, tr] : tf.traces) {
    if (tf.active.contains(p)) {
      for (int i : tr) rows[i].w.insert(p);
    } else {
      const int m = tr.max();
      rows[m].g.insert(p);
      for (int i : tr)
        if (i != m) rows[i].w.insert(p);
    }
  }
  return Witness(std::move(rows));
}

Witness canonical_form(const Witness& sigma) {
  Validity v = validate(sigma);
  if (v != Validity::stable && v != Validity::witness) {
    throw InvalidInput("canonical_form needs a stable prestructure, got " +
                       canonical_key(sigma));
  }
  std::vector<Row> out;
  out.push_back(sigma.rows[0]);
  ProcessSet pending;
  for (int i = 1; i <= sigma.t(); ++i) {
    pending |= sigma.rows[i].g;
    if (!sigma.rows[i].w.empty()) {
      out.push_back({sigma.rows[i].w, pending});
      pending = {};
    }
  }
  return Witness(std::move(out));
}

Witness stabilize(const Witness& sigma, ProcessSet s) {
  if (validate(sigma) == Validity::invalid) {
    throw InvalidInput("stabilize needs a prestructure");
  }
  const ProcessSet ghosts = sigma.ghosts();
  if (!s.subset_of(sigma.active())) {
    throw InvalidInput("stabilize: " + s.to_string() +
                       " is not contained in the active set of " +
                       canonical_key(sigma));
  }
  // Largest round still carrying an unabsorbed witness; 0 when everything is
  // absorbed, which turns every trace into {0}.
  int q = 0;
  for (int i = sigma.t(); i >= 0; --i) {
    if (!sigma.rows[i].w.subset_of(s | ghosts)) {
      q = i;
      break;
    }
  }
  TraceForm tf = to_trace_form(sigma);
  tf.active = tf.active - s;
  tf.ghost = tf.ghost | s;
  const LevelSet keep = LevelSet::range(q + 1);
  for (auto& [p, tr] : tf.traces) tr &= keep;
  return from_trace_form(tf);
}

Witness ghost(const Witness& sigma, ProcessSet s) {
  if (!is_witness_structure(sigma)) {
    throw InvalidInput("ghost needs a witness structure, got " +
                       canonical_key(sigma));
  }
  if (s.empty()) return sigma;
  return canonical_form(stabilize(sigma, s));
}

std::vector<Witness> all_faces(const Witness& sigma) {
  std::vector<Witness> out;
  for (ProcessSet s : subsets_of(sigma.active())) out.push_back(ghost(sigma, s));
  return out;
}

std::vector<Witness> vertices_of(const Witness& sigma) {
  std::vector<Witness> out;
  const ProcessSet a = sigma.active();
  for (int p : a) out.push_back(ghost(sigma, a - ProcessSet::singleton(p)));
  return out;
}

std::size_t WitnessHash::operator()(const Witness& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const Row& row : s.rows) {
    h ^= std::hash<std::uint64_t>{}(row.w.bits()) + 0x9e3779b97f4a7c15ull +
         (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(row.g.bits() * 31 + 7) +
         0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace snapcx
