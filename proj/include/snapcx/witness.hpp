#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "snapcx/small_set.hpp"

namespace snapcx {

/// One (W_i, G_i) pair: processes witnessed in round i and ghosts whose last
/// passive sighting is round i.
struct Row {
  ProcessSet w;
  ProcessSet g;

  friend bool operator==(const Row&, const Row&) = default;
};

/// Witness (pre)structure in pair form ((W_0,G_0), ..., (W_t,G_t)).
///
/// The pair form is the storage form and the equality/hash key. Whether the
/// sequence is a prestructure, stable, or a witness structure is a property
/// checked by validate(), not an invariant of this type.
struct Witness {
  std::vector<Row> rows;

  Witness() = default;
  explicit Witness(std::vector<Row> r) : rows(std::move(r)) {}

  /// Index of the last row.
  int t() const { return static_cast<int>(rows.size()) - 1; }
  /// W_0 ∪ G_0.
  ProcessSet support() const;
  /// G_0 ∪ ... ∪ G_t.
  ProcessSet ghosts() const;
  /// supp σ \ G(σ).
  ProcessSet active() const;
  int dim() const { return active().size() - 1; }

  /// {i | p ∈ W_i ∪ G_i}
  LevelSet trace(ProcessId p) const;
  /// max{i | p ∈ W_i}, or -1 when p is never witnessed.
  int last(ProcessId p) const;

  /// Row i, or an empty row past the end.
  Row row_or_empty(int i) const;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Canonical text key: "({0,1},{})({0},{1})". Sets in increasing order, so
/// equal structures have equal keys.
std::string canonical_key(const Witness& sigma);

/// Order by dimension, then by canonical key.
bool witness_less(const Witness& a, const Witness& b);

enum class Validity { invalid, prestructure, stable, witness };

const char* to_string(Validity v);

/// Strongest class the pair sequence belongs to. An empty sequence is
/// invalid.
Validity validate(const Witness& pairs);

inline bool is_witness_structure(const Witness& s) {
  return validate(s) == Validity::witness;
}

/// Trace presentation (A, G, {Tr(p)}).
struct TraceForm {
  ProcessSet active;
  ProcessSet ghost;
  std::map<ProcessId, LevelSet> traces;

  friend bool operator==(const TraceForm&, const TraceForm&) = default;
};

TraceForm to_trace_form(const Witness& sigma);
/// Throws InvalidInput if (T) fails, A ∩ G ≠ ∅, or traces do not cover A ∪ G
/// exactly.
Witness from_trace_form(const TraceForm& tf);

/// Drops rows with W_i = ∅ (i ≥ 1) and merges their ghost sets forward into
/// the next kept row. Requires a stable prestructure.
Witness canonical_form(const Witness& sigma);

/// Stabilization modulo S: S becomes ghost and traces are cut at the last
/// round whose witnesses are not all absorbed. Requires S ⊆ A(σ).
Witness stabilize(const Witness& sigma, ProcessSet s);

/// Γ_S(σ) = C(st_S(σ)). Requires a witness structure and S ⊆ A(σ).
Witness ghost(const Witness& sigma, ProcessSet s);

/// All faces {Γ_S(σ) | S ⊆ A(σ)}, including σ and the empty face.
std::vector<Witness> all_faces(const Witness& sigma);

/// Vertices Γ_{A(σ)\{p}}(σ), one per color p ∈ A(σ), in color order.
std::vector<Witness> vertices_of(const Witness& sigma);

struct WitnessHash {
  std::size_t operator()(const Witness& s) const noexcept;
};

}  // namespace snapcx
