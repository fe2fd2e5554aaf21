#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snapcx/complex.hpp"

namespace snapcx {

/// Subcomplex given as a membership mask over the simplex ids of a complex.
using SimplexMask = std::vector<char>;

// --- Pseudomanifold structure ----------------------------------------------

struct BoundaryReport {
  std::size_t ridges = 0;
  std::size_t degree_one = 0;
  std::size_t degree_two = 0;
  bool degrees_ok = false;       // every ridge lies in one or two facets
  bool matches_g0 = false;       // closure of degree-1 ridges = {G_0 ≠ ∅}
  SimplexMask boundary;          // closure of the degree-1 ridges
  std::string failure;

  bool valid() const { return degrees_ok && matches_g0; }
};

/// Ridge degrees and boundary of a pure complex.
BoundaryReport boundary(const Complex& k, Exec exec = Exec::parallel);

/// Simplices with G_0 ≠ ∅, the empty simplex included.
SimplexMask g0_boundary(const Complex& k);

/// Facet adjacency through shared ridges is connected.
bool strong_connectivity(const Complex& k);

/// Cell (S, A, V) whose interior contains int σ; `passive` for one-row
/// simplices, which lie in the simplex on pass r.
struct InteriorCell {
  bool passive = false;
  ProcessSet s, a, v;

  friend bool operator==(const InteriorCell&, const InteriorCell&) = default;
};

InteriorCell classify_interior(const Complex& k, SimplexId id);

struct PartitionReport {
  std::size_t passive = 0;
  std::size_t cells = 0;  // distinct (S, A, V) hit
  bool ok = false;
  std::string failure;
};

/// Checks that every simplex lies in the interior of exactly one admissible
/// X_{S,A,V} (A ⊂ S ⊆ act r, V ⊆ supp r \ S), namely the one
/// classify_interior() names, or is passive and in none.
PartitionReport verify_interior_partition(const Complex& k);

// --- Collapses -----------------------------------------------------------

struct CollapseStep {
  SimplexId free = 0;
  SimplexId cofacet = 0;
  /// "stage1", "stage2", "stage3", "base", "recursive" or "greedy-fallback".
  std::string stage;
};

struct CollapseSequence {
  std::vector<CollapseStep> steps;
  std::size_t fallback_steps = 0;
};

/// Elementary collapses taking P(r) down to ∂P(r) \ int B_p(r), i.e.
/// removing exactly the simplices with G_0 = ∅ or G_0 = {p}. Stage 1 treats
/// the pairs (X_{S,A,p}, X_{S,A}) for p ∉ S, stage 2 the pairs
/// (X_{S,A∪q}, X_{S,A}) for p ∈ S, stage 3 the pair (X_{p,p}, X_p), each by
/// recursion on the smaller counter behind γ. Throws VerificationFailure if
/// the produced order is not a valid collapse.
CollapseSequence collapse_to_relative_boundary(const Complex& k, ProcessId p);

/// Perfect matching of all simplices, the empty one included: the pivot's
/// relative collapse first, then the same for every B_U ≅ P(r \ U),
/// U ⊆ supp r \ {pivot} by increasing size. Steps past a stall, if any, are
/// completed greedily and flagged. Pivot defaults to min supp r.
CollapseSequence collapse_all(const Complex& k,
                              std::optional<ProcessId> pivot = std::nullopt);

struct CollapseValidation {
  bool ok = false;
  std::optional<std::size_t> failed_step;
  std::string message;
  SimplexMask remaining;
  bool perfect = false;  // nothing remains
};

/// Replays `steps`, checking at each one that the cofacet is maximal and is
/// the only remaining simplex properly containing the free face. With
/// `require_perfect` the steps must also exhaust the complex.
CollapseValidation validate_collapse(const Complex& k,
                                     std::span<const CollapseStep> steps,
                                     bool require_perfect = true);

/// Repeatedly collapses the free face with the smallest canonical key.
/// Returns nullopt if it gets stuck before exhausting the complex.
std::optional<CollapseSequence> greedy_collapse(const Complex& k);

// --- Homology -------------------------------------------------------------

/// Reduced Betti numbers over the two-element field, entry d+1 for
/// dimension d = -1 .. top_dim, of the subcomplex `mask` (all simplices when
/// empty). The empty simplex is the augmentation in dimension -1.
std::vector<int> reduced_betti_z2(const Complex& k, const SimplexMask& mask = {},
                                  Exec exec = Exec::parallel);

/// Alternating sum of the f-vector (the empty simplex not counted).
long euler(const Complex& k);
long euler(const Complex& k, const SimplexMask& mask);

}  // namespace snapcx
