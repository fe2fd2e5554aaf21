#pragma once

#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "snapcx/kernels.hpp"
#include "snapcx/round_counter.hpp"
#include "snapcx/witness.hpp"

namespace snapcx {

using SimplexId = std::uint32_t;

inline constexpr std::size_t kDefaultSimplexCap = 2'000'000;

/// Simplex cap, overridable through SNAPCX_MAX_SIMPLICES.
std::size_t simplex_cap_from_env();

struct BuildOptions {
  std::size_t max_simplices = kDefaultSimplexCap;
  Exec exec = Exec::parallel;
  /// Build P of the empty counter as the lone simplex ((∅,∅)) instead of
  /// rejecting it. Strata maps land there, e.g. γ_{S,S} when supp r = S.
  bool allow_empty_support = false;
};

/// True iff σ is a witness structure indexing a simplex of P(r): A ∪ G is the
/// support of r, active traces have exactly r(q)+1 rounds and ghost traces at
/// most r(q)+1.
bool is_simplex_of(const RoundCounter& r, const Witness& sigma);

/// Facets ((supp r, ∅), (L_1, ∅), ..., (L_t, ∅)), one per schedule, in
/// canonical-key order. Throws InvalidInput on an empty support.
std::vector<Witness> facets_of(const RoundCounter& r);

/// The immediate snapshot complex P(r) with its face incidence.
///
/// Simplices, the empty one included, are stored once each and numbered by
/// (dimension, canonical key); id 0 is always the empty simplex. `faces(id)`
/// lists the codimension-one faces, `cofaces(id)` the codimension-one
/// cofaces. The object is immutable after build().
class Complex {
 public:
  static Complex build(const RoundCounter& r, BuildOptions options = {});

  const RoundCounter& counter() const { return counter_; }
  std::size_t size() const { return simplices_.size(); }
  const Witness& simplex(SimplexId id) const { return simplices_[id]; }
  const std::vector<Witness>& simplices() const { return simplices_; }
  int dim(SimplexId id) const { return dims_[id]; }
  int top_dim() const { return top_dim_; }
  SimplexId empty_simplex() const { return 0; }

  std::optional<SimplexId> find(const Witness& sigma) const;
  /// Throws InvalidInput if σ is not a simplex of this complex.
  SimplexId id_of(const Witness& sigma) const;
  bool contains(const Witness& sigma) const { return find(sigma).has_value(); }

  std::span<const SimplexId> facets() const { return facets_; }
  std::span<const SimplexId> faces(SimplexId id) const;
  std::span<const SimplexId> cofaces(SimplexId id) const;
  /// Ids of dimension d (d = -1 is the empty simplex); contiguous.
  std::ranges::iota_view<SimplexId, SimplexId> of_dim(int d) const;

  /// Number of simplices in dimensions 0..top_dim (empty simplex excluded).
  std::vector<std::size_t> f_vector() const;

  /// Every face Γ_S(σ), S ⊆ A(σ), as ids.
  std::vector<SimplexId> all_faces(SimplexId id) const;
  /// Vertex ids of σ, ordered by color.
  std::vector<SimplexId> vertices(SimplexId id) const;

 private:
  RoundCounter counter_;
  std::vector<Witness> simplices_;
  std::vector<int> dims_;
  int top_dim_ = -1;
  std::unordered_map<Witness, SimplexId, WitnessHash> index_;
  std::vector<SimplexId> facets_;
  std::vector<std::size_t> dim_offsets_;  // ids of dim d: [off[d+1], off[d+2])
  std::vector<std::size_t> face_offsets_;
  std::vector<SimplexId> face_ids_;
  std::vector<std::size_t> coface_offsets_;
  std::vector<SimplexId> coface_ids_;
};

// ---------------------------------------------------------------------------
// Cone splitting: a passive process contributes a cone apex.

struct ConePairing {
  std::string simplex;  // key in P(r)
  std::string base;     // key in P(r \ p)
  bool with_apex = false;
};

struct ConeCertificate {
  RoundCounter counter;
  ProcessId apex_process = -1;
  Witness apex;
  std::vector<ConePairing> pairing;
  bool bijective = false;
  bool dimension_preserving = false;
  bool face_preserving = false;
  std::string failure;

  bool valid() const {
    return bijective && dimension_preserving && face_preserving;
  }
};

/// Pairs every simplex of P(r) with (face of P(r \ p), apex flag) and checks
/// that this is a simplicial isomorphism P(r) ≅ P(r \ p) * {apex}.
/// Requires p ∈ pass r.
ConeCertificate cone_split(const RoundCounter& r, ProcessId p,
                           BuildOptions options = {});

// ---------------------------------------------------------------------------
// Standard chromatic subdivision χ(Δ^n), enumerated independently.

/// A simplex of χ(Δ^n): vertices (color, view) with distinct colors, views
/// totally ordered by inclusion, and i ∈ view_j implying view_i ⊆ view_j.
struct ChromaticSimplex {
  std::vector<std::pair<ProcessId, ProcessSet>> vertices;  // sorted by color

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Tuple form ((B_1,...,B_t),(C_1,...,C_t)).
struct ChromaticTuple {
  std::vector<ProcessSet> b;
  std::vector<ProcessSet> c;
};

inline constexpr int kChromaticBound = 3;

/// All nonempty simplices of χ(Δ^n). Throws CapExceeded if n > bound.
std::vector<ChromaticSimplex> chromatic_oracle(int n,
                                               int bound = kChromaticBound);

ChromaticTuple to_tuple(const ChromaticSimplex& s);

/// Table map: W_0 = ∪B_i, G_0 = [n] \ W_0, and row i is (C_i, B_i \ C_i).
Witness phi(const ChromaticTuple& tuple, int n);

struct PhiReport {
  int n = 0;
  std::vector<std::size_t> oracle_f_vector;
  std::vector<std::size_t> complex_f_vector;
  bool lands_in_complex = false;
  bool bijective = false;
  bool dimension_preserving = false;
  bool face_preserving = false;
  std::string failure;

  bool valid() const {
    return lands_in_complex && bijective && dimension_preserving &&
           face_preserving;
  }
};

/// Certifies the table map as an isomorphism χ(Δ^n) → P(1,...,1).
PhiReport phi_iso(int n, int bound = kChromaticBound);

}  // namespace snapcx
