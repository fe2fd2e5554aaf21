#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snapcx/complex.hpp"

namespace snapcx {

// Canonical decomposition of P(r) into the strata X_{S,A}, Y_{S,A}, Z_S, the
// boundary pieces B_V, and X_{S,A,V} = X_{S,A} ∩ B_V.
//
// Membership reads row 1 as W_1 ∪ G_1, with rows past the end empty. A
// simplex with a single row (t = 0) has no first round at all; it is counted
// in every Z_S, which keeps every X face-closed and makes γ_S a bijection
// when r has passive processes.

enum class StratumKind { X, Y, Z, B, XBV };

const char* to_string(StratumKind k);

struct StratumRef {
  StratumKind kind = StratumKind::X;
  ProcessSet s;
  ProcessSet a;
  ProcessSet v;

  static StratumRef x(ProcessSet s, ProcessSet a = {}) {
    return {StratumKind::X, s, a, {}};
  }
  static StratumRef y(ProcessSet s, ProcessSet a) {
    return {StratumKind::Y, s, a, {}};
  }
  static StratumRef z(ProcessSet s) { return {StratumKind::Z, s, s, {}}; }
  static StratumRef b(ProcessSet v) { return {StratumKind::B, {}, {}, v}; }
  static StratumRef xbv(ProcessSet s, ProcessSet a, ProcessSet v) {
    return {StratumKind::XBV, s, a, v};
  }

  /// Display form, e.g. "X_{{0,1},{0}}", "Z_{{0,1}}", "B_{{2}}".
  std::string to_string() const;
  /// Inverse of to_string(); also accepts "S/A" for X_{S,A}.
  static StratumRef parse(std::string_view text);

  friend bool operator==(const StratumRef&, const StratumRef&) = default;
};

/// Throws InvalidInput unless A ⊆ S ⊆ act r, V ⊆ supp r and V ∩ S = ∅.
void check_well_formed(const StratumRef& ref, const RoundCounter& r);

bool in_z(const Witness& sigma, ProcessSet s);
bool in_y(const Witness& sigma, ProcessSet s, ProcessSet a);
bool in_x(const Witness& sigma, ProcessSet s, ProcessSet a);
bool in_b(const Witness& sigma, ProcessSet v);
bool contains(const StratumRef& ref, const Witness& sigma);

/// Ids of the members of `ref`, increasing.
std::vector<SimplexId> members(const Complex& k, const StratumRef& ref,
                               Exec exec = Exec::parallel);

/// True iff every face of every listed simplex is listed too.
bool is_face_closed(const Complex& k, const std::vector<SimplexId>& ids);

// --- Isomorphisms --------------------------------------------------------

/// γ_{S,A}: X_{S,A}(r) → P(r_{S,A}). Throws InvalidInput if σ ∉ X_{S,A}.
Witness gamma(const Witness& sigma, ProcessSet s, ProcessSet a = {});
/// ρ_S = γ_S^{-1}: P(r_S) → X_S(r).
Witness rho(const Witness& tau, ProcessSet s);
/// γ_{S,A}^{-1} = ρ_S after putting A back into H_0.
Witness gamma_inverse(const Witness& tau, ProcessSet s, ProcessSet a = {});
/// δ_V: B_V(r) → P(r \ V). Throws InvalidInput if V ⊄ G_0.
Witness delta(const Witness& sigma, ProcessSet v);
Witness delta_inverse(const Witness& tau, ProcessSet v);

/// Certificate that a map between two simplex sets is a simplicial
/// isomorphism.
struct IsoCertificate {
  std::string map;  // "gamma", "rho" or "delta"
  std::string parameters;
  std::size_t domain_size = 0;
  std::size_t target_size = 0;
  bool lands_in_target = false;
  bool bijective = false;
  bool dimension_preserving = false;
  bool face_preserving = false;
  bool inverse_ok = false;
  std::string failure;

  bool valid() const {
    return lands_in_target && bijective && dimension_preserving &&
           face_preserving && inverse_ok;
  }
};

IsoCertificate certify_gamma(const Complex& k, ProcessSet s, ProcessSet a);
IsoCertificate certify_rho(const Complex& k, ProcessSet s);
IsoCertificate certify_delta(const Complex& k, ProcessSet v);

// --- Incidence and intersections ----------------------------------------

/// Closed form for X_{S,A} ⊆ X_{T,B}: (S = T and B ⊆ A) or T ⊆ A.
bool incidence(ProcessSet s, ProcessSet a, ProcessSet t, ProcessSet b);

/// Closed form for X_{S,A} ∩ X_{T,B}: X_{S,A∪B} if S = T, X_{T,S∪B} if
/// S ⊂ T (symmetrically for T ⊂ S), Z_{S∪T} otherwise.
StratumRef intersect_pair(ProcessSet s, ProcessSet a, ProcessSet t,
                          ProcessSet b);

/// Closed forms for intersections of Y and Z strata: Z_S ∩ Z_T = Z_{S∪T},
/// Y_{S,A} ∩ Z_T = Y_{S,A∪T}, Y_{S,A} ∩ Y_{T,B} = Y_{S,A∪B} or ∅.
/// nullopt stands for the empty stratum. Both refs must be Y or Z.
std::optional<StratumRef> intersect_yz(const StratumRef& p,
                                       const StratumRef& q);

struct FamilyIntersection {
  StratumRef result;
  std::vector<ProcessSet> order;  // family as used, leading set first
  bool reordered = false;
  bool folded = false;  // pairwise fallback was used
};

/// X_{S_1} ∩ ... ∩ X_{S_t} for distinct nonempty S_i. A set that is not a
/// proper subset of any other is moved to the front; if none existed the
/// intersection would be folded pairwise instead.
FamilyIntersection intersect_family(std::vector<ProcessSet> family);

/// The same intersection computed only by pairwise folding of
/// intersect_pair, X ∩ Z steps included.
StratumRef intersect_family_folded(const std::vector<ProcessSet>& family);

// --- Nerve ----------------------------------------------------------------

struct NerveReport {
  std::vector<ProcessSet> vertices;           // nonempty S ⊆ act r
  std::vector<std::vector<int>> simplices;    // vertex index sets
  int apex = -1;                              // index of act r
  bool is_cone = false;
};

/// Nerve of the cover {X_S}: a family spans a simplex iff its strata share a
/// nonempty simplex. Throws CapExceeded when |act r| > 4.
NerveReport nerve(const Complex& k);

// --- Diagrams ---------------------------------------------------------------

struct DiagramCheck {
  std::string diagram;  // "nested-strata", "stratum-boundary", "boundary-square"
  std::map<std::string, std::string> parameters;
  std::size_t instances_checked = 0;
  bool ok = true;
  std::string failure;
};

struct DiagramReport {
  RoundCounter counter;
  std::vector<DiagramCheck> checks;

  bool ok() const;
};

/// Composes both paths of each diagram simplex by simplex for every
/// admissible parameter choice:
///   nested-strata     γ_{A,A}(σ) = ρ_S(γ_{S∪A,A}(σ)), σ ∈ X_{S∪A,A}, S ∩ A = ∅
///   stratum-boundary  γ_{S,B}(σ) = δ_{A\B}^{-1}(γ_{S,A}(σ)), σ ∈ X_{S,A}, B ⊆ A
///   boundary-square   δ_V(γ_{S,A}(σ)) = γ_{S,A}(δ_V(σ)), σ ∈ X_{S,A,V}
DiagramReport verify_diagrams(const RoundCounter& r, BuildOptions options = {});

}  // namespace snapcx
