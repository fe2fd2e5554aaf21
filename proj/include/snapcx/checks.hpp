#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "snapcx/complex.hpp"

namespace snapcx {

// Named invariant suites run against a built complex. Each returns a JSON
// report with at least {"check", "status"}; status is "pass", "fail" or
// "skipped" (the suite does not apply to this counter).

struct CheckOptions {
  std::uint64_t seed = 0x5eed;
  /// Instance budget for the ghosting check; above it a seeded sample is
  /// drawn instead of the full enumeration.
  std::size_t gg_budget = 200'000;
};

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail", "skipped"
  nlohmann::json report;

  bool failed() const { return status == "fail"; }
};

/// Names accepted by run_check(), in the order verify lists them.
const std::vector<std::string>& check_names();

/// Throws InvalidInput on an unknown name.
CheckResult run_check(const Complex& k, std::string_view name,
                      const CheckOptions& options = {});

// The individual suites.
CheckResult check_purity(const Complex& k);
CheckResult check_pseudomanifold(const Complex& k);
CheckResult check_boundary(const Complex& k);
CheckResult check_strong_connectivity(const Complex& k);
CheckResult check_euler(const Complex& k);
/// Reduced homology of P is trivial and that of ∂P is the sphere's.
CheckResult check_homology(const Complex& k);
/// Pair, incidence, Y/Z and family formulas against setwise intersections,
/// plus the cover by the X_S. Sub-reports carry their own status.
CheckResult check_strata_intersections(const Complex& k);
/// γ_{S,A}, ρ_S and δ_V certificates for every admissible parameter.
CheckResult check_isomorphisms(const Complex& k);
CheckResult check_diagrams(const Complex& k);
/// Γ_T ∘ Γ_S = Γ_{S∪T} for disjoint S, T ⊆ A(σ).
CheckResult check_ghosting(const Complex& k, const CheckOptions& options = {});
CheckResult check_cone(const Complex& k);
/// Applies when r is (1,...,1) on {0..n} with n ≤ kChromaticBound.
CheckResult check_phi(const Complex& k);
CheckResult check_schedule_bijection(const Complex& k);
CheckResult check_interior_partition(const Complex& k);
CheckResult check_collapse(const Complex& k);

}  // namespace snapcx
