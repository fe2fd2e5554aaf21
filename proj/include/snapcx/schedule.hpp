#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "snapcx/round_counter.hpp"
#include "snapcx/witness.hpp"

namespace snapcx {

/// Layered immediate-snapshot execution: each layer is a nonempty group of
/// processes that write together and then snapshot together.
struct Schedule {
  std::vector<ProcessSet> layers;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// True iff every layer is nonempty and each p ∈ supp r occurs in exactly
/// r(p) layers (and nothing outside the support occurs).
bool is_valid_schedule(const Schedule& s, const RoundCounter& r);

/// Upper bound on the number of schedules enumerate() will produce.
inline constexpr std::size_t kDefaultScheduleCap = 2'000'000;

/// All schedules of r in generation order (layers chosen left to right,
/// candidate layers in subset order). Throws CapExceeded past `cap`.
std::vector<Schedule> enumerate_schedules(const RoundCounter& r,
                                          std::size_t cap = kDefaultScheduleCap);

/// Number of schedules, by memoized recursion on the remaining counts.
std::uint64_t count_schedules(const RoundCounter& r);

/// ((supp r, ∅), (L_1, ∅), ..., (L_t, ∅)).
Witness to_facet(const Schedule& s, const RoundCounter& r);

/// Color-p vertex of the facet, i.e. what process p knows at the end.
std::map<ProcessId, Witness> views(const Schedule& s, const RoundCounter& r);

}  // namespace snapcx
