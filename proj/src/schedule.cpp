#include "snapcx/schedule.hpp"

#include <functional>

#include "snapcx/errors.hpp"

namespace snapcx {

bool is_valid_schedule(const Schedule& s, const RoundCounter& r) {
  std::map<ProcessId, int> seen;
  for (ProcessSet layer : s.layers) {
    if (layer.empty()) return false;
    for (int p : layer) ++seen[p];
  }
  for (auto [p, n] : seen) {
    auto expected = r.at(p);
    if (!expected || *expected != n) return false;
  }
  for (auto [p, n] : r.entries())
    if (n > 0 && !seen.contains(p)) return false;
  return true;
}

std::vector<Schedule> enumerate_schedules(const RoundCounter& r,
                                          std::size_t cap) {
  std::map<ProcessId, int> remaining = r.entries();
  std::vector<Schedule> out;
  Schedule current;

  std::function<void()> extend = [&] {
    ProcessSet ready;
    for (auto [p, n] : remaining)
      if (n > 0) ready.insert(p);
    if (ready.empty()) {
      if (out.size() >= cap) {
        throw CapExceeded("schedule enumeration exceeded cap of " +
                          std::to_string(cap));
      }
      out.push_back(current);
      return;
    }
    for (ProcessSet layer : subsets_of(ready)) {
      if (layer.empty()) continue;
      for (int p : layer) --remaining[p];
      current.layers.push_back(layer);
      extend();
      current.layers.pop_back();
      for (int p : layer) ++remaining[p];
    }
  };
  extend();
  return out;
}

std::uint64_t count_schedules(const RoundCounter& r) {
  // Memo keyed by the vector of remaining counts.
  std::map<std::vector<int>, std::uint64_t> memo;
  std::vector<ProcessId> ids;
  std::vector<int> start;
  for (auto [p, n] : r.entries()) {
    if (n > 0) {
      ids.push_back(p);
      start.push_back(n);
    }
  }
  std::function<std::uint64_t(std::vector<int>&)> count =
      [&](std::vector<int>& rem) -> std::uint64_t {
    std::uint64_t ready = 0;
    for (std::size_t i = 0; i < rem.size(); ++i)
      if (rem[i] > 0) ready |= std::uint64_t{1} << i;
    if (ready == 0) return 1;
    if (auto it = memo.find(rem); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (std::uint64_t sub = ready; sub != 0; sub = (sub - 1) & ready) {
      for (std::size_t i = 0; i < rem.size(); ++i)
        if ((sub >> i) & 1u) --rem[i];
      total += count(rem);
      for (std::size_t i = 0; i < rem.size(); ++i)
        if ((sub >> i) & 1u) ++rem[i];
    }
    memo.emplace(rem, total);
    return total;
  };
  return count(start);
}

Witness to_facet(const Schedule& s, const RoundCounter& r) {
  if (!is_valid_schedule(s, r)) {
    throw InvalidInput("schedule does not match round counter " +
                       r.to_text());
  }
  std::vector<Row> rows;
  rows.push_back({r.support(), {}});
  for (ProcessSet layer : s.layers) rows.push_back({layer, {}});
  return Witness(std::move(rows));
}

std::map<ProcessId, Witness> views(const Schedule& s, const RoundCounter& r) {
  const Witness facet = to_facet(s, r);
  const ProcessSet a = facet.active();
  std::map<ProcessId, Witness> out;
  for (int p : a) out.emplace(p, ghost(facet, a - ProcessSet::singleton(p)));
  return out;
}

}  // namespace snapcx
