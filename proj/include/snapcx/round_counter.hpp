#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "snapcx/small_set.hpp"

namespace snapcx {

/// Finite partial map process-id -> number of write/read rounds.
///
/// Processes outside the support carry the bottom value and are never
/// stored. Values are immutable after construction; every operation returns
/// a new counter.
class RoundCounter {
 public:
  RoundCounter() = default;
  /// Throws InvalidInput on a negative count or a process id above 63.
  explicit RoundCounter(std::map<ProcessId, int> entries);

  /// Short-hand (r_0, ..., r_n) with contiguous support {0..n}.
  static RoundCounter of(std::initializer_list<int> values);
  /// Text syntax: comma separated counts indexed from process 0, `x` marks
  /// an absent process ("2,x,1"). Empty text is the empty counter.
  static RoundCounter parse(std::string_view text);

  const std::map<ProcessId, int>& entries() const { return entries_; }
  std::optional<int> at(ProcessId p) const;
  /// Count of a process known to be in the support.
  int count(ProcessId p) const;

  ProcessSet support() const;
  ProcessSet active() const;
  ProcessSet passive() const;
  int cardinality() const;

  /// Inverse of parse(); trailing absent entries are dropped.
  std::string to_text() const;

  friend bool operator==(const RoundCounter&, const RoundCounter&) = default;
  friend auto operator<=>(const RoundCounter& a, const RoundCounter& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::map<ProcessId, int> entries_;
};

struct Classification {
  ProcessSet support;
  ProcessSet active;
  ProcessSet passive;
  int cardinality = 0;
};

Classification classify(const RoundCounter& r);

/// Deletion r \ A: processes of A leave the support. Ids outside the support
/// are ignored.
RoundCounter without(const RoundCounter& r, ProcessSet a);

/// Execution r ↓ S: every process of S runs one round. Requires S ⊆ act r.
RoundCounter execute(const RoundCounter& r, ProcessSet s);

/// r_{S,A} = (r ↓ S) \ A, with S ⊆ act r and A ⊆ supp r.
RoundCounter restricted(const RoundCounter& r, ProcessSet s, ProcessSet a);

/// The 0/1 counter with the same active and passive sets.
RoundCounter chi(const RoundCounter& r);

/// χ_{A,B}: 1 on A, 0 on B. Requires A ∩ B = ∅.
RoundCounter chi_of(ProcessSet a, ProcessSet b);

}  // namespace snapcx
