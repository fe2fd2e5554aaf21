#include "snapcx/round_counter.hpp"

#include <cctype>
#include <charconv>

#include "snapcx/errors.hpp"

namespace snapcx {

RoundCounter::RoundCounter(std::map<ProcessId, int> entries)
    : entries_(std::move(entries)) {
  for (auto [p, n] : entries_) {
    if (p < 0 || p >= SmallSet::kCapacity) {
      throw InvalidInput("process id " + std::to_string(p) +
                         " out of range 0..63");
    }
    if (n < 0) {
      throw InvalidInput("negative round count for process " +
                         std::to_string(p));
    }
  }
}

RoundCounter RoundCounter::of(std::initializer_list<int> values) {
  std::map<ProcessId, int> entries;
  ProcessId p = 0;
  for (int v : values) entries[p++] = v;
  return RoundCounter(std::move(entries));
}

RoundCounter RoundCounter::parse(std::string_view text) {
  std::map<ProcessId, int> entries;
  auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (!text.empty() && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  if (text.empty()) return RoundCounter();

  ProcessId p = 0;
  while (true) {
    auto comma = text.find(',');
    auto token = text.substr(0, comma);
    while (!token.empty() && is_space(token.front())) token.remove_prefix(1);
    while (!token.empty() && is_space(token.back())) token.remove_suffix(1);
    if (token == "x" || token == "X") {
      // absent process
    } else {
      int value = -1;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (token.empty() || ec != std::errc{} ||
          ptr != token.data() + token.size() || value < 0) {
        throw InvalidInput("bad round-counter token '" + std::string(token) +
                           "'");
      }
      entries[p] = value;
    }
    ++p;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return RoundCounter(std::move(entries));
}

std::optional<int> RoundCounter::at(ProcessId p) const {
  auto it = entries_.find(p);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

int RoundCounter::count(ProcessId p) const {
  auto it = entries_.find(p);
  if (it == entries_.end()) {
    throw InvalidInput("process " + std::to_string(p) + " not in support");
  }
  return it->second;
}

ProcessSet RoundCounter::support() const {
  ProcessSet s;
  for (auto [p, n] : entries_) s.insert(p);
  return s;
}

ProcessSet RoundCounter::active() const {
  ProcessSet s;
  for (auto [p, n] : entries_)
    if (n >= 1) s.insert(p);
  return s;
}

ProcessSet RoundCounter::passive() const {
  ProcessSet s;
  for (auto [p, n] : entries_)
    if (n == 0) s.insert(p);
  return s;
}

int RoundCounter::cardinality() const {
  int total = 0;
  for (auto [p, n] : entries_) total += n;
  return total;
}

std::string RoundCounter::to_text() const {
  std::string out;
  ProcessId next = 0;
  for (auto [p, n] : entries_) {
    for (; next < p; ++next) out += "x,";
    out += std::to_string(n);
    out += ',';
    next = p + 1;
  }
  if (!out.empty()) out.pop_back();
  return out;
}

Classification classify(const RoundCounter& r) {
  return {r.support(), r.active(), r.passive(), r.cardinality()};
}

RoundCounter without(const RoundCounter& r, ProcessSet a) {
  std::map<ProcessId, int> entries;
  for (auto [p, n] : r.entries())
    if (!a.contains(p)) entries.emplace(p, n);
  return RoundCounter(std::move(entries));
}

RoundCounter execute(const RoundCounter& r, ProcessSet s) {
  if (!s.subset_of(r.active())) {
    throw InvalidInput("execution set " + s.to_string() +
                       " is not contained in the active set " +
                       r.active().to_string());
  }
  std::map<ProcessId, int> entries = r.entries();
  for (int p : s) --entries[p];
  return RoundCounter(std::move(entries));
}

RoundCounter restricted(const RoundCounter& r, ProcessSet s, ProcessSet a) {
  if (!a.subset_of(r.support())) {
    throw InvalidInput("deletion set " + a.to_string() +
                       " is not contained in the support");
  }
  return without(execute(r, s), a);
}

RoundCounter chi(const RoundCounter& r) {
  return chi_of(r.active(), r.passive());
}

RoundCounter chi_of(ProcessSet a, ProcessSet b) {
  if (a.intersects(b)) {
    throw InvalidInput("chi_of needs disjoint sets, got " + a.to_string() +
                       " and " + b.to_string());
  }
  std::map<ProcessId, int> entries;
  for (int p : a) entries[p] = 1;
  for (int p : b) entries[p] = 0;
  return RoundCounter(std::move(entries));
}

}  // namespace snapcx
