#pragma once

// Reference computations that share no code with the library: they work on
// plain integers, strings and vectors, and recompute the quantities the
// library derives through witness structures.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// Ordered set partitions of an n-set: a(n) = sum_k C(n,k) a(n-k).
inline std::uint64_t fubini(int n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;  // C(m, k)
    for (int k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

/// Counts indexed by process id; -1 marks an absent process.
using Counts = std::vector<int>;

/// Every sequence of nonempty subsets of the active processes with length
/// up to the total round count, kept when each process appears exactly
/// counts[p] times. Layers are bit masks.
inline std::vector<std::vector<unsigned>> brute_force_schedules(const Counts& r) {
  unsigned act = 0;
  int total = 0;
  for (std::size_t p = 0; p < r.size(); ++p) {
    if (r[p] > 0) {
      act |= 1u << p;
      total += r[p];
    }
  }
  std::vector<unsigned> choices;
  for (unsigned s = 1; s <= act; ++s)
    if ((s & ~act) == 0) choices.push_back(s);

  std::vector<std::vector<unsigned>> out;
  if (act == 0) {
    out.push_back({});
    return out;
  }
  for (int len = 1; len <= total; ++len) {
    std::vector<std::size_t> digit(len, 0);
    while (true) {
      std::vector<int> seen(r.size(), 0);
      for (int i = 0; i < len; ++i)
        for (std::size_t p = 0; p < r.size(); ++p)
          if (choices[digit[i]] >> p & 1u) ++seen[p];
      bool match = true;
      for (std::size_t p = 0; p < r.size(); ++p)
        if (r[p] >= 0 && seen[p] != r[p]) match = false;
      if (match) {
        std::vector<unsigned> word;
        for (int i = 0; i < len; ++i) word.push_back(choices[digit[i]]);
        out.push_back(word);
      }
      int i = len - 1;
      while (i >= 0 && ++digit[i] == choices.size()) digit[i--] = 0;
      if (i < 0) break;
    }
  }
  return out;
}

/// Final local states of a full-information immediate-snapshot run: every
/// layer writes its members' states, then each member snapshots memory.
/// A process that never runs keeps its initial state.
inline std::map<int, std::string> run_full_information(
    const Counts& r, const std::vector<unsigned>& layers) {
  std::map<int, std::string> state, memory;
  for (std::size_t p = 0; p < r.size(); ++p)
    if (r[p] >= 0) state[p] = "p" + std::to_string(p);
  for (unsigned layer : layers) {
    for (auto& [p, s] : state)
      if (layer >> p & 1u) memory[p] = s;
    std::string snapshot = "[";
    for (auto& [q, m] : memory) snapshot += std::to_string(q) + ":" + m + ";";
    snapshot += "]";
    for (auto& [p, s] : state)
      if (layer >> p & 1u) s = "p" + std::to_string(p) + snapshot;
  }
  return state;
}

/// f-vector of the protocol complex: facets are the sets of final states
/// over all schedules, simplices their nonempty subsets.
inline std::vector<std::size_t> protocol_f_vector(const Counts& r) {
  std::set<std::vector<std::string>> simplices;
  std::size_t n = 0;
  for (int c : r) n += c >= 0 ? 1 : 0;
  for (const auto& word : brute_force_schedules(r)) {
    std::vector<std::string> facet;
    for (auto& [p, s] : run_full_information(r, word)) facet.push_back(s);
    for (unsigned sub = 1; sub < (1u << facet.size()); ++sub) {
      std::vector<std::string> face;
      for (std::size_t i = 0; i < facet.size(); ++i)
        if (sub >> i & 1u) face.push_back(facet[i]);
      simplices.insert(face);
    }
  }
  std::vector<std::size_t> f(n, 0);
  for (const auto& s : simplices) ++f[s.size() - 1];
  return f;
}

/// Rank over GF(2) by textbook Gaussian elimination on dense rows.
inline std::size_t dense_rank(std::vector<std::vector<bool>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && !m[pivot][c]) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != rank && m[i][c]) {
        for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] != m[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
