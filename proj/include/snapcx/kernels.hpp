#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path that
// the tests compare the OpenMP path against; bench/ times both.

#include <cstdint>
#include <span>
#include <vector>

#include "snapcx/witness.hpp"

namespace snapcx {

enum class Exec { serial, parallel };

/// Dense GF(2) matrix stored column by column, each column a packed bit
/// vector over the rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_col() const { return words_; }

  void set(std::size_t row, std::size_t col);
  bool get(std::size_t row, std::size_t col) const;
  std::span<std::uint64_t> column(std::size_t col) {
    return {data_.data() + col * words_, words_};
  }
  std::span<const std::uint64_t> column(std::size_t col) const {
    return {data_.data() + col * words_, words_};
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> data_;
};

namespace kernels {

/// For each input simplex, Γ_{p}(σ) for every p ∈ A(σ) in increasing p.
std::vector<std::vector<Witness>> single_ghosts(std::span<const Witness> level,
                                                Exec exec);

/// Histogram of ids in [0, n).
std::vector<int> count_ids(std::span<const std::uint32_t> ids, std::size_t n,
                           Exec exec);

/// Rank over the two-element field. The serial path is a column reduction
/// on lowest set bits; the parallel path is pivot-by-row elimination with
/// the column updates spread over threads.
std::size_t rank_gf2(BitMatrix m, Exec exec);

/// mask[i] = pred(items[i]).
template <typename T, typename Pred>
std::vector<char> membership_mask(std::span<const T> items, Pred pred,
                                  Exec exec) {
  std::vector<char> mask(items.size(), 0);
  const auto n = static_cast<std::int64_t>(items.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) mask[i] = pred(items[i]) ? 1 : 0;
  } else {
    for (std::int64_t i = 0; i < n; ++i) mask[i] = pred(items[i]) ? 1 : 0;
  }
  return mask;
}

}  // namespace kernels
}  // namespace snapcx
