#include "snapcx/kernels.hpp"

#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace snapcx {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      words_((rows + 63) / 64),
      data_(words_ * cols, 0) {}

void BitMatrix::set(std::size_t row, std::size_t col) {
  data_[col * words_ + row / 64] |= std::uint64_t{1} << (row % 64);
}

bool BitMatrix::get(std::size_t row, std::size_t col) const {
  return (data_[col * words_ + row / 64] >> (row % 64)) & 1u;
}

namespace kernels {

namespace {

std::vector<Witness> ghosts_of(const Witness& sigma) {
  std::vector<Witness> out;
  for (int p : sigma.active())
    out.push_back(ghost(sigma, ProcessSet::singleton(p)));
  return out;
}

// Index of the lowest set bit of a packed column, or -1.
std::int64_t lowest(std::span<const std::uint64_t> col) {
  for (std::size_t w = 0; w < col.size(); ++w) {
    if (col[w] != 0) {
      return static_cast<std::int64_t>(w * 64 + std::countr_zero(col[w]));
    }
  }
  return -1;
}

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

std::size_t rank_column_reduction(BitMatrix& m) {
  std::vector<std::int64_t> owner(m.rows(), -1);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto col = m.column(j);
    std::int64_t low = lowest(col);
    while (low >= 0 && owner[low] >= 0) {
      xor_into(col, m.column(static_cast<std::size_t>(owner[low])));
      low = lowest(col);
    }
    if (low >= 0) {
      owner[low] = static_cast<std::int64_t>(j);
      ++rank;
    }
  }
  return rank;
}

std::size_t rank_row_elimination(BitMatrix& m) {
  const auto cols = static_cast<std::int64_t>(m.cols());
  std::vector<char> used(m.cols(), 0);
  std::size_t rank = 0;
  for (std::size_t row = 0; row < m.rows(); ++row) {
    std::int64_t pivot = -1;
    for (std::int64_t j = 0; j < cols; ++j) {
      if (!used[j] && m.get(row, static_cast<std::size_t>(j))) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) continue;
    used[pivot] = 1;
    ++rank;
    const auto pcol = m.column(static_cast<std::size_t>(pivot));
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < cols; ++j) {
      if (!used[j] && m.get(row, static_cast<std::size_t>(j))) {
        xor_into(m.column(static_cast<std::size_t>(j)), pcol);
      }
    }
  }
  return rank;
}

}  // namespace

std::vector<std::vector<Witness>> single_ghosts(std::span<const Witness> level,
                                                Exec exec) {
  std::vector<std::vector<Witness>> out(level.size());
  const auto n = static_cast<std::int64_t>(level.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) out[i] = ghosts_of(level[i]);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = ghosts_of(level[i]);
  }
  return out;
}

std::vector<int> count_ids(std::span<const std::uint32_t> ids, std::size_t n,
                           Exec exec) {
  std::vector<int> counts(n, 0);
  if (exec == Exec::serial) {
    for (std::uint32_t id : ids) ++counts[id];
    return counts;
  }
  const auto m = static_cast<std::int64_t>(ids.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
#pragma omp atomic
    ++counts[ids[i]];
  }
  return counts;
}

std::size_t rank_gf2(BitMatrix m, Exec exec) {
  return exec == Exec::serial ? rank_column_reduction(m)
                              : rank_row_elimination(m);
}

}  // namespace kernels
}  // namespace snapcx
