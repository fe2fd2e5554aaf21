#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "snapcx/complex.hpp"
#include "snapcx/kernels.hpp"

using namespace snapcx;

TEST_CASE("bit matrix") {
  BitMatrix m(130, 3);
  m.set(0, 0);
  m.set(129, 2);
  CHECK(m.get(0, 0));
  CHECK(m.get(129, 2));
  CHECK_FALSE(m.get(129, 1));
  CHECK(m.words_per_col() == 3);
}

TEST_CASE("rank: serial, parallel and dense elimination agree") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 150, cols = 1 + rng() % 150;
    const int density = 1 + static_cast<int>(rng() % 6);
    BitMatrix m(rows, cols);
    std::vector<std::vector<bool>> dense(rows, std::vector<bool>(cols));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (static_cast<int>(rng() % 12) < density) {
          m.set(r, c);
          dense[r][c] = true;
        }
    const std::size_t expected = oracle::dense_rank(dense);
    CHECK(kernels::rank_gf2(m, Exec::serial) == expected);
    CHECK(kernels::rank_gf2(m, Exec::parallel) == expected);
  }
  CHECK(kernels::rank_gf2(BitMatrix(0, 0), Exec::parallel) == 0);
  CHECK(kernels::rank_gf2(BitMatrix(5, 0), Exec::serial) == 0);
}

TEST_CASE("single ghosts: serial equals parallel") {
  const Complex k = Complex::build(RoundCounter::of({2, 1, 1}));
  const auto a = kernels::single_ghosts(k.simplices(), Exec::serial);
  const auto b = kernels::single_ghosts(k.simplices(), Exec::parallel);
  CHECK(a == b);
  for (SimplexId id = 0; id < k.size(); ++id)
    CHECK(a[id].size() == static_cast<std::size_t>(k.simplex(id).active().size()));
}

TEST_CASE("count ids: serial equals parallel") {
  std::mt19937_64 rng(3);
  std::vector<std::uint32_t> ids(10000);
  for (auto& x : ids) x = rng() % 257;
  const auto a = kernels::count_ids(ids, 257, Exec::serial);
  const auto b = kernels::count_ids(ids, 257, Exec::parallel);
  CHECK(a == b);
  long total = 0;
  for (int x : a) total += x;
  CHECK(total == 10000);
}

TEST_CASE("membership mask: serial equals parallel") {
  std::vector<int> v(5000);
  for (int i = 0; i < 5000; ++i) v[i] = i;
  auto odd = [](int x) { return x % 3 == 1; };
  const auto a = kernels::membership_mask<int>(v, odd, Exec::serial);
  const auto b = kernels::membership_mask<int>(v, odd, Exec::parallel);
  CHECK(a == b);
  CHECK(a[4] == 1);
  CHECK(a[5] == 0);
}
