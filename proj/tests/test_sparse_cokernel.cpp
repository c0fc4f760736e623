#include "normtorus/abelian.hpp"
#include "normtorus/sparse_cokernel.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace normtorus;

namespace {

std::vector<SparseVector> columns_of(const IntMatrix& m) {
  std::vector<SparseVector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(to_sparse(m.col(j)));
  return cols;
}

// Sparse random matrix with many unit entries, like a coboundary matrix.
IntMatrix random_sparse(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> kind(0, 9);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const int k = kind(rng);
      if (k == 0) m(i, j) = 1;
      if (k == 1) m(i, j) = -1;
      if (k == 2) m(i, j) = 2;
      if (k == 3) m(i, j) = 3;
    }
  return m;
}

}  // namespace

TEST(SparseCokernel, MatchesDenseCokernel) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 3 + trial % 9, c = 1 + (trial * 7) % 8;
    IntMatrix m = random_sparse(rng, r, c);
    SparseCokernel sparse(r, columns_of(m));
    Cokernel dense(m);
    ASSERT_EQ(sparse.structure(), dense.structure()) << m;

    // lifts have unit coordinates and their order kills them
    const auto& inv = sparse.structure().invariants;
    for (std::size_t k = 0; k < inv.size(); ++k) {
      IntVector lift = sparse.torsion_lift(k);
      IntVector coords = sparse.torsion_coordinates(lift);
      for (std::size_t j = 0; j < coords.size(); ++j) EXPECT_EQ(coords[j], Integer(j == k ? 1 : 0));
      EXPECT_TRUE(sparse.contains(scaled(lift, inv[k])));
      EXPECT_EQ(sparse.contains(lift), false);
    }

    // images of random vectors are in the span, perturbations generally not
    IntVector x(c);
    for (std::size_t j = 0; j < c; ++j) x[j] = static_cast<long long>(rng() % 7) - 3;
    IntVector y = m * x;
    EXPECT_TRUE(sparse.contains(y));
    EXPECT_TRUE(is_zero(sparse.torsion_coordinates(y)));
    IntVector z = y;
    z[0] += Integer(1);
    EXPECT_EQ(sparse.contains(z), dense.contains(z));
  }
}

TEST(SparseCokernel, TorsionCoordinatesAreAdditive) {
  std::mt19937 rng(5);
  IntMatrix m(6, 4);
  m(0, 0) = 2;
  m(1, 0) = 1;
  m(1, 1) = 4;
  m(2, 1) = 2;
  m(3, 2) = 6;
  m(4, 3) = 1;
  m(5, 3) = -1;
  SparseCokernel s(6, columns_of(m));
  Cokernel d(m);
  EXPECT_EQ(s.structure(), d.structure());
  for (int trial = 0; trial < 50; ++trial) {
    IntVector a(6), b(6);
    for (int i = 0; i < 6; ++i) {
      a[i] = static_cast<long long>(rng() % 9) - 4;
      b[i] = static_cast<long long>(rng() % 9) - 4;
    }
    // restrict to torsion classes: multiply by the exponent of the torsion part
    IntVector ca = s.torsion_coordinates(a), cb = s.torsion_coordinates(b);
    IntVector sum = a;
    axpy(sum, Integer(1), b);
    IntVector cs = s.torsion_coordinates(sum);
    for (std::size_t k = 0; k < cs.size(); ++k)
      EXPECT_EQ(cs[k], floor_mod(ca[k] + cb[k], s.structure().invariants[k]));
  }
}
