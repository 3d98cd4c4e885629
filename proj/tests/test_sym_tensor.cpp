#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "qzspec/multi_index.hpp"
#include "qzspec/sym_tensor.hpp"
#include "test_util.hpp"

using namespace qzspec;
using qztest::for_each_full_index;

TEST(MultiIndex, CanonicalKeySortsAndDetects) {
  EXPECT_EQ(canonical_key({3, 1, 2}), (MultiIndex{1, 2, 3}));
  EXPECT_TRUE(is_canonical({1, 1, 2}));
  EXPECT_FALSE(is_canonical({2, 1}));
}

TEST(MultiIndex, FactorialValuesAndGuard) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(factorial(12), 479001600LL);
  EXPECT_THROW(factorial(21), std::invalid_argument);
  EXPECT_THROW(factorial(-1), std::invalid_argument);
}

TEST(MultiIndex, OrbitMultiplicityIsPermutationCount) {
  EXPECT_EQ(orbit_multiplicity({1, 1, 1}), 1);
  EXPECT_EQ(orbit_multiplicity({1, 1, 2}), 3);
  EXPECT_EQ(orbit_multiplicity({1, 2, 3}), 6);
  EXPECT_EQ(orbit_multiplicity({1, 1, 2, 2}), 6);
}

TEST(MultiIndex, CanonicalEnumerationMatchesCount) {
  for (int order = 2; order <= 5; ++order) {
    for (int dim = 1; dim <= 4; ++dim) {
      std::vector<MultiIndex> keys;
      for_each_canonical_key(order, dim, [&](const MultiIndex& k) { keys.push_back(k); });
      EXPECT_EQ(static_cast<long long>(keys.size()), canonical_key_count(order, dim));
      for (size_t i = 0; i < keys.size(); ++i) {
        EXPECT_TRUE(is_canonical(keys[i]));
        if (i > 0) EXPECT_LT(keys[i - 1], keys[i]);  // strictly increasing, so unique
      }
    }
  }
  EXPECT_EQ(canonical_key_count(3, 2), 4);   // (m+n-1 choose m) = (4 choose 3)
  EXPECT_EQ(canonical_key_count(4, 3), 15);  // (6 choose 4)
}

TEST(SymTensor, ConstructorValidation) {
  EXPECT_THROW(SymTensor(1, 2), std::invalid_argument);
  EXPECT_THROW(SymTensor(2, 0), std::invalid_argument);
  std::map<MultiIndex, double> bad_len{{MultiIndex{1}, 1.0}};
  EXPECT_THROW(SymTensor(2, 2, bad_len), std::invalid_argument);
  std::map<MultiIndex, double> unsorted{{MultiIndex{2, 1}, 1.0}};
  EXPECT_THROW(SymTensor(2, 2, unsorted), std::invalid_argument);
  std::map<MultiIndex, double> out_of_range{{MultiIndex{1, 3}, 1.0}};
  EXPECT_THROW(SymTensor(2, 2, out_of_range), std::invalid_argument);
}

TEST(SymTensor, ExactZerosAreDropped) {
  SymTensor t(2, 2, {{{1, 1}, 0.0}, {{1, 2}, 0.0}});
  EXPECT_TRUE(t.is_zero());
  EXPECT_EQ(t.orbits().size(), 0u);
}

TEST(SymTensor, ValueLooksUpAnyIndexOrder) {
  SymTensor t(3, 2, {{{1, 1, 2}, 0.25}});
  EXPECT_DOUBLE_EQ(t.value({1, 1, 2}), 0.25);
  EXPECT_DOUBLE_EQ(t.value({2, 1, 1}), 0.25);
  EXPECT_DOUBLE_EQ(t.value({1, 2, 1}), 0.25);
  EXPECT_DOUBLE_EQ(t.value({2, 2, 2}), 0.0);
  EXPECT_THROW(t.value({0, 1, 1}), std::invalid_argument);
}

TEST(SymTensor, SymmetrizeStrictRejectsConflicts) {
  std::vector<std::pair<MultiIndex, double>> entries{{{1, 2}, 3.0}, {{2, 1}, 5.0}};
  EXPECT_THROW(symmetrize(2, 2, entries, SymmetrizeMode::strict), std::invalid_argument);
  auto t = symmetrize(2, 2, entries, SymmetrizeMode::average);
  EXPECT_DOUBLE_EQ(t.value({1, 2}), 4.0);
}

TEST(SymTensor, SymmetrizeStrictAcceptsAgreement) {
  std::vector<std::pair<MultiIndex, double>> entries{{{1, 2}, 3.0}, {{2, 1}, 3.0}};
  auto t = symmetrize(2, 2, entries, SymmetrizeMode::strict);
  EXPECT_DOUBLE_EQ(t.value({2, 1}), 3.0);
}

TEST(SymTensor, ContractionsMatchBruteForceAcrossShapes) {
  const std::vector<std::pair<int, int>> shapes{{2, 2}, {2, 3}, {3, 2}, {3, 3},
                                                {4, 2}, {4, 3}, {5, 2}};
  Rng rng(77);
  for (auto [m, n] : shapes) {
    auto t = qztest::random_tensor(m, n, rng);
    auto w = rng.unit_vector(n);
    for (auto& x : w) x *= 1.3;  // contractions are defined for any vector

    auto g = contract_m1(t, w);
    auto g_ref = qztest::naive_contract_m1(t, w);
    for (int i = 0; i < n; ++i)
      EXPECT_NEAR(g[static_cast<size_t>(i)], g_ref[static_cast<size_t>(i)], 1e-10)
          << "m=" << m << " n=" << n << " i=" << i;

    double f = apply_m(t, w);
    EXPECT_NEAR(f, qztest::naive_apply_m(t, w), 1e-10) << "m=" << m << " n=" << n;

    // T w^m equals the gradient contraction dotted with w, for any w
    double via_grad = 0.0;
    for (int i = 0; i < n; ++i) via_grad += g[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
    EXPECT_NEAR(f, via_grad, 1e-10);

    auto mat = contract_to_matrix(t, w);
    auto mat_ref = qztest::naive_contract_to_matrix(t, w);
    for (size_t k = 0; k < mat.size(); ++k) EXPECT_NEAR(mat[k], mat_ref[k], 1e-10);

    EXPECT_NEAR(frobenius_norm(t), qztest::naive_frobenius(t), 1e-10);
  }
}

TEST(SymTensor, DiagonalCubicHandValue) {
  SymTensor t(3, 2, {{{1, 1, 1}, 2.0}, {{2, 2, 2}, -5.0}});
  // 2 * 0.6^3 - 5 * 0.8^3 = 0.432 - 2.56
  EXPECT_NEAR(apply_m(t, {0.6, 0.8}), -2.128, 1e-14);
}

TEST(SymTensor, FrobeniusCountsOrbitMultiplicity) {
  SymTensor t(3, 2, {{{1, 1, 2}, 0.7}});
  EXPECT_NEAR(frobenius_norm(t), 0.7 * std::sqrt(3.0), 1e-14);
}

TEST(SymTensor, ContractToMatrixOrderTwoIsDenseMatrix) {
  SymTensor t(2, 2, {{{1, 1}, 1.0}, {{1, 2}, 3.0}, {{2, 2}, -2.0}});
  auto mat = contract_to_matrix(t, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(mat[0], 1.0);
  EXPECT_DOUBLE_EQ(mat[1], 3.0);
  EXPECT_DOUBLE_EQ(mat[2], 3.0);
  EXPECT_DOUBLE_EQ(mat[3], -2.0);
}

TEST(ComplexSymTensor, ShapeMismatchThrows) {
  SymTensor a(3, 2), b(3, 3);
  EXPECT_THROW(ComplexSymTensor(a, b), std::invalid_argument);
}

TEST(ComplexSymTensor, ContractionsMatchBruteForce) {
  Rng rng(123);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}, {4, 2}}) {
    auto psi = qztest::random_complex_tensor(m, n, rng);
    std::vector<std::complex<double>> z(static_cast<size_t>(n));
    for (auto& c : z) c = {rng.gaussian(), rng.gaussian()};

    auto g = contract_m1(psi, z);
    auto g_ref = qztest::naive_contract_m1(psi, z);
    for (int i = 0; i < n; ++i)
      EXPECT_LT(std::abs(g[static_cast<size_t>(i)] - g_ref[static_cast<size_t>(i)]), 1e-9);

    auto f = apply_m(psi, z);
    EXPECT_LT(std::abs(f - qztest::naive_apply_m(psi, z)), 1e-9);
  }
}

TEST(ComplexSymTensor, RealViewHasZeroImaginaryPart) {
  SymTensor t(3, 2, {{{1, 1, 1}, 2.0}});
  ComplexSymTensor psi(t);
  EXPECT_TRUE(psi.imag_part().is_zero());
  EXPECT_EQ(psi.value({1, 1, 1}), std::complex<double>(2.0, 0.0));
  EXPECT_FALSE(psi.is_zero());
}

TEST(ComplexSymTensor, FrobeniusCombinesParts) {
  SymTensor re(2, 2, {{{1, 1}, 3.0}});
  SymTensor im(2, 2, {{{1, 1}, 4.0}});
  EXPECT_NEAR(frobenius_norm(ComplexSymTensor(re, im)), 5.0, 1e-14);
}
