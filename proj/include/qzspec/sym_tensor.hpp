#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qzspec/multi_index.hpp"

namespace qzspec {

// Symmetric tensor of a given order over R^dim, stored as one value per
// permutation orbit, keyed by the canonical (sorted, 1-based) multi-index.
// Exact zeros are dropped so the stored form is canonical. Immutable after
// construction.
class SymTensor {
 public:
  SymTensor(int order, int dim, std::map<MultiIndex, double> orbit_values = {})
      : order_(order), dim_(dim) {
    if (order < 2) throw std::invalid_argument("SymTensor: order must be >= 2");
    if (dim < 1) throw std::invalid_argument("SymTensor: dim must be >= 1");
    for (auto& [key, val] : orbit_values) {
      validate_key(key);
      if (val != 0.0) orbits_.emplace(key, val);
    }
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  const std::map<MultiIndex, double>& orbits() const { return orbits_; }
  bool is_zero() const { return orbits_.empty(); }

  // Entry at an arbitrary (possibly unsorted) multi-index.
  double value(MultiIndex idx) const {
    std::sort(idx.begin(), idx.end());
    validate_key(idx);
    auto it = orbits_.find(idx);
    return it == orbits_.end() ? 0.0 : it->second;
  }

  double max_abs_orbit() const {
    double m = 0.0;
    for (const auto& [key, val] : orbits_) m = std::max(m, std::abs(val));
    return m;
  }

 private:
  void validate_key(const MultiIndex& key) const {
    if (static_cast<int>(key.size()) != order_)
      throw std::invalid_argument("SymTensor: key length != order");
    if (!is_canonical(key))
      throw std::invalid_argument("SymTensor: key not in canonical (sorted) form");
    if (key.front() < 1 || key.back() > dim_)
      throw std::invalid_argument("SymTensor: index out of range");
  }

  int order_;
  int dim_;
  std::map<MultiIndex, double> orbits_;
};

enum class SymmetrizeMode { strict, average };

// Build a SymTensor from raw (multi-index, value) entries given in any index
// order. strict mode rejects entries whose orbit duplicates disagree; average
// mode averages every value supplied for an orbit.
inline SymTensor symmetrize(int order, int dim,
                            const std::vector<std::pair<MultiIndex, double>>& entries,
                            SymmetrizeMode mode = SymmetrizeMode::strict) {
  std::map<MultiIndex, double> sums;
  std::map<MultiIndex, long long> counts;
  for (const auto& [idx, val] : entries) {
    MultiIndex key = canonical_key(idx);
    auto [it, fresh] = sums.emplace(key, val);
    if (fresh) {
      counts[key] = 1;
    } else if (mode == SymmetrizeMode::strict) {
      if (it->second != val)
        throw std::invalid_argument("symmetrize: duplicate entries disagree in strict mode");
    } else {
      it->second += val;
      ++counts[key];
    }
  }
  if (mode == SymmetrizeMode::average) {
    for (auto& [key, sum] : sums) sum /= static_cast<double>(counts[key]);
  }
  return SymTensor(order, dim, std::move(sums));
}

inline SymTensor make_diagonal(int order, const std::vector<double>& diag) {
  std::map<MultiIndex, double> vals;
  int dim = static_cast<int>(diag.size());
  for (int i = 1; i <= dim; ++i) {
    vals.emplace(MultiIndex(static_cast<size_t>(order), i), diag[static_cast<size_t>(i - 1)]);
  }
  return SymTensor(order, dim, std::move(vals));
}

namespace detail {

// Shared contraction kernel over orbit entries. For each canonical key with
// repeat counts c_j, the number of ordered arrangements of the remaining
// m-1 slots after pinning one slot to index i is (m-1)! / ((c_i-1)! prod c_j!).
template <typename Scalar, typename Entries>
std::vector<Scalar> contract_m1_impl(int order, int dim, const Entries& entries,
                                     const std::vector<Scalar>& w) {
  if (static_cast<int>(w.size()) != dim)
    throw std::invalid_argument("contract_m1: vector length != dim");
  std::vector<Scalar> g(static_cast<size_t>(dim), Scalar(0));
  const long long fact_m1 = factorial(order - 1);
  for (const auto& [key, val] : entries) {
    auto counts = index_counts(key);
    long long denom = 1;
    for (const auto& [j, c] : counts) denom *= factorial(c);
    for (const auto& [i, c_i] : counts) {
      // arrangements = (m-1)! / ((c_i-1)! * prod_{j != i} c_j!)
      //             = (m-1)! * c_i / denom
      long long arr = fact_m1 * c_i / denom;
      // product of w over the key with one copy of w_i removed
      Scalar partial(1);
      for (const auto& [j, c] : counts) {
        int reps = (j == i) ? c - 1 : c;
        for (int r = 0; r < reps; ++r) partial *= w[static_cast<size_t>(j - 1)];
      }
      g[static_cast<size_t>(i - 1)] += Scalar(val) * static_cast<double>(arr) * partial;
    }
  }
  return g;
}

template <typename Scalar, typename Entries>
Scalar apply_m_impl(int order, int dim, const Entries& entries, const std::vector<Scalar>& w) {
  if (static_cast<int>(w.size()) != dim)
    throw std::invalid_argument("apply_m: vector length != dim");
  (void)order;
  Scalar total(0);
  for (const auto& [key, val] : entries) {
    Scalar prod(1);
    for (int j : key) prod *= w[static_cast<size_t>(j - 1)];
    total += Scalar(val) * static_cast<double>(orbit_multiplicity(key)) * prod;
  }
  return total;
}

}  // namespace detail

// g = T w^{m-1}, the gradient direction of w -> T w^m up to the factor m.
inline std::vector<double> contract_m1(const SymTensor& t, const std::vector<double>& w) {
  return detail::contract_m1_impl<double>(t.order(), t.dim(), t.orbits(), w);
}

// Full contraction T w^m.
inline double apply_m(const SymTensor& t, const std::vector<double>& w) {
  return detail::apply_m_impl<double>(t.order(), t.dim(), t.orbits(), w);
}

// M_{ij} = T(e_i, e_j, w, ..., w) with m-2 copies of w. For order 2 this is
// the dense matrix of T itself.
inline std::vector<double> contract_to_matrix(const SymTensor& t, const std::vector<double>& w) {
  const int n = t.dim();
  const int m = t.order();
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("contract_to_matrix: vector length != dim");
  std::vector<double> mat(static_cast<size_t>(n) * n, 0.0);
  const long long fact_m2 = factorial(m - 2);
  for (const auto& [key, val] : t.orbits()) {
    auto counts = index_counts(key);
    for (const auto& [i, c_i] : counts) {
      for (const auto& [j, c_j] : counts) {
        if (i == j && c_i < 2) continue;
        // arrangements of the remaining m-2 slots
        long long denom = 1;
        double pw = 1.0;
        bool ok = true;
        for (const auto& [l, c] : counts) {
          int reps = c - (l == i ? 1 : 0) - (l == j ? 1 : 0);
          if (reps < 0) { ok = false; break; }
          denom *= factorial(reps);
          for (int r = 0; r < reps; ++r) pw *= w[static_cast<size_t>(l - 1)];
        }
        if (!ok) continue;
        double coeff = val * static_cast<double>(fact_m2 / denom) * pw;
        mat[static_cast<size_t>(i - 1) * n + (j - 1)] += coeff;
      }
    }
  }
  return mat;
}

inline double frobenius_norm(const SymTensor& t) {
  double s = 0.0;
  for (const auto& [key, val] : t.orbits()) {
    s += val * val * static_cast<double>(orbit_multiplicity(key));
  }
  return std::sqrt(s);
}

// Complex symmetric tensor, stored as a real part and an imaginary part of
// shared shape. Symmetric means invariant under index permutation (no
// conjugation involved).
class ComplexSymTensor {
 public:
  ComplexSymTensor(SymTensor re, SymTensor im) : re_(std::move(re)), im_(std::move(im)) {
    if (re_.order() != im_.order() || re_.dim() != im_.dim())
      throw std::invalid_argument("ComplexSymTensor: real and imaginary shapes differ");
    rebuild_merged();
  }

  // Purely real tensor viewed as complex.
  explicit ComplexSymTensor(const SymTensor& re)
      : re_(re), im_(SymTensor(re.order(), re.dim())) {
    rebuild_merged();
  }

  int order() const { return re_.order(); }
  int dim() const { return re_.dim(); }
  const SymTensor& real_part() const { return re_; }
  const SymTensor& imag_part() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  std::complex<double> value(const MultiIndex& idx) const {
    return {re_.value(idx), im_.value(idx)};
  }

  // Canonical keys present in either part, with complex values.
  const std::vector<std::pair<MultiIndex, std::complex<double>>>& merged_orbits() const {
    return merged_;
  }

 private:
  void rebuild_merged() {
    std::map<MultiIndex, std::complex<double>> acc;
    for (const auto& [k, v] : re_.orbits()) acc[k] += std::complex<double>(v, 0.0);
    for (const auto& [k, v] : im_.orbits()) acc[k] += std::complex<double>(0.0, v);
    merged_.assign(acc.begin(), acc.end());
  }

  SymTensor re_;
  SymTensor im_;
  std::vector<std::pair<MultiIndex, std::complex<double>>> merged_;
};

inline std::vector<std::complex<double>> contract_m1(const ComplexSymTensor& t,
                                                     const std::vector<std::complex<double>>& z) {
  return detail::contract_m1_impl<std::complex<double>>(t.order(), t.dim(), t.merged_orbits(), z);
}

inline std::complex<double> apply_m(const ComplexSymTensor& t,
                                    const std::vector<std::complex<double>>& z) {
  return detail::apply_m_impl<std::complex<double>>(t.order(), t.dim(), t.merged_orbits(), z);
}

inline double frobenius_norm(const ComplexSymTensor& t) {
  double a = frobenius_norm(t.real_part());
  double b = frobenius_norm(t.imag_part());
  return std::sqrt(a * a + b * b);
}

}  // namespace qzspec
