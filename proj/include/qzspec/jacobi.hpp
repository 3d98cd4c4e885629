#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qzspec {

struct DenseEig {
  std::vector<double> values;               // descending
  std::vector<std::vector<double>> vectors; // orthonormal, vectors[k] pairs with values[k]
};

// Cyclic Jacobi for a dense symmetric matrix (row-major, n x n). Plenty for
// desk-scale problems; no pivot searching, just sweeps until the off-diagonal
// mass is negligible.
inline DenseEig jacobi_eigensymmetric(std::vector<double> a, int n, int max_sweeps = 64) {
  if (n < 1 || static_cast<int>(a.size()) != n * n)
    throw std::invalid_argument("jacobi_eigensymmetric: bad shape");
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

  auto at = [&](std::vector<double>& m, int r, int c) -> double& {
    return m[static_cast<size_t>(r) * n + c];
  };

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int p = 0; p < n; ++p) {
      diag += std::abs(at(a, p, p));
      for (int q = p + 1; q < n; ++q) off += std::abs(at(a, p, q));
    }
    if (off <= 1e-15 * (diag + off) || off == 0.0) {
      converged = true;
      break;
    }

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(a, p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        // rotate rows/columns p and q of a
        for (int k = 0; k < n; ++k) {
          double akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(a, p, k), aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        // accumulate the rotation into v (columns p, q)
        for (int k = 0; k < n; ++k) {
          double vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  if (!converged) {
    // The convergence test runs at the top of each sweep, so the final sweep
    // may have finished the job without being observed; test once more.
    double off = 0.0, diag = 0.0;
    for (int p = 0; p < n; ++p) {
      diag += std::abs(at(a, p, p));
      for (int q = p + 1; q < n; ++q) off += std::abs(at(a, p, q));
    }
    if (off > 1e-15 * (diag + off) && off != 0.0)
      throw std::runtime_error("jacobi_eigensymmetric: no convergence within the sweep budget");
  }

  DenseEig out;
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return at(a, x, x) > at(a, y, y);
  });
  out.values.reserve(static_cast<size_t>(n));
  out.vectors.reserve(static_cast<size_t>(n));
  for (int k : order) {
    out.values.push_back(at(a, k, k));
    std::vector<double> col(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) col[static_cast<size_t>(r)] = at(v, r, k);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

}  // namespace qzspec
