#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qzspec/jacobi.hpp"
#include "qzspec/rng.hpp"
#include "qzspec/sym_tensor.hpp"

namespace qzspec {

enum class PairSource { jacobi, shifted_power, grid_oracle };

inline const char* to_string(PairSource s) {
  switch (s) {
    case PairSource::jacobi: return "jacobi";
    case PairSource::shifted_power: return "shifted_power";
    default: return "grid_oracle";
  }
}

// An eigenvalue/unit-vector pair with its verified residual
// || T w^{m-1} - lambda w ||_2.
struct Eigenpair {
  double lambda = 0.0;
  std::vector<double> vec;
  double residual = 0.0;
  PairSource source = PairSource::shifted_power;
};

enum class ShiftMode { automatic, fixed_value };

struct SolverConfig {
  double tol = 1e-10;
  int max_iter = 5000;
  int num_starts = 0;  // 0 = automatic (100 per dimension of the solved tensor)
  double dedup_tol = 1e-6;
  std::uint64_t seed = 12345;
  ShiftMode shift_mode = ShiftMode::automatic;
  double shift_value = 0.0;

  void validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
    if (num_starts < 0) throw std::invalid_argument("SolverConfig: num_starts must be >= 0");
    if (!(dedup_tol > tol))
      throw std::invalid_argument("SolverConfig: dedup_tol must exceed tol");
    if (shift_mode == ShiftMode::fixed_value && !(shift_value > 0.0))
      throw std::invalid_argument("SolverConfig: fixed shift must be positive");
  }
};

// Raised when the iteration budget produced no usable eigenpair at all.
class solver_budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One row of a spectrum: a distinct eigenvalue with a representative vector
// and the number of distinct eigenvector directions merged into it. All
// direction representatives are kept (vec is the one with the smallest
// residual) so downstream projections see every direction, not just one.
struct SpectrumEntry {
  double lambda = 0.0;
  std::vector<double> vec;
  double residual = 0.0;
  PairSource source = PairSource::shifted_power;
  int cluster_size = 0;
  std::vector<std::vector<double>> directions;
};

struct SpectrumReport {
  int order = 0;
  int dim = 0;
  std::vector<SpectrumEntry> entries;  // lambda descending
  double z_spectral_radius = 0.0;
  bool heuristic = false;  // true when the enumeration is not provably complete
  double observed_max_abs_value = 0.0;  // max |T w^m| seen at any iterate
  long long trials_total = 0;
  long long trials_converged = 0;
  long long shift_doublings = 0;
  double wall_time_ms = 0.0;
  SolverConfig config;  // the configuration the report was produced with
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

inline double eig_residual(const SymTensor& t, double lambda, const std::vector<double>& w) {
  auto g = contract_m1(t, w);
  double s = 0.0;
  for (size_t i = 0; i < g.size(); ++i) {
    double d = g[i] - lambda * w[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Shift large enough to make the power map monotone in typical cases:
// m * max|orbit value| * dim^{(m-2)/2}. Not a proven bound for every tensor,
// which is why the solver doubles it on observed failure.
inline double auto_shift(const SymTensor& t) {
  double a = t.order() * t.max_abs_orbit() *
             std::pow(static_cast<double>(t.dim()), (t.order() - 2) / 2.0);
  return a > 0.0 ? a : 1.0;
}

// One step of the shifted power map: normalize(T w^{m-1} + alpha w).
// Meaningful only for order >= 3 (order 2 is solved exactly elsewhere).
inline std::vector<double> shifted_power_step(const SymTensor& t, const std::vector<double>& w,
                                              double alpha) {
  if (t.order() < 3)
    throw std::invalid_argument("shifted_power_step: requires order >= 3");
  auto g = contract_m1(t, w);
  for (size_t i = 0; i < g.size(); ++i) g[i] += alpha * w[i];
  double nrm = norm2(g);
  if (nrm < 1e-150)
    throw std::domain_error("shifted_power_step: step collapsed to zero; shift too small");
  for (auto& x : g) x /= nrm;
  return g;
}

inline SymTensor negate(const SymTensor& t) {
  std::map<MultiIndex, double> vals;
  for (const auto& [k, v] : t.orbits()) vals.emplace(k, -v);
  return SymTensor(t.order(), t.dim(), std::move(vals));
}

namespace detail {

struct TrialResult {
  bool converged = false;
  bool shift_too_small = false;
  Eigenpair pair;
};

// Shifted power ascent from one start. Values T w^m must be non-decreasing
// along the iteration when the shift is adequate; a decrease or a collapsed
// step reports shift_too_small so the caller can double the shift and retry.
inline TrialResult run_trial(const SymTensor& t, std::vector<double> w, double alpha,
                             const SolverConfig& cfg, double& observed_max) {
  double lam_prev = 0.0;
  bool have_prev = false;
  for (int it = 0; it < cfg.max_iter; ++it) {
    auto g = contract_m1(t, w);
    double lam = dot(g, w);  // equals T w^m on the unit sphere
    observed_max = std::max(observed_max, std::abs(lam));
    double res = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
      double d = g[i] - lam * w[i];
      res += d * d;
    }
    res = std::sqrt(res);
    if (have_prev) {
      if (std::abs(lam - lam_prev) < cfg.tol / 10.0 && res < cfg.tol) {
        return {true, false, Eigenpair{lam, std::move(w), res, PairSource::shifted_power}};
      }
      if (lam < lam_prev - 1e-12 * (1.0 + std::abs(lam_prev))) {
        return {false, true, {}};
      }
    }
    lam_prev = lam;
    have_prev = true;
    for (size_t i = 0; i < g.size(); ++i) g[i] += alpha * w[i];
    double nrm = norm2(g);
    if (nrm < 1e-150) return {false, true, {}};
    for (size_t i = 0; i < g.size(); ++i) w[i] = g[i] / nrm;
  }
  return {};  // budget exhausted without convergence
}

inline TrialResult run_trial_adaptive(const SymTensor& t, const std::vector<double>& start,
                                      double alpha0, const SolverConfig& cfg,
                                      double& observed_max, long long& doublings) {
  double alpha = alpha0;
  const int max_attempts = (cfg.shift_mode == ShiftMode::automatic) ? 7 : 1;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto r = run_trial(t, start, alpha, cfg, observed_max);
    if (r.converged || !r.shift_too_small) return r;
    alpha *= 2.0;
    ++doublings;
  }
  return {};
}

// Gaussian elimination with partial pivoting; a and b are consumed. Returns
// false on a (numerically) singular system.
inline bool solve_linear(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-14) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    double s = b[col];
    for (int c = col + 1; c < n; ++c) s -= a[col][c] * b[c];
    b[col] = s / a[col][col];
  }
  return true;
}

// Damped Newton iteration on the stationarity system
//   F(w, lambda) = (T w^{m-1} - lambda w, (w'w - 1)/2)
// with Jacobian [[(m-1) M(w) - lambda I, -w], [w', 0]], M(w) being the
// (m-2)-fold contraction matrix. The power map's stable fixed points are
// exactly the local extrema of T w^m on the sphere, so it cannot reach
// saddle-type eigenpairs (these exist once dim > 2); Newton converges to any
// regular stationary point and fills that gap.
inline TrialResult newton_trial(const SymTensor& t, std::vector<double> w,
                                const SolverConfig& cfg, double& observed_max) {
  const int n = t.dim();
  const int m = t.order();
  auto g = contract_m1(t, w);
  double lam = dot(g, w);
  auto fnorm = [n](const std::vector<double>& w_, double lam_,
                   const std::vector<double>& g_) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = g_[static_cast<size_t>(i)] - lam_ * w_[static_cast<size_t>(i)];
      s += d * d;
    }
    double c = (dot(w_, w_) - 1.0) / 2.0;
    return std::sqrt(s + c * c);
  };
  double f = fnorm(w, lam, g);
  const int iter_cap = std::min(cfg.max_iter, 60);
  for (int it = 0; it < iter_cap && f >= cfg.tol * 0.5; ++it) {
    auto mat = contract_to_matrix(t, w);
    std::vector<std::vector<double>> a(static_cast<size_t>(n) + 1,
                                       std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
    std::vector<double> rhs(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            (m - 1) * mat[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
      a[static_cast<size_t>(i)][static_cast<size_t>(i)] -= lam;
      a[static_cast<size_t>(i)][static_cast<size_t>(n)] = -w[static_cast<size_t>(i)];
      a[static_cast<size_t>(n)][static_cast<size_t>(i)] = w[static_cast<size_t>(i)];
      rhs[static_cast<size_t>(i)] =
          -(g[static_cast<size_t>(i)] - lam * w[static_cast<size_t>(i)]);
    }
    rhs[static_cast<size_t>(n)] = -(dot(w, w) - 1.0) / 2.0;
    if (!solve_linear(a, rhs)) return {};

    bool accepted = false;
    double step = 1.0;
    for (int half = 0; half < 12 && !accepted; ++half) {
      std::vector<double> w2(w);
      for (int i = 0; i < n; ++i) w2[static_cast<size_t>(i)] += step * rhs[static_cast<size_t>(i)];
      double lam2 = lam + step * rhs[static_cast<size_t>(n)];
      auto g2 = contract_m1(t, w2);
      double f2 = fnorm(w2, lam2, g2);
      if (f2 < f) {
        w = std::move(w2);
        lam = lam2;
        g = std::move(g2);
        f = f2;
        accepted = true;
      } else {
        step /= 2.0;
      }
    }
    if (!accepted) return {};
    double nw = norm2(w);
    if (!(nw > 0.2 && nw < 5.0)) return {};  // wandered far off the sphere
  }
  if (!(f < cfg.tol * 0.5)) return {};
  double nw = norm2(w);
  if (nw < 1e-8) return {};
  for (auto& x : w) x /= nw;
  double lam_final = apply_m(t, w);
  double res = eig_residual(t, lam_final, w);
  if (!(res < cfg.tol)) return {};
  observed_max = std::max(observed_max, std::abs(lam_final));
  return {true, false, Eigenpair{lam_final, std::move(w), res, PairSource::shifted_power}};
}

}  // namespace detail

// Collapse raw eigenpairs into distinct (lambda, direction) rows. Lambdas are
// clustered within dedup_tol of the cluster anchor; within a cluster, vectors
// are merged when they agree to dedup_tol in inner product, up to sign for
// even order (w and -w carry the same eigenvalue there; for odd order they
// do not, so signs are kept). Representatives take the member with the
// smallest residual; even-order representatives get a canonical sign (largest
// magnitude component positive).
inline std::vector<SpectrumEntry> dedup_pairs(std::vector<Eigenpair> pairs, int order,
                                              double dedup_tol) {
  std::sort(pairs.begin(), pairs.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return a.vec > b.vec;
  });
  const bool fold_sign = (order % 2 == 0);
  std::vector<SpectrumEntry> entries;
  size_t i = 0;
  while (i < pairs.size()) {
    const double anchor = pairs[i].lambda;
    size_t j = i;
    while (j < pairs.size() && anchor - pairs[j].lambda <= dedup_tol) ++j;

    struct Direction {
      std::vector<double> vec;
      double lambda;
      double residual;
      PairSource source;
    };
    std::vector<Direction> dirs;
    for (size_t k = i; k < j; ++k) {
      Eigenpair& p = pairs[k];
      bool matched = false;
      for (auto& d : dirs) {
        double dp = dot(p.vec, d.vec);
        if (fold_sign) dp = std::abs(dp);
        if (1.0 - dp < dedup_tol) {
          if (p.residual < d.residual) {
            d.vec = p.vec;
            d.lambda = p.lambda;
            d.residual = p.residual;
            d.source = p.source;
          }
          matched = true;
          break;
        }
      }
      if (!matched) dirs.push_back({std::move(p.vec), p.lambda, p.residual, p.source});
    }

    size_t best = 0;
    for (size_t k = 1; k < dirs.size(); ++k) {
      if (dirs[k].residual < dirs[best].residual) best = k;
    }
    auto canonical_sign = [&](std::vector<double> v) {
      if (fold_sign) {
        size_t arg = 0;
        for (size_t k = 1; k < v.size(); ++k) {
          if (std::abs(v[k]) > std::abs(v[arg])) arg = k;
        }
        if (v[arg] < 0.0) {
          for (auto& x : v) x = -x;
        }
      }
      return v;
    };
    SpectrumEntry entry;
    entry.lambda = dirs[best].lambda;
    entry.vec = canonical_sign(dirs[best].vec);
    entry.residual = dirs[best].residual;
    entry.source = dirs[best].source;
    entry.cluster_size = static_cast<int>(dirs.size());
    entry.directions.reserve(dirs.size());
    for (auto& d : dirs) entry.directions.push_back(canonical_sign(std::move(d.vec)));
    entries.push_back(std::move(entry));
    i = j;
  }
  return entries;
}

// Exact dense eigensolve of an order-2 tensor viewed as a symmetric matrix.
// Returns all n eigenpairs, eigenvalues descending, with verified residuals.
inline std::vector<Eigenpair> eig_sym_matrix(const SymTensor& t) {
  if (t.order() != 2)
    throw std::invalid_argument("eig_sym_matrix: tensor order must be 2");
  const int n = t.dim();
  auto dense = contract_to_matrix(t, std::vector<double>(static_cast<size_t>(n), 0.0));
  auto eig = jacobi_eigensymmetric(std::move(dense), n);
  std::vector<Eigenpair> pairs;
  pairs.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto& v = eig.vectors[static_cast<size_t>(k)];
    double lam = eig.values[static_cast<size_t>(k)];
    pairs.push_back({lam, v, eig_residual(t, lam, v), PairSource::jacobi});
  }
  return pairs;
}

// Full Z-spectrum search. Order 2 is solved exactly by Jacobi; higher orders
// run shifted power iteration from warm starts (eigenvectors of the slice
// matrix T(.,.,w0,...,w0) at the diagonal direction) plus seeded random
// starts, each in both the ascending and the descending direction, followed
// by a seeded Newton pass that also reaches saddle-type stationary points,
// then mirror-complete for odd order ((lambda, w) <-> (-lambda, -w)) and
// dedup.
inline SpectrumReport zeig_multistart(const SymTensor& t, SolverConfig cfg = {}) {
  cfg.validate();
  if (t.is_zero())
    throw std::invalid_argument("zeig_multistart: tensor is identically zero");
  const auto t_start = std::chrono::steady_clock::now();
  SpectrumReport rep;
  rep.order = t.order();
  rep.dim = t.dim();
  rep.config = cfg;
  const int n = t.dim();

  if (t.order() == 2) {
    auto pairs = eig_sym_matrix(t);
    for (const auto& p : pairs)
      rep.observed_max_abs_value = std::max(rep.observed_max_abs_value, std::abs(p.lambda));
    rep.trials_total = rep.trials_converged = static_cast<long long>(pairs.size());
    rep.entries = dedup_pairs(std::move(pairs), 2, cfg.dedup_tol);
    rep.heuristic = false;
  } else {
    std::vector<std::vector<double>> starts;
    std::vector<double> w0(static_cast<size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    auto slice = contract_to_matrix(t, w0);
    auto warm = jacobi_eigensymmetric(std::move(slice), n);
    for (auto& v : warm.vectors) starts.push_back(std::move(v));
    const int want = cfg.num_starts > 0 ? cfg.num_starts : 100 * n;
    for (int i = static_cast<int>(starts.size()); i < want; ++i) {
      Rng r(cfg.seed + static_cast<std::uint64_t>(i));
      starts.push_back(r.unit_vector(n));
    }

    const SymTensor t_neg = negate(t);
    const double alpha =
        (cfg.shift_mode == ShiftMode::automatic) ? auto_shift(t) : cfg.shift_value;

    std::vector<Eigenpair> pairs;
    for (const auto& s : starts) {
      for (int descend = 0; descend < 2; ++descend) {
        const SymTensor& tt = descend ? t_neg : t;
        auto r = detail::run_trial_adaptive(tt, s, alpha, cfg, rep.observed_max_abs_value,
                                            rep.shift_doublings);
        ++rep.trials_total;
        if (!r.converged) continue;
        ++rep.trials_converged;
        Eigenpair p = std::move(r.pair);
        if (descend) {
          p.lambda = -p.lambda;
          p.residual = eig_residual(t, p.lambda, p.vec);
        }
        pairs.push_back(std::move(p));
      }
    }

    // Stationarity refinement: power ascent/descent reaches only the local
    // extrema of T w^m on the sphere, so saddle-type eigenpairs (present once
    // dim > 2) would be missed. A seeded Newton pass on the eigenpair system
    // converges to any regular stationary point and recovers them.
    const std::uint64_t newton_slot_base = std::uint64_t{1} << 20;
    for (int i = 0; i < want; ++i) {
      Rng r(cfg.seed + newton_slot_base + static_cast<std::uint64_t>(i));
      auto res = detail::newton_trial(t, r.unit_vector(n), cfg, rep.observed_max_abs_value);
      ++rep.trials_total;
      if (!res.converged) continue;
      ++rep.trials_converged;
      pairs.push_back(std::move(res.pair));
    }

    if (pairs.empty())
      throw solver_budget_error("zeig_multistart: no trial converged within the budget");

    if (t.order() % 2 == 1) {
      const size_t found = pairs.size();
      for (size_t k = 0; k < found; ++k) {
        Eigenpair q = pairs[k];
        q.lambda = -q.lambda;
        for (auto& x : q.vec) x = -x;
        q.residual = eig_residual(t, q.lambda, q.vec);
        pairs.push_back(std::move(q));
      }
    }
    rep.entries = dedup_pairs(std::move(pairs), t.order(), cfg.dedup_tol);
    rep.heuristic = true;
  }

  for (const auto& e : rep.entries)
    rep.z_spectral_radius = std::max(rep.z_spectral_radius, std::abs(e.lambda));
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return rep;
}

struct RadiusResult {
  double radius = 0.0;
  SpectrumReport evidence;
};

inline RadiusResult z_spectral_radius(const SymTensor& t, SolverConfig cfg = {}) {
  auto rep = zeig_multistart(t, cfg);
  double r = rep.z_spectral_radius;
  return {r, std::move(rep)};
}

}  // namespace qzspec
