#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qzspec/sym_tensor.hpp"
#include "qzspec/zsolve.hpp"

namespace qzspec {

// Independent brute-force eigenpair enumeration for dim 2: sample the
// tangential derivative of f(theta) = T w(theta)^m around the circle, then
// bisect every sign change down to machine width. Complete up to the grid
// resolution, and entirely disjoint from the power-iteration code path.
inline std::vector<Eigenpair> grid_oracle_circle(const SymTensor& t, int grid_points = 100000) {
  if (t.dim() != 2) throw std::invalid_argument("grid_oracle_circle: dim must be 2");
  if (grid_points < 8) throw std::invalid_argument("grid_oracle_circle: grid too coarse");
  const double two_pi = 2.0 * 3.14159265358979323846;
  const int m = t.order();

  auto gval = [&](double theta) {
    std::vector<double> w{std::cos(theta), std::sin(theta)};
    auto g = contract_m1(t, w);
    return m * (-w[1] * g[0] + w[0] * g[1]);
  };

  std::vector<double> gs(static_cast<size_t>(grid_points));
  double gmax = 0.0, fmax = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    double theta = two_pi * k / grid_points;
    gs[static_cast<size_t>(k)] = gval(theta);
    gmax = std::max(gmax, std::abs(gs[static_cast<size_t>(k)]));
    if (k % 64 == 0) {
      std::vector<double> w{std::cos(theta), std::sin(theta)};
      fmax = std::max(fmax, std::abs(apply_m(t, w)));
    }
  }

  std::vector<Eigenpair> pairs;
  auto emit = [&](double theta) {
    std::vector<double> w{std::cos(theta), std::sin(theta)};
    double lam = apply_m(t, w);
    pairs.push_back({lam, w, eig_residual(t, lam, w), PairSource::grid_oracle});
  };

  if (gmax <= 1e-12 * (1.0 + m * fmax)) {
    // f is constant on the circle (isotropic); every direction qualifies.
    emit(0.0);
    return pairs;
  }

  for (int k = 0; k < grid_points; ++k) {
    double ga = gs[static_cast<size_t>(k)];
    double gb = gs[static_cast<size_t>((k + 1) % grid_points)];
    double a = two_pi * k / grid_points;
    double b = two_pi * (k + 1) / grid_points;
    if (ga == 0.0) {
      emit(a);
      continue;
    }
    if (ga * gb < 0.0) {
      for (int it = 0; it < 100 && (b - a) > 1e-15; ++it) {
        double mid = 0.5 * (a + b);
        double gm = gval(mid);
        if (gm == 0.0) {
          a = b = mid;
          break;
        }
        if (ga * gm < 0.0) {
          b = mid;
        } else {
          a = mid;
          ga = gm;
        }
      }
      emit(0.5 * (a + b));
    }
  }
  return pairs;
}

namespace detail {

// Deterministic near-uniform point sets.
inline std::vector<std::vector<double>> fibonacci_sphere(int count) {
  const double golden = 0.6180339887498949;  // frac of the golden ratio
  const double two_pi = 2.0 * 3.14159265358979323846;
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / count;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = two_pi * std::fmod(golden * i, 1.0);
    pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return pts;
}

inline std::vector<std::vector<double>> kronecker_3sphere(int count) {
  // Kronecker sequence in the unit cube mapped to S^3 by the standard
  // (sqrt(1-u) e^{ia}; sqrt(u) e^{ib}) parametrization, which is uniform.
  const double a1 = 0.8191725133961645;  // inverse powers of the plastic constant
  const double a2 = 0.6710436067037893;
  const double a3 = 0.5497004779019703;
  const double two_pi = 2.0 * 3.14159265358979323846;
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<size_t>(count));
  double u1 = 0.5, u2 = 0.5, u3 = 0.5;
  for (int i = 0; i < count; ++i) {
    u1 = std::fmod(u1 + a1, 1.0);
    u2 = std::fmod(u2 + a2, 1.0);
    u3 = std::fmod(u3 + a3, 1.0);
    double r1 = std::sqrt(1.0 - u1);
    double r2 = std::sqrt(u1);
    double a = two_pi * u2, b = two_pi * u3;
    pts.push_back({r1 * std::cos(a), r1 * std::sin(a), r2 * std::cos(b), r2 * std::sin(b)});
  }
  return pts;
}

// Projected gradient ascent of f(w) = T w^m on the sphere with a fixed safe
// step. Returns true when the residual drops below tol. The safe step makes
// every iteration an ascent but converges only linearly with a problem-
// dependent rate, so a stiff case can exhaust the budget while already deep
// inside its basin; those are finished with the damped Newton polisher,
// which is local and quadratic.
inline bool polish_ascent(const SymTensor& t, std::vector<double>& w, double step, int max_it,
                          double tol) {
  const int m = t.order();
  double rn = 0.0;
  for (int it = 0; it < max_it; ++it) {
    auto g = contract_m1(t, w);
    double lam = dot(g, w);
    rn = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
      double d = g[i] - lam * w[i];
      rn += d * d;
    }
    rn = std::sqrt(rn);
    if (rn < tol) return true;
    for (size_t i = 0; i < g.size(); ++i) w[i] += step * m * (g[i] - lam * w[i]);
    double nrm = norm2(w);
    if (nrm < 1e-150) return false;
    for (auto& x : w) x /= nrm;
  }
  if (rn >= 1e-4) return false;
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = 60;
  double observed = 0.0;
  auto res = newton_trial(t, w, cfg, observed);
  if (!res.converged) return false;
  w = res.pair.vec;
  return true;
}

}  // namespace detail

// Heuristically complete enumeration for dim 3 and 4: a deterministic
// near-uniform point cloud, each point polished uphill and downhill.
inline std::vector<Eigenpair> grid_oracle_sphere(const SymTensor& t, int base_points = 0) {
  const int n = t.dim();
  if (n != 3 && n != 4)
    throw std::invalid_argument("grid_oracle_sphere: dim must be 3 or 4");
  if (base_points <= 0) base_points = (n == 3) ? 2000 : 3000;
  auto pts = (n == 3) ? detail::fibonacci_sphere(base_points)
                      : detail::kronecker_3sphere(base_points);

  const int m = t.order();
  const double lip = m * (m - 1) * frobenius_norm(t) + 1.0;
  const double step = 1.0 / lip;
  const SymTensor t_neg = negate(t);

  std::vector<Eigenpair> pairs;
  for (const auto& p : pts) {
    for (int descend = 0; descend < 2; ++descend) {
      const SymTensor& tt = descend ? t_neg : t;
      std::vector<double> w = p;
      if (!detail::polish_ascent(tt, w, step, 3000, 1e-12)) continue;
      double lam = apply_m(t, w);
      pairs.push_back({lam, std::move(w), 0.0, PairSource::grid_oracle});
      pairs.back().residual = eig_residual(t, pairs.back().lambda, pairs.back().vec);
    }
  }

  // Stationarity pass: ascent and descent reach only extremal stationary
  // points, so saddle-type eigenpairs (for a matrix, the interior
  // eigenvalues) would be missed. Seeding the damped Newton polisher from
  // every other point of the same deterministic set recovers them.
  SolverConfig ncfg;
  ncfg.tol = 1e-12;
  ncfg.max_iter = 60;
  double observed = 0.0;
  for (size_t i = 0; i < pts.size(); i += 2) {
    auto res = detail::newton_trial(t, pts[i], ncfg, observed);
    if (!res.converged) continue;
    pairs.push_back(
        {res.pair.lambda, res.pair.vec, res.pair.residual, PairSource::grid_oracle});
  }
  return pairs;
}

// Oracle-backed spectrum report, shaped like the multistart one so the two
// can be compared directly.
inline SpectrumReport zeig_grid_oracle(const SymTensor& t, double dedup_tol = 1e-6,
                                       int points = 0) {
  const auto t_start = std::chrono::steady_clock::now();
  std::vector<Eigenpair> pairs;
  if (t.dim() == 2) {
    pairs = grid_oracle_circle(t, points > 0 ? points : 100000);
  } else {
    pairs = grid_oracle_sphere(t, points);
  }
  SpectrumReport rep;
  rep.order = t.order();
  rep.dim = t.dim();
  rep.config.dedup_tol = dedup_tol;
  rep.config.num_starts = points;
  rep.trials_total = static_cast<long long>(pairs.size());
  rep.trials_converged = rep.trials_total;
  for (const auto& p : pairs)
    rep.observed_max_abs_value = std::max(rep.observed_max_abs_value, std::abs(p.lambda));
  rep.entries = dedup_pairs(std::move(pairs), t.order(), dedup_tol);
  rep.heuristic = (t.dim() > 2);
  for (const auto& e : rep.entries)
    rep.z_spectral_radius = std::max(rep.z_spectral_radius, std::abs(e.lambda));
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return rep;
}

}  // namespace qzspec
