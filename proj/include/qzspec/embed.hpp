#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "qzspec/multi_index.hpp"
#include "qzspec/sym_tensor.hpp"

namespace qzspec {

// Real embedding of a complex symmetric tensor Psi = A + iB over C^n into a
// real symmetric tensor over R^{2n}. With h = number of indices above n in a
// tuple and hat(i) = i or i-n its fold-down, the embedded entry is
//
//   phase_i:      Re(i^h     * Psi_hat)   i.e. +A, -B, -A, +B as h mod 4 = 0..3
//   phase_neg_i:  Re((-i)^h  * Psi_hat)   i.e. +A, +B, -A, -B as h mod 4 = 0..3
//
// phase_neg_i equals phase_i applied to the conjugate tensor and is only
// admitted for order 3, where both produce the same eigenvalue set with
// eigenvectors related by negating the imaginary block.
enum class EmbedVariant { phase_i, phase_neg_i };

inline const char* to_string(EmbedVariant v) {
  return v == EmbedVariant::phase_i ? "phase-i" : "phase-neg-i";
}

namespace detail {

inline SymTensor embed_sign_rule(const ComplexSymTensor& psi, EmbedVariant variant) {
  const int m = psi.order();
  const int n = psi.dim();
  std::map<MultiIndex, double> out;
  for_each_canonical_key(m, 2 * n, [&](const MultiIndex& key) {
    int h = 0;
    MultiIndex hat(key);
    for (auto& i : hat) {
      if (i > n) {
        i -= n;
        ++h;
      }
    }
    std::sort(hat.begin(), hat.end());
    const std::complex<double> v = psi.value(hat);
    double a = v.real(), b = v.imag();
    double entry = 0.0;
    switch (h % 4) {
      case 0: entry = a; break;
      case 1: entry = (variant == EmbedVariant::phase_i) ? -b : b; break;
      case 2: entry = -a; break;
      case 3: entry = (variant == EmbedVariant::phase_i) ? b : -b; break;
    }
    if (entry != 0.0) out.emplace(key, entry);
  });
  return SymTensor(m, 2 * n, std::move(out));
}

}  // namespace detail

// Order-2 embedding: Psi = A + iB maps to the block matrix
// [[A, -B], [-B, -A]], returned as an order-2 SymTensor over R^{2n}.
inline SymTensor embed_matrix(const ComplexSymTensor& psi) {
  if (psi.order() != 2) throw std::invalid_argument("embed_matrix: order must be 2");
  return detail::embed_sign_rule(psi, EmbedVariant::phase_i);
}

// General embedding for order >= 3.
inline SymTensor embed_tensor(const ComplexSymTensor& psi,
                              EmbedVariant variant = EmbedVariant::phase_i) {
  if (psi.order() < 3) throw std::invalid_argument("embed_tensor: order must be >= 3");
  if (variant == EmbedVariant::phase_neg_i && psi.order() != 3)
    throw std::invalid_argument("embed_tensor: phase-neg-i variant is defined for order 3 only");
  return detail::embed_sign_rule(psi, variant);
}

struct Embedding {
  ComplexSymTensor source;
  SymTensor embedded;
  EmbedVariant variant;
  double scale_factor;  // frobenius_norm(embedded) / frobenius_norm(source) = 2^{(m-1)/2}
};

inline Embedding make_embedding(const ComplexSymTensor& psi,
                                EmbedVariant variant = EmbedVariant::phase_i) {
  SymTensor t = (psi.order() == 2) ? embed_matrix(psi) : embed_tensor(psi, variant);
  return Embedding{psi, std::move(t), variant,
                   std::pow(2.0, (psi.order() - 1) / 2.0)};
}

// z = x + iy in C^n maps to (x; y) in R^{2n}; preserves the 2-norm.
inline std::vector<double> lift_vector(const std::vector<std::complex<double>>& z) {
  const size_t n = z.size();
  std::vector<double> w(2 * n);
  for (size_t j = 0; j < n; ++j) {
    w[j] = z[j].real();
    w[n + j] = z[j].imag();
  }
  return w;
}

inline std::vector<std::complex<double>> project_vector(const std::vector<double>& w) {
  if (w.size() % 2 != 0) throw std::invalid_argument("project_vector: odd length");
  const size_t n = w.size() / 2;
  std::vector<std::complex<double>> z(n);
  for (size_t j = 0; j < n; ++j) z[j] = {w[j], w[n + j]};
  return z;
}

// The literal block swap (x; y) -> (y; -x), i.e. the lift of -i * z.
// For order 2 this sends an eigenvector of lambda to one of -lambda; for
// higher even order it lands on an eigenvector of (-1)^{m/2} lambda, and for
// odd order it is not an eigenvector at all. See half_phase_partner for the
// map that pairs the spectrum at every order.
inline std::vector<double> pair_partner(const std::vector<double>& w) {
  if (w.size() % 2 != 0) throw std::invalid_argument("pair_partner: odd length");
  const size_t n = w.size() / 2;
  std::vector<double> out(2 * n);
  for (size_t j = 0; j < n; ++j) {
    out[j] = w[n + j];
    out[n + j] = -w[j];
  }
  return out;
}

// z -> z * e^{i pi / m}, the half step of the discrete phase symmetry.
inline std::vector<std::complex<double>> phase_step(const std::vector<std::complex<double>>& z,
                                                    int m) {
  if (m < 2) throw std::invalid_argument("phase_step: order must be >= 2");
  const std::complex<double> rot = std::polar(1.0, 3.14159265358979323846 / m);
  std::vector<std::complex<double>> out(z.size());
  for (size_t j = 0; j < z.size(); ++j) out[j] = rot * z[j];
  return out;
}

// Embedded form of the phase half step: the image of an eigenvector of
// lambda is an eigenvector of -lambda with identical residual, at any order.
inline std::vector<double> half_phase_partner(const std::vector<double>& w, int m) {
  return lift_vector(phase_step(project_vector(w), m));
}

}  // namespace qzspec
