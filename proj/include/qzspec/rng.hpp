#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace qzspec {

// Deterministic random source. mt19937_64 output is fixed by the C++
// standard, and the mappings to doubles below are hand-rolled so that
// streams are bit-identical across platforms and standard libraries
// (std::uniform_real_distribution and friends are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Box-Muller, one spare cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double phi = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  // Uniform direction on the unit sphere in R^dim.
  std::vector<double> unit_vector(int dim) {
    if (dim < 1) throw std::invalid_argument("unit_vector: dim < 1");
    std::vector<double> v(static_cast<size_t>(dim));
    for (;;) {
      double norm2 = 0.0;
      for (auto& x : v) {
        x = gaussian();
        norm2 += x * x;
      }
      if (norm2 > 1e-24) {
        double inv = 1.0 / std::sqrt(norm2);
        for (auto& x : v) x *= inv;
        return v;
      }
    }
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qzspec
