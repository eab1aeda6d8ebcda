#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "fock_dist.hpp"

namespace test_support {

// Random law on |0>..|n-1> with a random number of zero entries; mass sums to 1.
inline gclone::DiagonalState random_law(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = u(rng) < 0.3 ? 0.0 : -std::log(u(rng) + 1e-300);
    total += x;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : w) x /= total;
  return gclone::DiagonalState(std::move(w), 0.0);
}

inline double max_abs_diff(const gclone::DiagonalState& a, const gclone::DiagonalState& b) {
  double d = 0.0;
  for (std::size_t l = 0; l < std::max(a.size(), b.size()); ++l) d = std::max(d, std::abs(a.at(l) - b.at(l)));
  return d;
}

}  // namespace test_support
