#pragma once

#include "cxgeo/tensor.hpp"

#include <cstdint>
#include <random>

namespace cxgeo {

// Uniform double in [0, 1) taken directly from the 64-bit engine output, so
// sequences do not depend on the standard library's distributions.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

inline Vector uniform_vector(std::mt19937_64& rng, int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(rng, lo, hi);
  return v;
}

}  // namespace cxgeo
