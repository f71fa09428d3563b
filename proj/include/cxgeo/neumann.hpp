#pragma once

#include "cxgeo/fields.hpp"

namespace cxgeo {

// Spectral norm of gR^{-1} (gI eps), the iteration matrix of the splitting
// h = gR + gI eps used below.
double neumann_contraction_norm(const MetricSample& sample, const LinkTensor& link);

struct NeumannResult {
  Vector solution;
  int terms = 0;  // k of the accepted iterate x_k
  double norm = 0.0;
};

// Solves h a = rhs by x_{k+1} = gR^{-1}(rhs - gI eps x_k), x_0 = gR^{-1} rhs,
// accepting x_k once |x_k - x_{k-1}|_inf < tol. Throws NotContractive when the
// norm is >= 1 and NoConvergence when k would exceed max_terms.
NeumannResult neumann_solve(const MetricSample& sample, const LinkTensor& link, const Vector& rhs,
                            int max_terms = 30, double tol = 1e-12);

}  // namespace cxgeo
