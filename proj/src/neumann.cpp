#include "cxgeo/neumann.hpp"

#include "cxgeo/errors.hpp"

namespace cxgeo {

double neumann_contraction_norm(const MetricSample& sample, const LinkTensor& link) {
  Eigen::LLT<Matrix> llt(sample.gR);
  if (llt.info() != Eigen::Success) throw SingularMetric("gR factorization failed");
  const Matrix iteration = llt.solve(sample.gI * link.eps);
  return iteration.size() ? Eigen::JacobiSVD<Matrix>(iteration).singularValues()(0) : 0.0;
}

NeumannResult neumann_solve(const MetricSample& sample, const LinkTensor& link, const Vector& rhs,
                            int max_terms, double tol) {
  if (rhs.size() != sample.dim()) throw DimensionMismatch("right-hand side does not match metric dimension");
  if (max_terms < 1 || !(tol > 0.0)) throw DomainError("neumann_solve needs max_terms >= 1 and tol > 0");
  const double norm = neumann_contraction_norm(sample, link);
  if (!(norm < 1.0)) throw NotContractive("iteration norm estimate " + std::to_string(norm) + " >= 1");

  Eigen::LLT<Matrix> llt(sample.gR);
  const Matrix coupling = sample.gI * link.eps;
  Vector x = llt.solve(rhs);
  for (int terms = 1; terms <= max_terms; ++terms) {
    const Vector next = llt.solve(rhs - coupling * x);
    const double change = max_abs(next - x);
    x = next;
    if (change < tol) return {x, terms, norm};
  }
  throw NoConvergence("no convergence within " + std::to_string(max_terms) + " terms");
}

}  // namespace cxgeo
