#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace cxgeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Dense n x n x n array, index order (i, j, k) row-major.
template <typename T>
class BasicTensor3 {
 public:
  BasicTensor3() = default;
  explicit BasicTensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, T{}) {}

  int dim() const { return n_; }

  T& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  // Copy of the (j, k) slice at fixed first index.
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> slice(int i) const {
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> m(n_, n_);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) m(j, k) = (*this)(i, j, k);
    return m;
  }

  void set_slice(int i, const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& m) {
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) (*this)(i, j, k) = m(j, k);
  }

  double max_abs() const {
    double out = 0.0;
    for (const auto& v : data_) out = std::max(out, static_cast<double>(std::abs(v)));
    return out;
  }

  BasicTensor3& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend BasicTensor3 operator-(const BasicTensor3& a, const BasicTensor3& b) {
    BasicTensor3 out(a.n_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }

  int n_ = 0;
  std::vector<T> data_;
};

using Tensor3 = BasicTensor3<double>;
using ComplexTensor3 = BasicTensor3<Complex>;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

// Eigen's rcond() estimate reports 1 for an exactly zero pivot, so those are
// caught here first.
template <typename Lu>
double reciprocal_condition(const Lu& lu) {
  const auto& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double pivot = std::abs(packed(i, i));
    if (!(pivot > 0.0) || !std::isfinite(pivot)) return 0.0;
  }
  return lu.rcond();
}

}  // namespace cxgeo
