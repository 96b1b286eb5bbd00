#include "detlab/numerics/matrix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "detlab/numerics/errors.hpp"

namespace detlab {

using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, cplx fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw ParameterError("ComplexMatrix: entry count does not match dimensions");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw ParameterError("trace: matrix is not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_row_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> x) const {
  if (x.size() != cols_) throw ParameterError("apply: dimension mismatch");
  std::vector<cplx> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx s = 0.0;
    const cplx* row = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

namespace {

Eigen::Map<const RowMajor> view(const ComplexMatrix& m) {
  return Eigen::Map<const RowMajor>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                    static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const RowMajor& e) {
  ComplexMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  Eigen::Map<RowMajor>(m.data(), e.rows(), e.cols()) = e;
  return m;
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ParameterError(std::string(op) + ": dimension mismatch");
}

}  // namespace

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw ParameterError("matrix product: dimension mismatch");
  return from_eigen(view(a) * view(b));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "matrix sum");
  std::vector<cplx> e(a.entries());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "matrix difference");
  std::vector<cplx> e(a.entries());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.entries()[k];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

struct LuFactorization::Impl {
  Eigen::PartialPivLU<RowMajor> lu;
};

LuFactorization::LuFactorization(const ComplexMatrix& m) {
  if (!m.square()) throw ParameterError("LU factorization: matrix is not square");
  n_ = m.rows();
  row_scale_ = m.max_row_norm();
  impl_ = std::make_unique<Impl>();
  if (n_ == 0) {
    min_pivot_ = 0.0;
    return;
  }
  impl_->lu.compute(view(m));
  const auto& packed = impl_->lu.matrixLU();
  min_pivot_ = std::abs(packed(0, 0));
  for (Eigen::Index k = 1; k < packed.rows(); ++k) min_pivot_ = std::min(min_pivot_, std::abs(packed(k, k)));
}

LuFactorization::~LuFactorization() = default;
LuFactorization::LuFactorization(LuFactorization&&) noexcept = default;
LuFactorization& LuFactorization::operator=(LuFactorization&&) noexcept = default;

cplx LuFactorization::determinant() const {
  if (n_ == 0) return 1.0;
  // product of pivots accumulated in index order, then the permutation sign
  const auto& packed = impl_->lu.matrixLU();
  cplx d = 1.0;
  for (Eigen::Index k = 0; k < packed.rows(); ++k) d *= packed(k, k);
  return impl_->lu.permutationP().determinant() < 0 ? -d : d;
}

std::vector<cplx> LuFactorization::solve(std::span<const cplx> rhs, double threshold) const {
  if (rhs.size() != n_) throw ParameterError("solve: right-hand side has wrong length");
  if (singular(threshold))
    throw SingularityError("solve: pivot " + std::to_string(min_pivot_) + " below threshold " +
                               std::to_string(threshold * row_scale_),
                           min_pivot_, threshold * row_scale_);
  if (n_ == 0) return {};
  Eigen::Map<const Eigen::VectorXcd> b(rhs.data(), static_cast<Eigen::Index>(n_));
  Eigen::VectorXcd x = impl_->lu.solve(b);
  std::vector<cplx> out(x.data(), x.data() + x.size());
  for (const cplx& v : out) ensure_finite(v, "solve");
  return out;
}

cplx det_lu(const ComplexMatrix& m) {
  if (!m.square()) throw ParameterError("det_lu: matrix is not square");
  return ensure_finite(LuFactorization(m).determinant(), "det_lu");
}

cplx det2_from_matrix(const ComplexMatrix& a) {
  if (!a.square()) throw ParameterError("det2_from_matrix: matrix is not square");
  ComplexMatrix ia = a;
  for (std::size_t i = 0; i < a.rows(); ++i) ia(i, i) += 1.0;
  return ensure_finite(det_lu(ia) * std::exp(-a.trace()), "det2_from_matrix");
}

std::vector<cplx> solve_linear(const ComplexMatrix& m, std::span<const cplx> rhs, double pivot_threshold) {
  if (!m.square()) throw ParameterError("solve_linear: matrix is not square");
  return LuFactorization(m).solve(rhs, pivot_threshold);
}

}  // namespace detlab
