#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "detlab/numerics/types.hpp"

namespace detlab {

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols, cplx fill = cplx{});
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }
  const std::vector<cplx>& entries() const noexcept { return data_; }

  cplx trace() const;
  double frobenius_norm() const;
  // Max over rows of the 1-norm of the row.
  double max_row_norm() const;

  std::vector<cplx> apply(std::span<const cplx> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr double default_pivot_threshold = 1e-13;

// LU factorization with partial pivoting.
class LuFactorization {
 public:
  explicit LuFactorization(const ComplexMatrix& m);
  ~LuFactorization();
  LuFactorization(LuFactorization&&) noexcept;
  LuFactorization& operator=(LuFactorization&&) noexcept;

  std::size_t size() const noexcept { return n_; }
  cplx determinant() const;
  // Smallest |U_kk| and the scale it is compared against.
  double min_pivot() const noexcept { return min_pivot_; }
  double row_scale() const noexcept { return row_scale_; }
  bool singular(double threshold = default_pivot_threshold) const noexcept {
    return min_pivot_ < threshold * row_scale_;
  }

  // Throws SingularityError when singular(threshold).
  std::vector<cplx> solve(std::span<const cplx> rhs, double threshold = default_pivot_threshold) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t n_ = 0;
  double min_pivot_ = 0.0;
  double row_scale_ = 0.0;
};

cplx det_lu(const ComplexMatrix& m);

// det(I + A) exp(-tr A)
cplx det2_from_matrix(const ComplexMatrix& a);

std::vector<cplx> solve_linear(const ComplexMatrix& m, std::span<const cplx> rhs,
                               double pivot_threshold = default_pivot_threshold);

}  // namespace detlab
