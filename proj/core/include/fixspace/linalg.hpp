#pragma once

// Dense linear algebra over a FieldCtx. Vectors are rows; a matrix acts on
// the right (v -> v A), which matches the right action of permutations.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fixspace/ff.hpp"

namespace fixspace {

using Vec = std::vector<FieldElem>;

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(const FieldCtx& F, std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  FieldElem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::span<const FieldElem> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::span<FieldElem> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> a_;
};

namespace mat {

Matrix mul(const FieldCtx& F, const Matrix& a, const Matrix& b);
Matrix add(const FieldCtx& F, const Matrix& a, const Matrix& b);
Matrix sub(const FieldCtx& F, const Matrix& a, const Matrix& b);
Matrix scale(const FieldCtx& F, const Matrix& a, FieldElem s);
Matrix transpose(const Matrix& a);
// Throws NotInvertible.
Matrix inverse(const FieldCtx& F, const Matrix& a);
Matrix pow(const FieldCtx& F, const Matrix& a, std::uint64_t e);
// Kronecker product; index pair (i, j) maps to i * b.rows() + j.
Matrix kron(const FieldCtx& F, const Matrix& a, const Matrix& b);
// Columns of the blocks placed side by side (same row count).
Matrix hconcat(const std::vector<Matrix>& blocks);
Matrix frobenius(const FieldCtx& F, const Matrix& a, unsigned i);
bool is_identity(const FieldCtx& F, const Matrix& a);
Vec vec_mul(const FieldCtx& F, std::span<const FieldElem> v, const Matrix& a);

std::size_t rank(const FieldCtx& F, Matrix a);
// Basis (in reduced echelon form) of {v : v A = 0}.
std::vector<Vec> left_nullspace(const FieldCtx& F, const Matrix& a);
// Characteristic polynomial det(xI - A) via Hessenberg reduction.
Poly char_poly(const FieldCtx& F, const Matrix& a);
// f(A) for a polynomial f.
Matrix eval_poly(const FieldCtx& F, const Poly& f, const Matrix& a);
// Determinant by elimination (used as a test oracle and in sanity checks).
FieldElem det(const FieldCtx& F, Matrix a);

} // namespace mat

// A subspace of F^n held in reduced row echelon form.
class Subspace {
public:
  Subspace(FieldCtx F, std::size_t ambient) : F_(std::move(F)), n_(ambient) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  // Reduces v against the basis; returns true if it enlarged the space.
  bool add(Vec v);
  bool contains(Vec v) const;
  // v with pivot columns cleared (canonical coset representative).
  Vec reduce(Vec v) const;
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  // Columns that are not pivots, increasing.
  std::vector<std::size_t> free_columns() const;
  // Coordinates of a vector known to lie in the space, w.r.t. basis().
  Vec coordinates(const Vec& v) const;
  Matrix basis_matrix() const { return Matrix::from_rows(rows_); }

private:
  FieldCtx F_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Smallest subspace containing `seeds` and closed under right
// multiplication by every matrix in `gens`.
Subspace spin(const FieldCtx& F, const std::vector<Vec>& seeds,
              const std::vector<Matrix>& gens);

} // namespace fixspace
