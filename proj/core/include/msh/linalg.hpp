#pragma once

// Dense exact linear algebra over the rationals.

#include <cstddef>
#include <optional>
#include <vector>

#include "msh/rational.hpp"

namespace msh {

using Vector = std::vector<Rational>;

bool is_zero_vector(const Vector& v);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static RationalMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Vector apply(const Vector& x) const;
  RationalMatrix transposed() const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

  /// Gauss-Jordan elimination in place; returns the pivot columns in increasing order.
  std::vector<std::size_t> rref_in_place();
  RationalMatrix rref() const;
  std::size_t rank() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Null space basis: one vector per free column (in increasing column order),
/// with a 1 in that column and zeros in the other free columns.
std::vector<Vector> kernel_basis(const RationalMatrix& m);

/// Selects vectors of `span` (in order) that extend a basis of `sub` to a basis
/// of span(span). Throws std::invalid_argument("not a subspace") when some
/// vector of `sub` lies outside span(span).
std::vector<Vector> image_complement(const std::vector<Vector>& span, const std::vector<Vector>& sub,
                                     std::size_t dim);

/// Incrementally built subspace kept in reduced echelon form.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : dim_(ambient_dim) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }

  /// Residue of v after elimination against the basis; zero iff v is contained.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// Adds v; returns false (and leaves the subspace unchanged) if v was already contained.
  bool insert(const Vector& v);

 private:
  std::size_t dim_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Solves A x = b for many right-hand sides against one factorization.
class LinearSolver {
 public:
  LinearSolver() = default;
  explicit LinearSolver(const RationalMatrix& a);

  std::size_t rank() const { return pivots_.size(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  /// Particular solution with all free variables zero, or nullopt if b is not in the image.
  std::optional<Vector> solve(const Vector& b) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> pivots_;
  RationalMatrix transform_;  // T with T * A = rref(A)
};

}  // namespace msh
