#include "msh/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace msh {

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  RationalMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector RationalMatrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector RationalMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector RationalMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  Vector y(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& a = (*this)(r, c);
      if (!a.is_zero()) y[r] += a * x[c];
    }
  }
  return y;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
  RationalMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) p(i, j) += x * b(k, j);
      }
    }
  }
  return p;
}

namespace {

// Row-reduces rows[0..nrows) on the leading `pivot_cols` columns; every row
// operation is applied to the full row. Returns pivot columns.
std::vector<std::size_t> eliminate(std::vector<Vector>& rows, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < pivot_cols && next < rows.size(); ++c) {
    std::size_t sel = next;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[next], rows[sel]);
    Vector& prow = rows[next];
    if (!prow[c].is_one()) {
      const Rational inv = Rational(1) / prow[c];
      for (auto& x : prow) {
        if (!x.is_zero()) x *= inv;
      }
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || rows[r][c].is_zero()) continue;
      const Rational f = rows[r][c];
      Vector& target = rows[r];
      for (std::size_t k = 0; k < prow.size(); ++k) {
        if (!prow[k].is_zero()) target[k] -= f * prow[k];
      }
    }
    pivots.push_back(c);
    ++next;
  }
  return pivots;
}

}  // namespace

std::vector<std::size_t> RationalMatrix::rref_in_place() {
  std::vector<Vector> rows(rows_);
  for (std::size_t r = 0; r < rows_; ++r) rows[r] = row(r);
  auto pivots = eliminate(rows, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = std::move(rows[r][c]);
  }
  return pivots;
}

RationalMatrix RationalMatrix::rref() const {
  RationalMatrix m = *this;
  m.rref_in_place();
  return m;
}

std::size_t RationalMatrix::rank() const {
  RationalMatrix m = *this;
  return m.rref_in_place().size();
}

std::vector<Vector> kernel_basis(const RationalMatrix& m) {
  RationalMatrix r = m;
  const auto pivots = r.rref_in_place();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> image_complement(const std::vector<Vector>& span, const std::vector<Vector>& sub,
                                     std::size_t dim) {
  Subspace whole(dim);
  for (const auto& v : span) whole.insert(v);
  for (const auto& v : sub) {
    if (!whole.contains(v)) throw std::invalid_argument("not a subspace");
  }
  Subspace acc(dim);
  for (const auto& v : sub) acc.insert(v);
  std::vector<Vector> out;
  for (const auto& v : span) {
    if (acc.insert(v)) out.push_back(v);
  }
  return out;
}

Vector Subspace::reduce(Vector v) const {
  if (v.size() != dim_) throw std::invalid_argument("subspace dimension mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (v[p].is_zero()) continue;
    const Rational f = v[p];
    const Vector& b = basis_[i];
    for (std::size_t k = 0; k < dim_; ++k) {
      if (!b[k].is_zero()) v[k] -= f * b[k];
    }
  }
  return v;
}

bool Subspace::contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

bool Subspace::insert(const Vector& v) {
  Vector r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && r[p].is_zero()) ++p;
  if (p == dim_) return false;
  const Rational inv = Rational(1) / r[p];
  for (auto& x : r) {
    if (!x.is_zero()) x *= inv;
  }
  for (auto& b : basis_) {
    if (b[p].is_zero()) continue;
    const Rational f = b[p];
    for (std::size_t k = 0; k < dim_; ++k) {
      if (!r[k].is_zero()) b[k] -= f * r[k];
    }
  }
  basis_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

LinearSolver::LinearSolver(const RationalMatrix& a) : rows_(a.rows()), cols_(a.cols()) {
  std::vector<Vector> rows(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    rows[r] = a.row(r);
    rows[r].resize(cols_ + rows_);
    rows[r][cols_ + r] = 1;
  }
  pivots_ = eliminate(rows, cols_);
  transform_ = RationalMatrix(rows_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < rows_; ++c) transform_(r, c) = rows[r][cols_ + c];
  }
}

std::optional<Vector> LinearSolver::solve(const Vector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("solver right-hand side size mismatch");
  const Vector y = transform_.apply(b);
  for (std::size_t r = pivots_.size(); r < rows_; ++r) {
    if (!y[r].is_zero()) return std::nullopt;
  }
  Vector x(cols_);
  for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = y[i];
  return x;
}

}  // namespace msh
