#pragma once

// Kazhdan-Lusztig polynomials P_{x,w} of a finite Coxeter group.

#include <cstdint>
#include <vector>

#include "msh/coxeter.hpp"
#include "msh/qpoly.hpp"

namespace msh {

class KLTable {
 public:
  /// Computes all P_{x,w} by the canonical-basis recursion along right descents.
  explicit KLTable(const CoxeterGroup& group);

  std::size_t size() const { return n_; }
  /// P_{x,w}; zero unless x <= w.
  QPoly polynomial(std::size_t x, std::size_t w) const;
  /// Leading coefficient of degree (l(w) - l(x) - 1)/2, zero if that degree is not integral.
  std::int64_t mu(std::size_t x, std::size_t w) const;
  std::int64_t eval_at_one(std::size_t x, std::size_t w) const;

 private:
  const std::vector<std::int64_t>& coeffs(std::size_t x, std::size_t w) const {
    return table_[x * n_ + w];
  }

  std::size_t n_ = 0;
  std::vector<int> length_;
  std::vector<std::vector<std::int64_t>> table_;
};

/// Sum of coefficients of P_{x,w}.
inline std::int64_t kl_eval_at_one(const KLTable& table, std::size_t x, std::size_t w) {
  return table.eval_at_one(x, w);
}

}  // namespace msh
