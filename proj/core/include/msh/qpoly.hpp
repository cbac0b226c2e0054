#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace msh {

/// Laurent polynomial in one variable q with integer coefficients. Used for
/// Kazhdan-Lusztig polynomials and for graded ranks (q marks a degree-2 shift).
class QPoly {
 public:
  QPoly() = default;
  static QPoly constant(std::int64_t c) { return monomial(0, c); }
  static QPoly monomial(int exponent, std::int64_t c = 1);

  const std::map<int, std::int64_t>& coefficients() const { return coeffs_; }
  std::int64_t coefficient(int exponent) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Highest exponent; -1 for the zero polynomial.
  int degree() const;
  int low_degree() const;
  std::int64_t eval_at_one() const;

  void add(int exponent, std::int64_t c);
  QPoly& operator+=(const QPoly& rhs);
  QPoly& operator-=(const QPoly& rhs);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly shifted(int by) const;

  friend bool operator==(const QPoly& a, const QPoly& b) = default;
  std::string str() const;

 private:
  std::map<int, std::int64_t> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const QPoly& p);

}  // namespace msh
