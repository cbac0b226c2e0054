#pragma once

// Graded polynomial arithmetic over the rationals.
//
// S = Q[h1, ..., hn] with every variable in degree 2. Degrees reported by this
// header are always ring degrees (twice the total exponent).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msh/rational.hpp"

namespace msh {

inline constexpr int kMaxVariables = 4;

class PolyRing {
 public:
  /// Ring with variables named h1..hn.
  explicit PolyRing(int variable_count);
  PolyRing(int variable_count, std::vector<std::string> names);

  int variable_count() const { return variable_count_; }
  const std::vector<std::string>& variable_names() const { return names_; }
  static constexpr int grading_unit() { return 2; }

  friend bool operator==(const PolyRing& a, const PolyRing& b) = default;

 private:
  int variable_count_;
  std::vector<std::string> names_;
};

/// Exponent vector with at most kMaxVariables entries, packed so that integer
/// order on the key is lexicographic order on exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial from_exponents(std::span<const int> exponents);
  static Monomial variable(int index);

  int exponent(int index) const {
    return static_cast<int>((packed_ >> (8 * (kMaxVariables - 1 - index))) & 0xFFu);
  }
  int total_exponent() const;
  int degree() const { return 2 * total_exponent(); }
  std::vector<int> exponents(int variable_count) const;

  Monomial operator*(Monomial rhs) const;
  bool divides(Monomial other) const;
  /// Requires divides(other).
  Monomial quotient(Monomial other) const;
  Monomial without(int index) const;

  std::uint32_t key() const { return packed_; }
  friend auto operator<=>(Monomial, Monomial) = default;

 private:
  explicit Monomial(std::uint32_t packed) : packed_(packed) {}
  std::uint32_t packed_ = 0;
};

/// Orders monomials so that x1^2 comes before x1*x2 before x2^2.
struct LexDescending {
  bool operator()(Monomial a, Monomial b) const { return a.key() > b.key(); }
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, LexDescending>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT
  static Polynomial term(Monomial m, const Rational& coefficient = Rational(1));
  static Polynomial variable(int index);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Rational coefficient(Monomial m) const;
  bool contains_variable(int index) const;

  /// True for the zero polynomial and for polynomials whose terms share one degree.
  bool is_homogeneous() const;
  /// Ring degree of the leading term; nullopt for zero.
  std::optional<int> degree() const;

  void add_term(Monomial m, const Rational& coefficient);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  Polynomial times(Monomial m) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  std::string str(const PolyRing& ring) const;
  std::string str() const;

 private:
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Nonzero homogeneous degree-2 element of S.
class LinearForm {
 public:
  explicit LinearForm(std::vector<Rational> coefficients);
  static LinearForm from_ints(std::initializer_list<std::int64_t> coefficients);

  const std::vector<Rational>& coefficients() const { return coefficients_; }
  int variable_count() const { return static_cast<int>(coefficients_.size()); }
  /// Smallest-index variable with a nonzero coefficient.
  int pivot() const { return pivot_; }
  Polynomial as_polynomial() const;

  /// Rescaled to a primitive integer vector whose first nonzero entry is positive.
  LinearForm primitive() const;
  bool proportional_to(const LinearForm& other) const;

  friend bool operator==(const LinearForm& a, const LinearForm& b) = default;
  std::string str(const PolyRing& ring) const;

 private:
  std::vector<Rational> coefficients_;
  int pivot_ = 0;
};

/// Monomials of one graded piece of S, or of S/(l) when a pivot variable is
/// excluded. Degree is a ring degree; odd or negative degrees give an empty slice.
class DegreeSlice {
 public:
  DegreeSlice(int variable_count, int degree, int excluded_variable);

  int degree() const { return degree_; }
  int excluded_variable() const { return excluded_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  /// Position of m in the slice, or -1.
  int index_of(Monomial m) const;

 private:
  int degree_;
  int excluded_;
  std::vector<Monomial> monomials_;
};

/// Cached slice lookup. The returned reference stays valid for the lifetime of
/// the process. Thread-safe.
const DegreeSlice& degree_slice(int variable_count, int degree, int excluded_variable = -1);

/// All monomials of ring degree d in lexicographic order. Throws
/// std::invalid_argument for odd or negative d.
std::vector<Monomial> graded_component_basis(const PolyRing& ring, int degree);

/// Canonical reduction modulo a linear form by eliminating its pivot variable.
/// Powers of the substitution are cached, so keep one reducer per label.
class LinearReducer {
 public:
  explicit LinearReducer(LinearForm form);

  const LinearForm& form() const { return form_; }
  int pivot() const { return form_.pivot(); }
  Polynomial reduce(const Polynomial& p) const;

 private:
  const Polynomial& substitution_power(int k) const;

  LinearForm form_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<Polynomial>> powers_;
};

/// Throws std::invalid_argument("zero linear form") when every coefficient is zero.
Polynomial reduce_mod_linear(const Polynomial& p, const std::vector<Rational>& form);
Polynomial reduce_mod_linear(const Polynomial& p, const LinearForm& form);

/// Exact quotient p / l, or nullopt when l does not divide p.
std::optional<Polynomial> divide_by_linear(const Polynomial& p, const LinearForm& form);

/// Exact quotient p / q for any nonzero q, or nullopt when q does not divide p.
std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q);

/// Determinant of a square polynomial matrix (fraction-free elimination).
Polynomial determinant(std::vector<std::vector<Polynomial>> m);

}  // namespace msh
