#pragma once

// Coordinates for graded free modules over S or over S/(l).

#include <memory>
#include <vector>

#include "msh/linalg.hpp"
#include "msh/polynomial.hpp"
#include "msh/qpoly.hpp"

namespace msh {

/// Direct sum of cyclic modules S e_j or (S/(l_j)) e_j with e_j in degree
/// shifts[j]. A degree-d element is a coordinate vector: for each generator j in
/// order, its coefficients on degree_slice(d - shifts[j]), where the slice
/// excludes the pivot of l_j when generator j carries a modulus.
class GradedFree {
 public:
  using Modulus = std::shared_ptr<const LinearReducer>;

  GradedFree() = default;
  /// Every generator gets the same modulus (none: free over S).
  GradedFree(int variable_count, std::vector<int> shifts, Modulus modulus = nullptr);
  GradedFree(int variable_count, std::vector<int> shifts, std::vector<Modulus> moduli);
  static GradedFree direct_sum(int variable_count, const std::vector<GradedFree>& parts);

  int variable_count() const { return nvars_; }
  const std::vector<int>& shifts() const { return shifts_; }
  std::size_t rank() const { return shifts_.size(); }
  const Modulus& modulus(std::size_t generator) const { return moduli_[generator]; }
  const std::vector<Modulus>& moduli() const { return moduli_; }
  /// Pivot shared by all generators, or -1 when there is none or they differ.
  int excluded_variable() const { return common_excluded_; }

  const DegreeSlice& slice(std::size_t generator, int degree) const;
  std::size_t dim(int degree) const;
  std::size_t offset(std::size_t generator, int degree) const;

  /// Components must be homogeneous of degree d - shifts[j]; with a modulus they
  /// are reduced first.
  Vector encode(const std::vector<Polynomial>& components, int degree) const;
  std::vector<Polynomial> decode(const Vector& coords, int degree) const;

  /// Multiplication by the variable x_i, degree d -> d + 2.
  Vector multiply_variable(const Vector& coords, int degree, int variable) const;
  /// Multiplication by a monomial, degree d -> d + deg(m).
  Vector multiply_monomial(const Vector& coords, int degree, Monomial m) const;

  /// Coordinate vector of u * e_j (u a monomial) in degree shifts[j] + deg(u).
  Vector basis_element(std::size_t generator, Monomial u) const;

  /// Graded rank: sum of q^(shift/2).
  QPoly graded_rank() const;

 private:
  int nvars_ = 1;
  std::vector<int> shifts_;
  std::vector<Modulus> moduli_;
  int common_excluded_ = -1;
};

/// Hilbert function of a free S-module (or S/(l)-module when excluded >= 0)
/// with the given generator degrees.
std::size_t free_dimension(int variable_count, const std::vector<int>& shifts, int degree,
                           int excluded_variable = -1);

/// Minimal generator extraction for a graded submodule of a free module.
///
/// Feed the degree-d piece of the submodule (as spanning vectors) in increasing
/// even degrees; each call returns the vectors chosen as new minimal generators
/// in that degree, i.e. a complement of S_2 * (piece in degree d-2).
class MinimalGenerators {
 public:
  explicit MinimalGenerators(GradedFree ambient) : ambient_(std::move(ambient)) {}

  const GradedFree& ambient() const { return ambient_; }

  /// Adds degree `degree`; candidates span the submodule in that degree together
  /// with S_2 times the previous degree. Returns the new generators.
  std::vector<Vector> add_degree(int degree, const std::vector<Vector>& candidates);

  /// Basis of the submodule in the most recently added degree.
  const std::vector<Vector>& current_basis() const { return current_; }
  int current_degree() const { return degree_; }

 private:
  GradedFree ambient_;
  int degree_ = -2;
  std::vector<Vector> current_;
};

}  // namespace msh
