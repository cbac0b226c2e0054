#pragma once

// Finite root systems, Weyl groups and their reflection subgroups.
//
// Weights are written in the basis of fundamental weights, so the pairing with
// the i-th simple coroot is the i-th coordinate. Roots are stored in simple-root
// coordinates and coroots in simple-coroot coordinates; the latter are the
// variables of S.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msh/linalg.hpp"
#include "msh/rational.hpp"

namespace msh {

using IntVec = std::vector<int>;
using IntMatrix = std::vector<IntVec>;
using Weight = std::vector<Rational>;

inline constexpr std::size_t kDefaultGroupCap = 1152;

enum class CartanType { A, B, C, D, G };

std::optional<CartanType> parse_cartan_type(std::string_view text);
char cartan_letter(CartanType type);

struct PositiveRoot {
  IntVec root;    // simple-root coordinates
  IntVec coroot;  // simple-coroot coordinates
  IntVec weight;  // the root in fundamental-weight coordinates
};

class RootSystem {
 public:
  /// Supported: A1-A4, B2-B4, C2-C4, D3-D4, G2. Throws std::invalid_argument otherwise.
  static RootSystem build(CartanType type, int rank);

  CartanType type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const;
  /// cartan_matrix()[i][j] = <alpha_j, coroot_i>.
  const IntMatrix& cartan_matrix() const { return cartan_; }
  /// Positive roots; the simple roots come first, in order.
  const std::vector<PositiveRoot>& positive_roots() const { return positive_; }
  Weight rho() const;

  /// <lambda, coroot of the given positive root>.
  Rational pair(const Weight& lambda, std::size_t root) const;
  /// s_beta(lambda) = lambda - <lambda, beta^vee> beta.
  Weight reflect(const Weight& lambda, std::size_t root) const;
  /// Index of the positive root equal to +-v (v in weight coordinates) with its sign.
  std::optional<std::pair<std::size_t, int>> find_root(const IntVec& weight_coords) const;
  /// Coordinates of a weight in the basis of simple roots.
  Vector simple_root_coordinates(const Weight& lambda) const;

 private:
  CartanType type_ = CartanType::A;
  int rank_ = 0;
  IntMatrix cartan_;
  std::vector<PositiveRoot> positive_;
  std::map<IntVec, std::pair<std::size_t, int>> by_weight_;
  RationalMatrix cartan_inverse_;
};

/// <lambda, beta^vee> in Z for all roots beta in the returned list of positive
/// root indices.
std::vector<std::size_t> integral_positive_roots(const RootSystem& rs, const Weight& lambda);

/// Positive roots of a subsystem that are not sums of two others in it.
std::vector<std::size_t> subsystem_base(const RootSystem& rs, const std::vector<std::size_t>& positive);

struct WeylElement {
  IntMatrix action;       // on fundamental-weight coordinates
  std::vector<int> word;  // lexicographically smallest reduced word, 0-based generator indices
  int length = 0;
};

/// Reflection group generated by s_beta for the base of a positive subsystem.
/// Elements are listed by (length, reduced word); index 0 is the identity.
class CoxeterGroup {
 public:
  /// Throws std::length_error naming the cap when the group is larger than `cap`.
  CoxeterGroup(const RootSystem& rs, std::vector<std::size_t> positive_subsystem,
               std::size_t cap = kDefaultGroupCap);
  static CoxeterGroup weyl(const RootSystem& rs, std::size_t cap = kDefaultGroupCap);

  const RootSystem& root_system() const { return rs_; }
  std::size_t size() const { return elements_.size(); }
  const WeylElement& element(std::size_t i) const { return elements_[i]; }
  int length(std::size_t i) const { return elements_[i].length; }
  std::size_t generator_count() const { return generators_.size(); }
  /// Root index (in the ambient root system) of the k-th simple reflection.
  std::size_t generator_root(std::size_t k) const { return generators_[k]; }
  const std::vector<std::size_t>& positive_roots() const { return positive_; }

  /// Name from the reduced word with 1-based generator indices: "e", "s1s2".
  std::string name(std::size_t i) const;
  std::optional<std::size_t> find(std::string_view name) const;
  std::optional<std::size_t> find(const IntMatrix& action) const;

  std::size_t right_multiply(std::size_t w, std::size_t s) const { return right_[w][s]; }
  std::size_t left_multiply(std::size_t s, std::size_t w) const { return left_[w][s]; }
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  std::size_t longest() const { return longest_; }
  bool bruhat_leq(std::size_t x, std::size_t y) const { return bruhat_[x][y]; }
  /// Number of positive subsystem roots sent to negative roots.
  int inversion_count(std::size_t w) const;

  Weight act(std::size_t w, const Weight& lambda) const;
  /// w(lambda + rho) - rho.
  Weight dot(std::size_t w, const Weight& lambda) const;

 private:
  RootSystem rs_;
  std::vector<std::size_t> positive_;
  std::vector<std::size_t> generators_;
  std::vector<WeylElement> elements_;
  std::map<IntMatrix, std::size_t> index_;
  std::vector<std::vector<std::size_t>> right_;
  std::vector<std::vector<std::size_t>> left_;
  std::vector<std::vector<bool>> bruhat_;
  std::size_t longest_ = 0;
};

/// nu - mu is a nonnegative integer combination of simple roots.
bool weight_leq(const RootSystem& rs, const Weight& mu, const Weight& nu);

/// <lambda + rho, beta^vee> <= 0 for every integral positive root beta.
bool is_antidominant(const RootSystem& rs, const Weight& lambda);

/// The antidominant weight in the dot-orbit of lambda under its integral Weyl group.
Weight antidominant_representative(const RootSystem& rs, const Weight& lambda);

struct Orbit {
  std::vector<std::size_t> representatives;  // minimal coset representatives in W_lambda
  std::vector<Weight> weights;               // representative . lambda
  std::vector<std::size_t> stabilizer;       // elements of W' = Stab(lambda)
};

/// Throws std::invalid_argument (naming the antidominant representative) when
/// lambda is not antidominant.
Orbit orbit_and_stabilizer(const CoxeterGroup& integral_group, const Weight& lambda);

std::string format_weight(const Weight& w);
/// Parses comma-separated rationals.
Weight parse_weight(std::string_view text);

}  // namespace msh
