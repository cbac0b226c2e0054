#pragma once

// Modules over the structure algebra, stored as graded lattices inside the
// vertexwise sum of free S-modules.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msh/sheaf.hpp"

namespace msh {

/// A homogeneous element: parts[x] lists its coordinates in ambient(x), each a
/// homogeneous polynomial of degree `degree - ambient(x).shifts()[i]`.
struct LatticeElement {
  int degree = 0;
  std::vector<std::vector<Polynomial>> parts;
};

class ZLattice {
 public:
  /// Throws std::invalid_argument when sizes or degrees of the generators do
  /// not fit the ambient modules.
  ZLattice(std::shared_ptr<const MomentGraph> graph, std::vector<GradedFree> ambient,
           std::vector<LatticeElement> generators, int degree_cap);

  /// Generators checked to be sections of `sheaf` (ambient = stalks).
  /// Throws std::invalid_argument("not a section ...") otherwise.
  static ZLattice from_sections(const Sheaf& sheaf, std::vector<LatticeElement> generators, int degree_cap);

  const MomentGraph& graph() const { return *graph_; }
  const std::shared_ptr<const MomentGraph>& graph_ptr() const { return graph_; }
  const GradedFree& ambient(std::size_t x) const { return ambient_[x]; }
  const std::vector<GradedFree>& ambients() const { return ambient_; }
  std::vector<std::size_t> ambient_ranks() const;
  /// All ambient modules as one free module, vertex blocks in vertex order.
  const GradedFree& total_ambient() const { return total_; }

  const std::vector<LatticeElement>& generators() const { return generators_; }
  std::vector<int> generator_degrees() const;
  int degree_cap() const { return cap_; }
  /// Lowest degree in which the lattice or its ambient can be nonzero.
  int min_degree() const;

  /// Set by constructions that stop at the cap while new generators still appear.
  bool saturated = true;
  std::vector<std::string> notes;

  /// Spanning set of the degree-d piece, in total_ambient() coordinates.
  std::vector<Vector> piece(int degree) const;
  /// Basis of the degree-d piece.
  std::vector<Vector> piece_basis(int degree) const;
  /// Dimensions of the pieces in degrees lo, lo + 2, ..., hi.
  std::vector<std::size_t> dims(int lo, int hi) const;

  Vector encode(const LatticeElement& g) const;
  LatticeElement decode(const Vector& v, int degree) const;

 private:
  std::shared_ptr<const MomentGraph> graph_;
  std::vector<GradedFree> ambient_;
  GradedFree total_;
  std::vector<LatticeElement> generators_;
  std::vector<Vector> encoded_;
  int cap_;
};

/// Same lattice with minimal generators (degreewise complements of S_2 times
/// the previous degree) up to the degree cap.
ZLattice minimized(const ZLattice& m);

/// Vertexwise direct sum of two lattices on the same graph.
ZLattice direct_sum(const ZLattice& a, const ZLattice& b);

/// Graded rank: sum of q^(degree/2) over the generators.
QPoly generator_rank(const ZLattice& m);

/// Minimal generators span freely: piece dimensions up to the cap equal those
/// of a free module on the generator degrees. Expects minimal generators.
bool is_graded_free(const ZLattice& m);

struct GammaPolicy {
  int degree_cap = -1;  // -1: largest stalk shift + 2 * (length spread) + window
  int saturation_window = 4;
  Direction direction = Direction::Up;  // order along which sections are lifted
};

int gamma_degree_cap(const Sheaf& sheaf, const GammaPolicy& policy);

/// Global sections with minimal generators; ambient = stalks.
ZLattice gamma(const Sheaf& sheaf, const GammaPolicy& policy = {});

/// Stalks e_x M, edge modules from the push-out of e_x M <- M(E) -> e_y M.
/// Throws std::domain_error with the dimension table when a stalk or an edge
/// module is not graded free (over S, resp. S/label) up to `cap`
/// (default: the lattice's cap).
Sheaf localize(const ZLattice& m, std::optional<int> cap = std::nullopt);

/// M^I: image of M in the ambient coordinates of I. Marks a note when the
/// subset is not open for `d`.
ZLattice project_open(const ZLattice& m, const SubgraphSelector& sel, Direction d);
/// M_I: elements of M vanishing outside I, with minimal generators.
ZLattice intersect_open(const ZLattice& m, const SubgraphSelector& sel, int saturation_window = 4);

struct VermaFlagReport {
  bool direct = true;     // M^I graded free for every open I
  bool criterion = true;  // L(M) flabby and its costalks free
  std::size_t open_sets = 0;
  std::vector<std::string> failures;

  bool agree() const { return direct == criterion; }
};

/// The criterion half on its own: flabby up to `cap` and every costalk (edges
/// towards smaller vertices of the working order) free.
bool verma_flag_criterion(const Sheaf& sheaf, Direction d, int cap, std::vector<std::string>* failures = nullptr);

VermaFlagReport verma_flag_check(const ZLattice& m, Direction d);

/// Hom_S(M, S) on the basis dual to the minimal generators, with the ambient
/// coordinates rescaled so that every coordinate is a polynomial. Lives on the
/// order-reversed graph. Throws std::invalid_argument when M is not graded
/// free of full rank.
ZLattice dualize(const ZLattice& m);

struct ShiftMatchReport {
  std::vector<std::string> vertices;
  std::vector<QPoly> a_ranks;  // graded stalk ranks of a
  std::vector<QPoly> b_ranks;  // of b, at the relabelled vertex
  std::optional<int> shift;    // ring degree sigma with a[sigma] = b, when one exists
  std::vector<bool> vertex_match;

  bool matched() const { return shift.has_value(); }
  std::string verdict() const;
};

/// Finds sigma with rank(a, x) * q^(sigma/2) = rank(b, relabel(x)) at every x.
ShiftMatchReport compare_graded(std::vector<std::string> names, std::vector<QPoly> a, std::vector<QPoly> b);
ShiftMatchReport compare_shifted(const Sheaf& a, const Sheaf& b,
                                 const std::optional<std::vector<std::size_t>>& relabel = std::nullopt);

/// Sum of q^(g/2) over the generator degrees g.
QPoly generator_poly(const GradedDims& d);

struct HomComparison {
  GradedDims to_skyscraper;    // Hom(B(x), V(y)), i-th piece = degree i
  GradedDims from_skyscraper;  // Hom(V(w0 y), B'(w0 x))
  std::optional<int> shift;    // ring degree sigma with generators(to) shifted by sigma = generators(from)
  std::size_t total_to = 0;
  std::size_t total_from = 0;

  bool matched() const { return shift.has_value(); }
};

/// Generator degrees of the two Hom spaces, compared up to one uniform shift.
/// `up` is B-up(x), `down` is B-down(w0 x); y and w0y index their vertices.
HomComparison verify_hom_correspondence(const Sheaf& up, std::size_t y, const Sheaf& down, std::size_t w0y, int cap);

}  // namespace msh
