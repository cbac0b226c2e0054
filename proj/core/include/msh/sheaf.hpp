#pragma once

// Sheaves on moment graphs: stalks, edge modules and restriction maps.
//
// A stalk is a graded free S-module and an edge module a graded free
// S/(label)-module. The restriction from vertex v to edge E is a matrix whose
// entry (i, j) is a polynomial, reduced modulo the label, of degree
// s_j - t_i, where s_j is the degree of the j-th stalk generator and t_i the
// degree of the i-th edge generator.

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "msh/graded.hpp"
#include "msh/moment_graph.hpp"

namespace msh {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Largest ring degree any section or kernel computation will accept.
inline constexpr int kGlobalDegreeCap = 40;

/// Throws std::out_of_range naming kGlobalDegreeCap when `degree` exceeds it.
void check_degree_cap(int degree);

/// The degree-`degree` part of the map src -> dst given by `m`
/// (rows index dst generators, columns src generators).
RationalMatrix poly_matrix_at(const PolyMatrix& m, const GradedFree& src, const GradedFree& dst, int degree);

class Sheaf {
 public:
  /// restrictions[e][0] starts at edge(e).a, restrictions[e][1] at edge(e).b.
  /// Throws std::invalid_argument when sizes, reductions or degrees are inconsistent.
  Sheaf(std::shared_ptr<const MomentGraph> graph, std::vector<std::vector<int>> stalk_shifts,
        std::vector<std::vector<int>> edge_shifts, std::vector<std::array<PolyMatrix, 2>> restrictions);

  const MomentGraph& graph() const { return *graph_; }
  const std::shared_ptr<const MomentGraph>& graph_ptr() const { return graph_; }

  const GradedFree& stalk(std::size_t v) const { return stalks_[v]; }
  const GradedFree& edge_module(std::size_t e) const { return edge_modules_[e]; }
  const PolyMatrix& restriction(std::size_t v, std::size_t e) const;
  const std::vector<std::array<PolyMatrix, 2>>& restrictions() const { return restrictions_; }

  /// Degree-d matrix of the restriction from v to E (cached).
  const RationalMatrix& restriction_matrix(std::size_t v, std::size_t e, int degree) const;

  /// Same data on another graph with the same shape (used for relabelled comparisons).
  Sheaf with_graph(std::shared_ptr<const MomentGraph> graph) const;

 private:
  std::shared_ptr<const MomentGraph> graph_;
  std::vector<GradedFree> stalks_;
  std::vector<GradedFree> edge_modules_;
  std::vector<std::array<PolyMatrix, 2>> restrictions_;
  struct Cache {
    std::mutex mutex;
    std::map<std::tuple<std::size_t, std::size_t, int>, std::unique_ptr<RationalMatrix>> matrices;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

Sheaf structure_sheaf(std::shared_ptr<const MomentGraph> graph);
Sheaf skyscraper(std::shared_ptr<const MomentGraph> graph, std::size_t x, int shift = 0);

/// A homogeneous family of stalk elements: parts[v] holds coordinates in
/// stalk(v) at `degree` (empty for vertices outside the family's vertex set).
struct Section {
  int degree = 0;
  std::vector<Vector> parts;
};

/// Basis of the degree-d sections over a subgraph (explicit kernel computation).
struct SectionSpace {
  int degree = 0;
  std::vector<std::size_t> offsets;  // start of each vertex block in the concatenated coordinates
  std::size_t total_dim = 0;
  std::vector<Vector> basis;

  Section element(std::size_t k, const Sheaf& sheaf, const std::vector<bool>& vertices) const;
};

SectionSpace sections(const Sheaf& sheaf, const SubgraphSelector& sel, int degree);
/// dims of sections in degrees 0, 2, ..., max_degree.
std::vector<std::size_t> section_dims(const Sheaf& sheaf, const SubgraphSelector& sel, int max_degree);

struct StructureAlgebra {
  std::vector<std::size_t> dims;  // degrees 0, 2, ..., max_degree
  std::vector<SectionSpace> pieces;
};

StructureAlgebra structure_algebra(std::shared_ptr<const MomentGraph> graph, int max_degree);

/// Builds generators of the section module over a growing vertex set, one
/// vertex at a time. When vertex v is added, every existing generator must
/// extend to v (its boundary values must lie in the image of the restriction
/// from v); the kernel of the restriction from v contributes new generators.
class SectionLifter {
 public:
  struct Constraint {
    std::size_t neighbour;   // an already added vertex
    const GradedFree* edge;  // the edge module
    const PolyMatrix* from_neighbour;
    const PolyMatrix* from_vertex;
  };

  SectionLifter(std::size_t vertex_count, int degree_cap);

  /// Returns false (leaving the lifter unchanged) when some generator fails to extend.
  bool add_vertex(std::size_t v, const GradedFree& stalk, const std::vector<Constraint>& constraints);

  /// Boundary value of a generator on the given constraints, in the sum of the edge modules.
  using MatrixCache = std::map<std::pair<std::size_t, int>, RationalMatrix>;
  Vector boundary(const Section& g, const std::vector<Constraint>& constraints,
                  const std::vector<const GradedFree*>& stalks, MatrixCache* cache = nullptr) const;

  const std::vector<Section>& generators() const { return generators_; }
  const std::vector<bool>& vertices() const { return added_; }
  int degree_cap() const { return cap_; }
  std::size_t failed_vertex() const { return failed_vertex_; }
  int failed_degree() const { return failed_degree_; }

 private:
  std::vector<bool> added_;
  std::vector<const GradedFree*> stalks_;
  std::vector<Section> generators_;
  int cap_;
  std::size_t failed_vertex_ = 0;
  int failed_degree_ = -1;
};

/// Constraints of vertex v against the vertices already marked in `added`.
std::vector<SectionLifter::Constraint> lifter_constraints(const Sheaf& sheaf, std::size_t v,
                                                          const std::vector<bool>& added);

struct SectionModule {
  std::vector<bool> vertices;
  std::vector<Section> generators;  // minimal generators up to the cap
  int degree_cap = 0;
  std::string method;
};

/// Minimal generators of Gamma over a vertex set that is open for `d`, up to
/// `cap`. Uses vertex-by-vertex lifting along a linear extension and falls back
/// to explicit degreewise kernels when a lift fails.
SectionModule section_module(const Sheaf& sheaf, const std::vector<bool>& vertices, Direction d, int cap);

/// Span of the degree-d parts of the S-module generated by `gens` in the given
/// vertices' stalks (concatenated in vertex order over `vertices`).
std::vector<Vector> generated_piece(const Sheaf& sheaf, const std::vector<Section>& gens,
                                    const std::vector<bool>& vertices, int degree);

struct FlabbyReport {
  bool ok = true;
  int degree_cap = 0;
  std::string method;
  std::vector<std::string> failures;
};

enum class FlabbyMethod { Auto, AllOpenSets, Vertexwise };

/// Surjectivity of Gamma(G) -> Gamma(H) for open H up to the cap. Auto checks
/// every open set on graphs with at most kExhaustiveOpenLimit vertices and
/// otherwise uses the equivalent vertexwise criterion: sections over {< v}
/// extend to v for every v.
FlabbyReport is_flabby_up_to(const Sheaf& sheaf, Direction d, int cap, FlabbyMethod method = FlabbyMethod::Auto);

struct FProjectiveReport {
  FlabbyReport flabby;
  bool generated = true;
  bool upward_iso = true;
  int degree_cap = 0;
  std::vector<std::string> failures;

  bool ok() const { return flabby.ok && generated && upward_iso; }
};

FProjectiveReport check_f_projective(const Sheaf& sheaf, Direction d, int cap);

QPoly stalk_rank_poly(const Sheaf& sheaf, std::size_t x);

enum class CostalkMode { Up, Down, All };

struct GradedDims {
  std::vector<std::size_t> dims;          // degrees 0, 2, ..., cap (shifted by min_degree below)
  int min_degree = 0;                     // degree of dims[0]
  std::vector<int> generator_degrees;     // minimal generators found up to the cap
  bool free = true;                       // dims agree with a free module on those generators

  std::size_t dim(int degree) const;
};

/// Kernel of the stalk at x into the edge modules of the chosen incident edges
/// (Up: edges to larger vertices of the stored order, Down: to smaller ones).
GradedDims costalk(const Sheaf& sheaf, std::size_t x, CostalkMode mode, int cap);

/// Degree-i morphisms into the skyscraper at y: the graded dual of stalk y.
/// Reported as a free module with generators in degrees -s_j.
GradedDims hom_to_skyscraper(const Sheaf& sheaf, std::size_t y, int min_degree, int max_degree);

/// Degree-i morphisms from the skyscraper at y (generator in degree 0), solved
/// as sections over the star of y that vanish away from y.
GradedDims hom_from_skyscraper(const Sheaf& sheaf, std::size_t y, int cap);

}  // namespace msh
