#pragma once

// Ordered moment graphs and the block graph of a dot-orbit.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msh/coxeter.hpp"
#include "msh/polynomial.hpp"

namespace msh {

/// Up works with the order of the graph, Down with its reverse.
enum class Direction { Up, Down };

inline Direction opposite(Direction d) { return d == Direction::Up ? Direction::Down : Direction::Up; }
std::string to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view text);

struct GraphVertex {
  std::string name;
  Weight weight;
  int length = 0;
  std::size_t representative = 0;  // element index in the integral Weyl group
};

struct GraphEdge {
  std::size_t a = 0;  // a < b as vertex indices
  std::size_t b = 0;
  LinearForm label;
};

class MomentGraph {
 public:
  /// `leq[a][b]` is the partial order. Throws std::invalid_argument on loops,
  /// double edges, incomparable edge endpoints or a relation that is not a
  /// partial order.
  MomentGraph(int variable_count, std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges,
              std::vector<std::vector<bool>> leq, Direction direction = Direction::Up);

  int variable_count() const { return nvars_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const GraphVertex& vertex(std::size_t v) const { return vertices_[v]; }
  const GraphEdge& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }
  std::size_t other_end(std::size_t e, std::size_t v) const {
    return edges_[e].a == v ? edges_[e].b : edges_[e].a;
  }
  std::optional<std::size_t> find_vertex(std::string_view name) const;
  std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const;
  const std::shared_ptr<const LinearReducer>& reducer(std::size_t e) const { return reducers_[e]; }

  Direction direction() const { return direction_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  /// The working order of a direction: <= for Up, >= for Down.
  bool leq(std::size_t a, std::size_t b, Direction d) const {
    return d == Direction::Up ? leq_[a][b] : leq_[b][a];
  }
  bool less(std::size_t a, std::size_t b, Direction d) const { return a != b && leq(a, b, d); }
  const std::vector<std::vector<bool>>& order() const { return leq_; }

  /// Vertices sorted by (size of principal down-set in the working order, index);
  /// variant 1 breaks ties by decreasing index instead.
  std::vector<std::size_t> linear_extension(Direction d, int variant = 0) const;
  /// Pairs (a, b) with a < b covering in the stored order.
  std::vector<std::pair<std::size_t, std::size_t>> cover_relations() const;

 private:
  int nvars_;
  std::vector<GraphVertex> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<bool>> leq_;
  Direction direction_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::shared_ptr<const LinearReducer>> reducers_;
};

/// Same vertices, edges and labels with the order reversed and the direction flag flipped.
MomentGraph reverse_order(const MomentGraph& g);

struct GkmReport {
  bool ok = true;
  std::size_t vertex = 0;
  std::pair<std::size_t, std::size_t> witness{0, 0};  // two edges with proportional labels
};

GkmReport gkm_check(const MomentGraph& g);

struct SubgraphSelector {
  std::vector<bool> vertices;
  std::vector<std::size_t> edges;

  static SubgraphSelector induced(const MomentGraph& g, std::vector<bool> vertices);
  static SubgraphSelector full(const MomentGraph& g);
  std::size_t size() const;
  bool contains(std::size_t v) const { return vertices[v]; }
};

/// Names of the marked vertices, as "{e, s1}".
std::string vertex_set_name(const MomentGraph& g, const std::vector<bool>& mask);

/// Down-closed in the working order of `d`, with exactly the induced edges.
bool is_open(const MomentGraph& g, const SubgraphSelector& sel, Direction d);

struct OpenFamily {
  std::vector<SubgraphSelector> sets;
  bool exhaustive = false;
  std::string method;
};

inline constexpr std::size_t kExhaustiveOpenLimit = 10;
inline constexpr std::size_t kOpenFamilyBudget = 64;

/// All open subsets (increasing bitmask order) when the graph has at most
/// kExhaustiveOpenLimit vertices. Larger graphs get the family: empty set,
/// principal down-sets {<= v}, strict down-sets {< v}, the full set, then
/// unions of two principal down-sets until `budget` sets are collected.
OpenFamily open_subgraphs(const MomentGraph& g, Direction d, std::size_t budget = kOpenFamilyBudget);

/// The block of an antidominant weight: vertices are the dot-orbit of lambda
/// under its integral Weyl group, indexed by minimal coset representatives.
struct Block {
  RootSystem root_system;
  Weight lambda;
  CoxeterGroup group;
  Orbit orbit;
  MomentGraph graph;
  std::vector<std::size_t> w0_map;  // vertex x -> vertex of w0 x

  bool regular() const { return orbit.stabilizer.size() == 1; }
};

/// Throws std::invalid_argument for non-antidominant lambda, and for two
/// distinct positive roots linking the same pair of vertices.
std::shared_ptr<const Block> build_block(const RootSystem& rs, const Weight& lambda,
                                         std::size_t cap = kDefaultGroupCap);

/// Vertex bijection x -> w0 x.
std::vector<std::size_t> w0_relabel(const Block& block);

/// Pairs of vertices on which the weight order and the Bruhat order of the
/// representatives disagree.
std::vector<std::pair<std::size_t, std::size_t>> bruhat_weight_divergence(const Block& block);

}  // namespace msh
