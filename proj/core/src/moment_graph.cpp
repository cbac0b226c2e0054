#include "msh/moment_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace msh {

std::string to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "up" || text == "Up" || text == "UP") return Direction::Up;
  if (text == "down" || text == "Down" || text == "DOWN") return Direction::Down;
  return std::nullopt;
}

MomentGraph::MomentGraph(int variable_count, std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges,
                         std::vector<std::vector<bool>> leq, Direction direction)
    : nvars_(variable_count),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      leq_(std::move(leq)),
      direction_(direction) {
  const std::size_t n = vertices_.size();
  if (leq_.size() != n) throw std::invalid_argument("order matrix size does not match vertex count");
  for (std::size_t a = 0; a < n; ++a) {
    if (leq_[a].size() != n) throw std::invalid_argument("order matrix is not square");
    if (!leq_[a][a]) throw std::invalid_argument("order is not reflexive at " + vertices_[a].name);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq_[a][b] && leq_[b][a])
        throw std::invalid_argument("order is not antisymmetric on " + vertices_[a].name + ", " + vertices_[b].name);
      if (!leq_[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (leq_[b][c] && !leq_[a][c]) throw std::invalid_argument("order is not transitive");
    }

  incident_.assign(n, {});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto& edge = edges_[e];
    if (edge.a > edge.b) std::swap(edge.a, edge.b);
    if (edge.b >= n) throw std::invalid_argument("edge endpoint out of range");
    if (edge.a == edge.b) throw std::invalid_argument("loop at vertex " + vertices_[edge.a].name);
    if (edge.label.variable_count() != nvars_) throw std::invalid_argument("edge label has the wrong number of variables");
    if (!seen.emplace(std::pair{edge.a, edge.b}, e).second)
      throw std::invalid_argument("double edge between " + vertices_[edge.a].name + " and " + vertices_[edge.b].name);
    if (!leq_[edge.a][edge.b] && !leq_[edge.b][edge.a])
      throw std::invalid_argument("edge endpoints " + vertices_[edge.a].name + " and " + vertices_[edge.b].name +
                                  " are incomparable");
    incident_[edge.a].push_back(e);
    incident_[edge.b].push_back(e);
    reducers_.push_back(std::make_shared<const LinearReducer>(edge.label));
  }
}

std::optional<std::size_t> MomentGraph::find_vertex(std::string_view name) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].name == name) return v;
  return std::nullopt;
}

std::optional<std::size_t> MomentGraph::find_edge(std::size_t a, std::size_t b) const {
  for (std::size_t e : incident_[a])
    if (other_end(e, a) == b) return e;
  return std::nullopt;
}

std::vector<std::size_t> MomentGraph::linear_extension(Direction d, int variant) const {
  const std::size_t n = vertices_.size();
  std::vector<std::size_t> below(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u)
      if (leq(u, v, d)) ++below[v];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (below[a] != below[b]) return below[a] < below[b];
    return variant == 0 ? a < b : a > b;
  });
  return order;
}

std::vector<std::pair<std::size_t, std::size_t>> MomentGraph::cover_relations() const {
  const std::size_t n = vertices_.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq_[a][b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (c != a && c != b && leq_[a][c] && leq_[c][b]) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

MomentGraph reverse_order(const MomentGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a][b] = g.leq(b, a);
  std::vector<GraphVertex> vertices;
  for (std::size_t v = 0; v < n; ++v) vertices.push_back(g.vertex(v));
  return MomentGraph(g.variable_count(), std::move(vertices), g.edges(), std::move(leq), opposite(g.direction()));
}

GkmReport gkm_check(const MomentGraph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        if (g.edge(inc[i]).label.proportional_to(g.edge(inc[j]).label)) return {false, v, {inc[i], inc[j]}};
  }
  return {};
}

SubgraphSelector SubgraphSelector::induced(const MomentGraph& g, std::vector<bool> vertices) {
  if (vertices.size() != g.vertex_count()) throw std::invalid_argument("vertex mask has the wrong size");
  SubgraphSelector s;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (vertices[g.edge(e).a] && vertices[g.edge(e).b]) s.edges.push_back(e);
  s.vertices = std::move(vertices);
  return s;
}

SubgraphSelector SubgraphSelector::full(const MomentGraph& g) {
  return induced(g, std::vector<bool>(g.vertex_count(), true));
}

std::size_t SubgraphSelector::size() const {
  return static_cast<std::size_t>(std::count(vertices.begin(), vertices.end(), true));
}

bool is_open(const MomentGraph& g, const SubgraphSelector& sel, Direction d) {
  const std::size_t n = g.vertex_count();
  if (sel.vertices.size() != n) return false;
  for (std::size_t v = 0; v < n; ++v) {
    if (!sel.vertices[v]) continue;
    for (std::size_t u = 0; u < n; ++u)
      if (g.leq(u, v, d) && !sel.vertices[u]) return false;
  }
  return SubgraphSelector::induced(g, sel.vertices).edges == sel.edges;
}

OpenFamily open_subgraphs(const MomentGraph& g, Direction d, std::size_t budget) {
  const std::size_t n = g.vertex_count();
  OpenFamily fam;
  auto down_closed = [&](const std::vector<bool>& mask) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!mask[v]) continue;
      for (std::size_t u = 0; u < n; ++u)
        if (g.leq(u, v, d) && !mask[u]) return false;
    }
    return true;
  };
  if (n <= kExhaustiveOpenLimit) {
    fam.exhaustive = true;
    fam.method = "exhaustive";
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<bool> mask(n);
      for (std::size_t v = 0; v < n; ++v) mask[v] = (bits >> v) & 1u;
      if (down_closed(mask)) fam.sets.push_back(SubgraphSelector::induced(g, std::move(mask)));
    }
    return fam;
  }
  fam.method = "principal down-sets and pairwise unions, budget " + std::to_string(budget);
  std::vector<std::vector<bool>> seen;
  auto add = [&](std::vector<bool> mask) {
    if (fam.sets.size() >= budget) return;
    if (std::find(seen.begin(), seen.end(), mask) != seen.end()) return;
    seen.push_back(mask);
    fam.sets.push_back(SubgraphSelector::induced(g, std::move(mask)));
  };
  add(std::vector<bool>(n, false));
  std::vector<std::vector<bool>> principal(n, std::vector<bool>(n));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u) principal[v][u] = g.leq(u, v, d);
  for (std::size_t v = 0; v < n; ++v) add(principal[v]);
  for (std::size_t v = 0; v < n; ++v) {
    auto strict = principal[v];
    strict[v] = false;
    add(strict);
  }
  add(std::vector<bool>(n, true));
  for (std::size_t a = 0; a < n && fam.sets.size() < budget; ++a)
    for (std::size_t b = a + 1; b < n && fam.sets.size() < budget; ++b) {
      std::vector<bool> mask(n);
      for (std::size_t u = 0; u < n; ++u) mask[u] = principal[a][u] || principal[b][u];
      add(std::move(mask));
    }
  return fam;
}

namespace {

LinearForm coroot_label(const PositiveRoot& root) {
  std::vector<Rational> c;
  for (int v : root.coroot) c.emplace_back(v);
  return LinearForm(std::move(c)).primitive();
}

}  // namespace

std::shared_ptr<const Block> build_block(const RootSystem& rs, const Weight& lambda, std::size_t cap) {
  if (static_cast<int>(lambda.size()) != rs.rank())
    throw std::invalid_argument("weight " + format_weight(lambda) + " does not have rank " + std::to_string(rs.rank()) +
                                " coordinates");
  CoxeterGroup group(rs, integral_positive_roots(rs, lambda), cap);
  Orbit orbit = orbit_and_stabilizer(group, lambda);
  const std::size_t n = orbit.representatives.size();

  std::map<Weight, std::size_t> by_weight;
  std::vector<GraphVertex> vertices;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = orbit.representatives[v];
    vertices.push_back({group.name(r), orbit.weights[v], group.length(r), r});
    by_weight.emplace(orbit.weights[v], v);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> root_of_pair;
  const Weight rho = rs.rho();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t beta : group.positive_roots()) {
      Weight shifted = orbit.weights[x];
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += rho[i];
      Weight nu = rs.reflect(shifted, beta);
      for (std::size_t i = 0; i < nu.size(); ++i) nu[i] -= rho[i];
      const auto it = by_weight.find(nu);
      if (it == by_weight.end() || it->second == x) continue;
      const std::pair key{std::min(x, it->second), std::max(x, it->second)};
      const auto [pos, inserted] = root_of_pair.emplace(key, beta);
      if (!inserted && pos->second != beta) {
        std::ostringstream msg;
        msg << "double edge: vertices " << vertices[key.first].name << " " << format_weight(orbit.weights[key.first])
            << " and " << vertices[key.second].name << " " << format_weight(orbit.weights[key.second])
            << " are linked by two positive roots";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  std::vector<GraphEdge> edges;
  for (const auto& [pair, beta] : root_of_pair)
    edges.push_back({pair.first, pair.second, coroot_label(rs.positive_roots()[beta])});

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a][b] = weight_leq(rs, orbit.weights[a], orbit.weights[b]);

  MomentGraph graph(rs.rank(), std::move(vertices), std::move(edges), std::move(leq));
  std::vector<std::size_t> w0_map(n);
  const std::size_t w0 = group.longest();
  for (std::size_t x = 0; x < n; ++x) {
    const Weight target = group.dot(w0, orbit.weights[x]);
    const auto it = by_weight.find(target);
    if (it == by_weight.end()) throw std::logic_error("w0 image is outside the orbit");
    w0_map[x] = it->second;
  }
  return std::make_shared<const Block>(
      Block{rs, lambda, std::move(group), std::move(orbit), std::move(graph), std::move(w0_map)});
}

std::vector<std::size_t> w0_relabel(const Block& block) { return block.w0_map; }

std::vector<std::pair<std::size_t, std::size_t>> bruhat_weight_divergence(const Block& block) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& g = block.graph;
  for (std::size_t a = 0; a < g.vertex_count(); ++a)
    for (std::size_t b = 0; b < g.vertex_count(); ++b) {
      const bool bruhat = block.group.bruhat_leq(g.vertex(a).representative, g.vertex(b).representative);
      if (bruhat != g.leq(a, b)) out.emplace_back(a, b);
    }
  return out;
}

std::string vertex_set_name(const MomentGraph& g, const std::vector<bool>& mask) {
  std::string s = "{";
  bool first = true;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (!mask[v]) continue;
    if (!first) s += ", ";
    s += g.vertex(v).name;
    first = false;
  }
  return s + "}";
}

}  // namespace msh
