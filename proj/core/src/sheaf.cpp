#include "msh/sheaf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace msh {

void check_degree_cap(int degree) {
  if (degree > kGlobalDegreeCap)
    throw std::out_of_range("degree " + std::to_string(degree) + " exceeds the global degree cap " +
                            std::to_string(kGlobalDegreeCap));
}

RationalMatrix poly_matrix_at(const PolyMatrix& m, const GradedFree& src, const GradedFree& dst, int degree) {
  RationalMatrix out(dst.dim(degree), src.dim(degree));
  std::size_t col = 0;
  for (std::size_t j = 0; j < src.rank(); ++j) {
    const DegreeSlice& sl = src.slice(j, degree);
    for (Monomial u : sl.monomials()) {
      std::vector<Polynomial> comps(dst.rank());
      bool any = false;
      for (std::size_t i = 0; i < dst.rank(); ++i) {
        if (m[i][j].is_zero()) continue;
        comps[i] = m[i][j].times(u);
        any = true;
      }
      if (any) {
        const Vector v = dst.encode(comps, degree);
        for (std::size_t r = 0; r < v.size(); ++r)
          if (!v[r].is_zero()) out(r, col) = v[r];
      }
      ++col;
    }
  }
  return out;
}

namespace {

int min_shift(const GradedFree& f, int fallback) {
  if (f.rank() == 0) return fallback;
  return *std::min_element(f.shifts().begin(), f.shifts().end());
}

int min_stalk_shift(const Sheaf& sheaf) {
  int m = 0;
  for (std::size_t v = 0; v < sheaf.graph().vertex_count(); ++v) m = std::min(m, min_shift(sheaf.stalk(v), 0));
  return m;
}

// Stacked restriction matrices of `v` over a list of edges at one degree.
RationalMatrix stacked(const std::vector<RationalMatrix>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  RationalMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (!b(r, c).is_zero()) out(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return out;
}

std::vector<Vector> unit_vectors(std::size_t n) {
  std::vector<Vector> out(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = Rational(1);
  return out;
}

}  // namespace

Sheaf::Sheaf(std::shared_ptr<const MomentGraph> graph, std::vector<std::vector<int>> stalk_shifts,
             std::vector<std::vector<int>> edge_shifts, std::vector<std::array<PolyMatrix, 2>> restrictions)
    : graph_(std::move(graph)), restrictions_(std::move(restrictions)) {
  const MomentGraph& g = *graph_;
  const int n = g.variable_count();
  if (stalk_shifts.size() != g.vertex_count()) throw std::invalid_argument("one stalk per vertex expected");
  if (edge_shifts.size() != g.edge_count() || restrictions_.size() != g.edge_count())
    throw std::invalid_argument("one edge module and restriction pair per edge expected");
  for (auto& s : stalk_shifts) stalks_.emplace_back(n, std::move(s));
  for (std::size_t e = 0; e < g.edge_count(); ++e) edge_modules_.emplace_back(n, std::move(edge_shifts[e]), g.reducer(e));

  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const GradedFree& em = edge_modules_[e];
    const int pivot = g.edge(e).label.pivot();
    for (int side = 0; side < 2; ++side) {
      const std::size_t v = side == 0 ? g.edge(e).a : g.edge(e).b;
      const GradedFree& st = stalks_[v];
      PolyMatrix& m = restrictions_[e][side];
      if (m.empty() && em.rank() == 0) continue;
      if (m.size() != em.rank()) throw std::invalid_argument("restriction matrix has the wrong number of rows");
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != st.rank()) throw std::invalid_argument("restriction matrix has the wrong number of columns");
        for (std::size_t j = 0; j < st.rank(); ++j) {
          const Polynomial& p = m[i][j];
          if (p.is_zero()) continue;
          if (p.contains_variable(pivot))
            throw std::invalid_argument("restriction entry is not reduced modulo the edge label");
          const int want = st.shifts()[j] - em.shifts()[i];
          if (!p.is_homogeneous() || *p.degree() != want)
            throw std::invalid_argument("restriction entry at " + g.vertex(v).name + " has degree " +
                                        std::to_string(p.degree().value_or(-1)) + ", expected " +
                                        std::to_string(want));
        }
      }
    }
  }
}

const PolyMatrix& Sheaf::restriction(std::size_t v, std::size_t e) const {
  const auto& edge = graph_->edge(e);
  if (edge.a == v) return restrictions_[e][0];
  if (edge.b == v) return restrictions_[e][1];
  throw std::invalid_argument("vertex is not an endpoint of the edge");
}

const RationalMatrix& Sheaf::restriction_matrix(std::size_t v, std::size_t e, int degree) const {
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->matrices[{v, e, degree}];
  if (!slot) {
    const PolyMatrix& m = restriction(v, e);
    const GradedFree& em = edge_modules_[e];
    if (m.empty()) {
      slot = std::make_unique<RationalMatrix>(em.dim(degree), stalks_[v].dim(degree));
    } else {
      slot = std::make_unique<RationalMatrix>(poly_matrix_at(m, stalks_[v], em, degree));
    }
  }
  return *slot;
}

Sheaf Sheaf::with_graph(std::shared_ptr<const MomentGraph> graph) const {
  if (graph->vertex_count() != graph_->vertex_count() || graph->edge_count() != graph_->edge_count())
    throw std::invalid_argument("graphs have different shapes");
  for (std::size_t e = 0; e < graph->edge_count(); ++e)
    if (graph->edge(e).a != graph_->edge(e).a || graph->edge(e).b != graph_->edge(e).b ||
        graph->edge(e).label != graph_->edge(e).label)
      throw std::invalid_argument("graphs have different edges");
  std::vector<std::vector<int>> ss, es;
  for (const auto& s : stalks_) ss.push_back(s.shifts());
  for (const auto& s : edge_modules_) es.push_back(s.shifts());
  return Sheaf(std::move(graph), std::move(ss), std::move(es), restrictions_);
}

Sheaf structure_sheaf(std::shared_ptr<const MomentGraph> graph) {
  const std::size_t n = graph->vertex_count(), m = graph->edge_count();
  std::vector<std::array<PolyMatrix, 2>> r(m, {PolyMatrix{{Polynomial(Rational(1))}}, PolyMatrix{{Polynomial(Rational(1))}}});
  return Sheaf(std::move(graph), std::vector<std::vector<int>>(n, {0}), std::vector<std::vector<int>>(m, {0}),
               std::move(r));
}

Sheaf skyscraper(std::shared_ptr<const MomentGraph> graph, std::size_t x, int shift) {
  const std::size_t n = graph->vertex_count(), m = graph->edge_count();
  if (x >= n) throw std::invalid_argument("vertex out of range");
  std::vector<std::vector<int>> stalks(n);
  stalks[x] = {shift};
  std::vector<std::array<PolyMatrix, 2>> r(m);
  return Sheaf(std::move(graph), std::move(stalks), std::vector<std::vector<int>>(m), std::move(r));
}

Section SectionSpace::element(std::size_t k, const Sheaf& sheaf, const std::vector<bool>& vertices) const {
  Section s;
  s.degree = degree;
  s.parts.resize(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!vertices[v]) continue;
    const std::size_t d = sheaf.stalk(v).dim(degree);
    s.parts[v].assign(basis[k].begin() + offsets[v], basis[k].begin() + offsets[v] + d);
  }
  return s;
}

SectionSpace sections(const Sheaf& sheaf, const SubgraphSelector& sel, int degree) {
  check_degree_cap(degree);
  const MomentGraph& g = sheaf.graph();
  SectionSpace out;
  out.degree = degree;
  out.offsets.assign(g.vertex_count(), 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out.offsets[v] = out.total_dim;
    if (sel.vertices[v]) out.total_dim += sheaf.stalk(v).dim(degree);
  }
  std::size_t rows = 0;
  for (std::size_t e : sel.edges) rows += sheaf.edge_module(e).dim(degree);
  RationalMatrix m(rows, out.total_dim);
  std::size_t r0 = 0;
  for (std::size_t e : sel.edges) {
    const auto& edge = g.edge(e);
    const RationalMatrix& ra = sheaf.restriction_matrix(edge.a, e, degree);
    const RationalMatrix& rb = sheaf.restriction_matrix(edge.b, e, degree);
    for (std::size_t r = 0; r < ra.rows(); ++r) {
      for (std::size_t c = 0; c < ra.cols(); ++c)
        if (!ra(r, c).is_zero()) m(r0 + r, out.offsets[edge.a] + c) = ra(r, c);
      for (std::size_t c = 0; c < rb.cols(); ++c)
        if (!rb(r, c).is_zero()) m(r0 + r, out.offsets[edge.b] + c) -= rb(r, c);
    }
    r0 += ra.rows();
  }
  out.basis = rows == 0 ? unit_vectors(out.total_dim) : kernel_basis(m);
  return out;
}

std::vector<std::size_t> section_dims(const Sheaf& sheaf, const SubgraphSelector& sel, int max_degree) {
  std::vector<std::size_t> dims;
  for (int d = 0; d <= max_degree; d += 2) dims.push_back(sections(sheaf, sel, d).basis.size());
  return dims;
}

StructureAlgebra structure_algebra(std::shared_ptr<const MomentGraph> graph, int max_degree) {
  const Sheaf sheaf = structure_sheaf(std::move(graph));
  const auto full = SubgraphSelector::full(sheaf.graph());
  StructureAlgebra out;
  for (int d = 0; d <= max_degree; d += 2) {
    out.pieces.push_back(sections(sheaf, full, d));
    out.dims.push_back(out.pieces.back().basis.size());
  }
  return out;
}

SectionLifter::SectionLifter(std::size_t vertex_count, int degree_cap)
    : added_(vertex_count, false), stalks_(vertex_count, nullptr), cap_(degree_cap) {
  check_degree_cap(degree_cap);
}

Vector SectionLifter::boundary(const Section& g, const std::vector<Constraint>& constraints,
                               const std::vector<const GradedFree*>& stalks, MatrixCache* cache) const {
  MatrixCache local;
  if (!cache) cache = &local;
  Vector out;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    auto it = cache->find({k, g.degree});
    if (it == cache->end())
      it = cache->emplace(std::pair{k, g.degree}, poly_matrix_at(*c.from_neighbour, *stalks[c.neighbour], *c.edge, g.degree)).first;
    const Vector part = it->second.apply(g.parts[c.neighbour]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool SectionLifter::add_vertex(std::size_t v, const GradedFree& stalk, const std::vector<Constraint>& constraints) {
  std::map<int, RationalMatrix> own;
  auto own_at = [&](int d) -> const RationalMatrix& {
    auto it = own.find(d);
    if (it != own.end()) return it->second;
    std::vector<RationalMatrix> blocks;
    for (const auto& c : constraints) blocks.push_back(poly_matrix_at(*c.from_vertex, stalk, *c.edge, d));
    return own.emplace(d, stacked(blocks, stalk.dim(d))).first->second;
  };
  auto stalks = stalks_;
  stalks[v] = &stalk;

  std::map<int, LinearSolver> solvers;
  MatrixCache cache;
  std::vector<Vector> lifts;
  lifts.reserve(generators_.size());
  for (const auto& g : generators_) {
    if (stalk.dim(g.degree) == 0 && constraints.empty()) {
      lifts.emplace_back();
      continue;
    }
    auto it = solvers.find(g.degree);
    if (it == solvers.end()) it = solvers.emplace(g.degree, LinearSolver(own_at(g.degree))).first;
    Vector rhs = boundary(g, constraints, stalks, &cache);
    if (rhs.empty()) rhs.assign(own_at(g.degree).rows(), Rational(0));
    auto x = it->second.solve(rhs);
    if (!x) {
      failed_vertex_ = v;
      failed_degree_ = g.degree;
      return false;
    }
    lifts.push_back(std::move(*x));
  }
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    generators_[k].parts[v] = lifts[k].empty() ? Vector(stalk.dim(generators_[k].degree)) : std::move(lifts[k]);
  }

  if (stalk.rank() > 0) {
    MinimalGenerators mg(stalk);
    for (int d = min_shift(stalk, 0); d <= cap_; d += 2) {
      const RationalMatrix& a = own_at(d);
      const std::vector<Vector> ker = a.rows() == 0 ? unit_vectors(a.cols()) : kernel_basis(a);
      for (auto& fresh : mg.add_degree(d, ker)) {
        Section s;
        s.degree = d;
        s.parts.resize(added_.size());
        for (std::size_t u = 0; u < added_.size(); ++u)
          if (added_[u]) s.parts[u] = Vector(stalks_[u]->dim(d));
        s.parts[v] = std::move(fresh);
        generators_.push_back(std::move(s));
      }
    }
  }
  added_[v] = true;
  stalks_[v] = &stalk;
  return true;
}

std::vector<SectionLifter::Constraint> lifter_constraints(const Sheaf& sheaf, std::size_t v,
                                                          const std::vector<bool>& added) {
  std::vector<SectionLifter::Constraint> out;
  const MomentGraph& g = sheaf.graph();
  for (std::size_t e : g.incident(v)) {
    const std::size_t z = g.other_end(e, v);
    if (!added[z] || sheaf.edge_module(e).rank() == 0) continue;
    out.push_back({z, &sheaf.edge_module(e), &sheaf.restriction(z, e), &sheaf.restriction(v, e)});
  }
  return out;
}

namespace {

GradedFree sum_of_stalks(const Sheaf& sheaf, const std::vector<bool>& vertices) {
  std::vector<GradedFree> parts;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v]) parts.push_back(sheaf.stalk(v));
  return GradedFree::direct_sum(sheaf.graph().variable_count(), parts);
}

Vector concat(const Section& s, const std::vector<bool>& vertices) {
  Vector out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v]) out.insert(out.end(), s.parts[v].begin(), s.parts[v].end());
  return out;
}

Section split(const Sheaf& sheaf, const Vector& x, int degree, const std::vector<bool>& vertices) {
  Section s;
  s.degree = degree;
  s.parts.resize(vertices.size());
  std::size_t at = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!vertices[v]) continue;
    const std::size_t d = sheaf.stalk(v).dim(degree);
    s.parts[v].assign(x.begin() + at, x.begin() + at + d);
    at += d;
  }
  return s;
}

std::vector<Section> minimize(const Sheaf& sheaf, const std::vector<Section>& gens, const std::vector<bool>& vertices,
                              int lo, int cap) {
  MinimalGenerators mg(sum_of_stalks(sheaf, vertices));
  std::vector<Section> out;
  for (int d = lo; d <= cap; d += 2) {
    std::vector<Vector> cand;
    for (const auto& g : gens)
      if (g.degree == d) cand.push_back(concat(g, vertices));
    for (const auto& f : mg.add_degree(d, cand)) out.push_back(split(sheaf, f, d, vertices));
  }
  return out;
}

}  // namespace

SectionModule section_module(const Sheaf& sheaf, const std::vector<bool>& vertices, Direction d, int cap) {
  check_degree_cap(cap);
  const MomentGraph& g = sheaf.graph();
  SectionModule out;
  out.vertices = vertices;
  out.degree_cap = cap;
  const int lo = min_stalk_shift(sheaf);

  SectionLifter lifter(g.vertex_count(), cap);
  bool ok = true;
  for (std::size_t v : g.linear_extension(d)) {
    if (!vertices[v]) continue;
    if (!lifter.add_vertex(v, sheaf.stalk(v), lifter_constraints(sheaf, v, lifter.vertices()))) {
      ok = false;
      break;
    }
  }
  if (ok) {
    out.method = "lifting";
    out.generators = minimize(sheaf, lifter.generators(), vertices, lo, cap);
    return out;
  }
  out.method = "explicit kernels";
  const auto sel = SubgraphSelector::induced(g, vertices);
  std::vector<Section> all;
  for (int deg = lo; deg <= cap; deg += 2) {
    const SectionSpace sp = sections(sheaf, sel, deg);
    for (std::size_t k = 0; k < sp.basis.size(); ++k) all.push_back(sp.element(k, sheaf, vertices));
  }
  out.generators = minimize(sheaf, all, vertices, lo, cap);
  return out;
}

std::vector<Vector> generated_piece(const Sheaf& sheaf, const std::vector<Section>& gens,
                                    const std::vector<bool>& vertices, int degree) {
  const GradedFree amb = sum_of_stalks(sheaf, vertices);
  Subspace sp(amb.dim(degree));
  for (const auto& g : gens) {
    if (g.degree > degree) continue;
    const Vector base = concat(g, vertices);
    for (Monomial u : degree_slice(amb.variable_count(), degree - g.degree).monomials())
      sp.insert(amb.multiply_monomial(base, g.degree, u));
  }
  return sp.basis();
}

FlabbyReport is_flabby_up_to(const Sheaf& sheaf, Direction d, int cap, FlabbyMethod method) {
  check_degree_cap(cap);
  const MomentGraph& g = sheaf.graph();
  const std::size_t n = g.vertex_count();
  FlabbyReport rep;
  rep.degree_cap = cap;
  const int lo = min_stalk_shift(sheaf);

  if (method == FlabbyMethod::Auto)
    method = n <= kExhaustiveOpenLimit ? FlabbyMethod::AllOpenSets : FlabbyMethod::Vertexwise;
  if (method == FlabbyMethod::AllOpenSets) {
    rep.method = "all open sets";
    const auto fam = open_subgraphs(g, d);
    const auto full = SubgraphSelector::full(g);
    for (int deg = lo; deg <= cap; deg += 2) {
      const SectionSpace global = sections(sheaf, full, deg);
      for (const auto& h : fam.sets) {
        const SectionSpace local = sections(sheaf, h, deg);
        Subspace image(local.total_dim);
        for (std::size_t k = 0; k < global.basis.size(); ++k) image.insert(concat(global.element(k, sheaf, h.vertices), h.vertices));
        if (image.dimension() != local.basis.size()) {
          std::ostringstream msg;
          msg << "open set " << vertex_set_name(g, h.vertices) << " degree " << deg << ": global sections give "
              << image.dimension() << " of " << local.basis.size();
          rep.failures.push_back(msg.str());
        }
      }
    }
  } else {
    rep.method = "vertexwise extension";
    for (std::size_t v = 0; v < n; ++v) {
      if (sheaf.stalk(v).rank() == 0 && lifter_constraints(sheaf, v, std::vector<bool>(n, true)).empty()) continue;
      std::vector<bool> below(n, false);
      for (std::size_t u = 0; u < n; ++u) below[u] = g.less(u, v, d);
      SectionLifter lifter(n, cap);
      bool ok = true;
      for (std::size_t u : g.linear_extension(d)) {
        if (!below[u]) continue;
        if (!lifter.add_vertex(u, sheaf.stalk(u), lifter_constraints(sheaf, u, lifter.vertices()))) {
          std::ostringstream msg;
          msg << "sections below " << g.vertex(v).name << " fail to extend to " << g.vertex(u).name << " in degree "
              << lifter.failed_degree();
          rep.failures.push_back(msg.str());
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const auto cons = lifter_constraints(sheaf, v, below);
      if (cons.empty()) continue;
      std::vector<const GradedFree*> stalks(n);
      for (std::size_t u = 0; u < n; ++u) stalks[u] = &sheaf.stalk(u);
      std::map<int, LinearSolver> solvers;
      SectionLifter::MatrixCache cache;
      for (const auto& gen : lifter.generators()) {
        auto it = solvers.find(gen.degree);
        if (it == solvers.end()) {
          std::vector<RationalMatrix> blocks;
          for (const auto& c : cons) blocks.push_back(poly_matrix_at(*c.from_vertex, sheaf.stalk(v), *c.edge, gen.degree));
          it = solvers.emplace(gen.degree, LinearSolver(stacked(blocks, sheaf.stalk(v).dim(gen.degree)))).first;
        }
        if (!it->second.solve(lifter.boundary(gen, cons, stalks, &cache))) {
          std::ostringstream msg;
          msg << "boundary sections at " << g.vertex(v).name << " in degree " << gen.degree
              << " are not in the image of the stalk";
          rep.failures.push_back(msg.str());
          break;
        }
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

FProjectiveReport check_f_projective(const Sheaf& sheaf, Direction d, int cap) {
  const MomentGraph& g = sheaf.graph();
  const std::size_t n = g.vertex_count();
  FProjectiveReport rep;
  rep.degree_cap = cap;
  rep.flabby = is_flabby_up_to(sheaf, d, cap);
  const int lo = min_stalk_shift(sheaf);

  const SectionModule global = section_module(sheaf, std::vector<bool>(n, true), d, cap);
  for (std::size_t v = 0; v < n; ++v) {
    if (sheaf.stalk(v).rank() == 0) continue;
    std::vector<bool> only(n, false);
    only[v] = true;
    for (int deg = lo; deg <= cap; deg += 2) {
      const std::size_t got = generated_piece(sheaf, global.generators, only, deg).size();
      if (got != sheaf.stalk(v).dim(deg)) {
        rep.generated = false;
        rep.failures.push_back("stalk at " + g.vertex(v).name + " not generated by global sections in degree " +
                               std::to_string(deg));
        break;
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t e : g.incident(v)) {
      if (!g.less(v, g.other_end(e, v), d)) continue;
      for (int deg = lo; deg <= cap; deg += 2) {
        const std::size_t r = sheaf.restriction_matrix(v, e, deg).rank();
        const bool onto = r == sheaf.edge_module(e).dim(deg);
        const bool injective_mod_label = sheaf.stalk(v).dim(deg) - r == sheaf.stalk(v).dim(deg - 2);
        if (!onto || !injective_mod_label) {
          rep.upward_iso = false;
          rep.failures.push_back("edge " + g.vertex(g.edge(e).a).name + "-" + g.vertex(g.edge(e).b).name +
                                 " is not the reduction of the stalk at " + g.vertex(v).name + " in degree " +
                                 std::to_string(deg));
          break;
        }
      }
    }
  }
  return rep;
}

QPoly stalk_rank_poly(const Sheaf& sheaf, std::size_t x) { return sheaf.stalk(x).graded_rank(); }

std::size_t GradedDims::dim(int degree) const {
  if (degree < min_degree || (degree - min_degree) % 2 != 0) return 0;
  const std::size_t k = static_cast<std::size_t>((degree - min_degree) / 2);
  return k < dims.size() ? dims[k] : 0;
}

namespace {

void finish_dims(GradedDims& out, int nvars) {
  for (std::size_t k = 0; k < out.dims.size(); ++k) {
    const int deg = out.min_degree + 2 * static_cast<int>(k);
    if (free_dimension(nvars, out.generator_degrees, deg) != out.dims[k]) out.free = false;
  }
}

}  // namespace

GradedDims costalk(const Sheaf& sheaf, std::size_t x, CostalkMode mode, int cap) {
  check_degree_cap(cap);
  const MomentGraph& g = sheaf.graph();
  const GradedFree& st = sheaf.stalk(x);
  GradedDims out;
  out.min_degree = std::min(min_shift(st, 0), cap);
  std::vector<std::size_t> edges;
  for (std::size_t e : g.incident(x)) {
    const std::size_t w = g.other_end(e, x);
    if (mode == CostalkMode::All || (mode == CostalkMode::Up && g.leq(x, w)) || (mode == CostalkMode::Down && g.leq(w, x)))
      edges.push_back(e);
  }
  MinimalGenerators mg(st);
  for (int deg = out.min_degree; deg <= cap; deg += 2) {
    std::vector<RationalMatrix> blocks;
    for (std::size_t e : edges) blocks.push_back(sheaf.restriction_matrix(x, e, deg));
    const RationalMatrix a = stacked(blocks, st.dim(deg));
    const auto ker = a.rows() == 0 ? unit_vectors(a.cols()) : kernel_basis(a);
    out.dims.push_back(ker.size());
    for (std::size_t k = 0, m = mg.add_degree(deg, ker).size(); k < m; ++k) out.generator_degrees.push_back(deg);
  }
  finish_dims(out, g.variable_count());
  return out;
}

GradedDims hom_to_skyscraper(const Sheaf& sheaf, std::size_t y, int min_degree, int max_degree) {
  GradedDims out;
  out.min_degree = min_degree;
  for (int s : sheaf.stalk(y).shifts()) out.generator_degrees.push_back(-s);
  std::sort(out.generator_degrees.begin(), out.generator_degrees.end());
  for (int deg = min_degree; deg <= max_degree; deg += 2)
    out.dims.push_back(free_dimension(sheaf.graph().variable_count(), out.generator_degrees, deg));
  return out;
}

GradedDims hom_from_skyscraper(const Sheaf& sheaf, std::size_t y, int cap) {
  check_degree_cap(cap);
  const MomentGraph& g = sheaf.graph();
  const GradedFree& st = sheaf.stalk(y);
  std::vector<bool> star(g.vertex_count(), false);
  star[y] = true;
  for (std::size_t e : g.incident(y)) star[g.other_end(e, y)] = true;
  const auto sel = SubgraphSelector::induced(g, star);

  GradedDims out;
  out.min_degree = std::min(min_shift(st, 0), cap);
  MinimalGenerators mg(st);
  for (int deg = out.min_degree; deg <= cap; deg += 2) {
    const SectionSpace sp = sections(sheaf, sel, deg);
    // combinations of the basis vanishing at every neighbour
    std::size_t away = 0;
    for (std::size_t v = 0; v < star.size(); ++v)
      if (star[v] && v != y) away += sheaf.stalk(v).dim(deg);
    RationalMatrix m(away, sp.basis.size());
    for (std::size_t k = 0; k < sp.basis.size(); ++k) {
      std::size_t r = 0;
      for (std::size_t v = 0; v < star.size(); ++v) {
        if (!star[v] || v == y) continue;
        const std::size_t dv = sheaf.stalk(v).dim(deg);
        for (std::size_t i = 0; i < dv; ++i) m(r + i, k) = sp.basis[k][sp.offsets[v] + i];
        r += dv;
      }
    }
    const auto combos = away == 0 ? unit_vectors(sp.basis.size()) : kernel_basis(m);
    std::vector<Vector> at_y;
    for (const auto& c : combos) {
      Vector v(st.dim(deg));
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[k] * sp.basis[k][sp.offsets[y] + i];
      }
      at_y.push_back(std::move(v));
    }
    out.dims.push_back(at_y.size());
    for (std::size_t k = 0, n = mg.add_degree(deg, at_y).size(); k < n; ++k) out.generator_degrees.push_back(deg);
  }
  finish_dims(out, g.variable_count());
  return out;
}

}  // namespace msh
