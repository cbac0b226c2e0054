#include "msh/bmp.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

namespace msh {

int DegreeBoundPolicy::bound(int length_difference) const {
  const int b = slope * length_difference + offset;
  return b < 0 ? 0 : b + (b % 2);
}

void DegreeBoundPolicy::validate() const {
  if (slope < 0 || offset % 2 != 0 || saturation_window < 0 || saturation_window % 2 != 0)
    throw std::invalid_argument("degree policy needs a nonnegative slope, an even offset and an even nonnegative window");
  if (extension_variant != 0 && extension_variant != 1) throw std::invalid_argument("extension variant must be 0 or 1");
}

bool BMPResult::saturated() const {
  return std::all_of(diagnostics.begin(), diagnostics.end(), [](const auto& d) { return d.saturated; });
}

bool BMPResult::oracle_ok() const {
  return std::all_of(diagnostics.begin(), diagnostics.end(), [&](const auto& d) {
    return !d.oracle_rank || *d.oracle_rank == static_cast<std::int64_t>(sheaf.stalk(d.vertex).rank());
  });
}

namespace {

std::size_t coset_top(const Block& block, std::size_t vertex) {
  std::size_t longest = 0;
  for (std::size_t u : block.orbit.stabilizer)
    if (block.group.length(u) > block.group.length(longest)) longest = u;
  return block.group.multiply(block.graph.vertex(vertex).representative, longest);
}

PolyMatrix identity_matrix(std::size_t n) {
  PolyMatrix m(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Polynomial(Rational(1));
  return m;
}

}  // namespace

std::int64_t kl_multiplicity(const Block& block, const KLTable& table, Direction d, std::size_t base,
                             std::size_t vertex) {
  if (d == Direction::Up) return kl_multiplicity(block, table, Direction::Down, block.w0_map[base], block.w0_map[vertex]);
  return table.eval_at_one(coset_top(block, vertex), coset_top(block, base));
}

QPoly kl_polynomial(const Block& block, const KLTable& table, std::size_t base, std::size_t vertex) {
  return table.polynomial(coset_top(block, vertex), coset_top(block, base));
}

BMPResult bmp(const std::shared_ptr<const MomentGraph>& graph, Direction d, std::size_t base,
              const DegreeBoundPolicy& policy) {
  policy.validate();
  const MomentGraph& g = *graph;
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  if (base >= n) throw std::invalid_argument("base vertex out of range");
  const GkmReport gkm = gkm_check(g);
  if (!gkm.ok)
    throw std::invalid_argument("graph is not GKM: edges " + g.vertex(g.edge(gkm.witness.first).a).name + "-" +
                                g.vertex(g.edge(gkm.witness.first).b).name + " and " +
                                g.vertex(g.edge(gkm.witness.second).a).name + "-" +
                                g.vertex(g.edge(gkm.witness.second).b).name + " have proportional labels");
  const int nvars = g.variable_count();
  const int base_length = g.vertex(base).length;
  std::vector<bool> support(n);
  int cap = 0;
  for (std::size_t v = 0; v < n; ++v) {
    support[v] = g.leq(base, v, d);
    if (support[v]) cap = std::max(cap, policy.bound(std::abs(g.vertex(v).length - base_length)));
  }
  cap += policy.saturation_window;
  check_degree_cap(cap);

  // Fixed-size storage: the lifter keeps pointers into these.
  std::vector<GradedFree> stalks(n, GradedFree(nvars, {}));
  std::vector<GradedFree> edges(m);
  std::vector<std::array<PolyMatrix, 2>> rho(m);
  for (std::size_t e = 0; e < m; ++e) edges[e] = GradedFree(nvars, {}, g.reducer(e));

  std::vector<VertexDiagnostics> diag(n);
  for (std::size_t v = 0; v < n; ++v) {
    diag[v].vertex = v;
    diag[v].bound = policy.bound(std::abs(g.vertex(v).length - base_length));
  }

  SectionLifter lifter(n, cap);
  for (std::size_t y : g.linear_extension(d, policy.extension_variant)) {
    if (!support[y]) continue;
    const auto start = std::chrono::steady_clock::now();
    std::vector<int> shifts;
    if (y == base) {
      shifts = {0};
      stalks[y] = GradedFree(nvars, shifts);
    } else {
      // Edges to processed lower vertices get the reduction of the lower stalk.
      std::vector<std::size_t> lower;
      for (std::size_t e : g.incident(y)) {
        const std::size_t z = g.other_end(e, y);
        if (!support[z] || !g.less(z, y, d) || stalks[z].rank() == 0) continue;
        lower.push_back(e);
        edges[e] = GradedFree(nvars, stalks[z].shifts(), g.reducer(e));
        rho[e][g.edge(e).a == z ? 0 : 1] = identity_matrix(stalks[z].rank());
      }
      std::vector<GradedFree> parts;
      for (std::size_t e : lower) parts.push_back(edges[e]);
      const GradedFree target = GradedFree::direct_sum(nvars, parts);

      std::vector<SectionLifter::Constraint> boundary_edges;
      for (std::size_t e : lower) {
        const std::size_t z = g.other_end(e, y);
        boundary_edges.push_back({z, &edges[e], &rho[e][g.edge(e).a == z ? 0 : 1], nullptr});
      }
      std::vector<const GradedFree*> stalk_ptrs(n);
      for (std::size_t v = 0; v < n; ++v) stalk_ptrs[v] = &stalks[v];

      MinimalGenerators cover(target);
      SectionLifter::MatrixCache cache;
      std::vector<std::pair<int, Vector>> fresh;
      for (int deg = 0; deg <= cap; deg += 2) {
        std::vector<Vector> candidates;
        for (const auto& gen : lifter.generators())
          if (gen.degree == deg) candidates.push_back(lifter.boundary(gen, boundary_edges, stalk_ptrs, &cache));
        for (auto& v : cover.add_degree(deg, candidates)) fresh.emplace_back(deg, std::move(v));
      }
      for (const auto& [deg, v] : fresh) shifts.push_back(deg);
      stalks[y] = GradedFree(nvars, shifts);
      // Columns of the restriction from y are the edge components of the new generators.
      std::size_t gen_offset = 0;
      for (std::size_t k = 0; k < lower.size(); ++k) {
        const std::size_t e = lower[k];
        PolyMatrix r(edges[e].rank(), std::vector<Polynomial>(fresh.size()));
        for (std::size_t j = 0; j < fresh.size(); ++j) {
          const auto comps = target.decode(fresh[j].second, fresh[j].first);
          for (std::size_t i = 0; i < edges[e].rank(); ++i) r[i][j] = comps[gen_offset + i];
        }
        rho[e][g.edge(e).a == y ? 0 : 1] = std::move(r);
        gen_offset += edges[e].rank();
      }
    }

    std::vector<SectionLifter::Constraint> cons;
    for (std::size_t e : g.incident(y)) {
      const std::size_t z = g.other_end(e, y);
      if (!lifter.vertices()[z] || edges[e].rank() == 0) continue;
      cons.push_back({z, &edges[e], &rho[e][g.edge(e).a == z ? 0 : 1], &rho[e][g.edge(e).a == y ? 0 : 1]});
    }
    if (!lifter.add_vertex(y, stalks[y], cons))
      throw std::logic_error("section lift failed at " + g.vertex(y).name + " in degree " +
                             std::to_string(lifter.failed_degree()));

    auto& dv = diag[y];
    dv.generator_degrees = shifts;
    dv.saturated = std::all_of(shifts.begin(), shifts.end(), [&](int s) { return s <= dv.bound; });
    if (policy.record_timing)
      dv.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  std::vector<std::vector<int>> stalk_shifts(n), edge_shifts(m);
  for (std::size_t v = 0; v < n; ++v) stalk_shifts[v] = stalks[v].shifts();
  for (std::size_t e = 0; e < m; ++e) {
    edge_shifts[e] = edges[e].shifts();
    if (edges[e].rank() == 0) rho[e] = {};
  }
  return BMPResult{Sheaf(graph, std::move(stalk_shifts), std::move(edge_shifts), std::move(rho)), base, d, cap,
                   std::move(diag)};
}

BMPResult bmp(const std::shared_ptr<const Block>& block, Direction d, std::size_t base,
              const DegreeBoundPolicy& policy, const KLTable* table) {
  BMPResult r = bmp(std::shared_ptr<const MomentGraph>(block, &block->graph), d, base, policy);
  if (!policy.oracle_crosscheck) return r;
  std::unique_ptr<KLTable> own;
  if (!table) {
    own = std::make_unique<KLTable>(block->group);
    table = own.get();
  }
  for (auto& dv : r.diagnostics) dv.oracle_rank = kl_multiplicity(*block, *table, d, base, dv.vertex);
  return r;
}

MultiplicityTable multiplicity_table(const std::shared_ptr<const Block>& block, Direction d,
                                     const std::vector<BMPResult>& results) {
  const KLTable table(block->group);
  const std::size_t n = block->graph.vertex_count();
  MultiplicityTable t;
  t.direction = d;
  for (std::size_t v = 0; v < n; ++v) t.names.push_back(block->graph.vertex(v).name);
  t.ranks.assign(n, std::vector<std::int64_t>(n, 0));
  t.graded.assign(n, std::vector<QPoly>(n));
  t.oracle.assign(n, std::vector<std::int64_t>(n, 0));
  for (const auto& r : results) {
    for (std::size_t x = 0; x < n; ++x) {
      t.ranks[r.base][x] = static_cast<std::int64_t>(r.sheaf.stalk(x).rank());
      t.graded[r.base][x] = stalk_rank_poly(r.sheaf, x);
      t.oracle[r.base][x] = kl_multiplicity(*block, table, d, r.base, x);
    }
    t.saturated = t.saturated && r.saturated();
  }
  return t;
}

MultiplicityTable multiplicity_table(const std::shared_ptr<const Block>& block, Direction d,
                                     const DegreeBoundPolicy& policy) {
  const KLTable table(block->group);
  std::vector<BMPResult> results;
  for (std::size_t w = 0; w < block->graph.vertex_count(); ++w) results.push_back(bmp(block, d, w, policy, &table));
  return multiplicity_table(block, d, results);
}

namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

PullbackComparison compare_pullback(const Block& block, const BMPResult& down, const BMPResult& up) {
  const MomentGraph& g = block.graph;
  PullbackComparison c;
  c.base = down.base;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (sorted(down.sheaf.stalk(v).shifts()) != sorted(up.sheaf.stalk(block.w0_map[v]).shifts())) c.stalks_equal = false;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto image = g.find_edge(block.w0_map[g.edge(e).a], block.w0_map[g.edge(e).b]);
    if (!image || sorted(down.sheaf.edge_module(e).shifts()) != sorted(up.sheaf.edge_module(*image).shifts()))
      c.edges_equal = false;
  }
  return c;
}

PullbackReport verify_w0_pullback(const std::shared_ptr<const Block>& block, const DegreeBoundPolicy& policy) {
  PullbackReport rep;
  DegreeBoundPolicy p = policy;
  p.oracle_crosscheck = false;
  for (std::size_t x = 0; x < block->graph.vertex_count(); ++x) {
    const BMPResult down = bmp(block, Direction::Down, x, p);
    const BMPResult up = bmp(block, Direction::Up, block->w0_map[x], p);
    rep.comparisons.push_back(compare_pullback(*block, down, up));
    rep.ok = rep.ok && rep.comparisons.back().stalks_equal && rep.comparisons.back().edges_equal;
  }
  return rep;
}

bool same_shift_data(const Sheaf& a, const Sheaf& b) {
  if (a.graph().vertex_count() != b.graph().vertex_count() || a.graph().edge_count() != b.graph().edge_count())
    return false;
  for (std::size_t v = 0; v < a.graph().vertex_count(); ++v)
    if (sorted(a.stalk(v).shifts()) != sorted(b.stalk(v).shifts())) return false;
  for (std::size_t e = 0; e < a.graph().edge_count(); ++e)
    if (sorted(a.edge_module(e).shifts()) != sorted(b.edge_module(e).shifts())) return false;
  return true;
}

}  // namespace msh
