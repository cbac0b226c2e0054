#include "msh/zlattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace msh {

namespace {

std::vector<Polynomial> flatten(const std::vector<std::vector<Polynomial>>& parts) {
  std::vector<Polynomial> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

int max_shift(const GradedFree& f, int fallback) {
  if (f.rank() == 0) return fallback;
  return *std::max_element(f.shifts().begin(), f.shifts().end());
}

std::string dims_table(const std::vector<std::size_t>& got, const std::vector<std::size_t>& free, int lo) {
  std::ostringstream os;
  os << "degree:dim/free";
  for (std::size_t k = 0; k < got.size(); ++k) os << ' ' << lo + 2 * static_cast<int>(k) << ':' << got[k] << '/' << free[k];
  return os.str();
}

std::vector<Vector> unit_vectors(std::size_t n) {
  std::vector<Vector> out(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = Rational(1);
  return out;
}

// Polynomial column solve: coefficients c_i, from the slices excluding the pivot, with
// sum_i c_i * q_i + r = target, r in the span of `relations`.
class ColumnSolver {
 public:
  ColumnSolver(const GradedFree& space, const std::vector<Vector>& gens, const std::vector<int>& gen_degrees,
               int excluded, const std::vector<Vector>& relations, int degree) {
    const int n = space.variable_count();
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (Monomial u : degree_slice(n, degree - gen_degrees[i], excluded).monomials()) {
        cols.push_back(space.multiply_monomial(gens[i], gen_degrees[i], u));
        owners_.emplace_back(i, u);
      }
    }
    cols.insert(cols.end(), relations.begin(), relations.end());
    solver_ = LinearSolver(RationalMatrix::from_columns(cols, space.dim(degree)));
  }

  std::optional<std::vector<Polynomial>> solve(const Vector& target, std::size_t gen_count) const {
    auto x = solver_.solve(target);
    if (!x) return std::nullopt;
    std::vector<Polynomial> out(gen_count);
    for (std::size_t k = 0; k < owners_.size(); ++k)
      if (!(*x)[k].is_zero()) out[owners_[k].first].add_term(owners_[k].second, (*x)[k]);
    return out;
  }

 private:
  std::vector<std::pair<std::size_t, Monomial>> owners_;
  LinearSolver solver_;
};

// Minimal generators of the span of `gens` inside `ambient`, walking degrees
// lo..cap; `on_degree` sees every degree with its fresh generators and the
// dimension of the span.
template <class F>
void walk_minimal(const GradedFree& ambient, const std::vector<Vector>& gens, const std::vector<int>& degrees, int lo,
                  int cap, F on_degree) {
  MinimalGenerators mg(ambient);
  for (int d = lo; d <= cap; d += 2) {
    std::vector<Vector> cand;
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (degrees[k] == d) cand.push_back(gens[k]);
    const auto fresh = mg.add_degree(d, cand);
    on_degree(d, fresh, mg.current_basis().size());
  }
}

struct StalkImage {
  GradedFree stalk;
  std::vector<std::vector<Polynomial>> coords;  // per lattice generator, in stalk coordinates
};

StalkImage stalk_image(const ZLattice& m, std::size_t x, int lo, int cap) {
  const GradedFree& amb = m.ambient(x);
  const int n = m.graph().variable_count();
  StalkImage out;
  const auto& gens = m.generators();
  out.coords.resize(gens.size());
  if (amb.rank() == 0) {
    out.stalk = GradedFree(n, {});
    return out;
  }
  std::vector<Vector> enc;
  std::vector<int> degs;
  for (const auto& g : gens) {
    enc.push_back(amb.encode(g.parts[x], g.degree));
    degs.push_back(g.degree);
  }
  std::vector<int> shifts;
  std::vector<std::vector<Polynomial>> columns;
  std::vector<std::size_t> got;
  walk_minimal(amb, enc, degs, lo, cap, [&](int d, const std::vector<Vector>& fresh, std::size_t dim) {
    for (const auto& f : fresh) {
      shifts.push_back(d);
      columns.push_back(amb.decode(f, d));
    }
    got.push_back(dim);
  });
  std::vector<std::size_t> free;
  for (int d = lo; d <= cap; d += 2) free.push_back(free_dimension(n, shifts, d));
  if (got != free) {
    throw std::domain_error("localize: stalk at " + m.graph().vertex(x).name + " is not free; " +
                            dims_table(got, free, lo));
  }
  out.stalk = GradedFree(n, shifts);
  PolyMatrix basis(amb.rank(), std::vector<Polynomial>(shifts.size()));
  for (std::size_t j = 0; j < shifts.size(); ++j)
    for (std::size_t i = 0; i < amb.rank(); ++i) basis[i][j] = columns[j][i];
  std::map<int, LinearSolver> solvers;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const int d = gens[k].degree;
    if (out.stalk.dim(d) == 0) {
      out.coords[k].assign(shifts.size(), Polynomial());
      continue;
    }
    auto it = solvers.find(d);
    if (it == solvers.end()) it = solvers.emplace(d, LinearSolver(poly_matrix_at(basis, out.stalk, amb, d))).first;
    auto c = it->second.solve(enc[k]);
    if (!c) throw std::logic_error("localize: generator outside its own stalk image");
    out.coords[k] = out.stalk.decode(*c, d);
  }
  return out;
}

}  // namespace

ZLattice::ZLattice(std::shared_ptr<const MomentGraph> graph, std::vector<GradedFree> ambient,
                   std::vector<LatticeElement> generators, int degree_cap)
    : graph_(std::move(graph)), ambient_(std::move(ambient)), generators_(std::move(generators)), cap_(degree_cap) {
  if (ambient_.size() != graph_->vertex_count()) throw std::invalid_argument("lattice: one ambient module per vertex");
  check_degree_cap(cap_);
  total_ = GradedFree::direct_sum(graph_->variable_count(), ambient_);
  for (const auto& g : generators_) {
    if (g.parts.size() != ambient_.size()) throw std::invalid_argument("lattice: generator needs one part per vertex");
    for (std::size_t x = 0; x < ambient_.size(); ++x)
      if (g.parts[x].size() != ambient_[x].rank())
        throw std::invalid_argument("lattice: generator part at " + graph_->vertex(x).name + " has wrong rank");
    encoded_.push_back(encode(g));
  }
}

ZLattice ZLattice::from_sections(const Sheaf& sheaf, std::vector<LatticeElement> generators, int degree_cap) {
  const MomentGraph& g = sheaf.graph();
  std::vector<GradedFree> amb;
  for (std::size_t x = 0; x < g.vertex_count(); ++x) amb.push_back(sheaf.stalk(x));
  ZLattice out(sheaf.graph_ptr(), amb, generators, degree_cap);
  for (std::size_t k = 0; k < out.generators_.size(); ++k) {
    const auto& gen = out.generators_[k];
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& ed = g.edge(e);
      const Vector a = sheaf.restriction_matrix(ed.a, e, gen.degree).apply(amb[ed.a].encode(gen.parts[ed.a], gen.degree));
      const Vector b = sheaf.restriction_matrix(ed.b, e, gen.degree).apply(amb[ed.b].encode(gen.parts[ed.b], gen.degree));
      if (a != b) {
        throw std::invalid_argument("not a section: generator " + std::to_string(k) + " disagrees on the edge " +
                                    g.vertex(ed.a).name + " - " + g.vertex(ed.b).name);
      }
    }
  }
  return out;
}

std::vector<std::size_t> ZLattice::ambient_ranks() const {
  std::vector<std::size_t> out;
  for (const auto& a : ambient_) out.push_back(a.rank());
  return out;
}

std::vector<int> ZLattice::generator_degrees() const {
  std::vector<int> out;
  for (const auto& g : generators_) out.push_back(g.degree);
  return out;
}

int ZLattice::min_degree() const {
  int lo = 0;
  bool any = false;
  for (const auto& g : generators_) {
    lo = any ? std::min(lo, g.degree) : g.degree;
    any = true;
  }
  return std::min(lo, cap_);
}

Vector ZLattice::encode(const LatticeElement& g) const { return total_.encode(flatten(g.parts), g.degree); }

LatticeElement ZLattice::decode(const Vector& v, int degree) const {
  const auto flat = total_.decode(v, degree);
  LatticeElement out;
  out.degree = degree;
  std::size_t at = 0;
  for (const auto& a : ambient_) {
    out.parts.emplace_back(flat.begin() + at, flat.begin() + at + a.rank());
    at += a.rank();
  }
  return out;
}

std::vector<Vector> ZLattice::piece(int degree) const {
  std::vector<Vector> out;
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    const int a = generators_[k].degree;
    if (a > degree) continue;
    for (Monomial u : degree_slice(total_.variable_count(), degree - a).monomials())
      out.push_back(total_.multiply_monomial(encoded_[k], a, u));
  }
  return out;
}

std::vector<Vector> ZLattice::piece_basis(int degree) const {
  Subspace sp(total_.dim(degree));
  for (const auto& v : piece(degree)) sp.insert(v);
  return sp.basis();
}

std::vector<std::size_t> ZLattice::dims(int lo, int hi) const {
  std::vector<std::size_t> out;
  for (int d = lo; d <= hi; d += 2) out.push_back(piece_basis(d).size());
  return out;
}

ZLattice minimized(const ZLattice& m) {
  std::vector<Vector> enc;
  for (const auto& g : m.generators()) enc.push_back(m.encode(g));
  std::vector<LatticeElement> gens;
  walk_minimal(m.total_ambient(), enc, m.generator_degrees(), m.min_degree(), m.degree_cap(),
               [&](int d, const std::vector<Vector>& fresh, std::size_t) {
                 for (const auto& f : fresh) gens.push_back(m.decode(f, d));
               });
  ZLattice out(m.graph_ptr(), m.ambients(), std::move(gens), m.degree_cap());
  out.saturated = m.saturated;
  out.notes = m.notes;
  return out;
}

ZLattice direct_sum(const ZLattice& a, const ZLattice& b) {
  if (a.graph().vertex_count() != b.graph().vertex_count())
    throw std::invalid_argument("direct_sum: lattices live on different graphs");
  const int n = a.graph().variable_count();
  std::vector<GradedFree> amb;
  for (std::size_t x = 0; x < a.ambients().size(); ++x) amb.push_back(GradedFree::direct_sum(n, {a.ambient(x), b.ambient(x)}));
  std::vector<LatticeElement> gens;
  for (const auto& g : a.generators()) {
    LatticeElement e = g;
    for (std::size_t x = 0; x < e.parts.size(); ++x) e.parts[x].resize(amb[x].rank());
    gens.push_back(std::move(e));
  }
  for (const auto& g : b.generators()) {
    LatticeElement e;
    e.degree = g.degree;
    for (std::size_t x = 0; x < g.parts.size(); ++x) {
      e.parts.emplace_back(a.ambient(x).rank());
      e.parts.back().insert(e.parts.back().end(), g.parts[x].begin(), g.parts[x].end());
    }
    gens.push_back(std::move(e));
  }
  ZLattice out(a.graph_ptr(), std::move(amb), std::move(gens), std::max(a.degree_cap(), b.degree_cap()));
  out.saturated = a.saturated && b.saturated;
  return out;
}

QPoly generator_rank(const ZLattice& m) {
  QPoly q;
  for (int d : m.generator_degrees()) q.add(d / 2, 1);
  return q;
}

bool is_graded_free(const ZLattice& m) {
  std::vector<Vector> enc;
  for (const auto& g : m.generators()) enc.push_back(m.encode(g));
  const auto degs = m.generator_degrees();
  bool ok = true;
  walk_minimal(m.total_ambient(), enc, degs, m.min_degree(), m.degree_cap(),
               [&](int d, const std::vector<Vector>&, std::size_t dim) {
                 if (dim != free_dimension(m.graph().variable_count(), degs, d)) ok = false;
               });
  return ok;
}

int gamma_degree_cap(const Sheaf& sheaf, const GammaPolicy& policy) {
  if (policy.degree_cap >= 0) return policy.degree_cap;
  const MomentGraph& g = sheaf.graph();
  int top = 0;
  int lo_len = 0;
  int hi_len = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    top = std::max(top, max_shift(sheaf.stalk(v), 0));
    lo_len = v == 0 ? g.vertex(v).length : std::min(lo_len, g.vertex(v).length);
    hi_len = v == 0 ? g.vertex(v).length : std::max(hi_len, g.vertex(v).length);
  }
  return std::min(kGlobalDegreeCap, top + 2 * (hi_len - lo_len) + policy.saturation_window);
}

ZLattice gamma(const Sheaf& sheaf, const GammaPolicy& policy) {
  const int cap = gamma_degree_cap(sheaf, policy);
  const MomentGraph& g = sheaf.graph();
  const std::vector<bool> all(g.vertex_count(), true);
  const SectionModule sm = section_module(sheaf, all, policy.direction, cap);
  std::vector<LatticeElement> gens;
  for (const auto& s : sm.generators) {
    LatticeElement e;
    e.degree = s.degree;
    for (std::size_t x = 0; x < g.vertex_count(); ++x) e.parts.push_back(sheaf.stalk(x).decode(s.parts[x], s.degree));
    gens.push_back(std::move(e));
  }
  std::vector<GradedFree> amb;
  for (std::size_t x = 0; x < g.vertex_count(); ++x) amb.push_back(sheaf.stalk(x));
  ZLattice out(sheaf.graph_ptr(), std::move(amb), std::move(gens), cap);
  for (const auto& e : out.generators())
    if (e.degree > cap - policy.saturation_window) out.saturated = false;
  if (sm.method != "lifting") out.notes.push_back("sections from explicit kernels");
  return out;
}

Sheaf localize(const ZLattice& m, std::optional<int> cap_override) {
  const MomentGraph& g = m.graph();
  const int n = g.variable_count();
  const int cap = cap_override.value_or(m.degree_cap());
  check_degree_cap(cap);
  int lo = m.min_degree();
  for (const auto& a : m.ambients())
    for (int s : a.shifts()) lo = std::min(lo, s);

  std::vector<StalkImage> stalks;
  for (std::size_t x = 0; x < g.vertex_count(); ++x) stalks.push_back(stalk_image(m, x, lo, cap));

  const auto degs = m.generator_degrees();
  std::vector<std::vector<int>> edge_shifts;
  std::vector<std::array<PolyMatrix, 2>> restrictions;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    const auto& red = g.reducer(e);
    const int pivot = red->pivot();
    const GradedFree& sx = stalks[ed.a].stalk;
    const GradedFree& sy = stalks[ed.b].stalk;
    const GradedFree lx(n, sx.shifts(), red);
    const GradedFree ly(n, sy.shifts(), red);
    const GradedFree v = GradedFree::direct_sum(n, {lx, ly});

    // Relations (e_x m, -e_y m) for the lattice generators m.
    std::vector<Vector> rel;
    for (std::size_t k = 0; k < degs.size(); ++k) {
      std::vector<Polynomial> comps = stalks[ed.a].coords[k];
      for (const auto& p : stalks[ed.b].coords[k]) comps.push_back(-p);
      rel.push_back(v.encode(comps, degs[k]));
    }
    auto relations_at = [&](int d) {
      std::vector<Vector> out;
      for (std::size_t k = 0; k < degs.size(); ++k) {
        if (degs[k] > d) continue;
        for (Monomial u : degree_slice(n, d - degs[k]).monomials()) out.push_back(v.multiply_monomial(rel[k], degs[k], u));
      }
      return out;
    };

    std::vector<Vector> q;
    std::vector<int> t;
    std::vector<std::size_t> got;
    for (int d = lo; d <= cap; d += 2) {
      const std::size_t dim = v.dim(d);
      Subspace w(dim);
      for (const auto& r : relations_at(d)) w.insert(r);
      const std::size_t rdim = w.dimension();
      for (std::size_t i = 0; i < q.size(); ++i)
        for (Monomial u : degree_slice(n, d - t[i], pivot).monomials())
          if (u.degree() > 0) w.insert(v.multiply_monomial(q[i], t[i], u));
      for (const auto& unit : unit_vectors(dim)) {
        if (w.insert(unit)) {
          q.push_back(unit);
          t.push_back(d);
        }
      }
      got.push_back(dim - rdim);
    }
    std::vector<std::size_t> free;
    for (int d = lo; d <= cap; d += 2) free.push_back(free_dimension(n, t, d, pivot));
    if (got != free) {
      throw std::domain_error("localize: edge module " + g.vertex(ed.a).name + " - " + g.vertex(ed.b).name +
                              " is not free over S/label; " + dims_table(got, free, lo));
    }

    std::array<PolyMatrix, 2> rho;
    rho[0].assign(t.size(), std::vector<Polynomial>(sx.rank()));
    rho[1].assign(t.size(), std::vector<Polynomial>(sy.rank()));
    std::map<int, ColumnSolver> solvers;
    for (std::size_t j = 0; j < sx.rank() + sy.rank(); ++j) {
      const int d = j < sx.rank() ? sx.shifts()[j] : sy.shifts()[j - sx.rank()];
      auto it = solvers.find(d);
      if (it == solvers.end()) it = solvers.emplace(d, ColumnSolver(v, q, t, pivot, relations_at(d), d)).first;
      auto c = it->second.solve(v.basis_element(j, Monomial()), t.size());
      if (!c) throw std::logic_error("localize: edge module not generated by the stalk images");
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (j < sx.rank()) rho[0][i][j] = (*c)[i];
        else rho[1][i][j - sx.rank()] = (*c)[i];
      }
    }
    edge_shifts.push_back(t);
    restrictions.push_back(std::move(rho));
  }

  std::vector<std::vector<int>> stalk_shifts;
  for (const auto& s : stalks) stalk_shifts.push_back(s.stalk.shifts());
  return Sheaf(m.graph_ptr(), std::move(stalk_shifts), std::move(edge_shifts), std::move(restrictions));
}

ZLattice project_open(const ZLattice& m, const SubgraphSelector& sel, Direction d) {
  std::vector<LatticeElement> gens = m.generators();
  for (auto& gen : gens)
    for (std::size_t x = 0; x < gen.parts.size(); ++x)
      if (!sel.contains(x)) std::fill(gen.parts[x].begin(), gen.parts[x].end(), Polynomial());
  ZLattice raw(m.graph_ptr(), m.ambients(), std::move(gens), m.degree_cap());
  raw.saturated = m.saturated;
  if (!is_open(m.graph(), sel, d))
    raw.notes.push_back("subset " + vertex_set_name(m.graph(), sel.vertices) + " is not open");
  return minimized(raw);
}

ZLattice intersect_open(const ZLattice& m, const SubgraphSelector& sel, int saturation_window) {
  const GradedFree& total = m.total_ambient();
  std::vector<bool> outside_gen;
  for (std::size_t x = 0; x < m.ambients().size(); ++x)
    for (std::size_t i = 0; i < m.ambient(x).rank(); ++i) outside_gen.push_back(!sel.contains(x));

  MinimalGenerators mg(total);
  std::vector<LatticeElement> gens;
  const int cap = m.degree_cap();
  for (int d = m.min_degree(); d <= cap; d += 2) {
    const auto basis = m.piece_basis(d);
    std::vector<std::size_t> rows;
    std::size_t at = 0;
    for (std::size_t j = 0; j < total.rank(); ++j) {
      const std::size_t sz = total.slice(j, d).size();
      if (outside_gen[j])
        for (std::size_t k = 0; k < sz; ++k) rows.push_back(at + k);
      at += sz;
    }
    std::vector<Vector> cand;
    if (rows.empty()) {
      cand = basis;
    } else if (!basis.empty()) {
      RationalMatrix a(rows.size(), basis.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c) a(r, c) = basis[c][rows[r]];
      for (const auto& z : kernel_basis(a)) {
        Vector v(total.dim(d));
        for (std::size_t c = 0; c < basis.size(); ++c)
          if (!z[c].is_zero())
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += z[c] * basis[c][i];
        cand.push_back(std::move(v));
      }
    }
    for (const auto& f : mg.add_degree(d, cand)) gens.push_back(m.decode(f, d));
  }
  ZLattice out(m.graph_ptr(), m.ambients(), std::move(gens), cap);
  for (const auto& g : out.generators())
    if (g.degree > cap - saturation_window) out.saturated = false;
  return out;
}

bool verma_flag_criterion(const Sheaf& sheaf, Direction d, int cap, std::vector<std::string>* failures) {
  bool ok = true;
  const FlabbyReport fl = is_flabby_up_to(sheaf, d, cap);
  if (!fl.ok) {
    ok = false;
    if (failures) failures->insert(failures->end(), fl.failures.begin(), fl.failures.end());
  }
  const CostalkMode mode = d == Direction::Up ? CostalkMode::Down : CostalkMode::Up;
  for (std::size_t x = 0; x < sheaf.graph().vertex_count(); ++x) {
    if (sheaf.stalk(x).rank() == 0) continue;
    if (!costalk(sheaf, x, mode, cap).free) {
      ok = false;
      if (failures) failures->push_back("costalk at " + sheaf.graph().vertex(x).name + " is not free");
    }
  }
  return ok;
}

VermaFlagReport verma_flag_check(const ZLattice& m, Direction d) {
  VermaFlagReport rep;
  const OpenFamily fam = open_subgraphs(m.graph(), d);
  rep.open_sets = fam.sets.size();
  for (const auto& sel : fam.sets) {
    if (!is_graded_free(project_open(m, sel, d))) {
      rep.direct = false;
      rep.failures.push_back("M^I is not free for I = " + vertex_set_name(m.graph(), sel.vertices));
    }
  }
  try {
    rep.criterion = verma_flag_criterion(localize(m), d, m.degree_cap(), &rep.failures);
  } catch (const std::domain_error& e) {
    rep.criterion = false;
    rep.failures.emplace_back(e.what());
  }
  return rep;
}

namespace {

int multiplicity(Polynomial p, const LinearForm& l, int limit) {
  if (p.is_zero()) return limit;
  int k = 0;
  while (k < limit) {
    auto q = divide_by_linear(p, l);
    if (!q) break;
    p = std::move(*q);
    ++k;
  }
  return k;
}

Polynomial power(const LinearForm& l, int k) {
  Polynomial out(1);
  for (int i = 0; i < k; ++i) out = out * l.as_polynomial();
  return out;
}

}  // namespace

ZLattice dualize(const ZLattice& input) {
  const ZLattice m = minimized(input);
  const MomentGraph& g = m.graph();
  std::size_t total_rank = 0;
  for (const auto& a : m.ambients()) total_rank += a.rank();
  if (m.generators().size() != total_rank || !is_graded_free(m)) {
    throw std::invalid_argument(
        "dualize: the lattice must be graded free of full rank (a Verma flag is required)");
  }
  const std::size_t n = total_rank;
  std::vector<int> delta;
  std::vector<std::size_t> owner;
  for (std::size_t x = 0; x < g.vertex_count(); ++x)
    for (int s : m.ambient(x).shifts()) {
      delta.push_back(s);
      owner.push_back(x);
    }
  PolyMatrix gm(n, std::vector<Polynomial>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const auto flat = flatten(m.generators()[k].parts);
    for (std::size_t i = 0; i < n; ++i) gm[i][k] = flat[i];
  }
  const Polynomial det = determinant(gm);
  if (det.is_zero()) throw std::invalid_argument("dualize: generators are not linearly independent");

  // det = c * product of edge labels; other factors are not expected.
  std::vector<LinearForm> labels;
  for (const auto& e : g.edges()) {
    const LinearForm p = e.label.primitive();
    if (std::none_of(labels.begin(), labels.end(), [&](const LinearForm& l) { return l.proportional_to(p); }))
      labels.push_back(p);
  }
  std::vector<int> exps(labels.size(), 0);
  Polynomial rest = det;
  for (std::size_t l = 0; l < labels.size(); ++l) {
    while (auto q = divide_by_linear(rest, labels[l])) {
      rest = std::move(*q);
      ++exps[l];
    }
  }
  if (rest.degree().value_or(0) != 0) throw std::domain_error("dualize: determinant has a factor that is not an edge label");
  const Rational unit = rest.coefficient(Monomial());

  PolyMatrix cof(n, std::vector<Polynomial>(n));  // cof[i][k]: cofactor of entry (i, k)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      PolyMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != k) row.push_back(gm[r][c]);
        minor.push_back(std::move(row));
      }
      Polynomial d = determinant(std::move(minor));
      cof[i][k] = (i + k) % 2 == 0 ? d : -d;
    }

  // Coordinate i of the dual is rescaled by c_i, the least product of labels
  // that clears the denominators of column i of the inverse.
  std::vector<Polynomial> scale(n);
  std::vector<int> scale_degree(n, 0);
  std::vector<std::vector<Polynomial>> entries(n, std::vector<Polynomial>(n));  // [k][i]
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial c(1);
    std::vector<int> need(labels.size(), 0);
    for (std::size_t l = 0; l < labels.size(); ++l) {
      for (std::size_t k = 0; k < n; ++k)
        need[l] = std::max(need[l], exps[l] - multiplicity(cof[i][k], labels[l], exps[l]));
      c = c * power(labels[l], need[l]);
      scale_degree[i] += 2 * need[l];
    }
    scale[i] = c;
    for (std::size_t k = 0; k < n; ++k) {
      Polynomial p = cof[i][k] * c;
      for (std::size_t l = 0; l < labels.size(); ++l)
        for (int r = 0; r < exps[l]; ++r) {
          auto q = divide_by_linear(p, labels[l]);
          if (!q) throw std::logic_error("dualize: denominator not cleared");
          p = std::move(*q);
        }
      entries[k][i] = p * (Rational(1) / unit);
    }
  }

  std::vector<std::vector<int>> dual_shifts(g.vertex_count());
  for (std::size_t i = 0; i < n; ++i) dual_shifts[owner[i]].push_back(-delta[i] - scale_degree[i]);
  std::vector<GradedFree> amb;
  for (auto& s : dual_shifts) amb.emplace_back(g.variable_count(), s);

  std::vector<LatticeElement> gens;
  int top = 0;
  int top_input = 0;
  for (std::size_t k = 0; k < n; ++k) {
    LatticeElement e;
    e.degree = -m.generators()[k].degree;
    e.parts.resize(g.vertex_count());
    for (std::size_t i = 0; i < n; ++i) e.parts[owner[i]].push_back(entries[k][i]);
    top = k == 0 ? e.degree : std::max(top, e.degree);
    top_input = k == 0 ? -e.degree : std::max(top_input, -e.degree);
    gens.push_back(std::move(e));
  }
  const int headroom = std::max(0, m.degree_cap() - top_input);
  auto reversed = std::make_shared<const MomentGraph>(reverse_order(g));
  return ZLattice(std::move(reversed), std::move(amb), std::move(gens), top + headroom);
}

std::string ShiftMatchReport::verdict() const {
  return shift ? "match(" + std::to_string(*shift) + ")" : "no match";
}

ShiftMatchReport compare_graded(std::vector<std::string> names, std::vector<QPoly> a, std::vector<QPoly> b) {
  if (a.size() != b.size() || names.size() != a.size()) throw std::invalid_argument("compare: size mismatch");
  ShiftMatchReport rep;
  rep.vertices = std::move(names);
  rep.a_ranks = std::move(a);
  rep.b_ranks = std::move(b);
  std::optional<int> half;
  bool possible = true;
  for (std::size_t x = 0; x < rep.a_ranks.size() && !half; ++x) {
    const bool za = rep.a_ranks[x].is_zero();
    const bool zb = rep.b_ranks[x].is_zero();
    if (za && zb) continue;
    if (za != zb) {
      possible = false;
      break;
    }
    half = rep.b_ranks[x].low_degree() - rep.a_ranks[x].low_degree();
  }
  if (!half && possible) half = 0;
  bool all = possible;
  for (std::size_t x = 0; x < rep.a_ranks.size(); ++x) {
    const bool ok = possible && rep.a_ranks[x].shifted(*half) == rep.b_ranks[x];
    rep.vertex_match.push_back(ok);
    all = all && ok;
  }
  if (all) rep.shift = 2 * *half;
  return rep;
}

ShiftMatchReport compare_shifted(const Sheaf& a, const Sheaf& b, const std::optional<std::vector<std::size_t>>& relabel) {
  const std::size_t n = a.graph().vertex_count();
  if (b.graph().vertex_count() != n || (relabel && relabel->size() != n))
    throw std::invalid_argument("compare_shifted: graphs of different size");
  std::vector<std::string> names;
  std::vector<QPoly> ra;
  std::vector<QPoly> rb;
  for (std::size_t x = 0; x < n; ++x) {
    names.push_back(a.graph().vertex(x).name);
    ra.push_back(stalk_rank_poly(a, x));
    rb.push_back(stalk_rank_poly(b, relabel ? (*relabel)[x] : x));
  }
  return compare_graded(std::move(names), std::move(ra), std::move(rb));
}

QPoly generator_poly(const GradedDims& d) {
  QPoly q;
  for (int g : d.generator_degrees) q.add(g / 2, 1);
  return q;
}

HomComparison verify_hom_correspondence(const Sheaf& up, std::size_t y, const Sheaf& down, std::size_t w0y, int cap) {
  HomComparison out;
  int top = 0;
  for (int s : up.stalk(y).shifts()) top = std::max(top, s);
  out.to_skyscraper = hom_to_skyscraper(up, y, -top, 0);
  out.from_skyscraper = hom_from_skyscraper(down, w0y, cap);
  out.total_to = out.to_skyscraper.generator_degrees.size();
  out.total_from = out.from_skyscraper.generator_degrees.size();
  const auto rep = compare_graded({up.graph().vertex(y).name}, {generator_poly(out.to_skyscraper)},
                                  {generator_poly(out.from_skyscraper)});
  out.shift = rep.shift;
  return out;
}

}  // namespace msh
