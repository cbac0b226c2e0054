#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "msh/fixtures.hpp"
#include "msh/tools/commands.hpp"

namespace msh::tools {

namespace {

int top_length(const MomentGraph& g) {
  int top = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) top = std::max(top, g.vertex(v).length);
  return top;
}

CheckResult skipped(std::string name, std::size_t vertices) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::Skipped;
  r.summary = std::to_string(vertices) + " vertices, lattice checks stop at " + std::to_string(kLatticeSuiteVertexLimit);
  return r;
}

CheckResult finish(CheckResult r, bool ok, std::string summary) {
  r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  r.summary = std::move(summary);
  return r;
}

Json sizes(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

std::string count_text(std::size_t good, std::size_t total, const char* what) {
  return std::to_string(good) + "/" + std::to_string(total) + " " + what;
}

// Runs a check and turns an escaping exception into a failed result.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    CheckResult r;
    r.name = name;
    r.status = CheckStatus::Fail;
    r.summary = std::string("error: ") + e.what();
    return r;
  }
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

bool SuiteReport::pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failed(); });
}

Json SuiteReport::to_json() const {
  Json out;
  out["pass"] = pass();
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["status"] = to_string(c.status);
    j["summary"] = c.summary;
    j["data"] = c.data;
    arr.push_back(std::move(j));
  }
  out["checks"] = std::move(arr);
  return out;
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    std::string tag = to_string(c.status);
    std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char ch) { return std::toupper(ch); });
    os << tag << "  " << c.name << ": " << c.summary << '\n';
  }
  os << (pass() ? "all checks passed" : "verification FAILED") << '\n';
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gkm",        "structure-algebra", "kl-bmp",       "f-projective", "pullback",
                                              "adjunction", "verma-flag",        "self-duality", "hom"};
  return names;
}

CheckResult check_gkm(const MomentGraph& g) {
  CheckResult r;
  r.name = "gkm";
  const GkmReport rep = gkm_check(g);
  r.data["ok"] = rep.ok;
  if (rep.ok) return finish(std::move(r), true, std::to_string(g.vertex_count()) + " vertices, labels pairwise independent");
  const auto& e1 = g.edge(rep.witness.first);
  const auto& e2 = g.edge(rep.witness.second);
  const std::string v = g.vertex(rep.vertex).name;
  const std::string n1 = g.vertex(g.other_end(rep.witness.first, rep.vertex)).name;
  const std::string n2 = g.vertex(g.other_end(rep.witness.second, rep.vertex)).name;
  r.data["vertex"] = v;
  r.data["edges"] = Json::array({v + " - " + n1, v + " - " + n2});
  const PolyRing ring(g.variable_count());
  return finish(std::move(r), false,
                "labels " + e1.label.str(ring) + " and " + e2.label.str(ring) + " at " + v + " are proportional");
}

CheckResult check_structure_algebra(const Block& b, int max_degree) {
  CheckResult r;
  r.name = "structure-algebra";
  const auto g = std::shared_ptr<const MomentGraph>(std::shared_ptr<const Block>(), &b.graph);
  const StructureAlgebra z = structure_algebra(g, max_degree);
  // Z is free over S on one generator per vertex, in degree twice its length.
  std::vector<int> shifts;
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v) shifts.push_back(2 * b.graph.vertex(v).length);
  std::vector<std::size_t> want;
  for (int d = 0; d <= max_degree; d += 2) want.push_back(free_dimension(b.graph.variable_count(), shifts, d));
  r.data["dims"] = sizes(z.dims);
  r.data["expected"] = sizes(want);
  std::ostringstream os;
  os << "dims";
  for (auto d : z.dims) os << ' ' << d;
  os << " in degrees 0.." << max_degree;
  return finish(std::move(r), z.dims == want, os.str() + (z.dims == want ? "" : ", expected a free module on the vertex lengths"));
}

CheckResult check_kl_bmp(const std::shared_ptr<const Block>& b, Direction d, const DegreeBoundPolicy& policy,
                         std::ostream* log) {
  CheckResult r;
  r.name = "kl-bmp " + to_string(d);
  const KLTable table(b->group);
  std::vector<BMPResult> results;
  for (std::size_t w = 0; w < b->graph.vertex_count(); ++w) {
    results.push_back(bmp(b, d, w, policy, &table));
    if (log) *log << "  bmp " << to_string(d) << " " << b->graph.vertex(w).name << '\n';
  }
  const MultiplicityTable t = multiplicity_table(b, d, results);
  std::size_t good = 0;
  std::size_t total = 0;
  Json mismatches = Json::array();
  for (std::size_t w = 0; w < t.names.size(); ++w)
    for (std::size_t x = 0; x < t.names.size(); ++x) {
      ++total;
      bool ok = t.ranks[w][x] == t.oracle[w][x];
      if (d == Direction::Down) ok = ok && t.graded[w][x] == kl_polynomial(*b, table, w, x);
      if (ok) {
        ++good;
      } else {
        Json m;
        m["base"] = t.names[w];
        m["vertex"] = t.names[x];
        m["rank"] = t.ranks[w][x];
        m["oracle"] = t.oracle[w][x];
        mismatches.push_back(std::move(m));
      }
    }
  r.data["pairs"] = total;
  r.data["saturated"] = t.saturated;
  r.data["mismatches"] = std::move(mismatches);
  std::string summary = count_text(good, total, "stalks match the oracle");
  if (d == Direction::Down) summary += " (graded)";
  if (!t.saturated) summary += ", some bases unsaturated";
  return finish(std::move(r), good == total && t.saturated, summary);
}

CheckResult check_f_projective(const std::shared_ptr<const Block>& b, const DegreeBoundPolicy& policy,
                               std::ostream* log) {
  CheckResult r;
  r.name = "f-projective";
  std::size_t good = 0;
  std::size_t total = 0;
  Json failures = Json::array();
  for (Direction d : {Direction::Up, Direction::Down})
    for (std::size_t w = 0; w < b->graph.vertex_count(); ++w) {
      DegreeBoundPolicy p = policy;
      p.oracle_crosscheck = false;
      const BMPResult res = bmp(b, d, w, p);
      const FProjectiveReport rep = check_f_projective(res.sheaf, d, res.degree_cap);
      ++total;
      if (rep.ok()) {
        ++good;
      } else {
        Json f;
        f["direction"] = to_string(d);
        f["base"] = b->graph.vertex(w).name;
        f["reason"] = rep.failures.empty() ? rep.flabby.failures.front() : rep.failures.front();
        failures.push_back(std::move(f));
      }
      if (log) *log << "  f-projective " << to_string(d) << " " << b->graph.vertex(w).name << '\n';
    }
  r.data["failures"] = std::move(failures);
  return finish(std::move(r), good == total, count_text(good, total, "BMP sheaves flabby, generated, upward iso"));
}

CheckResult check_pullback(const std::shared_ptr<const Block>& b, const DegreeBoundPolicy& policy) {
  CheckResult r;
  r.name = "pullback";
  const PullbackReport rep = verify_w0_pullback(b, policy);
  std::size_t good = 0;
  Json failures = Json::array();
  for (const auto& c : rep.comparisons) {
    if (c.stalks_equal && c.edges_equal) {
      ++good;
    } else {
      failures.push_back(b->graph.vertex(c.base).name);
    }
  }
  r.data["failures"] = std::move(failures);
  return finish(std::move(r), rep.ok && good == rep.comparisons.size(),
                count_text(good, rep.comparisons.size(), "bases with B-down(x) = w0^* B-up(w0 x)"));
}

CheckResult check_adjunction(const std::shared_ptr<const Block>& b, int max_degree) {
  if (b->graph.vertex_count() > kLatticeSuiteVertexLimit) return skipped("adjunction", b->graph.vertex_count());
  CheckResult r;
  r.name = "adjunction";
  const OpenFamily opens = open_subgraphs(b->graph, Direction::Up);
  std::size_t good = 0;
  std::size_t total = 0;
  Json failures = Json::array();
  for (std::size_t x = 0; x < b->graph.vertex_count(); ++x) {
    const Sheaf s = bmp(b, Direction::Up, x).sheaf;
    const ZLattice m = gamma(s);
    const Sheaf l = localize(m);
    ++total;
    if (same_shift_data(l, s)) {
      ++good;
    } else {
      failures.push_back("L(Gamma(B(" + b->graph.vertex(x).name + "))) differs from B");
    }
    ++total;
    if (gamma(l).dims(0, max_degree) == m.dims(0, max_degree)) {
      ++good;
    } else {
      failures.push_back("Gamma L Gamma(B(" + b->graph.vertex(x).name + ")) dims differ from Gamma");
    }
    for (const auto& sel : opens.sets) {
      ++total;
      const ZLattice p = project_open(m, sel, Direction::Up);
      if (p.notes.empty() && p.dims(0, max_degree) == section_dims(l, sel, max_degree)) {
        ++good;
      } else {
        failures.push_back("B(" + b->graph.vertex(x).name + ") on " + vertex_set_name(b->graph, sel.vertices));
      }
    }
  }
  r.data["open_sets"] = opens.sets.size();
  r.data["max_degree"] = max_degree;
  r.data["failures"] = std::move(failures);
  return finish(std::move(r), good == total, count_text(good, total, "localizations, Gamma L Gamma and open restrictions agree"));
}

CheckResult check_verma_flag(const std::shared_ptr<const Block>& b) {
  if (b->graph.vertex_count() > kLatticeSuiteVertexLimit) return skipped("verma-flag", b->graph.vertex_count());
  CheckResult r;
  r.name = "verma-flag";
  std::size_t good = 0;
  Json verdicts = Json::array();
  for (std::size_t x = 0; x < b->graph.vertex_count(); ++x) {
    const VermaFlagReport rep = verma_flag_check(gamma(bmp(b, Direction::Up, x).sheaf), Direction::Up);
    Json v;
    v["base"] = b->graph.vertex(x).name;
    v["direct"] = rep.direct;
    v["criterion"] = rep.criterion;
    v["open_sets"] = rep.open_sets;
    verdicts.push_back(std::move(v));
    if (rep.direct && rep.criterion) ++good;
  }
  r.data["verdicts"] = std::move(verdicts);
  return finish(std::move(r), good == b->graph.vertex_count(),
                count_text(good, b->graph.vertex_count(), "Gamma(B) with a Verma flag by both tests"));
}

CheckResult check_self_duality(const std::shared_ptr<const Block>& b) {
  if (b->graph.vertex_count() > kLatticeSuiteVertexLimit) return skipped("self-duality", b->graph.vertex_count());
  CheckResult r;
  r.name = "self-duality";
  const int top = top_length(b->graph);
  std::size_t good = 0;
  Json shifts = Json::array();
  for (std::size_t x = 0; x < b->graph.vertex_count(); ++x) {
    const Sheaf a = localize(dualize(gamma(bmp(b, Direction::Up, x).sheaf)));
    const ShiftMatchReport rep = compare_shifted(a, bmp(b, Direction::Down, b->w0_map[x]).sheaf, b->w0_map);
    const int expected = 2 * top - 2 * b->graph.vertex(x).length;
    Json s;
    s["base"] = b->graph.vertex(x).name;
    s["verdict"] = rep.verdict();
    shifts.push_back(std::move(s));
    if (rep.matched() && *rep.shift == expected) ++good;
  }
  r.data["shifts"] = std::move(shifts);
  return finish(std::move(r), good == b->graph.vertex_count(),
                count_text(good, b->graph.vertex_count(), "duals match B-down(w0 x) shifted by 2l(w0) - 2l(x)"));
}

CheckResult check_hom(const std::shared_ptr<const Block>& b) {
  CheckResult r;
  r.name = "hom";
  const std::size_t n = b->graph.vertex_count();
  const int top = top_length(b->graph);
  std::vector<Sheaf> up;
  std::vector<Sheaf> down;
  for (std::size_t x = 0; x < n; ++x) {
    up.push_back(bmp(b, Direction::Up, x).sheaf);
    down.push_back(bmp(b, Direction::Down, x).sheaf);
  }
  // Large blocks only test the pairs with y = w0.
  std::vector<std::size_t> ys;
  if (n <= kLatticeSuiteVertexLimit) {
    for (std::size_t y = 0; y < n; ++y) ys.push_back(y);
  } else {
    ys.push_back(b->w0_map[0]);
  }
  std::size_t good = 0;
  std::size_t total = 0;
  std::size_t nonzero = 0;
  Json failures = Json::array();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y : ys) {
      ++total;
      const HomComparison c = verify_hom_correspondence(up[x], y, down[b->w0_map[x]], b->w0_map[y], 20);
      const bool ok = c.matched() && c.total_to == c.total_from &&
                      (c.total_to == 0 || *c.shift == 2 * top - 2 * b->graph.vertex(x).length);
      if (c.total_to > 0) ++nonzero;
      if (ok) {
        ++good;
      } else {
        failures.push_back("x=" + b->graph.vertex(x).name + " y=" + b->graph.vertex(y).name);
      }
    }
  r.data["pairs"] = total;
  r.data["nonzero_pairs"] = nonzero;
  r.data["failures"] = std::move(failures);
  return finish(std::move(r), good == total, count_text(good, total, "pairs with matching Hom spaces"));
}

CheckResult check_hom_pair(const std::shared_ptr<const Block>& b, const std::string& w0x_name) {
  CheckResult r;
  r.name = "hom " + w0x_name;
  const auto w = b->graph.find_vertex(w0x_name);
  if (!w) throw UsageError("unknown vertex '" + w0x_name + "'");
  const std::size_t x = static_cast<std::size_t>(
      std::find(b->w0_map.begin(), b->w0_map.end(), *w) - b->w0_map.begin());
  const std::size_t y = b->w0_map[0];
  const HomComparison c =
      verify_hom_correspondence(bmp(b, Direction::Up, x).sheaf, y, bmp(b, Direction::Down, *w).sheaf, 0, 20);
  r.data["to_skyscraper"] = to_json(c.to_skyscraper);
  r.data["from_skyscraper"] = to_json(c.from_skyscraper);
  r.data["total_to"] = c.total_to;
  r.data["total_from"] = c.total_from;
  std::string summary = "totals " + std::to_string(c.total_to) + " and " + std::to_string(c.total_from);
  if (c.shift) summary += ", shift " + std::to_string(*c.shift);
  return finish(std::move(r), c.matched() && c.total_to == c.total_from && c.total_to > 0, summary);
}

SuiteReport run_suite(const JobConfig& c, std::ostream& log) {
  const auto& names = suite_names();
  if (c.suite != "all" && std::find(names.begin(), names.end(), c.suite) == names.end())
    throw UsageError("unknown suite '" + c.suite + "'");
  c.policy.validate();
  SuiteReport rep;
  if (!c.fixture.empty()) {
    if (c.fixture != "double-label") throw UsageError("unknown fixture '" + c.fixture + "'");
    if (c.suite != "all" && c.suite != "gkm") throw UsageError("fixtures only support the gkm suite");
    rep.checks.push_back(check_gkm(double_label_graph()));
    return rep;
  }
  const auto b = make_block(c);
  auto want = [&](const char* s) { return c.suite == "all" || c.suite == s; };
  auto run = [&](const std::string& name, const std::function<CheckResult()>& f) {
    log << "[verify] " << name << '\n';
    rep.checks.push_back(guarded(name, f));
  };
  if (want("gkm")) run("gkm", [&] { return check_gkm(b->graph); });
  if (want("structure-algebra")) run("structure-algebra", [&] { return check_structure_algebra(*b); });
  if (want("kl-bmp"))
    for (Direction d : {Direction::Down, Direction::Up})
      run("kl-bmp " + to_string(d), [&] { return check_kl_bmp(b, d, c.policy, &log); });
  if (want("f-projective")) run("f-projective", [&] { return check_f_projective(b, c.policy, &log); });
  if (want("pullback")) run("pullback", [&] { return check_pullback(b, c.policy); });
  if (want("adjunction")) run("adjunction", [&] { return check_adjunction(b); });
  if (want("verma-flag")) run("verma-flag", [&] { return check_verma_flag(b); });
  if (want("self-duality")) run("self-duality", [&] { return check_self_duality(b); });
  if (want("hom")) run("hom", [&] { return check_hom(b); });
  return rep;
}

}  // namespace msh::tools
