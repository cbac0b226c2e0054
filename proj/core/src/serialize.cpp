#include "msh/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace msh {

namespace {

std::string exponent_key(Monomial m, int nvars) {
  std::string key;
  for (int i = 0; i < nvars; ++i) {
    if (i) key += ',';
    key += std::to_string(m.exponent(i));
  }
  return key;
}

Monomial parse_key(const std::string& key, int nvars) {
  std::vector<int> exps;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) exps.push_back(std::stoi(part));
  if (static_cast<int>(exps.size()) != nvars) throw std::invalid_argument("monomial key " + key + " has wrong length");
  return Monomial::from_exponents(exps);
}

Json matrix_to_json(const PolyMatrix& m, int nvars) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(to_json(p, nvars));
    rows.push_back(std::move(r));
  }
  return rows;
}

PolyMatrix matrix_from_json(const Json& j, int nvars) {
  PolyMatrix m;
  for (const auto& row : j) {
    std::vector<Polynomial> r;
    for (const auto& p : row) r.push_back(polynomial_from_json(p, nvars));
    m.push_back(std::move(r));
  }
  return m;
}

Json label_to_json(const LinearForm& l) {
  Json out = Json::array();
  for (const auto& c : l.coefficients()) {
    if (c.is_integer()) out.push_back(c.to_int64());
    else out.push_back(c.str());
  }
  return out;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return Rational::parse(j.get<std::string>());
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Json to_json(const Polynomial& p, int variable_count) {
  Json out = Json::object();
  for (const auto& [m, c] : p.terms()) out[exponent_key(m, variable_count)] = c.str();
  return out;
}

Polynomial polynomial_from_json(const Json& j, int variable_count) {
  Polynomial p;
  for (const auto& [key, value] : j.items()) p.add_term(parse_key(key, variable_count), rational_from_json(value));
  return p;
}

Json to_json(const QPoly& q) {
  Json coeffs = Json::object();
  for (const auto& [e, c] : q.coefficients()) coeffs[std::to_string(e)] = c;
  Json out;
  out["text"] = q.str();
  out["coefficients"] = std::move(coeffs);
  return out;
}

Json weight_to_json(const Weight& w) {
  Json out = Json::array();
  for (const auto& c : w) out.push_back(c.str());
  return out;
}

Json to_json(const MomentGraph& g) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "moment_graph";
  out["variables"] = g.variable_count();
  out["direction"] = to_string(g.direction());
  Json vs = Json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& gv = g.vertex(v);
    Json jv;
    jv["index"] = v;
    jv["name"] = gv.name;
    jv["weight"] = weight_to_json(gv.weight);
    jv["length"] = gv.length;
    jv["representative"] = gv.representative;
    vs.push_back(std::move(jv));
  }
  out["vertices"] = std::move(vs);
  Json es = Json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ge = g.edge(e);
    Json je;
    je["index"] = e;
    je["a"] = ge.a;
    je["b"] = ge.b;
    je["label"] = label_to_json(ge.label);
    es.push_back(std::move(je));
  }
  out["edges"] = std::move(es);
  Json cover = Json::array();
  for (const auto& [a, b] : g.cover_relations()) cover.push_back(Json::array({a, b}));
  out["cover_relations"] = std::move(cover);
  return out;
}

MomentGraph graph_from_json(const Json& j) {
  const int nvars = j.at("variables").get<int>();
  std::vector<GraphVertex> vs;
  for (const auto& jv : j.at("vertices")) {
    GraphVertex v;
    v.name = jv.at("name").get<std::string>();
    for (const auto& c : jv.at("weight")) v.weight.push_back(rational_from_json(c));
    v.length = jv.at("length").get<int>();
    v.representative = jv.at("representative").get<std::size_t>();
    vs.push_back(std::move(v));
  }
  std::vector<GraphEdge> es;
  for (const auto& je : j.at("edges")) {
    std::vector<Rational> coeffs;
    for (const auto& c : je.at("label")) coeffs.push_back(rational_from_json(c));
    es.push_back({je.at("a").get<std::size_t>(), je.at("b").get<std::size_t>(), LinearForm(std::move(coeffs))});
  }
  const std::size_t n = vs.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) leq[v][v] = true;
  for (const auto& c : j.at("cover_relations")) leq[c.at(0).get<std::size_t>()][c.at(1).get<std::size_t>()] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (leq[a][k])
        for (std::size_t b = 0; b < n; ++b)
          if (leq[k][b]) leq[a][b] = true;
  const auto dir = parse_direction(j.at("direction").get<std::string>());
  if (!dir) throw std::invalid_argument("graph document: unknown direction");
  return MomentGraph(nvars, std::move(vs), std::move(es), std::move(leq), *dir);
}

std::string to_dot(const MomentGraph& g) {
  std::ostringstream os;
  os << "graph moment_graph {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    os << "  v" << v << " [label=\"" << dot_escape(g.vertex(v).name) << "\"];\n";
  const PolyRing ring(g.variable_count());
  for (const auto& e : g.edges())
    os << "  v" << e.a << " -- v" << e.b << " [label=\"" << dot_escape(e.label.str(ring)) << "\"];\n";
  os << "}\n";
  return os.str();
}

Json to_json(const Sheaf& s) {
  const MomentGraph& g = s.graph();
  const int nvars = g.variable_count();
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "sheaf";
  out["graph"] = to_json(g);
  Json stalks = Json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Json js;
    js["vertex"] = g.vertex(v).name;
    js["shifts"] = s.stalk(v).shifts();
    stalks.push_back(std::move(js));
  }
  out["stalks"] = std::move(stalks);
  Json edges = Json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    Json je;
    je["edge"] = e;
    je["shifts"] = s.edge_module(e).shifts();
    je["restriction_from_a"] = matrix_to_json(s.restrictions()[e][0], nvars);
    je["restriction_from_b"] = matrix_to_json(s.restrictions()[e][1], nvars);
    edges.push_back(std::move(je));
  }
  out["edges"] = std::move(edges);
  return out;
}

Sheaf sheaf_from_json(const Json& j) {
  auto g = std::make_shared<const MomentGraph>(graph_from_json(j.at("graph")));
  const int nvars = g->variable_count();
  std::vector<std::vector<int>> stalks;
  for (const auto& js : j.at("stalks")) stalks.push_back(js.at("shifts").get<std::vector<int>>());
  std::vector<std::vector<int>> edges;
  std::vector<std::array<PolyMatrix, 2>> rho;
  for (const auto& je : j.at("edges")) {
    edges.push_back(je.at("shifts").get<std::vector<int>>());
    rho.push_back({matrix_from_json(je.at("restriction_from_a"), nvars), matrix_from_json(je.at("restriction_from_b"), nvars)});
  }
  return Sheaf(std::move(g), std::move(stalks), std::move(edges), std::move(rho));
}

Json to_json(const BMPResult& r) {
  const MomentGraph& g = r.sheaf.graph();
  Json out = to_json(r.sheaf);
  out["kind"] = "bmp_sheaf";
  out["base"] = g.vertex(r.base).name;
  out["direction"] = to_string(r.direction);
  out["degree_cap"] = r.degree_cap;
  Json diag = Json::array();
  for (const auto& d : r.diagnostics) {
    Json jd;
    jd["vertex"] = g.vertex(d.vertex).name;
    jd["generator_degrees"] = d.generator_degrees;
    jd["bound"] = d.bound;
    jd["saturated"] = d.saturated;
    if (d.oracle_rank) {
      jd["oracle_rank"] = *d.oracle_rank;
      jd["oracle_match"] = *d.oracle_rank == static_cast<std::int64_t>(r.sheaf.stalk(d.vertex).rank());
    } else {
      jd["oracle_rank"] = nullptr;
      jd["oracle_match"] = nullptr;
    }
    if (d.seconds > 0) jd["seconds"] = d.seconds;
    diag.push_back(std::move(jd));
  }
  Json block;
  block["saturated"] = r.saturated();
  block["oracle_ok"] = r.oracle_ok();
  block["vertices"] = std::move(diag);
  out["diagnostics"] = std::move(block);
  return out;
}

Json to_json(const MultiplicityTable& t) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "multiplicity_table";
  out["direction"] = to_string(t.direction);
  out["rows"] = "base w";
  out["columns"] = "vertex x";
  out["names"] = t.names;
  out["ranks"] = t.ranks;
  Json graded = Json::array();
  for (const auto& row : t.graded) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(q.str());
    graded.push_back(std::move(r));
  }
  out["graded"] = std::move(graded);
  out["oracle"] = t.oracle;
  out["matches_oracle"] = t.matches_oracle();
  out["saturated"] = t.saturated;
  return out;
}

std::string to_csv(const MultiplicityTable& t) {
  std::ostringstream os;
  os << "w\\x";
  for (const auto& n : t.names) os << ',' << n;
  os << '\n';
  for (std::size_t w = 0; w < t.names.size(); ++w) {
    os << t.names[w];
    for (std::size_t x = 0; x < t.names.size(); ++x) os << ',' << t.ranks[w][x];
    os << '\n';
  }
  return os.str();
}

std::string to_text(const MultiplicityTable& t) {
  std::size_t width = 4;
  for (const auto& n : t.names) width = std::max(width, n.size());
  for (const auto& row : t.graded)
    for (const auto& q : row) width = std::max(width, q.str().size());
  auto pad = [&](const std::string& s) { return s + std::string(width + 2 - s.size(), ' '); };
  std::ostringstream os;
  os << "multiplicities (" << to_string(t.direction) << "), rows w, columns x\n";
  os << pad("");
  for (const auto& n : t.names) os << pad(n);
  os << '\n';
  for (std::size_t w = 0; w < t.names.size(); ++w) {
    os << pad(t.names[w]);
    for (std::size_t x = 0; x < t.names.size(); ++x) os << pad(std::to_string(t.ranks[w][x]));
    os << '\n';
  }
  os << "graded\n";
  for (std::size_t w = 0; w < t.names.size(); ++w) {
    os << pad(t.names[w]);
    for (std::size_t x = 0; x < t.names.size(); ++x) os << pad(t.graded[w][x].str());
    os << '\n';
  }
  os << "oracle: " << (t.matches_oracle() ? "match" : "MISMATCH") << ", saturated: " << (t.saturated ? "yes" : "no")
     << '\n';
  return os.str();
}

Json to_json(const ZLattice& m) {
  const MomentGraph& g = m.graph();
  const int nvars = g.variable_count();
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "z_lattice";
  out["ambient_ranks"] = m.ambient_ranks();
  Json shifts = Json::array();
  for (const auto& a : m.ambients()) shifts.push_back(a.shifts());
  out["ambient_shifts"] = std::move(shifts);
  out["degree_cap"] = m.degree_cap();
  out["saturated"] = m.saturated;
  out["notes"] = m.notes;
  Json gens = Json::array();
  for (const auto& gen : m.generators()) {
    Json jg;
    jg["degree"] = gen.degree;
    Json parts = Json::array();
    for (const auto& part : gen.parts) {
      Json p = Json::array();
      for (const auto& c : part) p.push_back(to_json(c, nvars));
      parts.push_back(std::move(p));
    }
    jg["parts"] = std::move(parts);
    gens.push_back(std::move(jg));
  }
  out["generators"] = std::move(gens);
  return out;
}

ZLattice lattice_from_json(const Json& j, std::shared_ptr<const MomentGraph> graph) {
  const int nvars = graph->variable_count();
  std::vector<GradedFree> amb;
  for (const auto& s : j.at("ambient_shifts")) amb.emplace_back(nvars, s.get<std::vector<int>>());
  std::vector<LatticeElement> gens;
  for (const auto& jg : j.at("generators")) {
    LatticeElement e;
    e.degree = jg.at("degree").get<int>();
    for (const auto& part : jg.at("parts")) {
      std::vector<Polynomial> p;
      for (const auto& c : part) p.push_back(polynomial_from_json(c, nvars));
      e.parts.push_back(std::move(p));
    }
    gens.push_back(std::move(e));
  }
  ZLattice out(std::move(graph), std::move(amb), std::move(gens), j.at("degree_cap").get<int>());
  out.saturated = j.at("saturated").get<bool>();
  out.notes = j.at("notes").get<std::vector<std::string>>();
  return out;
}

Json to_json(const ShiftMatchReport& r) {
  Json out;
  out["verdict"] = r.verdict();
  out["shift"] = r.shift ? Json(*r.shift) : Json(nullptr);
  Json rows = Json::array();
  for (std::size_t x = 0; x < r.vertices.size(); ++x) {
    Json row;
    row["vertex"] = r.vertices[x];
    row["a"] = r.a_ranks[x].str();
    row["b"] = r.b_ranks[x].str();
    row["match"] = r.vertex_match[x];
    rows.push_back(std::move(row));
  }
  out["vertices"] = std::move(rows);
  return out;
}

std::string to_text(const ShiftMatchReport& r) {
  std::ostringstream os;
  std::size_t w = 6;
  for (const auto& v : r.vertices) w = std::max(w, v.size());
  std::size_t wa = 1;
  for (const auto& q : r.a_ranks) wa = std::max(wa, q.str().size());
  os << r.verdict() << '\n';
  for (std::size_t x = 0; x < r.vertices.size(); ++x) {
    const std::string a = r.a_ranks[x].str();
    os << r.vertices[x] << std::string(w + 2 - r.vertices[x].size(), ' ') << a << std::string(wa + 2 - a.size(), ' ')
       << r.b_ranks[x].str() << (r.vertex_match[x] ? "" : "  *") << '\n';
  }
  return os.str();
}

Json to_json(const GradedDims& d) {
  Json out;
  out["min_degree"] = d.min_degree;
  out["dims"] = d.dims;
  out["generator_degrees"] = d.generator_degrees;
  out["free"] = d.free;
  return out;
}

}  // namespace msh
