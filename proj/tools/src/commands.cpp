#include "msh/tools/commands.hpp"

#include <ostream>
#include <sstream>

#include "msh/fixtures.hpp"

namespace msh::tools {

namespace {

Json block_json(const Block& b) {
  Json out;
  out["root_system"] = b.root_system.name();
  out["lambda"] = weight_to_json(b.lambda);
  out["regular"] = b.regular();
  out["vertices"] = b.graph.vertex_count();
  return out;
}

Json document_header(const JobConfig& c, const char* kind) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = kind;
  Json cfg = to_json(c);
  cfg.erase("output");
  out["config"] = std::move(cfg);
  return out;
}

std::vector<std::size_t> parse_bases(const MomentGraph& g, const std::string& text) {
  std::vector<std::size_t> out;
  if (text == "all") {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto v = g.find_vertex(name);
    if (!v) throw UsageError("unknown vertex '" + name + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw UsageError("no base vertex given");
  return out;
}

std::string shifts_text(const std::vector<int>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
  return out + "]";
}

void require_format(const JobConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (c.format == f) return;
  throw UsageError("format '" + c.format + "' is not available for this command");
}

}  // namespace

Json to_json(const JobConfig& c) {
  Json out;
  out["type"] = c.type;
  out["rank"] = c.rank;
  out["lambda"] = c.lambda;
  out["direction"] = to_string(c.direction);
  out["base"] = c.base;
  Json p;
  p["slope"] = c.policy.slope;
  p["offset"] = c.policy.offset;
  p["saturation_window"] = c.policy.saturation_window;
  p["oracle_crosscheck"] = c.policy.oracle_crosscheck;
  p["extension_variant"] = c.policy.extension_variant;
  p["record_timing"] = c.policy.record_timing;
  out["policy"] = std::move(p);
  out["format"] = c.format;
  out["output"] = c.output;
  out["suite"] = c.suite;
  out["fixture"] = c.fixture;
  return out;
}

JobConfig config_from_json(const Json& j) {
  JobConfig c;
  c.type = j.at("type").get<std::string>();
  c.rank = j.at("rank").get<int>();
  c.lambda = j.at("lambda").get<std::string>();
  const auto d = parse_direction(j.at("direction").get<std::string>());
  if (!d) throw UsageError("unknown direction");
  c.direction = *d;
  c.base = j.at("base").get<std::string>();
  const Json& p = j.at("policy");
  c.policy.slope = p.at("slope").get<int>();
  c.policy.offset = p.at("offset").get<int>();
  c.policy.saturation_window = p.at("saturation_window").get<int>();
  c.policy.oracle_crosscheck = p.at("oracle_crosscheck").get<bool>();
  c.policy.extension_variant = p.at("extension_variant").get<int>();
  c.policy.record_timing = p.at("record_timing").get<bool>();
  c.format = j.at("format").get<std::string>();
  c.output = j.at("output").get<std::string>();
  c.suite = j.at("suite").get<std::string>();
  c.fixture = j.at("fixture").get<std::string>();
  return c;
}

std::shared_ptr<const Block> make_block(const JobConfig& c) {
  const auto t = parse_cartan_type(c.type);
  if (!t) throw UsageError("unsupported Cartan type '" + c.type + "'");
  try {
    const RootSystem rs = RootSystem::build(*t, c.rank);
    const Weight lambda = c.lambda.empty() ? Weight(c.rank, Rational(-2)) : parse_weight(c.lambda);
    if (static_cast<int>(lambda.size()) != c.rank) throw UsageError("lambda needs " + std::to_string(c.rank) + " coordinates");
    return build_block(rs, lambda);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

CommandResult cmd_graph(const JobConfig& c, std::ostream& log) {
  require_format(c, {"text", "json", "dot"});
  std::shared_ptr<const Block> b;
  std::shared_ptr<const MomentGraph> g;
  if (c.fixture == "double-label") {
    g = std::make_shared<const MomentGraph>(double_label_graph());
  } else if (!c.fixture.empty()) {
    throw UsageError("unknown fixture '" + c.fixture + "'");
  } else {
    b = make_block(c);
    g = std::shared_ptr<const MomentGraph>(b, &b->graph);
  }
  log << "graph: " << g->vertex_count() << " vertices, " << g->edge_count() << " edges\n";
  CommandResult r;
  if (c.format == "dot") {
    r.document = to_dot(*g);
  } else if (c.format == "json") {
    Json doc = document_header(c, "graph");
    if (b) doc["block"] = block_json(*b);
    doc["graph"] = to_json(*g);
    r.document = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    if (b) os << "block " << b->root_system.name() << " lambda " << format_weight(b->lambda) << ": ";
    os << g->vertex_count() << " vertices, " << g->edge_count() << " edges\n";
    for (std::size_t v = 0; v < g->vertex_count(); ++v) {
      const auto& gv = g->vertex(v);
      os << "  " << gv.name << "  length " << gv.length << "  weight " << format_weight(gv.weight) << '\n';
    }
    const PolyRing ring(g->variable_count());
    for (const auto& e : g->edges())
      os << "  " << g->vertex(e.a).name << " -- " << g->vertex(e.b).name << "  " << e.label.str(ring) << '\n';
    r.document = os.str();
  }
  return r;
}

CommandResult cmd_bmp(const JobConfig& c, std::ostream& log) {
  require_format(c, {"text", "json"});
  c.policy.validate();
  CommandResult r;
  if (!c.fixture.empty()) {
    if (c.fixture != "double-label") throw UsageError("unknown fixture '" + c.fixture + "'");
    auto g = std::make_shared<const MomentGraph>(double_label_graph());
    try {
      for (std::size_t v : parse_bases(*g, c.base)) bmp(g, c.direction, v, c.policy);
    } catch (const std::invalid_argument& e) {
      Json doc = document_header(c, "error");
      doc["message"] = e.what();
      r.exit_code = kExitVerificationFailed;
      r.document = c.format == "json" ? doc.dump(2) + "\n" : std::string("error: ") + e.what() + "\n";
      return r;
    }
  }
  const auto b = make_block(c);
  const auto bases = parse_bases(b->graph, c.base);
  const KLTable table(b->group);
  std::vector<BMPResult> results;
  for (std::size_t v : bases) {
    results.push_back(bmp(b, c.direction, v, c.policy, &table));
    log << "bmp " << b->graph.vertex(v).name << " (" << to_string(c.direction) << ") done\n";
  }
  bool ok = true;
  for (const auto& res : results) ok = ok && res.saturated() && res.oracle_ok();
  r.exit_code = ok ? kExitOk : kExitVerificationFailed;
  if (c.format == "json") {
    Json doc = document_header(c, "bmp_batch");
    doc["block"] = block_json(*b);
    Json arr = Json::array();
    for (const auto& res : results) arr.push_back(to_json(res));
    doc["results"] = std::move(arr);
    doc["ok"] = ok;
    r.document = doc.dump(2) + "\n";
    return r;
  }
  std::ostringstream os;
  for (const auto& res : results) {
    os << "B(" << b->graph.vertex(res.base).name << ") " << to_string(res.direction) << ", degree cap " << res.degree_cap
       << ", saturated " << (res.saturated() ? "yes" : "NO") << ", oracle " << (res.oracle_ok() ? "match" : "MISMATCH")
       << '\n';
    for (std::size_t x = 0; x < b->graph.vertex_count(); ++x) {
      if (res.sheaf.stalk(x).rank() == 0) continue;
      os << "  " << b->graph.vertex(x).name << ": " << shifts_text(res.sheaf.stalk(x).shifts()) << '\n';
    }
  }
  r.document = os.str();
  return r;
}

CommandResult cmd_mult_table(const JobConfig& c, std::ostream& log) {
  require_format(c, {"text", "json", "csv"});
  c.policy.validate();
  const auto b = make_block(c);
  const KLTable table(b->group);
  std::vector<BMPResult> results;
  for (std::size_t w = 0; w < b->graph.vertex_count(); ++w) {
    results.push_back(bmp(b, c.direction, w, c.policy, &table));
    log << "bmp " << b->graph.vertex(w).name << " done\n";
  }
  const MultiplicityTable t = multiplicity_table(b, c.direction, results);
  CommandResult r;
  r.exit_code = t.matches_oracle() && t.saturated ? kExitOk : kExitVerificationFailed;
  if (c.format == "json") {
    Json doc = document_header(c, "multiplicity_table");
    doc["block"] = block_json(*b);
    doc["table"] = to_json(t);
    r.document = doc.dump(2) + "\n";
  } else if (c.format == "csv") {
    r.document = to_csv(t);
  } else {
    r.document = to_text(t);
  }
  return r;
}

CommandResult cmd_verify(const JobConfig& c, std::ostream& log) {
  require_format(c, {"text", "json"});
  const SuiteReport rep = run_suite(c, log);
  CommandResult r;
  r.exit_code = rep.pass() ? kExitOk : kExitVerificationFailed;
  if (c.format == "json") {
    Json doc = document_header(c, "verification");
    Json body = rep.to_json();
    for (auto& [k, v] : body.items()) doc[k] = v;
    r.document = doc.dump(2) + "\n";
  } else {
    r.document = rep.to_text();
  }
  return r;
}

}  // namespace msh::tools
