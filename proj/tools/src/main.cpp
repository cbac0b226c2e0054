#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "msh/tools/commands.hpp"

namespace {

using msh::tools::CommandResult;
using msh::tools::JobConfig;

void add_block_options(CLI::App* app, JobConfig& c, std::string& direction) {
  app->add_option("--type", c.type, "Cartan type: A, B, C, D or G")->capture_default_str();
  app->add_option("--rank", c.rank, "rank of the root system")->capture_default_str();
  app->add_option("--lambda", c.lambda, "antidominant weight, comma-separated fundamental-weight coordinates (default -2 rho)");
  app->add_option("--dir", direction, "order direction: up or down")->capture_default_str();
}

void add_policy_options(CLI::App* app, JobConfig& c) {
  app->add_option("--slope", c.policy.slope, "degree bound per length step")->capture_default_str();
  app->add_option("--offset", c.policy.offset, "constant added to the degree bound")->capture_default_str();
  app->add_option("--window", c.policy.saturation_window, "extra degrees computed beyond the bound")->capture_default_str();
  app->add_option("--variant", c.policy.extension_variant, "linear extension tie-break")->capture_default_str();
  app->add_flag("!--no-oracle", c.policy.oracle_crosscheck, "skip the Kazhdan-Lusztig cross-check");
  app->add_flag("--timing", c.policy.record_timing, "record per-vertex timings in bmp output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment graph sheaves of category O blocks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "msh 0.1.0");

  JobConfig c;
  std::string direction = "down";
  std::string config_file;
  app.add_option("--output,-o", c.output, "write the document here instead of standard output");
  app.add_option("--config", config_file, "job configuration as JSON (flags given on the command line win)");

  auto* graph = app.add_subcommand("graph", "print the moment graph of a block");
  add_block_options(graph, c, direction);
  graph->add_option("--format", c.format, "text, json or dot")->capture_default_str();
  graph->add_option("--fixture", c.fixture, "use a built-in graph instead of a block (double-label)");

  auto* bmp = app.add_subcommand("bmp", "compute Braden-MacPherson sheaves");
  add_block_options(bmp, c, direction);
  add_policy_options(bmp, c);
  bmp->add_option("--base", c.base, "comma-separated base vertices or 'all'")->capture_default_str();
  bmp->add_option("--format", c.format, "text or json")->capture_default_str();
  bmp->add_option("--fixture", c.fixture, "use a built-in graph instead of a block (double-label)");

  auto* table = app.add_subcommand("mult-table", "stalk ranks of all BMP sheaves of a block");
  add_block_options(table, c, direction);
  add_policy_options(table, c);
  table->add_option("--format", c.format, "text, json or csv")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_block_options(verify, c, direction);
  add_policy_options(verify, c);
  verify->add_option("--suite", c.suite, "suite name or 'all'")->capture_default_str();
  verify->add_option("--format", c.format, "text or json")->capture_default_str();
  verify->add_option("--fixture", c.fixture, "use a built-in graph instead of a block (double-label)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : msh::tools::kExitUsage;
  }

  try {
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw msh::tools::UsageError("cannot read " + config_file);
      JobConfig file = msh::tools::config_from_json(msh::Json::parse(in));
      // command-line values override the file only where they were given
      JobConfig merged = file;
      CLI::App* sub = app.get_subcommands().front();
      auto given = [&](const char* name) {
        for (const CLI::App* a : {static_cast<const CLI::App*>(sub), static_cast<const CLI::App*>(&app)}) {
          const CLI::Option* o = a->get_option_no_throw(name);
          if (o && o->count() > 0) return true;
        }
        return false;
      };
      if (given("--type")) merged.type = c.type;
      if (given("--rank")) merged.rank = c.rank;
      if (given("--lambda")) merged.lambda = c.lambda;
      if (given("--base")) merged.base = c.base;
      if (given("--format")) merged.format = c.format;
      if (given("--suite")) merged.suite = c.suite;
      if (given("--fixture")) merged.fixture = c.fixture;
      if (given("--output")) merged.output = c.output;
      if (given("--slope")) merged.policy.slope = c.policy.slope;
      if (given("--offset")) merged.policy.offset = c.policy.offset;
      if (given("--window")) merged.policy.saturation_window = c.policy.saturation_window;
      if (given("--variant")) merged.policy.extension_variant = c.policy.extension_variant;
      if (given("--no-oracle")) merged.policy.oracle_crosscheck = c.policy.oracle_crosscheck;
      if (given("--timing")) merged.policy.record_timing = c.policy.record_timing;
      if (!given("--dir")) direction = msh::to_string(merged.direction);
      c = merged;
    }
    const auto d = msh::parse_direction(direction);
    if (!d) throw msh::tools::UsageError("unknown direction '" + direction + "'");
    c.direction = *d;

    CommandResult r;
    if (graph->parsed()) r = msh::tools::cmd_graph(c, std::cerr);
    else if (bmp->parsed()) r = msh::tools::cmd_bmp(c, std::cerr);
    else if (table->parsed()) r = msh::tools::cmd_mult_table(c, std::cerr);
    else r = msh::tools::cmd_verify(c, std::cerr);

    if (c.output.empty()) {
      std::cout << r.document;
    } else {
      std::ofstream out(c.output, std::ios::binary);
      if (!out) throw msh::tools::UsageError("cannot write " + c.output);
      out << r.document;
    }
    return r.exit_code;
  } catch (const msh::tools::UsageError& e) {
    std::cerr << "msh: " << e.what() << '\n';
    return msh::tools::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "msh: " << e.what() << '\n';
    return msh::tools::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "msh: " << e.what() << '\n';
    return msh::tools::kExitVerificationFailed;
  }
}
