#pragma once

// Batch commands behind the msh executable. Each command renders a complete
// document into a string; progress goes to the log stream only.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msh/serialize.hpp"

namespace msh::tools {

enum ExitCode { kExitOk = 0, kExitVerificationFailed = 1, kExitUsage = 2 };

/// Bad flags or an unusable configuration (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string type = "A";
  int rank = 2;
  std::string lambda;  // comma-separated rationals; empty means -2 rho
  Direction direction = Direction::Down;
  std::string base = "all";  // "all" or comma-separated vertex names
  DegreeBoundPolicy policy;
  std::string format = "text";  // text | json | dot | csv
  std::string output;           // empty: standard output
  std::string suite = "all";
  std::string fixture;  // "double-label" replaces the block graph
};

Json to_json(const JobConfig& c);
JobConfig config_from_json(const Json& j);

/// Throws UsageError for unknown types, ranks, weights or vertex names.
std::shared_ptr<const Block> make_block(const JobConfig& c);

struct CommandResult {
  int exit_code = kExitOk;
  std::string document;
};

CommandResult cmd_graph(const JobConfig& c, std::ostream& log);
CommandResult cmd_bmp(const JobConfig& c, std::ostream& log);
CommandResult cmd_mult_table(const JobConfig& c, std::ostream& log);
CommandResult cmd_verify(const JobConfig& c, std::ostream& log);

enum class CheckStatus { Pass, Fail, Skipped };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string summary;
  Json data = Json::object();

  bool failed() const { return status == CheckStatus::Fail; }
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool pass() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Suite names accepted by verify, in the order "all" runs them.
const std::vector<std::string>& suite_names();

/// Lattice suites (adjunction, verma-flag, self-duality) are skipped above this many vertices.
inline constexpr std::size_t kLatticeSuiteVertexLimit = 8;

CheckResult check_gkm(const MomentGraph& g);
CheckResult check_structure_algebra(const Block& b, int max_degree = 10);
CheckResult check_kl_bmp(const std::shared_ptr<const Block>& b, Direction d, const DegreeBoundPolicy& policy,
                         std::ostream* log = nullptr);
CheckResult check_f_projective(const std::shared_ptr<const Block>& b, const DegreeBoundPolicy& policy,
                               std::ostream* log = nullptr);
CheckResult check_pullback(const std::shared_ptr<const Block>& b, const DegreeBoundPolicy& policy);
CheckResult check_adjunction(const std::shared_ptr<const Block>& b, int max_degree = 12);
CheckResult check_verma_flag(const std::shared_ptr<const Block>& b);
CheckResult check_self_duality(const std::shared_ptr<const Block>& b);
CheckResult check_hom(const std::shared_ptr<const Block>& b);
/// The pair (x, y) with w0 x = `w0x_name` and y = w0: both Hom spaces and their totals.
CheckResult check_hom_pair(const std::shared_ptr<const Block>& b, const std::string& w0x_name);

SuiteReport run_suite(const JobConfig& c, std::ostream& log);

}  // namespace msh::tools
