// Acceptance run: one line per criterion, nonzero exit when any fails.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "msh/fixtures.hpp"
#include "msh/tools/commands.hpp"

using namespace msh;
using namespace msh::tools;

namespace {

struct Criterion {
  std::string id;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "" : "FAILED ") + what);
  }
  void require(const CheckResult& r, const std::string& where) {
    require(r.status == CheckStatus::Pass, where + " " + r.name + ": " + r.summary);
  }
};

std::shared_ptr<const Block> block(CartanType t, int rank) {
  return build_block(RootSystem::build(t, rank), Weight(rank, Rational(-2)));
}

struct Named {
  const char* name;
  CartanType type;
  int rank;
};

const Named kA1{"A1", CartanType::A, 1};
const Named kA2{"A2", CartanType::A, 2};
const Named kB2{"B2", CartanType::B, 2};
const Named kA3{"A3", CartanType::A, 3};

// Structure algebra of the A1 graph by hand: pairs (f, g) with h1 | f - g, so
// degree 0 has the constants and every positive even degree d has f free and
// g - f in h1 * S_{d-2}.
std::vector<std::size_t> a1_structure_dims(int max_degree) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= max_degree; d += 2) out.push_back(d == 0 ? 1 : 2);
  return out;
}

Criterion ac1() {
  Criterion c{"AC1", "BMP stalk ranks equal Kazhdan-Lusztig values (A1, A2, B2, A3; both directions)"};
  for (const Named& n : {kA1, kA2, kB2, kA3}) {
    const auto b = block(n.type, n.rank);
    for (Direction d : {Direction::Down, Direction::Up}) c.require(check_kl_bmp(b, d, {}), n.name);
  }
  return c;
}

Criterion ac2() {
  Criterion c{"AC2", "A3: B-down(s2s1s3s2) has graded stalk 1 + q at e"};
  const auto b = block(CartanType::A, 3);
  const std::size_t w = *b->graph.find_vertex("s2s1s3s2");
  const BMPResult r = bmp(b, Direction::Down, w);
  c.require(r.sheaf.stalk(0).shifts() == std::vector<int>{0, 2}, "stalk shifts at e are [0, 2]");
  c.require(stalk_rank_poly(r.sheaf, 0) == QPoly::constant(1) + QPoly::monomial(1), "graded rank 1 + q");
  const KLTable kl(b->group);
  c.require(kl.eval_at_one(b->graph.vertex(0).representative, b->graph.vertex(w).representative) == 2, "P_{e,w}(1) = 2");
  c.require(r.oracle_ok() && r.saturated(), "oracle match and saturated");
  return c;
}

Criterion ac3() {
  Criterion c{"AC3", "B-down(x) is the w0 pullback of B-up(w0 x) (A1, A2, B2)"};
  for (const Named& n : {kA1, kA2, kB2}) c.require(check_pullback(block(n.type, n.rank), {}), n.name);
  return c;
}

Criterion ac4() {
  Criterion c{"AC4", "A1 structure algebra dimensions up to degree 10"};
  const auto b = block(CartanType::A, 1);
  const CheckResult r = check_structure_algebra(*b, 10);
  c.require(r, "A1");
  const auto dims = r.data["dims"].get<std::vector<std::size_t>>();
  c.require(dims == a1_structure_dims(10), "dims 1 2 2 2 2 2 by the divisibility count");
  return c;
}

Criterion ac5() {
  Criterion c{"AC5", "Gamma and localization: L(Gamma(B)) = B, Gamma L Gamma = Gamma, open restrictions match sections (A1, A2)"};
  for (const Named& n : {kA1, kA2}) c.require(check_adjunction(block(n.type, n.rank)), n.name);
  return c;
}

Criterion ac6() {
  Criterion c{"AC6", "BMP sheaves are flabby, generated by global sections, upward iso (A1, A2, B2, A3)"};
  for (const Named& n : {kA1, kA2, kB2, kA3}) c.require(check_f_projective(block(n.type, n.rank), {}), n.name);
  return c;
}

Criterion ac7() {
  Criterion c{"AC7", "Gamma(B) admits a Verma flag, direct test and criterion agree (A1, A2)"};
  for (const Named& n : {kA1, kA2}) c.require(check_verma_flag(block(n.type, n.rank)), n.name);
  return c;
}

Criterion ac8() {
  Criterion c{"AC8", "dual of Gamma(B-up(x)) localizes to B-down(w0 x) up to shift (A1, A2)"};
  for (const Named& n : {kA1, kA2}) c.require(check_self_duality(block(n.type, n.rank)), n.name);
  return c;
}

Criterion ac9() {
  Criterion c{"AC9", "Hom(B(x), V(y)) and Hom(V(w0 y), B'(w0 x)) agree up to shift (A2 all pairs, A3 spot pair)"};
  c.require(check_hom(block(CartanType::A, 2)), "A2");
  const CheckResult spot = check_hom_pair(block(CartanType::A, 3), "s2s1s3s2");
  c.require(spot, "A3");
  c.require(spot.data["total_to"] == 2 && spot.data["total_from"] == 2, "A3 spot pair totals 2 and 2");
  return c;
}

Criterion ac10() {
  Criterion c{"AC10", "negative controls are rejected"};
  const CheckResult gkm = check_gkm(double_label_graph());
  c.require(gkm.status == CheckStatus::Fail && gkm.data.contains("vertex"), "double-label graph fails GKM with a witness");
  const auto a1 = block(CartanType::A, 1);
  const auto g = std::shared_ptr<const MomentGraph>(a1, &a1->graph);
  const FProjectiveReport sky = check_f_projective(skyscraper(g, 0), Direction::Up, 6);
  c.require(!sky.ok() && !sky.upward_iso, "skyscraper at e is not F-projective");
  DegreeBoundPolicy tight;
  tight.slope = 0;
  const auto a3 = block(CartanType::A, 3);
  const BMPResult r = bmp(a3, Direction::Down, *a3->graph.find_vertex("s2s1s3s2"), tight);
  c.require(!r.saturated(), "slope 0 on A3 raises the saturation flag");
  JobConfig job;
  job.type = "A";
  job.rank = 3;
  job.base = "s2s1s3s2";
  job.policy = tight;
  std::ostringstream log;
  c.require(cmd_bmp(job, log).exit_code == kExitVerificationFailed, "msh bmp exits 1 on the unsaturated run");
  return c;
}

Criterion ac11() {
  Criterion c{"AC11", "A2 verify --suite all --format json is byte-identical across runs"};
  JobConfig job;
  job.type = "A";
  job.rank = 2;
  job.format = "json";
  std::ostringstream log;
  const CommandResult first = cmd_verify(job, log);
  const CommandResult second = cmd_verify(job, log);
  c.require(first.exit_code == kExitOk, "verification passes");
  c.require(!first.document.empty() && first.document == second.document,
            "documents identical (" + std::to_string(first.document.size()) + " bytes)");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  using Fn = Criterion (*)();
  const std::vector<Fn> all{ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11};
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Criterion c;
    try {
      c = all[i]();
    } catch (const std::exception& e) {
      c.id = "AC" + std::to_string(i + 1);
      c.pass = false;
      c.notes.push_back(std::string("FAILED exception: ") + e.what());
    }
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << "  " << c.title << '\n';
    for (const auto& n : c.notes)
      if (verbose || !c.pass) std::cout << "         " << n << '\n';
    std::cout.flush();
    if (!c.pass) ++failed;
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
