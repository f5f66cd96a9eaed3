// hyperarr: command-line front end over the library.
//
//   hyperarr [--json] [--cache-dir DIR] [--max-flats N] [--threads N] <command> ...
//
// Exit codes: 0 ok, 1 verification failure, 2 parse or input error, 3 refusal or
// flat limit exceeded.

#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kParse = 2;
constexpr int kRefused = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace hyperarr;

  CLI::App app{"Exact hyperplane arrangement lattices, modular flats and supersolvability."};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  bool timing = false;
  std::string cache_dir;
  std::size_t max_flats = 500000;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string method = "rank";
  app.add_flag("--json", json, "Machine-readable JSON output");
  app.add_option("--cache-dir", cache_dir,
                 std::string("Lattice cache directory (default: $") + kCacheEnv + ")");
  app.add_option("--max-flats", max_flats, "Abort lattice builds past this many flats")
      ->capture_default_str();
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "Include wall-clock timing in reports");
  app.add_option("--method", method, "Modularity test: rank (rank identity) or sum (subspace sums)")
      ->check(CLI::IsMember({"rank", "sum"}))
      ->capture_default_str();

  std::string spec;
  std::optional<std::size_t> rank;
  bool criterion = false;
  std::string scope = "all";

  auto* build = app.add_subcommand("build", "Summarize an arrangement and list its hyperplanes");
  build->add_option("spec", spec, "Catalog name, file, or product 'S1 * S2'")->required();
  auto* lattice = app.add_subcommand("lattice", "Intersection lattice level sizes");
  lattice->add_option("spec", spec)->required();
  auto* modular = app.add_subcommand("modular", "Modular flats, with witnesses for the rest");
  modular->add_option("spec", spec)->required();
  modular->add_option("--rank", rank, "Only flats of this rank");
  auto* super = app.add_subcommand("supersolvable", "Supersolvability certificate");
  super->add_option("spec", spec)->required();
  super->add_flag("--rank2-criterion", criterion,
                  "Also compare with the existence of a modular rank-2 flat (irreducible input)");
  auto* poin = app.add_subcommand("poincare", "Poincare polynomial and exponents");
  poin->add_option("spec", spec)->required();
  auto* decomp = app.add_subcommand("decompose", "Irreducible factors");
  decomp->add_option("spec", spec)->required();
  auto* verify = app.add_subcommand("verify-paper", "Replay the built-in claims table");
  verify->add_option("scope", scope, "all, an arrangement name, or a claim id")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  CommandContext ctx;
  ctx.lattice.max_flats = max_flats;
  ctx.lattice.threads = threads;
  ctx.method = method == "sum" ? ModularityMethod::SubspaceSum : ModularityMethod::RankIdentity;
  ctx.timing = timing;

  try {
    ctx.cache = LatticeCache::from_flag_or_env(cache_dir);
    CommandResult result;
    if (*build) result = cmd_build(ctx, spec);
    else if (*lattice) result = cmd_lattice(ctx, spec);
    else if (*modular) result = cmd_modular(ctx, spec, rank);
    else if (*super) result = criterion ? cmd_rank2_criterion(ctx, spec) : cmd_supersolvable(ctx, spec);
    else if (*poin) result = cmd_poincare(ctx, spec);
    else if (*decomp) result = cmd_decompose(ctx, spec);
    else result = cmd_verify_paper(ctx, scope);

    if (json) std::cout << result.report.dump(2) << '\n';
    else std::cout << render_text(result.report);
    if (result.exit_code != kOk && result.report.contains("claims")) {
      for (const auto& row : result.report["claims"])
        if (!row["passed"].get<bool>())
          std::cerr << "FAILED " << row["id"].get<std::string>() << ": "
                    << row["detail"].get<std::string>() << '\n';
    }
    return result.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const RefusalError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const LimitError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
