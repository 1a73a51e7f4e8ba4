#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssd/cli/commands.hpp"

int main(int argc, char** argv) {
  using ssd::cli::Command;
  ssd::cli::RunConfig cfg;
  std::string construction;
  std::size_t drop = 0;
  std::string drop_cols;

  CLI::App app{"Wu-method supersaturated designs and E(s^2) optimality checks"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "build a design and write CSV + JSON sidecar");
  gen->add_option("--n", cfg.n, "run count (multiple of 4)")->required();
  gen->add_option("--construction", construction, "sylvester | paley (default: by n)");
  auto* drop_opt = gen->add_option("--drop", drop, "delete the last K columns of H(n, n-1)");
  gen->add_option("--drop-cols", drop_cols, "delete these columns of H(n, n-1), e.g. 3,7")->excludes(drop_opt);
  gen->add_option("--family", cfg.family, "full | minus-one | interactions-only | single-parent")
      ->check(CLI::IsMember({"full", "minus-one", "interactions-only", "single-parent"}));
  gen->add_option("--delete", cfg.delete_label, "column removed by minus-one, e.g. c3 or c2*c5");
  gen->add_option("--parent", cfg.parent, "parent factor index I (column cI) for single-parent");
  gen->add_option("--out", cfg.out, "design CSV path; the sidecar goes to PATH.json")->required();
  gen->add_option("--report", cfg.report, "optimality report JSON path");

  auto* eval = app.add_subcommand("evaluate", "evaluate a design CSV");
  eval->add_option("input,--input", cfg.input, "design CSV path")->required();
  eval->add_option("--report", cfg.report, "write the JSON report here instead of stdout");
  eval->add_option("--gwp-max-order", cfg.gwp_max_order, "highest GWP order to report");

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n_list, "run counts, e.g. --n 12,20")->delimiter(',');
    sub->add_option("--construction", construction, "sylvester | paley (default: by n)");
    sub->add_option("--cap", cfg.cap, "max deletion sets per size (default: all)");
    sub->add_option("--report", cfg.report, "machine-readable results JSON");
  };
  auto* lem = app.add_subcommand("verify-lemmas", "check J-characteristic closed forms by enumeration");
  add_grid(lem);
  auto* thm = app.add_subcommand("verify-theorems", "check E(s^2) values and verdicts of every construction");
  add_grid(thm);
  thm->add_option("--choice-cap", cfg.choice_cap, "max deleted columns / parents per start (default: all)");

  try {
    app.parse(argc, argv);
    cfg.construction = ssd::cli::parse_construction(construction);
    if (gen->parsed()) {
      cfg.command = Command::Generate;
      if (gen->count("--drop")) cfg.drop_count = drop;
      if (!drop_cols.empty())
        for (const auto& tok : CLI::detail::split(drop_cols, ',')) cfg.drop_cols.push_back(std::stoi(tok));
    } else if (eval->parsed()) {
      cfg.command = Command::Evaluate;
    } else if (lem->parsed()) {
      cfg.command = Command::VerifyLemmas;
    } else {
      cfg.command = Command::VerifyTheorems;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ssd::cli::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ssd::cli::kUsageError;
  }
  return ssd::cli::run(cfg, std::cout, std::cerr);
}
