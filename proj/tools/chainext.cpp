#include "chainext/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using chainext::cli::RunConfig;
  CLI::App app{"chainext: exact chain extensions, Lie deformations, BRST and BV operators"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text";

  auto common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("-i,--input", cfg.input, "input file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  };
  auto* lie = app.add_subcommand("lie", "H2, [alpha1,alpha1] and order-by-order extension");
  common(lie, true);
  lie->add_option("--alpha1", cfg.alpha1, "alpha1 file, or h2:K for the K-th H2 representative");
  lie->add_option("--order", cfg.order, "highest order to attempt")->check(CLI::Range(2, 20));

  auto* shl = app.add_subcommand("shlie", "sh-Lie structure of a deformation");
  common(shl, true);
  shl->add_option("--alpha1", cfg.alpha1, "alpha1 file, or h2:K");
  shl->add_option("--trunc", cfg.trunc, "t-truncation order N (default 4)")->check(CLI::Range(3, 12));
  shl->add_flag("--cross-check", cfg.cross_check, "compare with the generic engine");

  auto* br = app.add_subcommand("brst", "BRST operator of a constraint system");
  common(br, true);
  br->add_option("--cap", cfg.cap, "polynomial degree cap (default: file, else 6)")->check(CLI::Range(1, 12));
  br->add_flag("--cross-check", cfg.cross_check, "compare with the generic engine");

  auto* bv = app.add_subcommand("bv", "consistent deformation of a field/antifield model");
  common(bv, true);
  bv->add_option("--cap", cfg.cap, "polynomial degree cap (default: file, else 6)")->check(CLI::Range(2, 12));
  bv->add_option("--trunc", cfg.trunc, "t-truncation order (default: file, else 4)")->check(CLI::Range(1, 12));
  bv->add_flag("--cross-check", cfg.cross_check, "compare with the generic engine");

  auto* ext = app.add_subcommand("extend", "chain extension of a resolution file");
  common(ext, true);

  auto* fz = app.add_subcommand("fuzz", "seeded random chain extensions");
  common(fz, false);
  fz->add_option("--seed", cfg.seed, "random seed");
  fz->add_option("--count", cfg.count, "number of accepted instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.structured = format == "structured";

  try {
    const auto out = chainext::cli::run(cfg);
    std::cout << (cfg.structured ? chainext::cli::render_structured(out) : chainext::cli::render_text(out));
    return out.exit_code();
  } catch (const chainext::cli::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
