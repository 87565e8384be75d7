#include <iostream>

#include <CLI11.hpp>

#include "dynrigid/commands.hpp"

int main(int argc, char** argv) {
  using namespace dynrigid;
  CLI::App app{"dynrigid: symmetric periodic orbits, Lazutkin coordinates and the linearized isospectral operator"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_dir, "output directory (default $DYNRIGID_OUT_DIR or ./dynrigid_out)");
    sub->add_option("--samples", cfg.samples, "override n_samples of the domain file");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
  };

  auto* validate = app.add_subcommand("validate", "check a domain file and report perimeter, min rho, closeness");
  validate->add_option("--domain", cfg.domain_file, "domain YAML file")->required();
  add_common(validate);

  auto* orbits = app.add_subcommand("orbits", "symmetric maximal orbits for q = 2..qmax");
  orbits->add_option("--domain", cfg.domain_file, "domain YAML file")->required();
  orbits->add_option("--qmax", cfg.qmax, "largest rotation number denominator")->capture_default_str();
  add_common(orbits);

  auto* op = app.add_subcommand("operator", "truncated operator matrix and injectivity certificate");
  op->add_option("--domain", cfg.domain_file, "domain YAML file")->required();
  op->add_option("--Q", cfg.Q, "rows q = 0..Q")->capture_default_str();
  op->add_option("--J", cfg.J, "columns j = 0..J")->capture_default_str();
  op->add_option("--gamma", cfg.gamma, "weight exponent in (3, 4)")->capture_default_str();
  op->add_option("--route", cfg.route, "direct, model or both")->capture_default_str();
  add_common(op);

  auto* deform = app.add_subcommand("deform", "finite-difference checks of the variational identities");
  deform->add_option("--family", cfg.family_file, "family YAML file")->required();
  deform->add_option("--qmax", cfg.qmax, "check q = 2..qmax")->capture_default_str();
  add_common(deform);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  return guarded(
      [&] {
        if (*validate) return cmd_validate(cfg, std::cout);
        if (*orbits) return cmd_orbits(cfg, std::cout);
        if (*op) return cmd_operator(cfg, std::cout);
        return cmd_deform(cfg, std::cout);
      },
      std::cerr);
}
