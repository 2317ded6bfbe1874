#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sharbly/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sharbly: exact verification for sharbly cycles and cosharbly pairings"};
  app.require_subcommand(1);

  sharbly::GlobalOpts g;
  std::string json_out;
  app.add_option("--seed", g.seed, "RNG seed for numeric sampling");
  app.add_option("--cells", g.cells, "quadrature budget per volume integral");
  app.add_option("--tol", g.tol, "relative tolerance for adaptive refinement");
  app.add_option("--time-budget", g.time_budget_s, "wall-clock budget in seconds");
  app.add_option("--threads", g.threads, "worker threads for numeric integration");
  app.add_option("--json", json_out, "write the report as JSON to this path");

  std::string arg, mu_spec, family, name;
  int a = 0, k = 0, k_pliable = -1;

  // global flags may appear after the subcommand as well
  auto* vc = app.add_subcommand("verify-cycle",
                                "check that a chain is a cycle in the coinvariants");
  vc->add_option("chain", arg, "chain file or named cycle")->required();

  auto* pa = app.add_subcommand("parity", "parity of a cycle under diag(-1,1,...,1)");
  pa->add_option("chain", arg, "chain file or named cycle")->required();

  auto* dc = app.add_subcommand("depth-chart", "depth chart of a chain's columns");
  dc->add_option("chain", arg, "chain file or named cycle")->required();

  auto* pl = app.add_subcommand("pliable", "enumerate pliable subsets of a chain's columns");
  pl->add_option("chain", arg, "chain file or named cycle")->required();
  pl->add_option("--a", a, "dimension of the plied span")->required();
  pl->add_option("--k", k_pliable, "subset size (default 2a)");

  auto* pr = app.add_subcommand("pair", "evaluate a cosharbly against a cycle");
  pr->add_option("--mu", mu_spec, "cosharbly spec, e.g. mu3 or mu3*mu1")->required();
  pr->add_option("chain", arg, "chain file or named cycle")->required();

  auto* th = app.add_subcommand("theorem", "verify a nonvanishing theorem instance");
  th->add_option("--case", family, "family: 3k+3 or 3k+4")->required();
  th->add_option("--k", k, "family parameter")->required();

  auto* va = app.add_subcommand("vanishing", "verify a vanishing composition");
  va->add_option("name", name, "one of z2z2, z4z1, z2z3")->required();

  // let the global flags appear after the subcommand too
  for (auto* sub : app.get_subcommands(std::function<bool(CLI::App*)>{}))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  sharbly::TheoremReport report;
  if (vc->parsed())
    report = sharbly::cmd_verify_cycle(arg, g);
  else if (pa->parsed())
    report = sharbly::cmd_parity(arg, g);
  else if (dc->parsed())
    report = sharbly::cmd_depth_chart(arg, g);
  else if (pl->parsed())
    report = sharbly::cmd_pliable(arg, a, k_pliable, g);
  else if (pr->parsed())
    report = sharbly::cmd_pair(mu_spec, arg, g);
  else if (th->parsed())
    report = sharbly::cmd_theorem(family, k, g);
  else if (va->parsed())
    report = sharbly::cmd_vanishing(name, g);

  std::cout << report.to_text();
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) {
      std::cerr << "cannot write " << json_out << "\n";
      return 3;
    }
    out << report.to_json().dump(2) << "\n";
  }
  return report.exit_code();
}
