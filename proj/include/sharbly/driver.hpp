#pragma once
// Verification commands behind the CLI: each returns a TheoremReport whose
// machine-readable and text renderings carry the same artifacts.  Budget or
// arity problems downgrade a report to inconclusive instead of aborting.

#include <string>
#include <vector>

#include <json.hpp>

#include "sharbly/cocycle.hpp"
#include "sharbly/core.hpp"

namespace sharbly {

struct GlobalOpts {
  unsigned long seed = 12345;
  long cells = 20000;
  double tol = 1e-3;
  double time_budget_s = 600;
  int threads = 1;
};

enum class Status { verified, refuted, inconclusive };
std::string to_string(Status s);

struct TheoremReport {
  std::string claim;
  Status status = Status::inconclusive;
  std::vector<std::string> notes;
  nlohmann::json artifacts = nlohmann::json::object();
  double wall_ms = 0;

  nlohmann::json to_json() const;
  std::string to_text() const;
  int exit_code() const;   // 0 verified, 1 refuted, 2 inconclusive
};

// file-or-name resolution: named cycles win, otherwise the JSON chain file is
// loaded; `composition` reports whether the chain is a named composition whose
// cycle status is guaranteed by construction
Chain load_chain_arg(const std::string& arg, bool* composition = nullptr);

// mu spec: mu1 | mu2 | mu3 | right-associated products such as mu3*mu3*mu1
EvaluatorPtr parse_mu(const std::string& spec);

TheoremReport cmd_verify_cycle(const std::string& arg, const GlobalOpts& g);
TheoremReport cmd_parity(const std::string& arg, const GlobalOpts& g);
TheoremReport cmd_depth_chart(const std::string& arg, const GlobalOpts& g);
TheoremReport cmd_pliable(const std::string& arg, int a, int k, const GlobalOpts& g);
TheoremReport cmd_pair(const std::string& mu_spec, const std::string& arg, const GlobalOpts& g);
TheoremReport cmd_theorem(const std::string& family, int k, const GlobalOpts& g);
TheoremReport cmd_vanishing(const std::string& name, const GlobalOpts& g);

}  // namespace sharbly
