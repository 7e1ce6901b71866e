// dlcm: consistency and preferential entailment for ALCH knowledge bases
// with typicality operators, via connection-method proof search.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dlcm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dlcm - defeasible description logic reasoner (connection method)"};
  app.require_subcommand(1);

  dlcm::RunConfig cfg;
  std::string proof_format = "connections";
  bool no_order_axioms = false;

  auto add_common = [&](CLI::App* sub, bool with_query) {
    sub->add_option("file", cfg.kb_path, "knowledge base file")->required();
    if (with_query) sub->add_option("--query", cfg.query_text, "query axiom");
    sub->add_option("--max-copies", cfg.max_copies, "per-clause copy budget");
    sub->add_option("--max-depth", cfg.max_depth, "active path depth limit");
    sub->add_option("--max-steps", cfg.max_steps, "total rule-application budget");
    sub->add_flag("--no-order-axioms", no_order_axioms,
                  "omit the order clauses from the matrix");
    sub->add_option("--proof", proof_format, "proof output: connections|tree|none")
        ->check(CLI::IsMember({"connections", "tree", "none"}));
    sub->add_option("--max-domain", cfg.oracle_domain, "oracle domain bound");
    sub->add_flag("--strict", cfg.strict_signature, "require declared names");
  };

  auto* check = app.add_subcommand("check", "decide knowledge-base consistency");
  add_common(check, false);
  auto* entail = app.add_subcommand("entail", "decide preferential entailment of --query");
  add_common(entail, true);
  auto* matrix = app.add_subcommand("matrix", "print the matrix translation");
  add_common(matrix, true);
  auto* fol = app.add_subcommand("fol", "print the first-order translation");
  add_common(fol, true);
  auto* oracle = app.add_subcommand("oracle", "search finite models / countermodels");
  add_common(oracle, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (check->parsed()) cfg.command = dlcm::RunConfig::Command::Check;
  else if (entail->parsed()) cfg.command = dlcm::RunConfig::Command::Entail;
  else if (matrix->parsed()) cfg.command = dlcm::RunConfig::Command::Matrix;
  else if (fol->parsed()) cfg.command = dlcm::RunConfig::Command::Fol;
  else cfg.command = dlcm::RunConfig::Command::Oracle;

  cfg.include_order_axioms = !no_order_axioms;
  if (proof_format == "tree") cfg.proof_format = dlcm::RunConfig::ProofFormat::Tree;
  else if (proof_format == "none") cfg.proof_format = dlcm::RunConfig::ProofFormat::None;

  dlcm::RunResult r = dlcm::run(cfg);
  std::cout << r.report;
  return r.exit_code;
}
