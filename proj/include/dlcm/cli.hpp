#pragma once

// Batch front-end: one command per process, deterministic textual report.
// Exit codes: 0 positive result, 1 definitive negative, 2 usage/parse error,
// 3 inconclusive (budget exhausted).

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "calculus.hpp"
#include "oracle.hpp"
#include "parse.hpp"

namespace dlcm {

struct RunConfig {
  enum class Command { Check, Entail, Matrix, Fol, Oracle };
  enum class ProofFormat { Connections, Tree, None };

  Command command = Command::Check;
  std::string kb_path;
  std::optional<std::string> query_text;
  int max_copies = 8;
  int max_depth = 512;
  long max_steps = 500000;
  bool include_order_axioms = true;
  ProofFormat proof_format = ProofFormat::Connections;
  int oracle_domain = 2;
  bool strict_signature = false;
};

struct RunResult {
  int exit_code = 0;
  std::string report;
};

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cli_detail

inline RunResult run(const RunConfig& cfg) {
  using Command = RunConfig::Command;
  std::ostringstream out;
  auto fail = [&](const std::string& msg) {
    out << "error: " << msg << "\n";
    return RunResult{2, out.str()};
  };

  if (cfg.command == Command::Entail && !cfg.query_text)
    return fail("entail requires --query");
  if (cfg.command == Command::Check && cfg.query_text)
    return fail("check takes no --query");

  KnowledgeBase kb;
  std::optional<Axiom> query;
  try {
    kb = parse_kb(cli_detail::read_file(cfg.kb_path), cfg.strict_signature);
    if (cfg.query_text) query = parse_query(*cfg.query_text, &kb.sig, cfg.strict_signature);
  } catch (const std::exception& e) {
    return fail(e.what());
  }

  SearchOptions opts;
  opts.max_copies = cfg.max_copies;
  opts.max_depth = cfg.max_depth;
  opts.max_steps = cfg.max_steps;
  opts.order_axioms = cfg.include_order_axioms;

  switch (cfg.command) {
    case Command::Check: {
      ConsistencyResult r = inconsistent(kb, opts);
      switch (r.verdict) {
        case Consistency::Inconsistent:
          out << "inconsistent\n";
          if (r.tree && cfg.proof_format == RunConfig::ProofFormat::Connections)
            out << print_proof_connections(*r.tree);
          else if (r.tree && cfg.proof_format == RunConfig::ProofFormat::Tree)
            out << print_proof_tree(*r.tree);
          return {0, out.str()};
        case Consistency::Consistent:
          out << "consistent\n";
          return {1, out.str()};
        case Consistency::Inconclusive:
          out << "inconclusive\n";
          return {3, out.str()};
      }
      break;
    }
    case Command::Entail: {
      EntailResult r = entails(kb, *query, opts);
      switch (r.verdict) {
        case Verdict::Proved:
          out << "proved\n";
          if (cfg.proof_format == RunConfig::ProofFormat::Connections)
            out << print_proof_connections(*r.tree);
          else if (cfg.proof_format == RunConfig::ProofFormat::Tree)
            out << print_proof_tree(*r.tree);
          return {0, out.str()};
        case Verdict::NotProved:
          out << "not-proved\n";
          return {1, out.str()};
        case Verdict::Inconclusive:
          out << "inconclusive\n";
          return {3, out.str()};
      }
      break;
    }
    case Command::Matrix: {
      KnowledgeBase kn = normalize(kb);
      Matrix m;
      if (query) {
        Axiom qn = normalize(*query);
        merge_query_names(qn, kn.sig);
        m = build_query_matrix(kn, qn, cfg.include_order_axioms);
      } else {
        m = delta(kn, cfg.include_order_axioms);
      }
      out << print_matrix(m);
      return {0, out.str()};
    }
    case Command::Fol: {
      KnowledgeBase kn = normalize(kb);
      if (query) {
        Axiom qn = normalize(*query);
        merge_query_names(qn, kn.sig);
        FreshVars fresh;
        Formula qf = [&] {
          switch (qn.kind) {
            case Axiom::Kind::ConceptAssertion:
              return pi_concept(qn.clhs, t_const(qn.ind1), fresh);
            case Axiom::Kind::RoleAssertion:
              return pi_role(qn.rlhs, t_const(qn.ind1), t_const(qn.ind2), fresh);
            case Axiom::Kind::GCI: {
              std::string x = fresh.next("x");
              return f_forall(x, pi_concept(c_or(c_not(qn.clhs), qn.crhs), t_var(x), fresh));
            }
            case Axiom::Kind::RIA: {
              auto [x, y] = fresh.next_pair();
              return f_forall(x, f_forall(y,
                  f_or(pi_role(r_not(qn.rlhs), t_var(x), t_var(y), fresh),
                       pi_role(qn.rrhs, t_var(x), t_var(y), fresh))));
            }
          }
          return f_lit(lit_less(t_var("x"), t_var("x")));
        }();
        out << print_formula(f_or(f_not(pi_kb(kn, cfg.include_order_axioms)), qf)) << "\n";
      } else {
        out << print_formula(pi_kb(kn, cfg.include_order_axioms)) << "\n";
      }
      return {0, out.str()};
    }
    case Command::Oracle: {
      if (query) {
        auto cm = find_countermodel(kb, *query, cfg.oracle_domain);
        if (cm) {
          out << "countermodel found:\n" << print_interpretation(*cm);
          return {0, out.str()};
        }
        out << "no countermodel up to domain " << cfg.oracle_domain << "\n";
        return {1, out.str()};
      }
      auto m = find_model(kb, cfg.oracle_domain);
      if (m) {
        out << "model found:\n" << print_interpretation(*m);
        return {0, out.str()};
      }
      out << "no model up to domain " << cfg.oracle_domain << "\n";
      return {1, out.str()};
    }
  }
  return fail("unknown command");
}

}  // namespace dlcm
