// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Each criterion carries its runtime bound.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dlcm/calculus.hpp"
#include "dlcm/cli.hpp"
#include "dlcm/oracle.hpp"
#include "dlcm/parse.hpp"
#include "gen.hpp"

using namespace dlcm;

namespace {

Term ct(const char* n) { return t_const(n); }
Term v(const char* n) { return t_var(n); }

Clause cl(std::vector<Literal> lits) {
  Clause c;
  c.lits = std::move(lits);
  c.sort_canonical();
  return c;
}

KnowledgeBase demo_kb() {
  return parse_kb(
      "tbox:\n  some s.B [= *A\nrbox:\n  *r [= s\nabox:\n  *r(a,b)\n  B(b)\n");
}

KnowledgeBase wizard_kb() {
  return parse_kb(
      "tbox:\n  *Muggle [= ~Wizard\n  PBWizard [= all knows.Wizard\n"
      "rbox:\n  dates [= *knows\n"
      "abox:\n  Muggle(hermione)\n  PBWizard(ron)\n  dates(ron,hermione)\n");
}

struct Criterion {
  std::string name;
  double limit_ms;
  std::function<void(std::ostringstream&)> body;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

// --------------------------------------------------------------------------
// 1. The demo KB plus query A(a) translates to exactly the expected matrix
//    (up to variable renaming; Herbrand symbols h1/h2 stand for the
//    conventional f/g, c-constants for fresh individuals).

void criterion_golden_matrix(std::ostringstream&) {
  KnowledgeBase kn = normalize(demo_kb());
  Axiom q = parse_query("A(a)", &kn.sig);
  Matrix m = build_query_matrix(kn, q, /*include_order_axioms=*/true);

  Term fa = t_fn("h1", {v("x")});
  Term gb = t_fn("h2", {v("y")});
  std::vector<Clause> expected = {
      cl({lit_role("s", v("x"), v("y")), lit_concept("B", v("y")),
          lit_concept("A", v("x"), false)}),
      cl({lit_role("s", v("x"), v("y")), lit_concept("B", v("y")), lit_less(v("xp"), v("x")),
          lit_concept("A", v("xp"))}),
      cl({lit_role("r", v("x"), v("y")), lit_lless(fa, gb, v("x"), v("y"), false),
          lit_role("s", v("x"), v("y"), false)}),
      cl({lit_role("r", v("x"), v("y")), lit_role("r", fa, gb, false),
          lit_role("s", v("x"), v("y"), false)}),
      cl({lit_role("r", v("x"), v("y")), lit_lless(v("xp"), v("yp"), fa, gb),
          lit_role("r", v("xp"), v("yp")), lit_role("s", v("x"), v("y"), false)}),
      cl({lit_role("r", ct("a"), ct("b"), false)}),
      cl({lit_lless(v("xp"), v("yp"), ct("a"), ct("b")), lit_role("r", v("xp"), v("yp"))}),
      cl({lit_concept("B", ct("b"), false)}),
      cl({lit_concept("A", ct("a"))}),
  };
  for (auto& c : order_clauses()) expected.push_back(std::move(c));

  require(m.clauses.size() == 15, "expected 15 clauses, got " +
                                      std::to_string(m.clauses.size()));
  for (size_t i = 0; i < expected.size(); ++i) {
    if (!alpha_equivalent(m.clauses[i], expected[i]))
      throw Failure("clause " + std::to_string(i + 1) + " mismatches: got " +
                    print_clause(m.clauses[i]) + ", expected " + print_clause(expected[i]));
  }
}

// --------------------------------------------------------------------------
// 2. The demo entailment is proved with 8 connections, the proof validates,
//    and the final substitution grounds the used copies as expected.

void criterion_golden_proof(std::ostringstream&) {
  KnowledgeBase kb = demo_kb();
  EntailResult r = entails(kb, parse_query("A(a)", &kb.sig), {});
  require(r.verdict == Verdict::Proved, "entailment not proved");
  require(r.proof_checked, "proof failed the independent checker");
  require(r.tree->connections == 8,
          "expected 8 connections, got " + std::to_string(r.tree->connections));

  const Substitution& sigma = r.tree->sigma;
  bool row1 = false, ria = false, witness = false;
  for (const ProofNode* n : r.tree->used_copies()) {
    const std::string& origin = r.matrix.clauses[n->clause_index].origin;
    for (const auto& l : n->entered.lits) {
      Literal g = sigma.apply_deep(l);
      if (origin == "tbox[0]" && g == lit_role("s", ct("a"), ct("b"))) row1 = true;
      if (origin == "rbox[0]" && g == lit_role("s", ct("a"), ct("b"), false)) ria = true;
      if (origin == "abox[0]" &&
          g == lit_lless(t_fn("h1", {ct("a")}), t_fn("h2", {ct("b")}), ct("a"), ct("b")))
        witness = true;
    }
  }
  require(row1, "first TBox clause is not grounded at (a,b)");
  require(ria, "RIA clause is not grounded at (a,b)");
  require(witness, "witness pair is not grounded at (h1(a),h2(b))");
}

// --------------------------------------------------------------------------
// 3. On random ground matrices the prover succeeds exactly when every path
//    contains a complementary pair.

void criterion_ground_equivalence(std::ostringstream& log) {
  gen::Rng rng(1301);
  SearchOptions opts;
  opts.max_copies = 32;
  int disagreements = 0, valid = 0;
  for (int k = 0; k < 1000; ++k) {
    Matrix m = gen::gen_ground_matrix(rng, 4, 3);
    ProofState eps;
    eps.matrix = &m;
    ProveResult r = prove(eps, opts);
    bool oracle = ground_matrix_valid(m, {}, 1);
    if (oracle) ++valid;
    if (r.verdict == Verdict::Inconclusive || (r.verdict == Verdict::Proved) != oracle)
      ++disagreements;
  }
  log << "(" << valid << "/1000 valid) ";
  require(disagreements == 0, std::to_string(disagreements) + " disagreements");
}

// --------------------------------------------------------------------------
// 4. Soundness against countermodels: no proved query has a model of the KB
//    that fails the query, up to domain 3.

void criterion_soundness(std::ostringstream& log) {
  gen::Rng rng(1999);
  gen::KbParams p;  // 2 concepts, 1 role, 2 individuals, depth 2, typicality on
  SearchOptions opts;
  opts.max_steps = 300000;
  int proved = 0, violations = 0, inconclusive = 0;
  for (int k = 0; k < 200; ++k) {
    KnowledgeBase kb = gen::gen_kb(rng, p, 1, 3);
    Axiom q = gen::gen_axiom(rng, p);
    EntailResult r = entails(kb, q, opts);
    if (r.verdict == Verdict::Inconclusive) { ++inconclusive; continue; }
    if (r.verdict != Verdict::Proved) continue;
    ++proved;
    if (find_countermodel(kb, q, 3).has_value()) ++violations;
  }
  log << "(" << proved << " proved, " << inconclusive << " inconclusive) ";
  require(violations == 0, std::to_string(violations) + " proved queries had countermodels");
}

// --------------------------------------------------------------------------
// 5. Defeasibility on the wizarding KB.

void criterion_defeasibility(std::ostringstream&) {
  KnowledgeBase kb = wizard_kb();
  EntailResult wizard = entails(kb, parse_query("Wizard(hermione)", &kb.sig), {});
  require(wizard.verdict == Verdict::Proved, "Wizard(hermione) not proved");
  EntailResult atypical = entails(kb, parse_query("~*Muggle(hermione)", &kb.sig), {});
  require(atypical.verdict == Verdict::Proved, "~*Muggle(hermione) not proved");
  EntailResult muggle = entails(kb, parse_query("~Muggle(hermione)", &kb.sig), {});
  require(muggle.verdict == Verdict::NotProved, "~Muggle(hermione) should be not-proved");
  auto cm = find_countermodel(kb, parse_query("~Muggle(hermione)", &kb.sig), 3);
  require(cm.has_value(), "no countermodel for ~Muggle(hermione) up to domain 3");
  require(check_model(*cm, kb), "countermodel does not satisfy the KB");
}

// --------------------------------------------------------------------------
// 6. Typicality tautology and blocking-driven termination.

void criterion_typicality(std::ostringstream&) {
  SearchOptions no_order;
  no_order.order_axioms = false;
  EntailResult taut = entails(KnowledgeBase{}, parse_query("*A [= A"), no_order);
  require(taut.verdict == Verdict::Proved, "*A [= A not proved without order clauses");

  KnowledgeBase kb = parse_kb("tbox:\n  *A [= B\nabox:\n  A(a)\n");
  EntailResult r = entails(kb, parse_query("B(a)", &kb.sig), {});
  require(r.verdict == Verdict::NotProved,
          "B(a) should be not-proved under preferential entailment");
  require(r.stats.case2_blocks > 0, "copy blocking was never exercised");
}

// --------------------------------------------------------------------------
// 7. Consistency command.

void criterion_consistency(std::ostringstream&) {
  ConsistencyResult bad = inconsistent(parse_kb("abox:\n  A(a)\n  ~A(a)\n"), {});
  require(bad.verdict == Consistency::Inconsistent, "contradiction not detected");
  KnowledgeBase kb = wizard_kb();
  ConsistencyResult wiz = inconsistent(kb, {});
  require(wiz.verdict == Consistency::Consistent, "wizarding KB should be consistent");
  require(find_model(kb, 2).has_value(), "oracle found no model at domain 2");
}

// --------------------------------------------------------------------------
// 8. The direct matrix translation agrees with the matrix of the negated
//    first-order translation on ground knowledge bases.

void criterion_coherence(std::ostringstream& log) {
  gen::Rng rng(888);
  int disagreements = 0, valid = 0;
  for (int k = 0; k < 100; ++k) {
    KnowledgeBase kb = normalize(gen::gen_ground_kb(rng));
    Matrix md = delta(kb, false);
    Matrix mf = matrix_of_formula(nnf(f_not(pi_kb(kb, false))), VarString{}, kb.sig);
    std::vector<Term> terms = {ct("a"), ct("b")};
    bool vd = ground_matrix_valid(md, terms, 1);
    bool vf = ground_matrix_valid(mf, terms, 1);
    if (vd) ++valid;
    if (vd != vf) ++disagreements;
  }
  log << "(" << valid << "/100 inconsistent KBs) ";
  require(disagreements == 0, std::to_string(disagreements) + " disagreements");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"golden matrix: demo KB + query yields the expected 15 clauses", 100,
       criterion_golden_matrix},
      {"golden proof: demo entailment proved, 8 connections, grounding checked", 1000,
       criterion_golden_proof},
      {"ground equivalence: prover vs exhaustive paths on 1000 random matrices", 30000,
       criterion_ground_equivalence},
      {"soundness: no proved query admits a countermodel (200 pairs, domain <= 3)", 300000,
       criterion_soundness},
      {"defeasibility: wizarding KB entailments and countermodel", 60000,
       criterion_defeasibility},
      {"typicality tautology proved; blocking terminates the subsumer search", 2000,
       criterion_typicality},
      {"consistency: contradiction detected, wizarding KB consistent", 2000,
       criterion_consistency},
      {"translation coherence on 100 random ground KBs", 30000, criterion_coherence},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto& c = criteria[i];
    std::ostringstream log;
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body(log);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    bool ok = error.empty() && ms <= c.limit_ms;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << c.name << " "
              << log.str() << "[" << static_cast<long>(ms) << " ms";
    if (ms > c.limit_ms) std::cout << " > limit " << static_cast<long>(c.limit_ms) << " ms";
    std::cout << "]";
    if (!error.empty()) std::cout << " -- " << error;
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
