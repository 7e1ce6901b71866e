#include <catch2/catch_amalgamated.hpp>

#include "dlcm/oracle.hpp"
#include "dlcm/parse.hpp"
#include "gen.hpp"

using namespace dlcm;

namespace {

Term a() { return t_const("a"); }
Term v(const char* n) { return t_var(n); }

Clause cl(std::vector<Literal> lits) {
  Clause c;
  c.lits = std::move(lits);
  c.sort_canonical();
  return c;
}

KnowledgeBase wizard_kb() {
  return parse_kb(
      "tbox:\n  *Muggle [= ~Wizard\n  PBWizard [= all knows.Wizard\n"
      "rbox:\n  dates [= *knows\n"
      "abox:\n  Muggle(hermione)\n  PBWizard(ron)\n  dates(ron,hermione)\n");
}

bool is_spo(const std::set<std::pair<int, int>>& rel) {
  for (auto [x, y] : rel) {
    if (x == y) return false;                      // irreflexive
    if (rel.count({y, x})) return false;           // asymmetric
    for (auto [z, k] : rel)
      if (y == z && !rel.count({x, k})) return false;  // transitive
  }
  return true;
}

}  // namespace

TEST_CASE("check_model: trivial cases") {
  BiOrderedInterpretation o;
  o.domain_size = 1;
  CHECK(check_model(o, KnowledgeBase{}));

  KnowledgeBase kb = parse_kb("abox: A(a)");
  BiOrderedInterpretation bad;
  bad.domain_size = 1;
  bad.individuals["a"] = 0;
  bad.concepts["A"] = {};
  bad.roles.clear();
  CHECK_FALSE(check_model(bad, kb));
  bad.concepts["A"] = {0};
  CHECK(check_model(bad, kb));
}

TEST_CASE("check_model: the flat wizarding interpretation fails, a graded one works") {
  KnowledgeBase kb = wizard_kb();

  // Two objects with no preference: the typical muggles are then all
  // muggles, including the wizard hermione, so the first GCI fails.
  BiOrderedInterpretation flat;
  flat.domain_size = 2;
  flat.individuals = {{"hermione", 0}, {"ron", 1}};
  flat.concepts["Muggle"] = {0};
  flat.concepts["Wizard"] = {0, 1};
  flat.concepts["PBWizard"] = {1};
  flat.roles["dates"] = {{1, 0}};
  flat.roles["knows"] = {{1, 0}};
  CHECK_FALSE(check_model(flat, kb));

  // Adding a more typical muggle below hermione repairs it.
  BiOrderedInterpretation graded;
  graded.domain_size = 3;
  graded.individuals = {{"hermione", 1}, {"ron", 2}};
  graded.concepts["Muggle"] = {0, 1};
  graded.concepts["Wizard"] = {1, 2};
  graded.concepts["PBWizard"] = {2};
  graded.roles["dates"] = {{2, 1}};
  graded.roles["knows"] = {{2, 1}};
  graded.less = {{0, 1}};
  CHECK(check_model(graded, kb));

  // and the enumeration finds some model on its own
  CHECK(find_model(kb, 2).has_value());
}

TEST_CASE("typicality is order-sensitive") {
  KnowledgeBase kb = parse_kb("abox: (*A)(a)");
  BiOrderedInterpretation o;
  o.domain_size = 2;
  o.individuals["a"] = 1;
  o.concepts["A"] = {0, 1};
  o.less = {{0, 1}};  // object 0 more typical: a is not a typical A
  CHECK_FALSE(check_model(o, kb));
  o.less = {{1, 0}};  // flip the order: now it is
  CHECK(check_model(o, kb));
}

TEST_CASE("enumeration counts: extensions and strict partial orders") {
  Signature sig;
  sig.add(NameKind::Concept, "A");
  InterpretationEnumerator en(sig, 1);
  int count = 0;
  while (auto o = en.next()) {
    CHECK(o->domain_size == 1);
    ++count;
  }
  CHECK(count == 2);  // two concept extensions, one (empty) order each

  CHECK(oracle_detail::spo_masks(2).size() == 3);
  CHECK(oracle_detail::spo_masks(3).size() == 19);
  CHECK(oracle_detail::spo_masks(4).size() == 219);

  // brute cross-check of the size-3 count against the definition
  int brute = 0;
  for (uint32_t rel = 0; rel < (1u << 9); ++rel) {
    std::set<std::pair<int, int>> r;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        if (rel >> (x * 3 + y) & 1) r.insert({x, y});
    if (is_spo(r)) ++brute;
  }
  CHECK(brute == 19);

  CHECK_THROWS(InterpretationEnumerator(sig, 4));
}

TEST_CASE("enumerated orders are always strict partial orders") {
  Signature sig;
  sig.add(NameKind::Concept, "A");
  sig.add(NameKind::Role, "r");
  sig.add(NameKind::Individual, "a");
  InterpretationEnumerator en(sig, 2);
  int seen = 0;
  while (auto o = en.next()) {
    REQUIRE(is_spo(o->less));
    std::set<std::pair<int, int>> flat;
    int n = o->domain_size;
    for (const auto& [p, q] : o->lless)
      flat.insert({p.first * n + p.second, q.first * n + q.second});
    REQUIRE(is_spo(flat));
    if (++seen >= 3000) break;
  }
  CHECK(seen > 0);
}

TEST_CASE("find_countermodel: typical subsumer, tautology, empty KB") {
  KnowledgeBase kb = parse_kb("tbox:\n  *A [= B\nabox:\n  A(a)\n");
  auto cm = find_countermodel(kb, parse_query("B(a)", &kb.sig), 2);
  REQUIRE(cm.has_value());
  // the countermodel keeps a outside B but inside A, with a more typical A
  CHECK(check_model(*cm, kb));
  CHECK_FALSE(check_model(*cm, kb, parse_query("B(a)", &kb.sig)));

  // no countermodel for the typicality tautology
  KnowledgeBase empty;
  CHECK_FALSE(find_countermodel(empty, parse_query("*A [= A"), 2).has_value());

  // anything fails somewhere over an empty KB
  auto m = find_countermodel(empty, parse_query("A(a)"), 1);
  REQUIRE(m.has_value());
  CHECK(m->concepts.at("A").empty());
}

TEST_CASE("find_countermodel agrees with a proved demo entailment") {
  KnowledgeBase kb = parse_kb(
      "tbox:\n  some s.B [= *A\nrbox:\n  *r [= s\nabox:\n  *r(a,b)\n  B(b)\n");
  // Desk scale: exhaustive up to domain 2 (the full pair-order space).
  CHECK_FALSE(find_countermodel(kb, parse_query("A(a)", &kb.sig), 2).has_value());
}

TEST_CASE("ground_matrix_valid: exhaustive path checking") {
  Matrix m1;
  m1.clauses = {cl({lit_concept("A", a())}), cl({lit_concept("A", a(), false)})};
  CHECK(ground_matrix_valid(m1, {}, 1));

  Matrix m2;
  m2.clauses = {cl({lit_concept("A", a())}), cl({lit_concept("B", a())})};
  CHECK_FALSE(ground_matrix_valid(m2, {}, 1));

  // {{~A(c)}, {x<c, A(x)}, {A(c)}} with terms {c}: instantiating x to c
  // closes every path
  Matrix m3;
  m3.clauses = {cl({lit_concept("A", t_const("c"), false)}),
                cl({lit_less(v("x"), t_const("c")), lit_concept("A", v("x"))}),
                cl({lit_concept("A", t_const("c"))})};
  CHECK(ground_matrix_valid(m3, {t_const("c")}, 1));

  // the guard rejects infeasible instantiation spaces
  Matrix big;
  std::vector<Literal> lits;
  Clause c;
  for (int i = 0; i < 8; ++i)
    c.lits.push_back(lit_role("r", v(("x" + std::to_string(i)).c_str()),
                              v(("y" + std::to_string(i)).c_str())));
  big.clauses = {c};
  std::vector<Term> many;
  for (int i = 0; i < 9; ++i) many.push_back(t_const("k" + std::to_string(i)));
  CHECK_THROWS(ground_matrix_valid(big, many, 2, /*guard=*/1000));
}

TEST_CASE("compact and friendly evaluators agree") {
  gen::Rng rng(111);
  gen::KbParams p;
  p.concepts = {"A"};
  p.roles = {"r"};
  p.individuals = {"a"};
  for (int k = 0; k < 3; ++k) {
    KnowledgeBase kb = gen::gen_kb(rng, p, 1, 2);
    auto ids = oracle_detail::SymbolIds::from(kb.sig);
    auto axs = oracle_detail::compile_kb(kb, ids);
    int checked = 0;
    oracle_detail::for_each_interp(ids, 2, [&](const oracle_detail::CompactInterp& it) {
      BiOrderedInterpretation o = oracle_detail::to_friendly(it, ids);
      if (check_model(o, kb) != oracle_detail::models(axs, it)) {
        REQUIRE(false);
      }
      return ++checked < 2000;
    });
    CHECK(checked > 0);
  }
}
