#include <catch2/catch_amalgamated.hpp>

#include "dlcm/matrix.hpp"
#include "dlcm/oracle.hpp"
#include "dlcm/parse.hpp"
#include "gen.hpp"

using namespace dlcm;

namespace {

Clause cl(std::vector<Literal> lits) {
  Clause c;
  c.lits = std::move(lits);
  c.sort_canonical();
  return c;
}

Matrix mx(std::vector<Clause> clauses) {
  Matrix m;
  m.clauses = std::move(clauses);
  return m;
}

Term a() { return t_const("a"); }
Term b() { return t_const("b"); }
Term v(const char* n) { return t_var(n); }

// DNF reading of a ground matrix: some clause has all literals true.
bool dnf_eval(const Matrix& m, const FolInterpretation& i) {
  for (const auto& c : m.clauses) {
    bool all = true;
    for (const auto& l : c.lits)
      if (!eval(l, i, Env{})) { all = false; break; }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("clausal_union is the pairwise clause product") {
  auto m1 = std::vector<Clause>{cl({lit_concept("A", a())})};
  auto m2 = std::vector<Clause>{cl({lit_concept("B", a())}), cl({lit_concept("A", b())})};
  auto u = clausal_union(m1, m2);
  REQUIRE(u.size() == 2);
  CHECK(u[0].same_literals(cl({lit_concept("A", a()), lit_concept("B", a())})));
  CHECK(u[1].same_literals(cl({lit_concept("A", a()), lit_concept("A", b())})));

  CHECK(clausal_union(std::vector<Clause>{}, m2).empty());
  CHECK(clausal_union(m2, std::vector<Clause>{}).empty());
}

TEST_CASE("clausal_union cardinality bound") {
  gen::Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    Matrix m1 = gen::gen_ground_matrix(rng, 3, 2);
    Matrix m2 = gen::gen_ground_matrix(rng, 3, 2);
    auto u = clausal_union(m1.clauses, m2.clauses);
    CHECK(u.size() <= m1.clauses.size() * m2.clauses.size());
    // distinct unions reach the bound
    std::set<std::vector<Literal>> seen;
    bool distinct = true;
    for (const auto& c1 : m1.clauses)
      for (const auto& c2 : m2.clauses) {
        Clause c;
        c.lits = c1.lits;
        for (const auto& l : c2.lits) c.lits.push_back(l);
        c.sort_canonical();
        if (!seen.insert(c.lits).second) distinct = false;
      }
    if (distinct) CHECK(u.size() == m1.clauses.size() * m2.clauses.size());
  }
}

TEST_CASE("apply_fn: fresh constant at the empty string, application otherwise") {
  Matrix m;
  SymbolSource src(&m);
  Term c1 = apply_fn("h1", VarString{}, src);
  CHECK(c1 == t_const("c1"));
  CHECK(m.has_symbol("c1"));

  Term fx = apply_fn("h1", VarString{}.append("x"), src);
  CHECK(fx == t_fn("h1", {v("x")}));
  Term gxy = apply_fn("h2", VarString{}.append("x").append("y"), src);
  CHECK(gxy == t_fn("h2", {v("x"), v("y")}));
  CHECK(m.has_symbol("h2"));

  CHECK_THROWS(VarString{}.append("x").append("x"));
}

TEST_CASE("matrix_of_formula: literal, conjunction, Herbrandized universal") {
  Signature sig;
  Matrix m = matrix_of_formula(f_lit(lit_concept("A", a())), VarString{}, sig);
  REQUIRE(m.clauses.size() == 1);
  CHECK(m.clauses[0].same_literals(cl({lit_concept("A", a())})));

  // exists x (A(x) & B(x)) -> {{A(x), B(x)}}
  Formula f = f_exists("x", f_and(f_lit(lit_concept("A", v("x"))),
                                  f_lit(lit_concept("B", v("x")))));
  m = matrix_of_formula(f, VarString{}, sig);
  REQUIRE(m.clauses.size() == 1);
  CHECK(alpha_equivalent(m.clauses[0], cl({lit_concept("A", v("x")), lit_concept("B", v("x"))})));

  // forall x A(x) at the empty string -> {{A(c1)}}
  m = matrix_of_formula(f_forall("x", f_lit(lit_concept("A", v("x")))), VarString{}, sig);
  REQUIRE(m.clauses.size() == 1);
  CHECK(m.clauses[0].same_literals(cl({lit_concept("A", t_const("c1"))})));

  // under an existential prefix, the universal becomes a function of it
  Formula g = f_exists("x", f_forall("y", f_or(f_lit(lit_concept("A", v("x"))),
                                               f_lit(lit_concept("B", v("y"))))));
  m = matrix_of_formula(g, VarString{}, sig);
  REQUIRE(m.clauses.size() == 2);
  bool found_fn = false;
  for (const auto& c : m.clauses)
    for (const auto& l : c.lits)
      if (l.args[0].kind == Term::Kind::Fn) found_fn = true;
  CHECK(found_fn);

  CHECK_THROWS(matrix_of_formula(f_not(f_and(f_lit(lit_concept("A", a())),
                                             f_lit(lit_concept("B", a())))),
                                 VarString{}, sig));
}

TEST_CASE("nnf pushes negation to literals") {
  Formula f = f_not(f_and(f_lit(lit_concept("A", a())),
                          f_exists("x", f_lit(lit_concept("B", v("x"))))));
  Formula n = nnf(f);
  CHECK(n == f_or(f_lit(lit_concept("A", a(), false)),
                  f_forall("x", f_lit(lit_concept("B", v("x"), false)))));
  gen::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    Formula g = gen::gen_ground_formula(rng, 3);
    FolInterpretation in = gen::gen_interp(rng);
    CHECK(eval(nnf(g), in) == eval(g, in));
  }
}

TEST_CASE("rho_role: the five cases") {
  Matrix m;
  SymbolSource src(&m);
  auto nr = rho_role(r_not(r_atom("r")), a(), b(), src);
  REQUIRE(nr.size() == 1);
  CHECK(nr[0].same_literals(cl({lit_role("r", a(), b(), false)})));

  CHECK(rho_role(r_not(r_not(r_atom("r"))), a(), b(), src)[0].same_literals(
      cl({lit_role("r", a(), b())})));

  // ~*r at (a,b): {{~r(a,b)}, {(x,y) << (a,b), r(x,y)}}
  auto ntr = rho_role(r_not(r_typical(r_atom("r"))), a(), b(), src);
  REQUIRE(ntr.size() == 2);
  CHECK(ntr[0].same_literals(cl({lit_role("r", a(), b(), false)})));
  CHECK(alpha_equivalent(ntr[1], cl({lit_lless(v("x"), v("y"), a(), b()),
                                     lit_role("r", v("x"), v("y"))})));

  // *r at (t,u): three clauses through the ~* expansion at (f(t), g(u))
  Matrix m2;
  SymbolSource src2(&m2);
  auto tr = rho_role(r_typical(r_atom("r")), v("t"), v("u"), src2);
  Term ft = t_fn("h1", {v("t")});
  Term gu = t_fn("h2", {v("u")});
  REQUIRE(tr.size() == 3);
  CHECK(alpha_equivalent(tr[0], cl({lit_role("r", v("t"), v("u")),
                                    lit_lless(ft, gu, v("t"), v("u"), false)})));
  CHECK(alpha_equivalent(tr[1], cl({lit_role("r", v("t"), v("u")),
                                    lit_role("r", ft, gu, false)})));
  CHECK(alpha_equivalent(tr[2], cl({lit_role("r", v("t"), v("u")),
                                    lit_lless(v("x"), v("y"), ft, gu),
                                    lit_role("r", v("x"), v("y"))})));
  CHECK(m2.has_symbol("h1"));
  CHECK(m2.has_symbol("h2"));
}

TEST_CASE("rho_concept: atoms, de Morgan, typicality") {
  Matrix m;
  SymbolSource src(&m);
  auto am = rho_concept(c_atom("A"), a(), VarString{}, src);
  REQUIRE(am.size() == 1);
  CHECK(am[0].same_literals(cl({lit_concept("A", a())})));

  auto dm = rho_concept(c_not(c_and(c_atom("A"), c_atom("B"))), a(), VarString{}, src);
  REQUIRE(dm.size() == 2);
  CHECK(dm[0].same_literals(cl({lit_concept("A", a(), false)})));
  CHECK(dm[1].same_literals(cl({lit_concept("B", a(), false)})));

  // (some s.B) & ~*A at (x, [x]): the first two rows of the demo matrix
  Matrix m2;
  SymbolSource src2(&m2);
  std::string x = "t";
  ConceptExpr d = c_and(c_some(r_atom("s"), c_atom("B")), c_not(c_typical(c_atom("A"))));
  auto rows = rho_concept(d, v("t"), VarString{}.append("t"), src2);
  REQUIRE(rows.size() == 2);
  CHECK(alpha_equivalent(rows[0], cl({lit_role("s", v("x"), v("y")), lit_concept("B", v("y")),
                                      lit_concept("A", v("x"), false)})));
  CHECK(alpha_equivalent(rows[1], cl({lit_role("s", v("x"), v("y")), lit_concept("B", v("y")),
                                      lit_less(v("xp"), v("x")), lit_concept("A", v("xp"))})));
}

TEST_CASE("delta: single assertion, empty KB, demo KB") {
  // K = {A(a)}: {{~A(a)}} plus the six order clauses
  KnowledgeBase kb = normalize(parse_kb("abox: A(a)"));
  Matrix m = delta(kb);
  REQUIRE(m.clauses.size() == 7);
  CHECK(m.clauses[0].same_literals(cl({lit_concept("A", a(), false)})));
  CHECK(m.clauses[0].origin == "abox[0]");

  // empty KB with the flag on: exactly the six order clauses
  Matrix phi = delta(KnowledgeBase{});
  REQUIRE(phi.clauses.size() == 6);
  auto expected = order_clauses();
  for (size_t i = 0; i < 6; ++i) CHECK(alpha_equivalent(phi.clauses[i], expected[i]));
  CHECK(delta(KnowledgeBase{}, /*include_order_axioms=*/false).clauses.empty());

  // the demo KB: 9 clauses + 6 order clauses, origins in KB order
  KnowledgeBase demo = normalize(parse_kb(
      "tbox:\n  some s.B [= *A\nrbox:\n  *r [= s\nabox:\n  *r(a,b)\n  B(b)\n"));
  Axiom q = parse_query("A(a)", &demo.sig);
  Matrix qm = build_query_matrix(demo, q);
  REQUIRE(qm.clauses.size() == 15);
  std::vector<std::string> origins;
  for (const auto& c : qm.clauses) origins.push_back(c.origin);
  CHECK(origins == std::vector<std::string>{
      "tbox[0]", "tbox[0]", "rbox[0]", "rbox[0]", "rbox[0]", "abox[0]", "abox[0]",
      "abox[1]", "query", "order[0]", "order[1]", "order[2]", "order[3]", "order[4]",
      "order[5]"});
}

TEST_CASE("build_query_matrix: subsumption queries Herbrandize to constants") {
  // entailment matrix of (empty KB, *A [= A): {{~A(c)}, {x<c, A(x)}, {A(c)}}
  KnowledgeBase empty;
  Axiom q = normalize(parse_query("*A [= A"));
  merge_query_names(q, empty.sig);
  Matrix m = build_query_matrix(empty, q, /*include_order_axioms=*/false);
  REQUIRE(m.clauses.size() == 3);
  Term c = t_const("c1");
  CHECK(m.clauses[0].same_literals(cl({lit_concept("A", c, false)})));
  CHECK(alpha_equivalent(m.clauses[1], cl({lit_less(v("x"), c), lit_concept("A", v("x"))})));
  CHECK(m.clauses[2].same_literals(cl({lit_concept("A", c)})));

  // a query already asserted in the ABox yields both polarities
  KnowledgeBase kb = normalize(parse_kb("abox: A(a)"));
  Matrix both = build_query_matrix(kb, parse_query("A(a)", &kb.sig),
                                   /*include_order_axioms=*/false);
  REQUIRE(both.clauses.size() == 2);
  CHECK(both.clauses[0].same_literals(cl({lit_concept("A", a(), false)})));
  CHECK(both.clauses[1].same_literals(cl({lit_concept("A", a())})));
}

TEST_CASE("paths: lazy enumeration over one-literal selections") {
  Matrix m = mx({cl({lit_concept("A", a())}), cl({lit_concept("B", a())})});
  PathEnumerator en(m);
  auto p = en.next();
  REQUIRE(p.has_value());
  CHECK(p->size() == 2);
  CHECK_FALSE(en.next().has_value());

  Matrix m2 = mx({cl({lit_concept("A", a()), lit_concept("B", a())}),
                  cl({lit_concept("A", b())})});
  PathEnumerator en2(m2);
  int count = 0;
  while (en2.next()) ++count;
  CHECK(count == 2);
  CHECK(PathEnumerator::count(m2) == 2);

  // the demo matrix restricted to its first two clauses: 3 * 4 selections
  KnowledgeBase demo = normalize(parse_kb(
      "tbox:\n  some s.B [= *A\nrbox:\n  *r [= s\nabox:\n  *r(a,b)\n  B(b)\n"));
  Matrix dm = delta(demo);
  Matrix first_two = mx({dm.clauses[0], dm.clauses[1]});
  CHECK(PathEnumerator::count(first_two) == 12);

  // no clauses: one empty path; an empty clause: none
  Matrix none;
  PathEnumerator en3(none);
  auto ep = en3.next();
  REQUIRE(ep.has_value());
  CHECK(ep->empty());
  CHECK_FALSE(en3.next().has_value());
  Matrix hole = mx({cl({})});
  PathEnumerator en4(hole);
  CHECK_FALSE(en4.next().has_value());
}

TEST_CASE("copy_clause renames consistently and leaves ground clauses alone") {
  Clause c = cl({lit_concept("A", v("x"))});
  Clause c1 = copy_clause(c, 1);
  CHECK(c1.copy_index == 1);
  CHECK(alpha_equivalent(c, c1));
  CHECK(c1.lits[0].args[0] == v("x#1"));

  Clause ground = cl({lit_role("r", a(), b(), false)});
  Clause g2 = copy_clause(ground, 2);
  CHECK(g2.copy_index == 2);
  CHECK(g2.same_literals(ground));

  // linked variables stay linked
  Clause row2 = cl({lit_role("s", v("x"), v("y")), lit_concept("B", v("y")),
                    lit_less(v("xp"), v("x")), lit_concept("A", v("xp"))});
  Clause r2c = copy_clause(row2, 3);
  CHECK(alpha_equivalent(row2, r2c));
  // the A-literal argument equals the first argument of the less-literal
  Literal less_lit, a_lit;
  for (const auto& l : r2c.lits) {
    if (l.atom == Literal::Atom::Less) less_lit = l;
    if (l.atom == Literal::Atom::Concept && l.pred == "A") a_lit = l;
  }
  CHECK(less_lit.args[0] == a_lit.args[0]);
}

TEST_CASE("matrix of a ground formula keeps its DNF meaning") {
  gen::Rng rng(23);
  Signature sig;
  for (int k = 0; k < 200; ++k) {
    Formula f = gen::gen_ground_formula(rng, 4);
    Matrix m = matrix_of_formula(nnf(f), VarString{}, sig);
    for (int j = 0; j < 4; ++j) {
      FolInterpretation i = gen::gen_interp(rng);
      CHECK(dnf_eval(m, i) == eval(f, i));
    }
  }
}

TEST_CASE("delta agrees with the matrix of the negated pi translation (ground)") {
  gen::Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    KnowledgeBase kb = normalize(gen::gen_ground_kb(rng));
    Matrix md = delta(kb, /*include_order_axioms=*/false);
    Formula negated = f_not(pi_kb(kb, /*include_order_axioms=*/false));
    Matrix mf = matrix_of_formula(nnf(negated), VarString{}, kb.sig);
    REQUIRE(md.clauses.size() > 0);
    std::vector<Term> terms = {a(), b()};
    bool vd = ground_matrix_valid(md, terms, 1);
    bool vf = ground_matrix_valid(mf, terms, 1);
    if (vd != vf) {
      INFO(print_kb(kb));
      INFO(print_matrix(md));
      INFO(print_matrix(mf));
      REQUIRE(vd == vf);
    }
  }
}

TEST_CASE("every Herbrand symbol is registered exactly once") {
  gen::Rng rng(47);
  gen::KbParams p;
  for (int k = 0; k < 50; ++k) {
    KnowledgeBase kb = normalize(gen::gen_kb(rng, p, 1, 3));
    Matrix m = delta(kb);
    std::set<std::string> names;
    for (const auto& [n, arity] : m.function_symbols) {
      CHECK(names.insert(n).second);  // no duplicates
    }
    // every function symbol used in a clause is registered
    std::function<void(const Term&)> walk = [&](const Term& t) {
      if (t.kind == Term::Kind::Fn) {
        CHECK(names.count(t.name));
        for (const auto& x : t.args) walk(x);
      }
    };
    for (const auto& c : m.clauses)
      for (const auto& l : c.lits)
        for (const auto& t : l.args) walk(t);
  }
}

TEST_CASE("standardize_apart keeps clauses variable-disjoint") {
  gen::Rng rng(53);
  gen::KbParams p;
  for (int k = 0; k < 50; ++k) {
    KnowledgeBase kb = normalize(gen::gen_kb(rng, p, 1, 3));
    Matrix m = delta(kb);
    std::set<std::string> seen;
    for (const auto& c : m.clauses) {
      for (const auto& v : c.variables()) {
        CHECK(seen.insert(v).second);
      }
    }
  }
}
