#pragma once

// The first-order fragment the translations target: terms, literals over
// unary/binary predicates plus the two order symbols < and <<, formulas, and
// finite interpretations with an evaluator.  Also the translation pi from
// role/concept expressions and knowledge bases to formulas.

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kb.hpp"

namespace dlcm {

// ---------------------------------------------------------------------------
// Terms

struct Term {
  enum class Kind { Var, Const, Fn };
  Kind kind = Kind::Const;
  std::string name;
  std::vector<Term> args;  // Fn only

  bool operator==(const Term& o) const {
    return kind == o.kind && name == o.name && args == o.args;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (name != o.name) return name < o.name;
    return args < o.args;
  }
};

inline Term t_var(std::string n) { Term t; t.kind = Term::Kind::Var; t.name = std::move(n); return t; }
inline Term t_const(std::string n) { Term t; t.kind = Term::Kind::Const; t.name = std::move(n); return t; }
inline Term t_fn(std::string n, std::vector<Term> args) {
  Term t;
  t.kind = Term::Kind::Fn;
  t.name = std::move(n);
  t.args = std::move(args);
  return t;
}

inline bool is_ground(const Term& t) {
  if (t.kind == Term::Kind::Var) return false;
  for (const auto& a : t.args)
    if (!is_ground(a)) return false;
  return true;
}

inline void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

inline std::string print_term(const Term& t) {
  if (t.kind != Term::Kind::Fn) return t.name;
  std::string s = t.name + "(";
  for (size_t i = 0; i < t.args.size(); ++i) s += (i ? "," : "") + print_term(t.args[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// Literals.  Negation is a flag, never nested.

struct Literal {
  enum class Atom { Concept, Role, Less, LLess };
  Atom atom = Atom::Concept;
  bool positive = true;
  std::string pred;         // Concept/Role name; empty for Less/LLess
  std::vector<Term> args;   // 1 / 2 / 2 / 4 (LLess flattened: (a0,a1) << (a2,a3))

  bool operator==(const Literal& o) const {
    return atom == o.atom && positive == o.positive && pred == o.pred && args == o.args;
  }
  bool operator!=(const Literal& o) const { return !(*this == o); }
  bool operator<(const Literal& o) const {
    if (atom != o.atom) return atom < o.atom;
    if (pred != o.pred) return pred < o.pred;
    if (positive != o.positive) return positive > o.positive;  // positive first
    return args < o.args;
  }
};

inline Literal lit_concept(std::string name, Term t, bool pos = true) {
  Literal l;
  l.atom = Literal::Atom::Concept;
  l.positive = pos;
  l.pred = std::move(name);
  l.args = {std::move(t)};
  return l;
}
inline Literal lit_role(std::string name, Term t, Term u, bool pos = true) {
  Literal l;
  l.atom = Literal::Atom::Role;
  l.positive = pos;
  l.pred = std::move(name);
  l.args = {std::move(t), std::move(u)};
  return l;
}
inline Literal lit_less(Term t, Term u, bool pos = true) {
  Literal l;
  l.atom = Literal::Atom::Less;
  l.positive = pos;
  l.args = {std::move(t), std::move(u)};
  return l;
}
inline Literal lit_lless(Term t, Term u, Term v, Term k, bool pos = true) {
  Literal l;
  l.atom = Literal::Atom::LLess;
  l.positive = pos;
  l.args = {std::move(t), std::move(u), std::move(v), std::move(k)};
  return l;
}

inline Literal complement(Literal l) {
  l.positive = !l.positive;
  return l;
}

inline bool is_ground(const Literal& l) {
  for (const auto& t : l.args)
    if (!is_ground(t)) return false;
  return true;
}

inline void collect_vars(const Literal& l, std::vector<std::string>& out) {
  for (const auto& t : l.args) collect_vars(t, out);
}

inline std::string print_atom(const Literal& l) {
  switch (l.atom) {
    case Literal::Atom::Concept: return l.pred + "(" + print_term(l.args[0]) + ")";
    case Literal::Atom::Role:
      return l.pred + "(" + print_term(l.args[0]) + "," + print_term(l.args[1]) + ")";
    case Literal::Atom::Less:
      return print_term(l.args[0]) + " < " + print_term(l.args[1]);
    case Literal::Atom::LLess:
      return "(" + print_term(l.args[0]) + "," + print_term(l.args[1]) + ") << (" +
             print_term(l.args[2]) + "," + print_term(l.args[3]) + ")";
  }
  return "?";
}

inline std::string print_literal(const Literal& l) {
  std::string a = print_atom(l);
  if (l.positive) return a;
  if (l.atom == Literal::Atom::Less || l.atom == Literal::Atom::LLess) return "~(" + a + ")";
  return "~" + a;
}

// ---------------------------------------------------------------------------
// Formulas

struct Formula {
  enum class Kind { Lit, And, Or, Not, Exists, Forall };
  Kind kind = Kind::Lit;
  Literal lit;
  std::string var;              // Exists/Forall
  std::vector<Formula> kids;    // And/Or: 2, Not/Exists/Forall: 1

  const Formula& lhs() const { return kids.at(0); }
  const Formula& rhs() const { return kids.at(1); }
  const Formula& body() const { return kids.at(0); }

  bool operator==(const Formula& o) const {
    return kind == o.kind && lit == o.lit && var == o.var && kids == o.kids;
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }
};

inline Formula f_lit(Literal l) { Formula f; f.kind = Formula::Kind::Lit; f.lit = std::move(l); return f; }
inline Formula f_binary(Formula::Kind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}
inline Formula f_and(Formula a, Formula b) { return f_binary(Formula::Kind::And, std::move(a), std::move(b)); }
inline Formula f_or(Formula a, Formula b) { return f_binary(Formula::Kind::Or, std::move(a), std::move(b)); }
inline Formula f_not(Formula a) {
  Formula f;
  f.kind = Formula::Kind::Not;
  f.kids.push_back(std::move(a));
  return f;
}
inline Formula f_quant(Formula::Kind k, std::string var, Formula body) {
  Formula f;
  f.kind = k;
  f.var = std::move(var);
  f.kids.push_back(std::move(body));
  return f;
}
inline Formula f_exists(std::string v, Formula b) { return f_quant(Formula::Kind::Exists, std::move(v), std::move(b)); }
inline Formula f_forall(std::string v, Formula b) { return f_quant(Formula::Kind::Forall, std::move(v), std::move(b)); }

inline Formula f_and_all(std::vector<Formula> fs) {
  assert(!fs.empty());
  Formula acc = std::move(fs.front());
  for (size_t i = 1; i < fs.size(); ++i) acc = f_and(std::move(acc), std::move(fs[i]));
  return acc;
}

inline std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Lit: return print_literal(f.lit);
    case Formula::Kind::And: return "(" + print_formula(f.lhs()) + " & " + print_formula(f.rhs()) + ")";
    case Formula::Kind::Or: return "(" + print_formula(f.lhs()) + " | " + print_formula(f.rhs()) + ")";
    case Formula::Kind::Not: return "~" + print_formula(f.body());
    case Formula::Kind::Exists: return "exists " + f.var + ".(" + print_formula(f.body()) + ")";
    case Formula::Kind::Forall: return "forall " + f.var + ".(" + print_formula(f.body()) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Fresh variable names: a monotone counter shared by one translation run, so
// outputs are deterministic.

struct FreshVars {
  int n = 0;
  std::string next(const std::string& base = "y") { return base + std::to_string(++n); }
  std::pair<std::string, std::string> next_pair() {
    ++n;
    return {"x" + std::to_string(n), "y" + std::to_string(n)};
  }
};

// ---------------------------------------------------------------------------
// pi: role and concept expressions to formulas.  The role cases follow the
// printed table; the concept table is extended with ~A and de Morgan duals
// for negated compounds so the translation is total on normalized input.

inline Formula pi_role(const RoleExpr& r, const Term& t, const Term& u, FreshVars& fresh) {
  using K = RoleExpr::Kind;
  switch (r.kind) {
    case K::Atom:
      return f_lit(lit_role(r.name, t, u));
    case K::Typical: {
      // pi(R) & forall x,y (~((x,y) << (t,u)) | pi_{x,y}(~R))
      auto [x, y] = fresh.next_pair();
      Formula guard = f_lit(lit_lless(t_var(x), t_var(y), t, u, /*pos=*/false));
      Formula body = f_or(std::move(guard), pi_role(r_not(r.inner()), t_var(x), t_var(y), fresh));
      return f_and(pi_role(r.inner(), t, u, fresh),
                   f_forall(x, f_forall(y, std::move(body))));
    }
    case K::Not: {
      const RoleExpr& in = r.inner();
      if (in.kind == K::Atom) return f_lit(lit_role(in.name, t, u, /*pos=*/false));
      if (in.kind == K::Not) return pi_role(in.inner(), t, u, fresh);
      // ~*R: pi(~R) | exists x,y ((x,y) << (t,u) & pi_{x,y}(*R))
      auto [x, y] = fresh.next_pair();
      Formula inside = f_and(f_lit(lit_lless(t_var(x), t_var(y), t, u)),
                             pi_role(in, t_var(x), t_var(y), fresh));
      return f_or(pi_role(r_not(in.inner()), t, u, fresh),
                  f_exists(x, f_exists(y, std::move(inside))));
    }
  }
  return f_lit(lit_role(r.name, t, u));
}

inline Formula pi_concept(const ConceptExpr& d, const Term& t, FreshVars& fresh) {
  using K = ConceptExpr::Kind;
  switch (d.kind) {
    case K::Atom:
      return f_lit(lit_concept(d.name, t));
    case K::And:
      return f_and(pi_concept(d.lhs(), t, fresh), pi_concept(d.rhs(), t, fresh));
    case K::Or:
      return f_or(pi_concept(d.lhs(), t, fresh), pi_concept(d.rhs(), t, fresh));
    case K::Some: {
      std::string y = fresh.next();
      return f_exists(y, f_and(pi_role(d.role(), t, t_var(y), fresh),
                               pi_concept(d.inner(), t_var(y), fresh)));
    }
    case K::All: {
      std::string y = fresh.next();
      return f_forall(y, f_or(pi_role(r_not(d.role()), t, t_var(y), fresh),
                              pi_concept(d.inner(), t_var(y), fresh)));
    }
    case K::Typical: {
      // pi(D) & forall y (~(y < t) | pi_y(~D))
      std::string y = fresh.next();
      Formula body = f_or(f_lit(lit_less(t_var(y), t, /*pos=*/false)),
                          pi_concept(c_not(d.inner()), t_var(y), fresh));
      return f_and(pi_concept(d.inner(), t, fresh), f_forall(y, std::move(body)));
    }
    case K::Not: {
      const ConceptExpr& in = d.inner();
      switch (in.kind) {
        case K::Atom: return f_lit(lit_concept(in.name, t, /*pos=*/false));
        case K::Not: return pi_concept(in.inner(), t, fresh);
        case K::And:
          return f_or(pi_concept(c_not(in.lhs()), t, fresh), pi_concept(c_not(in.rhs()), t, fresh));
        case K::Or:
          return f_and(pi_concept(c_not(in.lhs()), t, fresh), pi_concept(c_not(in.rhs()), t, fresh));
        case K::Some: {
          std::string y = fresh.next();
          return f_forall(y, f_or(pi_role(r_not(in.role()), t, t_var(y), fresh),
                                  pi_concept(c_not(in.inner()), t_var(y), fresh)));
        }
        case K::All: {
          std::string y = fresh.next();
          return f_exists(y, f_and(pi_role(in.role(), t, t_var(y), fresh),
                                   pi_concept(c_not(in.inner()), t_var(y), fresh)));
        }
        case K::Typical: {
          // pi(~D) | exists y ((y < t) & pi_y(*D))
          std::string y = fresh.next();
          Formula inside = f_and(f_lit(lit_less(t_var(y), t)),
                                 pi_concept(in, t_var(y), fresh));
          return f_or(pi_concept(c_not(in.inner()), t, fresh),
                      f_exists(y, std::move(inside)));
        }
        default:
          throw std::runtime_error("pi_concept: top/bot must be normalized away");
      }
    }
    default:
      throw std::runtime_error("pi_concept: top/bot must be normalized away");
  }
}

// The six order axioms: transitivity, irreflexivity, asymmetry for < and <<.
inline std::vector<Formula> order_axiom_formulas() {
  auto v = [](const char* n) { return t_var(n); };
  std::vector<Formula> out;
  // forall x,y,z (~(x<y & y<z) | x<z)
  out.push_back(f_forall("x", f_forall("y", f_forall("z",
      f_or(f_not(f_and(f_lit(lit_less(v("x"), v("y"))), f_lit(lit_less(v("y"), v("z"))))),
           f_lit(lit_less(v("x"), v("z"))))))));
  // forall x ~(x<x)
  out.push_back(f_forall("x", f_lit(lit_less(v("x"), v("x"), /*pos=*/false))));
  // forall x,y (~(x<y) | ~(y<x))
  out.push_back(f_forall("x", f_forall("y",
      f_or(f_lit(lit_less(v("x"), v("y"), false)), f_lit(lit_less(v("y"), v("x"), false))))));
  // forall x,y,z,k,m,n (~((x,y)<<(z,k) & (z,k)<<(m,n)) | (x,y)<<(m,n))
  Formula lless_trans =
      f_or(f_not(f_and(f_lit(lit_lless(v("x"), v("y"), v("z"), v("k"))),
                       f_lit(lit_lless(v("z"), v("k"), v("m"), v("n"))))),
           f_lit(lit_lless(v("x"), v("y"), v("m"), v("n"))));
  for (const char* q : {"n", "m", "k", "z", "y", "x"}) lless_trans = f_forall(q, std::move(lless_trans));
  out.push_back(std::move(lless_trans));
  // forall x,y ~((x,y)<<(x,y))
  out.push_back(f_forall("x", f_forall("y",
      f_lit(lit_lless(v("x"), v("y"), v("x"), v("y"), /*pos=*/false)))));
  // forall x,y,z,k (~((x,y)<<(z,k)) | ~((z,k)<<(x,y)))
  out.push_back(f_forall("x", f_forall("y", f_forall("z", f_forall("k",
      f_or(f_lit(lit_lless(v("x"), v("y"), v("z"), v("k"), false)),
           f_lit(lit_lless(v("z"), v("k"), v("x"), v("y"), false))))))));
  return out;
}

// pi over a whole KB: one conjunct per assertion/GCI/RIA plus the order
// axioms.  Expects normalized input.
inline Formula pi_kb(const KnowledgeBase& kb, bool include_order_axioms = true) {
  FreshVars fresh;
  std::vector<Formula> conjuncts;
  for (const auto& a : kb.abox) {
    if (a.kind == Axiom::Kind::ConceptAssertion)
      conjuncts.push_back(pi_concept(a.clhs, t_const(a.ind1), fresh));
  }
  for (const auto& a : kb.abox) {
    if (a.kind == Axiom::Kind::RoleAssertion)
      conjuncts.push_back(pi_role(a.rlhs, t_const(a.ind1), t_const(a.ind2), fresh));
  }
  for (const auto& a : kb.tbox) {
    std::string x = fresh.next("x");
    conjuncts.push_back(
        f_forall(x, pi_concept(c_or(c_not(a.clhs), a.crhs), t_var(x), fresh)));
  }
  for (const auto& a : kb.rbox) {
    auto [x, y] = fresh.next_pair();
    conjuncts.push_back(f_forall(x, f_forall(y,
        f_or(pi_role(r_not(a.rlhs), t_var(x), t_var(y), fresh),
             pi_role(a.rrhs, t_var(x), t_var(y), fresh)))));
  }
  if (include_order_axioms)
    for (auto& f : order_axiom_formulas()) conjuncts.push_back(std::move(f));
  if (conjuncts.empty())
    // Degenerate: empty KB with order axioms suppressed.  Anything valid does.
    conjuncts.push_back(f_forall("x", f_lit(lit_less(t_var("x"), t_var("x"), false))));
  return f_and_all(std::move(conjuncts));
}

// ---------------------------------------------------------------------------
// Finite interpretations and satisfaction.

struct FolInterpretation {
  int domain_size = 1;
  std::map<std::string, int> individuals;
  std::map<std::string, std::vector<bool>> concepts;  // size n
  std::map<std::string, std::vector<bool>> roles;     // size n*n
  std::vector<bool> less;                             // size n*n
  std::vector<bool> lless;                            // size n^4, index ((t*n+u)*n+v)*n+k
  std::map<std::string, std::map<std::vector<int>, int>> fns;

  bool less_at(int a, int b) const { return less[a * domain_size + b]; }
  bool lless_at(int a, int b, int c, int d) const {
    int n = domain_size;
    return lless[((a * n + b) * n + c) * n + d];
  }
};

using Env = std::map<std::string, int>;

inline int eval_term(const Term& t, const FolInterpretation& i, const Env& env) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw std::runtime_error("unbound variable " + t.name);
      return it->second;
    }
    case Term::Kind::Const: {
      auto it = i.individuals.find(t.name);
      if (it == i.individuals.end())
        throw std::runtime_error("uninterpreted constant " + t.name);
      return it->second;
    }
    case Term::Kind::Fn: {
      auto it = i.fns.find(t.name);
      if (it == i.fns.end()) throw std::runtime_error("uninterpreted function " + t.name);
      std::vector<int> vals;
      vals.reserve(t.args.size());
      for (const auto& a : t.args) vals.push_back(eval_term(a, i, env));
      auto jt = it->second.find(vals);
      if (jt == it->second.end()) throw std::runtime_error("partial function table " + t.name);
      return jt->second;
    }
  }
  return 0;
}

inline bool eval(const Literal& l, const FolInterpretation& i, const Env& env) {
  bool v = false;
  switch (l.atom) {
    case Literal::Atom::Concept: {
      auto it = i.concepts.find(l.pred);
      if (it == i.concepts.end()) throw std::runtime_error("uninterpreted concept " + l.pred);
      v = it->second[eval_term(l.args[0], i, env)];
      break;
    }
    case Literal::Atom::Role: {
      auto it = i.roles.find(l.pred);
      if (it == i.roles.end()) throw std::runtime_error("uninterpreted role " + l.pred);
      v = it->second[eval_term(l.args[0], i, env) * i.domain_size +
                     eval_term(l.args[1], i, env)];
      break;
    }
    case Literal::Atom::Less:
      v = i.less_at(eval_term(l.args[0], i, env), eval_term(l.args[1], i, env));
      break;
    case Literal::Atom::LLess:
      v = i.lless_at(eval_term(l.args[0], i, env), eval_term(l.args[1], i, env),
                     eval_term(l.args[2], i, env), eval_term(l.args[3], i, env));
      break;
  }
  return l.positive ? v : !v;
}

inline bool eval(const Formula& f, const FolInterpretation& i, Env& env) {
  switch (f.kind) {
    case Formula::Kind::Lit: return eval(f.lit, i, env);
    case Formula::Kind::And: return eval(f.lhs(), i, env) && eval(f.rhs(), i, env);
    case Formula::Kind::Or: return eval(f.lhs(), i, env) || eval(f.rhs(), i, env);
    case Formula::Kind::Not: return !eval(f.body(), i, env);
    case Formula::Kind::Forall: {
      for (int o = 0; o < i.domain_size; ++o) {
        auto saved = env.find(f.var) != env.end() ? std::optional<int>(env[f.var]) : std::nullopt;
        env[f.var] = o;
        bool ok = eval(f.body(), i, env);
        if (saved) env[f.var] = *saved; else env.erase(f.var);
        if (!ok) return false;
      }
      return true;
    }
    case Formula::Kind::Exists: {
      for (int o = 0; o < i.domain_size; ++o) {
        auto saved = env.find(f.var) != env.end() ? std::optional<int>(env[f.var]) : std::nullopt;
        env[f.var] = o;
        bool ok = eval(f.body(), i, env);
        if (saved) env[f.var] = *saved; else env.erase(f.var);
        if (ok) return true;
      }
      return false;
    }
  }
  return false;
}

inline bool eval(const Formula& f, const FolInterpretation& i) {
  Env env;
  return eval(f, i, env);
}

}  // namespace dlcm
