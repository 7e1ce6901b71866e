#pragma once

// DNF matrices and the translations that build them: the clausal union, the
// formula-to-matrix translation M(F,S) with built-in Herbrandization, and the
// direct rho/delta translations from concept/role expressions and knowledge
// bases.  Matrices are immutable once built.

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fol.hpp"
#include "kb.hpp"

namespace dlcm {

// ---------------------------------------------------------------------------

struct Clause {
  std::vector<Literal> lits;   // kept in canonical sorted order
  std::string origin;          // axiom or rule that produced it ("tbox[0]", "order[2]", "query")
  int copy_index = 0;          // 0 for originals, >= 1 for copies

  void sort_canonical() {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  }
  bool same_literals(const Clause& o) const { return lits == o.lits; }
  bool is_ground() const {
    for (const auto& l : lits)
      if (!dlcm::is_ground(l)) return false;
    return true;
  }
  std::vector<std::string> variables() const {
    std::vector<std::string> vs;
    for (const auto& l : lits) collect_vars(l, vs);
    return vs;
  }
};

struct Matrix {
  std::vector<Clause> clauses;
  Signature sig;
  // Herbrand symbols introduced during translation; constants have arity 0.
  std::vector<std::pair<std::string, int>> function_symbols;

  bool has_symbol(const std::string& n) const {
    for (const auto& [s, a] : function_symbols)
      if (s == n) return true;
    return false;
  }
};

// Ordered string of variables threaded through the translations; no
// duplicates.
struct VarString {
  std::vector<std::string> vars;

  bool empty() const { return vars.empty(); }
  VarString append(const std::string& v) const {
    VarString s = *this;
    if (std::find(s.vars.begin(), s.vars.end(), v) != s.vars.end())
      throw std::runtime_error("duplicate variable in string: " + v);
    s.vars.push_back(v);
    return s;
  }
};

using Multiplicity = std::map<int, int>;  // clause index -> copy count >= 1

// ---------------------------------------------------------------------------
// Fresh Herbrand symbols.  Functions are h1, h2, ...; constants c1, c2, ...;
// names already taken by the signature are skipped so terms never collide
// with user names.

class SymbolSource {
 public:
  explicit SymbolSource(Matrix* m) : m_(m) {}

  std::string fresh_fn_name() { return fresh("h", fn_counter_); }
  std::string fresh_var() { return "v" + std::to_string(++var_counter_); }

  Term fresh_const() {
    std::string name = fresh("c", const_counter_);
    m_->function_symbols.emplace_back(name, 0);
    return t_const(name);
  }

  // apply(f, S): a fresh constant when S is empty, otherwise f(x1,...,xn).
  Term apply(const std::string& fn, const VarString& s) {
    if (s.empty()) return fresh_const();
    std::vector<Term> args;
    args.reserve(s.vars.size());
    for (const auto& v : s.vars) args.push_back(t_var(v));
    register_fn(fn, static_cast<int>(s.vars.size()));
    return t_fn(fn, std::move(args));
  }

  Term apply_unary(const std::string& fn, const Term& arg) {
    register_fn(fn, 1);
    return t_fn(fn, {arg});
  }

  Term apply_fresh(const VarString& s) {
    if (s.empty()) return fresh_const();
    return apply(fresh_fn_name(), s);
  }

 private:
  std::string fresh(const char* prefix, int& counter) {
    while (true) {
      std::string cand = prefix + std::to_string(++counter);
      if (!m_->sig.has_any(cand) && !m_->has_symbol(cand)) return cand;
    }
  }

  void register_fn(const std::string& fn, int arity) {
    if (!m_->has_symbol(fn)) m_->function_symbols.emplace_back(fn, arity);
  }

  Matrix* m_;
  int fn_counter_ = 0;
  int const_counter_ = 0;
  int var_counter_ = 0;
};

inline Term apply_fn(const std::string& fn, const VarString& s, SymbolSource& src) {
  return src.apply(fn, s);
}

// ---------------------------------------------------------------------------
// Clause-set helpers.  Unions are set unions: duplicate clauses collapse.

namespace detail {

inline std::vector<Literal> literal_union(const std::vector<Literal>& a,
                                          const std::vector<Literal>& b) {
  std::vector<Literal> out = a;
  for (const auto& l : b)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

inline void push_clause(std::vector<Clause>& out, Clause c) {
  c.sort_canonical();
  for (const auto& e : out)
    if (e.same_literals(c)) return;
  out.push_back(std::move(c));
}

inline std::vector<Clause> mjoin_union(const std::vector<Clause>& a,
                                       const std::vector<Clause>& b) {
  std::vector<Clause> out;
  for (const auto& c : a) push_clause(out, c);
  for (const auto& c : b) push_clause(out, c);
  return out;
}

}  // namespace detail

// Clausal union: pairwise unions of clauses, implementing conjunction over
// DNF matrices.
inline std::vector<Clause> clausal_union(const std::vector<Clause>& m1,
                                         const std::vector<Clause>& m2) {
  std::vector<Clause> out;
  for (const auto& c1 : m1) {
    for (const auto& c2 : m2) {
      Clause c;
      c.lits = detail::literal_union(c1.lits, c2.lits);
      c.origin = c1.origin.empty() ? c2.origin
                 : c2.origin.empty() ? c1.origin
                                     : c1.origin + "*" + c2.origin;
      detail::push_clause(out, std::move(c));
    }
  }
  return out;
}

inline Matrix clausal_union(const Matrix& m1, const Matrix& m2) {
  Matrix out;
  out.sig = m1.sig;
  out.function_symbols = m1.function_symbols;
  for (const auto& [s, a] : m2.function_symbols)
    if (!out.has_symbol(s)) out.function_symbols.emplace_back(s, a);
  out.clauses = clausal_union(m1.clauses, m2.clauses);
  return out;
}

inline std::vector<Clause> unit_matrix(Literal l) {
  Clause c;
  c.lits = {std::move(l)};
  return {std::move(c)};
}

// ---------------------------------------------------------------------------
// Negation normal form: pushes negation to the literals.  Needed before
// matrix_of_formula, which has no case for compound negation.

inline Formula nnf(const Formula& f, bool negate = false) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Lit: return f_lit(negate ? complement(f.lit) : f.lit);
    case K::Not: return nnf(f.body(), !negate);
    case K::And: {
      Formula a = nnf(f.lhs(), negate), b = nnf(f.rhs(), negate);
      return negate ? f_or(std::move(a), std::move(b)) : f_and(std::move(a), std::move(b));
    }
    case K::Or: {
      Formula a = nnf(f.lhs(), negate), b = nnf(f.rhs(), negate);
      return negate ? f_and(std::move(a), std::move(b)) : f_or(std::move(a), std::move(b));
    }
    case K::Forall: {
      Formula b = nnf(f.body(), negate);
      return negate ? f_exists(f.var, std::move(b)) : f_forall(f.var, std::move(b));
    }
    case K::Exists: {
      Formula b = nnf(f.body(), negate);
      return negate ? f_forall(f.var, std::move(b)) : f_exists(f.var, std::move(b));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// M(F, S): matrix of an NNF formula.  Existential variables join the string;
// universal variables are replaced by Herbrand terms over it.  Bound
// variables are renamed apart on the fly, so reused names are safe.

namespace detail {

inline Term substitute_vars(const Term& t, const std::map<std::string, Term>& env) {
  if (t.kind == Term::Kind::Var) {
    auto it = env.find(t.name);
    return it == env.end() ? t : it->second;
  }
  if (t.kind == Term::Kind::Const) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(substitute_vars(a, env));
  return t_fn(t.name, std::move(args));
}

inline Literal substitute_vars(const Literal& l, const std::map<std::string, Term>& env) {
  Literal out = l;
  for (auto& a : out.args) a = substitute_vars(a, env);
  return out;
}

inline std::vector<Clause> matrix_of_formula_rec(const Formula& f, const VarString& s,
                                                 std::map<std::string, Term>& env,
                                                 SymbolSource& src) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Lit:
      return unit_matrix(substitute_vars(f.lit, env));
    case K::Or: {
      auto a = matrix_of_formula_rec(f.lhs(), s, env, src);
      auto b = matrix_of_formula_rec(f.rhs(), s, env, src);
      return mjoin_union(a, b);
    }
    case K::And: {
      auto a = matrix_of_formula_rec(f.lhs(), s, env, src);
      auto b = matrix_of_formula_rec(f.rhs(), s, env, src);
      return clausal_union(a, b);
    }
    case K::Exists: {
      std::string fresh = src.fresh_var();
      auto saved = env.find(f.var) != env.end() ? std::optional<Term>(env[f.var]) : std::nullopt;
      env[f.var] = t_var(fresh);
      auto out = matrix_of_formula_rec(f.body(), s.append(fresh), env, src);
      if (saved) env[f.var] = *saved; else env.erase(f.var);
      return out;
    }
    case K::Forall: {
      Term h = src.apply_fresh(s);
      auto saved = env.find(f.var) != env.end() ? std::optional<Term>(env[f.var]) : std::nullopt;
      env[f.var] = h;
      auto out = matrix_of_formula_rec(f.body(), s, env, src);
      if (saved) env[f.var] = *saved; else env.erase(f.var);
      return out;
    }
    case K::Not:
      throw std::runtime_error("matrix_of_formula: input must be in NNF");
  }
  return {};
}

}  // namespace detail

inline Matrix matrix_of_formula(const Formula& f, const VarString& s, const Signature& sig) {
  Matrix m;
  m.sig = sig;
  SymbolSource src(&m);
  std::map<std::string, Term> env;
  m.clauses = detail::matrix_of_formula_rec(f, s, env, src);
  return m;
}

// ---------------------------------------------------------------------------
// rho: role expressions to matrices.  Five cases; * introduces two fresh
// unary function symbols, ~* two fresh variables.  Nested * recurses through
// the inner role expression.

inline std::vector<Clause> rho_role(const RoleExpr& r, const Term& t, const Term& u,
                                    SymbolSource& src) {
  using K = RoleExpr::Kind;
  switch (r.kind) {
    case K::Atom:
      return unit_matrix(lit_role(r.name, t, u));
    case K::Typical: {
      // rho(R,t,u) (*) [ {{~((f(t),g(u)) << (t,u))}} u rho(~*R, f(t), g(u)) ]
      Term f_of_t = src.apply_unary(src.fresh_fn_name(), t);
      Term g_of_u = src.apply_unary(src.fresh_fn_name(), u);
      std::vector<Clause> right =
          detail::mjoin_union(unit_matrix(lit_lless(f_of_t, g_of_u, t, u, /*pos=*/false)),
                              rho_role(r_not(r), f_of_t, g_of_u, src));
      return clausal_union(rho_role(r.inner(), t, u, src), right);
    }
    case K::Not: {
      const RoleExpr& in = r.inner();
      if (in.kind == K::Atom) return unit_matrix(lit_role(in.name, t, u, /*pos=*/false));
      if (in.kind == K::Not) return rho_role(in.inner(), t, u, src);
      // ~*R: {{rho(~R,t,u)}} u [ {{(x,y) << (t,u)}} (*) rho(R,x,y) ]
      std::string x = src.fresh_var();
      std::string y = src.fresh_var();
      auto right = clausal_union(unit_matrix(lit_lless(t_var(x), t_var(y), t, u)),
                                 rho_role(in.inner(), t_var(x), t_var(y), src));
      return detail::mjoin_union(rho_role(r_not(in.inner()), t, u, src), right);
    }
  }
  return {};
}

// rho: concept expressions to matrices, thirteen cases.  Expects normalized
// input (no top/bot).
inline std::vector<Clause> rho_concept(const ConceptExpr& d, const Term& t, const VarString& s,
                                       SymbolSource& src);

namespace detail {

inline std::vector<Clause> rho_not_concept(const ConceptExpr& in, const Term& t,
                                           const VarString& s, SymbolSource& src) {
  using K = ConceptExpr::Kind;
  switch (in.kind) {
    case K::Atom:  // case 2
      return unit_matrix(lit_concept(in.name, t, /*pos=*/false));
    case K::And:   // case 4
      return mjoin_union(rho_concept(c_not(in.lhs()), t, s, src),
                         rho_concept(c_not(in.rhs()), t, s, src));
    case K::Or:    // case 6
      return clausal_union(rho_concept(c_not(in.lhs()), t, s, src),
                           rho_concept(c_not(in.rhs()), t, s, src));
    case K::Some: {  // case 8
      Term h = src.apply_fresh(s);
      return mjoin_union(rho_role(r_not(in.role()), t, h, src),
                         rho_concept(c_not(in.inner()), h, s, src));
    }
    case K::All: {   // case 10
      std::string x = src.fresh_var();
      return clausal_union(rho_role(in.role(), t, t_var(x), src),
                           rho_concept(c_not(in.inner()), t_var(x), s.append(x), src));
    }
    case K::Typical: {  // case 12: rho(~D,t,S) u [ {{x < t}} (*) rho(D,x,S.x) ]
      std::string x = src.fresh_var();
      auto right = clausal_union(unit_matrix(lit_less(t_var(x), t)),
                                 rho_concept(in.inner(), t_var(x), s.append(x), src));
      return mjoin_union(rho_concept(c_not(in.inner()), t, s, src), right);
    }
    case K::Not:   // case 13
      return rho_concept(in.inner(), t, s, src);
    default:
      throw std::runtime_error("rho_concept: top/bot must be normalized away");
  }
}

}  // namespace detail

inline std::vector<Clause> rho_concept(const ConceptExpr& d, const Term& t, const VarString& s,
                                       SymbolSource& src) {
  using K = ConceptExpr::Kind;
  switch (d.kind) {
    case K::Atom:  // case 1
      return unit_matrix(lit_concept(d.name, t));
    case K::And:   // case 3
      return clausal_union(rho_concept(d.lhs(), t, s, src), rho_concept(d.rhs(), t, s, src));
    case K::Or:    // case 5
      return detail::mjoin_union(rho_concept(d.lhs(), t, s, src),
                                 rho_concept(d.rhs(), t, s, src));
    case K::Some: {  // case 7
      std::string x = src.fresh_var();
      return clausal_union(rho_role(d.role(), t, t_var(x), src),
                           rho_concept(d.inner(), t_var(x), s.append(x), src));
    }
    case K::All: {   // case 9
      Term h = src.apply_fresh(s);
      return detail::mjoin_union(rho_role(r_not(d.role()), t, h, src),
                                 rho_concept(d.inner(), h, s, src));
    }
    case K::Typical: {  // case 11: rho(D,t,S) (*) [ {{~(h(S) < t)}} u rho(~*D, h(S), S) ]
      Term h = src.apply_fresh(s);
      auto right = detail::mjoin_union(unit_matrix(lit_less(h, t, /*pos=*/false)),
                                       detail::rho_not_concept(c_typical(d.inner()), h, s, src));
      return clausal_union(rho_concept(d.inner(), t, s, src), right);
    }
    case K::Not:
      return detail::rho_not_concept(d.inner(), t, s, src);
    default:
      throw std::runtime_error("rho_concept: top/bot must be normalized away");
  }
}

// ---------------------------------------------------------------------------
// The six order clauses (negations of transitivity, irreflexivity and
// asymmetry for < and <<, as they appear in the negated KB).

inline std::vector<Clause> order_clauses() {
  auto v = [](const char* n) { return t_var(n); };
  std::vector<Clause> out;
  auto add = [&](std::vector<Literal> lits, const char* tag) {
    Clause c;
    c.lits = std::move(lits);
    c.origin = tag;
    out.push_back(std::move(c));
  };
  add({lit_less(v("x"), v("y")), lit_less(v("y"), v("z")), lit_less(v("x"), v("z"), false)},
      "order[0]");
  add({lit_less(v("x"), v("x"))}, "order[1]");
  add({lit_less(v("x"), v("y")), lit_less(v("y"), v("x"))}, "order[2]");
  add({lit_lless(v("x"), v("y"), v("z"), v("k")), lit_lless(v("z"), v("k"), v("m"), v("n")),
       lit_lless(v("x"), v("y"), v("m"), v("n"), false)},
      "order[3]");
  add({lit_lless(v("x"), v("y"), v("x"), v("y"))}, "order[4]");
  add({lit_lless(v("x"), v("y"), v("z"), v("k")), lit_lless(v("z"), v("k"), v("x"), v("y"))},
      "order[5]");
  return out;
}

// ---------------------------------------------------------------------------
// Standardizing apart: renames variables so no variable is shared across
// clauses.  Variable names become x<i>, y<i>, ... with i the 1-based clause
// number, assigned in order of first occurrence within the clause.

inline void standardize_apart(Matrix& m) {
  static const char* bases[] = {"x", "y", "z", "u", "v", "w"};
  std::set<std::string> taken;
  for (size_t ci = 0; ci < m.clauses.size(); ++ci) {
    Clause& c = m.clauses[ci];
    std::map<std::string, Term> ren;
    int ordinal = 0;
    for (const auto& v : c.variables()) {
      std::string name;
      int tick = 0;
      do {
        std::string base = bases[ordinal % 6];
        for (int p = 0; p < ordinal / 6 + tick; ++p) base += "'";
        name = base + std::to_string(ci + 1);
        ++tick;
      } while (taken.count(name));
      taken.insert(name);
      ren[v] = t_var(name);
      ++ordinal;
    }
    if (ren.empty()) continue;
    for (auto& l : c.lits) l = detail::substitute_vars(l, ren);
    c.sort_canonical();
  }
}

// ---------------------------------------------------------------------------
// delta: knowledge base to matrix.  Clause order follows the KB: TBox, RBox,
// ABox, then the order clauses.  Expects normalized input.

namespace detail {

inline void append_clauses(Matrix& m, std::vector<Clause> cs, const std::string& origin) {
  for (auto& c : cs) {
    c.origin = origin;
    push_clause(m.clauses, std::move(c));
  }
}

inline void delta_into(Matrix& m, SymbolSource& src, const KnowledgeBase& kb) {
  for (size_t i = 0; i < kb.tbox.size(); ++i) {
    const Axiom& a = kb.tbox[i];
    std::string x = src.fresh_var();
    auto cs = rho_concept(c_and(a.clhs, c_not(a.crhs)), t_var(x), VarString{}.append(x), src);
    append_clauses(m, std::move(cs), "tbox[" + std::to_string(i) + "]");
  }
  for (size_t i = 0; i < kb.rbox.size(); ++i) {
    const Axiom& a = kb.rbox[i];
    std::string x = src.fresh_var();
    std::string y = src.fresh_var();
    auto cs = clausal_union(rho_role(a.rlhs, t_var(x), t_var(y), src),
                            rho_role(r_not(a.rrhs), t_var(x), t_var(y), src));
    append_clauses(m, std::move(cs), "rbox[" + std::to_string(i) + "]");
  }
  for (size_t i = 0; i < kb.abox.size(); ++i) {
    const Axiom& a = kb.abox[i];
    std::vector<Clause> cs;
    if (a.kind == Axiom::Kind::ConceptAssertion)
      cs = rho_concept(c_not(a.clhs), t_const(a.ind1), VarString{}, src);
    else
      cs = rho_role(r_not(a.rlhs), t_const(a.ind1), t_const(a.ind2), src);
    append_clauses(m, std::move(cs), "abox[" + std::to_string(i) + "]");
  }
}

}  // namespace detail

inline Matrix delta(const KnowledgeBase& kb, bool include_order_axioms = true) {
  Matrix m;
  m.sig = kb.sig;
  SymbolSource src(&m);
  detail::delta_into(m, src, kb);
  if (include_order_axioms)
    for (auto& c : order_clauses()) detail::push_clause(m.clauses, std::move(c));
  for (auto& c : m.clauses) c.sort_canonical();
  standardize_apart(m);
  return m;
}

// delta(K) plus the translation of the query axiom, which enters without
// negation.  Subsumption queries Herbrandize their variable to fresh
// constants.
inline Matrix build_query_matrix(const KnowledgeBase& kb, const Axiom& q,
                                 bool include_order_axioms = true) {
  Matrix m;
  m.sig = kb.sig;
  SymbolSource src(&m);
  detail::delta_into(m, src, kb);
  std::vector<Clause> qs;
  switch (q.kind) {
    case Axiom::Kind::ConceptAssertion:
      qs = rho_concept(q.clhs, t_const(q.ind1), VarString{}, src);
      break;
    case Axiom::Kind::RoleAssertion:
      qs = rho_role(q.rlhs, t_const(q.ind1), t_const(q.ind2), src);
      break;
    case Axiom::Kind::GCI: {
      Term c = src.fresh_const();
      qs = detail::mjoin_union(rho_concept(c_not(q.clhs), c, VarString{}, src),
                               rho_concept(q.crhs, c, VarString{}, src));
      break;
    }
    case Axiom::Kind::RIA: {
      Term c1 = src.fresh_const();
      Term c2 = src.fresh_const();
      qs = detail::mjoin_union(rho_role(r_not(q.rlhs), c1, c2, src),
                               rho_role(q.rrhs, c1, c2, src));
      break;
    }
  }
  detail::append_clauses(m, std::move(qs), "query");
  if (include_order_axioms)
    for (auto& c : order_clauses()) detail::push_clause(m.clauses, std::move(c));
  for (auto& c : m.clauses) c.sort_canonical();
  standardize_apart(m);
  return m;
}

// ---------------------------------------------------------------------------
// Paths: lazily enumerates one-literal-per-clause selections.  A matrix with
// no clauses has exactly one (empty) path; a matrix with an empty clause has
// none.

class PathEnumerator {
 public:
  explicit PathEnumerator(const Matrix& m) : m_(&m), idx_(m.clauses.size(), 0) {
    for (const auto& c : m.clauses)
      if (c.lits.empty()) done_ = true;
  }

  std::optional<std::vector<Literal>> next() {
    if (done_) return std::nullopt;
    std::vector<Literal> path;
    path.reserve(idx_.size());
    for (size_t i = 0; i < idx_.size(); ++i) path.push_back(m_->clauses[i].lits[idx_[i]]);
    // advance odometer
    size_t i = idx_.size();
    while (i > 0) {
      --i;
      if (++idx_[i] < m_->clauses[i].lits.size()) break;
      idx_[i] = 0;
      if (i == 0) done_ = true;
    }
    if (idx_.empty()) done_ = true;
    return path;
  }

  // Number of paths, for small matrices.
  static unsigned long long count(const Matrix& m) {
    unsigned long long n = 1;
    for (const auto& c : m.clauses) n *= c.lits.size();
    return n;
  }

 private:
  const Matrix* m_;
  std::vector<size_t> idx_;
  bool done_ = false;
};

// ---------------------------------------------------------------------------
// Clause copies: same literals, variables consistently renamed.  Ground
// clauses come back unchanged apart from the copy index.

inline Clause copy_clause(const Clause& c, int copy_index) {
  Clause out = c;
  out.copy_index = copy_index;
  std::map<std::string, Term> ren;
  for (const auto& v : c.variables()) ren[v] = t_var(v + "#" + std::to_string(copy_index));
  if (!ren.empty()) {
    for (auto& l : out.lits) l = detail::substitute_vars(l, ren);
    out.sort_canonical();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing, one clause per line.

inline std::string print_clause(const Clause& c) {
  std::string s = "{ ";
  for (size_t i = 0; i < c.lits.size(); ++i) s += (i ? ", " : "") + print_literal(c.lits[i]);
  return s + " }";
}

inline std::string print_matrix(const Matrix& m) {
  std::ostringstream out;
  for (const auto& c : m.clauses) out << print_clause(c) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Alpha equivalence of clauses: same literals up to a variable bijection.
// Used by tests to compare against expected matrices modulo renaming.

namespace detail {

inline bool alpha_match_term(const Term& a, const Term& b, std::map<std::string, std::string>& fw,
                             std::map<std::string, std::string>& bw) {
  if (a.kind != b.kind) return false;
  if (a.kind == Term::Kind::Var) {
    auto f = fw.find(a.name);
    auto g = bw.find(b.name);
    if (f == fw.end() && g == bw.end()) {
      fw[a.name] = b.name;
      bw[b.name] = a.name;
      return true;
    }
    return f != fw.end() && g != bw.end() && f->second == b.name && g->second == a.name;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_match_term(a.args[i], b.args[i], fw, bw)) return false;
  return true;
}

inline bool alpha_match_rec(const std::vector<Literal>& as, std::vector<bool>& used,
                            const std::vector<Literal>& bs, size_t i,
                            std::map<std::string, std::string> fw,
                            std::map<std::string, std::string> bw) {
  if (i == as.size()) return true;
  for (size_t j = 0; j < bs.size(); ++j) {
    if (used[j]) continue;
    const Literal& a = as[i];
    const Literal& b = bs[j];
    if (a.atom != b.atom || a.positive != b.positive || a.pred != b.pred ||
        a.args.size() != b.args.size())
      continue;
    auto fw2 = fw;
    auto bw2 = bw;
    bool ok = true;
    for (size_t k = 0; k < a.args.size() && ok; ++k)
      ok = alpha_match_term(a.args[k], b.args[k], fw2, bw2);
    if (!ok) continue;
    used[j] = true;
    if (alpha_match_rec(as, used, bs, i + 1, std::move(fw2), std::move(bw2))) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace detail

inline bool alpha_equivalent(const Clause& a, const Clause& b) {
  if (a.lits.size() != b.lits.size()) return false;
  std::vector<bool> used(b.lits.size(), false);
  return detail::alpha_match_rec(a.lits, used, b.lits, 0, {}, {});
}

// Matrices equal as clause sets modulo per-clause variable renaming, order
// insensitive.
inline bool alpha_equivalent(const Matrix& a, const Matrix& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  std::vector<bool> used(b.clauses.size(), false);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == a.clauses.size()) return true;
    for (size_t j = 0; j < b.clauses.size(); ++j) {
      if (used[j] || !alpha_equivalent(a.clauses[i], b.clauses[j])) continue;
      used[j] = true;
      if (rec(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return rec(0);
}

}  // namespace dlcm
