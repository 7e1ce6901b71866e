#pragma once

// Independent brute-force semantics used to test the prover: enumeration of
// finite bi-ordered interpretations for countermodel search, and exhaustive
// ground path-complementarity checking.
//
// The enumeration works on a compact bitmask representation (domains up to
// 3, pair preference up to domain 2, larger pair orders default to empty);
// the public surface converts to an explicit set-based structure.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kb.hpp"
#include "matrix.hpp"

namespace dlcm {

// ---------------------------------------------------------------------------

struct BiOrderedInterpretation {
  int domain_size = 1;
  std::map<std::string, int> individuals;
  std::map<std::string, std::set<int>> concepts;
  std::map<std::string, std::set<std::pair<int, int>>> roles;
  std::set<std::pair<int, int>> less;
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> lless;
};

namespace oracle_detail {

// All strict partial orders on k labelled elements, as bitmasks with bit
// a*k+b meaning a < b.  Irreflexive and transitive; asymmetry follows.
inline std::vector<uint32_t> spo_masks(int k) {
  std::vector<int> offdiag;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b) offdiag.push_back(a * k + b);
  std::vector<uint32_t> out;
  for (uint32_t sel = 0; sel < (1u << offdiag.size()); ++sel) {
    uint32_t mask = 0;
    for (size_t i = 0; i < offdiag.size(); ++i)
      if (sel & (1u << i)) mask |= 1u << offdiag[i];
    bool ok = true;
    for (int a = 0; a < k && ok; ++a)
      for (int b = 0; b < k && ok; ++b)
        for (int c = 0; c < k && ok; ++c)
          if ((mask >> (a * k + b) & 1) && (mask >> (b * k + c) & 1) &&
              !(mask >> (a * k + c) & 1))
            ok = false;
    if (ok) out.push_back(mask);
  }
  return out;
}

// Compiled expressions: names resolved to dense indices once per query.
struct SymbolIds {
  std::vector<std::string> concepts, roles, individuals;
  int concept_id(const std::string& n) const { return find(concepts, n); }
  int role_id(const std::string& n) const { return find(roles, n); }
  int individual_id(const std::string& n) const { return find(individuals, n); }
  static int find(const std::vector<std::string>& v, const std::string& n) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] == n) return static_cast<int>(i);
    throw std::runtime_error("oracle: unknown name " + n);
  }
  static SymbolIds from(const Signature& sig) {
    return SymbolIds{sig.concepts, sig.roles, sig.individuals};
  }
};

struct CompiledRole {
  RoleExpr::Kind kind;
  int id = -1;
  std::vector<CompiledRole> kids;
};

struct CompiledConcept {
  ConceptExpr::Kind kind;
  int id = -1;
  std::vector<CompiledRole> roles;
  std::vector<CompiledConcept> kids;
};

struct CompiledAxiom {
  Axiom::Kind kind;
  CompiledConcept c1, c2;
  CompiledRole r1, r2;
  int i1 = -1, i2 = -1;
};

inline CompiledRole compile(const RoleExpr& r, const SymbolIds& ids) {
  CompiledRole out;
  out.kind = r.kind;
  if (r.kind == RoleExpr::Kind::Atom)
    out.id = ids.role_id(r.name);
  else
    out.kids.push_back(compile(r.inner(), ids));
  return out;
}

inline CompiledConcept compile(const ConceptExpr& c, const SymbolIds& ids) {
  CompiledConcept out;
  out.kind = c.kind;
  if (c.kind == ConceptExpr::Kind::Atom) out.id = ids.concept_id(c.name);
  for (const auto& r : c.roles) out.roles.push_back(compile(r, ids));
  for (const auto& k : c.kids) out.kids.push_back(compile(k, ids));
  return out;
}

inline CompiledAxiom compile(const Axiom& a, const SymbolIds& ids) {
  CompiledAxiom out;
  out.kind = a.kind;
  switch (a.kind) {
    case Axiom::Kind::GCI:
      out.c1 = compile(a.clhs, ids);
      out.c2 = compile(a.crhs, ids);
      break;
    case Axiom::Kind::RIA:
      out.r1 = compile(a.rlhs, ids);
      out.r2 = compile(a.rrhs, ids);
      break;
    case Axiom::Kind::ConceptAssertion:
      out.c1 = compile(a.clhs, ids);
      out.i1 = ids.individual_id(a.ind1);
      break;
    case Axiom::Kind::RoleAssertion:
      out.r1 = compile(a.rlhs, ids);
      out.i1 = ids.individual_id(a.ind1);
      out.i2 = ids.individual_id(a.ind2);
      break;
  }
  return out;
}

// Compact interpretation: extensions as bitmasks.  Pair orders beyond domain
// size 2 are empty.
struct CompactInterp {
  int n = 1;
  std::vector<uint16_t> cext;  // bit x
  std::vector<uint16_t> rext;  // bit x*n+y
  std::vector<int> ind;        // object per individual
  uint16_t less = 0;           // bit x*n+y
  uint32_t lless = 0;          // n <= 2: bit p1*(n*n)+p2 over pair indices

  int cid_count() const { return static_cast<int>(cext.size()); }
  bool less_at(int x, int y) const { return less >> (x * n + y) & 1; }
  bool lless_at(int x, int y, int z, int k) const {
    if (n > 2) return false;
    int p1 = x * n + y, p2 = z * n + k;
    return lless >> (p1 * n * n + p2) & 1;
  }
  uint16_t cmask(int id) const { return cext[id]; }
  uint16_t rmask(int id) const { return rext[id]; }
};

// Adapter over the explicit structure so both share one evaluator.
struct FriendlyInterp {
  const BiOrderedInterpretation* o;
  const SymbolIds* ids;
  int n;

  explicit FriendlyInterp(const BiOrderedInterpretation& b, const SymbolIds& s)
      : o(&b), ids(&s), n(b.domain_size) {}

  bool less_at(int x, int y) const { return o->less.count({x, y}) > 0; }
  bool lless_at(int x, int y, int z, int k) const {
    return o->lless.count({{x, y}, {z, k}}) > 0;
  }
  uint16_t cmask(int id) const {
    uint16_t m = 0;
    auto it = o->concepts.find(ids->concepts[id]);
    if (it != o->concepts.end())
      for (int x : it->second) m |= uint16_t(1) << x;
    return m;
  }
  uint16_t rmask(int id) const {
    uint16_t m = 0;
    auto it = o->roles.find(ids->roles[id]);
    if (it != o->roles.end())
      for (auto [x, y] : it->second) m |= uint16_t(1) << (x * n + y);
    return m;
  }
};

template <class I>
uint16_t role_mask(const CompiledRole& r, const I& it) {
  int n = it.n;
  uint16_t all = static_cast<uint16_t>((1u << (n * n)) - 1);
  switch (r.kind) {
    case RoleExpr::Kind::Atom:
      return it.rmask(r.id);
    case RoleExpr::Kind::Not:
      return all & ~role_mask(r.kids[0], it);
    case RoleExpr::Kind::Typical: {
      uint16_t inner = role_mask(r.kids[0], it);
      uint16_t out = 0;
      for (int p = 0; p < n * n; ++p) {
        if (!(inner >> p & 1)) continue;
        bool minimal = true;
        for (int q = 0; q < n * n && minimal; ++q)
          if ((inner >> q & 1) && it.lless_at(q / n, q % n, p / n, p % n)) minimal = false;
        if (minimal) out |= uint16_t(1) << p;
      }
      return out;
    }
  }
  return 0;
}

template <class I>
uint16_t concept_mask(const CompiledConcept& c, const I& it) {
  int n = it.n;
  uint16_t all = static_cast<uint16_t>((1u << n) - 1);
  switch (c.kind) {
    case ConceptExpr::Kind::Atom: return it.cmask(c.id);
    case ConceptExpr::Kind::Top: return all;
    case ConceptExpr::Kind::Bot: return 0;
    case ConceptExpr::Kind::Not: return all & ~concept_mask(c.kids[0], it);
    case ConceptExpr::Kind::And:
      return concept_mask(c.kids[0], it) & concept_mask(c.kids[1], it);
    case ConceptExpr::Kind::Or:
      return concept_mask(c.kids[0], it) | concept_mask(c.kids[1], it);
    case ConceptExpr::Kind::Some: {
      uint16_t rm = role_mask(c.roles[0], it);
      uint16_t dm = concept_mask(c.kids[0], it);
      uint16_t out = 0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if ((rm >> (x * n + y) & 1) && (dm >> y & 1)) { out |= uint16_t(1) << x; break; }
      return out;
    }
    case ConceptExpr::Kind::All: {
      uint16_t rm = role_mask(c.roles[0], it);
      uint16_t dm = concept_mask(c.kids[0], it);
      uint16_t out = 0;
      for (int x = 0; x < n; ++x) {
        bool ok = true;
        for (int y = 0; y < n && ok; ++y)
          if ((rm >> (x * n + y) & 1) && !(dm >> y & 1)) ok = false;
        if (ok) out |= uint16_t(1) << x;
      }
      return out;
    }
    case ConceptExpr::Kind::Typical: {
      uint16_t dm = concept_mask(c.kids[0], it);
      uint16_t out = 0;
      for (int x = 0; x < n; ++x) {
        if (!(dm >> x & 1)) continue;
        bool minimal = true;
        for (int y = 0; y < n && minimal; ++y)
          if ((dm >> y & 1) && it.less_at(y, x)) minimal = false;
        if (minimal) out |= uint16_t(1) << x;
      }
      return out;
    }
  }
  return 0;
}

struct CompactInterp;
struct FriendlyInterp;
inline int it_ind(int id, const CompactInterp& it);
inline int it_ind(int id, const FriendlyInterp& it);

template <class I>
bool holds(const CompiledAxiom& a, const I& it) {
  int n = it.n;
  switch (a.kind) {
    case Axiom::Kind::GCI:
      return (concept_mask(a.c1, it) & ~concept_mask(a.c2, it)) == 0;
    case Axiom::Kind::RIA:
      return (role_mask(a.r1, it) & ~role_mask(a.r2, it)) == 0;
    case Axiom::Kind::ConceptAssertion:
      return concept_mask(a.c1, it) >> it_ind(a.i1, it) & 1;
    case Axiom::Kind::RoleAssertion:
      return role_mask(a.r1, it) >> (it_ind(a.i1, it) * n + it_ind(a.i2, it)) & 1;
  }
  return false;
}

inline int it_ind(int id, const CompactInterp& it) { return it.ind[id]; }
inline int it_ind(int id, const FriendlyInterp& it) {
  return it.o->individuals.at(it.ids->individuals[id]);
}

template <class I>
bool models(const std::vector<CompiledAxiom>& axs, const I& it) {
  for (const auto& a : axs)
    if (!holds(a, it)) return false;
  return true;
}

// Enumerates compact interpretations for a signature up to maxDomain.  The
// callback returns false to stop; the function returns false if stopped.
template <class F>
bool for_each_interp(const SymbolIds& ids, int max_domain, F&& fn) {
  int nc = static_cast<int>(ids.concepts.size());
  int nr = static_cast<int>(ids.roles.size());
  int ni = static_cast<int>(ids.individuals.size());
  for (int n = 1; n <= max_domain; ++n) {
    auto less_list = spo_masks(n);
    std::vector<uint32_t> lless_list = n <= 2 ? spo_masks(n * n) : std::vector<uint32_t>{0};
    CompactInterp it;
    it.n = n;
    it.cext.assign(nc, 0);
    it.rext.assign(nr, 0);
    it.ind.assign(ni, 0);
    // mixed-radix odometer over all tables
    std::vector<long> radix;
    for (int i = 0; i < nc; ++i) radix.push_back(1l << n);
    for (int i = 0; i < nr; ++i) radix.push_back(1l << (n * n));
    for (int i = 0; i < ni; ++i) radix.push_back(n);
    radix.push_back(static_cast<long>(less_list.size()));
    radix.push_back(static_cast<long>(lless_list.size()));
    std::vector<long> dial(radix.size(), 0);
    while (true) {
      size_t d = 0;
      for (int i = 0; i < nc; ++i) it.cext[i] = static_cast<uint16_t>(dial[d++]);
      for (int i = 0; i < nr; ++i) it.rext[i] = static_cast<uint16_t>(dial[d++]);
      for (int i = 0; i < ni; ++i) it.ind[i] = static_cast<int>(dial[d++]);
      it.less = static_cast<uint16_t>(less_list[dial[d++]]);
      it.lless = lless_list[dial[d]];
      if (!fn(it)) return false;
      // advance
      size_t i = radix.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++dial[i] < radix[i]) { done = false; break; }
        dial[i] = 0;
      }
      if (done) break;
    }
  }
  return true;
}

inline BiOrderedInterpretation to_friendly(const CompactInterp& it, const SymbolIds& ids) {
  BiOrderedInterpretation o;
  o.domain_size = it.n;
  for (size_t i = 0; i < ids.individuals.size(); ++i) o.individuals[ids.individuals[i]] = it.ind[i];
  for (size_t i = 0; i < ids.concepts.size(); ++i) {
    auto& s = o.concepts[ids.concepts[i]];
    for (int x = 0; x < it.n; ++x)
      if (it.cext[i] >> x & 1) s.insert(x);
  }
  for (size_t i = 0; i < ids.roles.size(); ++i) {
    auto& s = o.roles[ids.roles[i]];
    for (int x = 0; x < it.n; ++x)
      for (int y = 0; y < it.n; ++y)
        if (it.rext[i] >> (x * it.n + y) & 1) s.insert({x, y});
  }
  for (int x = 0; x < it.n; ++x)
    for (int y = 0; y < it.n; ++y)
      if (it.less_at(x, y)) o.less.insert({x, y});
  for (int x = 0; x < it.n; ++x)
    for (int y = 0; y < it.n; ++y)
      for (int z = 0; z < it.n; ++z)
        for (int k = 0; k < it.n; ++k)
          if (it.lless_at(x, y, z, k)) o.lless.insert({{x, y}, {z, k}});
  return o;
}

inline std::vector<CompiledAxiom> compile_kb(const KnowledgeBase& kb, const SymbolIds& ids) {
  std::vector<CompiledAxiom> out;
  for (const auto& a : kb.tbox) out.push_back(compile(a, ids));
  for (const auto& a : kb.rbox) out.push_back(compile(a, ids));
  for (const auto& a : kb.abox) out.push_back(compile(a, ids));
  return out;
}

}  // namespace oracle_detail

// ---------------------------------------------------------------------------
// Public oracle surface.

// Does the interpretation satisfy every axiom of the KB?  Works directly on
// the set-based structure; typicality is evaluated via minima under the
// orders.
inline bool check_model(const BiOrderedInterpretation& o, const KnowledgeBase& kb) {
  auto ids = oracle_detail::SymbolIds::from(kb.sig);
  auto axs = oracle_detail::compile_kb(kb, ids);
  oracle_detail::FriendlyInterp fi(o, ids);
  return oracle_detail::models(axs, fi);
}

inline bool check_model(const BiOrderedInterpretation& o, const KnowledgeBase& kb,
                        const Axiom& q) {
  auto ids = oracle_detail::SymbolIds::from(kb.sig);
  auto ax = oracle_detail::compile(q, ids);
  oracle_detail::FriendlyInterp fi(o, ids);
  return oracle_detail::holds(ax, fi);
}

// Stream of all bi-ordered interpretations over a signature up to a domain
// bound.  Bound 3 is the combinatorial guard; pair orders are enumerated only
// up to domain 2 and default to empty beyond.
class InterpretationEnumerator {
 public:
  InterpretationEnumerator(const Signature& sig, int max_domain, bool override_guard = false)
      : ids_(oracle_detail::SymbolIds::from(sig)), max_domain_(max_domain) {
    if (max_domain > 3 && !override_guard)
      throw std::runtime_error("interpretation enumeration beyond domain 3 requires override");
    enter_domain(1);
  }

  std::optional<BiOrderedInterpretation> next() {
    while (n_ <= max_domain_) {
      if (!exhausted_) {
        fill_current();
        BiOrderedInterpretation out = oracle_detail::to_friendly(it_, ids_);
        advance();
        return out;
      }
      enter_domain(n_ + 1);
    }
    return std::nullopt;
  }

 private:
  void enter_domain(int n) {
    n_ = n;
    if (n_ > max_domain_) return;
    less_list_ = oracle_detail::spo_masks(n_);
    lless_list_ = n_ <= 2 ? oracle_detail::spo_masks(n_ * n_) : std::vector<uint32_t>{0};
    int nc = static_cast<int>(ids_.concepts.size());
    int nr = static_cast<int>(ids_.roles.size());
    int ni = static_cast<int>(ids_.individuals.size());
    radix_.clear();
    for (int i = 0; i < nc; ++i) radix_.push_back(1l << n_);
    for (int i = 0; i < nr; ++i) radix_.push_back(1l << (n_ * n_));
    for (int i = 0; i < ni; ++i) radix_.push_back(n_);
    radix_.push_back(static_cast<long>(less_list_.size()));
    radix_.push_back(static_cast<long>(lless_list_.size()));
    dial_.assign(radix_.size(), 0);
    it_.n = n_;
    it_.cext.assign(nc, 0);
    it_.rext.assign(nr, 0);
    it_.ind.assign(ni, 0);
    exhausted_ = false;
  }

  void fill_current() {
    size_t d = 0;
    for (auto& c : it_.cext) c = static_cast<uint16_t>(dial_[d++]);
    for (auto& r : it_.rext) r = static_cast<uint16_t>(dial_[d++]);
    for (auto& i : it_.ind) i = static_cast<int>(dial_[d++]);
    it_.less = static_cast<uint16_t>(less_list_[dial_[d++]]);
    it_.lless = lless_list_[dial_[d]];
  }

  void advance() {
    size_t i = radix_.size();
    while (i > 0) {
      --i;
      if (++dial_[i] < radix_[i]) return;
      dial_[i] = 0;
    }
    exhausted_ = true;
  }

  oracle_detail::SymbolIds ids_;
  int max_domain_;
  int n_ = 1;
  bool exhausted_ = true;
  std::vector<uint32_t> less_list_, lless_list_;
  std::vector<long> radix_;
  std::vector<long> dial_;
  oracle_detail::CompactInterp it_;
};

// First interpretation that models the KB, if any, up to the domain bound.
inline std::optional<BiOrderedInterpretation> find_model(const KnowledgeBase& kb,
                                                         int max_domain) {
  auto ids = oracle_detail::SymbolIds::from(kb.sig);
  auto axs = oracle_detail::compile_kb(kb, ids);
  std::optional<BiOrderedInterpretation> found;
  oracle_detail::for_each_interp(ids, max_domain, [&](const oracle_detail::CompactInterp& it) {
    if (oracle_detail::models(axs, it)) {
      found = oracle_detail::to_friendly(it, ids);
      return false;
    }
    return true;
  });
  return found;
}

// First model of K that fails the query: evidence against entailment.  An
// empty result only means "no countermodel up to max_domain".
inline std::optional<BiOrderedInterpretation> find_countermodel(const KnowledgeBase& kb,
                                                                const Axiom& q, int max_domain) {
  Signature sig = kb.sig;
  merge_query_names(q, sig);
  auto ids = oracle_detail::SymbolIds::from(sig);
  KnowledgeBase kq = kb;
  kq.sig = sig;
  auto axs = oracle_detail::compile_kb(kq, ids);
  auto qax = oracle_detail::compile(q, ids);
  std::optional<BiOrderedInterpretation> found;
  oracle_detail::for_each_interp(ids, max_domain, [&](const oracle_detail::CompactInterp& it) {
    if (oracle_detail::models(axs, it) && !oracle_detail::holds(qax, it)) {
      found = oracle_detail::to_friendly(it, ids);
      return false;
    }
    return true;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Ground path validity.

namespace oracle_detail {

// Every path through the (ground) clauses contains a complementary pair.
// DFS with pruning: once a partial path holds a complementary pair, all its
// completions do.
inline bool all_paths_complementary_rec(const std::vector<Clause>& cs, size_t i,
                                        std::vector<Literal>& path) {
  if (i == cs.size()) return false;  // a full path with no complementary pair
  for (const auto& l : cs[i].lits) {
    Literal comp = complement(l);
    bool closed = false;
    for (const auto& p : path)
      if (p == comp) { closed = true; break; }
    if (closed) continue;
    path.push_back(l);
    bool ok = all_paths_complementary_rec(cs, i + 1, path);
    path.pop_back();
    if (!ok) return false;
  }
  return true;
}

inline bool all_paths_complementary(const std::vector<Clause>& cs) {
  for (const auto& c : cs)
    if (c.lits.empty()) return true;  // no path at all
  std::vector<Literal> path;
  return all_paths_complementary_rec(cs, 0, path);
}

}  // namespace oracle_detail

// True iff some ground instantiation of the matrix (with up to copy_bound
// copies of each non-ground clause, variables drawn from ground_terms) has a
// complementary pair on every path.  For a fully ground matrix this is plain
// exhaustive path checking.
inline bool ground_matrix_valid(const Matrix& m, const std::vector<Term>& ground_terms,
                                int copy_bound, long guard = 2000000) {
  std::vector<Clause> base;
  std::vector<Clause> open;  // clauses with variables
  for (const auto& c : m.clauses) {
    if (c.is_ground()) base.push_back(c);
    else open.push_back(c);
  }
  if (open.empty()) return oracle_detail::all_paths_complementary(base);
  if (ground_terms.empty()) return false;

  std::vector<Clause> copies;
  std::vector<std::string> vars;
  for (const auto& c : open) {
    for (int i = 1; i <= copy_bound; ++i) {
      Clause cp = copy_clause(c, i);
      // Rename apart across the different open clauses too.
      std::map<std::string, Term> ren;
      for (const auto& v : cp.variables()) {
        std::string nv = v + "@" + std::to_string(copies.size());
        ren[v] = t_var(nv);
        vars.push_back(nv);
      }
      for (auto& l : cp.lits) l = detail::substitute_vars(l, ren);
      copies.push_back(std::move(cp));
    }
  }
  double combos = 1;
  for (size_t i = 0; i < vars.size(); ++i) {
    combos *= static_cast<double>(ground_terms.size());
    if (combos > static_cast<double>(guard))
      throw std::runtime_error("ground_matrix_valid: instantiation space exceeds guard");
  }
  std::vector<size_t> dial(vars.size(), 0);
  while (true) {
    std::map<std::string, Term> env;
    for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = ground_terms[dial[i]];
    std::vector<Clause> inst = base;
    for (const auto& c : copies) {
      Clause g = c;
      for (auto& l : g.lits) l = detail::substitute_vars(l, env);
      g.sort_canonical();
      inst.push_back(std::move(g));
    }
    if (oracle_detail::all_paths_complementary(inst)) return true;
    size_t i = vars.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++dial[i] < ground_terms.size()) { done = false; break; }
      dial[i] = 0;
    }
    if (done || vars.empty()) break;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Bridges to the FOL side, used by semantics-level tests.

// Interpretation induced by a bi-ordered one: same tables, with the orders
// taken as transitive closures (already transitive, closed again as written).
inline FolInterpretation induced_fol_interpretation(const BiOrderedInterpretation& o) {
  FolInterpretation i;
  i.domain_size = o.domain_size;
  i.individuals = o.individuals;
  int n = o.domain_size;
  for (const auto& [name, ext] : o.concepts) {
    std::vector<bool> t(n, false);
    for (int x : ext) t[x] = true;
    i.concepts[name] = std::move(t);
  }
  for (const auto& [name, ext] : o.roles) {
    std::vector<bool> t(n * n, false);
    for (auto [x, y] : ext) t[x * n + y] = true;
    i.roles[name] = std::move(t);
  }
  auto closure = [](std::vector<bool> rel, int k) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          for (int c = 0; c < k; ++c)
            if (rel[a * k + b] && rel[b * k + c] && !rel[a * k + c]) {
              rel[a * k + c] = true;
              changed = true;
            }
    }
    return rel;
  };
  std::vector<bool> less(n * n, false);
  for (auto [x, y] : o.less) less[x * n + y] = true;
  i.less = closure(std::move(less), n);
  // The pair order is a relation on the n^2 pairs; its flat index
  // ((x*n+y)*n+z)*n+k coincides with p1*n^2+p2.
  std::vector<bool> lless(n * n * n * n, false);
  for (const auto& [p, q] : o.lless)
    lless[(p.first * n + p.second) * n * n + q.first * n + q.second] = true;
  i.lless = closure(std::move(lless), n * n);
  return i;
}

// The reverse direction: read a bi-ordered interpretation off FOL tables
// (which must already be strict partial orders for the result to make
// sense).
inline BiOrderedInterpretation induced_bi_ordered(const FolInterpretation& i,
                                                  const Signature& sig) {
  BiOrderedInterpretation o;
  o.domain_size = i.domain_size;
  o.individuals = i.individuals;
  int n = i.domain_size;
  for (const auto& c : sig.concepts) {
    auto& s = o.concepts[c];
    auto it = i.concepts.find(c);
    if (it != i.concepts.end())
      for (int x = 0; x < n; ++x)
        if (it->second[x]) s.insert(x);
  }
  for (const auto& r : sig.roles) {
    auto& s = o.roles[r];
    auto it = i.roles.find(r);
    if (it != i.roles.end())
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (it->second[x * n + y]) s.insert({x, y});
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (i.less[x * n + y]) o.less.insert({x, y});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int k = 0; k < n; ++k)
          if (i.lless[((x * n + y) * n + z) * n + k]) o.lless.insert({{x, y}, {z, k}});
  return o;
}

// ---------------------------------------------------------------------------

inline std::string print_interpretation(const BiOrderedInterpretation& o) {
  std::ostringstream out;
  out << "domain: {";
  for (int x = 0; x < o.domain_size; ++x) out << (x ? ", o" : "o") << x;
  out << "}\n";
  for (const auto& [name, obj] : o.individuals) out << name << " -> o" << obj << "\n";
  for (const auto& [name, ext] : o.concepts) {
    out << name << " = {";
    bool first = true;
    for (int x : ext) { out << (first ? "o" : ", o") << x; first = false; }
    out << "}\n";
  }
  for (const auto& [name, ext] : o.roles) {
    out << name << " = {";
    bool first = true;
    for (auto [x, y] : ext) {
      out << (first ? "" : ", ") << "(o" << x << ",o" << y << ")";
      first = false;
    }
    out << "}\n";
  }
  out << "less = {";
  bool first = true;
  for (auto [x, y] : o.less) {
    out << (first ? "" : ", ") << "o" << x << " < o" << y;
    first = false;
  }
  out << "}\n";
  out << "lless = {";
  first = true;
  for (const auto& [p, q] : o.lless) {
    out << (first ? "" : ", ") << "(o" << p.first << ",o" << p.second << ") << (o" << q.first
        << ",o" << q.second << ")";
    first = false;
  }
  out << "}\n";
  return out.str();
}

}  // namespace dlcm
