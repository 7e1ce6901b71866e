#pragma once

// The connection calculus: Axiom/Start/Reduction/Extension over a DNF
// matrix, with first-order unification, blocking for termination, clause
// copies discovered on demand, and an independent proof checker.
//
// The search is depth-first with backtracking.  Reduction is tried before
// Extension, clauses in matrix order.  The copy budget is iteratively
// deepened: an iteration that exhausts the space without ever refusing a
// step on budget grounds is a definitive negative; otherwise the budget
// doubles, and running out entirely yields "inconclusive".

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace dlcm {

// ---------------------------------------------------------------------------
// Substitutions.  Stored in triangular form (bindings may mention bound
// variables); the occurs check keeps the walk acyclic, so apply_deep
// terminates and its result is idempotent.

struct Substitution {
  std::map<std::string, Term> bindings;

  bool bound(const std::string& v) const { return bindings.count(v) > 0; }

  // Follows variable bindings at the head without copying; the pointer stays
  // valid while the bindings it passed through exist.
  const Term* resolve(const Term* t) const {
    while (t->kind == Term::Kind::Var) {
      auto it = bindings.find(t->name);
      if (it == bindings.end()) break;
      t = &it->second;
    }
    return t;
  }

  // Structural equality under the substitution, allocation-free.
  bool equal_terms(const Term& a, const Term& b) const {
    const Term* x = resolve(&a);
    const Term* y = resolve(&b);
    if (x->kind != y->kind || x->name != y->name || x->args.size() != y->args.size())
      return false;
    for (size_t i = 0; i < x->args.size(); ++i)
      if (!equal_terms(x->args[i], y->args[i])) return false;
    return true;
  }

  // Same literal (same polarity) under the substitution.
  bool equal_literals(const Literal& a, const Literal& b) const {
    if (a.atom != b.atom || a.positive != b.positive || a.pred != b.pred ||
        a.args.size() != b.args.size())
      return false;
    for (size_t i = 0; i < a.args.size(); ++i)
      if (!equal_terms(a.args[i], b.args[i])) return false;
    return true;
  }

  Term walk_head(Term t) const {
    while (t.kind == Term::Kind::Var) {
      auto it = bindings.find(t.name);
      if (it == bindings.end()) return t;
      t = it->second;
    }
    return t;
  }

  Term apply_deep(const Term& t) const {
    const Term* h = resolve(&t);
    if (h->kind != Term::Kind::Fn) return *h;
    std::vector<Term> args;
    args.reserve(h->args.size());
    for (const auto& a : h->args) args.push_back(apply_deep(a));
    return t_fn(h->name, std::move(args));
  }

  Literal apply_deep(const Literal& l) const {
    Literal out = l;
    for (auto& a : out.args) a = apply_deep(a);
    return out;
  }

  // Idempotent iff the binding graph is acyclic: deep application then
  // terminates and eliminates every bound variable from the ranges.
  bool idempotent() const {
    std::map<std::string, int> state;  // 0 unvisited, 1 in progress, 2 done
    std::function<bool(const std::string&)> acyclic = [&](const std::string& v) -> bool {
      auto it = bindings.find(v);
      if (it == bindings.end()) return true;
      int& st = state[v];
      if (st == 1) return false;
      if (st == 2) return true;
      st = 1;
      std::vector<std::string> vars;
      collect_vars(it->second, vars);
      for (const auto& w : vars)
        if (!acyclic(w)) return false;
      state[v] = 2;
      return true;
    };
    for (const auto& [v, t] : bindings)
      if (!acyclic(v)) return false;
    return true;
  }
};

namespace detail {

using Trail = std::vector<std::string>;

inline void undo_trail(Substitution& s, Trail& trail, size_t mark) {
  while (trail.size() > mark) {
    s.bindings.erase(trail.back());
    trail.pop_back();
  }
}

inline bool occurs(const std::string& v, const Term& t, const Substitution& s) {
  const Term* h = s.resolve(&t);
  if (h->kind == Term::Kind::Var) return h->name == v;
  for (const auto& a : h->args)
    if (occurs(v, a, s)) return true;
  return false;
}

inline bool unify_terms(const Term& a, const Term& b, Substitution& s, Trail& trail) {
  const Term* x = s.resolve(&a);
  const Term* y = s.resolve(&b);
  if (x->kind == Term::Kind::Var && y->kind == Term::Kind::Var && x->name == y->name)
    return true;
  if (x->kind == Term::Kind::Var) {
    if (occurs(x->name, *y, s)) return false;
    std::string name = x->name;  // binding may invalidate x
    Term value = *y;
    s.bindings[name] = std::move(value);
    trail.push_back(std::move(name));
    return true;
  }
  if (y->kind == Term::Kind::Var) {
    if (occurs(y->name, *x, s)) return false;
    std::string name = y->name;
    Term value = *x;
    s.bindings[name] = std::move(value);
    trail.push_back(std::move(name));
    return true;
  }
  if (x->kind != y->kind || x->name != y->name || x->args.size() != y->args.size())
    return false;
  for (size_t i = 0; i < x->args.size(); ++i)
    if (!unify_terms(x->args[i], y->args[i], s, trail)) return false;
  return true;
}

// Same predicate, opposite polarity: the only literal pairs a connection can
// ever join.
inline bool complementary_shape(const Literal& a, const Literal& b) {
  return a.atom == b.atom && a.pred == b.pred && a.positive != b.positive &&
         a.args.size() == b.args.size();
}

inline bool unify_complement_inplace(const Literal& a, const Literal& b, Substitution& s,
                                     Trail& trail) {
  if (!complementary_shape(a, b)) return false;
  size_t mark = trail.size();
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!unify_terms(a.args[i], b.args[i], s, trail)) {
      undo_trail(s, trail, mark);
      return false;
    }
  }
  return true;
}

}  // namespace detail

// Most general extension of sigma making l1 and the complement of l2 equal,
// or nullopt.
inline std::optional<Substitution> unify_complement(const Literal& l1, const Literal& l2,
                                                    const Substitution& sigma) {
  Substitution s = sigma;
  detail::Trail trail;
  if (detail::unify_complement_inplace(l1, l2, s, trail)) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Set of concepts of a term along a path: the polarity-tagged concept atoms
// whose argument equals the term under the substitution.

inline std::set<std::pair<bool, std::string>> concept_set(const Term& t,
                                                          const std::vector<Literal>& path,
                                                          const Substitution& sigma) {
  std::set<std::pair<bool, std::string>> out;
  Term st = sigma.apply_deep(t);
  for (const auto& l : path) {
    if (l.atom != Literal::Atom::Concept) continue;
    if (sigma.apply_deep(l.args[0]) == st) out.emplace(l.positive, l.pred);
  }
  return out;
}

// Per-clause record of the copies entered along the current branch: copy
// index and the distinguished term that entered with it.
struct LedgerEntry {
  int copy_index = 0;
  std::optional<Term> term;
};
using CopyLedger = std::vector<std::vector<LedgerEntry>>;  // indexed by clause

namespace detail {

inline bool subset_of(const std::set<std::pair<bool, std::string>>& a,
                      const std::set<std::pair<bool, std::string>>& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

// Case 2 of blocking for a candidate term t_n against the chain of previous
// copies of the same clause: blocked when the previous copy term is itself
// blocked (recursively along the chain) or its concept set already covers
// the candidate's.
inline bool chain_blocked(const std::optional<Term>& t_n,
                          const std::vector<LedgerEntry>& chain,
                          const std::vector<Literal>& path_plus_l, const Substitution& sigma) {
  if (!t_n || chain.empty()) return false;
  auto tau = [&](const std::optional<Term>& t) {
    return t ? concept_set(*t, path_plus_l, sigma) : std::set<std::pair<bool, std::string>>{};
  };
  bool prev_blocked = false;
  for (size_t k = 1; k < chain.size(); ++k)
    prev_blocked = prev_blocked || subset_of(tau(chain[k].term), tau(chain[k - 1].term));
  return prev_blocked || subset_of(tau(t_n), tau(chain.back().term));
}

}  // namespace detail

// Blocking for a literal of a candidate clause copy.  Case 1: the literal
// already appears on the path under sigma.  Case 2: a previous copy of the
// same clause along the branch makes this copy redundant.
inline bool is_blocked(const Literal& l, const std::vector<Literal>& path,
                       const Substitution& sigma, const std::vector<LedgerEntry>& clause_chain,
                       const std::optional<Term>& t_n) {
  Literal ls = sigma.apply_deep(l);
  for (const auto& p : path)
    if (sigma.apply_deep(p) == ls) return true;
  if (clause_chain.empty() || !t_n) return false;
  std::vector<Literal> path_plus_l = path;
  path_plus_l.push_back(l);
  return detail::chain_blocked(t_n, clause_chain, path_plus_l, sigma);
}

// ---------------------------------------------------------------------------
// Proof objects.

struct ProofNode {
  enum class Rule { Axiom, Start, Reduction, Extension };
  Rule rule = Rule::Axiom;
  std::vector<Literal> goal;
  std::vector<Literal> path;
  Literal l1, l2;          // the connection (Red/Ext)
  Clause entered;          // Start/Ext: the clause copy brought in
  int clause_index = -1;   // matrix index of the copied clause
  std::vector<ProofNode> kids;
};

struct SearchStats {
  long steps = 0;
  long reductions = 0;
  long extensions = 0;
  long case1_blocks = 0;
  long case2_blocks = 0;
  long copy_cap_hits = 0;
  long depth_cap_hits = 0;
};

struct ProofTree {
  ProofNode root;
  Substitution sigma;
  SearchStats stats;
  int connections = 0;

  void collect_copies(const ProofNode& n, std::vector<const ProofNode*>& out) const {
    if (n.rule == ProofNode::Rule::Start || n.rule == ProofNode::Rule::Extension)
      out.push_back(&n);
    for (const auto& k : n.kids) collect_copies(k, out);
  }
  std::vector<const ProofNode*> used_copies() const {
    std::vector<const ProofNode*> out;
    collect_copies(root, out);
    return out;
  }
};

struct SearchOptions {
  int max_copies = 8;        // per-clause copies along one branch
  int max_depth = 512;       // active path length
  long max_steps = 500000;   // total rule attempts per query
  bool order_axioms = true;  // include the order clauses in delta
};

enum class Verdict { Proved, NotProved, Inconclusive };

struct ProveResult {
  Verdict verdict = Verdict::NotProved;
  std::optional<ProofTree> tree;
  SearchStats stats;
};

// The triple the rules operate on; an absent goal is the pre-start state.
struct ProofState {
  std::optional<Clause> goal;
  const Matrix* matrix = nullptr;
  std::vector<Literal> path;
  Substitution sigma;
};

// ---------------------------------------------------------------------------
// Search engine.  Active paths are shared immutable lists so extending and
// backtracking never copy them; successful derivations are logged as small
// events and replayed afterwards to build the proof tree (clause copies are
// deterministic, so goals and paths can be reconstructed).

namespace detail {

// Immutable cons list for active paths.
struct PathNode {
  Literal lit;
  std::shared_ptr<const PathNode> tail;
  int length = 0;
};
using PathPtr = std::shared_ptr<const PathNode>;

inline PathPtr path_push(const PathPtr& tail, Literal l) {
  auto n = std::make_shared<PathNode>();
  n->lit = std::move(l);
  n->tail = tail;
  n->length = (tail ? tail->length : 0) + 1;
  return n;
}

inline int path_length(const PathPtr& p) { return p ? p->length : 0; }

template <class F>
void path_for_each(const PathPtr& p, F&& fn) {
  for (const PathNode* n = p.get(); n; n = n->tail.get()) fn(n->lit);
}

inline std::vector<Literal> path_to_vector(const PathPtr& p) {
  std::vector<Literal> out;
  out.reserve(path_length(p));
  path_for_each(p, [&](const Literal& l) { out.push_back(l); });
  std::reverse(out.begin(), out.end());
  return out;
}

// Renames the variables of one literal the way copy_clause renames the whole
// clause, so a candidate connection can be unified before the copy is built.
inline Term rename_term_copy(const Term& t, const std::string& suffix) {
  if (t.kind == Term::Kind::Var) return t_var(t.name + suffix);
  if (t.kind == Term::Kind::Const) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(rename_term_copy(a, suffix));
  return t_fn(t.name, std::move(args));
}

inline Literal rename_literal_copy(const Literal& l, int copy_index) {
  std::string suffix = "#" + std::to_string(copy_index);
  Literal out = l;
  for (auto& a : out.args) a = rename_term_copy(a, suffix);
  return out;
}

struct Event {
  enum class Kind { Start, Ax, Red, Ext };
  Kind kind;
  Literal l1, l2;          // the connection; l2 is the renamed copy literal (Ext)
  int clause_index = -1;   // matrix clause (Start/Ext)
  int copy_index = 0;      // copy brought in (Start/Ext)
};

class Engine {
 public:
  Engine(const Matrix& m, int copy_limit, const SearchOptions& opts, long* steps_remaining)
      : m_(&m),
        copy_limit_(copy_limit),
        opts_(opts),
        steps_remaining_(steps_remaining),
        name_count_(m.clauses.size(), 0),
        ledger_(m.clauses.size()) {}

  Substitution sigma;
  SearchStats stats;
  bool cap_hit = false;

  bool run_start(int start) {
    int idx = ++name_count_[start];
    Clause c1 = copy_clause(m_->clauses[start], idx);
    ledger_[start].push_back({idx, first_var(c1)});
    Event e;
    e.kind = Event::Kind::Start;
    e.clause_index = start;
    e.copy_index = idx;
    events_.push_back(std::move(e));
    frames_.push_back(Frame::goal_frame(c1.lits, nullptr));
    return solve();
  }

  bool run_triple(const Clause& goal, const std::vector<Literal>& path, Substitution s) {
    sigma = std::move(s);
    PathPtr p;
    for (const auto& l : path) p = path_push(p, l);
    frames_.push_back(Frame::goal_frame(goal.lits, p));
    return solve();
  }

  const std::vector<Event>& events() const { return events_; }

 private:
  struct Frame {
    bool pop_ledger = false;
    int clause_index = -1;  // pop_ledger
    std::vector<Literal> goal;
    PathPtr path;
    static Frame goal_frame(std::vector<Literal> g, PathPtr p) {
      Frame f;
      f.goal = std::move(g);
      f.path = std::move(p);
      return f;
    }
    static Frame ledger_frame(int ci) {
      Frame f;
      f.pop_ledger = true;
      f.clause_index = ci;
      return f;
    }
  };

  bool spend(long units = 1) {
    *steps_remaining_ -= units;
    if (*steps_remaining_ <= 0) {
      cap_hit = true;
      return false;
    }
    return true;
  }

  bool solve() {
    if (frames_.empty()) return true;
    Frame f = std::move(frames_.back());
    frames_.pop_back();
    bool ok;
    if (f.pop_ledger) {
      LedgerEntry e = ledger_[f.clause_index].back();
      ledger_[f.clause_index].pop_back();
      ok = solve();
      if (!ok) ledger_[f.clause_index].push_back(std::move(e));
    } else {
      ok = step_goal(f);
    }
    if (!ok) frames_.push_back(std::move(f));
    return ok;
  }

  // Two literals can only become equal under a substitution when their
  // shapes already agree; filters the path scans.
  static bool same_shape(const Literal& a, const Literal& b) {
    return a.atom == b.atom && a.positive == b.positive && a.pred == b.pred &&
           a.args.size() == b.args.size();
  }

  bool step_goal(const Frame& f) {
    ++stats.steps;
    if (!spend()) return false;

    if (f.goal.empty()) {
      Event e;
      e.kind = Event::Kind::Ax;
      events_.push_back(std::move(e));
      if (solve()) return true;
      events_.pop_back();
      return false;
    }

    const Literal& l1 = f.goal.front();
    // The goal must not be blocked against its path (case 1): a literal
    // already on the path admits no rule application.
    for (const PathNode* pn = f.path.get(); pn; pn = pn->tail.get()) {
      if (sigma.equal_literals(l1, pn->lit)) {
        ++stats.case1_blocks;
        return false;
      }
    }

    std::vector<Literal> rest(f.goal.begin() + 1, f.goal.end());

    // Reduction against the active path.
    for (const PathNode* pn = f.path.get(); pn; pn = pn->tail.get()) {
      const Literal& p = pn->lit;
      if (!complementary_shape(l1, p)) continue;
      if (!spend()) return false;
      size_t tmark = trail_.size();
      if (unify_complement_inplace(l1, p, sigma, trail_)) {
        ++stats.reductions;
        Event e;
        e.kind = Event::Kind::Red;
        e.l1 = l1;
        e.l2 = p;
        events_.push_back(std::move(e));
        frames_.push_back(Frame::goal_frame(rest, f.path));
        if (solve()) return true;
        frames_.pop_back();
        events_.pop_back();
      }
      undo_trail(sigma, trail_, tmark);
    }

    // Extension into a blocking-free copy of a matrix clause.
    for (size_t ci = 0; ci < m_->clauses.size(); ++ci) {
      const Clause& orig = m_->clauses[ci];
      for (size_t li = 0; li < orig.lits.size(); ++li) {
        if (!complementary_shape(l1, orig.lits[li])) continue;
        if (!spend()) return false;
        if (static_cast<int>(ledger_[ci].size()) + 1 > copy_limit_) {
          cap_hit = true;
          ++stats.copy_cap_hits;
          continue;
        }
        if (path_length(f.path) + 1 > opts_.max_depth) {
          cap_hit = true;
          ++stats.depth_cap_hits;
          continue;
        }
        int idx = name_count_[ci] + 1;
        Literal l2c = rename_literal_copy(orig.lits[li], idx);
        size_t tmark = trail_.size();
        if (unify_complement_inplace(l1, l2c, sigma, trail_)) {
          Clause copy = copy_clause(orig, idx);
          std::optional<Term> tn = entry_term(l2c);
          if (!entered_blocked(copy, f.path, l1, ci, tn)) {
            ++stats.extensions;
            ++name_count_[ci];
            ledger_[ci].push_back({idx, tn});
            Event e;
            e.kind = Event::Kind::Ext;
            e.l1 = l1;
            e.l2 = l2c;
            e.clause_index = static_cast<int>(ci);
            e.copy_index = idx;
            events_.push_back(std::move(e));
            std::vector<Literal> newgoal;
            newgoal.reserve(copy.lits.size() - 1);
            bool dropped = false;
            for (const auto& cl : copy.lits) {
              if (!dropped && cl == l2c) {
                dropped = true;
                continue;
              }
              newgoal.push_back(cl);
            }
            frames_.push_back(Frame::goal_frame(rest, f.path));
            frames_.push_back(Frame::ledger_frame(static_cast<int>(ci)));
            frames_.push_back(
                Frame::goal_frame(std::move(newgoal), path_push(f.path, l1)));
            if (solve()) return true;
            frames_.pop_back();
            frames_.pop_back();
            frames_.pop_back();
            events_.pop_back();
            ledger_[ci].pop_back();
            --name_count_[ci];
          }
        }
        undo_trail(sigma, trail_, tmark);
      }
    }
    return false;
  }

  // Distinguished term of a copy: the first fresh variable taking part in
  // the entry connection.
  std::optional<Term> entry_term(const Literal& entry) const {
    std::vector<std::string> vars;
    collect_vars(entry, vars);
    if (vars.empty()) return std::nullopt;
    return t_var(vars.front());
  }

  std::optional<Term> first_var(const Clause& c) const {
    auto vars = c.variables();
    if (vars.empty()) return std::nullopt;
    return t_var(vars.front());
  }

  bool entered_blocked(const Clause& copy, const PathPtr& path, const Literal& l1, size_t ci,
                       const std::optional<Term>& tn) {
    // Case 1 for each literal of the copy, over path + l1.
    for (const auto& l : copy.lits) {
      bool applied = false;
      Literal ls;
      bool blocked = false;
      auto consider = [&](const Literal& p) {
        if (blocked || !same_shape(l, p)) return;
        if (!applied) {
          ls = sigma.apply_deep(l);
          applied = true;
        }
        if (sigma.apply_deep(p) == ls) blocked = true;
      };
      path_for_each(path, consider);
      consider(l1);
      if (blocked) {
        ++stats.case1_blocks;
        return true;
      }
    }
    // Case 2 against the chain of previous copies along this branch.  The
    // concept atoms of path + l1 are indexed by applied argument in one
    // scan; each candidate literal of the copy contributes on top.
    if (ledger_[ci].empty() || !tn) return false;
    const auto& chain = ledger_[ci];
    using Tau = std::set<std::pair<bool, std::string>>;
    std::map<Term, Tau> index;
    auto add = [&](const Literal& p) {
      if (p.atom != Literal::Atom::Concept) return;
      index[sigma.apply_deep(p.args[0])].emplace(p.positive, p.pred);
    };
    path_for_each(path, add);
    add(l1);
    std::vector<std::optional<Term>> applied_chain;
    applied_chain.reserve(chain.size());
    for (const auto& e : chain)
      applied_chain.push_back(e.term ? std::optional<Term>(sigma.apply_deep(*e.term))
                                     : std::nullopt);
    Term applied_tn = sigma.apply_deep(*tn);
    for (const auto& l : copy.lits) {
      std::optional<Term> larg;
      if (l.atom == Literal::Atom::Concept) larg = sigma.apply_deep(l.args[0]);
      auto tau_of = [&](const std::optional<Term>& applied) -> Tau {
        if (!applied) return {};
        Tau out;
        auto it = index.find(*applied);
        if (it != index.end()) out = it->second;
        if (larg && *larg == *applied) out.emplace(l.positive, l.pred);
        return out;
      };
      bool prev_blocked = false;
      for (size_t k = 1; k < chain.size(); ++k)
        prev_blocked =
            prev_blocked || subset_of(tau_of(applied_chain[k]), tau_of(applied_chain[k - 1]));
      if (prev_blocked || subset_of(tau_of(applied_tn), tau_of(applied_chain.back()))) {
        ++stats.case2_blocks;
        return true;
      }
    }
    return false;
  }

  const Matrix* m_;
  int copy_limit_;
  SearchOptions opts_;
  long* steps_remaining_;
  std::vector<int> name_count_;
  CopyLedger ledger_;
  Trail trail_;
  std::vector<Frame> frames_;
  std::vector<Event> events_;
};

// Rebuilds the proof tree from the event log by replaying the derivation:
// clause copies are deterministic, so the goals and paths at every node can
// be reconstructed.
inline ProofNode replay_node(const Matrix& m, const std::vector<Event>& ev, size_t& pos,
                             std::vector<Literal> goal, std::vector<Literal> path) {
  const Event& e = ev.at(pos++);
  ProofNode n;
  switch (e.kind) {
    case Event::Kind::Ax:
      n.rule = ProofNode::Rule::Axiom;
      n.path = std::move(path);
      break;
    case Event::Kind::Red: {
      n.rule = ProofNode::Rule::Reduction;
      n.goal = goal;
      n.path = path;
      n.l1 = e.l1;
      n.l2 = e.l2;
      std::vector<Literal> rest(goal.begin() + 1, goal.end());
      n.kids.push_back(replay_node(m, ev, pos, std::move(rest), std::move(path)));
      break;
    }
    case Event::Kind::Ext: {
      n.rule = ProofNode::Rule::Extension;
      n.goal = goal;
      n.path = path;
      n.l1 = e.l1;
      n.l2 = e.l2;
      n.clause_index = e.clause_index;
      n.entered = copy_clause(m.clauses[e.clause_index], e.copy_index);
      std::vector<Literal> newgoal;
      bool dropped = false;
      for (const auto& cl : n.entered.lits) {
        if (!dropped && cl == e.l2) {
          dropped = true;
          continue;
        }
        newgoal.push_back(cl);
      }
      std::vector<Literal> newpath = path;
      newpath.push_back(e.l1);
      std::vector<Literal> rest(goal.begin() + 1, goal.end());
      n.kids.push_back(replay_node(m, ev, pos, std::move(newgoal), std::move(newpath)));
      n.kids.push_back(replay_node(m, ev, pos, std::move(rest), std::move(path)));
      break;
    }
    case Event::Kind::Start:
      throw std::runtime_error("unexpected Start event");
  }
  return n;
}

inline ProofTree replay(const Matrix& m, const std::vector<Event>& ev, Substitution sigma,
                        SearchStats stats, std::vector<Literal> initial_goal = {},
                        std::vector<Literal> initial_path = {}) {
  ProofTree t;
  t.sigma = std::move(sigma);
  t.stats = stats;
  size_t pos = 0;
  if (!ev.empty() && ev.front().kind == Event::Kind::Start) {
    ++pos;
    t.root.rule = ProofNode::Rule::Start;
    t.root.clause_index = ev.front().clause_index;
    t.root.entered = copy_clause(m.clauses[ev.front().clause_index], ev.front().copy_index);
    t.root.kids.push_back(replay_node(m, ev, pos, t.root.entered.lits, {}));
  } else {
    t.root = replay_node(m, ev, pos, std::move(initial_goal), std::move(initial_path));
  }
  for (const auto& e : ev)
    if (e.kind == Event::Kind::Red || e.kind == Event::Kind::Ext) ++t.connections;
  return t;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Top-level search drivers.

// Runs Start over the given clause order with iterative deepening on the
// copy budget.  An iteration that exhausts without a budget refusal is
// definitive.
inline ProveResult prove_matrix(const Matrix& m, const std::vector<int>& start_order,
                                const SearchOptions& opts) {
  ProveResult result;
  long steps_remaining = opts.max_steps;
  int limit = 1;
  while (true) {
    bool cap_hit = false;
    for (int si : start_order) {
      detail::Engine engine(m, limit, opts, &steps_remaining);
      if (engine.run_start(si)) {
        result.verdict = Verdict::Proved;
        result.tree = detail::replay(m, engine.events(), engine.sigma, engine.stats);
        result.stats = engine.stats;
        return result;
      }
      cap_hit = cap_hit || engine.cap_hit;
      result.stats.steps += engine.stats.steps;
      result.stats.reductions += engine.stats.reductions;
      result.stats.extensions += engine.stats.extensions;
      result.stats.case1_blocks += engine.stats.case1_blocks;
      result.stats.case2_blocks += engine.stats.case2_blocks;
      result.stats.copy_cap_hits += engine.stats.copy_cap_hits;
      result.stats.depth_cap_hits += engine.stats.depth_cap_hits;
      if (steps_remaining <= 0) {
        result.verdict = Verdict::Inconclusive;
        return result;
      }
    }
    if (!cap_hit) {
      result.verdict = Verdict::NotProved;
      return result;
    }
    if (limit >= opts.max_copies) {
      result.verdict = Verdict::Inconclusive;
      return result;
    }
    limit = std::min(limit * 2, opts.max_copies);
  }
}

inline std::vector<int> all_start_order(const Matrix& m) {
  std::vector<int> order(m.clauses.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  return order;
}

// Proof search from an explicit triple.  An absent goal is the pre-start
// state and enumerates start clauses.
inline ProveResult prove(const ProofState& state, const SearchOptions& opts) {
  if (!state.goal) return prove_matrix(*state.matrix, all_start_order(*state.matrix), opts);
  ProveResult result;
  long steps_remaining = opts.max_steps;
  int limit = 1;
  while (true) {
    detail::Engine engine(*state.matrix, limit, opts, &steps_remaining);
    if (engine.run_triple(*state.goal, state.path, state.sigma)) {
      result.verdict = Verdict::Proved;
      result.tree = detail::replay(*state.matrix, engine.events(), engine.sigma,
                                   engine.stats, state.goal->lits, state.path);
      result.stats = engine.stats;
      return result;
    }
    result.stats = engine.stats;
    if (!engine.cap_hit) {
      result.verdict = Verdict::NotProved;
      return result;
    }
    if (steps_remaining <= 0 || limit >= opts.max_copies) {
      result.verdict = Verdict::Inconclusive;
      return result;
    }
    limit = std::min(limit * 2, opts.max_copies);
  }
}

// ---------------------------------------------------------------------------
// Independent proof checker: every node must match its rule schema, every
// connection must be sigma-complementary under the final substitution, the
// substitution must be idempotent, and every leaf must be an Axiom.

namespace detail {

inline bool multiset_equal(std::vector<Literal> a, std::vector<Literal> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline bool remove_one(std::vector<Literal>& v, const Literal& l) {
  auto it = std::find(v.begin(), v.end(), l);
  if (it == v.end()) return false;
  v.erase(it);
  return true;
}

inline bool matches_some_clause(const Clause& copy, const Matrix& m) {
  for (const auto& c : m.clauses)
    if (alpha_equivalent(copy, c)) return true;
  return false;
}

inline bool check_node(const ProofNode& n, const Matrix& m, const Substitution& sigma) {
  using R = ProofNode::Rule;
  auto connected = [&](const Literal& l1, const Literal& l2) {
    return sigma.apply_deep(l1) == sigma.apply_deep(complement(l2));
  };
  switch (n.rule) {
    case R::Axiom:
      return n.goal.empty() && n.kids.empty();
    case R::Start: {
      if (n.kids.size() != 1 || !n.goal.empty() || !n.path.empty()) return false;
      if (!matches_some_clause(n.entered, m)) return false;
      const ProofNode& kid = n.kids[0];
      if (!multiset_equal(kid.goal, n.entered.lits) || !kid.path.empty()) return false;
      return check_node(kid, m, sigma);
    }
    case R::Reduction: {
      if (n.kids.size() != 1) return false;
      if (std::find(n.path.begin(), n.path.end(), n.l2) == n.path.end()) return false;
      if (!connected(n.l1, n.l2)) return false;
      std::vector<Literal> g = n.goal;
      if (!remove_one(g, n.l1)) return false;
      const ProofNode& kid = n.kids[0];
      if (!multiset_equal(kid.goal, g) || kid.path != n.path) return false;
      return check_node(kid, m, sigma);
    }
    case R::Extension: {
      if (n.kids.size() != 2) return false;
      if (!matches_some_clause(n.entered, m)) return false;
      std::vector<Literal> e = n.entered.lits;
      if (!remove_one(e, n.l2)) return false;
      if (!connected(n.l1, n.l2)) return false;
      std::vector<Literal> g = n.goal;
      if (!remove_one(g, n.l1)) return false;
      std::vector<Literal> newpath = n.path;
      newpath.push_back(n.l1);
      const ProofNode& left = n.kids[0];
      const ProofNode& right = n.kids[1];
      if (!multiset_equal(left.goal, e)) return false;
      if (left.path != newpath) return false;
      if (!multiset_equal(right.goal, g) || right.path != n.path) return false;
      return check_node(left, m, sigma) && check_node(right, m, sigma);
    }
  }
  return false;
}

}  // namespace detail

inline bool check_proof(const ProofTree& tree, const Matrix& m) {
  if (!tree.sigma.idempotent()) return false;
  if (tree.root.rule != ProofNode::Rule::Start) return false;
  return detail::check_node(tree.root, m, tree.sigma);
}

// ---------------------------------------------------------------------------
// Knowledge-base entry points.

enum class Consistency { Inconsistent, Consistent, Inconclusive };

struct ConsistencyResult {
  Consistency verdict = Consistency::Consistent;
  std::optional<ProofTree> tree;
  Matrix matrix;
  SearchStats stats;
};

// Consistency via validity of delta(K): Start from each clause in turn.
inline ConsistencyResult inconsistent(const KnowledgeBase& kb, const SearchOptions& opts = {}) {
  ConsistencyResult out;
  KnowledgeBase kn = normalize(kb);
  out.matrix = delta(kn, opts.order_axioms);
  ProveResult r = prove_matrix(out.matrix, all_start_order(out.matrix), opts);
  out.stats = r.stats;
  out.tree = std::move(r.tree);
  switch (r.verdict) {
    case Verdict::Proved: out.verdict = Consistency::Inconsistent; break;
    case Verdict::NotProved: out.verdict = Consistency::Consistent; break;
    case Verdict::Inconclusive: out.verdict = Consistency::Inconclusive; break;
  }
  return out;
}

struct EntailResult {
  Verdict verdict = Verdict::NotProved;
  std::optional<ProofTree> tree;
  Matrix matrix;
  SearchStats stats;
  bool proof_checked = false;
};

// K entails q: prove the matrix of the negated KB joined with the query
// translation.  Start clauses: the query clauses first, then the rest.
inline EntailResult entails(const KnowledgeBase& kb, const Axiom& q,
                            const SearchOptions& opts = {}) {
  EntailResult out;
  KnowledgeBase kn = normalize(kb);
  Axiom qn = normalize(q);
  merge_query_names(qn, kn.sig);
  out.matrix = build_query_matrix(kn, qn, opts.order_axioms);

  std::vector<int> order;
  for (size_t i = 0; i < out.matrix.clauses.size(); ++i)
    if (out.matrix.clauses[i].origin == "query") order.push_back(static_cast<int>(i));
  for (size_t i = 0; i < out.matrix.clauses.size(); ++i)
    if (out.matrix.clauses[i].origin != "query") order.push_back(static_cast<int>(i));

  ProveResult r = prove_matrix(out.matrix, order, opts);
  out.verdict = r.verdict;
  out.stats = r.stats;
  out.tree = std::move(r.tree);
  if (out.tree) out.proof_checked = check_proof(*out.tree, out.matrix);
  return out;
}

// ---------------------------------------------------------------------------
// Proof printing: numbered connection list (with the final substitution) or
// an indented sequent-style tree.

namespace detail {

inline std::string print_lit_set(const std::vector<Literal>& ls) {
  std::string s = "{";
  for (size_t i = 0; i < ls.size(); ++i) s += (i ? ", " : "") + print_literal(ls[i]);
  return s + "}";
}

inline void print_connections_rec(const ProofNode& n, std::ostringstream& out, int& counter) {
  switch (n.rule) {
    case ProofNode::Rule::Start:
      out << "start: clause " << (n.clause_index + 1) << " " << print_clause(n.entered) << "\n";
      break;
    case ProofNode::Rule::Reduction:
      out << " " << ++counter << ". Red  " << print_literal(n.l1) << " -- "
          << print_literal(n.l2) << "  [path]\n";
      break;
    case ProofNode::Rule::Extension:
      out << " " << ++counter << ". Ext  " << print_literal(n.l1) << " -- "
          << print_literal(n.l2) << "  [clause " << (n.clause_index + 1) << ", copy "
          << n.entered.copy_index << "]\n";
      break;
    case ProofNode::Rule::Axiom:
      break;
  }
  for (const auto& k : n.kids) print_connections_rec(k, out, counter);
}

inline void print_tree_rec(const ProofNode& n, std::ostringstream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
  switch (n.rule) {
    case ProofNode::Rule::Start:
      out << "St   eps, M, eps\n";
      break;
    case ProofNode::Rule::Axiom:
      out << "Ax   {}, M, " << print_lit_set(n.path) << "\n";
      break;
    case ProofNode::Rule::Reduction:
      out << "Red  " << print_lit_set(n.goal) << ", M, " << print_lit_set(n.path) << "   via "
          << print_literal(n.l1) << " -- " << print_literal(n.l2) << "\n";
      break;
    case ProofNode::Rule::Extension:
      out << "Ext  " << print_lit_set(n.goal) << ", M, " << print_lit_set(n.path) << "   via "
          << print_literal(n.l1) << " -- " << print_literal(n.l2) << "\n";
      break;
  }
  for (const auto& k : n.kids) print_tree_rec(k, out, depth + 1);
}

}  // namespace detail

inline std::string print_proof_connections(const ProofTree& t) {
  std::ostringstream out;
  int counter = 0;
  detail::print_connections_rec(t.root, out, counter);
  out << "sigma: {";
  bool first = true;
  for (const auto& [v, term] : t.sigma.bindings) {
    out << (first ? " " : ", ") << v << " -> " << print_term(t.sigma.apply_deep(t_var(v)));
    first = false;
  }
  out << (first ? "}" : " }") << "\n";
  return out.str();
}

inline std::string print_proof_tree(const ProofTree& t) {
  std::ostringstream out;
  detail::print_tree_rec(t.root, out, 0);
  return out.str();
}

}  // namespace dlcm
