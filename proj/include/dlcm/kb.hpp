#pragma once

// Knowledge-base syntax for the defeasible description logic ALCH with
// typicality operators on concepts and role names.  Concept and role
// expressions are plain value trees; a knowledge base is three axiom lists
// plus the signature of declared names.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlcm {

// Concept name reserved for compiling away top/bot.  Identifiers written by
// users may also start with '_'; a collision is harmless because X | ~X is a
// tautology for any X.
inline const std::string kReservedTopConcept = "_T0";

// ---------------------------------------------------------------------------
// Signature

enum class NameKind { Concept, Role, Individual };

inline const char* to_string(NameKind k) {
  switch (k) {
    case NameKind::Concept: return "concept";
    case NameKind::Role: return "role";
    case NameKind::Individual: return "individual";
  }
  return "?";
}

struct Signature {
  std::vector<std::string> concepts;
  std::vector<std::string> roles;
  std::vector<std::string> individuals;

  bool has(NameKind k, const std::string& n) const {
    const auto& v = list(k);
    return std::find(v.begin(), v.end(), n) != v.end();
  }
  bool has_concept(const std::string& n) const { return has(NameKind::Concept, n); }
  bool has_role(const std::string& n) const { return has(NameKind::Role, n); }
  bool has_individual(const std::string& n) const { return has(NameKind::Individual, n); }
  bool has_any(const std::string& n) const {
    return has_concept(n) || has_role(n) || has_individual(n);
  }

  const std::vector<std::string>& list(NameKind k) const {
    switch (k) {
      case NameKind::Concept: return concepts;
      case NameKind::Role: return roles;
      case NameKind::Individual: return individuals;
    }
    return concepts;
  }

  // Registers a name, keeping the three sets pairwise disjoint.  Adding a
  // name twice under the same kind is a no-op.
  void add(NameKind k, const std::string& n) {
    for (NameKind other : {NameKind::Concept, NameKind::Role, NameKind::Individual}) {
      if (other != k && has(other, n))
        throw std::runtime_error("name '" + n + "' already declared as " +
                                 to_string(other) + ", cannot reuse as " + to_string(k));
    }
    auto& v = k == NameKind::Concept ? concepts : k == NameKind::Role ? roles : individuals;
    if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
  }

  bool operator==(const Signature& o) const {
    return concepts == o.concepts && roles == o.roles && individuals == o.individuals;
  }
};

// ---------------------------------------------------------------------------
// Role expressions: R ::= name | *R | ~R.  Negation never occurs in KB files;
// it arises from negating a role context and in role-assertion queries.

struct RoleExpr {
  enum class Kind { Atom, Typical, Not };
  Kind kind = Kind::Atom;
  std::string name;             // Atom
  std::vector<RoleExpr> kids;   // Typical/Not: exactly one

  const RoleExpr& inner() const { return kids.at(0); }

  bool operator==(const RoleExpr& o) const {
    return kind == o.kind && name == o.name && kids == o.kids;
  }
  bool operator!=(const RoleExpr& o) const { return !(*this == o); }
};

inline RoleExpr r_atom(std::string n) {
  RoleExpr r;
  r.kind = RoleExpr::Kind::Atom;
  r.name = std::move(n);
  return r;
}
inline RoleExpr r_typical(RoleExpr inner) {
  RoleExpr r;
  r.kind = RoleExpr::Kind::Typical;
  r.kids.push_back(std::move(inner));
  return r;
}
inline RoleExpr r_not(RoleExpr inner) {
  RoleExpr r;
  r.kind = RoleExpr::Kind::Not;
  r.kids.push_back(std::move(inner));
  return r;
}

// ---------------------------------------------------------------------------
// Concept expressions.

struct ConceptExpr {
  enum class Kind { Atom, Top, Bot, Not, And, Or, Some, All, Typical };
  Kind kind = Kind::Atom;
  std::string name;               // Atom
  std::vector<RoleExpr> roles;    // Some/All: exactly one
  std::vector<ConceptExpr> kids;  // Not/Typical: 1, And/Or: 2, Some/All: 1

  const ConceptExpr& lhs() const { return kids.at(0); }
  const ConceptExpr& rhs() const { return kids.at(1); }
  const ConceptExpr& inner() const { return kids.at(0); }
  const RoleExpr& role() const { return roles.at(0); }

  bool operator==(const ConceptExpr& o) const {
    return kind == o.kind && name == o.name && roles == o.roles && kids == o.kids;
  }
  bool operator!=(const ConceptExpr& o) const { return !(*this == o); }
};

inline ConceptExpr c_atom(std::string n) {
  ConceptExpr c;
  c.kind = ConceptExpr::Kind::Atom;
  c.name = std::move(n);
  return c;
}
inline ConceptExpr c_top() { ConceptExpr c; c.kind = ConceptExpr::Kind::Top; return c; }
inline ConceptExpr c_bot() { ConceptExpr c; c.kind = ConceptExpr::Kind::Bot; return c; }
inline ConceptExpr c_unary(ConceptExpr::Kind k, ConceptExpr inner) {
  ConceptExpr c;
  c.kind = k;
  c.kids.push_back(std::move(inner));
  return c;
}
inline ConceptExpr c_not(ConceptExpr inner) { return c_unary(ConceptExpr::Kind::Not, std::move(inner)); }
inline ConceptExpr c_typical(ConceptExpr inner) { return c_unary(ConceptExpr::Kind::Typical, std::move(inner)); }
inline ConceptExpr c_binary(ConceptExpr::Kind k, ConceptExpr a, ConceptExpr b) {
  ConceptExpr c;
  c.kind = k;
  c.kids.push_back(std::move(a));
  c.kids.push_back(std::move(b));
  return c;
}
inline ConceptExpr c_and(ConceptExpr a, ConceptExpr b) { return c_binary(ConceptExpr::Kind::And, std::move(a), std::move(b)); }
inline ConceptExpr c_or(ConceptExpr a, ConceptExpr b) { return c_binary(ConceptExpr::Kind::Or, std::move(a), std::move(b)); }
inline ConceptExpr c_quant(ConceptExpr::Kind k, RoleExpr r, ConceptExpr body) {
  ConceptExpr c;
  c.kind = k;
  c.roles.push_back(std::move(r));
  c.kids.push_back(std::move(body));
  return c;
}
inline ConceptExpr c_some(RoleExpr r, ConceptExpr body) { return c_quant(ConceptExpr::Kind::Some, std::move(r), std::move(body)); }
inline ConceptExpr c_all(RoleExpr r, ConceptExpr body) { return c_quant(ConceptExpr::Kind::All, std::move(r), std::move(body)); }

// ---------------------------------------------------------------------------
// Axioms and knowledge bases.

struct Axiom {
  enum class Kind { GCI, RIA, ConceptAssertion, RoleAssertion };
  Kind kind = Kind::GCI;
  ConceptExpr clhs, crhs;  // GCI; clhs also holds the concept of an assertion
  RoleExpr rlhs, rrhs;     // RIA; rlhs also holds the role of an assertion
  std::string ind1, ind2;  // assertions

  bool operator==(const Axiom& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::GCI: return clhs == o.clhs && crhs == o.crhs;
      case Kind::RIA: return rlhs == o.rlhs && rrhs == o.rrhs;
      case Kind::ConceptAssertion: return ind1 == o.ind1 && clhs == o.clhs;
      case Kind::RoleAssertion: return ind1 == o.ind1 && ind2 == o.ind2 && rlhs == o.rlhs;
    }
    return false;
  }
  bool operator!=(const Axiom& o) const { return !(*this == o); }
};

inline Axiom ax_gci(ConceptExpr lhs, ConceptExpr rhs) {
  Axiom a;
  a.kind = Axiom::Kind::GCI;
  a.clhs = std::move(lhs);
  a.crhs = std::move(rhs);
  return a;
}
inline Axiom ax_ria(RoleExpr lhs, RoleExpr rhs) {
  Axiom a;
  a.kind = Axiom::Kind::RIA;
  a.rlhs = std::move(lhs);
  a.rrhs = std::move(rhs);
  return a;
}
inline Axiom ax_concept(std::string ind, ConceptExpr c) {
  Axiom a;
  a.kind = Axiom::Kind::ConceptAssertion;
  a.ind1 = std::move(ind);
  a.clhs = std::move(c);
  return a;
}
inline Axiom ax_role(std::string i1, std::string i2, RoleExpr r) {
  Axiom a;
  a.kind = Axiom::Kind::RoleAssertion;
  a.ind1 = std::move(i1);
  a.ind2 = std::move(i2);
  a.rlhs = std::move(r);
  return a;
}

struct KnowledgeBase {
  Signature sig;
  std::vector<Axiom> tbox;  // GCIs
  std::vector<Axiom> rbox;  // RIAs
  std::vector<Axiom> abox;  // assertions, in declaration order

  void add_axiom(const Axiom& a) {
    auto push_unique = [](std::vector<Axiom>& v, const Axiom& x) {
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    };
    switch (a.kind) {
      case Axiom::Kind::GCI: push_unique(tbox, a); break;
      case Axiom::Kind::RIA: push_unique(rbox, a); break;
      default: push_unique(abox, a); break;
    }
  }

  bool operator==(const KnowledgeBase& o) const {
    return sig == o.sig && tbox == o.tbox && rbox == o.rbox && abox == o.abox;
  }
};

// ---------------------------------------------------------------------------
// Validation: every name used in an axiom must be registered, with the right
// kind.  Throws on violation.

inline void collect_names(const RoleExpr& r, std::set<std::string>& roles) {
  if (r.kind == RoleExpr::Kind::Atom)
    roles.insert(r.name);
  else
    collect_names(r.inner(), roles);
}

inline void collect_names(const ConceptExpr& c, std::set<std::string>& concepts,
                          std::set<std::string>& roles) {
  if (c.kind == ConceptExpr::Kind::Atom) concepts.insert(c.name);
  for (const auto& r : c.roles) collect_names(r, roles);
  for (const auto& k : c.kids) collect_names(k, concepts, roles);
}

inline void validate(const KnowledgeBase& kb) {
  std::set<std::string> concepts, roles, individuals;
  auto walk_axiom = [&](const Axiom& a) {
    switch (a.kind) {
      case Axiom::Kind::GCI:
        collect_names(a.clhs, concepts, roles);
        collect_names(a.crhs, concepts, roles);
        break;
      case Axiom::Kind::RIA:
        collect_names(a.rlhs, roles);
        collect_names(a.rrhs, roles);
        break;
      case Axiom::Kind::ConceptAssertion:
        collect_names(a.clhs, concepts, roles);
        individuals.insert(a.ind1);
        break;
      case Axiom::Kind::RoleAssertion:
        collect_names(a.rlhs, roles);
        individuals.insert(a.ind1);
        individuals.insert(a.ind2);
        break;
    }
  };
  for (const auto& a : kb.tbox) walk_axiom(a);
  for (const auto& a : kb.rbox) walk_axiom(a);
  for (const auto& a : kb.abox) walk_axiom(a);
  for (const auto& n : concepts)
    if (!kb.sig.has_concept(n)) throw std::runtime_error("concept '" + n + "' not in signature");
  for (const auto& n : roles)
    if (!kb.sig.has_role(n)) throw std::runtime_error("role '" + n + "' not in signature");
  for (const auto& n : individuals)
    if (!kb.sig.has_individual(n)) throw std::runtime_error("individual '" + n + "' not in signature");
}

// Registers every name an axiom uses that the signature lacks; used to fold
// query names into a working signature.
inline void merge_query_names(const Axiom& q, Signature& sig) {
  std::set<std::string> concepts, roles, individuals;
  switch (q.kind) {
    case Axiom::Kind::GCI:
      collect_names(q.clhs, concepts, roles);
      collect_names(q.crhs, concepts, roles);
      break;
    case Axiom::Kind::RIA:
      collect_names(q.rlhs, roles);
      collect_names(q.rrhs, roles);
      break;
    case Axiom::Kind::ConceptAssertion:
      collect_names(q.clhs, concepts, roles);
      individuals.insert(q.ind1);
      break;
    case Axiom::Kind::RoleAssertion:
      collect_names(q.rlhs, roles);
      individuals.insert(q.ind1);
      individuals.insert(q.ind2);
      break;
  }
  for (const auto& n : concepts)
    if (!sig.has_concept(n)) sig.add(NameKind::Concept, n);
  for (const auto& n : roles)
    if (!sig.has_role(n)) sig.add(NameKind::Role, n);
  for (const auto& n : individuals)
    if (!sig.has_individual(n)) sig.add(NameKind::Individual, n);
}

// ---------------------------------------------------------------------------
// Normalization.  Rewrites top as _T0 | ~_T0 and bot as _T0 & ~_T0 (the
// matrix and formula translations have no top/bot cases), collapses double
// negation, and leaves everything else alone.  Negation is not pushed
// inward; the translations handle negated compounds natively.

inline RoleExpr normalize(const RoleExpr& r) {
  switch (r.kind) {
    case RoleExpr::Kind::Atom: return r;
    case RoleExpr::Kind::Typical: return r_typical(normalize(r.inner()));
    case RoleExpr::Kind::Not: {
      const RoleExpr& in = r.inner();
      if (in.kind == RoleExpr::Kind::Not) return normalize(in.inner());
      return r_not(normalize(in));
    }
  }
  return r;
}

inline ConceptExpr normalize(const ConceptExpr& c) {
  switch (c.kind) {
    case ConceptExpr::Kind::Atom: return c;
    case ConceptExpr::Kind::Top:
      return c_or(c_atom(kReservedTopConcept), c_not(c_atom(kReservedTopConcept)));
    case ConceptExpr::Kind::Bot:
      return c_and(c_atom(kReservedTopConcept), c_not(c_atom(kReservedTopConcept)));
    case ConceptExpr::Kind::Not: {
      const ConceptExpr& in = c.inner();
      if (in.kind == ConceptExpr::Kind::Not) return normalize(in.inner());
      if (in.kind == ConceptExpr::Kind::Top) return normalize(c_bot());
      if (in.kind == ConceptExpr::Kind::Bot) return normalize(c_top());
      return c_not(normalize(in));
    }
    case ConceptExpr::Kind::And: return c_and(normalize(c.lhs()), normalize(c.rhs()));
    case ConceptExpr::Kind::Or: return c_or(normalize(c.lhs()), normalize(c.rhs()));
    case ConceptExpr::Kind::Some: return c_some(normalize(c.role()), normalize(c.inner()));
    case ConceptExpr::Kind::All: return c_all(normalize(c.role()), normalize(c.inner()));
    case ConceptExpr::Kind::Typical: return c_typical(normalize(c.inner()));
  }
  return c;
}

inline Axiom normalize(const Axiom& a) {
  Axiom out = a;
  switch (a.kind) {
    case Axiom::Kind::GCI:
      out.clhs = normalize(a.clhs);
      out.crhs = normalize(a.crhs);
      break;
    case Axiom::Kind::RIA:
      out.rlhs = normalize(a.rlhs);
      out.rrhs = normalize(a.rrhs);
      break;
    case Axiom::Kind::ConceptAssertion: out.clhs = normalize(a.clhs); break;
    case Axiom::Kind::RoleAssertion: out.rlhs = normalize(a.rlhs); break;
  }
  return out;
}

inline KnowledgeBase normalize(const KnowledgeBase& kb) {
  KnowledgeBase out;
  out.sig = kb.sig;
  bool uses_topbot = false;
  std::function<void(const ConceptExpr&)> scan = [&](const ConceptExpr& c) {
    if (c.kind == ConceptExpr::Kind::Top || c.kind == ConceptExpr::Kind::Bot) uses_topbot = true;
    for (const auto& k : c.kids) scan(k);
  };
  for (const auto& a : kb.tbox) { scan(a.clhs); scan(a.crhs); }
  for (const auto& a : kb.abox)
    if (a.kind == Axiom::Kind::ConceptAssertion) scan(a.clhs);
  if (uses_topbot && !out.sig.has_concept(kReservedTopConcept))
    out.sig.add(NameKind::Concept, kReservedTopConcept);
  for (const auto& a : kb.tbox) out.tbox.push_back(normalize(a));
  for (const auto& a : kb.rbox) out.rbox.push_back(normalize(a));
  for (const auto& a : kb.abox) out.abox.push_back(normalize(a));
  return out;
}

// ---------------------------------------------------------------------------
// Printing.  The concrete syntax: & | ~ * some all [=, one axiom per line,
// sections tbox:/rbox:/abox:, '#' comments.  Binary operators are printed
// left-associatively with minimal parentheses so a reparse yields the same
// tree.

inline std::string print_role(const RoleExpr& r) {
  switch (r.kind) {
    case RoleExpr::Kind::Atom: return r.name;
    case RoleExpr::Kind::Typical: return "*" + print_role(r.inner());
    case RoleExpr::Kind::Not: return "~" + print_role(r.inner());
  }
  return "?";
}

namespace detail {
inline int concept_prec(const ConceptExpr& c) {
  switch (c.kind) {
    case ConceptExpr::Kind::Or: return 1;
    case ConceptExpr::Kind::And: return 2;
    default: return 3;  // unary and atoms bind tightest
  }
}
}  // namespace detail

inline std::string print_concept(const ConceptExpr& c, int parent_prec = 0) {
  using K = ConceptExpr::Kind;
  int prec = detail::concept_prec(c);
  std::string s;
  switch (c.kind) {
    case K::Atom: s = c.name; break;
    case K::Top: s = "top"; break;
    case K::Bot: s = "bot"; break;
    case K::Not: s = "~" + print_concept(c.inner(), prec); break;
    case K::Typical: s = "*" + print_concept(c.inner(), prec); break;
    case K::And:
      s = print_concept(c.lhs(), prec - 1) + " & " + print_concept(c.rhs(), prec);
      break;
    case K::Or:
      s = print_concept(c.lhs(), prec - 1) + " | " + print_concept(c.rhs(), prec);
      break;
    case K::Some:
      s = "some " + print_role(c.role()) + "." + print_concept(c.inner(), 3);
      break;
    case K::All:
      s = "all " + print_role(c.role()) + "." + print_concept(c.inner(), 3);
      break;
  }
  if (prec < 3 && prec <= parent_prec) return "(" + s + ")";
  return s;
}

inline std::string print_axiom(const Axiom& a) {
  switch (a.kind) {
    case Axiom::Kind::GCI: return print_concept(a.clhs) + " [= " + print_concept(a.crhs);
    case Axiom::Kind::RIA: return print_role(a.rlhs) + " [= " + print_role(a.rrhs);
    case Axiom::Kind::ConceptAssertion: {
      // A complete concept must stay one token-group before '(' so the
      // reparse attaches the argument list to the whole expression.
      const ConceptExpr& c = a.clhs;
      bool needs_parens = c.kind == ConceptExpr::Kind::And || c.kind == ConceptExpr::Kind::Or;
      std::string cs = print_concept(c);
      if (needs_parens && cs.front() != '(') cs = "(" + cs + ")";
      return cs + "(" + a.ind1 + ")";
    }
    case Axiom::Kind::RoleAssertion:
      return print_role(a.rlhs) + "(" + a.ind1 + "," + a.ind2 + ")";
  }
  return "?";
}

inline std::string print_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  if (!kb.sig.concepts.empty() || !kb.sig.roles.empty() || !kb.sig.individuals.empty()) {
    out << "signature:\n";
    auto decl = [&](const char* kw, const std::vector<std::string>& names) {
      if (names.empty()) return;
      out << "  " << kw << " ";
      for (size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
      out << "\n";
    };
    decl("concept", kb.sig.concepts);
    decl("role", kb.sig.roles);
    decl("individual", kb.sig.individuals);
  }
  auto section = [&](const char* name, const std::vector<Axiom>& axs) {
    if (axs.empty()) return;
    out << name << ":\n";
    for (const auto& a : axs) out << "  " << print_axiom(a) << "\n";
  };
  section("tbox", kb.tbox);
  section("rbox", kb.rbox);
  section("abox", kb.abox);
  return out.str();
}

}  // namespace dlcm
