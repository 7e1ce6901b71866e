#pragma once

// Recursive-descent parser for the textual KB syntax.
//
//   signature:            # optional declarations
//     concept A, B
//     role r, s
//     individual a, b
//   tbox:
//     some s.B [= *A
//   rbox:
//     *r [= s
//   abox:
//     *r(a,b)
//     B(b)
//
// One axiom per line, '#' starts a comment, sections may repeat and may carry
// an axiom on the header line ("tbox: A [= B").  Names are auto-declared on
// first use unless strict mode is on, in which case every name must appear
// under signature:.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "kb.hpp"

namespace dlcm {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                           ": " + msg),
        line(l),
        column(c) {}
};

namespace detail {

struct Token {
  enum class Kind { Ident, LParen, RParen, Comma, Dot, Amp, Pipe, Tilde, Star, Subsume, Colon, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

inline const char* token_name(Token::Kind k) {
  using K = Token::Kind;
  switch (k) {
    case K::Ident: return "identifier";
    case K::LParen: return "'('";
    case K::RParen: return "')'";
    case K::Comma: return "','";
    case K::Dot: return "'.'";
    case K::Amp: return "'&'";
    case K::Pipe: return "'|'";
    case K::Tilde: return "'~'";
    case K::Star: return "'*'";
    case K::Subsume: return "'[='";
    case K::Colon: return "':'";
    case K::End: return "end of line";
  }
  return "?";
}

inline bool is_reserved(const std::string& s) {
  return s == "some" || s == "all" || s == "top" || s == "bot" || s == "tbox" ||
         s == "rbox" || s == "abox" || s == "signature" || s == "concept" || s == "role" ||
         s == "individual";
}

// Tokenizes one source line (comment already stripped).
inline std::vector<Token> lex_line(const std::string& text, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
    auto push = [&](Token::Kind k, std::string t, size_t adv) {
      out.push_back({k, std::move(t), lineno, col});
      i += adv;
    };
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Token::Kind::Ident, text.substr(i, j - i), j - i);
      continue;
    }
    switch (ch) {
      case '(': push(Token::Kind::LParen, "(", 1); break;
      case ')': push(Token::Kind::RParen, ")", 1); break;
      case ',': push(Token::Kind::Comma, ",", 1); break;
      case '.': push(Token::Kind::Dot, ".", 1); break;
      case '&': push(Token::Kind::Amp, "&", 1); break;
      case '|': push(Token::Kind::Pipe, "|", 1); break;
      case '~': push(Token::Kind::Tilde, "~", 1); break;
      case '*': push(Token::Kind::Star, "*", 1); break;
      case ':': push(Token::Kind::Colon, ":", 1); break;
      case '[':
        if (i + 1 < text.size() && text[i + 1] == '=') { push(Token::Kind::Subsume, "[=", 2); break; }
        throw ParseError(lineno, col, "stray '[', expected '[='");
      default:
        throw ParseError(lineno, col, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Token::Kind::End, "", lineno, static_cast<int>(text.size()) + 1});
  return out;
}

// Resolves used names against the signature, auto-declaring unless strict.
struct NameSink {
  Signature* sig;
  bool strict;
  void use(NameKind k, const Token& t) {
    if (sig->has(k, t.text)) return;
    for (NameKind other : {NameKind::Concept, NameKind::Role, NameKind::Individual}) {
      if (other != k && sig->has(other, t.text))
        throw ParseError(t.line, t.col, "'" + t.text + "' already used as " + to_string(other) +
                                            ", cannot use as " + to_string(k));
    }
    if (strict)
      throw ParseError(t.line, t.col,
                       std::string("undeclared ") + to_string(k) + " '" + t.text + "' (strict mode)");
    sig->add(k, t.text);
  }
};

// Parses one line.  Name usages are recorded and committed only once the
// axiom's kind is known, because "r(a,b)" reaches the role name through the
// concept grammar.
class LineParser {
 public:
  LineParser(std::vector<Token> toks, bool allow_role_negation)
      : toks_(std::move(toks)), allow_role_negation_(allow_role_negation) {}

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool at(Token::Kind k) const { return peek().kind == k; }

  Token expect(Token::Kind k) {
    if (!at(k))
      throw ParseError(peek().line, peek().col,
                       std::string("expected ") + token_name(k) + ", found " + found_desc());
    return take();
  }

  std::string expect_name(NameKind kind) {
    Token t = expect(Token::Kind::Ident);
    if (is_reserved(t.text))
      throw ParseError(t.line, t.col, "'" + t.text + "' is a reserved word");
    uses_.emplace_back(t, kind);
    return t.text;
  }

  RoleExpr parse_role() {
    if (at(Token::Kind::Star)) { take(); return r_typical(parse_role()); }
    if (at(Token::Kind::Tilde)) {
      Token t = take();
      if (!allow_role_negation_)
        throw ParseError(t.line, t.col, "negated roles are only allowed in queries");
      return r_not(parse_role());
    }
    if (at(Token::Kind::LParen)) {
      take();
      RoleExpr r = parse_role();
      expect(Token::Kind::RParen);
      return r;
    }
    return r_atom(expect_name(NameKind::Role));
  }

  // Precedence: | < & < unary.  Quantifier bodies parse at unary level, so
  // "some r.A & B" reads as "(some r.A) & B".
  ConceptExpr parse_concept() { return parse_or(); }

  ConceptExpr parse_or() {
    ConceptExpr c = parse_and();
    while (at(Token::Kind::Pipe)) { take(); c = c_or(std::move(c), parse_and()); }
    return c;
  }

  ConceptExpr parse_and() {
    ConceptExpr c = parse_unary();
    while (at(Token::Kind::Amp)) { take(); c = c_and(std::move(c), parse_unary()); }
    return c;
  }

  ConceptExpr parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Tilde: take(); return c_not(parse_unary());
      case Token::Kind::Star: take(); return c_typical(parse_unary());
      case Token::Kind::LParen: {
        take();
        ConceptExpr c = parse_or();
        expect(Token::Kind::RParen);
        return c;
      }
      case Token::Kind::Ident: {
        if (t.text == "top") { take(); return c_top(); }
        if (t.text == "bot") { take(); return c_bot(); }
        if (t.text == "some" || t.text == "all") {
          bool some = t.text == "some";
          take();
          RoleExpr r = parse_role();
          expect(Token::Kind::Dot);
          ConceptExpr body = parse_unary();
          return some ? c_some(std::move(r), std::move(body))
                      : c_all(std::move(r), std::move(body));
        }
        return c_atom(expect_name(NameKind::Concept));
      }
      default:
        throw ParseError(t.line, t.col, std::string("expected a concept, found ") + found_desc());
    }
  }

  void expect_end() {
    if (!at(Token::Kind::End))
      throw ParseError(peek().line, peek().col, "trailing input, found " + found_desc());
  }

  // Commits recorded name usages.  When the line turned out role-flavored
  // (role assertion, RIA query), atoms tentatively read as concepts are
  // really roles.
  void commit(NameSink& names, bool concepts_are_roles = false) {
    for (auto& [tok, kind] : uses_) {
      NameKind k = kind;
      if (concepts_are_roles && k == NameKind::Concept) k = NameKind::Role;
      names.use(k, tok);
    }
  }

 private:
  std::string found_desc() const {
    return peek().kind == Token::Kind::Ident ? "'" + peek().text + "'"
                                             : token_name(peek().kind);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  bool allow_role_negation_;
  std::vector<std::pair<Token, NameKind>> uses_;
};

// A star/not chain over an atom can be reread as a role expression; used to
// turn a concept-shaped parse into the role of a role assertion or RIA.
inline std::optional<RoleExpr> concept_as_role(const ConceptExpr& c) {
  switch (c.kind) {
    case ConceptExpr::Kind::Atom: return r_atom(c.name);
    case ConceptExpr::Kind::Typical: {
      auto in = concept_as_role(c.inner());
      if (!in) return std::nullopt;
      return r_typical(std::move(*in));
    }
    case ConceptExpr::Kind::Not: {
      auto in = concept_as_role(c.inner());
      if (!in) return std::nullopt;
      return r_not(std::move(*in));
    }
    default: return std::nullopt;
  }
}

// Atom name reachable under star/not prefixes, for query disambiguation.
inline std::optional<std::string> prefix_atom_name(const ConceptExpr& c) {
  if (c.kind == ConceptExpr::Kind::Atom) return c.name;
  if (c.kind == ConceptExpr::Kind::Typical || c.kind == ConceptExpr::Kind::Not)
    return prefix_atom_name(c.inner());
  return std::nullopt;
}

struct Line {
  int number;
  std::string text;
};

inline std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::string cur;
  int lineno = 1;
  auto flush = [&]() {
    auto hash = cur.find('#');
    if (hash != std::string::npos) cur.erase(hash);
    bool blank = cur.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank) out.push_back({lineno, cur});
    cur.clear();
    ++lineno;
  };
  for (char ch : text) {
    if (ch == '\n') flush();
    else cur.push_back(ch);
  }
  flush();
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline KnowledgeBase parse_kb(const std::string& text, bool strict = false) {
  using detail::Token;
  KnowledgeBase kb;
  detail::NameSink names{&kb.sig, strict};

  enum class Section { None, Signature, TBox, RBox, ABox };
  Section section = Section::None;

  for (const auto& line : detail::split_lines(text)) {
    auto toks = detail::lex_line(line.text, line.number);
    if (toks.front().kind == Token::Kind::Ident && toks.size() >= 2 &&
        toks[1].kind == Token::Kind::Colon) {
      const std::string& name = toks.front().text;
      if (name == "signature") section = Section::Signature;
      else if (name == "tbox") section = Section::TBox;
      else if (name == "rbox") section = Section::RBox;
      else if (name == "abox") section = Section::ABox;
      else
        throw ParseError(toks.front().line, toks.front().col,
                         "unknown section '" + name + "'");
      toks.erase(toks.begin(), toks.begin() + 2);
      if (toks.front().kind == Token::Kind::End) continue;  // bare header
    }
    switch (section) {
      case Section::None:
        throw ParseError(toks.front().line, toks.front().col,
                         "expected a section header (signature:/tbox:/rbox:/abox:)");
      case Section::Signature: {
        if (toks.front().kind != Token::Kind::Ident)
          throw ParseError(toks.front().line, toks.front().col,
                           "expected a declaration keyword");
        const std::string& kw = toks.front().text;
        NameKind kind;
        if (kw == "concept") kind = NameKind::Concept;
        else if (kw == "role") kind = NameKind::Role;
        else if (kw == "individual") kind = NameKind::Individual;
        else
          throw ParseError(toks.front().line, toks.front().col,
                           "expected concept/role/individual, found '" + kw + "'");
        size_t i = 1;
        while (true) {
          if (toks[i].kind != Token::Kind::Ident)
            throw ParseError(toks[i].line, toks[i].col, "expected a name");
          if (detail::is_reserved(toks[i].text))
            throw ParseError(toks[i].line, toks[i].col,
                             "'" + toks[i].text + "' is a reserved word");
          if (kb.sig.has_any(toks[i].text))
            throw ParseError(toks[i].line, toks[i].col,
                             "duplicate declaration of '" + toks[i].text + "'");
          kb.sig.add(kind, toks[i].text);
          ++i;
          if (toks[i].kind == Token::Kind::End) break;
          if (toks[i].kind != Token::Kind::Comma)
            throw ParseError(toks[i].line, toks[i].col, "expected ',' or end of line");
          ++i;
        }
        break;
      }
      case Section::TBox: {
        detail::LineParser lp(std::move(toks), /*allow_role_negation=*/false);
        ConceptExpr lhs = lp.parse_concept();
        lp.expect(Token::Kind::Subsume);
        ConceptExpr rhs = lp.parse_concept();
        lp.expect_end();
        lp.commit(names);
        kb.add_axiom(ax_gci(std::move(lhs), std::move(rhs)));
        break;
      }
      case Section::RBox: {
        detail::LineParser lp(std::move(toks), /*allow_role_negation=*/false);
        RoleExpr lhs = lp.parse_role();
        lp.expect(Token::Kind::Subsume);
        RoleExpr rhs = lp.parse_role();
        lp.expect_end();
        lp.commit(names);
        kb.add_axiom(ax_ria(std::move(lhs), std::move(rhs)));
        break;
      }
      case Section::ABox: {
        detail::LineParser lp(std::move(toks), /*allow_role_negation=*/false);
        ConceptExpr expr = lp.parse_concept();
        Token open = lp.expect(Token::Kind::LParen);
        std::string i1 = lp.expect_name(NameKind::Individual);
        if (lp.at(Token::Kind::Comma)) {
          lp.take();
          std::string i2 = lp.expect_name(NameKind::Individual);
          lp.expect(Token::Kind::RParen);
          lp.expect_end();
          auto role = detail::concept_as_role(expr);
          if (!role)
            throw ParseError(open.line, open.col,
                             "role assertions take an atomic role under * prefixes");
          if (role->kind == RoleExpr::Kind::Not)
            throw ParseError(open.line, open.col,
                             "negated role assertions are only allowed in queries");
          lp.commit(names, /*concepts_are_roles=*/true);
          kb.add_axiom(ax_role(std::move(i1), std::move(i2), std::move(*role)));
        } else {
          lp.expect(Token::Kind::RParen);
          lp.expect_end();
          lp.commit(names);
          kb.add_axiom(ax_concept(std::move(i1), std::move(expr)));
        }
        break;
      }
    }
  }
  validate(kb);
  return kb;
}

// Parses a single axiom.  The signature context (typically the KB the query
// runs against) classifies bare names: a subsumption whose prefix atoms are
// known roles parses as an RIA, otherwise as a GCI.  Role assertions may be
// negated here, unlike in KB files.
inline Axiom parse_query(const std::string& text, const Signature* context = nullptr,
                         bool strict = false) {
  using detail::Token;
  auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty query");
  if (lines.size() > 1)
    throw ParseError(lines[1].number, 1, "a query is a single axiom");

  Signature scratch = context ? *context : Signature{};
  detail::NameSink names{&scratch, strict};
  auto toks = detail::lex_line(lines[0].text, lines[0].number);

  bool has_subsume = false;
  for (const auto& t : toks)
    if (t.kind == Token::Kind::Subsume) has_subsume = true;

  detail::LineParser lp(std::move(toks), /*allow_role_negation=*/true);
  if (has_subsume) {
    ConceptExpr lhs = lp.parse_concept();
    lp.expect(Token::Kind::Subsume);
    ConceptExpr rhs = lp.parse_concept();
    lp.expect_end();
    auto lname = detail::prefix_atom_name(lhs);
    auto rname = detail::prefix_atom_name(rhs);
    bool role_sub = context && ((lname && context->has_role(*lname)) ||
                                (rname && context->has_role(*rname)));
    if (role_sub) {
      auto rl = detail::concept_as_role(lhs);
      auto rr = detail::concept_as_role(rhs);
      if (!rl || !rr)
        throw ParseError(lines[0].number, 1, "role subsumption takes role expressions");
      lp.commit(names, /*concepts_are_roles=*/true);
      return ax_ria(std::move(*rl), std::move(*rr));
    }
    lp.commit(names);
    return ax_gci(std::move(lhs), std::move(rhs));
  }

  ConceptExpr expr = lp.parse_concept();
  Token open = lp.expect(Token::Kind::LParen);
  std::string i1 = lp.expect_name(NameKind::Individual);
  if (lp.at(Token::Kind::Comma)) {
    lp.take();
    std::string i2 = lp.expect_name(NameKind::Individual);
    lp.expect(Token::Kind::RParen);
    lp.expect_end();
    auto role = detail::concept_as_role(expr);
    if (!role)
      throw ParseError(open.line, open.col,
                       "role assertions take an atomic role under */~ prefixes");
    lp.commit(names, /*concepts_are_roles=*/true);
    return ax_role(std::move(i1), std::move(i2), std::move(*role));
  }
  lp.expect(Token::Kind::RParen);
  lp.expect_end();
  lp.commit(names);
  return ax_concept(std::move(i1), std::move(expr));
}

}  // namespace dlcm
