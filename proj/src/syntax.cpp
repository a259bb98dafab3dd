#include "syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bdl {

namespace {

const char* const kReservedWords[] = {"false", "true",   "des", "cons",
                                      "det",   "def",    "forall", "exists"};

}  // namespace

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<std::string> constants,
                     std::map<std::string, std::size_t> functions,
                     std::map<std::string, std::size_t> predicates,
                     std::set<std::string> propositions)
    : constants_(std::move(constants)),
      functions_(std::move(functions)),
      predicates_(std::move(predicates)),
      propositions_(std::move(propositions)) {
  std::set<std::string> seen;
  auto claim = [&seen](const std::string& name, const char* what,
                       bool nil_allowed) {
    if (!is_valid_identifier(name))
      throw ValidationError(std::string(what) + " '" + name +
                            "' is not a valid identifier");
    if (is_reserved_word(name) || (!nil_allowed && name == "nil"))
      throw ValidationError(std::string(what) + " '" + name +
                            "' collides with a reserved word");
    if (!seen.insert(name).second)
      throw ValidationError("symbol '" + name + "' declared more than once");
  };
  // nil is an ordinary constant name; it is reserved for everything else.
  for (const auto& c : constants_) claim(c, "constant", true);
  for (const auto& [name, arity] : functions_) {
    claim(name, "function", false);
    if (arity == 0)
      throw ValidationError("function '" + name + "' must have positive arity");
  }
  for (const auto& [name, arity] : predicates_) {
    claim(name, "predicate", false);
    if (arity == 0)
      throw ValidationError("predicate '" + name + "' must have positive arity");
  }
  for (const auto& p : propositions_) claim(p, "proposition", false);
}

bool Signature::is_constant(const std::string& name) const {
  return std::find(constants_.begin(), constants_.end(), name) != constants_.end();
}
bool Signature::is_function(const std::string& name) const {
  return functions_.count(name) != 0;
}
bool Signature::is_predicate(const std::string& name) const {
  return predicates_.count(name) != 0;
}
bool Signature::is_proposition(const std::string& name) const {
  return propositions_.count(name) != 0;
}
bool Signature::declares(const std::string& name) const {
  return is_constant(name) || is_function(name) || is_predicate(name) ||
         is_proposition(name);
}
std::size_t Signature::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end())
    throw ValidationError("undeclared function '" + name + "'");
  return it->second;
}
std::size_t Signature::predicate_arity(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end())
    throw ValidationError("undeclared predicate '" + name + "'");
  return it->second;
}
std::size_t Signature::constant_index(const std::string& name) const {
  auto it = std::find(constants_.begin(), constants_.end(), name);
  if (it == constants_.end())
    throw ValidationError("undeclared constant '" + name + "'");
  return static_cast<std::size_t>(it - constants_.begin());
}

bool Signature::is_reserved_word(const std::string& name) {
  for (const char* word : kReservedWords)
    if (name == word) return true;
  return false;
}

bool Signature::is_valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
    return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// ---------------------------------------------------------------------------
// Terms and formulas

Term Term::variable(std::string name) {
  return Term{Kind::Variable, std::move(name), {}};
}
Term Term::constant(std::string name) {
  return Term{Kind::Constant, std::move(name), {}};
}
Term Term::application(std::string name, std::vector<Term> args) {
  return Term{Kind::Application, std::move(name), std::move(args)};
}

int compare(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name); c != 0) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size())
    return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
  return 0;
}
bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

Formula Formula::proposition(std::string name) {
  Formula f;
  f.kind = Kind::Proposition;
  f.name = std::move(name);
  return f;
}
Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  Formula f;
  f.kind = Kind::Atom;
  f.name = std::move(predicate);
  f.terms = std::move(args);
  return f;
}
Formula Formula::equality(Term lhs, Term rhs) {
  Formula f;
  f.kind = Kind::Equality;
  f.terms = {std::move(lhs), std::move(rhs)};
  return f;
}
Formula Formula::falsum() { return Formula{}; }
Formula Formula::negation(Formula sub) {
  Formula f;
  f.kind = Kind::Not;
  f.subs = {std::move(sub)};
  return f;
}
static Formula binary(Formula::Kind kind, Formula lhs, Formula rhs) {
  Formula f;
  f.kind = kind;
  f.subs = {std::move(lhs), std::move(rhs)};
  return f;
}
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return binary(Kind::And, std::move(lhs), std::move(rhs));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return binary(Kind::Or, std::move(lhs), std::move(rhs));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return binary(Kind::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::for_all(std::string var, Formula body) {
  Formula f;
  f.kind = Kind::ForAll;
  f.name = std::move(var);
  f.subs = {std::move(body)};
  return f;
}
Formula Formula::exists(std::string var, Formula body) {
  Formula f;
  f.kind = Kind::Exists;
  f.name = std::move(var);
  f.subs = {std::move(body)};
  return f;
}

bool Formula::is_atomic() const {
  return kind == Kind::Proposition || kind == Kind::Atom || kind == Kind::Equality;
}
bool Formula::is_literal() const {
  return is_atomic() || (kind == Kind::Not && subs[0].is_atomic());
}

int compare(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name); c != 0) return c < 0 ? -1 : 1;
  if (a.terms.size() != b.terms.size())
    return a.terms.size() < b.terms.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (int c = compare(a.terms[i], b.terms[i]); c != 0) return c;
  if (a.subs.size() != b.subs.size())
    return a.subs.size() < b.subs.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.subs.size(); ++i)
    if (int c = compare(a.subs[i], b.subs[i]); c != 0) return c;
  return 0;
}
bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Abbreviations

Abbreviation Abbreviation::not_equal(Term t1, Term t2) {
  return Abbreviation{Kind::NotEqual, {std::move(t1), std::move(t2)}, {}};
}
Abbreviation Abbreviation::truth() { return Abbreviation{Kind::Truth, {}, {}}; }
Abbreviation Abbreviation::strong_implies(Formula a1, Formula a2) {
  return Abbreviation{Kind::StrongImplies, {}, {std::move(a1), std::move(a2)}};
}
Abbreviation Abbreviation::des(Formula a) {
  return Abbreviation{Kind::Des, {}, {std::move(a)}};
}
Abbreviation Abbreviation::cons(Formula a) {
  return Abbreviation{Kind::Cons, {}, {std::move(a)}};
}
Abbreviation Abbreviation::det(Formula a) {
  return Abbreviation{Kind::Det, {}, {std::move(a)}};
}
Abbreviation Abbreviation::defined(Term t) {
  return Abbreviation{Kind::Defined, {std::move(t)}, {}};
}
Abbreviation Abbreviation::strong_equal(Term t1, Term t2) {
  return Abbreviation{Kind::StrongEqual, {std::move(t1), std::move(t2)}, {}};
}

Formula expand(const Abbreviation& a) {
  switch (a.kind) {
    case Abbreviation::Kind::NotEqual:
      return Formula::negation(Formula::equality(a.terms[0], a.terms[1]));
    case Abbreviation::Kind::Truth:
      return Formula::negation(Formula::falsum());
    case Abbreviation::Kind::StrongImplies:
      return Formula::conjunction(
          Formula::implication(a.formulas[0], a.formulas[1]),
          Formula::implication(Formula::negation(a.formulas[1]),
                               Formula::negation(a.formulas[0])));
    case Abbreviation::Kind::Des:
      return Formula::negation(
          Formula::implication(a.formulas[0], Formula::falsum()));
    case Abbreviation::Kind::Cons: {
      Formula clash =
          Formula::conjunction(a.formulas[0], Formula::negation(a.formulas[0]));
      return Formula::negation(expand(Abbreviation::des(std::move(clash))));
    }
    case Abbreviation::Kind::Det: {
      Formula split =
          Formula::disjunction(a.formulas[0], Formula::negation(a.formulas[0]));
      return expand(Abbreviation::des(std::move(split)));
    }
    case Abbreviation::Kind::Defined:
      return expand(
          Abbreviation::des(Formula::equality(a.terms[0], a.terms[0])));
    case Abbreviation::Kind::StrongEqual: {
      Formula undefined_both = Formula::negation(Formula::disjunction(
          expand(Abbreviation::defined(a.terms[0])),
          expand(Abbreviation::defined(a.terms[1]))));
      return Formula::disjunction(Formula::equality(a.terms[0], a.terms[1]),
                                  std::move(undefined_both));
    }
  }
  throw ValidationError("unknown abbreviation");
}

// ---------------------------------------------------------------------------
// Free variables, names, substitution

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  if (t.kind == Term::Kind::Variable) {
    out.insert(t.name);
  } else {
    for (const Term& arg : t.args) {
      auto sub = free_vars(arg);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  for (const Term& t : f.terms) {
    auto sub = free_vars(t);
    out.insert(sub.begin(), sub.end());
  }
  for (const Formula& sub : f.subs) {
    auto inner = free_vars(sub);
    out.insert(inner.begin(), inner.end());
  }
  if (f.is_quantifier()) out.erase(f.name);
  return out;
}

void collect_names(const Term& t, std::set<std::string>& out) {
  out.insert(t.name);
  for (const Term& arg : t.args) collect_names(arg, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (!f.name.empty()) out.insert(f.name);
  for (const Term& t : f.terms) collect_names(t, out);
  for (const Formula& sub : f.subs) collect_names(sub, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (avoid.count(candidate) == 0) return candidate;
  }
}

Term substitute(const std::string& x, const Term& t, const Term& e) {
  switch (e.kind) {
    case Term::Kind::Variable:
      return e.name == x ? t : e;
    case Term::Kind::Constant:
      return e;
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(e.args.size());
      for (const Term& arg : e.args) args.push_back(substitute(x, t, arg));
      return Term::application(e.name, std::move(args));
    }
  }
  throw ValidationError("unknown term kind");
}

Formula substitute(const std::string& x, const Term& t, const Formula& e) {
  switch (e.kind) {
    case Formula::Kind::Proposition:
    case Formula::Kind::Falsum:
      return e;
    case Formula::Kind::Atom:
    case Formula::Kind::Equality: {
      Formula out = e;
      for (Term& arg : out.terms) arg = substitute(x, t, arg);
      return out;
    }
    case Formula::Kind::Not:
      return Formula::negation(substitute(x, t, e.subs[0]));
    case Formula::Kind::And:
      return Formula::conjunction(substitute(x, t, e.subs[0]),
                                  substitute(x, t, e.subs[1]));
    case Formula::Kind::Or:
      return Formula::disjunction(substitute(x, t, e.subs[0]),
                                  substitute(x, t, e.subs[1]));
    case Formula::Kind::Implies:
      return Formula::implication(substitute(x, t, e.subs[0]),
                                  substitute(x, t, e.subs[1]));
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      if (e.name == x) return e;  // x is bound here, no free occurrences below
      std::string bound = e.name;
      Formula body = e.subs[0];
      if (free_vars(body).count(x) == 0) return e;
      if (free_vars(t).count(bound) != 0) {
        // The bound variable would capture a variable of t; rename it first.
        std::set<std::string> avoid;
        collect_names(body, avoid);
        collect_names(t, avoid);
        avoid.insert(x);
        std::string renamed = fresh_name(bound, avoid);
        body = substitute(bound, Term::variable(renamed), body);
        bound = renamed;
      }
      Formula out;
      out.kind = e.kind;
      out.name = bound;
      out.subs = {substitute(x, t, body)};
      return out;
    }
  }
  throw ValidationError("unknown formula kind");
}

namespace {

bool alpha_equal_impl(const Formula& a, const Formula& b,
                      std::vector<std::pair<std::string, std::string>>& bound) {
  if (a.kind != b.kind) return false;
  auto term_matches = [&bound](const Term& ta, const Term& tb) {
    // Terms contain no binders; walk them together resolving bound names.
    struct Walk {
      const std::vector<std::pair<std::string, std::string>>& bound;
      bool run(const Term& x, const Term& y) {
        if (x.kind != y.kind) return false;
        if (x.kind == Term::Kind::Variable) {
          for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
            if (it->first == x.name || it->second == y.name)
              return it->first == x.name && it->second == y.name;
          }
          return x.name == y.name;
        }
        if (x.name != y.name || x.args.size() != y.args.size()) return false;
        for (std::size_t i = 0; i < x.args.size(); ++i)
          if (!run(x.args[i], y.args[i])) return false;
        return true;
      }
    };
    return Walk{bound}.run(ta, tb);
  };
  switch (a.kind) {
    case Formula::Kind::Proposition:
      return a.name == b.name;
    case Formula::Kind::Falsum:
      return true;
    case Formula::Kind::Atom:
      if (a.name != b.name || a.terms.size() != b.terms.size()) return false;
      for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (!term_matches(a.terms[i], b.terms[i])) return false;
      return true;
    case Formula::Kind::Equality:
      return term_matches(a.terms[0], b.terms[0]) &&
             term_matches(a.terms[1], b.terms[1]);
    case Formula::Kind::Not:
      return alpha_equal_impl(a.subs[0], b.subs[0], bound);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return alpha_equal_impl(a.subs[0], b.subs[0], bound) &&
             alpha_equal_impl(a.subs[1], b.subs[1], bound);
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      bound.emplace_back(a.name, b.name);
      bool ok = alpha_equal_impl(a.subs[0], b.subs[0], bound);
      bound.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  std::vector<std::pair<std::string, std::string>> bound;
  return alpha_equal_impl(a, b, bound);
}

// ---------------------------------------------------------------------------
// Well-formedness

void check_well_formed(const Term& t, const Signature& sig) {
  switch (t.kind) {
    case Term::Kind::Variable:
      if (sig.declares(t.name))
        throw ValidationError("variable '" + t.name +
                              "' collides with a declared symbol");
      return;
    case Term::Kind::Constant:
      if (!sig.is_constant(t.name))
        throw ValidationError("undeclared constant '" + t.name + "'");
      return;
    case Term::Kind::Application: {
      std::size_t arity = sig.function_arity(t.name);
      if (t.args.size() != arity)
        throw ValidationError("function '" + t.name + "' expects " +
                              std::to_string(arity) + " arguments");
      for (const Term& arg : t.args) check_well_formed(arg, sig);
      return;
    }
  }
}

void check_well_formed(const Formula& f, const Signature& sig) {
  switch (f.kind) {
    case Formula::Kind::Proposition:
      if (!sig.is_proposition(f.name))
        throw ValidationError("undeclared proposition '" + f.name + "'");
      return;
    case Formula::Kind::Atom: {
      std::size_t arity = sig.predicate_arity(f.name);
      if (f.terms.size() != arity)
        throw ValidationError("predicate '" + f.name + "' expects " +
                              std::to_string(arity) + " arguments");
      for (const Term& t : f.terms) check_well_formed(t, sig);
      return;
    }
    case Formula::Kind::Equality:
      check_well_formed(f.terms[0], sig);
      check_well_formed(f.terms[1], sig);
      return;
    case Formula::Kind::Falsum:
      return;
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      for (const Formula& sub : f.subs) check_well_formed(sub, sig);
      return;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      if (sig.declares(f.name))
        throw ValidationError("bound variable '" + f.name +
                              "' collides with a declared symbol");
      check_well_formed(f.subs[0], sig);
      return;
  }
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class TokenKind {
  Identifier,
  LParen,
  RParen,
  Comma,
  Dot,
  Tilde,
  Amp,
  Pipe,
  Arrow,        // ->
  StrongArrow,  // =>
  Equal,        // =
  NotEqual,     // !=
  StrongEqual,  // ==
  End,
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto push = [&tokens](TokenKind kind, std::string s, std::size_t pos) {
    tokens.push_back(Token{kind, std::move(s), pos});
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      push(TokenKind::Identifier, text.substr(start, i - start), start);
      continue;
    }
    switch (c) {
      case '(':
        push(TokenKind::LParen, "(", i++);
        break;
      case ')':
        push(TokenKind::RParen, ")", i++);
        break;
      case ',':
        push(TokenKind::Comma, ",", i++);
        break;
      case '.':
        push(TokenKind::Dot, ".", i++);
        break;
      case '~':
        push(TokenKind::Tilde, "~", i++);
        break;
      case '&':
        push(TokenKind::Amp, "&", i++);
        break;
      case '|':
        push(TokenKind::Pipe, "|", i++);
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(TokenKind::Arrow, "->", i);
          i += 2;
        } else {
          throw ParseError("expected '->'", i);
        }
        break;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(TokenKind::StrongArrow, "=>", i);
          i += 2;
        } else if (i + 1 < text.size() && text[i + 1] == '=') {
          push(TokenKind::StrongEqual, "==", i);
          i += 2;
        } else {
          push(TokenKind::Equal, "=", i++);
        }
        break;
      case '!':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(TokenKind::NotEqual, "!=", i);
          i += 2;
        } else {
          throw ParseError("expected '!='", i);
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  push(TokenKind::End, "", text.size());
  return tokens;
}

// Recursive-descent parser over the token stream. Precedence, from the
// highest to the lowest: ~, &, |, -> and =>. Quantifier scope extends as far
// to the right as possible.
class Parser {
 public:
  Parser(std::vector<Token> tokens, const Signature& sig)
      : tokens_(std::move(tokens)), sig_(sig) {}

  Formula parse_formula_all() {
    Formula f = parse_implies();
    expect(TokenKind::End, "end of input");
    return f;
  }

  Term parse_term_all() {
    Term t = parse_term();
    expect(TokenKind::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool accept(TokenKind kind) {
    if (peek().kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(TokenKind kind, const char* what) {
    if (!accept(kind))
      throw ParseError(std::string("expected ") + what, peek().pos);
  }
  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, peek().pos);
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept(TokenKind::Arrow))
      return Formula::implication(std::move(lhs), parse_implies());
    if (accept(TokenKind::StrongArrow))
      return expand(
          Abbreviation::strong_implies(std::move(lhs), parse_implies()));
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept(TokenKind::Pipe))
      lhs = Formula::disjunction(std::move(lhs), parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept(TokenKind::Amp))
      lhs = Formula::conjunction(std::move(lhs), parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    if (accept(TokenKind::Tilde)) return Formula::negation(parse_unary());
    if (peek().kind == TokenKind::Identifier &&
        (peek().text == "forall" || peek().text == "exists")) {
      bool universal = next().text == "forall";
      std::vector<std::string> vars;
      do {
        Token v = next();
        if (v.kind != TokenKind::Identifier)
          throw ParseError("expected a variable name", v.pos);
        if (sig_.declares(v.text) || Signature::is_reserved_word(v.text))
          throw ParseError("'" + v.text + "' cannot be used as a variable",
                           v.pos);
        vars.push_back(v.text);
      } while (accept(TokenKind::Comma));
      expect(TokenKind::Dot, "'.' after quantified variables");
      Formula body = parse_implies();  // scope extends maximally right
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = universal ? Formula::for_all(*it, std::move(body))
                         : Formula::exists(*it, std::move(body));
      return body;
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& tok = peek();
    if (tok.kind == TokenKind::LParen) {
      next();
      Formula inner = parse_implies();
      expect(TokenKind::RParen, "')'");
      return inner;
    }
    if (tok.kind != TokenKind::Identifier) fail("expected a formula");
    if (tok.text == "false") {
      next();
      return Formula::falsum();
    }
    if (tok.text == "true") {
      next();
      return expand(Abbreviation::truth());
    }
    if (tok.text == "des" || tok.text == "cons" || tok.text == "det") {
      std::string op = next().text;
      expect(TokenKind::LParen, "'('");
      Formula inner = parse_implies();
      expect(TokenKind::RParen, "')'");
      if (op == "des") return expand(Abbreviation::des(std::move(inner)));
      if (op == "cons") return expand(Abbreviation::cons(std::move(inner)));
      return expand(Abbreviation::det(std::move(inner)));
    }
    if (tok.text == "def") {
      next();
      expect(TokenKind::LParen, "'('");
      Term inner = parse_term();
      expect(TokenKind::RParen, "')'");
      return expand(Abbreviation::defined(std::move(inner)));
    }
    if (sig_.is_proposition(tok.text)) {
      return Formula::proposition(next().text);
    }
    if (sig_.is_predicate(tok.text)) {
      std::string name = next().text;
      expect(TokenKind::LParen, "'(' after predicate");
      std::vector<Term> args;
      if (peek().kind != TokenKind::RParen) {
        do {
          args.push_back(parse_term());
        } while (accept(TokenKind::Comma));
      }
      expect(TokenKind::RParen, "')'");
      std::size_t arity = sig_.predicate_arity(name);
      if (args.size() != arity)
        throw ParseError("predicate '" + name + "' expects " +
                             std::to_string(arity) + " arguments",
                         tok.pos);
      return Formula::atom(std::move(name), std::move(args));
    }
    // Otherwise this must start an equality between terms.
    Term lhs = parse_term();
    if (accept(TokenKind::Equal))
      return Formula::equality(std::move(lhs), parse_term());
    if (accept(TokenKind::NotEqual))
      return expand(Abbreviation::not_equal(std::move(lhs), parse_term()));
    if (accept(TokenKind::StrongEqual))
      return expand(Abbreviation::strong_equal(std::move(lhs), parse_term()));
    fail("expected '=', '!=' or '==' after term");
  }

  Term parse_term() {
    Token tok = next();
    if (tok.kind != TokenKind::Identifier)
      throw ParseError("expected a term", tok.pos);
    if (Signature::is_reserved_word(tok.text))
      throw ParseError("'" + tok.text + "' cannot appear in a term", tok.pos);
    if (sig_.is_function(tok.text)) {
      expect(TokenKind::LParen, "'(' after function");
      std::vector<Term> args;
      do {
        args.push_back(parse_term());
      } while (accept(TokenKind::Comma));
      expect(TokenKind::RParen, "')'");
      std::size_t arity = sig_.function_arity(tok.text);
      if (args.size() != arity)
        throw ParseError("function '" + tok.text + "' expects " +
                             std::to_string(arity) + " arguments",
                         tok.pos);
      return Term::application(tok.text, std::move(args));
    }
    if (sig_.is_constant(tok.text)) return Term::constant(tok.text);
    if (sig_.is_predicate(tok.text) || sig_.is_proposition(tok.text))
      throw ParseError("'" + tok.text + "' is not a term", tok.pos);
    return Term::variable(tok.text);
  }

  std::vector<Token> tokens_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
  Parser parser(lex(text), sig);
  Formula f = parser.parse_formula_all();
  check_well_formed(f, sig);
  return f;
}

Term parse_term(const std::string& text, const Signature& sig) {
  Parser parser(lex(text), sig);
  Term t = parser.parse_term_all();
  check_well_formed(t, sig);
  return t;
}

// ---------------------------------------------------------------------------
// Printing
//
// Precedence levels: -> 1, | 2, & 3, ~ 4, atoms 5. Quantifiers print at level
// 0 (they swallow everything to their right), so they are parenthesised
// whenever they occur under a connective.

namespace {

int formula_level(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      return 0;
    case Formula::Kind::Implies:
      return 1;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::And:
      return 3;
    case Formula::Kind::Not:
      return 4;
    default:
      return 5;
  }
}

void print_formula_impl(const Formula& f, int min_level, std::string& out) {
  bool parens = formula_level(f) < min_level;
  if (parens) out += '(';
  switch (f.kind) {
    case Formula::Kind::Proposition:
      out += f.name;
      break;
    case Formula::Kind::Atom:
      out += f.name;
      out += '(';
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        if (i) out += ", ";
        out += print_term(f.terms[i]);
      }
      out += ')';
      break;
    case Formula::Kind::Equality:
      out += print_term(f.terms[0]);
      out += " = ";
      out += print_term(f.terms[1]);
      break;
    case Formula::Kind::Falsum:
      out += "false";
      break;
    case Formula::Kind::Not:
      out += '~';
      // An unparenthesised equality after ~ still parses as the negated
      // equality, but spelling the grouping out reads better.
      print_formula_impl(f.subs[0],
                         f.subs[0].kind == Formula::Kind::Equality ? 6 : 4, out);
      break;
    case Formula::Kind::And:
      print_formula_impl(f.subs[0], 3, out);
      out += " & ";
      print_formula_impl(f.subs[1], 4, out);
      break;
    case Formula::Kind::Or:
      print_formula_impl(f.subs[0], 2, out);
      out += " | ";
      print_formula_impl(f.subs[1], 3, out);
      break;
    case Formula::Kind::Implies:
      print_formula_impl(f.subs[0], 2, out);
      out += " -> ";
      print_formula_impl(f.subs[1], 1, out);
      break;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      out += f.kind == Formula::Kind::ForAll ? "forall " : "exists ";
      out += f.name;
      out += ". ";
      print_formula_impl(f.subs[0], 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_term(const Term& t) {
  if (t.kind != Term::Kind::Application) return t.name;
  std::string out = t.name;
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += print_term(t.args[i]);
  }
  out += ')';
  return out;
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_formula_impl(f, 0, out);
  return out;
}

}  // namespace bdl
