#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdl {

// Reported for malformed input text. `position` is a 0-based byte offset.
struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& message, std::size_t pos)
      : std::runtime_error(message), position(pos) {}
};

// Reported for structurally invalid values (bad signatures, arity clashes,
// undeclared symbols, violated structure invariants).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reported when an enumeration would exceed a configured ceiling.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-logical vocabulary. Identifiers not declared here parse as variables.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> constants,
            std::map<std::string, std::size_t> functions,
            std::map<std::string, std::size_t> predicates,
            std::set<std::string> propositions);

  const std::vector<std::string>& constants() const { return constants_; }
  const std::map<std::string, std::size_t>& functions() const { return functions_; }
  const std::map<std::string, std::size_t>& predicates() const { return predicates_; }
  const std::set<std::string>& propositions() const { return propositions_; }

  bool is_constant(const std::string& name) const;
  bool is_function(const std::string& name) const;
  bool is_predicate(const std::string& name) const;
  bool is_proposition(const std::string& name) const;
  bool declares(const std::string& name) const;
  std::size_t function_arity(const std::string& name) const;
  std::size_t predicate_arity(const std::string& name) const;
  // Position of a constant in declaration order.
  std::size_t constant_index(const std::string& name) const;

  static bool is_reserved_word(const std::string& name);
  static bool is_valid_identifier(const std::string& name);

 private:
  std::vector<std::string> constants_;
  std::map<std::string, std::size_t> functions_;
  std::map<std::string, std::size_t> predicates_;
  std::set<std::string> propositions_;
};

struct Term {
  enum class Kind { Variable, Constant, Application };

  Kind kind = Kind::Variable;
  std::string name;
  std::vector<Term> args;  // non-empty only for Application

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term application(std::string name, std::vector<Term> args);
};

int compare(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
bool operator!=(const Term& a, const Term& b);
bool operator<(const Term& a, const Term& b);

struct Formula {
  enum class Kind {
    Proposition,
    Atom,
    Equality,
    Falsum,
    Not,
    And,
    Or,
    Implies,
    ForAll,
    Exists,
  };

  Kind kind = Kind::Falsum;
  std::string name;         // proposition/predicate name, or the bound variable
  std::vector<Term> terms;  // atom arguments, or the two equality sides
  std::vector<Formula> subs;

  static Formula proposition(std::string name);
  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula equality(Term lhs, Term rhs);
  static Formula falsum();
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula for_all(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  bool is_quantifier() const { return kind == Kind::ForAll || kind == Kind::Exists; }
  // Atomic per the formation rules: proposition, predicate atom, or equality.
  bool is_atomic() const;
  // Atomic or the negation of an atomic formula.
  bool is_literal() const;
};

int compare(const Formula& a, const Formula& b);
bool operator==(const Formula& a, const Formula& b);
bool operator!=(const Formula& a, const Formula& b);
bool operator<(const Formula& a, const Formula& b);

// Surface abbreviations. These never appear inside a Formula; the parser and
// the axiom builders expand them eagerly.
struct Abbreviation {
  enum class Kind {
    NotEqual,       // t1 != t2
    Truth,          // true
    StrongImplies,  // A1 => A2
    Des,            // des(A)
    Cons,           // cons(A)
    Det,            // det(A)
    Defined,        // def(t)
    StrongEqual,    // t1 == t2
  };

  Kind kind;
  std::vector<Term> terms;
  std::vector<Formula> formulas;

  static Abbreviation not_equal(Term t1, Term t2);
  static Abbreviation truth();
  static Abbreviation strong_implies(Formula a1, Formula a2);
  static Abbreviation des(Formula a);
  static Abbreviation cons(Formula a);
  static Abbreviation det(Formula a);
  static Abbreviation defined(Term t);
  static Abbreviation strong_equal(Term t1, Term t2);
};

Formula expand(const Abbreviation& a);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
// Every identifier occurring anywhere (free, bound, constants, symbols).
void collect_names(const Term& t, std::set<std::string>& out);
void collect_names(const Formula& f, std::set<std::string>& out);

// base1, base2, ... — first candidate not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Capture-avoiding substitution of `t` for free occurrences of `x`.
Term substitute(const std::string& x, const Term& t, const Term& e);
Formula substitute(const std::string& x, const Term& t, const Formula& e);

// Structural equality up to renaming of bound variables.
bool alpha_equal(const Formula& a, const Formula& b);

// Checks that every symbol used is declared with the right arity and that no
// variable name collides with a declared symbol. Throws ValidationError.
void check_well_formed(const Term& t, const Signature& sig);
void check_well_formed(const Formula& f, const Signature& sig);

Formula parse_formula(const std::string& text, const Signature& sig);
Term parse_term(const std::string& text, const Signature& sig);

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);

}  // namespace bdl
