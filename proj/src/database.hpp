#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semantics.hpp"
#include "syntax.hpp"

namespace bdl {

inline constexpr const char* kNil = "nil";

// A signature fit for databases: finitely many constants including nil plus
// at least one other, no positive-arity functions, no propositions, finitely
// many positive-arity predicates.
class RelationalLanguage {
 public:
  explicit RelationalLanguage(Signature sig);

  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& constants() const { return sig_.constants(); }
  const std::vector<std::string>& non_nil_constants() const {
    return non_nil_constants_;
  }
  const std::map<std::string, std::size_t>& predicates() const {
    return sig_.predicates();
  }
  // Canonical domain: bottom plus one element per non-nil constant.
  std::size_t domain_size() const { return non_nil_constants_.size() + 1; }
  // nil -> bottom, i-th non-nil constant -> i + 1.
  std::size_t element_of(const std::string& constant) const;
  const std::string& constant_of_element(std::size_t element) const;

 private:
  Signature sig_;
  std::vector<std::string> non_nil_constants_;
};

// A ground atom over constants.
struct Fact {
  std::string predicate;
  std::vector<std::string> args;

  Formula to_formula() const;
};

int compare(const Fact& a, const Fact& b);
bool operator==(const Fact& a, const Fact& b);
bool operator<(const Fact& a, const Fact& b);
std::string print_fact(const Fact& f);

// Sorted, duplicate-free.
using FactBase = std::vector<Fact>;

FactBase normalize_base(FactBase base);
void check_well_formed(const Fact& f, const RelationalLanguage& lang);

struct Query {
  std::string name;
  std::vector<std::string> head;  // distinct variables
  Formula body;
};

struct Limits {
  std::uint64_t max_structures = 10'000'000;  // generic model enumeration
  std::uint32_t max_basis = 20;               // 2^max_basis canonical models
  std::uint32_t max_additions = 1;            // repair search addition budget
  std::uint64_t max_value_combinations = 200'000;  // mixed-polarity fallback
};

struct Database {
  RelationalLanguage lang;
  FactBase basis;
  std::vector<Formula> constraints;
  std::map<std::string, Query> queries;
  Limits limits;
};

// ---------------------------------------------------------------------------
// Axioms and theories. All formulas are fully expanded (no abbreviation
// nodes) and built in a fixed order, so set inclusion is a structural check.

Formula nil_indeterminacy_axiom(const RelationalLanguage& lang);
Formula equality_seminormality_axiom(const RelationalLanguage& lang);
Formula domain_closure_axiom(const RelationalLanguage& lang);
// One formula per unordered pair of distinct non-nil constants. Pairs with
// nil are omitted: ~(c == nil) takes the value n in every structure whose
// equality meets the bottom conditions, so including them would leave the
// axiom set without models.
std::vector<Formula> unique_name_axioms(const RelationalLanguage& lang);
Formula determinacy_axiom(const RelationalLanguage& lang, const std::string& pred);
std::vector<Formula> rsa(const RelationalLanguage& lang);

Formula completion_axiom(const RelationalLanguage& lang, const FactBase& base,
                         const std::string& pred);
std::vector<Formula> relational_theory(const RelationalLanguage& lang,
                                       const FactBase& base);

// ---------------------------------------------------------------------------
// Canonical models. The models of a relational theory are exactly the
// structures with the canonical domain, nil at bottom, classical equality off
// the bottom, listed facts valued t or b, and everything else f.

// mask bit i chooses Both (set) or True (clear) for the i-th fact.
Structure canonical_structure(const RelationalLanguage& lang, const FactBase& base,
                              std::uint64_t both_mask);

// Entailment from the relational theory with the given basis, decided over
// the 2^|base| canonical models.
bool theory_entails(const RelationalLanguage& lang, const FactBase& base,
                    const Formula& a, const Limits& limits = {});

// ---------------------------------------------------------------------------
// Generic enumeration of all models of RSA(R): one structure per choice of
// predicate tables over {t, f, b}.

std::uint64_t count_rsa_models(const RelationalLanguage& lang);
std::vector<Structure> enumerate_rsa_models(const RelationalLanguage& lang,
                                            const Limits& limits = {});
// Streaming variant; stops early when the callback returns false.
void for_each_rsa_model(const RelationalLanguage& lang, const Limits& limits,
                        const std::function<bool(const Structure&)>& fn);

// Requires rsa(lang) to be included in gamma (structural check). Decides
// entailment over all RSA models.
bool entails_rsa(const RelationalLanguage& lang, std::span<const Formula> gamma,
                 const Formula& a, const Limits& limits = {});

// ---------------------------------------------------------------------------
// The collapse of b to t on predicate values, and isomorphism of relational
// structures along the constant-naming bijection.

Structure nabla(const Structure& s);
bool models_isomorphic(const RelationalLanguage& lang, const Structure& s1,
                       const Structure& s2);

// ---------------------------------------------------------------------------
// Constraint compliance. Constraints are checked against the occurrence-null
// canonical structure of a base: every nil occurrence stored in a fact is a
// distinct null element that is identical to itself but indeterminate
// against everything else, and a term-definedness test on a null is false.
// Two stored nulls therefore compare n under = and t under the expanded ==.

class MarkedStructure {
 public:
  MarkedStructure(const RelationalLanguage& lang, const FactBase& base);

  // A domain element in base-independent terms, so a violating assignment
  // found in one base can be re-examined in an extended base.
  struct ElementRef {
    enum class Kind { Determinate, OccurrenceNull, NilMention };
    Kind kind = Kind::NilMention;
    std::string constant;  // Determinate
    Fact fact;             // OccurrenceNull
    std::size_t position = 0;
  };

  // A failed constraint together with the assignment that undercuts it.
  struct Witness {
    std::size_t constraint_index = 0;
    std::size_t peeled = 0;  // universal-prefix variables peeled off
    std::vector<std::pair<std::string, ElementRef>> binding;
  };

  std::size_t domain_size() const { return domain_size_; }
  bool is_nullish(std::size_t element) const { return element >= first_null_; }

  TruthValue eval(const Assignment& alpha, const Formula& f) const;
  // Designated under every assignment of the formula's free variables.
  bool holds(const Formula& f, Witness* witness = nullptr) const;
  bool satisfies(std::span<const Formula> constraints,
                 Witness* witness = nullptr) const;
  // Re-evaluates the witnessed constraint instance in this structure; true
  // when it is designated here (or the witness does not resolve).
  bool witness_designated(std::span<const Formula> constraints,
                          const Witness& w) const;

 private:
  std::size_t eval_term(const Assignment& alpha, const Term& t) const;
  TruthValue equality(std::size_t e1, std::size_t e2) const;
  ElementRef element_ref(std::size_t element) const;
  std::optional<std::size_t> resolve(const ElementRef& ref) const;

  const RelationalLanguage& lang_;
  std::size_t first_null_;    // elements below are determinate constants
  std::size_t nil_mention_;   // denotation of the constant nil itself
  std::size_t domain_size_;
  std::map<std::string, std::vector<std::vector<std::size_t>>> fact_tuples_;
  std::vector<std::pair<Fact, std::size_t>> null_origin_;
  std::map<Fact, std::vector<std::size_t>> tuple_of_fact_;
};

bool base_satisfies_constraints(const RelationalLanguage& lang,
                                const FactBase& base,
                                std::span<const Formula> constraints);

struct ConsistencyReport {
  bool consistent = true;
  // A size-minimal subset of the basis whose facts jointly violate the
  // constraints; empty when the constraints demand additions instead.
  FactBase conflict;
  bool needs_additions = false;
  // True when no canonical model of the theory satisfies the constraints, in
  // which case a purely proof-theoretic consistency check would be vacuous.
  bool constraints_unsatisfiable_with_theory = false;
};

bool is_consistent_db(const Database& db, ConsistencyReport* report = nullptr);

// ---------------------------------------------------------------------------
// Database files.

Database parse_database_text(const std::string& text);
Database load_database_file(const std::string& path);
// "name(x1,...,xn) :- <formula>", as written after the `query` keyword.
Query parse_query_declaration(const Signature& sig, const std::string& text);

}  // namespace bdl
