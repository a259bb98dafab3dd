#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syntax.hpp"

namespace bdl {

// A sequent over finite formula sets. Both sides are kept sorted and
// duplicate-free, so "Gamma, A" notation collapses the way set union does.
struct Sequent {
  std::vector<Formula> left;
  std::vector<Formula> right;

  static Sequent make(std::vector<Formula> left, std::vector<Formula> right);
};

bool operator==(const Sequent& a, const Sequent& b);
std::string print_sequent(const Sequent& s);

enum class RuleName {
  Id,
  Cut,
  FalsumL,
  AndL,
  AndR,
  OrL,
  OrR,
  ImpL,
  ImpR,
  AllL,
  AllR,
  ExL,
  ExR,
  NotFalsumR,
  NotNotL,
  NotNotR,
  NotAndL,
  NotAndR,
  NotOrL,
  NotOrR,
  NotImpL,
  NotImpR,
  NotAllL,
  NotAllR,
  NotExL,
  NotExR,
  EqRefl,
  EqRepl,
  DeltaEqL,
  DeltaEqR,
  NotL,
  NotR,
};

const char* rule_name_string(RuleName rule);
std::optional<RuleName> rule_name_from_string(const std::string& s);

// An instance carries the witnesses that pin the schema down: principal
// formula pieces, substituted terms, and bound/eigen variables. Checking is
// then a deterministic syntactic comparison.
struct RuleInstance {
  RuleName rule = RuleName::Id;
  std::optional<Formula> a;   // principal formula (or body under a quantifier)
  std::optional<Formula> a1;  // left piece of a binary principal formula
  std::optional<Formula> a2;  // right piece
  std::optional<Term> t;      // substituted term
  std::optional<Term> t1;
  std::optional<Term> t2;
  std::optional<std::string> x;  // bound variable
  std::optional<std::string> y;  // eigenvariable
};

enum class RuleSystem {
  BD,    // Table rules with =-Refl
  PBD,   // =-Refl replaced by the two delta equality rules
  FOCL,  // BD plus not-L and not-R
  LPish, // BD plus not-R
  K3ish, // BD plus not-L
};

const char* rule_system_string(RuleSystem system);
std::optional<RuleSystem> rule_system_from_string(const std::string& s);
bool system_admits(RuleSystem system, RuleName rule);

// True iff premises/conclusion form a legal instance of the rule in the given
// system, including the literal and eigenvariable side conditions. On failure
// `why`, when non-null, receives a reason.
bool check_rule(RuleSystem system, const RuleInstance& inst,
                std::span<const Sequent> premises, const Sequent& conclusion,
                std::string* why = nullptr);

struct Derivation {
  struct Step {
    Sequent sequent;
    bool is_hypothesis = false;
    RuleInstance rule;
    std::vector<std::size_t> premises;  // 0-based indices of earlier steps
  };
  std::vector<Step> steps;
};

struct CheckResult {
  bool ok = true;
  std::size_t failed_step = 0;  // 1-based index of the first failing step
  std::string reason;
};

CheckResult check_derivation(RuleSystem system, const Derivation& d,
                             std::span<const Sequent> hypotheses);

// True iff d is a valid proof (no hypotheses) of some sequent
// Gamma' |- Delta' with Gamma' a subset of gamma and Delta' a subset of delta.
CheckResult derives(RuleSystem system, std::span<const Formula> gamma,
                    std::span<const Formula> delta, const Derivation& d);

// A proof file: signature declarations (const/pred/prop lines) followed by
// numbered steps. Hypothesis steps double as the hypothesis set.
struct ProofFile {
  Signature signature;
  Derivation derivation;
  std::vector<Sequent> hypotheses;
};

ProofFile parse_proof_file(const std::string& text);

}  // namespace bdl
