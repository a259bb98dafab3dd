#pragma once

#include <span>
#include <string>
#include <vector>

#include "database.hpp"

namespace bdl {

using AnswerTuple = std::vector<std::string>;

bool is_applicable(const Query& q, const Database& db);

// All tuples whose instantiated body is entailed by the relational theory.
std::vector<AnswerTuple> answers(const Database& db, const Query& q);

// Entailment of `instance` over every RSA structure that designates the
// support: the kept facts valued t/b, atoms outside the basis valued so their
// negations hold (f/b), everything else free. Decided by polarity analysis
// with exact enumeration of mixed-polarity cells.
bool support_entails(const RelationalLanguage& lang, const FactBase& basis,
                     const std::vector<bool>& kept, const Formula& instance,
                     const Limits& limits = {});

// Tuples entailed from some constraint-compliant sub-base together with the
// theory-derivable negated facts.
std::vector<AnswerTuple> consistent_answers(const Database& db, const Query& q);

// The semi-atomic facts that are theory-derivable and take part in no minimal
// constraint conflict: the basis facts outside every minimal conflicting
// subset, plus the negations of all atoms outside the basis.
std::vector<Formula> consistent_core(const Database& db);
// Minimal conflicting subsets of the basis (non-compliant sets all of whose
// immediate subsets comply).
std::vector<FactBase> minimal_conflicts(const Database& db);

// Symmetric-difference order: lambda1 differs from lambda no more than
// lambda2 does.
bool leq_lambda(const FactBase& lambda, const FactBase& lambda1,
                const FactBase& lambda2);

bool consistent_with(const RelationalLanguage& lang, const FactBase& base,
                     std::span<const Formula> constraints);

struct RepairResult {
  std::vector<FactBase> repairs;
  // True when the addition budget did not cover the whole atom universe, so
  // repairs requiring more additions than the budget would have been missed.
  bool additions_capped = false;
};

// The bases consistent with the constraints whose symmetric difference with
// the basis is inclusion-minimal, searched over all deletions and up to
// `limits.max_additions` added atoms.
RepairResult repairs(const Database& db);

struct StrongAnswerResult {
  std::vector<AnswerTuple> tuples;
  bool vacuous = false;  // no repairs exist; every tuple qualifies vacuously
  bool additions_capped = false;
};

StrongAnswerResult strongly_consistent_answers(const Database& db, const Query& q);

std::string print_answer_tuple(const AnswerTuple& t);

}  // namespace bdl
