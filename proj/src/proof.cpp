#include "proof.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bdl {

namespace {

using FormulaSet = std::vector<Formula>;  // sorted, duplicate-free

FormulaSet normalize(std::vector<Formula> formulas) {
  std::sort(formulas.begin(), formulas.end());
  formulas.erase(std::unique(formulas.begin(), formulas.end()), formulas.end());
  return formulas;
}

bool set_contains(const FormulaSet& s, const Formula& f) {
  return std::binary_search(s.begin(), s.end(), f);
}

FormulaSet set_minus(FormulaSet s, const Formula& f) {
  auto range = std::equal_range(s.begin(), s.end(), f);
  s.erase(range.first, range.second);
  return s;
}

FormulaSet set_union(FormulaSet a, const FormulaSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  return normalize(std::move(a));
}

FormulaSet set_add(const FormulaSet& a, std::initializer_list<Formula> extra) {
  FormulaSet out = a;
  out.insert(out.end(), extra.begin(), extra.end());
  return normalize(std::move(out));
}

// actual == base ∪ {added}, matching `added` up to bound-variable renaming.
bool matches_with_added(const FormulaSet& actual, const FormulaSet& base,
                        const Formula& added) {
  if (actual == set_add(base, {added})) return true;
  for (const Formula& x : actual) {
    if (alpha_equal(x, added) && actual == set_add(base, {x})) return true;
  }
  return false;
}

bool var_free_in(const std::string& var, const FormulaSet& set) {
  for (const Formula& f : set)
    if (free_vars(f).count(var)) return true;
  return false;
}

}  // namespace

Sequent Sequent::make(std::vector<Formula> left, std::vector<Formula> right) {
  return Sequent{normalize(std::move(left)), normalize(std::move(right))};
}

bool operator==(const Sequent& a, const Sequent& b) {
  return a.left == b.left && a.right == b.right;
}

std::string print_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.left.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(s.left[i]);
  }
  out += out.empty() ? "|-" : " |-";
  for (std::size_t i = 0; i < s.right.size(); ++i) {
    out += i ? ", " : " ";
    out += print_formula(s.right[i]);
  }
  return out;
}

namespace {

struct RuleNameEntry {
  RuleName rule;
  const char* name;
};

constexpr RuleNameEntry kRuleNames[] = {
    {RuleName::Id, "id"},           {RuleName::Cut, "cut"},
    {RuleName::FalsumL, "f-l"},     {RuleName::AndL, "and-l"},
    {RuleName::AndR, "and-r"},      {RuleName::OrL, "or-l"},
    {RuleName::OrR, "or-r"},        {RuleName::ImpL, "imp-l"},
    {RuleName::ImpR, "imp-r"},      {RuleName::AllL, "all-l"},
    {RuleName::AllR, "all-r"},      {RuleName::ExL, "ex-l"},
    {RuleName::ExR, "ex-r"},        {RuleName::NotFalsumR, "notf-r"},
    {RuleName::NotNotL, "notnot-l"},{RuleName::NotNotR, "notnot-r"},
    {RuleName::NotAndL, "notand-l"},{RuleName::NotAndR, "notand-r"},
    {RuleName::NotOrL, "notor-l"},  {RuleName::NotOrR, "notor-r"},
    {RuleName::NotImpL, "notimp-l"},{RuleName::NotImpR, "notimp-r"},
    {RuleName::NotAllL, "notall-l"},{RuleName::NotAllR, "notall-r"},
    {RuleName::NotExL, "notex-l"},  {RuleName::NotExR, "notex-r"},
    {RuleName::EqRefl, "eq-refl"},  {RuleName::EqRepl, "eq-repl"},
    {RuleName::DeltaEqL, "deq-l"},  {RuleName::DeltaEqR, "deq-r"},
    {RuleName::NotL, "not-l"},      {RuleName::NotR, "not-r"},
};

}  // namespace

const char* rule_name_string(RuleName rule) {
  for (const auto& entry : kRuleNames)
    if (entry.rule == rule) return entry.name;
  return "?";
}

std::optional<RuleName> rule_name_from_string(const std::string& s) {
  for (const auto& entry : kRuleNames)
    if (s == entry.name) return entry.rule;
  return std::nullopt;
}

const char* rule_system_string(RuleSystem system) {
  switch (system) {
    case RuleSystem::BD:
      return "bd";
    case RuleSystem::PBD:
      return "pbd";
    case RuleSystem::FOCL:
      return "focl";
    case RuleSystem::LPish:
      return "lp";
    case RuleSystem::K3ish:
      return "k3";
  }
  return "?";
}

std::optional<RuleSystem> rule_system_from_string(const std::string& s) {
  if (s == "bd") return RuleSystem::BD;
  if (s == "pbd") return RuleSystem::PBD;
  if (s == "focl") return RuleSystem::FOCL;
  if (s == "lp") return RuleSystem::LPish;
  if (s == "k3") return RuleSystem::K3ish;
  return std::nullopt;
}

bool system_admits(RuleSystem system, RuleName rule) {
  switch (rule) {
    case RuleName::EqRefl:
      return system != RuleSystem::PBD;
    case RuleName::DeltaEqL:
    case RuleName::DeltaEqR:
      return system == RuleSystem::PBD;
    case RuleName::NotL:
      return system == RuleSystem::FOCL || system == RuleSystem::K3ish;
    case RuleName::NotR:
      return system == RuleSystem::FOCL || system == RuleSystem::LPish;
    default:
      return true;
  }
}

namespace {

struct RuleChecker {
  const RuleInstance& inst;
  std::span<const Sequent> premises;
  const Sequent& conclusion;
  std::string* why;

  bool fail(const std::string& reason) const {
    if (why) *why = reason;
    return false;
  }

  bool need_premises(std::size_t n) const {
    return premises.size() == n;
  }

  const Formula& witness_a() const { return *inst.a; }

  bool have(const std::optional<Formula>& f) const { return f.has_value(); }

  // Context candidates for a principal formula on one side: the side minus
  // the principal, and the side itself (the principal may also occur in the
  // untouched context, since sequents are sets).
  std::vector<FormulaSet> contexts(const FormulaSet& side,
                                   const Formula& principal) const {
    std::vector<FormulaSet> out;
    out.push_back(set_minus(side, principal));
    out.push_back(side);
    return out;
  }

  bool check() {
    switch (inst.rule) {
      case RuleName::Id: {
        if (!inst.a) return fail("id needs witness A");
        if (!need_premises(0)) return fail("id takes no premises");
        if (!inst.a->is_literal()) return fail("id: A must be a literal");
        if (!set_contains(conclusion.left, *inst.a) ||
            !set_contains(conclusion.right, *inst.a))
          return fail("id: A must occur on both sides");
        return true;
      }
      case RuleName::Cut: {
        if (!inst.a) return fail("cut needs witness A");
        if (!need_premises(2)) return fail("cut takes two premises");
        const Sequent& p1 = premises[0];
        const Sequent& p2 = premises[1];
        if (!set_contains(p1.right, *inst.a))
          return fail("cut: first premise must contain A on the right");
        if (!set_contains(p2.left, *inst.a))
          return fail("cut: second premise must contain A on the left");
        for (const FormulaSet& delta : contexts(p1.right, *inst.a)) {
          for (const FormulaSet& gamma2 : contexts(p2.left, *inst.a)) {
            if (conclusion.left == set_union(p1.left, gamma2) &&
                conclusion.right == set_union(delta, p2.right))
              return true;
          }
        }
        return fail("cut: conclusion does not combine the premises");
      }
      case RuleName::FalsumL: {
        if (!need_premises(0)) return fail("f-l takes no premises");
        if (!set_contains(conclusion.left, Formula::falsum()))
          return fail("f-l: falsum must occur on the left");
        return true;
      }
      case RuleName::AndL:
        return left_rule_two_pieces(Formula::Kind::And, /*premise_adds=*/
                                    [](const Formula& a1, const Formula& a2) {
                                      return std::vector<Formula>{a1, a2};
                                    });
      case RuleName::OrR:
        return right_rule_two_pieces(Formula::Kind::Or,
                                     [](const Formula& a1, const Formula& a2) {
                                       return std::vector<Formula>{a1, a2};
                                     });
      case RuleName::NotOrL:
        return left_rule_two_pieces(
            Formula::Kind::Or,
            [](const Formula& a1, const Formula& a2) {
              return std::vector<Formula>{Formula::negation(a1),
                                          Formula::negation(a2)};
            },
            /*negated_principal=*/true);
      case RuleName::NotAndR:
        return right_rule_two_pieces(
            Formula::Kind::And,
            [](const Formula& a1, const Formula& a2) {
              return std::vector<Formula>{Formula::negation(a1),
                                          Formula::negation(a2)};
            },
            /*negated_principal=*/true);
      case RuleName::NotImpL:
        return left_rule_two_pieces(
            Formula::Kind::Implies,
            [](const Formula& a1, const Formula& a2) {
              return std::vector<Formula>{a1, Formula::negation(a2)};
            },
            /*negated_principal=*/true);
      case RuleName::AndR: {
        return branching_right(Formula::Kind::And, false,
                               [](const Formula& a) { return a; });
      }
      case RuleName::NotOrR: {
        return branching_right(Formula::Kind::Or, true, [](const Formula& a) {
          return Formula::negation(a);
        });
      }
      case RuleName::OrL: {
        return branching_left(Formula::Kind::Or, false,
                              [](const Formula& a) { return a; });
      }
      case RuleName::NotAndL: {
        return branching_left(Formula::Kind::And, true, [](const Formula& a) {
          return Formula::negation(a);
        });
      }
      case RuleName::ImpL: {
        if (!inst.a1 || !inst.a2) return fail("imp-l needs witnesses A1, A2");
        if (!need_premises(2)) return fail("imp-l takes two premises");
        Formula principal = Formula::implication(*inst.a1, *inst.a2);
        if (!set_contains(conclusion.left, principal))
          return fail("imp-l: principal formula not on the left");
        for (const FormulaSet& gamma : contexts(conclusion.left, principal)) {
          Sequent p1{gamma, set_add(conclusion.right, {*inst.a1})};
          Sequent p2{set_add(gamma, {*inst.a2}), conclusion.right};
          if (premises[0] == p1 && premises[1] == p2) return true;
        }
        return fail("imp-l: premises do not match the schema");
      }
      case RuleName::ImpR: {
        if (!inst.a1 || !inst.a2) return fail("imp-r needs witnesses A1, A2");
        if (!need_premises(1)) return fail("imp-r takes one premise");
        Formula principal = Formula::implication(*inst.a1, *inst.a2);
        if (!set_contains(conclusion.right, principal))
          return fail("imp-r: principal formula not on the right");
        for (const FormulaSet& delta : contexts(conclusion.right, principal)) {
          Sequent p{set_add(conclusion.left, {*inst.a1}),
                    set_add(delta, {*inst.a2})};
          if (premises[0] == p) return true;
        }
        return fail("imp-r: premise does not match the schema");
      }
      case RuleName::NotImpR: {
        if (!inst.a1 || !inst.a2) return fail("notimp-r needs witnesses A1, A2");
        if (!need_premises(2)) return fail("notimp-r takes two premises");
        Formula principal =
            Formula::negation(Formula::implication(*inst.a1, *inst.a2));
        if (!set_contains(conclusion.right, principal))
          return fail("notimp-r: principal formula not on the right");
        for (const FormulaSet& delta : contexts(conclusion.right, principal)) {
          Sequent p1{conclusion.left, set_add(delta, {*inst.a1})};
          Sequent p2{conclusion.left,
                     set_add(delta, {Formula::negation(*inst.a2)})};
          if (premises[0] == p1 && premises[1] == p2) return true;
        }
        return fail("notimp-r: premises do not match the schema");
      }
      case RuleName::NotNotL: {
        if (!inst.a) return fail("notnot-l needs witness A");
        Formula principal = Formula::negation(Formula::negation(*inst.a));
        return unary_left(principal, {*inst.a}, "notnot-l");
      }
      case RuleName::NotNotR: {
        if (!inst.a) return fail("notnot-r needs witness A");
        Formula principal = Formula::negation(Formula::negation(*inst.a));
        return unary_right(principal, {*inst.a}, "notnot-r");
      }
      case RuleName::NotFalsumR: {
        if (!need_premises(0)) return fail("notf-r takes no premises");
        if (!set_contains(conclusion.right,
                          Formula::negation(Formula::falsum())))
          return fail("notf-r: ~false must occur on the right");
        return true;
      }
      case RuleName::AllL: {
        if (!inst.a || !inst.x || !inst.t)
          return fail("all-l needs witnesses A, x, t");
        Formula principal = Formula::for_all(*inst.x, *inst.a);
        Formula instance = substitute(*inst.x, *inst.t, *inst.a);
        return unary_left_subst(principal, instance, "all-l");
      }
      case RuleName::ExR: {
        if (!inst.a || !inst.x || !inst.t)
          return fail("ex-r needs witnesses A, x, t");
        Formula principal = Formula::exists(*inst.x, *inst.a);
        Formula instance = substitute(*inst.x, *inst.t, *inst.a);
        return unary_right_subst(principal, instance, "ex-r");
      }
      case RuleName::NotAllR: {
        if (!inst.a || !inst.x || !inst.t)
          return fail("notall-r needs witnesses A, x, t");
        Formula principal = Formula::negation(Formula::for_all(*inst.x, *inst.a));
        Formula instance =
            Formula::negation(substitute(*inst.x, *inst.t, *inst.a));
        return unary_right_subst(principal, instance, "notall-r");
      }
      case RuleName::NotExL: {
        if (!inst.a || !inst.x || !inst.t)
          return fail("notex-l needs witnesses A, x, t");
        Formula principal = Formula::negation(Formula::exists(*inst.x, *inst.a));
        Formula instance =
            Formula::negation(substitute(*inst.x, *inst.t, *inst.a));
        return unary_left_subst(principal, instance, "notex-l");
      }
      case RuleName::AllR: {
        if (!inst.a || !inst.x || !inst.y)
          return fail("all-r needs witnesses A, x, y");
        Formula principal = Formula::for_all(*inst.x, *inst.a);
        Formula instance = substitute(*inst.x, Term::variable(*inst.y), *inst.a);
        return eigen_right(principal, instance, "all-r");
      }
      case RuleName::NotExR: {
        if (!inst.a || !inst.x || !inst.y)
          return fail("notex-r needs witnesses A, x, y");
        Formula principal = Formula::negation(Formula::exists(*inst.x, *inst.a));
        Formula instance = Formula::negation(
            substitute(*inst.x, Term::variable(*inst.y), *inst.a));
        return eigen_right(principal, instance, "notex-r");
      }
      case RuleName::ExL: {
        if (!inst.a || !inst.x || !inst.y)
          return fail("ex-l needs witnesses A, x, y");
        Formula principal = Formula::exists(*inst.x, *inst.a);
        Formula instance = substitute(*inst.x, Term::variable(*inst.y), *inst.a);
        return eigen_left(principal, instance, "ex-l");
      }
      case RuleName::NotAllL: {
        if (!inst.a || !inst.x || !inst.y)
          return fail("notall-l needs witnesses A, x, y");
        Formula principal = Formula::negation(Formula::for_all(*inst.x, *inst.a));
        Formula instance = Formula::negation(
            substitute(*inst.x, Term::variable(*inst.y), *inst.a));
        return eigen_left(principal, instance, "notall-l");
      }
      case RuleName::EqRefl: {
        if (!inst.t) return fail("eq-refl needs witness t");
        if (!need_premises(1)) return fail("eq-refl takes one premise");
        Formula refl = Formula::equality(*inst.t, *inst.t);
        Sequent p{set_add(conclusion.left, {refl}), conclusion.right};
        if (premises[0] == p) return true;
        return fail("eq-refl: premise must add t = t on the left");
      }
      case RuleName::EqRepl: {
        if (!inst.a || !inst.x || !inst.t1 || !inst.t2)
          return fail("eq-repl needs witnesses A, x, t1, t2");
        if (!need_premises(1)) return fail("eq-repl takes one premise");
        if (!inst.a->is_literal()) return fail("eq-repl: A must be a literal");
        Formula eq = Formula::equality(*inst.t1, *inst.t2);
        Formula with_t2 = substitute(*inst.x, *inst.t2, *inst.a);
        Formula with_t1 = substitute(*inst.x, *inst.t1, *inst.a);
        if (!set_contains(conclusion.left, eq))
          return fail("eq-repl: t1 = t2 must occur on the left");
        if (!set_contains(conclusion.left, with_t2))
          return fail("eq-repl: [x:=t2]A must occur on the left");
        for (const FormulaSet& g1 : contexts(conclusion.left, eq)) {
          for (const FormulaSet& gamma : contexts(g1, with_t2)) {
            if (matches_with_added(premises[0].left, gamma, with_t1) &&
                premises[0].right == conclusion.right)
              return true;
          }
        }
        return fail("eq-repl: premise does not match the schema");
      }
      case RuleName::DeltaEqL:
      case RuleName::DeltaEqR: {
        if (!inst.t1 || !inst.t2)
          return fail("delta equality rules need witnesses t1, t2");
        if (!need_premises(1)) return fail("delta equality rules take one premise");
        Formula eq12 = Formula::equality(*inst.t1, *inst.t2);
        Formula principal = Formula::disjunction(
            eq12, Formula::negation(eq12));
        Formula reflexive = Formula::conjunction(
            Formula::equality(*inst.t1, *inst.t1),
            Formula::equality(*inst.t2, *inst.t2));
        if (inst.rule == RuleName::DeltaEqL)
          return unary_left(principal, {reflexive}, "deq-l");
        return unary_right(principal, {reflexive}, "deq-r");
      }
      case RuleName::NotL: {
        if (!inst.a) return fail("not-l needs witness A");
        if (!need_premises(1)) return fail("not-l takes one premise");
        Formula principal = Formula::negation(*inst.a);
        if (!set_contains(conclusion.left, principal))
          return fail("not-l: principal formula not on the left");
        for (const FormulaSet& gamma : contexts(conclusion.left, principal)) {
          Sequent p{gamma, set_add(conclusion.right, {*inst.a})};
          if (premises[0] == p) return true;
        }
        return fail("not-l: premise does not match the schema");
      }
      case RuleName::NotR: {
        if (!inst.a) return fail("not-r needs witness A");
        if (!need_premises(1)) return fail("not-r takes one premise");
        Formula principal = Formula::negation(*inst.a);
        if (!set_contains(conclusion.right, principal))
          return fail("not-r: principal formula not on the right");
        for (const FormulaSet& delta : contexts(conclusion.right, principal)) {
          Sequent p{set_add(conclusion.left, {*inst.a}), delta};
          if (premises[0] == p) return true;
        }
        return fail("not-r: premise does not match the schema");
      }
    }
    return fail("unknown rule");
  }

  // One-premise left rule: principal replaced by `adds` in the premise.
  bool unary_left(const Formula& principal, std::vector<Formula> adds,
                  const char* name) {
    if (!need_premises(1)) return fail(std::string(name) + " takes one premise");
    if (!set_contains(conclusion.left, principal))
      return fail(std::string(name) + ": principal formula not on the left");
    for (const FormulaSet& gamma : contexts(conclusion.left, principal)) {
      Sequent p{set_union(gamma, normalize(adds)), conclusion.right};
      if (premises[0] == p) return true;
    }
    return fail(std::string(name) + ": premise does not match the schema");
  }

  bool unary_right(const Formula& principal, std::vector<Formula> adds,
                   const char* name) {
    if (!need_premises(1)) return fail(std::string(name) + " takes one premise");
    if (!set_contains(conclusion.right, principal))
      return fail(std::string(name) + ": principal formula not on the right");
    for (const FormulaSet& delta : contexts(conclusion.right, principal)) {
      Sequent p{conclusion.left, set_union(delta, normalize(adds))};
      if (premises[0] == p) return true;
    }
    return fail(std::string(name) + ": premise does not match the schema");
  }

  // Like unary_left, but the added formula is a computed substitution
  // instance, matched up to bound-variable renaming.
  bool unary_left_subst(const Formula& principal, const Formula& instance,
                        const char* name) {
    if (!need_premises(1)) return fail(std::string(name) + " takes one premise");
    if (!set_contains(conclusion.left, principal))
      return fail(std::string(name) + ": principal formula not on the left");
    if (premises[0].right != conclusion.right)
      return fail(std::string(name) + ": premise right side must be unchanged");
    for (const FormulaSet& gamma : contexts(conclusion.left, principal)) {
      if (matches_with_added(premises[0].left, gamma, instance)) return true;
    }
    return fail(std::string(name) + ": premise does not match the schema");
  }

  bool unary_right_subst(const Formula& principal, const Formula& instance,
                         const char* name) {
    if (!need_premises(1)) return fail(std::string(name) + " takes one premise");
    if (!set_contains(conclusion.right, principal))
      return fail(std::string(name) + ": principal formula not on the right");
    if (premises[0].left != conclusion.left)
      return fail(std::string(name) + ": premise left side must be unchanged");
    for (const FormulaSet& delta : contexts(conclusion.right, principal)) {
      if (matches_with_added(premises[0].right, delta, instance)) return true;
    }
    return fail(std::string(name) + ": premise does not match the schema");
  }

  bool eigen_condition(const FormulaSet& gamma, const FormulaSet& delta,
                       const char* name) {
    const std::string& y = *inst.y;
    if (var_free_in(y, gamma) || var_free_in(y, delta))
      return fail(std::string(name) +
                  ": eigenvariable occurs free in the context");
    if (*inst.x != y && free_vars(*inst.a).count(y))
      return fail(std::string(name) + ": eigenvariable occurs free in A");
    return true;
  }

  bool eigen_right(const Formula& principal, const Formula& instance,
                   const char* name) {
    if (!need_premises(1)) return fail(std::string(name) + " takes one premise");
    if (!set_contains(conclusion.right, principal))
      return fail(std::string(name) + ": principal formula not on the right");
    if (premises[0].left != conclusion.left)
      return fail(std::string(name) + ": premise left side must be unchanged");
    for (const FormulaSet& delta : contexts(conclusion.right, principal)) {
      if (matches_with_added(premises[0].right, delta, instance)) {
        return eigen_condition(conclusion.left, delta, name);
      }
    }
    return fail(std::string(name) + ": premise does not match the schema");
  }

  bool eigen_left(const Formula& principal, const Formula& instance,
                  const char* name) {
    if (!need_premises(1)) return fail(std::string(name) + " takes one premise");
    if (!set_contains(conclusion.left, principal))
      return fail(std::string(name) + ": principal formula not on the left");
    if (premises[0].right != conclusion.right)
      return fail(std::string(name) + ": premise right side must be unchanged");
    for (const FormulaSet& gamma : contexts(conclusion.left, principal)) {
      if (matches_with_added(premises[0].left, gamma, instance)) {
        return eigen_condition(gamma, conclusion.right, name);
      }
    }
    return fail(std::string(name) + ": premise does not match the schema");
  }

  // One-premise rule whose principal (possibly under a negation) splits into
  // transformed pieces added together on the same side.
  template <typename Transform>
  bool left_rule_two_pieces(Formula::Kind inner_kind, Transform&& transform,
                            bool negated_principal = false) {
    if (!inst.a1 || !inst.a2) return fail("rule needs witnesses A1, A2");
    Formula inner = binary_of(inner_kind, *inst.a1, *inst.a2);
    Formula principal =
        negated_principal ? Formula::negation(std::move(inner)) : std::move(inner);
    return unary_left(principal, transform(*inst.a1, *inst.a2),
                      rule_name_string(inst.rule));
  }

  template <typename Transform>
  bool right_rule_two_pieces(Formula::Kind inner_kind, Transform&& transform,
                             bool negated_principal = false) {
    if (!inst.a1 || !inst.a2) return fail("rule needs witnesses A1, A2");
    Formula inner = binary_of(inner_kind, *inst.a1, *inst.a2);
    Formula principal =
        negated_principal ? Formula::negation(std::move(inner)) : std::move(inner);
    return unary_right(principal, transform(*inst.a1, *inst.a2),
                       rule_name_string(inst.rule));
  }

  // Two-premise rule branching on the pieces, principal on the given side.
  template <typename Transform>
  bool branching_left(Formula::Kind inner_kind, bool negated_principal,
                      Transform&& piece) {
    if (!inst.a1 || !inst.a2) return fail("rule needs witnesses A1, A2");
    if (!need_premises(2)) return fail("rule takes two premises");
    Formula inner = binary_of(inner_kind, *inst.a1, *inst.a2);
    Formula principal =
        negated_principal ? Formula::negation(std::move(inner)) : std::move(inner);
    if (!set_contains(conclusion.left, principal))
      return fail("principal formula not on the left");
    for (const FormulaSet& gamma : contexts(conclusion.left, principal)) {
      Sequent p1{set_add(gamma, {piece(*inst.a1)}), conclusion.right};
      Sequent p2{set_add(gamma, {piece(*inst.a2)}), conclusion.right};
      if (premises[0] == p1 && premises[1] == p2) return true;
    }
    return fail("premises do not match the schema");
  }

  template <typename Transform>
  bool branching_right(Formula::Kind inner_kind, bool negated_principal,
                       Transform&& piece) {
    if (!inst.a1 || !inst.a2) return fail("rule needs witnesses A1, A2");
    if (!need_premises(2)) return fail("rule takes two premises");
    Formula inner = binary_of(inner_kind, *inst.a1, *inst.a2);
    Formula principal =
        negated_principal ? Formula::negation(std::move(inner)) : std::move(inner);
    if (!set_contains(conclusion.right, principal))
      return fail("principal formula not on the right");
    for (const FormulaSet& delta : contexts(conclusion.right, principal)) {
      Sequent p1{conclusion.left, set_add(delta, {piece(*inst.a1)})};
      Sequent p2{conclusion.left, set_add(delta, {piece(*inst.a2)})};
      if (premises[0] == p1 && premises[1] == p2) return true;
    }
    return fail("premises do not match the schema");
  }

  static Formula binary_of(Formula::Kind kind, Formula a1, Formula a2) {
    switch (kind) {
      case Formula::Kind::And:
        return Formula::conjunction(std::move(a1), std::move(a2));
      case Formula::Kind::Or:
        return Formula::disjunction(std::move(a1), std::move(a2));
      case Formula::Kind::Implies:
        return Formula::implication(std::move(a1), std::move(a2));
      default:
        throw ValidationError("not a binary connective");
    }
  }
};

}  // namespace

bool check_rule(RuleSystem system, const RuleInstance& inst,
                std::span<const Sequent> premises, const Sequent& conclusion,
                std::string* why) {
  if (!system_admits(system, inst.rule)) {
    if (why)
      *why = std::string("rule ") + rule_name_string(inst.rule) +
             " is not part of system " + rule_system_string(system);
    return false;
  }
  RuleChecker checker{inst, premises, conclusion, why};
  return checker.check();
}

CheckResult check_derivation(RuleSystem system, const Derivation& d,
                             std::span<const Sequent> hypotheses) {
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Derivation::Step& step = d.steps[i];
    if (step.is_hypothesis) {
      bool found = false;
      for (const Sequent& h : hypotheses)
        if (h == step.sequent) {
          found = true;
          break;
        }
      if (!found)
        return CheckResult{false, i + 1, "sequent is not among the hypotheses"};
      continue;
    }
    std::vector<Sequent> premises;
    bool indices_ok = true;
    for (std::size_t idx : step.premises) {
      if (idx >= i) {
        indices_ok = false;
        break;
      }
      premises.push_back(d.steps[idx].sequent);
    }
    if (!indices_ok)
      return CheckResult{false, i + 1,
                         "premise indices must refer to earlier steps"};
    std::string why;
    if (!check_rule(system, step.rule, premises, step.sequent, &why))
      return CheckResult{false, i + 1, why};
  }
  return CheckResult{};
}

CheckResult derives(RuleSystem system, std::span<const Formula> gamma,
                    std::span<const Formula> delta, const Derivation& d) {
  if (d.steps.empty()) return CheckResult{false, 0, "empty derivation"};
  for (const auto& step : d.steps)
    if (step.is_hypothesis)
      return CheckResult{false, 0, "a proof may not use hypotheses"};
  CheckResult result = check_derivation(system, d, {});
  if (!result.ok) return result;
  const Sequent& last = d.steps.back().sequent;
  auto subset_of = [](const std::vector<Formula>& small,
                      std::span<const Formula> big) {
    for (const Formula& f : small) {
      bool found = false;
      for (const Formula& g : big)
        if (f == g) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  if (!subset_of(last.left, gamma))
    return CheckResult{false, d.steps.size(),
                       "conclusion's left side is not a subset of gamma"};
  if (!subset_of(last.right, delta))
    return CheckResult{false, d.steps.size(),
                       "conclusion's right side is not a subset of delta"};
  return CheckResult{};
}

// ---------------------------------------------------------------------------
// Proof files

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

// Splits on top-level commas (formulas contain commas only inside parens).
std::vector<std::string> split_top_commas(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!trim(current).empty() || !out.empty()) out.push_back(trim(current));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

Sequent parse_sequent_text(const std::string& text, const Signature& sig,
                           std::size_t line_no) {
  auto pos = text.find("|-");
  if (pos == std::string::npos)
    throw ParseError("line " + std::to_string(line_no) + ": missing '|-'", 0);
  std::vector<Formula> left, right;
  for (const std::string& part : split_top_commas(trim(text.substr(0, pos))))
    if (!part.empty()) left.push_back(parse_formula(part, sig));
  for (const std::string& part : split_top_commas(trim(text.substr(pos + 2))))
    if (!part.empty()) right.push_back(parse_formula(part, sig));
  return Sequent::make(std::move(left), std::move(right));
}

}  // namespace

ProofFile parse_proof_file(const std::string& text) {
  std::vector<std::string> constants;
  std::map<std::string, std::size_t> predicates;
  std::set<std::string> propositions;

  struct RawStep {
    std::size_t line_no;
    std::string body;  // text after "<index>."
  };
  std::vector<RawStep> raw_steps;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected_index = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(strip_comment(line));
    if (stripped.empty()) continue;
    if (stripped.rfind("const ", 0) == 0) {
      for (const auto& name : split_ws(stripped.substr(6)))
        constants.push_back(name);
      continue;
    }
    if (stripped.rfind("pred ", 0) == 0) {
      for (const auto& decl : split_ws(stripped.substr(5))) {
        auto slash = decl.find('/');
        if (slash == std::string::npos)
          throw ParseError("line " + std::to_string(line_no) +
                               ": predicate declarations look like P/2",
                           0);
        predicates[decl.substr(0, slash)] =
            static_cast<std::size_t>(std::stoul(decl.substr(slash + 1)));
      }
      continue;
    }
    if (stripped.rfind("prop ", 0) == 0) {
      for (const auto& name : split_ws(stripped.substr(5)))
        propositions.insert(name);
      continue;
    }
    // A step line: "<index>. ...".
    std::size_t dot = stripped.find('.');
    if (dot == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected a step",
                       0);
    std::string index_text = trim(stripped.substr(0, dot));
    std::size_t index = 0;
    try {
      index = std::stoul(index_text);
    } catch (...) {
      throw ParseError(
          "line " + std::to_string(line_no) + ": bad step index", 0);
    }
    if (index != expected_index)
      throw ParseError("line " + std::to_string(line_no) +
                           ": steps must be numbered consecutively from 1",
                       0);
    ++expected_index;
    raw_steps.push_back(RawStep{line_no, trim(stripped.substr(dot + 1))});
  }

  ProofFile out;
  out.signature = Signature(std::move(constants), {}, std::move(predicates),
                            std::move(propositions));

  for (const RawStep& raw : raw_steps) {
    auto colon = raw.body.find(" : ");
    std::size_t colon_len = 3;
    if (colon == std::string::npos) {
      colon = raw.body.find(':');
      colon_len = 1;
    }
    if (colon == std::string::npos)
      throw ParseError(
          "line " + std::to_string(raw.line_no) + ": missing ':'", 0);
    std::string head = trim(raw.body.substr(0, colon));
    Sequent sequent =
        parse_sequent_text(trim(raw.body.substr(colon + colon_len)),
                           out.signature, raw.line_no);

    Derivation::Step step;
    step.sequent = sequent;
    if (head == "hyp") {
      step.is_hypothesis = true;
      out.hypotheses.push_back(sequent);
      out.derivation.steps.push_back(std::move(step));
      continue;
    }

    // head: <rule-name>[witnesses] from i,j
    std::string rule_text = head;
    std::string witness_text, from_text;
    auto bracket = rule_text.find('[');
    if (bracket != std::string::npos) {
      auto close = rule_text.find(']', bracket);
      if (close == std::string::npos)
        throw ParseError(
            "line " + std::to_string(raw.line_no) + ": missing ']'", 0);
      witness_text = rule_text.substr(bracket + 1, close - bracket - 1);
      std::string rest = trim(rule_text.substr(close + 1));
      rule_text = trim(rule_text.substr(0, bracket));
      if (!rest.empty()) {
        if (rest.rfind("from", 0) != 0)
          throw ParseError("line " + std::to_string(raw.line_no) +
                               ": expected 'from' after witnesses",
                           0);
        from_text = trim(rest.substr(4));
      }
    } else {
      auto from_pos = rule_text.find(" from ");
      if (from_pos != std::string::npos) {
        from_text = trim(rule_text.substr(from_pos + 6));
        rule_text = trim(rule_text.substr(0, from_pos));
      }
    }

    auto rule = rule_name_from_string(rule_text);
    if (!rule)
      throw ParseError("line " + std::to_string(raw.line_no) +
                           ": unknown rule '" + rule_text + "'",
                       0);
    step.rule.rule = *rule;

    if (!witness_text.empty()) {
      std::string current;
      std::vector<std::string> parts;
      for (char c : witness_text) {
        if (c == ';') {
          parts.push_back(trim(current));
          current.clear();
        } else {
          current += c;
        }
      }
      if (!trim(current).empty()) parts.push_back(trim(current));
      for (const std::string& part : parts) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
          throw ParseError("line " + std::to_string(raw.line_no) +
                               ": witnesses look like key=value",
                           0);
        std::string key = trim(part.substr(0, eq));
        std::string value = trim(part.substr(eq + 1));
        if (key == "A")
          step.rule.a = parse_formula(value, out.signature);
        else if (key == "A1")
          step.rule.a1 = parse_formula(value, out.signature);
        else if (key == "A2")
          step.rule.a2 = parse_formula(value, out.signature);
        else if (key == "t")
          step.rule.t = parse_term(value, out.signature);
        else if (key == "t1")
          step.rule.t1 = parse_term(value, out.signature);
        else if (key == "t2")
          step.rule.t2 = parse_term(value, out.signature);
        else if (key == "x")
          step.rule.x = value;
        else if (key == "y")
          step.rule.y = value;
        else
          throw ParseError("line " + std::to_string(raw.line_no) +
                               ": unknown witness key '" + key + "'",
                           0);
      }
    }

    if (!from_text.empty()) {
      for (const std::string& part : split_top_commas(from_text)) {
        std::size_t idx = 0;
        try {
          idx = std::stoul(part);
        } catch (...) {
          throw ParseError("line " + std::to_string(raw.line_no) +
                               ": bad premise index '" + part + "'",
                           0);
        }
        if (idx == 0)
          throw ParseError("line " + std::to_string(raw.line_no) +
                               ": premise indices are 1-based",
                           0);
        step.premises.push_back(idx - 1);
      }
    }
    out.derivation.steps.push_back(std::move(step));
  }
  return out;
}

}  // namespace bdl
