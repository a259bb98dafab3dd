#include "database.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bdl {

RelationalLanguage::RelationalLanguage(Signature sig) : sig_(std::move(sig)) {
  if (!sig_.functions().empty())
    throw ValidationError("a relational language has no function symbols");
  if (!sig_.propositions().empty())
    throw ValidationError("a relational language has no proposition symbols");
  bool has_nil = false;
  for (const auto& c : sig_.constants()) {
    if (c == kNil)
      has_nil = true;
    else
      non_nil_constants_.push_back(c);
  }
  if (!has_nil)
    throw ValidationError("a relational language must declare nil");
  if (non_nil_constants_.empty())
    throw ValidationError(
        "a relational language needs at least one constant besides nil");
}

std::size_t RelationalLanguage::element_of(const std::string& constant) const {
  if (constant == kNil) return Structure::kBottomElement;
  auto it = std::find(non_nil_constants_.begin(), non_nil_constants_.end(),
                      constant);
  if (it == non_nil_constants_.end())
    throw ValidationError("undeclared constant '" + constant + "'");
  return static_cast<std::size_t>(it - non_nil_constants_.begin()) + 1;
}

const std::string& RelationalLanguage::constant_of_element(
    std::size_t element) const {
  static const std::string nil_name = kNil;
  if (element == Structure::kBottomElement) return nil_name;
  return non_nil_constants_.at(element - 1);
}

Formula Fact::to_formula() const {
  std::vector<Term> terms;
  terms.reserve(args.size());
  for (const auto& c : args) terms.push_back(Term::constant(c));
  return Formula::atom(predicate, std::move(terms));
}

int compare(const Fact& a, const Fact& b) {
  if (int c = a.predicate.compare(b.predicate); c != 0) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = a.args[i].compare(b.args[i]); c != 0) return c < 0 ? -1 : 1;
  return 0;
}
bool operator==(const Fact& a, const Fact& b) { return compare(a, b) == 0; }
bool operator<(const Fact& a, const Fact& b) { return compare(a, b) < 0; }

std::string print_fact(const Fact& f) {
  std::string out = f.predicate;
  out += '(';
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    if (i) out += ',';
    out += f.args[i];
  }
  out += ')';
  return out;
}

FactBase normalize_base(FactBase base) {
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return base;
}

void check_well_formed(const Fact& f, const RelationalLanguage& lang) {
  std::size_t arity = lang.signature().predicate_arity(f.predicate);
  if (f.args.size() != arity)
    throw ValidationError("fact for '" + f.predicate + "' expects " +
                          std::to_string(arity) + " arguments");
  for (const auto& c : f.args)
    if (!lang.signature().is_constant(c))
      throw ValidationError("fact argument '" + c + "' is not a constant");
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

// Fresh variable names that cannot collide with declared symbols.
std::vector<std::string> axiom_variables(const RelationalLanguage& lang,
                                         std::size_t count) {
  std::set<std::string> avoid;
  for (const auto& c : lang.constants()) avoid.insert(c);
  for (const auto& [p, arity] : lang.predicates()) avoid.insert(p);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string name = fresh_name("x", avoid);
    avoid.insert(name);
    out.push_back(std::move(name));
  }
  return out;
}

Formula disjoin_all(std::vector<Formula> parts) {
  Formula out = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = Formula::disjunction(std::move(out), std::move(parts[i]));
  return out;
}

Formula conjoin_all(std::vector<Formula> parts) {
  Formula out = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = Formula::conjunction(std::move(out), std::move(parts[i]));
  return out;
}

}  // namespace

Formula nil_indeterminacy_axiom(const RelationalLanguage&) {
  return Formula::negation(
      expand(Abbreviation::defined(Term::constant(kNil))));
}

Formula equality_seminormality_axiom(const RelationalLanguage& lang) {
  auto vars = axiom_variables(lang, 2);
  Term x = Term::variable(vars[0]);
  Term y = Term::variable(vars[1]);
  Formula eq = Formula::equality(x, y);
  Formula consistent_eq = expand(Abbreviation::cons(eq));
  Formula both_defined = Formula::conjunction(
      expand(Abbreviation::defined(x)), expand(Abbreviation::defined(y)));
  Formula determinate_eq = expand(Abbreviation::det(eq));
  Formula body = Formula::conjunction(
      std::move(consistent_eq),
      expand(Abbreviation::strong_implies(std::move(both_defined),
                                          std::move(determinate_eq))));
  return Formula::for_all(vars[0],
                          Formula::for_all(vars[1], std::move(body)));
}

Formula domain_closure_axiom(const RelationalLanguage& lang) {
  auto vars = axiom_variables(lang, 1);
  Term x = Term::variable(vars[0]);
  std::vector<Formula> parts;
  for (const auto& c : lang.constants())
    parts.push_back(
        expand(Abbreviation::strong_equal(x, Term::constant(c))));
  return Formula::for_all(vars[0], disjoin_all(std::move(parts)));
}

std::vector<Formula> unique_name_axioms(const RelationalLanguage& lang) {
  std::vector<Formula> out;
  const auto& consts = lang.non_nil_constants();
  for (std::size_t i = 0; i < consts.size(); ++i) {
    for (std::size_t j = i + 1; j < consts.size(); ++j) {
      out.push_back(Formula::negation(expand(Abbreviation::strong_equal(
          Term::constant(consts[i]), Term::constant(consts[j])))));
    }
  }
  return out;
}

Formula determinacy_axiom(const RelationalLanguage& lang,
                          const std::string& pred) {
  std::size_t arity = lang.signature().predicate_arity(pred);
  auto vars = axiom_variables(lang, arity);
  std::vector<Term> args;
  for (const auto& v : vars) args.push_back(Term::variable(v));
  Formula body = expand(Abbreviation::det(Formula::atom(pred, std::move(args))));
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    body = Formula::for_all(*it, std::move(body));
  return body;
}

std::vector<Formula> rsa(const RelationalLanguage& lang) {
  std::vector<Formula> out;
  out.push_back(nil_indeterminacy_axiom(lang));
  out.push_back(equality_seminormality_axiom(lang));
  out.push_back(domain_closure_axiom(lang));
  for (Formula& f : unique_name_axioms(lang)) out.push_back(std::move(f));
  for (const auto& [pred, arity] : lang.predicates())
    out.push_back(determinacy_axiom(lang, pred));
  return out;
}

Formula completion_axiom(const RelationalLanguage& lang, const FactBase& base,
                         const std::string& pred) {
  std::size_t arity = lang.signature().predicate_arity(pred);
  auto vars = axiom_variables(lang, arity);
  std::vector<Term> args;
  for (const auto& v : vars) args.push_back(Term::variable(v));
  Formula head = Formula::atom(pred, args);

  std::vector<Formula> rows;
  for (const Fact& fact : base) {
    if (fact.predicate != pred) continue;
    std::vector<Formula> cells;
    for (std::size_t i = 0; i < arity; ++i)
      cells.push_back(expand(Abbreviation::strong_equal(
          args[i], Term::constant(fact.args[i]))));
    rows.push_back(conjoin_all(std::move(cells)));
  }
  Formula rhs = rows.empty() ? Formula::falsum() : disjoin_all(std::move(rows));
  Formula body = expand(
      Abbreviation::strong_implies(std::move(head), std::move(rhs)));
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    body = Formula::for_all(*it, std::move(body));
  return body;
}

std::vector<Formula> relational_theory(const RelationalLanguage& lang,
                                       const FactBase& base) {
  std::vector<Formula> out = rsa(lang);
  for (const Fact& fact : base) out.push_back(fact.to_formula());
  for (const auto& [pred, arity] : lang.predicates())
    out.push_back(completion_axiom(lang, base, pred));
  return out;
}

// ---------------------------------------------------------------------------
// Canonical models

Structure canonical_structure(const RelationalLanguage& lang,
                              const FactBase& base, std::uint64_t both_mask) {
  std::size_t n = lang.domain_size();
  std::map<std::string, std::size_t> consts;
  for (const auto& c : lang.constants()) consts[c] = lang.element_of(c);

  std::vector<TruthValue> eq(n * n, TruthValue::False);
  for (std::size_t d1 = 0; d1 < n; ++d1) {
    for (std::size_t d2 = 0; d2 < n; ++d2) {
      TruthValue v;
      if (d1 == Structure::kBottomElement || d2 == Structure::kBottomElement)
        v = TruthValue::Neither;
      else
        v = d1 == d2 ? TruthValue::True : TruthValue::False;
      eq[d1 * n + d2] = v;
    }
  }

  std::map<std::string, std::vector<TruthValue>> preds;
  for (const auto& [pred, arity] : lang.predicates()) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < arity; ++i) cells *= n;
    preds[pred] = std::vector<TruthValue>(cells, TruthValue::False);
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Fact& fact = base[i];
    std::vector<std::size_t> tuple;
    for (const auto& c : fact.args) tuple.push_back(lang.element_of(c));
    TruthValue v = (both_mask >> i) & 1 ? TruthValue::Both : TruthValue::True;
    preds[fact.predicate][Structure::table_index(n, tuple)] = v;
  }

  return Structure(StructureFlavor::Bottom, n, lang.signature(),
                   std::move(consts), {}, {}, std::move(preds), std::move(eq));
}

bool theory_entails(const RelationalLanguage& lang, const FactBase& base,
                    const Formula& a, const Limits& limits) {
  if (base.size() > limits.max_basis)
    throw ResourceLimitError("basis too large for canonical-model entailment (" +
                             std::to_string(base.size()) + " facts)");
  std::uint64_t masks = std::uint64_t{1} << base.size();
  const Formula delta[] = {a};
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    Structure s = canonical_structure(lang, base, mask);
    const Structure family[] = {s};
    if (!entails_over(family, {}, delta)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generic RSA-model enumeration

namespace {

std::size_t predicate_cells(const RelationalLanguage& lang,
                            const std::string& pred) {
  std::size_t arity = lang.signature().predicate_arity(pred);
  std::size_t cells = 1;
  for (std::size_t i = 0; i < arity; ++i) cells *= lang.domain_size();
  return cells;
}

}  // namespace

std::uint64_t count_rsa_models(const RelationalLanguage& lang) {
  long double count = 1;
  for (const auto& [pred, arity] : lang.predicates()) {
    std::size_t cells = predicate_cells(lang, pred);
    for (std::size_t i = 0; i < cells; ++i) {
      count *= 3;
      if (count > 1e18L) return UINT64_MAX;
    }
  }
  return static_cast<std::uint64_t>(count);
}

void for_each_rsa_model(const RelationalLanguage& lang, const Limits& limits,
                        const std::function<bool(const Structure&)>& fn) {
  std::uint64_t count = count_rsa_models(lang);
  if (count > limits.max_structures)
    throw ResourceLimitError(
        "RSA model family exceeds the structure ceiling (" +
        std::to_string(count) + " > " + std::to_string(limits.max_structures) +
        ")");

  // One base-3 digit per predicate cell, in predicate map order.
  std::vector<std::pair<std::string, std::size_t>> layout;
  std::size_t total_cells = 0;
  for (const auto& [pred, arity] : lang.predicates()) {
    std::size_t cells = predicate_cells(lang, pred);
    layout.emplace_back(pred, cells);
    total_cells += cells;
  }
  static constexpr TruthValue kDigits[3] = {TruthValue::False, TruthValue::True,
                                            TruthValue::Both};
  std::vector<std::uint8_t> digits(total_cells, 0);

  Structure base = canonical_structure(lang, {}, 0);
  while (true) {
    Structure s = base;
    std::size_t offset = 0;
    for (const auto& [pred, cells] : layout) {
      auto& table = s.mutable_predicate_table(pred);
      for (std::size_t i = 0; i < cells; ++i)
        table[i] = kDigits[digits[offset + i]];
      offset += cells;
    }
    if (!fn(s)) return;
    std::size_t i = 0;
    for (; i < total_cells; ++i) {
      if (++digits[i] < 3) break;
      digits[i] = 0;
    }
    if (i == total_cells) return;
  }
}

std::vector<Structure> enumerate_rsa_models(const RelationalLanguage& lang,
                                            const Limits& limits) {
  std::vector<Structure> out;
  for_each_rsa_model(lang, limits, [&out](const Structure& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

bool entails_rsa(const RelationalLanguage& lang, std::span<const Formula> gamma,
                 const Formula& a, const Limits& limits) {
  std::vector<Formula> axioms = rsa(lang);
  for (const Formula& axiom : axioms) {
    bool found = false;
    for (const Formula& g : gamma)
      if (g == axiom) {
        found = true;
        break;
      }
    if (!found)
      throw ValidationError(
          "entails_rsa requires the relational structure axioms in gamma");
  }
  const Formula delta[] = {a};
  bool entailed = true;
  for_each_rsa_model(lang, limits, [&](const Structure& s) {
    const Structure family[] = {s};
    if (!entails_over(family, gamma, delta)) {
      entailed = false;
      return false;
    }
    return true;
  });
  return entailed;
}

// ---------------------------------------------------------------------------
// Collapse and isomorphism

Structure nabla(const Structure& s) {
  Structure out = s;
  for (const auto& [pred, arity] : s.signature().predicates()) {
    for (TruthValue& v : out.mutable_predicate_table(pred))
      if (v == TruthValue::Both) v = TruthValue::True;
  }
  return out;
}

bool models_isomorphic(const RelationalLanguage& lang, const Structure& s1,
                       const Structure& s2) {
  if (s1.domain_size() != s2.domain_size()) return false;
  std::size_t n = s1.domain_size();
  // The constant-naming bijection; in a relational structure every element is
  // either bottom or named by exactly one constant.
  std::vector<std::size_t> h(n, n);
  std::vector<bool> hit(n, false);
  for (const auto& c : lang.constants()) {
    std::size_t from = s1.constant_value(c);
    std::size_t to = s2.constant_value(c);
    if (h[from] != n && h[from] != to) return false;
    h[from] = to;
    hit[to] = true;
  }
  for (std::size_t d = 0; d < n; ++d)
    if (h[d] == n || !hit[d]) return false;

  for (std::size_t d1 = 0; d1 < n; ++d1)
    for (std::size_t d2 = 0; d2 < n; ++d2)
      if (s1.equality_value(d1, d2) != s2.equality_value(h[d1], h[d2]))
        return false;

  for (const auto& [pred, arity] : lang.predicates()) {
    std::vector<std::size_t> tuple(arity, 0), mapped(arity, 0);
    while (true) {
      for (std::size_t i = 0; i < arity; ++i) mapped[i] = h[tuple[i]];
      if (s1.predicate_value(pred, tuple) != s2.predicate_value(pred, mapped))
        return false;
      std::size_t i = 0;
      for (; i < arity; ++i) {
        if (++tuple[i] < n) break;
        tuple[i] = 0;
      }
      if (i == arity) break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Occurrence-null constraint evaluation

MarkedStructure::MarkedStructure(const RelationalLanguage& lang,
                                 const FactBase& base)
    : lang_(lang) {
  first_null_ = lang.non_nil_constants().size();
  std::size_t next = first_null_;
  for (const Fact& fact : base) {
    std::vector<std::size_t> tuple;
    for (std::size_t pos = 0; pos < fact.args.size(); ++pos) {
      if (fact.args[pos] == kNil) {
        null_origin_.emplace_back(fact, pos);
        tuple.push_back(next++);
      } else {
        tuple.push_back(lang.element_of(fact.args[pos]) - 1);
      }
    }
    tuple_of_fact_[fact] = tuple;
    fact_tuples_[fact.predicate].push_back(std::move(tuple));
  }
  nil_mention_ = next;
  domain_size_ = next + 1;
}

MarkedStructure::ElementRef MarkedStructure::element_ref(
    std::size_t element) const {
  ElementRef ref;
  if (element < first_null_) {
    ref.kind = ElementRef::Kind::Determinate;
    ref.constant = lang_.non_nil_constants()[element];
  } else if (element == nil_mention_) {
    ref.kind = ElementRef::Kind::NilMention;
  } else {
    ref.kind = ElementRef::Kind::OccurrenceNull;
    ref.fact = null_origin_[element - first_null_].first;
    ref.position = null_origin_[element - first_null_].second;
  }
  return ref;
}

std::optional<std::size_t> MarkedStructure::resolve(const ElementRef& ref) const {
  switch (ref.kind) {
    case ElementRef::Kind::Determinate:
      return lang_.element_of(ref.constant) - 1;
    case ElementRef::Kind::NilMention:
      return nil_mention_;
    case ElementRef::Kind::OccurrenceNull: {
      auto it = tuple_of_fact_.find(ref.fact);
      if (it == tuple_of_fact_.end()) return std::nullopt;
      return it->second[ref.position];
    }
  }
  return std::nullopt;
}

std::size_t MarkedStructure::eval_term(const Assignment& alpha,
                                       const Term& t) const {
  switch (t.kind) {
    case Term::Kind::Variable:
      return alpha.get(t.name);
    case Term::Kind::Constant:
      if (t.name == kNil) return nil_mention_;
      return lang_.element_of(t.name) - 1;
    case Term::Kind::Application:
      throw ValidationError("relational constraints cannot use functions");
  }
  throw ValidationError("unknown term kind");
}

TruthValue MarkedStructure::equality(std::size_t e1, std::size_t e2) const {
  if (e1 == e2)
    return e1 == nil_mention_ ? TruthValue::Neither : TruthValue::True;
  if (is_nullish(e1) || is_nullish(e2)) return TruthValue::Neither;
  return TruthValue::False;
}

TruthValue MarkedStructure::eval(const Assignment& alpha,
                                 const Formula& f) const {
  // The term-definedness shape ~((t = t) -> false): a null is indeterminate
  // even though it is identical to itself.
  if (f.kind == Formula::Kind::Not && f.subs[0].kind == Formula::Kind::Implies &&
      f.subs[0].subs[1].kind == Formula::Kind::Falsum &&
      f.subs[0].subs[0].kind == Formula::Kind::Equality &&
      f.subs[0].subs[0].terms[0] == f.subs[0].subs[0].terms[1]) {
    std::size_t e = eval_term(alpha, f.subs[0].subs[0].terms[0]);
    return is_nullish(e) ? TruthValue::False : TruthValue::True;
  }
  switch (f.kind) {
    case Formula::Kind::Proposition:
      throw ValidationError("relational constraints cannot use propositions");
    case Formula::Kind::Atom: {
      auto it = fact_tuples_.find(f.name);
      std::vector<std::size_t> tuple;
      for (const Term& t : f.terms) tuple.push_back(eval_term(alpha, t));
      if (it != fact_tuples_.end()) {
        for (const auto& row : it->second)
          if (row == tuple) return TruthValue::True;
      }
      return TruthValue::False;
    }
    case Formula::Kind::Equality:
      return equality(eval_term(alpha, f.terms[0]), eval_term(alpha, f.terms[1]));
    case Formula::Kind::Falsum:
      return TruthValue::False;
    case Formula::Kind::Not:
      return tv_not(eval(alpha, f.subs[0]));
    case Formula::Kind::And:
      return tv_and(eval(alpha, f.subs[0]), eval(alpha, f.subs[1]));
    case Formula::Kind::Or:
      return tv_or(eval(alpha, f.subs[0]), eval(alpha, f.subs[1]));
    case Formula::Kind::Implies:
      return tv_impl(eval(alpha, f.subs[0]), eval(alpha, f.subs[1]));
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      bool universal = f.kind == Formula::Kind::ForAll;
      TruthValue acc = universal ? TruthValue::True : TruthValue::False;
      Assignment inner = alpha;
      for (std::size_t d = 0; d < domain_size_; ++d) {
        inner.values[f.name] = d;
        TruthValue v = eval(inner, f.subs[0]);
        acc = universal ? tv_and(acc, v) : tv_or(acc, v);
        if (universal && acc == TruthValue::False) break;
        if (!universal && acc == TruthValue::True) break;
      }
      return acc;
    }
  }
  throw ValidationError("unknown formula kind");
}

bool MarkedStructure::holds(const Formula& f, Witness* witness) const {
  // A universal prefix is designated iff every instance is, so the prefix is
  // peeled into the assignment loop, which can then stop at the first
  // undesignated instance.
  std::vector<std::string> vars;
  auto fv = free_vars(f);
  vars.assign(fv.begin(), fv.end());
  const Formula* body = &f;
  while (body->kind == Formula::Kind::ForAll &&
         std::find(vars.begin(), vars.end(), body->name) == vars.end()) {
    vars.push_back(body->name);
    body = &body->subs[0];
  }

  Assignment alpha;
  std::vector<std::size_t> tuple(vars.size(), 0);
  std::vector<std::map<std::string, std::size_t>::iterator> slots;
  for (const auto& v : vars)
    slots.push_back(alpha.values.emplace(v, 0).first);
  while (true) {
    if (!is_designated(eval(alpha, *body))) {
      if (witness) {
        witness->binding.clear();
        witness->peeled = vars.size() - fv.size();
        for (std::size_t i = 0; i < vars.size(); ++i)
          witness->binding.emplace_back(vars[i], element_ref(tuple[i]));
      }
      return false;
    }
    if (vars.empty()) return true;
    // Increment from the back so the outermost variable varies slowest.
    std::size_t i = tuple.size();
    while (i > 0) {
      --i;
      if (++tuple[i] < domain_size_) {
        slots[i]->second = tuple[i];
        break;
      }
      tuple[i] = 0;
      slots[i]->second = 0;
      if (i == 0) return true;
    }
  }
}

bool MarkedStructure::satisfies(std::span<const Formula> constraints,
                                Witness* witness) const {
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!holds(constraints[i], witness)) {
      if (witness) witness->constraint_index = i;
      return false;
    }
  }
  return true;
}

bool MarkedStructure::witness_designated(std::span<const Formula> constraints,
                                         const Witness& w) const {
  if (w.constraint_index >= constraints.size()) return true;
  Assignment alpha;
  for (const auto& [var, ref] : w.binding) {
    auto element = resolve(ref);
    if (!element) return true;  // the witness no longer applies
    alpha.values[var] = *element;
  }
  // Peel the same universal prefix the witness was recorded against.
  const Formula* body = &constraints[w.constraint_index];
  for (std::size_t i = 0; i < w.peeled; ++i) {
    if (body->kind != Formula::Kind::ForAll) break;
    body = &body->subs[0];
  }
  return is_designated(eval(alpha, *body));
}

bool base_satisfies_constraints(const RelationalLanguage& lang,
                                const FactBase& base,
                                std::span<const Formula> constraints) {
  if (constraints.empty()) return true;
  MarkedStructure marked(lang, base);
  return marked.satisfies(constraints);
}

// ---------------------------------------------------------------------------
// Database consistency

bool is_consistent_db(const Database& db, ConsistencyReport* report) {
  bool ok = base_satisfies_constraints(db.lang, db.basis, db.constraints);
  if (!report) return ok;
  report->consistent = ok;
  report->conflict.clear();
  report->needs_additions = false;
  report->constraints_unsatisfiable_with_theory = false;
  if (ok) return true;

  // Size-minimal conflicting subset, as the witness.
  std::size_t n = db.basis.size();
  if (n <= db.limits.max_basis) {
    bool found = false;
    for (std::size_t size = 0; size <= n && !found; ++size) {
      std::vector<bool> pick(n, false);
      std::fill(pick.end() - static_cast<long>(size), pick.end(), true);
      do {
        FactBase subset;
        for (std::size_t i = 0; i < n; ++i)
          if (pick[i]) subset.push_back(db.basis[i]);
        if (!base_satisfies_constraints(db.lang, subset, db.constraints)) {
          report->conflict = subset;
          report->needs_additions = subset.empty();
          found = true;
          break;
        }
      } while (std::next_permutation(pick.begin(), pick.end()));
    }

    // Would the proof-theoretic check be vacuous? It is when no canonical
    // model of the theory satisfies the constraints.
    bool some_model = false;
    std::uint64_t masks = std::uint64_t{1} << n;
    Assignment empty;
    for (std::uint64_t mask = 0; mask < masks && !some_model; ++mask) {
      Structure s = canonical_structure(db.lang, db.basis, mask);
      bool all = true;
      for (const Formula& c : db.constraints) {
        auto fv = free_vars(c);
        if (fv.empty()) {
          if (!is_designated(s.eval_formula(empty, c))) {
            all = false;
            break;
          }
        } else {
          const Formula one[] = {c};
          if (!is_model(s, one)) {
            all = false;
            break;
          }
        }
      }
      if (all) some_model = true;
    }
    report->constraints_unsatisfiable_with_theory = !some_model;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Database files

namespace {

std::string trim_copy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Query parse_query_declaration(const Signature& sig, const std::string& text) {
  auto arrow = text.find(":-");
  if (arrow == std::string::npos)
    throw ParseError("queries look like name(x1,x2) :- <formula>", 0);
  std::string head = trim_copy(text.substr(0, arrow));
  std::string body_text = trim_copy(text.substr(arrow + 2));
  auto open = head.find('(');
  auto close = head.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError("query heads look like name(x1,x2)", 0);
  Query q;
  q.name = trim_copy(head.substr(0, open));
  if (!Signature::is_valid_identifier(q.name))
    throw ParseError("bad query name '" + q.name + "'", 0);
  std::string vars_text = head.substr(open + 1, close - open - 1);
  std::istringstream vars_in(vars_text);
  std::string var;
  while (std::getline(vars_in, var, ',')) {
    var = trim_copy(var);
    if (var.empty()) continue;
    if (!Signature::is_valid_identifier(var) || sig.declares(var) ||
        Signature::is_reserved_word(var))
      throw ParseError("'" + var + "' cannot be a query variable", 0);
    if (std::find(q.head.begin(), q.head.end(), var) != q.head.end())
      throw ParseError("duplicate query variable '" + var + "'", 0);
    q.head.push_back(var);
  }
  q.body = parse_formula(body_text, sig);
  return q;
}

Database parse_database_text(const std::string& text) {
  std::vector<std::string> constants;
  std::map<std::string, std::size_t> predicates;
  struct PendingLine {
    std::size_t line_no;
    std::string kind;  // fact | constraint | query
    std::string body;
  };
  std::vector<PendingLine> pending;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string stripped = trim_copy(line);
    if (stripped.empty()) continue;
    std::istringstream fields(stripped);
    std::string keyword;
    fields >> keyword;
    std::string rest = trim_copy(stripped.substr(keyword.size()));
    if (keyword == "const") {
      std::istringstream names(rest);
      std::string name;
      while (names >> name) constants.push_back(name);
    } else if (keyword == "pred") {
      std::istringstream decls(rest);
      std::string decl;
      while (decls >> decl) {
        auto slash = decl.find('/');
        if (slash == std::string::npos)
          throw ParseError("line " + std::to_string(line_no) +
                               ": predicate declarations look like P/3",
                           0);
        std::size_t arity = 0;
        try {
          arity = std::stoul(decl.substr(slash + 1));
        } catch (...) {
          throw ParseError(
              "line " + std::to_string(line_no) + ": bad arity", 0);
        }
        predicates[decl.substr(0, slash)] = arity;
      }
    } else if (keyword == "fact" || keyword == "constraint" ||
               keyword == "query") {
      pending.push_back(PendingLine{line_no, keyword, rest});
    } else {
      throw ParseError("line " + std::to_string(line_no) +
                           ": unknown declaration '" + keyword + "'",
                       0);
    }
  }

  if (std::find(constants.begin(), constants.end(), kNil) == constants.end())
    constants.push_back(kNil);  // nil is implicit

  Database db = [&] {
    try {
      return Database{
          RelationalLanguage(Signature(constants, {}, predicates, {})),
          {}, {}, {}, {}};
    } catch (const ValidationError& e) {
      // Bad declarations are a malformed file.
      throw ParseError(e.what(), 0);
    }
  }();

  for (const PendingLine& p : pending) {
    if (p.kind == "fact") {
      Formula f = parse_formula(p.body, db.lang.signature());
      if (f.kind != Formula::Kind::Atom)
        throw ParseError("line " + std::to_string(p.line_no) +
                             ": a fact must be a predicate atom",
                         0);
      Fact fact{f.name, {}};
      for (const Term& t : f.terms) {
        if (t.kind != Term::Kind::Constant)
          throw ParseError("line " + std::to_string(p.line_no) +
                               ": facts must be ground over constants",
                           0);
        fact.args.push_back(t.name);
      }
      check_well_formed(fact, db.lang);
      db.basis.push_back(std::move(fact));
    } else if (p.kind == "constraint") {
      db.constraints.push_back(parse_formula(p.body, db.lang.signature()));
    } else {
      Query q = parse_query_declaration(db.lang.signature(), p.body);
      if (db.queries.count(q.name))
        throw ParseError("line " + std::to_string(p.line_no) +
                             ": duplicate query '" + q.name + "'",
                         0);
      db.queries[q.name] = std::move(q);
    }
  }
  db.basis = normalize_base(std::move(db.basis));
  return db;
}

Database load_database_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open database file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_database_text(buffer.str());
}

}  // namespace bdl
