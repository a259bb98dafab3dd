#include "query.hpp"

#include <algorithm>
#include <map>

namespace bdl {

bool is_applicable(const Query& q, const Database& db) {
  try {
    check_well_formed(q.body, db.lang.signature());
  } catch (const ValidationError&) {
    return false;
  }
  auto fv = free_vars(q.body);
  for (const auto& v : fv)
    if (std::find(q.head.begin(), q.head.end(), v) == q.head.end())
      return false;
  return true;
}

namespace {

Formula instantiate(const Query& q, const AnswerTuple& tuple) {
  Formula instance = q.body;
  for (std::size_t i = 0; i < q.head.size(); ++i)
    instance = substitute(q.head[i], Term::constant(tuple[i]), instance);
  return instance;
}

// Candidate tuples in lexicographic declared-constant order.
template <typename F>
void for_each_tuple(const Database& db, std::size_t width, F&& body) {
  const auto& constants = db.lang.constants();
  std::vector<std::size_t> idx(width, 0);
  while (true) {
    AnswerTuple tuple;
    tuple.reserve(width);
    for (std::size_t i : idx) tuple.push_back(constants[i]);
    body(tuple);
    std::size_t i = width;
    while (i > 0) {
      --i;
      if (++idx[i] < constants.size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (width == 0) return;
  }
}

void require_applicable(const Query& q, const Database& db) {
  if (!is_applicable(q, db))
    throw ValidationError("query '" + q.name + "' is not applicable");
}

}  // namespace

std::vector<AnswerTuple> answers(const Database& db, const Query& q) {
  require_applicable(q, db);
  std::vector<AnswerTuple> out;
  for_each_tuple(db, q.head.size(), [&](const AnswerTuple& tuple) {
    if (theory_entails(db.lang, db.basis, instantiate(q, tuple), db.limits))
      out.push_back(tuple);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Support entailment

namespace {

// Occurrence polarities of a ground predicate cell inside a formula.
enum : int { kPos = 1, kNeg = 2 };

struct Cell {
  std::string pred;
  std::size_t index;
  bool operator<(const Cell& o) const {
    return pred < o.pred || (pred == o.pred && index < o.index);
  }
};

void collect_polarities(const RelationalLanguage& lang, const Formula& f,
                        int polarity, Assignment& alpha,
                        std::map<Cell, int>& cells) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      std::vector<std::size_t> tuple;
      for (const Term& t : f.terms) {
        if (t.kind == Term::Kind::Variable)
          tuple.push_back(alpha.get(t.name));
        else
          tuple.push_back(lang.element_of(t.name));
      }
      cells[Cell{f.name, Structure::table_index(lang.domain_size(), tuple)}] |=
          polarity;
      return;
    }
    case Formula::Kind::Proposition:
    case Formula::Kind::Equality:
    case Formula::Kind::Falsum:
      return;
    case Formula::Kind::Not: {
      int flipped = ((polarity & kPos) ? kNeg : 0) | ((polarity & kNeg) ? kPos : 0);
      collect_polarities(lang, f.subs[0], flipped, alpha, cells);
      return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
      collect_polarities(lang, f.subs[0], polarity, alpha, cells);
      collect_polarities(lang, f.subs[1], polarity, alpha, cells);
      return;
    case Formula::Kind::Implies: {
      int flipped = ((polarity & kPos) ? kNeg : 0) | ((polarity & kNeg) ? kPos : 0);
      collect_polarities(lang, f.subs[0], flipped, alpha, cells);
      collect_polarities(lang, f.subs[1], polarity, alpha, cells);
      return;
    }
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      std::size_t saved = alpha.get(f.name);
      bool had = alpha.values.count(f.name) != 0;
      for (std::size_t d = 0; d < lang.domain_size(); ++d) {
        alpha.values[f.name] = d;
        collect_polarities(lang, f.subs[0], polarity, alpha, cells);
      }
      if (had)
        alpha.values[f.name] = saved;
      else
        alpha.values.erase(f.name);
      return;
    }
  }
}

enum class CellClass { Supported, Free, Negated };

// Allowed predicate values per class: supported facts are designated {t, b},
// atoms outside the basis must keep their negations designated {f, b}, facts
// dropped from the support are unconstrained {f, t, b}.
std::vector<TruthValue> allowed_values(CellClass c) {
  switch (c) {
    case CellClass::Supported:
      return {TruthValue::Both, TruthValue::True};
    case CellClass::Free:
      return {TruthValue::False, TruthValue::Both, TruthValue::True};
    case CellClass::Negated:
      return {TruthValue::False, TruthValue::Both};
  }
  return {};
}

TruthValue min_allowed(CellClass c) {
  return c == CellClass::Supported ? TruthValue::Both : TruthValue::False;
}
TruthValue max_allowed(CellClass c) {
  return c == CellClass::Negated ? TruthValue::Both : TruthValue::True;
}

}  // namespace

bool support_entails(const RelationalLanguage& lang, const FactBase& basis,
                     const std::vector<bool>& kept, const Formula& instance,
                     const Limits& limits) {
  std::size_t n = lang.domain_size();

  std::map<Cell, CellClass> classes;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<std::size_t> tuple;
    for (const auto& c : basis[i].args) tuple.push_back(lang.element_of(c));
    Cell cell{basis[i].predicate, Structure::table_index(n, tuple)};
    classes[cell] = kept[i] ? CellClass::Supported : CellClass::Free;
  }
  auto class_of = [&classes](const Cell& cell) {
    auto it = classes.find(cell);
    return it == classes.end() ? CellClass::Negated : it->second;
  };

  Assignment alpha;
  std::map<Cell, int> polarities;
  collect_polarities(lang, instance, kPos, alpha, polarities);

  // Monotone occurrences take the least allowed value, antitone ones the
  // greatest; only genuinely mixed cells need exact enumeration.
  std::vector<std::pair<Cell, std::vector<TruthValue>>> mixed;
  Structure skeleton = canonical_structure(lang, {}, 0);
  for (const auto& [cell, polarity] : polarities) {
    CellClass cls = class_of(cell);
    if (polarity == (kPos | kNeg)) {
      mixed.emplace_back(cell, allowed_values(cls));
    } else {
      skeleton.mutable_predicate_table(cell.pred)[cell.index] =
          polarity == kPos ? min_allowed(cls) : max_allowed(cls);
    }
  }

  std::uint64_t combos = 1;
  for (const auto& [cell, values] : mixed) {
    combos *= values.size();
    if (combos > limits.max_value_combinations)
      throw ResourceLimitError(
          "too many mixed-polarity cells in the query instance");
  }

  std::vector<std::size_t> pick(mixed.size(), 0);
  const Formula one[] = {instance};
  while (true) {
    for (std::size_t i = 0; i < mixed.size(); ++i)
      skeleton.mutable_predicate_table(mixed[i].first.pred)[mixed[i].first.index] =
          mixed[i].second[pick[i]];
    if (!is_model(skeleton, one)) return false;
    std::size_t i = 0;
    for (; i < mixed.size(); ++i) {
      if (++pick[i] < mixed[i].second.size()) break;
      pick[i] = 0;
    }
    if (i == mixed.size()) return true;
  }
}

// ---------------------------------------------------------------------------
// Consistent answers

namespace {

struct ComplianceTable {
  std::vector<bool> compliant;  // indexed by kept-fact mask
  std::vector<std::uint64_t> maximal_masks;
};

ComplianceTable compliance_table(const Database& db) {
  std::size_t n = db.basis.size();
  if (n > db.limits.max_basis)
    throw ResourceLimitError("basis too large for subset enumeration (" +
                             std::to_string(n) + " facts)");
  std::uint64_t masks = std::uint64_t{1} << n;
  ComplianceTable out;
  out.compliant.resize(masks, false);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    FactBase subset;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) subset.push_back(db.basis[i]);
    out.compliant[mask] =
        base_satisfies_constraints(db.lang, subset, db.constraints);
  }
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    if (!out.compliant[mask]) continue;
    bool maximal = true;
    for (std::size_t j = 0; j < n && maximal; ++j)
      if (!((mask >> j) & 1) && out.compliant[mask | (std::uint64_t{1} << j)])
        maximal = false;
    if (maximal) out.maximal_masks.push_back(mask);
  }
  return out;
}

}  // namespace

std::vector<AnswerTuple> consistent_answers(const Database& db, const Query& q) {
  require_applicable(q, db);
  ComplianceTable table = compliance_table(db);
  std::size_t n = db.basis.size();
  std::vector<AnswerTuple> out;
  for_each_tuple(db, q.head.size(), [&](const AnswerTuple& tuple) {
    Formula instance = instantiate(q, tuple);
    for (std::uint64_t mask : table.maximal_masks) {
      std::vector<bool> kept(n, false);
      for (std::size_t i = 0; i < n; ++i) kept[i] = (mask >> i) & 1;
      if (support_entails(db.lang, db.basis, kept, instance, db.limits)) {
        out.push_back(tuple);
        break;
      }
    }
  });
  return out;
}

std::vector<FactBase> minimal_conflicts(const Database& db) {
  ComplianceTable table = compliance_table(db);
  std::size_t n = db.basis.size();
  std::uint64_t masks = std::uint64_t{1} << n;
  std::vector<FactBase> out;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    if (table.compliant[mask]) continue;
    bool minimal = true;
    for (std::size_t j = 0; j < n && minimal; ++j)
      if ((mask >> j) & 1 && !table.compliant[mask & ~(std::uint64_t{1} << j)])
        minimal = false;
    if (!minimal) continue;
    FactBase subset;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) subset.push_back(db.basis[i]);
    out.push_back(std::move(subset));
  }
  return out;
}

std::vector<Formula> consistent_core(const Database& db) {
  std::vector<FactBase> conflicts = minimal_conflicts(db);
  std::set<Fact> tainted;
  for (const FactBase& c : conflicts)
    for (const Fact& f : c) tainted.insert(f);

  std::vector<Formula> out;
  for (const Fact& f : db.basis)
    if (!tainted.count(f)) out.push_back(f.to_formula());

  // Negations of every atom outside the basis are theory-derivable.
  for (const auto& [pred, arity] : db.lang.predicates()) {
    const auto& constants = db.lang.constants();
    std::vector<std::size_t> idx(arity, 0);
    while (true) {
      Fact fact{pred, {}};
      for (std::size_t i : idx) fact.args.push_back(constants[i]);
      if (!std::binary_search(db.basis.begin(), db.basis.end(), fact))
        out.push_back(Formula::negation(fact.to_formula()));
      std::size_t i = arity;
      bool done = arity == 0;
      while (i > 0) {
        --i;
        if (++idx[i] < constants.size()) break;
        idx[i] = 0;
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Repairs

bool leq_lambda(const FactBase& lambda, const FactBase& lambda1,
                const FactBase& lambda2) {
  auto symdiff = [](const FactBase& a, const FactBase& b) {
    FactBase out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
  };
  FactBase d1 = symdiff(lambda, lambda1);
  FactBase d2 = symdiff(lambda, lambda2);
  return std::includes(d2.begin(), d2.end(), d1.begin(), d1.end());
}

bool consistent_with(const RelationalLanguage& lang, const FactBase& base,
                     std::span<const Formula> constraints) {
  return base_satisfies_constraints(lang, base, constraints);
}

namespace {

std::vector<Fact> atom_universe(const RelationalLanguage& lang) {
  std::vector<Fact> out;
  const auto& constants = lang.constants();
  for (const auto& [pred, arity] : lang.predicates()) {
    std::vector<std::size_t> idx(arity, 0);
    while (true) {
      Fact fact{pred, {}};
      for (std::size_t i : idx) fact.args.push_back(constants[i]);
      out.push_back(std::move(fact));
      std::size_t i = arity;
      bool done = arity == 0;
      while (i > 0) {
        --i;
        if (++idx[i] < constants.size()) break;
        idx[i] = 0;
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return out;
}

}  // namespace

RepairResult repairs(const Database& db) {
  std::size_t n = db.basis.size();
  if (n > db.limits.max_basis)
    throw ResourceLimitError("basis too large for repair search (" +
                             std::to_string(n) + " facts)");
  // A compliant basis is its own unique repair: the empty difference is
  // contained in every other.
  if (base_satisfies_constraints(db.lang, db.basis, db.constraints)) {
    RepairResult out;
    out.repairs.push_back(db.basis);
    return out;
  }
  std::uint64_t masks = std::uint64_t{1} << n;

  std::vector<Fact> additions_pool;
  for (const Fact& f : atom_universe(db.lang))
    if (!std::binary_search(db.basis.begin(), db.basis.end(), f))
      additions_pool.push_back(f);

  struct Candidate {
    FactBase diff;
    FactBase base;
  };
  std::vector<Candidate> found;

  // All deletions. A violating instance is remembered per sub-base, so the
  // addition pass can dismiss candidates that leave it in place.
  std::vector<bool> deletion_compliant(masks, false);
  std::vector<MarkedStructure::Witness> witnesses(masks);
  std::vector<std::uint64_t> compliant_masks;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    FactBase subset, removed;
    for (std::size_t i = 0; i < n; ++i)
      ((mask >> i) & 1 ? subset : removed).push_back(db.basis[i]);
    MarkedStructure marked(db.lang, subset);
    if (marked.satisfies(db.constraints, &witnesses[mask])) {
      deletion_compliant[mask] = true;
      compliant_masks.push_back(mask);
      found.push_back(Candidate{removed, subset});
    }
  }

  // Deletions combined with up to max_additions added atoms. Masks whose
  // kept facts sit inside a compliant sub-base are skipped: their difference
  // strictly contains that sub-base's difference.
  std::vector<bool> dominated(masks, false);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    if (deletion_compliant[mask]) {
      dominated[mask] = true;
      continue;
    }
    for (std::uint64_t good : compliant_masks) {
      if ((mask & good) == mask) {
        dominated[mask] = true;
        break;
      }
    }
  }

  std::uint32_t budget =
      std::min<std::uint32_t>(db.limits.max_additions,
                              static_cast<std::uint32_t>(additions_pool.size()));
  std::vector<std::size_t> pick;
  auto add_combinations = [&](auto&& self, std::size_t start,
                              std::size_t remaining) -> void {
    if (!pick.empty()) {
      for (std::uint64_t mask = 0; mask < masks; ++mask) {
        if (dominated[mask]) continue;
        FactBase base, diff;
        for (std::size_t i = 0; i < n; ++i)
          ((mask >> i) & 1 ? base : diff).push_back(db.basis[i]);
        for (std::size_t p : pick) {
          base.push_back(additions_pool[p]);
          diff.push_back(additions_pool[p]);
        }
        base = normalize_base(std::move(base));
        MarkedStructure marked(db.lang, base);
        if (!marked.witness_designated(db.constraints, witnesses[mask]))
          continue;  // the recorded violation is still there
        if (marked.satisfies(db.constraints))
          found.push_back(Candidate{normalize_base(std::move(diff)), base});
      }
    }
    if (remaining == 0) return;
    for (std::size_t i = start; i < additions_pool.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1, remaining - 1);
      pick.pop_back();
    }
  };
  add_combinations(add_combinations, 0, budget);

  RepairResult out;
  out.additions_capped = db.limits.max_additions < additions_pool.size();
  // Smallest differences first; the survivors form an antichain, so each
  // candidate only needs to be checked against those.
  std::sort(found.begin(), found.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.diff.size() < b.diff.size();
            });
  std::vector<const Candidate*> minimal;
  for (const Candidate& c : found) {
    bool dominated_by_smaller = false;
    for (const Candidate* m : minimal) {
      if (std::includes(c.diff.begin(), c.diff.end(), m->diff.begin(),
                        m->diff.end()) &&
          !(m->diff == c.diff)) {
        dominated_by_smaller = true;
        break;
      }
    }
    if (!dominated_by_smaller) minimal.push_back(&c);
  }
  for (const Candidate* m : minimal) out.repairs.push_back(m->base);
  std::sort(out.repairs.begin(), out.repairs.end());
  out.repairs.erase(std::unique(out.repairs.begin(), out.repairs.end()),
                    out.repairs.end());
  return out;
}

StrongAnswerResult strongly_consistent_answers(const Database& db,
                                               const Query& q) {
  require_applicable(q, db);
  RepairResult repair_result = repairs(db);
  StrongAnswerResult out;
  out.additions_capped = repair_result.additions_capped;
  out.vacuous = repair_result.repairs.empty();
  for_each_tuple(db, q.head.size(), [&](const AnswerTuple& tuple) {
    Formula instance = instantiate(q, tuple);
    for (const FactBase& repair : repair_result.repairs) {
      if (!theory_entails(db.lang, repair, instance, db.limits)) return;
    }
    out.tuples.push_back(tuple);
  });
  return out;
}

std::string print_answer_tuple(const AnswerTuple& t) {
  if (t.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += t[i];
  }
  return out;
}

}  // namespace bdl
