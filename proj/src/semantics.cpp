#include "semantics.hpp"

#include <algorithm>

namespace bdl {

Structure::Structure(StructureFlavor flavor, std::size_t domain_size,
                     Signature sig,
                     std::map<std::string, std::size_t> const_interp,
                     std::map<std::string, std::vector<std::size_t>> func_interp,
                     std::map<std::string, TruthValue> prop_interp,
                     std::map<std::string, std::vector<TruthValue>> pred_interp,
                     std::vector<TruthValue> eq_interp)
    : flavor_(flavor),
      domain_size_(domain_size),
      sig_(std::move(sig)),
      const_interp_(std::move(const_interp)),
      func_interp_(std::move(func_interp)),
      prop_interp_(std::move(prop_interp)),
      pred_interp_(std::move(pred_interp)),
      eq_interp_(std::move(eq_interp)) {
  if (flavor_ == StructureFlavor::Plain) {
    if (domain_size_ == 0) throw ValidationError("empty domain");
  } else {
    if (domain_size_ < 2)
      throw ValidationError(
          "a bottom-flavor domain needs the bottom element and at least one "
          "other element");
  }
  if (eq_interp_.size() != domain_size_ * domain_size_)
    throw ValidationError("equality table has the wrong size");
  for (std::size_t d1 = 0; d1 < domain_size_; ++d1) {
    for (std::size_t d2 = 0; d2 < domain_size_; ++d2) {
      TruthValue v = equality_value(d1, d2);
      if (flavor_ == StructureFlavor::Plain) {
        if (is_designated(v) != (d1 == d2))
          throw ValidationError(
              "equality must be designated exactly on the diagonal");
      } else {
        bool has_bottom = d1 == kBottomElement || d2 == kBottomElement;
        if ((v == TruthValue::Neither) != has_bottom)
          throw ValidationError(
              "equality must be neither exactly on bottom pairs");
        if (is_designated(v) != (!has_bottom && d1 == d2))
          throw ValidationError(
              "equality must be designated exactly on non-bottom diagonal "
              "pairs");
      }
    }
  }
  for (const auto& [name, value] : const_interp_) {
    if (!sig_.is_constant(name))
      throw ValidationError("interpretation for undeclared constant '" + name + "'");
    if (value >= domain_size_) throw ValidationError("constant value out of range");
  }
  for (const auto& c : sig_.constants())
    if (const_interp_.count(c) == 0)
      throw ValidationError("missing interpretation for constant '" + c + "'");
  for (const auto& [name, arity] : sig_.functions()) {
    auto it = func_interp_.find(name);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < arity; ++i) cells *= domain_size_;
    if (it == func_interp_.end() || it->second.size() != cells)
      throw ValidationError("missing or malformed table for function '" + name + "'");
    for (std::size_t v : it->second)
      if (v >= domain_size_) throw ValidationError("function value out of range");
  }
  for (const auto& p : sig_.propositions())
    if (prop_interp_.count(p) == 0)
      throw ValidationError("missing interpretation for proposition '" + p + "'");
  for (const auto& [name, arity] : sig_.predicates()) {
    auto it = pred_interp_.find(name);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < arity; ++i) cells *= domain_size_;
    if (it == pred_interp_.end() || it->second.size() != cells)
      throw ValidationError("missing or malformed table for predicate '" + name + "'");
  }
}

std::size_t Structure::constant_value(const std::string& name) const {
  auto it = const_interp_.find(name);
  if (it == const_interp_.end())
    throw ValidationError("undeclared constant '" + name + "'");
  return it->second;
}

TruthValue Structure::proposition_value(const std::string& name) const {
  auto it = prop_interp_.find(name);
  if (it == prop_interp_.end())
    throw ValidationError("undeclared proposition '" + name + "'");
  return it->second;
}

TruthValue Structure::predicate_value(const std::string& name,
                                      const std::vector<std::size_t>& tuple) const {
  return predicate_table(name)[table_index(domain_size_, tuple)];
}

const std::vector<TruthValue>& Structure::predicate_table(
    const std::string& name) const {
  auto it = pred_interp_.find(name);
  if (it == pred_interp_.end())
    throw ValidationError("undeclared predicate '" + name + "'");
  return it->second;
}

std::vector<TruthValue>& Structure::mutable_predicate_table(const std::string& name) {
  auto it = pred_interp_.find(name);
  if (it == pred_interp_.end())
    throw ValidationError("undeclared predicate '" + name + "'");
  return it->second;
}

std::size_t Structure::table_index(std::size_t domain_size,
                                   const std::vector<std::size_t>& tuple) {
  std::size_t idx = 0;
  for (std::size_t d : tuple) idx = idx * domain_size + d;
  return idx;
}

std::size_t Structure::eval_term(const Assignment& alpha, const Term& t) const {
  switch (t.kind) {
    case Term::Kind::Variable:
      return alpha.get(t.name);
    case Term::Kind::Constant:
      return constant_value(t.name);
    case Term::Kind::Application: {
      auto it = func_interp_.find(t.name);
      if (it == func_interp_.end())
        throw ValidationError("undeclared function '" + t.name + "'");
      std::vector<std::size_t> tuple;
      tuple.reserve(t.args.size());
      for (const Term& arg : t.args) tuple.push_back(eval_term(alpha, arg));
      return it->second[table_index(domain_size_, tuple)];
    }
  }
  throw ValidationError("unknown term kind");
}

TruthValue Structure::eval_formula(const Assignment& alpha, const Formula& f) const {
  switch (f.kind) {
    case Formula::Kind::Proposition:
      return proposition_value(f.name);
    case Formula::Kind::Atom: {
      std::vector<std::size_t> tuple;
      tuple.reserve(f.terms.size());
      for (const Term& t : f.terms) tuple.push_back(eval_term(alpha, t));
      return predicate_value(f.name, tuple);
    }
    case Formula::Kind::Equality:
      return equality_value(eval_term(alpha, f.terms[0]),
                            eval_term(alpha, f.terms[1]));
    case Formula::Kind::Falsum:
      return TruthValue::False;
    case Formula::Kind::Not:
      return tv_not(eval_formula(alpha, f.subs[0]));
    case Formula::Kind::And:
      return tv_and(eval_formula(alpha, f.subs[0]), eval_formula(alpha, f.subs[1]));
    case Formula::Kind::Or:
      return tv_or(eval_formula(alpha, f.subs[0]), eval_formula(alpha, f.subs[1]));
    case Formula::Kind::Implies:
      return tv_impl(eval_formula(alpha, f.subs[0]), eval_formula(alpha, f.subs[1]));
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      bool universal = f.kind == Formula::Kind::ForAll;
      TruthValue acc = universal ? TruthValue::True : TruthValue::False;
      Assignment inner = alpha;
      for (std::size_t d = 0; d < domain_size_; ++d) {
        inner.values[f.name] = d;
        TruthValue v = eval_formula(inner, f.subs[0]);
        acc = universal ? tv_and(acc, v) : tv_or(acc, v);
        // inf and sup are monotone folds; stop at the lattice extremes.
        if (universal && acc == TruthValue::False) break;
        if (!universal && acc == TruthValue::True) break;
      }
      return acc;
    }
  }
  throw ValidationError("unknown formula kind");
}

bool Structure::operator==(const Structure& other) const {
  return flavor_ == other.flavor_ && domain_size_ == other.domain_size_ &&
         const_interp_ == other.const_interp_ &&
         func_interp_ == other.func_interp_ &&
         prop_interp_ == other.prop_interp_ &&
         pred_interp_ == other.pred_interp_ && eq_interp_ == other.eq_interp_;
}

namespace {

// Enumerates assignments of the given variables over the domain and applies
// `body` until it returns false.
template <typename F>
bool for_each_assignment(const std::vector<std::string>& vars,
                         std::size_t domain_size, F&& body) {
  std::vector<std::size_t> tuple(vars.size(), 0);
  while (true) {
    Assignment alpha;
    for (std::size_t i = 0; i < vars.size(); ++i) alpha.values[vars[i]] = tuple[i];
    if (!body(alpha)) return false;
    std::size_t i = 0;
    for (; i < tuple.size(); ++i) {
      if (++tuple[i] < domain_size) break;
      tuple[i] = 0;
    }
    if (i == tuple.size()) return true;
    if (vars.empty()) return true;
  }
}

}  // namespace

bool is_model(const Structure& s, std::span<const Formula> gamma) {
  for (const Formula& f : gamma) {
    auto fv = free_vars(f);
    std::vector<std::string> vars(fv.begin(), fv.end());
    bool ok = for_each_assignment(vars, s.domain_size(), [&](const Assignment& alpha) {
      return is_designated(s.eval_formula(alpha, f));
    });
    if (!ok) return false;
  }
  return true;
}

bool entails_over(std::span<const Structure> family,
                  std::span<const Formula> gamma,
                  std::span<const Formula> delta) {
  // Closed formulas are assignment-independent; evaluate them once per
  // structure.
  std::vector<const Formula*> gamma_closed, gamma_open;
  std::vector<const Formula*> delta_closed, delta_open;
  std::set<std::string> fv;
  for (const Formula& f : gamma) {
    auto vars = free_vars(f);
    (vars.empty() ? gamma_closed : gamma_open).push_back(&f);
    fv.insert(vars.begin(), vars.end());
  }
  for (const Formula& f : delta) {
    auto vars = free_vars(f);
    (vars.empty() ? delta_closed : delta_open).push_back(&f);
    fv.insert(vars.begin(), vars.end());
  }
  std::vector<std::string> vars(fv.begin(), fv.end());

  Assignment empty;
  for (const Structure& s : family) {
    bool gamma_closed_holds = true;
    for (const Formula* f : gamma_closed) {
      if (!is_designated(s.eval_formula(empty, *f))) {
        gamma_closed_holds = false;
        break;
      }
    }
    if (!gamma_closed_holds) continue;  // premises never all designated here
    bool delta_closed_holds = false;
    for (const Formula* f : delta_closed) {
      if (is_designated(s.eval_formula(empty, *f))) {
        delta_closed_holds = true;
        break;
      }
    }
    if (delta_closed_holds) continue;
    bool ok = for_each_assignment(vars, s.domain_size(), [&](const Assignment& alpha) {
      for (const Formula* f : gamma_open)
        if (!is_designated(s.eval_formula(alpha, *f))) return true;
      for (const Formula* f : delta_open)
        if (is_designated(s.eval_formula(alpha, *f))) return true;
      return false;  // counterexample assignment
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace bdl
