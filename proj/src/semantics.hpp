#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "syntax.hpp"
#include "truth.hpp"

namespace bdl {

enum class StructureFlavor {
  Plain,   // equality designated exactly on the diagonal
  Bottom,  // domain contains a distinguished bottom element; equality is n
           // whenever the bottom element is involved
};

// Total variable assignment: explicitly mapped variables, default element for
// the rest.
struct Assignment {
  std::map<std::string, std::size_t> values;
  std::size_t fallback = 0;

  std::size_t get(const std::string& var) const {
    auto it = values.find(var);
    return it == values.end() ? fallback : it->second;
  }
  Assignment with(const std::string& var, std::size_t element) const {
    Assignment out = *this;
    out.values[var] = element;
    return out;
  }
};

// A finite structure: domain elements are 0..size-1. In the Bottom flavor,
// element 0 is the bottom element.
class Structure {
 public:
  static constexpr std::size_t kBottomElement = 0;

  // Predicate and function tables are flattened row-major over the domain.
  Structure(StructureFlavor flavor, std::size_t domain_size, Signature sig,
            std::map<std::string, std::size_t> const_interp,
            std::map<std::string, std::vector<std::size_t>> func_interp,
            std::map<std::string, TruthValue> prop_interp,
            std::map<std::string, std::vector<TruthValue>> pred_interp,
            std::vector<TruthValue> eq_interp);

  StructureFlavor flavor() const { return flavor_; }
  std::size_t domain_size() const { return domain_size_; }
  const Signature& signature() const { return sig_; }

  std::size_t constant_value(const std::string& name) const;
  TruthValue proposition_value(const std::string& name) const;
  TruthValue equality_value(std::size_t d1, std::size_t d2) const {
    return eq_interp_[d1 * domain_size_ + d2];
  }
  TruthValue predicate_value(const std::string& name,
                             const std::vector<std::size_t>& tuple) const;
  const std::vector<TruthValue>& predicate_table(const std::string& name) const;
  std::vector<TruthValue>& mutable_predicate_table(const std::string& name);

  std::size_t eval_term(const Assignment& alpha, const Term& t) const;
  TruthValue eval_formula(const Assignment& alpha, const Formula& f) const;

  static std::size_t table_index(std::size_t domain_size,
                                 const std::vector<std::size_t>& tuple);

  bool operator==(const Structure& other) const;

 private:
  StructureFlavor flavor_;
  std::size_t domain_size_;
  Signature sig_;
  std::map<std::string, std::size_t> const_interp_;
  std::map<std::string, std::vector<std::size_t>> func_interp_;
  std::map<std::string, TruthValue> prop_interp_;
  std::map<std::string, std::vector<TruthValue>> pred_interp_;
  std::vector<TruthValue> eq_interp_;
};

// True iff every formula is designated under every assignment of its free
// variables.
bool is_model(const Structure& s, std::span<const Formula> gamma);

// Logical consequence over a finite structure family: in every structure and
// under every assignment of the free variables of gamma and delta, if all of
// gamma is designated then some member of delta is designated.
bool entails_over(std::span<const Structure> family,
                  std::span<const Formula> gamma,
                  std::span<const Formula> delta);

}  // namespace bdl
