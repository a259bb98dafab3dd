#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bdl {

// The four truth values, ordered in the truth lattice: f is the least
// element, t the greatest, and b and n sit incomparably between them.
// The designated values are t and b.
enum class TruthValue : std::uint8_t {
  False = 0,
  Neither = 1,
  Both = 2,
  True = 3,
};

inline constexpr TruthValue kAllTruthValues[4] = {
    TruthValue::True, TruthValue::False, TruthValue::Both, TruthValue::Neither};

constexpr bool is_designated(TruthValue v) {
  return v == TruthValue::True || v == TruthValue::Both;
}

// Lattice order (f <= b <= t, f <= n <= t; b, n incomparable).
bool tv_leq(TruthValue a, TruthValue b);

TruthValue tv_not(TruthValue a);
TruthValue tv_and(TruthValue a1, TruthValue a2);  // lattice inf
TruthValue tv_or(TruthValue a1, TruthValue a2);   // lattice sup
// t when the antecedent is undesignated, the consequent's value otherwise.
TruthValue tv_impl(TruthValue a1, TruthValue a2);

enum class QuantifierKind { ForAll, Exists };

// inf (ForAll) or sup (Exists) of a non-empty value set. Throws
// std::invalid_argument on an empty set.
TruthValue tv_quant(QuantifierKind kind, const std::vector<TruthValue>& values);

char tv_letter(TruthValue v);
std::string to_string(TruthValue v);

}  // namespace bdl
