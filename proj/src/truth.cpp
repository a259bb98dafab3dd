#include "truth.hpp"

#include <stdexcept>

namespace bdl {

bool tv_leq(TruthValue a, TruthValue b) {
  if (a == b) return true;
  if (a == TruthValue::False) return true;
  if (b == TruthValue::True) return true;
  return false;  // b and n are incomparable
}

TruthValue tv_not(TruthValue a) {
  switch (a) {
    case TruthValue::True:
      return TruthValue::False;
    case TruthValue::False:
      return TruthValue::True;
    default:
      return a;
  }
}

TruthValue tv_and(TruthValue a1, TruthValue a2) {
  if (tv_leq(a1, a2)) return a1;
  if (tv_leq(a2, a1)) return a2;
  return TruthValue::False;  // inf of the incomparable pair
}

TruthValue tv_or(TruthValue a1, TruthValue a2) {
  if (tv_leq(a1, a2)) return a2;
  if (tv_leq(a2, a1)) return a1;
  return TruthValue::True;  // sup of the incomparable pair
}

TruthValue tv_impl(TruthValue a1, TruthValue a2) {
  return is_designated(a1) ? a2 : TruthValue::True;
}

TruthValue tv_quant(QuantifierKind kind, const std::vector<TruthValue>& values) {
  if (values.empty()) throw std::invalid_argument("tv_quant: empty value set");
  TruthValue acc = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) {
    acc = kind == QuantifierKind::ForAll ? tv_and(acc, values[i])
                                         : tv_or(acc, values[i]);
  }
  return acc;
}

char tv_letter(TruthValue v) {
  switch (v) {
    case TruthValue::True:
      return 't';
    case TruthValue::False:
      return 'f';
    case TruthValue::Both:
      return 'b';
    case TruthValue::Neither:
      return 'n';
  }
  return '?';
}

std::string to_string(TruthValue v) { return std::string(1, tv_letter(v)); }

}  // namespace bdl
