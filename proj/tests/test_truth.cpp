#include "doctest.h"

#include <stdexcept>

#include "truth.hpp"

using namespace bdl;

namespace {

constexpr TruthValue T = TruthValue::True;
constexpr TruthValue F = TruthValue::False;
constexpr TruthValue B = TruthValue::Both;
constexpr TruthValue N = TruthValue::Neither;

// The matrix, written out by hand. Row/column order: t, f, b, n.
constexpr TruthValue kNot[4] = {F, T, B, N};
constexpr TruthValue kAnd[4][4] = {
    {T, F, B, N},
    {F, F, F, F},
    {B, F, B, F},
    {N, F, F, N},
};
constexpr TruthValue kOr[4][4] = {
    {T, T, T, T},
    {T, F, B, N},
    {T, B, B, T},
    {T, N, T, N},
};
constexpr TruthValue kImpl[4][4] = {
    {T, F, B, N},
    {T, T, T, T},
    {T, F, B, N},
    {T, T, T, T},
};

}  // namespace

TEST_CASE("negation table") {
  for (int i = 0; i < 4; ++i)
    CHECK(tv_not(kAllTruthValues[i]) == kNot[i]);
}

TEST_CASE("conjunction and disjunction are lattice inf and sup") {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(tv_and(kAllTruthValues[i], kAllTruthValues[j]) == kAnd[i][j]);
      CHECK(tv_or(kAllTruthValues[i], kAllTruthValues[j]) == kOr[i][j]);
    }
  }
  CHECK(tv_and(B, N) == F);
  CHECK(tv_or(B, N) == T);
  CHECK(tv_and(T, B) == B);
}

TEST_CASE("implication is classical on the antecedent's designation") {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(tv_impl(kAllTruthValues[i], kAllTruthValues[j]) == kImpl[i][j]);
  CHECK(tv_impl(N, F) == T);
  CHECK(tv_impl(B, F) == F);
  CHECK(tv_impl(T, T) == T);
}

TEST_CASE("quantifier folds") {
  CHECK(tv_quant(QuantifierKind::ForAll, {T, B, N}) == F);
  CHECK(tv_quant(QuantifierKind::Exists, {F, N}) == N);
  CHECK(tv_quant(QuantifierKind::ForAll, {T}) == T);
  CHECK_THROWS_AS(tv_quant(QuantifierKind::ForAll, {}), std::invalid_argument);
}

TEST_CASE("lattice order") {
  CHECK(tv_leq(F, B));
  CHECK(tv_leq(F, N));
  CHECK(tv_leq(B, T));
  CHECK(tv_leq(N, T));
  CHECK(!tv_leq(B, N));
  CHECK(!tv_leq(N, B));
  CHECK(!tv_leq(T, F));
}

TEST_CASE("designated values") {
  CHECK(is_designated(T));
  CHECK(is_designated(B));
  CHECK(!is_designated(F));
  CHECK(!is_designated(N));
}
