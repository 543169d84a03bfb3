#include <doctest.h>

#include "levelset/errors.hpp"
#include "levelset/measures.hpp"

using namespace levelset;

namespace {

std::vector<Rational> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("atomic measures sort non-increasing and keep kappa") {
  AtomicMeasure m(ints({1, 5, 2, 2}), Rational(1, 2));
  CHECK(m.atoms() == ints({5, 2, 2, 1}));
  CHECK(m.kappa() == Rational(1, 2));
  CHECK(m.atomic_total() == Rational(10));
  CHECK(m.total() == Rational(21, 2));
  CHECK(m.scaled(Rational(2)).atoms() == ints({10, 4, 4, 2}));
  CHECK(m.scaled(Rational(2)).kappa() == Rational(1));
}

TEST_CASE("atomic measures reject bad masses") {
  CHECK_THROWS_AS(AtomicMeasure(ints({1, 0})), InvalidInput);
  CHECK_THROWS_AS(AtomicMeasure(ints({1, -2})), InvalidInput);
  CHECK_THROWS_AS(AtomicMeasure(ints({1}), Rational(-1)), InvalidInput);
  CHECK_FALSE(AtomicMeasure({}, Rational(1)).empty());
  CHECK(AtomicMeasure(std::vector<Rational>{}).empty());
}

TEST_CASE("sorting_permutation matches the measure's order") {
  const auto values = ints({1, 5, 2, 2});
  const auto perm = sorting_permutation(values);
  AtomicMeasure m(values);
  REQUIRE(perm.size() == values.size());
  for (std::size_t i = 0; i < perm.size(); ++i) CHECK(m.atom(i) == values[perm[i]]);
  CHECK(perm == std::vector<std::size_t>{1, 2, 3, 0});
}

TEST_CASE("proportionality ignores the slope without a nonatomic part") {
  AtomicMeasure m(ints({3, 1}));
  CHECK(is_proportional(m, CandidateMeasure{ints({6, 2}), Rational(5)}));
  CHECK_FALSE(is_proportional(m, CandidateMeasure{ints({6, 3}), Rational{}}));
  AtomicMeasure mk(ints({3, 1}), Rational(1));
  CHECK(is_proportional(mk, CandidateMeasure{ints({6, 2}), Rational(2)}));
  CHECK_FALSE(is_proportional(mk, CandidateMeasure{ints({6, 2}), Rational(1)}));
  CHECK_THROWS_AS(is_proportional(m, CandidateMeasure{ints({1}), Rational{}}), InvalidInput);
}

TEST_CASE("strict positivity") {
  AtomicMeasure m(ints({3, 1}), Rational(1));
  CHECK(is_strictly_positive(m, CandidateMeasure{ints({1, 1}), Rational(1)}));
  CHECK_FALSE(is_strictly_positive(m, CandidateMeasure{ints({1, 1}), Rational(0)}));
  CHECK_FALSE(is_strictly_positive(AtomicMeasure(ints({3, 1})), CandidateMeasure{ints({1, 0}), Rational{}}));
}

TEST_CASE("signed measures split into Hahn parts") {
  SignedAtomicMeasure s({Rational(2, 3), Rational(-2, 3), Rational(2, 9), Rational(-1, 9)});
  const auto hahn = hahn_decompose(s);
  CHECK(hahn.positive == std::vector<std::size_t>{0, 2});
  CHECK(hahn.negative == std::vector<std::size_t>{1, 3});
  CHECK(s.negative_total() == Rational(-7, 9));
  CHECK(s.positive_total() == Rational(8, 9));
  CHECK(s.total_variation() == Rational(15, 9));
  CHECK(absolute_measure(s).atoms() == std::vector<Rational>{Rational(2, 3), Rational(2, 3), Rational(2, 9), Rational(1, 9)});
  CHECK(positive_part(s).atoms() == std::vector<Rational>{Rational(2, 3), Rational(2, 9)});
  CHECK(negative_part(s).atoms() == std::vector<Rational>{Rational(2, 3), Rational(1, 9)});
  CHECK_THROWS_AS(SignedAtomicMeasure({Rational(1), Rational(0)}), InvalidInput);
}

TEST_CASE("transform_nu negates values on the negative set") {
  CandidateMeasure nu{ints({1, 2, 3}), Rational(4)};
  const auto t = transform_nu(nu, {1});
  CHECK(t.atom_values == ints({1, -2, 3}));
  CHECK(t.continuous_slope == Rational(4));
  CHECK(transform_nu(t, {1}) == nu);
  CHECK_THROWS_AS(transform_nu(nu, {3}), InvalidInput);
}
