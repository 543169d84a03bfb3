#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "levelset/enumeration.hpp"
#include "levelset/linalg.hpp"
#include "levelset/measures.hpp"
#include "levelset/rational.hpp"

namespace levelset {

/// Nonzero vector over {-1, 0, +1} whose first nonzero entry is +1.
///
/// Such a vector r encodes the pair of disjoint index sets P = {i : r_i = +1} and
/// N = {i : r_i = -1}; <r, a> = 0 says the two sets carry equal mass.
///
/// Ordering is lexicographic with entry order 0 < +1 < -1 (i.e. by the base-3 code
/// 0 -> 0, +1 -> 1, -1 -> 2). Every enumeration in the library emits in this order.
class SignVector {
 public:
  /// Throws InvalidInput unless entries are in {-1,0,1}, not all zero, and the first
  /// nonzero entry is +1.
  explicit SignVector(std::vector<std::int8_t> entries);
  /// Same, but flips the sign first if the leading nonzero entry is -1.
  static SignVector canonical(std::vector<std::int8_t> entries);
  /// Parses the compact form, e.g. "+0+-".
  static SignVector parse(std::string_view text);

  std::string str() const;
  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const std::int8_t> entries() const noexcept { return entries_; }

  Rational dot(std::span<const Rational> values) const;
  RationalVector to_rational() const;

  /// Indices of the +1 and -1 entries.
  std::vector<std::size_t> positive_support() const;
  std::vector<std::size_t> negative_support() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend std::strong_ordering operator<=>(const SignVector& a, const SignVector& b);

 private:
  std::vector<std::int8_t> entries_;
};

/// A sign vector r whose mass defect <r, a> is absorbed by the nonatomic part:
/// kappa_component t = -<r, a> with |t| <= kappa.
struct AugmentedRelation {
  SignVector sign_part;
  Rational kappa_component;

  /// The constraint row (r, t) against the unknowns (nu, gamma).
  RationalVector row() const;

  friend bool operator==(const AugmentedRelation&, const AugmentedRelation&) = default;
};

/// Maximal independent set of relations. kappa_components is empty for the plain
/// (kappa = 0) system and parallel to vectors for the augmented system.
struct RelationBasis {
  std::vector<SignVector> vectors;
  std::vector<Rational> kappa_components;
  std::size_t rank = 0;
  bool augmented = false;

  RationalMatrix rows() const;
  friend bool operator==(const RelationBasis&, const RelationBasis&) = default;
};

/// Callback for streamed relations: (r, <r, a>). Return false to stop the enumeration.
using RelationVisitor = std::function<bool(const SignVector&, const Rational& defect)>;

/// Streams every sign vector r with |<r, atoms>| <= tolerance in lexicographic order.
/// Returns the number of relations delivered.
///
/// Masses are rescaled to a common integer grid; the direct path is an odometer over
/// all 3^n vectors, the meet-in-the-middle path joins the 3^(n/2) half sums of the
/// right half (sorted) against a lexicographic sweep of the left half.
std::size_t for_each_relation(std::span<const Rational> atoms, const Rational& tolerance,
                              const EnumerationOptions& options, const RelationVisitor& visit);

/// R = {r : <r, atoms> = 0}, canonical and lexicographically ordered.
std::vector<SignVector> enumerate_relations(std::span<const Rational> atoms,
                                            const EnumerationOptions& options = {});

/// Independent oracle: plain 3^n scan in arbitrary-precision integers. n <= 14.
std::vector<SignVector> brute_force_relations(std::span<const Rational> atoms);

/// Oracle for kappa_relations, by the same plain 3^n scan. n <= 14.
std::vector<AugmentedRelation> brute_force_kappa_relations(std::span<const Rational> atoms,
                                                           const Rational& kappa);

/// Every r with |<r, atoms>| <= kappa, as (r, t = -<r, atoms>).
std::vector<AugmentedRelation> kappa_relations(std::span<const Rational> atoms,
                                               const Rational& kappa,
                                               const EnumerationOptions& options = {});

/// Exact rank over Q (fraction-free elimination). Throws InvalidInput for ragged input.
std::size_t relation_rank(const RationalMatrix& vectors);
std::size_t relation_rank(const std::vector<SignVector>& vectors);

/// Greedy maximal independent subset in the given order.
RelationBasis relation_basis(const std::vector<SignVector>& vectors);
RelationBasis relation_basis(const std::vector<AugmentedRelation>& relations);

/// Rank needed for uniqueness: n - 1 for the plain system (kappa = 0), n for the
/// augmented system (kappa > 0).
std::size_t uniqueness_threshold(const AtomicMeasure& m);

/// Relation basis of m computed by streaming: the plain system when kappa = 0, the
/// augmented one when kappa > 0. Stops as soon as the threshold rank is reached, so
/// the greedy basis is the same as over the full list. `visited` receives the number
/// of relations streamed.
RelationBasis measure_relation_basis(const AtomicMeasure& m, const EnumerationOptions& options = {},
                                     std::size_t* visited = nullptr);

}  // namespace levelset
