#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "levelset/enumeration.hpp"
#include "levelset/measures.hpp"
#include "levelset/rational.hpp"

namespace levelset {

/// Closed interval [lo, hi]; lo == hi is an isolated point.
struct Interval {
  Rational lo;
  Rational hi;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint closed intervals, sorted and maximally merged (touching
/// intervals are joined). Range sets always contain 0.
class RangeSet {
 public:
  /// The range of the zero measure, {0}.
  RangeSet();
  /// Sorts and merges; throws InvalidInput when some lo > hi.
  static RangeSet from_intervals(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool contains(const Rational& x) const;
  /// One connected component.
  bool is_single_interval() const noexcept { return intervals_.size() == 1; }

  friend bool operator==(const RangeSet&, const RangeSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// Sorted distinct {sum of atoms over S : S subset}; kappa is ignored. Includes 0 and the
/// atomic total. Direct 2^n scan up to 20 atoms, meet-in-the-middle above.
/// Throws ResourceLimit beyond options.max_atoms.
std::vector<Rational> subset_sums(const AtomicMeasure& m, const EnumerationOptions& options = {});

/// Maximal merge of [s, s + kappa] over the subset sums s.
RangeSet range(const AtomicMeasure& m, const EnumerationOptions& options = {});

/// Sorted distinct signed subset sums, computed as subset_sums(|mu|) + mu(Omega^-).
std::vector<Rational> signed_range(const SignedAtomicMeasure& m,
                                   const EnumerationOptions& options = {});

/// Indices i with kappa + sum{a_k : a_k < a_i} < a_i (strict on both sides).
std::vector<std::size_t> bullies(const AtomicMeasure& m);

/// a_i <= kappa + sum_{j>i} a_j for every i in non-increasing order; equivalent to
/// bullies(m) being empty.
bool is_interval(const AtomicMeasure& m);

/// Consecutive differences all equal; length <= 2 is trivially true.
bool is_arithmetic_progression(const std::vector<Rational>& points);

/// Streaming digest of the range for measures too large to materialize.
struct RangeSummary {
  Rational total;
  std::size_t point_count = 0;          // distinct subset sums of the atoms
  bool arithmetic_progression = false;  // of those subset sums
  std::size_t interval_count = 0;       // connected components of the range
  std::optional<RangeSet> range;        // present when interval_count <= the cap

  friend bool operator==(const RangeSummary&, const RangeSummary&) = default;
};

RangeSummary summarize_range(const AtomicMeasure& m, const EnumerationOptions& options = {},
                             std::size_t materialize_cap = 4096);

}  // namespace levelset
