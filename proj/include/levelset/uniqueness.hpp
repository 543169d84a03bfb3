#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levelset/enumeration.hpp"
#include "levelset/errors.hpp"
#include "levelset/measures.hpp"
#include "levelset/relations.hpp"

namespace levelset {

enum class Verdict { unique, non_unique };

/// Which rank test produced the verdict.
enum class Criterion {
  relation_rank,   // kappa = 0: rank of R must be n - 1
  augmented_rank,  // kappa > 0: rank of the rows (r, -<r,a>) must be n
};

/// Two disjoint atom index sets together with their mu and nu masses.
struct SubsetPair {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  Rational mu_first, mu_second;
  Rational nu_first, nu_second;

  friend bool operator==(const SubsetPair&, const SubsetPair&) = default;
};

/// Result of checking (L) or (O): on failure, a concrete violating pair of subsets.
struct ConditionCheck {
  bool holds = true;
  std::optional<SubsetPair> violation;
  std::string diagnostic;

  explicit operator bool() const noexcept { return holds; }
};

struct UniquenessCertificate {
  Verdict verdict = Verdict::unique;
  Criterion criterion = Criterion::relation_rank;
  std::size_t rank = 0;
  std::size_t threshold = 0;
  RelationBasis basis;
  std::optional<CandidateMeasure> witness;   // NonUnique only
  std::optional<bool> witness_satisfies_O;   // NonUnique, kappa = 0 and n <= 14 only
  bool witness_positive = false;
  std::size_t relations_visited = 0;
};

/// The graph of the level function f(w) = nu(A) for mu(A) = w, sorted by w.
struct LevelFunction {
  std::vector<std::pair<Rational, Rational>> pairs;

  /// f(w); throws InvalidInput when w is not a value of mu.
  const Rational& operator()(const Rational& w) const;
};

/// Raised by level_function when (L) fails: the two subsets have equal mu but
/// different nu.
class WellDefinednessError : public Error {
 public:
  explicit WellDefinednessError(SubsetPair pair);
  const SubsetPair& pair() const noexcept { return pair_; }

 private:
  SubsetPair pair_;
};

/// Decides whether (L) determines m up to a constant. kappa = 0: the relation set
/// must have rank n - 1. kappa > 0: the augmented rows (r, -<r,a>) over all r with
/// |<r,a>| <= kappa must have rank n. NonUnique verdicts carry a witness.
/// Throws InvalidInput for the empty measure (no atoms, kappa = 0).
UniquenessCertificate decide_L_unique(const AtomicMeasure& m, const EnumerationOptions& options = {});

/// Positive witness nu' = mu + g*w from the solution space of the relation system,
/// normalized to coprime integers. Throws std::logic_error when the basis already has
/// full rank.
CandidateMeasure witness(const AtomicMeasure& m, const RelationBasis& basis);

/// (L) for nu against m: <r, nu> = gamma <r, a> for every (augmented) relation r.
/// Checked against a greedy relation basis; the first violated basis vector is also
/// the lexicographically first violated relation.
ConditionCheck check_L(const AtomicMeasure& m, const CandidateMeasure& nu,
                       const EnumerationOptions& options = {});

/// Oracle for (L): all 2^n subsets, equal mu-sums must give equal nu-sums.
/// kappa = 0 and n <= 14 only.
ConditionCheck check_L_oracle(const AtomicMeasure& m, const CandidateMeasure& nu);

/// (O) through the level function: f well defined and non-decreasing.
/// kappa = 0 and n <= 14 only.
ConditionCheck check_O(const AtomicMeasure& m, const CandidateMeasure& nu);

/// Throws WellDefinednessError when (L) fails. kappa = 0 and n <= 14 only.
LevelFunction level_function(const AtomicMeasure& m, const CandidateMeasure& nu);

std::string to_string(Verdict v);
std::string to_string(Criterion c);

}  // namespace levelset
