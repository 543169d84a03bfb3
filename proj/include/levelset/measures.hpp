#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "levelset/rational.hpp"

namespace levelset {

/// Finite positive measure: atoms (sorted non-increasing, duplicates kept as distinct
/// atoms) plus the total mass kappa of a nonatomic part.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;

  /// Validates (every atom > 0, kappa >= 0) and sorts atoms non-increasing. The sort is
  /// stable, so equal masses keep their input order; see sorting_permutation().
  explicit AtomicMeasure(std::vector<Rational> atoms, Rational kappa = Rational{});

  const std::vector<Rational>& atoms() const noexcept { return atoms_; }
  const Rational& atom(std::size_t i) const { return atoms_.at(i); }
  const Rational& kappa() const noexcept { return kappa_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty() && kappa_.is_zero(); }

  Rational atomic_total() const;
  Rational total() const { return atomic_total() + kappa_; }

  /// c * mu for c > 0 (atoms and kappa alike).
  AtomicMeasure scaled(const Rational& c) const;

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  std::vector<Rational> atoms_;
  Rational kappa_;
};

/// perm such that sorted[i] == values[perm[i]] for the stable non-increasing order
/// AtomicMeasure uses. Lets callers carry index-aligned data (e.g. a candidate nu)
/// from input order to measure order.
std::vector<std::size_t> sorting_permutation(const std::vector<Rational>& values);

/// Purely atomic signed measure. Atom order is preserved as given.
class SignedAtomicMeasure {
 public:
  SignedAtomicMeasure() = default;
  /// Throws InvalidInput when any mass is zero.
  explicit SignedAtomicMeasure(std::vector<Rational> atoms);

  const std::vector<Rational>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  Rational total_variation() const;
  /// mu(Omega^-): sum of the negative masses (<= 0).
  Rational negative_total() const;
  Rational positive_total() const;

  friend bool operator==(const SignedAtomicMeasure&, const SignedAtomicMeasure&) = default;

 private:
  std::vector<Rational> atoms_;
};

using AnyMeasure = std::variant<AtomicMeasure, SignedAtomicMeasure>;

/// A candidate nu: its values on the reference measure's atoms (same indexing) and the
/// constant slope gamma of nu relative to mu on the nonatomic part. The slope carries no
/// information when the reference has kappa = 0.
struct CandidateMeasure {
  std::vector<Rational> atom_values;
  Rational continuous_slope;

  friend bool operator==(const CandidateMeasure&, const CandidateMeasure&) = default;
};

/// True iff nu = c * mu for a single rational c; the slope takes part only when
/// kappa > 0. Throws InvalidInput on length mismatch.
bool is_proportional(const AtomicMeasure& mu, const CandidateMeasure& nu);

/// Every atom value (and the slope, when kappa > 0) strictly positive.
bool is_strictly_positive(const AtomicMeasure& mu, const CandidateMeasure& nu);

struct HahnPartition {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;

  friend bool operator==(const HahnPartition&, const HahnPartition&) = default;
};

HahnPartition hahn_decompose(const SignedAtomicMeasure& m);

/// |mu|: absolute masses sorted non-increasing, kappa 0.
AtomicMeasure absolute_measure(const SignedAtomicMeasure& m);

/// The positive part mu+ and the magnitude of the negative part mu- as positive measures.
AtomicMeasure positive_part(const SignedAtomicMeasure& m);
AtomicMeasure negative_part(const SignedAtomicMeasure& m);

/// nu'(A) = nu(A ∩ Ω+) - nu(A ∩ Ω-): negates the atom values listed in negative_indices.
/// Throws InvalidInput for an index outside nu.
CandidateMeasure transform_nu(const CandidateMeasure& nu,
                              const std::vector<std::size_t>& negative_indices);

}  // namespace levelset
