#include "levelset/measures.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "levelset/errors.hpp"

namespace levelset {

std::vector<std::size_t> sorting_permutation(const std::vector<Rational>& values) {
  std::vector<std::size_t> perm(values.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return perm;
}

AtomicMeasure::AtomicMeasure(std::vector<Rational> atoms, Rational kappa)
    : kappa_(std::move(kappa)) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!atoms[i].is_positive()) {
      throw InvalidInput("atom " + std::to_string(i) + " has non-positive mass " +
                         atoms[i].str());
    }
  }
  if (kappa_.is_negative()) throw InvalidInput("kappa must be >= 0, got " + kappa_.str());
  const auto perm = sorting_permutation(atoms);
  atoms_.reserve(atoms.size());
  for (std::size_t i : perm) atoms_.push_back(std::move(atoms[i]));
}

Rational AtomicMeasure::atomic_total() const {
  Rational sum;
  for (const auto& a : atoms_) sum += a;
  return sum;
}

AtomicMeasure AtomicMeasure::scaled(const Rational& c) const {
  if (!c.is_positive()) throw InvalidInput("scale factor must be positive");
  std::vector<Rational> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& a : atoms_) atoms.push_back(a * c);
  return AtomicMeasure(std::move(atoms), kappa_ * c);
}

SignedAtomicMeasure::SignedAtomicMeasure(std::vector<Rational> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].is_zero()) throw InvalidInput("signed atom " + std::to_string(i) + " is zero");
  }
}

Rational SignedAtomicMeasure::total_variation() const {
  Rational sum;
  for (const auto& a : atoms_) sum += a.abs();
  return sum;
}

Rational SignedAtomicMeasure::negative_total() const {
  Rational sum;
  for (const auto& a : atoms_) {
    if (a.is_negative()) sum += a;
  }
  return sum;
}

Rational SignedAtomicMeasure::positive_total() const {
  Rational sum;
  for (const auto& a : atoms_) {
    if (a.is_positive()) sum += a;
  }
  return sum;
}

bool is_proportional(const AtomicMeasure& mu, const CandidateMeasure& nu) {
  if (nu.atom_values.size() != mu.size()) {
    throw InvalidInput("candidate has " + std::to_string(nu.atom_values.size()) +
                       " atom values, measure has " + std::to_string(mu.size()) + " atoms");
  }
  // nu = c * mu: c is fixed by the first coordinate (atoms, then slope against mass 1).
  std::optional<Rational> ratio;
  auto agrees = [&](const Rational& value, const Rational& reference) {
    const Rational r = value / reference;
    if (!ratio) {
      ratio = r;
      return true;
    }
    return *ratio == r;
  };
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!agrees(nu.atom_values[i], mu.atom(i))) return false;
  }
  if (mu.kappa().is_positive() && !agrees(nu.continuous_slope, Rational(1))) return false;
  return true;
}

bool is_strictly_positive(const AtomicMeasure& mu, const CandidateMeasure& nu) {
  if (nu.atom_values.size() != mu.size()) throw InvalidInput("candidate length mismatch");
  for (const auto& v : nu.atom_values) {
    if (!v.is_positive()) return false;
  }
  return mu.kappa().is_zero() || nu.continuous_slope.is_positive();
}

HahnPartition hahn_decompose(const SignedAtomicMeasure& m) {
  HahnPartition p;
  for (std::size_t i = 0; i < m.size(); ++i) {
    (m.atoms()[i].is_positive() ? p.positive : p.negative).push_back(i);
  }
  return p;
}

AtomicMeasure absolute_measure(const SignedAtomicMeasure& m) {
  std::vector<Rational> atoms;
  atoms.reserve(m.size());
  for (const auto& a : m.atoms()) atoms.push_back(a.abs());
  return AtomicMeasure(std::move(atoms));
}

AtomicMeasure positive_part(const SignedAtomicMeasure& m) {
  std::vector<Rational> atoms;
  for (const auto& a : m.atoms()) {
    if (a.is_positive()) atoms.push_back(a);
  }
  return AtomicMeasure(std::move(atoms));
}

AtomicMeasure negative_part(const SignedAtomicMeasure& m) {
  std::vector<Rational> atoms;
  for (const auto& a : m.atoms()) {
    if (a.is_negative()) atoms.push_back(-a);
  }
  return AtomicMeasure(std::move(atoms));
}

CandidateMeasure transform_nu(const CandidateMeasure& nu,
                              const std::vector<std::size_t>& negative_indices) {
  CandidateMeasure out = nu;
  for (std::size_t i : negative_indices) {
    if (i >= out.atom_values.size()) {
      throw InvalidInput("negative index " + std::to_string(i) + " out of bounds for " +
                         std::to_string(out.atom_values.size()) + " atoms");
    }
    out.atom_values[i] = -out.atom_values[i];
  }
  return out;
}

}  // namespace levelset
