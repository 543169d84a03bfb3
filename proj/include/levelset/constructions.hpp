#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levelset/measures.hpp"
#include "levelset/rational.hpp"

namespace levelset {

/// Atoms scale * (r, r^2, ..., r^count), kappa 0. Requires 0 < r < 1, count >= 1,
/// scale > 0.
AtomicMeasure leth_geometric(const Rational& ratio, std::size_t count,
                             const Rational& scale = Rational(1));

/// Depth-d truncation of the signed Cantor measure:
/// (2/3, -2/3, 2/9, -2/9, ..., 2/3^d, -2/3^d). Requires d >= 1.
SignedAtomicMeasure cantor_signed(std::size_t depth);

/// Built-in fixtures. ex4 carries its truncation depth.
struct ExampleId {
  enum class Kind { ex1, ex2_mu, ex2_mu_prime, ex3_mu, ex3_mu_prime, ex4 };
  Kind kind = Kind::ex1;
  std::size_t depth = 0;

  friend bool operator==(const ExampleId&, const ExampleId&) = default;
};

/// "ex1", "ex2-mu", "ex2-mu-prime", "ex3-mu", "ex3-mu-prime", "ex4:<d>".
std::optional<ExampleId> parse_example_id(std::string_view name);
std::string to_string(const ExampleId& id);

AnyMeasure paper_example(const ExampleId& id);

/// The example's atoms in the order they are usually listed (signed for ex4), before
/// AtomicMeasure sorts them. Used to align user-supplied candidates.
struct ExampleListing {
  std::vector<Rational> atoms;
  Rational kappa;
  bool is_signed = false;
};
ExampleListing paper_example_listing(const ExampleId& id);

/// The two-atom (O)-witness for a measure whose second atom is a bully:
/// nu(A1) = mu(A1), nu(A2) = (1 - b) mu(A1) + b mu(A2), nu = b mu elsewhere (slope b on
/// the nonatomic part). Requires n >= 2 and 0 < b < 1.
CandidateMeasure leth_two_atom_witness(const AtomicMeasure& m, const Rational& b);

/// Blocks E_0, E_1, ..., E_J of indices into a non-increasing positive mass list.
/// E_0 is the shortest prefix with sum > target; for j >= 1 every index in E_j has
/// mass <= 2^-j, the block sum lies in [2^-j, (4/3) 2^-j], and E_{j+1} > E_j.
struct BlockSelection {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<Rational> block_sums;
  std::vector<Rational> masses;

  /// The atoms of E_1..E_J as one measure (kappa 0).
  AtomicMeasure block_measure() const;
};

/// Greedy block extraction. A block is built by scanning forward from the end of the
/// previous one, skipping masses above 2^-j and masses that would push the sum past
/// (4/3) 2^-j, until the sum reaches 2^-j. An incomplete final block is dropped.
/// Throws InvalidInput for unsorted or non-positive masses and InsufficientMass when
/// the whole list sums to <= target.
BlockSelection lemma31_blocks(const std::vector<Rational>& masses, const Rational& target);

/// Re-checks a selection: E_0 is the shortest prefix with sum > target, and for j >= 1
/// (a) masses <= 2^-j, (b) 2^-j <= block sum <= (4/3) 2^-j, (c) E_{j+1} > E_j.
/// `failure` describes the first broken condition.
struct BlockAudit {
  bool head_ok = true;
  bool masses_bounded = true;
  bool sums_bounded = true;
  bool ordered = true;
  std::string failure;

  bool ok() const noexcept { return head_ok && masses_bounded && sums_bounded && ordered; }
};
BlockAudit audit_blocks(const BlockSelection& selection, const Rational& target);

}  // namespace levelset
