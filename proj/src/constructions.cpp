#include "levelset/constructions.hpp"

#include <charconv>

#include "levelset/errors.hpp"

namespace levelset {

AtomicMeasure leth_geometric(const Rational& ratio, std::size_t count, const Rational& scale) {
  if (!ratio.is_positive() || ratio >= Rational(1)) {
    throw InvalidInput("geometric ratio must lie in (0, 1), got " + ratio.str());
  }
  if (count == 0) throw InvalidInput("geometric construction needs at least one atom");
  if (!scale.is_positive()) throw InvalidInput("scale must be positive");
  std::vector<Rational> atoms;
  atoms.reserve(count);
  Rational p = scale;
  for (std::size_t k = 0; k < count; ++k) {
    p *= ratio;
    atoms.push_back(p);
  }
  return AtomicMeasure(std::move(atoms));
}

SignedAtomicMeasure cantor_signed(std::size_t depth) {
  if (depth == 0) throw InvalidInput("Cantor truncation depth must be >= 1");
  std::vector<Rational> atoms;
  atoms.reserve(2 * depth);
  Rational mass(2, 3);
  for (std::size_t n = 1; n <= depth; ++n) {
    atoms.push_back(mass);
    atoms.push_back(-mass);
    mass /= Rational(3);
  }
  return SignedAtomicMeasure(std::move(atoms));
}

std::optional<ExampleId> parse_example_id(std::string_view name) {
  using K = ExampleId::Kind;
  if (name == "ex1") return ExampleId{K::ex1};
  if (name == "ex2-mu") return ExampleId{K::ex2_mu};
  if (name == "ex2-mu-prime") return ExampleId{K::ex2_mu_prime};
  if (name == "ex3-mu") return ExampleId{K::ex3_mu};
  if (name == "ex3-mu-prime") return ExampleId{K::ex3_mu_prime};
  if (name.starts_with("ex4:")) {
    const std::string_view digits = name.substr(4);
    std::size_t depth = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), depth);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || depth == 0) return std::nullopt;
    return ExampleId{K::ex4, depth};
  }
  return std::nullopt;
}

std::string to_string(const ExampleId& id) {
  using K = ExampleId::Kind;
  switch (id.kind) {
    case K::ex1: return "ex1";
    case K::ex2_mu: return "ex2-mu";
    case K::ex2_mu_prime: return "ex2-mu-prime";
    case K::ex3_mu: return "ex3-mu";
    case K::ex3_mu_prime: return "ex3-mu-prime";
    case K::ex4: return "ex4:" + std::to_string(id.depth);
  }
  return "";
}

namespace {

ExampleListing integers(std::initializer_list<long> values, long kappa = 0) {
  return ExampleListing{std::vector<Rational>(values.begin(), values.end()), Rational(kappa), false};
}

}  // namespace

ExampleListing paper_example_listing(const ExampleId& id) {
  using K = ExampleId::Kind;
  switch (id.kind) {
    case K::ex1: return integers({1, 2, 5, 6, 7, 8, 9, 10, 11});
    case K::ex2_mu: return integers({1, 2, 2, 2, 5});
    case K::ex2_mu_prime: return integers({1, 2, 4, 5});
    // The unit atom is replaced by a nonatomic part of mass 1.
    case K::ex3_mu: return integers({2, 2, 2, 5}, 1);
    case K::ex3_mu_prime: return integers({2, 4, 5}, 1);
    case K::ex4: return ExampleListing{cantor_signed(id.depth).atoms(), Rational{}, true};
  }
  throw InvalidInput("unknown example");
}

AnyMeasure paper_example(const ExampleId& id) {
  auto listing = paper_example_listing(id);
  if (listing.is_signed) return SignedAtomicMeasure(std::move(listing.atoms));
  return AtomicMeasure(std::move(listing.atoms), std::move(listing.kappa));
}

CandidateMeasure leth_two_atom_witness(const AtomicMeasure& m, const Rational& b) {
  if (m.size() < 2) throw InvalidInput("two-atom witness needs at least two atoms");
  if (!b.is_positive() || b >= Rational(1)) throw InvalidInput("b must lie in (0, 1)");
  CandidateMeasure nu;
  nu.atom_values.reserve(m.size());
  nu.atom_values.push_back(m.atom(0));
  nu.atom_values.push_back((Rational(1) - b) * m.atom(0) + b * m.atom(1));
  for (std::size_t i = 2; i < m.size(); ++i) nu.atom_values.push_back(b * m.atom(i));
  nu.continuous_slope = b;
  return nu;
}

AtomicMeasure BlockSelection::block_measure() const {
  std::vector<Rational> atoms;
  for (std::size_t j = 1; j < blocks.size(); ++j) {
    for (std::size_t i : blocks[j]) atoms.push_back(masses[i]);
  }
  return AtomicMeasure(std::move(atoms));
}

BlockSelection lemma31_blocks(const std::vector<Rational>& masses, const Rational& target) {
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!masses[i].is_positive()) throw InvalidInput("mass " + std::to_string(i) + " is not positive");
    if (i > 0 && masses[i] > masses[i - 1]) {
      throw InvalidInput("masses must be non-increasing (index " + std::to_string(i) + ")");
    }
  }

  BlockSelection sel;
  sel.masses = masses;

  std::vector<std::size_t> head;
  Rational sum;
  std::size_t pos = 0;
  while (pos < masses.size() && sum <= target) {
    sum += masses[pos];
    head.push_back(pos++);
  }
  if (sum <= target) {
    throw InsufficientMass("masses sum to " + sum.str() + ", which does not exceed " + target.str());
  }
  sel.blocks.push_back(std::move(head));
  sel.block_sums.push_back(sum);

  for (long j = 1;; ++j) {
    const Rational lower = power_of_two(-j);
    const Rational upper = lower * Rational(4, 3);
    std::vector<std::size_t> block;
    Rational block_sum;
    while (pos < masses.size()) {
      const Rational& a = masses[pos++];
      if (a > lower || block_sum + a > upper) continue;
      block.push_back(pos - 1);
      block_sum += a;
      if (block_sum >= lower) break;
    }
    if (block_sum < lower) break;  // prefix exhausted mid-block
    sel.blocks.push_back(std::move(block));
    sel.block_sums.push_back(std::move(block_sum));
  }
  return sel;
}

BlockAudit audit_blocks(const BlockSelection& selection, const Rational& target) {
  BlockAudit audit;
  auto fail = [&](bool& flag, std::string why) {
    flag = false;
    if (audit.failure.empty()) audit.failure = std::move(why);
  };
  const auto& blocks = selection.blocks;
  const auto& masses = selection.masses;
  if (blocks.empty()) {
    fail(audit.head_ok, "no E_0");
    return audit;
  }
  Rational head_sum;
  for (std::size_t k = 0; k < blocks[0].size(); ++k) {
    if (blocks[0][k] != k) fail(audit.head_ok, "E_0 is not a prefix");
    else head_sum += masses[k];
    if (k + 1 < blocks[0].size() && head_sum > target) fail(audit.head_ok, "E_0 is not the shortest prefix");
  }
  if (head_sum <= target) fail(audit.head_ok, "E_0 does not exceed the target");

  for (std::size_t j = 1; j < blocks.size(); ++j) {
    const Rational lower = power_of_two(-static_cast<long>(j));
    const Rational upper = lower * Rational(4, 3);
    const std::string name = "E_" + std::to_string(j);
    if (blocks[j].empty()) fail(audit.sums_bounded, name + " is empty");
    Rational sum;
    for (std::size_t k = 0; k < blocks[j].size(); ++k) {
      const std::size_t i = blocks[j][k];
      if (i >= masses.size()) {
        fail(audit.ordered, name + " has an index out of range");
        continue;
      }
      if (masses[i] > lower) fail(audit.masses_bounded, name + ": mass " + masses[i].str() + " exceeds " + lower.str());
      if (k > 0 && i <= blocks[j][k - 1]) fail(audit.ordered, name + " is not strictly increasing");
      sum += masses[i];
    }
    if (sum < lower || sum > upper) fail(audit.sums_bounded, name + ": sum " + sum.str() + " outside [" + lower.str() + ", " + upper.str() + "]");
    if (!blocks[j].empty() && !blocks[j - 1].empty() && blocks[j].front() <= blocks[j - 1].back()) {
      fail(audit.ordered, name + " does not follow E_" + std::to_string(j - 1));
    }
  }
  return audit;
}

}  // namespace levelset
