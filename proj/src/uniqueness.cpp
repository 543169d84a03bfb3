#include "levelset/uniqueness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace levelset {

namespace {

void require_aligned(const AtomicMeasure& m, const CandidateMeasure& nu) {
  if (nu.atom_values.size() != m.size()) {
    throw InvalidInput("candidate has " + std::to_string(nu.atom_values.size()) +
                       " atom values but the measure has " + std::to_string(m.size()) + " atoms");
  }
}

void require_finite_oracle(const AtomicMeasure& m, const char* what) {
  if (m.kappa().is_positive()) {
    throw InvalidInput(std::string(what) + " is only available for purely atomic measures (kappa = 0)");
  }
  if (m.size() > kBruteForceMax) throw ResourceLimit(what, m.size(), kBruteForceMax);
}

Rational sum_over(const std::vector<Rational>& values, const std::vector<std::size_t>& idx) {
  Rational s;
  for (std::size_t i : idx) s += values[i];
  return s;
}

SubsetPair make_pair(const AtomicMeasure& m, const CandidateMeasure& nu,
                     std::vector<std::size_t> first, std::vector<std::size_t> second) {
  SubsetPair p;
  p.mu_first = sum_over(m.atoms(), first);
  p.mu_second = sum_over(m.atoms(), second);
  p.nu_first = sum_over(nu.atom_values, first);
  p.nu_second = sum_over(nu.atom_values, second);
  p.first = std::move(first);
  p.second = std::move(second);
  return p;
}

// Subsets are visited in lexicographic order of their indicator vectors: bit
// (n - 1 - i) of the mask stands for atom i.
std::vector<std::size_t> members(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (std::uint32_t{1} << (n - 1 - i))) out.push_back(i);
  }
  return out;
}

struct LevelTable {
  struct Entry {
    Rational nu;
    std::uint32_t mask;
  };
  std::map<Rational, Entry> by_mu;
  std::optional<SubsetPair> conflict;
};

LevelTable build_level_table(const AtomicMeasure& m, const CandidateMeasure& nu) {
  const std::size_t n = m.size();
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<Rational> mu_sum(count), nu_sum(count);
  LevelTable table;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (mask != 0) {
      const auto low = static_cast<std::size_t>(__builtin_ctz(mask));
      const std::size_t atom = n - 1 - low;
      const std::uint32_t rest = mask & (mask - 1);
      mu_sum[mask] = mu_sum[rest] + m.atom(atom);
      nu_sum[mask] = nu_sum[rest] + nu.atom_values[atom];
    }
    auto [it, inserted] = table.by_mu.try_emplace(mu_sum[mask], LevelTable::Entry{nu_sum[mask], mask});
    if (!inserted && it->second.nu != nu_sum[mask] && !table.conflict) {
      table.conflict = make_pair(m, nu, members(it->second.mask, n), members(mask, n));
    }
  }
  return table;
}

std::string describe(const SubsetPair& p) {
  auto set = [](const std::vector<std::size_t>& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
    return out + "}";
  };
  return "atoms " + set(p.first) + " vs " + set(p.second) + ": mu " + p.mu_first.str() + " vs " +
         p.mu_second.str() + ", nu " + p.nu_first.str() + " vs " + p.nu_second.str();
}

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::unique ? "unique" : "non_unique"; }

std::string to_string(Criterion c) {
  return c == Criterion::relation_rank ? "relation_rank" : "augmented_rank";
}

WellDefinednessError::WellDefinednessError(SubsetPair pair)
    : Error("level function is not well defined: " + describe(pair)), pair_(std::move(pair)) {}

const Rational& LevelFunction::operator()(const Rational& w) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), w,
                             [](const auto& p, const Rational& x) { return p.first < x; });
  if (it == pairs.end() || it->first != w) throw InvalidInput(w.str() + " is not a value of the measure");
  return it->second;
}

CandidateMeasure witness(const AtomicMeasure& m, const RelationBasis& basis) {
  const std::size_t n = m.size();
  const bool augmented = m.kappa().is_positive();
  if (basis.augmented != augmented) throw InvalidInput("relation basis does not match the measure's kappa regime");
  if (basis.rank >= uniqueness_threshold(m)) {
    throw std::logic_error("witness requested for a full-rank relation system");
  }
  const std::size_t columns = n + (augmented ? 1 : 0);

  RationalVector trivial(m.atoms().begin(), m.atoms().end());
  if (augmented) trivial.emplace_back(1);

  // The solution space has dimension >= 2. Its element with the longest run of
  // trailing zeros is unique up to scale: echelonize with columns taken right to left
  // and keep the last row.
  const RationalMatrix solutions = nullspace(basis.rows(), columns);
  std::vector<std::size_t> order(columns);
  std::iota(order.rbegin(), order.rend(), std::size_t{0});
  RationalVector w = row_echelon(solutions, columns, order).rows.back();
  for (const auto& x : w) {
    if (!x.is_zero()) {
      if (x.is_negative()) {
        for (auto& y : w) y = -y;
      }
      break;
    }
  }

  Rational max_ratio;
  for (std::size_t i = 0; i < columns; ++i) max_ratio = std::max(max_ratio, w[i].abs() / trivial[i]);
  const Rational g = Rational(1) / (Rational(2) * max_ratio);

  RationalVector shifted(columns);
  for (std::size_t i = 0; i < columns; ++i) shifted[i] = trivial[i] + g * w[i];
  const auto integral = primitive_integer_vector(shifted);

  CandidateMeasure nu;
  nu.atom_values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) nu.atom_values.emplace_back(integral[i]);
  nu.continuous_slope = augmented ? Rational(integral[n]) : Rational{};
  return nu;
}

namespace {

// <r, nu> - gamma <r, a> over the basis row k; zero iff nu respects that relation.
Rational basis_residual(const RelationBasis& basis, std::size_t k,
                        const CandidateMeasure& nu) {
  Rational r = basis.vectors[k].dot(nu.atom_values);
  if (basis.augmented) r += nu.continuous_slope * basis.kappa_components[k];
  return r;
}

}  // namespace

UniquenessCertificate decide_L_unique(const AtomicMeasure& m, const EnumerationOptions& options) {
  if (m.empty()) throw InvalidInput("empty measure: no atoms and kappa = 0");
  UniquenessCertificate cert;
  cert.criterion = m.kappa().is_positive() ? Criterion::augmented_rank : Criterion::relation_rank;
  cert.threshold = uniqueness_threshold(m);
  cert.basis = measure_relation_basis(m, options, &cert.relations_visited);
  cert.rank = cert.basis.rank;
  if (cert.rank == cert.threshold) {
    cert.verdict = Verdict::unique;
    return cert;
  }
  cert.verdict = Verdict::non_unique;
  cert.witness = witness(m, cert.basis);
  for (std::size_t k = 0; k < cert.basis.vectors.size(); ++k) {
    if (!basis_residual(cert.basis, k, *cert.witness).is_zero()) {
      throw std::logic_error("witness violates basis relation " + cert.basis.vectors[k].str());
    }
  }
  cert.witness_positive = is_strictly_positive(m, *cert.witness);
  if (m.kappa().is_zero() && m.size() <= kBruteForceMax) {
    cert.witness_satisfies_O = check_O(m, *cert.witness).holds;
  }
  return cert;
}

ConditionCheck check_L(const AtomicMeasure& m, const CandidateMeasure& nu,
                       const EnumerationOptions& options) {
  require_aligned(m, nu);
  ConditionCheck result;
  const RelationBasis basis = measure_relation_basis(m, options);
  for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
    if (basis_residual(basis, k, nu).is_zero()) continue;
    const auto& r = basis.vectors[k];
    result.holds = false;
    result.violation = make_pair(m, nu, r.positive_support(), r.negative_support());
    result.diagnostic = "relation " + r.str() + " violated: " + describe(*result.violation);
    if (basis.augmented && !basis.kappa_components[k].is_zero()) {
      result.diagnostic += " (nonatomic mass " + basis.kappa_components[k].abs().str() +
                           " completes the lighter set, slope " + nu.continuous_slope.str() + ")";
    }
    break;
  }
  return result;
}

ConditionCheck check_L_oracle(const AtomicMeasure& m, const CandidateMeasure& nu) {
  require_aligned(m, nu);
  require_finite_oracle(m, "subset oracle for (L)");
  ConditionCheck result;
  auto table = build_level_table(m, nu);
  if (table.conflict) {
    result.holds = false;
    result.diagnostic = "equal mu, different nu: " + describe(*table.conflict);
    result.violation = std::move(table.conflict);
  }
  return result;
}

ConditionCheck check_O(const AtomicMeasure& m, const CandidateMeasure& nu) {
  require_aligned(m, nu);
  require_finite_oracle(m, "(O) check");
  ConditionCheck result;
  auto table = build_level_table(m, nu);
  if (table.conflict) {
    result.holds = false;
    result.diagnostic = "(L) fails, so (O) fails: " + describe(*table.conflict);
    result.violation = std::move(table.conflict);
    return result;
  }
  const LevelTable::Entry* previous = nullptr;
  for (const auto& [w, entry] : table.by_mu) {
    if (previous && previous->nu > entry.nu) {
      result.holds = false;
      result.violation = make_pair(m, nu, members(previous->mask, m.size()), members(entry.mask, m.size()));
      result.diagnostic = "level function decreases: " + describe(*result.violation);
      return result;
    }
    previous = &entry;
  }
  return result;
}

LevelFunction level_function(const AtomicMeasure& m, const CandidateMeasure& nu) {
  require_aligned(m, nu);
  require_finite_oracle(m, "level function");
  auto table = build_level_table(m, nu);
  if (table.conflict) throw WellDefinednessError(std::move(*table.conflict));
  LevelFunction f;
  f.pairs.reserve(table.by_mu.size());
  for (auto& [w, entry] : table.by_mu) f.pairs.emplace_back(w, entry.nu);
  return f;
}

}  // namespace levelset
