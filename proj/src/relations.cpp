#include "levelset/relations.hpp"

#include <algorithm>
#include <stdexcept>

#include "integer_masses.hpp"
#include "levelset/errors.hpp"

namespace levelset {

namespace {

// Base-3 digit codes: 0 -> 0, 1 -> +1, 2 -> -1.
constexpr std::int8_t kCodeValue[3] = {0, 1, -1};

int code_of(std::int8_t entry) { return entry == 0 ? 0 : (entry > 0 ? 1 : 2); }

std::uint64_t pow3(std::size_t n) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 3;
  return p;
}

// Writes the `width` digits of `index` (most significant first) into out.
void decode(std::uint64_t index, std::size_t width, std::int8_t* out) {
  for (std::size_t k = width; k-- > 0;) {
    out[k] = kCodeValue[index % 3];
    index /= 3;
  }
}

// Leading nonzero entry is +1; false for the zero vector.
bool leads_positive(std::span<const std::int8_t> v) {
  for (auto x : v) {
    if (x != 0) return x > 0;
  }
  return false;
}

template <class Int>
bool within(const Int& s, const Int& tolerance) {
  return s <= tolerance && -s <= tolerance;
}

// Odometer over all 3^n vectors in lexicographic order with incremental sums.
template <class Int, class Emit>
bool scan_direct(const std::vector<Int>& a, const Int& tolerance, Emit&& emit) {
  const std::size_t n = a.size();
  std::vector<std::int8_t> v(n, 0);
  std::vector<std::uint8_t> code(n, 0);
  Int sum = 0;
  while (true) {
    if (within(sum, tolerance) && leads_positive(v)) {
      if (!emit(v, sum)) return false;
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (code[i] == 0) {
        code[i] = 1, v[i] = 1;
        sum += a[i];
        break;
      }
      if (code[i] == 1) {
        code[i] = 2, v[i] = -1;
        sum -= a[i];
        sum -= a[i];
        break;
      }
      code[i] = 0, v[i] = 0;
      sum += a[i];
      if (i == 0) return true;
    }
    if (n == 0) return true;
  }
}

template <class Int>
struct HalfEntry {
  Int sum;
  std::uint32_t index;
};

template <class Int>
std::vector<HalfEntry<Int>> half_table(std::span<const Int> a) {
  const std::size_t width = a.size();
  const std::uint64_t count = pow3(width);
  std::vector<HalfEntry<Int>> table;
  table.reserve(count);
  std::vector<std::uint8_t> code(width, 0);
  Int sum = 0;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    table.push_back(HalfEntry<Int>{sum, static_cast<std::uint32_t>(idx)});
    for (std::size_t i = width; i-- > 0;) {
      if (code[i] == 0) {
        code[i] = 1;
        sum += a[i];
        break;
      }
      if (code[i] == 1) {
        code[i] = 2;
        sum -= a[i];
        sum -= a[i];
        break;
      }
      code[i] = 0;
      sum += a[i];
    }
  }
  // Generated in index order, so a stable sort keeps lexicographic order per sum.
  std::stable_sort(table.begin(), table.end(),
                   [](const HalfEntry<Int>& x, const HalfEntry<Int>& y) { return x.sum < y.sum; });
  return table;
}

template <class Int, class Emit>
bool scan_split(const std::vector<Int>& a, const Int& tolerance, Emit&& emit) {
  const std::size_t n = a.size();
  const std::size_t left_width = (n + 1) / 2;
  const std::size_t right_width = n - left_width;
  const std::span<const Int> all(a);
  const auto right = half_table<Int>(all.subspan(left_width));

  std::vector<std::int8_t> v(n, 0);
  std::vector<std::uint8_t> code(left_width, 0);
  std::vector<const HalfEntry<Int>*> matches;
  Int left_sum = 0;
  const std::uint64_t left_count = pow3(left_width);
  auto sum_less = [](const HalfEntry<Int>& e, const Int& x) { return e.sum < x; };
  auto less_sum = [](const Int& x, const HalfEntry<Int>& e) { return x < e.sum; };

  for (std::uint64_t u = 0; u < left_count; ++u) {
    const std::span<const std::int8_t> left(v.data(), left_width);
    const bool left_zero = std::all_of(left.begin(), left.end(), [](auto x) { return x == 0; });
    if (left_zero || leads_positive(left)) {
      const Int lo = Int(-left_sum - tolerance);
      const Int hi = Int(-left_sum + tolerance);
      auto first = std::lower_bound(right.begin(), right.end(), lo, sum_less);
      auto last = std::upper_bound(first, right.end(), hi, less_sum);
      matches.clear();
      for (auto it = first; it != last; ++it) matches.push_back(&*it);
      if (tolerance != 0) {
        std::sort(matches.begin(), matches.end(),
                  [](const auto* x, const auto* y) { return x->index < y->index; });
      }
      for (const auto* match : matches) {
        decode(match->index, right_width, v.data() + left_width);
        if (left_zero && !leads_positive(std::span<const std::int8_t>(v).subspan(left_width))) {
          continue;
        }
        if (!emit(v, Int(left_sum + match->sum))) return false;
      }
      std::fill(v.begin() + static_cast<std::ptrdiff_t>(left_width), v.end(), 0);
    }
    for (std::size_t i = left_width; i-- > 0;) {
      if (code[i] == 0) {
        code[i] = 1, v[i] = 1;
        left_sum += a[i];
        break;
      }
      if (code[i] == 1) {
        code[i] = 2, v[i] = -1;
        left_sum -= a[i];
        left_sum -= a[i];
        break;
      }
      code[i] = 0, v[i] = 0;
      left_sum += a[i];
    }
  }
  return true;
}

}  // namespace

SignVector::SignVector(std::vector<std::int8_t> entries) : entries_(std::move(entries)) {
  for (auto e : entries_) {
    if (e < -1 || e > 1) throw InvalidInput("sign vector entries must be -1, 0 or +1");
  }
  if (!leads_positive(entries_)) {
    throw InvalidInput("sign vector must be nonzero with leading entry +1");
  }
}

SignVector SignVector::canonical(std::vector<std::int8_t> entries) {
  for (auto e : entries) {
    if (e != 0) {
      if (e < 0) {
        for (auto& x : entries) x = static_cast<std::int8_t>(-x);
      }
      break;
    }
  }
  return SignVector(std::move(entries));
}

SignVector SignVector::parse(std::string_view text) {
  std::vector<std::int8_t> entries;
  entries.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '+': entries.push_back(1); break;
      case '-': entries.push_back(-1); break;
      case '0': entries.push_back(0); break;
      default: throw InvalidInput("sign vector '" + std::string(text) + "': unexpected character");
    }
  }
  return SignVector(std::move(entries));
}

std::string SignVector::str() const {
  std::string s;
  s.reserve(entries_.size());
  for (auto e : entries_) s.push_back(e == 0 ? '0' : (e > 0 ? '+' : '-'));
  return s;
}

Rational SignVector::dot(std::span<const Rational> values) const {
  if (values.size() != entries_.size()) throw InvalidInput("sign vector length mismatch");
  Rational sum;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] > 0) sum += values[i];
    else if (entries_[i] < 0) sum -= values[i];
  }
  return sum;
}

RationalVector SignVector::to_rational() const {
  RationalVector out;
  out.reserve(entries_.size());
  for (auto e : entries_) out.emplace_back(static_cast<long>(e));
  return out;
}

std::vector<std::size_t> SignVector::positive_support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] > 0) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> SignVector::negative_support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 0) out.push_back(i);
  }
  return out;
}

std::strong_ordering operator<=>(const SignVector& a, const SignVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int ca = code_of(a.entries_[i]);
    const int cb = code_of(b.entries_[i]);
    if (ca != cb) return ca <=> cb;
  }
  return a.size() <=> b.size();
}

RationalVector AugmentedRelation::row() const {
  RationalVector r = sign_part.to_rational();
  r.push_back(kappa_component);
  return r;
}

RationalMatrix RelationBasis::rows() const {
  RationalMatrix out;
  out.reserve(vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    out.push_back(vectors[k].to_rational());
    if (augmented) out.back().push_back(kappa_components[k]);
  }
  return out;
}

std::size_t for_each_relation(std::span<const Rational> atoms, const Rational& tolerance,
                              const EnumerationOptions& options, const RelationVisitor& visit) {
  const std::size_t n = atoms.size();
  if (n > options.max_atoms) throw ResourceLimit("relation enumeration", n, options.max_atoms);
  if (tolerance.is_negative()) throw InvalidInput("relation tolerance must be >= 0");
  const bool split = options.strategy == Strategy::meet_in_middle ||
                     (options.strategy == Strategy::automatic && n > kAutoDirectRelationMax);
  if (!split && n > kDirectRelationMax) {
    throw ResourceLimit("direct relation scan", n, kDirectRelationMax);
  }

  const auto im = detail::scale_to_integers(atoms, tolerance);
  std::size_t delivered = 0;
  const Rational zero;
  auto run = [&](const auto& masses, const auto& tol) {
    auto emit = [&](const std::vector<std::int8_t>& v, const auto& sum) {
      ++delivered;
      const Rational defect = sum == 0 ? zero : detail::unscale(sum, im.scale);
      return visit(SignVector(v), defect);
    };
    if (split) scan_split(masses, tol, emit);
    else scan_direct(masses, tol, emit);
  };
  if (im.fits_int64) run(im.small_masses(), im.small_tolerance());
  else run(im.masses, im.tolerance);
  return delivered;
}

std::vector<SignVector> enumerate_relations(std::span<const Rational> atoms,
                                            const EnumerationOptions& options) {
  std::vector<SignVector> out;
  for_each_relation(atoms, Rational{}, options, [&](const SignVector& r, const Rational&) {
    out.push_back(r);
    return true;
  });
  return out;
}

namespace {

// Plain 3^n scan in arbitrary precision; no rescaling tricks shared with the engine.
std::vector<AugmentedRelation> brute_force_scan(std::span<const Rational> atoms, const Rational& kappa) {
  const std::size_t n = atoms.size();
  if (n > kBruteForceMax) throw ResourceLimit("brute-force relation scan", n, kBruteForceMax);
  if (kappa.is_negative()) throw InvalidInput("kappa must be >= 0");
  mpz_class common = kappa.denominator();
  for (const auto& a : atoms) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), a.value().get_den_mpz_t());
  std::vector<mpz_class> scaled;
  for (const auto& a : atoms) scaled.push_back(a.value().get_num() * (common / a.value().get_den()));
  const mpz_class bound = kappa.value().get_num() * (common / kappa.value().get_den());

  std::vector<AugmentedRelation> out;
  std::vector<std::int8_t> v(n);
  const std::uint64_t count = pow3(n);
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    decode(idx, n, v.data());
    if (!leads_positive(v)) continue;
    mpz_class dot = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] > 0) dot += scaled[i];
      else if (v[i] < 0) dot -= scaled[i];
    }
    if (abs(dot) <= bound) out.push_back(AugmentedRelation{SignVector(v), -Rational(dot, common)});
  }
  return out;
}

}  // namespace

std::vector<SignVector> brute_force_relations(std::span<const Rational> atoms) {
  std::vector<SignVector> out;
  for (auto& r : brute_force_scan(atoms, Rational{})) out.push_back(std::move(r.sign_part));
  return out;
}

std::vector<AugmentedRelation> brute_force_kappa_relations(std::span<const Rational> atoms,
                                                           const Rational& kappa) {
  return brute_force_scan(atoms, kappa);
}

std::vector<AugmentedRelation> kappa_relations(std::span<const Rational> atoms,
                                               const Rational& kappa,
                                               const EnumerationOptions& options) {
  if (kappa.is_negative()) throw InvalidInput("kappa must be >= 0");
  std::vector<AugmentedRelation> out;
  for_each_relation(atoms, kappa, options, [&](const SignVector& r, const Rational& defect) {
    out.push_back(AugmentedRelation{r, -defect});
    return true;
  });
  return out;
}

std::size_t relation_rank(const RationalMatrix& vectors) { return exact_rank(vectors); }

std::size_t relation_rank(const std::vector<SignVector>& vectors) {
  RationalMatrix rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(v.to_rational());
  return exact_rank(rows);
}

RelationBasis relation_basis(const std::vector<SignVector>& vectors) {
  RelationBasis basis;
  if (vectors.empty()) return basis;
  const std::size_t n = vectors.front().size();
  IndependenceTracker tracker(n);
  for (const auto& v : vectors) {
    if (v.size() != n) throw InvalidInput("ragged sign vectors");
    if (tracker.offer(v.entries())) basis.vectors.push_back(v);
  }
  basis.rank = relation_rank(vectors);
  if (basis.rank != basis.vectors.size()) {
    throw std::logic_error("greedy basis size disagrees with fraction-free rank");
  }
  return basis;
}

RelationBasis relation_basis(const std::vector<AugmentedRelation>& relations) {
  RelationBasis basis;
  basis.augmented = true;
  if (relations.empty()) return basis;
  const std::size_t n = relations.front().sign_part.size();
  IndependenceTracker tracker(n + 1);
  RationalMatrix rows;
  for (const auto& r : relations) {
    if (r.sign_part.size() != n) throw InvalidInput("ragged relations");
    rows.push_back(r.row());
    if (tracker.offer(r.sign_part.entries(), &r.kappa_component)) {
      basis.vectors.push_back(r.sign_part);
      basis.kappa_components.push_back(r.kappa_component);
    }
  }
  basis.rank = relation_rank(rows);
  if (basis.rank != basis.vectors.size()) {
    throw std::logic_error("greedy basis size disagrees with fraction-free rank");
  }
  return basis;
}

std::size_t uniqueness_threshold(const AtomicMeasure& m) {
  if (m.kappa().is_positive()) return m.size();
  return m.size() == 0 ? 0 : m.size() - 1;
}

RelationBasis measure_relation_basis(const AtomicMeasure& m, const EnumerationOptions& options,
                                     std::size_t* visited) {
  const bool augmented = m.kappa().is_positive();
  const std::size_t target = uniqueness_threshold(m);
  RelationBasis basis;
  basis.augmented = augmented;
  IndependenceTracker tracker(m.size() + (augmented ? 1 : 0));
  std::size_t seen = 0;
  if (target > 0) {
    for_each_relation(m.atoms(), m.kappa(), options, [&](const SignVector& r, const Rational& defect) {
      ++seen;
      if (augmented) {
        const Rational t = -defect;
        if (tracker.offer(r.entries(), &t)) {
          basis.vectors.push_back(r);
          basis.kappa_components.push_back(t);
        }
      } else if (tracker.offer(r.entries())) {
        basis.vectors.push_back(r);
      }
      return tracker.rank() < target;
    });
  }
  basis.rank = basis.vectors.size();
  if (visited) *visited = seen;
  return basis;
}

}  // namespace levelset
