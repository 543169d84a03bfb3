#include "levelset/range.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <string>
#include <type_traits>

#include "integer_masses.hpp"
#include "levelset/errors.hpp"

namespace levelset {

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "auto") return Strategy::automatic;
  if (name == "direct") return Strategy::direct;
  if (name == "mitm") return Strategy::meet_in_middle;
  return std::nullopt;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::direct: return "direct";
    case Strategy::meet_in_middle: return "mitm";
  }
  return "auto";
}

namespace {

template <class Int>
std::vector<Int> sorted_subset_sums(std::span<const Int> masses) {
  std::vector<Int> sums{Int(0)};
  sums.reserve(std::size_t{1} << masses.size());
  for (const Int& m : masses) {
    const std::size_t size = sums.size();
    for (std::size_t i = 0; i < size; ++i) sums.push_back(Int(sums[i] + m));
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

// Above this many integer grid points the sums are merged from two half lists instead.
constexpr std::int64_t kDenseSumLimit = std::int64_t{1} << 28;

// Reachability bitset over [0, total]: one shift-or per mass.
template <class Emit>
void dense_subset_sums(const std::vector<std::int64_t>& masses, std::int64_t total, Emit&& emit) {
  const std::size_t words = static_cast<std::size_t>(total / 64 + 1);
  std::vector<std::uint64_t> bits(words, 0);
  bits[0] = 1;
  for (std::int64_t m : masses) {
    const std::size_t word_shift = static_cast<std::size_t>(m / 64);
    const unsigned bit_shift = static_cast<unsigned>(m % 64);
    for (std::size_t w = words; w-- > word_shift;) {
      const std::size_t src = w - word_shift;
      std::uint64_t v = bits[src] << bit_shift;
      if (bit_shift != 0 && src > 0) v |= bits[src - 1] >> (64 - bit_shift);
      bits[w] |= v;
    }
  }
  for (std::size_t w = 0; w < words; ++w) {
    for (std::uint64_t word = bits[w]; word != 0; word &= word - 1) {
      emit(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
    }
  }
}

// Emits the distinct subset sums in increasing order.
template <class Int, class Emit>
void stream_subset_sums(const std::vector<Int>& masses, const EnumerationOptions& options,
                        Emit&& emit) {
  const std::size_t n = masses.size();
  if (n > options.max_atoms) throw ResourceLimit("subset-sum enumeration", n, options.max_atoms);
  const bool split = options.strategy == Strategy::meet_in_middle ||
                     (options.strategy == Strategy::automatic && n > kDirectSubsetSumMax);
  if (!split) {
    if (n > kDirectSubsetSumMax) {
      throw ResourceLimit("direct subset-sum scan", n, kDirectSubsetSumMax);
    }
    for (const Int& s : sorted_subset_sums<Int>(masses)) emit(s);
    return;
  }

  if constexpr (std::is_same_v<Int, std::int64_t>) {
    std::int64_t total = 0;
    for (auto m : masses) total += m;
    if (total < kDenseSumLimit) {
      dense_subset_sums(masses, total, emit);
      return;
    }
  }

  const std::size_t half = n / 2;
  const auto left = sorted_subset_sums<Int>(std::span<const Int>(masses).first(half));
  const auto right = sorted_subset_sums<Int>(std::span<const Int>(masses).subspan(half));

  struct Head {
    Int value;
    std::uint32_t i;
    std::uint32_t j;
  };
  auto later = [](const Head& a, const Head& b) { return a.value > b.value; };
  std::priority_queue<Head, std::vector<Head>, decltype(later)> heap(later);
  for (std::uint32_t i = 0; i < left.size(); ++i) heap.push(Head{Int(left[i] + right[0]), i, 0});

  bool first = true;
  Int last{};
  while (!heap.empty()) {
    Head h = heap.top();
    heap.pop();
    if (first || h.value != last) {
      emit(h.value);
      last = h.value;
      first = false;
    }
    if (h.j + 1 < right.size()) {
      ++h.j;
      h.value = left[h.i] + right[h.j];
      heap.push(std::move(h));
    }
  }
}

template <class F>
void with_integer_masses(const detail::IntegerMasses& im, F&& f) {
  if (im.fits_int64) {
    f(im.small_masses(), im.small_tolerance());
  } else {
    f(im.masses, im.tolerance);
  }
}

}  // namespace

RangeSet::RangeSet() : intervals_{Interval{Rational{}, Rational{}}} {}

RangeSet RangeSet::from_intervals(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (iv.lo > iv.hi) throw InvalidInput("interval with lo > hi: [" + iv.lo.str() + ", " + iv.hi.str() + "]");
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  RangeSet out;
  out.intervals_.clear();
  for (auto& iv : intervals) {
    if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi) {
      if (iv.hi > out.intervals_.back().hi) out.intervals_.back().hi = std::move(iv.hi);
    } else {
      out.intervals_.push_back(std::move(iv));
    }
  }
  return out;
}

bool RangeSet::contains(const Rational& x) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  --it;
  return x <= it->hi;
}

std::vector<Rational> subset_sums(const AtomicMeasure& m, const EnumerationOptions& options) {
  const auto im = detail::scale_to_integers(m.atoms());
  std::vector<Rational> out;
  with_integer_masses(im, [&](const auto& masses, const auto&) {
    stream_subset_sums(masses, options,
                       [&](const auto& s) { out.push_back(detail::unscale(s, im.scale)); });
  });
  return out;
}

RangeSet range(const AtomicMeasure& m, const EnumerationOptions& options) {
  const auto sums = subset_sums(m, options);
  std::vector<Interval> intervals;
  intervals.reserve(sums.size());
  for (const auto& s : sums) intervals.push_back(Interval{s, s + m.kappa()});
  return RangeSet::from_intervals(std::move(intervals));
}

std::vector<Rational> signed_range(const SignedAtomicMeasure& m, const EnumerationOptions& options) {
  // range mu = range |mu| + mu(Omega^-)
  auto sums = subset_sums(absolute_measure(m), options);
  const Rational shift = m.negative_total();
  for (auto& s : sums) s += shift;
  return sums;
}

std::vector<std::size_t> bullies(const AtomicMeasure& m) {
  const auto& a = m.atoms();
  std::vector<std::size_t> out;
  // a is non-increasing; for a run of equal masses only the strictly smaller tail counts.
  Rational smaller = m.kappa();
  std::size_t end = a.size();
  std::vector<bool> bully(a.size(), false);
  while (end > 0) {
    std::size_t begin = end - 1;
    while (begin > 0 && a[begin - 1] == a[end - 1]) --begin;
    const bool is_bully = smaller < a[end - 1];
    for (std::size_t i = begin; i < end; ++i) {
      bully[i] = is_bully;
      smaller += a[i];
    }
    end = begin;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (bully[i]) out.push_back(i);
  }
  return out;
}

bool is_interval(const AtomicMeasure& m) {
  Rational tail = m.kappa();
  const auto& a = m.atoms();
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] > tail) return false;
    tail += a[k];
  }
  return true;
}

bool is_arithmetic_progression(const std::vector<Rational>& points) {
  if (points.size() <= 2) return true;
  const Rational step = points[1] - points[0];
  for (std::size_t i = 2; i < points.size(); ++i) {
    if (points[i] - points[i - 1] != step) return false;
  }
  return true;
}

RangeSummary summarize_range(const AtomicMeasure& m, const EnumerationOptions& options,
                             std::size_t materialize_cap) {
  RangeSummary summary;
  summary.total = m.total();
  summary.arithmetic_progression = true;
  const auto im = detail::scale_to_integers(m.atoms(), m.kappa());

  with_integer_masses(im, [&](const auto& masses, const auto& width) {
    using Int = std::decay_t<decltype(width)>;
    std::size_t count = 0;
    Int previous{}, step{};
    std::vector<std::pair<Int, Int>> components;
    std::size_t component_count = 0;
    Int current_hi{};

    stream_subset_sums(masses, options, [&](const Int& s) {
      if (count == 1) {
        step = s - previous;
      } else if (count > 1 && summary.arithmetic_progression && Int(s - previous) != step) {
        summary.arithmetic_progression = false;
      }
      if (count > 0 && s <= current_hi) {
        current_hi = std::max<Int>(current_hi, Int(s + width));
        if (component_count <= materialize_cap) components.back().second = current_hi;
      } else {
        ++component_count;
        current_hi = s + width;
        if (component_count <= materialize_cap) components.emplace_back(s, current_hi);
      }
      previous = s;
      ++count;
    });

    summary.point_count = count;
    summary.interval_count = component_count;
    if (component_count <= materialize_cap) {
      std::vector<Interval> intervals;
      intervals.reserve(components.size());
      for (const auto& [lo, hi] : components) {
        intervals.push_back(Interval{detail::unscale(lo, im.scale), detail::unscale(hi, im.scale)});
      }
      summary.range = RangeSet::from_intervals(std::move(intervals));
    }
  });
  return summary;
}

}  // namespace levelset
