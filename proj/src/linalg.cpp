#include "levelset/linalg.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "levelset/errors.hpp"

namespace levelset {

namespace {

void require_rectangular(const RationalMatrix& rows, std::size_t columns) {
  for (const auto& r : rows) {
    if (r.size() != columns) {
      throw InvalidInput("ragged matrix: expected rows of length " + std::to_string(columns) +
                         ", found " + std::to_string(r.size()));
    }
  }
}

}  // namespace

std::vector<mpz_class> primitive_integer_vector(const RationalVector& v) {
  mpz_class lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.value().get_den_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(v.size());
  mpz_class content = 0;
  for (const auto& x : v) {
    out.push_back(x.value().get_num() * (lcm / x.value().get_den()));
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  if (content > 1) {
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
  }
  return out;
}

std::size_t exact_rank(const RationalMatrix& rows) {
  if (rows.empty()) return 0;
  const std::size_t columns = rows.front().size();
  require_rectangular(rows, columns);

  std::vector<std::vector<mpz_class>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(primitive_integer_vector(r));

  // Bareiss: every intermediate entry is a minor of the input, divisions are exact.
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < columns && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < columns; ++j) {
        m[i][j] = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

RowEchelon row_echelon(RationalMatrix rows, std::size_t columns,
                       std::span<const std::size_t> column_order) {
  require_rectangular(rows, columns);
  std::vector<std::size_t> order(column_order.begin(), column_order.end());
  if (order.empty()) {
    order.resize(columns);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }

  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t col : order) {
    if (r == rows.size()) break;
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    const Rational inv = Rational(1) / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j < columns; ++j) {
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
      }
    }
    out.pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

RationalMatrix nullspace(const RationalMatrix& rows, std::size_t columns) {
  const RowEchelon ech = row_echelon(rows, columns);
  std::vector<bool> is_pivot(columns, false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;

  RationalMatrix basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(columns);
    v[free] = 1;
    for (std::size_t k = 0; k < ech.rows.size(); ++k) v[ech.pivots[k]] = -ech.rows[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

IndependenceTracker::IndependenceTracker(std::size_t columns) : columns_(columns) { rebuild(); }

void IndependenceTracker::rebuild() {
  complement_.clear();
  for (const auto& v : nullspace(rows_, columns_)) complement_.push_back(primitive_integer_vector(v));

  std::vector<std::vector<std::int64_t>> small;
  small.reserve(complement_.size());
  for (const auto& z : complement_) {
    std::vector<std::int64_t> s;
    s.reserve(z.size());
    for (const auto& x : z) {
      if (!x.fits_slong_p()) {
        complement_small_.reset();
        return;
      }
      s.push_back(x.get_si());
    }
    small.push_back(std::move(s));
  }
  complement_small_ = std::move(small);
}

bool IndependenceTracker::in_span(std::span<const std::int8_t> signs, const Rational* extra) const {
  const std::size_t width = signs.size() + (extra ? 1 : 0);
  if (width != columns_) throw InvalidInput("row length does not match tracker width");

  for (std::size_t k = 0; k < complement_.size(); ++k) {
    mpz_class dot;
    if (complement_small_) {
      const auto& z = (*complement_small_)[k];
      __int128 acc = 0;
      for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] > 0) acc += z[i];
        else if (signs[i] < 0) acc -= z[i];
      }
      if (!extra) {
        if (acc != 0) return false;
        continue;
      }
      // |acc| < 31 * 2^63 fits comfortably in two limbs.
      const bool neg = acc < 0;
      unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(acc) : acc;
      mpz_import(dot.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0,
                 std::array<std::uint64_t, 2>{static_cast<std::uint64_t>(mag),
                                              static_cast<std::uint64_t>(mag >> 64)}
                     .data());
      if (neg) dot = -dot;
    } else {
      const auto& z = complement_[k];
      for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] > 0) dot += z[i];
        else if (signs[i] < 0) dot -= z[i];
      }
      if (!extra) {
        if (dot != 0) return false;
        continue;
      }
    }
    // dot + extra * z_last == 0  <=>  dot * den + num * z_last == 0
    const mpz_class& z_last = complement_[k].back();
    const mpz_class lhs = dot * extra->value().get_den() + extra->value().get_num() * z_last;
    if (lhs != 0) return false;
  }
  return true;
}

bool IndependenceTracker::in_span(const RationalVector& row) const {
  if (row.size() != columns_) throw InvalidInput("row length does not match tracker width");
  for (const auto& z : complement_) {
    Rational dot;
    for (std::size_t i = 0; i < columns_; ++i) {
      if (!row[i].is_zero()) dot += row[i] * Rational(z[i]);
    }
    if (!dot.is_zero()) return false;
  }
  return true;
}

bool IndependenceTracker::offer(std::span<const std::int8_t> signs, const Rational* extra) {
  if (in_span(signs, extra)) return false;
  RationalVector row;
  row.reserve(columns_);
  for (auto s : signs) row.emplace_back(static_cast<long>(s));
  if (extra) row.push_back(*extra);
  rows_.push_back(std::move(row));
  rebuild();
  return true;
}

bool IndependenceTracker::offer(const RationalVector& row) {
  if (in_span(row)) return false;
  rows_.push_back(row);
  rebuild();
  return true;
}

}  // namespace levelset
