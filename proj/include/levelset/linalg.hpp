#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "levelset/rational.hpp"

namespace levelset {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Exact rank over Q by fraction-free (Bareiss) elimination. Rows are first scaled to
/// integers. Throws InvalidInput for ragged rows.
std::size_t exact_rank(const RationalMatrix& rows);

/// Reduced row echelon form over Q. Columns are eliminated in `column_order` (all
/// columns, left to right, when empty). Zero rows are dropped.
struct RowEchelon {
  RationalMatrix rows;
  std::vector<std::size_t> pivots;  // pivots[k] is the pivot column of rows[k]
};
RowEchelon row_echelon(RationalMatrix rows, std::size_t columns,
                       std::span<const std::size_t> column_order = {});

/// Basis of {x : <row, x> = 0 for every row}, one vector per free column.
RationalMatrix nullspace(const RationalMatrix& rows, std::size_t columns);

/// Clears denominators and divides by the content; the zero vector maps to zeros.
std::vector<mpz_class> primitive_integer_vector(const RationalVector& v);

/// Incrementally accepts rows that are linearly independent of the rows accepted so
/// far. Membership is decided exactly: a row lies in the span iff it is orthogonal to
/// a basis of the span's orthogonal complement, which is recomputed only when a row
/// is accepted (at most `columns` times).
class IndependenceTracker {
 public:
  explicit IndependenceTracker(std::size_t columns);

  /// Offers the row (signs..., extra) where `extra` fills the last column when the
  /// tracker has signs.size() + 1 columns. Returns true if the row was accepted.
  bool offer(std::span<const std::int8_t> signs, const Rational* extra = nullptr);
  bool offer(const RationalVector& row);

  bool in_span(std::span<const std::int8_t> signs, const Rational* extra = nullptr) const;
  bool in_span(const RationalVector& row) const;

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t columns() const noexcept { return columns_; }
  const RationalMatrix& rows() const noexcept { return rows_; }

 private:
  void rebuild();

  std::size_t columns_;
  RationalMatrix rows_;
  std::vector<std::vector<mpz_class>> complement_;
  // Copy of complement_ in machine integers when every entry fits.
  std::optional<std::vector<std::vector<std::int64_t>>> complement_small_;
};

}  // namespace levelset
