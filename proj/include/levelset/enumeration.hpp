#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace levelset {

enum class Strategy { automatic, direct, meet_in_middle };

/// Parses "auto" | "direct" | "mitm"; nullopt otherwise.
std::optional<Strategy> parse_strategy(std::string_view name);
std::string_view to_string(Strategy s);

inline constexpr std::size_t kDefaultMaxAtoms = 30;
inline constexpr std::size_t kDirectSubsetSumMax = 20;   // 2^n sums materialized
inline constexpr std::size_t kDirectRelationMax = 16;    // 3^n sign vectors scanned
inline constexpr std::size_t kAutoDirectRelationMax = 12;
inline constexpr std::size_t kBruteForceMax = 14;        // oracles (3^n / 2^n over rationals)

struct EnumerationOptions {
  Strategy strategy = Strategy::automatic;
  std::size_t max_atoms = kDefaultMaxAtoms;
};

}  // namespace levelset
