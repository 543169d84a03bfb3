#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "levelset/enumeration.hpp"
#include "levelset/measures.hpp"
#include "levelset/range.hpp"
#include "levelset/uniqueness.hpp"

namespace levelset {

/// Everything `analyze` reports about one measure.
///
/// Signed inputs are analyzed through |mu|: the Hahn partition is recorded, the range
/// fields describe |mu| (range mu = range |mu| + signed_offset), and the witness is
/// mapped back to the signed atoms with the nu -> nu' transform.
struct AnalysisReport {
  std::string source;
  AnyMeasure input;
  std::optional<std::size_t> truncation_depth;
  std::optional<HahnPartition> hahn;
  std::optional<Rational> signed_offset;
  AtomicMeasure analyzed;

  RangeSummary range;
  std::vector<std::size_t> bullies;
  bool no_bullies = false;
  UniquenessCertificate certificate;
  std::optional<CandidateMeasure> signed_witness;
  // The positive input's atoms in the order given, and the witness aligned with them.
  std::vector<Rational> listed_atoms;
  std::optional<CandidateMeasure> listed_witness;

  std::string strategy;
  std::optional<double> elapsed_ms;
};

struct AnalyzeOptions {
  EnumerationOptions enumeration;
  std::size_t materialize_cap = 4096;
  bool timing = false;
  /// Order in which a positive measure's atoms were given; empty means sorted order.
  std::vector<Rational> listed_atoms;
};

AnalysisReport analyze(const AnyMeasure& input, std::string source,
                       std::optional<std::size_t> truncation_depth = std::nullopt,
                       const AnalyzeOptions& options = {});

nlohmann::json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);

void render_text(std::ostream& os, const AnalysisReport& r);

}  // namespace levelset
