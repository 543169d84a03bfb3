#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "levelset/measures.hpp"
#include "levelset/range.hpp"
#include "levelset/relations.hpp"
#include "levelset/uniqueness.hpp"

namespace levelset::json_io {

using nlohmann::json;

/// Rationals travel as strings "p/q" or "p". `where` names the JSON location in error
/// messages, e.g. "atoms[2]".
json to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& where);
std::vector<Rational> rationals_from_json(const json& j, const std::string& where);

/// {"atoms": [...], "kappa": "k"} or {"signed_atoms": [...]}.
AnyMeasure parse_measure(std::string_view text);
AnyMeasure measure_from_json(const json& j);
json to_json(const AnyMeasure& m);
json to_json(const AtomicMeasure& m);
json to_json(const SignedAtomicMeasure& m);

/// A candidate nu: either a bare array of atom values or {"atoms": [...], "slope": "s"}.
CandidateMeasure candidate_from_json(const json& j);
json to_json(const CandidateMeasure& nu);

/// {"intervals": [["lo","hi"], ...]}
json to_json(const RangeSet& r);
RangeSet range_set_from_json(const json& j);

/// {"points": [...]}
json points_to_json(const std::vector<Rational>& points);
std::vector<Rational> points_from_json(const json& j);

/// {"rank": k, "vectors": ["+0+-", ...]} plus "kappa_components" for the augmented system.
json to_json(const RelationBasis& b);
RelationBasis basis_from_json(const json& j);

json to_json(const SubsetPair& p);
SubsetPair subset_pair_from_json(const json& j);

/// {"verdict": "unique"|"non_unique", "criterion", "rank", "threshold", "basis": [...],
///  "kappa_components"?, "witness": {"atoms": [...], "slope": "p/q"} | null,
///  "witness_satisfies_O": bool | null, "witness_positive", "relations_visited"}
json to_json(const UniquenessCertificate& c);
UniquenessCertificate certificate_from_json(const json& j);

json to_json(const RangeSummary& s);
RangeSummary range_summary_from_json(const json& j);

}  // namespace levelset::json_io
