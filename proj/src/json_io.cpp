#include "levelset/json_io.hpp"

#include "levelset/errors.hpp"

namespace levelset::json_io {

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

json array_of(const std::vector<Rational>& values) {
  json a = json::array();
  for (const auto& v : values) a.push_back(to_json(v));
  return a;
}

std::vector<std::size_t> indices_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array of indices");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(x.get<std::size_t>());
  return out;
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InvalidInput(where + ": expected a rational string such as \"5/3\"");
}

std::vector<Rational> rationals_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

AnyMeasure parse_measure(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return measure_from_json(j);
}

AnyMeasure measure_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("measure: expected a JSON object");
  if (j.contains("signed_atoms")) {
    if (j.contains("atoms")) throw InvalidInput("measure: give either \"atoms\" or \"signed_atoms\", not both");
    auto atoms = rationals_from_json(j.at("signed_atoms"), "signed_atoms");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].is_zero()) throw InvalidInput("signed_atoms[" + std::to_string(i) + "]: zero atom");
    }
    return SignedAtomicMeasure(std::move(atoms));
  }
  auto atoms = rationals_from_json(field(j, "atoms", "measure"), "atoms");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].is_zero()) throw InvalidInput("atoms[" + std::to_string(i) + "]: zero atom");
    if (atoms[i].is_negative()) {
      throw InvalidInput("atoms[" + std::to_string(i) + "]: negative atom (use \"signed_atoms\")");
    }
  }
  Rational kappa;
  if (j.contains("kappa")) kappa = rational_from_json(j.at("kappa"), "kappa");
  if (kappa.is_negative()) throw InvalidInput("kappa: must be >= 0, got " + kappa.str());
  return AtomicMeasure(std::move(atoms), std::move(kappa));
}

json to_json(const AtomicMeasure& m) {
  return json{{"atoms", array_of(m.atoms())}, {"kappa", to_json(m.kappa())}};
}

json to_json(const SignedAtomicMeasure& m) { return json{{"signed_atoms", array_of(m.atoms())}}; }

json to_json(const AnyMeasure& m) {
  return std::visit([](const auto& x) { return to_json(x); }, m);
}

CandidateMeasure candidate_from_json(const json& j) {
  CandidateMeasure nu;
  if (j.is_array()) {
    nu.atom_values = rationals_from_json(j, "nu");
    return nu;
  }
  nu.atom_values = rationals_from_json(field(j, "atoms", "nu"), "nu.atoms");
  if (j.contains("slope")) nu.continuous_slope = rational_from_json(j.at("slope"), "nu.slope");
  return nu;
}

json to_json(const CandidateMeasure& nu) {
  return json{{"atoms", array_of(nu.atom_values)}, {"slope", to_json(nu.continuous_slope)}};
}

json to_json(const RangeSet& r) {
  json intervals = json::array();
  for (const auto& iv : r.intervals()) intervals.push_back(json::array({to_json(iv.lo), to_json(iv.hi)}));
  return json{{"intervals", intervals}};
}

RangeSet range_set_from_json(const json& j) {
  const json& a = field(j, "intervals", "range");
  if (!a.is_array()) throw InvalidInput("intervals: expected an array");
  std::vector<Interval> intervals;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string where = "intervals[" + std::to_string(i) + "]";
    if (!a[i].is_array() || a[i].size() != 2) throw InvalidInput(where + ": expected [lo, hi]");
    intervals.push_back(Interval{rational_from_json(a[i][0], where + "[0]"),
                                 rational_from_json(a[i][1], where + "[1]")});
  }
  return RangeSet::from_intervals(std::move(intervals));
}

json points_to_json(const std::vector<Rational>& points) { return json{{"points", array_of(points)}}; }

std::vector<Rational> points_from_json(const json& j) {
  return rationals_from_json(field(j, "points", "point set"), "points");
}

json to_json(const RelationBasis& b) {
  json vectors = json::array();
  for (const auto& v : b.vectors) vectors.push_back(v.str());
  json out{{"rank", b.rank}, {"vectors", vectors}};
  if (b.augmented) out["kappa_components"] = array_of(b.kappa_components);
  return out;
}

RelationBasis basis_from_json(const json& j) {
  RelationBasis b;
  b.rank = field(j, "rank", "basis").get<std::size_t>();
  for (const auto& v : field(j, "vectors", "basis")) b.vectors.push_back(SignVector::parse(v.get<std::string>()));
  if (j.contains("kappa_components")) {
    b.augmented = true;
    b.kappa_components = rationals_from_json(j.at("kappa_components"), "kappa_components");
  }
  return b;
}

json to_json(const SubsetPair& p) {
  return json{{"first", p.first},
              {"second", p.second},
              {"mu", json::array({to_json(p.mu_first), to_json(p.mu_second)})},
              {"nu", json::array({to_json(p.nu_first), to_json(p.nu_second)})}};
}

SubsetPair subset_pair_from_json(const json& j) {
  SubsetPair p;
  p.first = indices_from_json(field(j, "first", "pair"), "first");
  p.second = indices_from_json(field(j, "second", "pair"), "second");
  p.mu_first = rational_from_json(field(j, "mu", "pair").at(0), "mu[0]");
  p.mu_second = rational_from_json(j.at("mu").at(1), "mu[1]");
  p.nu_first = rational_from_json(field(j, "nu", "pair").at(0), "nu[0]");
  p.nu_second = rational_from_json(j.at("nu").at(1), "nu[1]");
  return p;
}

json to_json(const UniquenessCertificate& c) {
  json basis = json::array();
  for (const auto& v : c.basis.vectors) basis.push_back(v.str());
  json out{{"verdict", to_string(c.verdict)},
           {"criterion", to_string(c.criterion)},
           {"rank", c.rank},
           {"threshold", c.threshold},
           {"basis", basis}};
  if (c.basis.augmented) out["kappa_components"] = array_of(c.basis.kappa_components);
  out["witness"] = c.witness ? to_json(*c.witness) : json(nullptr);
  out["witness_satisfies_O"] = c.witness_satisfies_O ? json(*c.witness_satisfies_O) : json(nullptr);
  out["witness_positive"] = c.witness_positive;
  out["relations_visited"] = c.relations_visited;
  return out;
}

UniquenessCertificate certificate_from_json(const json& j) {
  UniquenessCertificate c;
  const auto verdict = field(j, "verdict", "certificate").get<std::string>();
  if (verdict != "unique" && verdict != "non_unique") throw InvalidInput("verdict: unknown value " + verdict);
  c.verdict = verdict == "unique" ? Verdict::unique : Verdict::non_unique;
  const auto criterion = field(j, "criterion", "certificate").get<std::string>();
  c.criterion = criterion == "augmented_rank" ? Criterion::augmented_rank : Criterion::relation_rank;
  c.rank = field(j, "rank", "certificate").get<std::size_t>();
  c.threshold = field(j, "threshold", "certificate").get<std::size_t>();
  for (const auto& v : field(j, "basis", "certificate")) {
    c.basis.vectors.push_back(SignVector::parse(v.get<std::string>()));
  }
  c.basis.rank = c.basis.vectors.size();
  if (j.contains("kappa_components")) {
    c.basis.augmented = true;
    c.basis.kappa_components = rationals_from_json(j.at("kappa_components"), "kappa_components");
  }
  if (j.contains("witness") && !j.at("witness").is_null()) c.witness = candidate_from_json(j.at("witness"));
  if (j.contains("witness_satisfies_O") && !j.at("witness_satisfies_O").is_null()) {
    c.witness_satisfies_O = j.at("witness_satisfies_O").get<bool>();
  }
  c.witness_positive = j.value("witness_positive", false);
  c.relations_visited = j.value("relations_visited", std::size_t{0});
  return c;
}

json to_json(const RangeSummary& s) {
  json out{{"total", to_json(s.total)},
           {"point_count", s.point_count},
           {"arithmetic_progression", s.arithmetic_progression},
           {"interval_count", s.interval_count}};
  out["range"] = s.range ? to_json(*s.range) : json(nullptr);
  return out;
}

RangeSummary range_summary_from_json(const json& j) {
  RangeSummary s;
  s.total = rational_from_json(field(j, "total", "range summary"), "total");
  s.point_count = field(j, "point_count", "range summary").get<std::size_t>();
  s.arithmetic_progression = field(j, "arithmetic_progression", "range summary").get<bool>();
  s.interval_count = field(j, "interval_count", "range summary").get<std::size_t>();
  if (j.contains("range") && !j.at("range").is_null()) s.range = range_set_from_json(j.at("range"));
  return s;
}

}  // namespace levelset::json_io
