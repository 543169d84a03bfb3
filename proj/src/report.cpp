#include "levelset/report.hpp"

#include <chrono>

#include "levelset/json_io.hpp"
#include "levelset/relations.hpp"

namespace levelset {

using nlohmann::json;

AnalysisReport analyze(const AnyMeasure& input, std::string source,
                       std::optional<std::size_t> truncation_depth, const AnalyzeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport r;
  r.source = std::move(source);
  r.input = input;
  r.truncation_depth = truncation_depth;
  r.strategy = std::string(to_string(options.enumeration.strategy));

  std::vector<std::size_t> perm;
  if (const auto* s = std::get_if<SignedAtomicMeasure>(&input)) {
    r.hahn = hahn_decompose(*s);
    r.signed_offset = s->negative_total();
    r.analyzed = absolute_measure(*s);
    std::vector<Rational> magnitudes;
    for (const auto& a : s->atoms()) magnitudes.push_back(a.abs());
    perm = sorting_permutation(magnitudes);
  } else {
    r.analyzed = std::get<AtomicMeasure>(input);
  }

  r.range = summarize_range(r.analyzed, options.enumeration, options.materialize_cap);
  r.bullies = bullies(r.analyzed);
  r.no_bullies = is_interval(r.analyzed);
  r.certificate = decide_L_unique(r.analyzed, options.enumeration);

  if (r.hahn && r.certificate.witness) {
    CandidateMeasure original;
    original.atom_values.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) original.atom_values[perm[i]] = r.certificate.witness->atom_values[i];
    r.signed_witness = transform_nu(original, r.hahn->negative);
  }
  if (!r.hahn && !options.listed_atoms.empty()) {
    if (options.listed_atoms.size() != r.analyzed.size()) throw InvalidInput("listed atoms do not match the measure");
    r.listed_atoms = options.listed_atoms;
    if (r.certificate.witness) {
      const auto order = sorting_permutation(r.listed_atoms);
      CandidateMeasure listed = *r.certificate.witness;
      for (std::size_t i = 0; i < order.size(); ++i) listed.atom_values[order[i]] = r.certificate.witness->atom_values[i];
      r.listed_witness = std::move(listed);
    }
  }
  if (options.timing) {
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

json report_to_json(const AnalysisReport& r) {
  json j;
  j["source"] = r.source;
  j["input"] = json_io::to_json(r.input);
  j["truncation_depth"] = r.truncation_depth ? json(*r.truncation_depth) : json(nullptr);
  if (r.hahn) {
    j["hahn"] = json{{"positive", r.hahn->positive}, {"negative", r.hahn->negative}};
    j["signed_offset"] = json_io::to_json(*r.signed_offset);
    j["verdict_scope"] = "truncation";
  }
  j["analyzed"] = json_io::to_json(r.analyzed);
  j["range"] = json_io::to_json(r.range);
  j["range_is_interval"] = r.range.interval_count == 1;
  j["bullies"] = r.bullies;
  j["no_bullies"] = r.no_bullies;
  j["certificate"] = json_io::to_json(r.certificate);
  if (r.signed_witness) j["signed_witness"] = json_io::to_json(*r.signed_witness);
  if (!r.listed_atoms.empty()) {
    j["listed_atoms"] = json::array();
    for (const auto& a : r.listed_atoms) j["listed_atoms"].push_back(json_io::to_json(a));
  }
   if (r.listed_witness) j["listed_witness"] = json_io::to_json(*r.listed_witness);
  j["strategy"] = r.strategy;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

AnalysisReport report_from_json(const json& j) {
  AnalysisReport r;
  r.source = j.at("source").get<std::string>();
  r.input = json_io::measure_from_json(j.at("input"));
  if (!j.at("truncation_depth").is_null()) r.truncation_depth = j.at("truncation_depth").get<std::size_t>();
  if (j.contains("hahn")) {
    r.hahn = HahnPartition{j.at("hahn").at("positive").get<std::vector<std::size_t>>(),
                           j.at("hahn").at("negative").get<std::vector<std::size_t>>()};
    r.signed_offset = json_io::rational_from_json(j.at("signed_offset"), "signed_offset");
  }
  r.analyzed = std::get<AtomicMeasure>(json_io::measure_from_json(j.at("analyzed")));
  r.range = json_io::range_summary_from_json(j.at("range"));
  r.bullies = j.at("bullies").get<std::vector<std::size_t>>();
  r.no_bullies = j.at("no_bullies").get<bool>();
  r.certificate = json_io::certificate_from_json(j.at("certificate"));
  if (j.contains("signed_witness")) r.signed_witness = json_io::candidate_from_json(j.at("signed_witness"));
  if (j.contains("listed_atoms")) r.listed_atoms = json_io::rationals_from_json(j.at("listed_atoms"), "listed_atoms");
  if (j.contains("listed_witness")) r.listed_witness = json_io::candidate_from_json(j.at("listed_witness"));
  r.strategy = j.at("strategy").get<std::string>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

namespace {

std::string join(const std::vector<Rational>& values) {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + values[i].str();
  return s + ")";
}

std::string join(const std::vector<std::size_t>& values) {
  std::string s = "{";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + std::to_string(values[i]);
  return s + "}";
}

}  // namespace

void render_text(std::ostream& os, const AnalysisReport& r) {
  os << "source:      " << r.source;
  if (r.truncation_depth) os << " (truncated at depth " << *r.truncation_depth << ")";
  os << '\n';
  if (const auto* s = std::get_if<SignedAtomicMeasure>(&r.input)) {
    os << "signed:      " << join(s->atoms()) << '\n';
    os << "hahn:        positive " << join(r.hahn->positive) << ", negative " << join(r.hahn->negative) << '\n';
    os << "analyzed:    |mu| = " << join(r.analyzed.atoms()) << "; range mu = range |mu| + ("
       << r.signed_offset->str() << ")\n";
  } else {
    if (!r.listed_atoms.empty()) os << "listed:      " << join(r.listed_atoms) << '\n';
    os << "atoms:       " << join(r.analyzed.atoms()) << ", kappa " << r.analyzed.kappa() << '\n';
  }
  os << "total:       " << r.range.total << '\n';
  os << "range:       " << r.range.point_count << " subset sums, " << r.range.interval_count
     << (r.range.interval_count == 1 ? " component" : " components")
     << (r.range.arithmetic_progression ? ", arithmetic progression" : ", not an arithmetic progression")
     << '\n';
  if (r.range.range && r.range.range->intervals().size() <= 32) {
    os << "             ";
    bool first = true;
    for (const auto& iv : r.range.range->intervals()) {
      os << (first ? "" : " u ");
      first = false;
      if (iv.lo == iv.hi) os << "{" << iv.lo << "}";
      else os << "[" << iv.lo << ", " << iv.hi << "]";
    }
    os << '\n';
  }
  os << "bullies:     " << join(r.bullies) << (r.no_bullies ? " (none)" : "") << '\n';

  const auto& c = r.certificate;
  os << "verdict:     " << to_string(c.verdict) << " (" << to_string(c.criterion) << ": rank " << c.rank
     << ", needed " << c.threshold << ")";
  if (r.hahn) os << " [truncation-level verdict for a signed measure]";
  os << '\n';
  for (std::size_t k = 0; k < c.basis.vectors.size(); ++k) {
    os << "  basis " << c.basis.vectors[k].str();
    if (c.basis.augmented) os << "  t = " << c.basis.kappa_components[k];
    os << '\n';
  }
  if (c.witness) {
    os << "witness:     " << join(c.witness->atom_values);
    if (r.analyzed.kappa().is_positive()) os << ", slope " << c.witness->continuous_slope;
    os << (c.witness_positive ? ", strictly positive" : "");
    if (c.witness_satisfies_O) os << (*c.witness_satisfies_O ? ", satisfies (O)" : ", fails (O)");
    os << '\n';
  }
  if (r.listed_witness) os << "as listed:   " << join(r.listed_witness->atom_values) << '\n';
  if (r.signed_witness) os << "signed nu:   " << join(r.signed_witness->atom_values) << '\n';
  if (r.elapsed_ms) os << "elapsed:     " << *r.elapsed_ms << " ms\n";
}

}  // namespace levelset
