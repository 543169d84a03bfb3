#include "levelset/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "levelset/constructions.hpp"
#include "levelset/errors.hpp"
#include "levelset/json_io.hpp"
#include "levelset/range.hpp"
#include "levelset/relations.hpp"
#include "levelset/report.hpp"
#include "levelset/uniqueness.hpp"

namespace levelset::cli {

namespace {

using nlohmann::json;

/// Raised when a fast path and its brute-force oracle disagree.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string measure;
  std::string example;
  bool json = false;
  std::string out_path;
  std::string strategy = "auto";
  std::optional<std::size_t> limit_n;
  bool oracle = false;
  bool timing = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("measure", c.measure, "Measure as inline JSON or a path to a JSON file");
  app->add_option("--example", c.example, "Built-in measure: ex1, ex2-mu, ex2-mu-prime, ex3-mu, ex3-mu-prime, ex4:<depth>");
  app->add_flag("--json", c.json, "Emit JSON instead of text");
  app->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
  app->add_option("--strategy", c.strategy, "Enumeration strategy")
      ->check(CLI::IsMember({"auto", "direct", "mitm"}));
  app->add_option("--limit-n", c.limit_n, "Largest atom count to enumerate (default 30 or $LEVELSET_MAX_N)");
  app->add_flag("--oracle", c.oracle, "Cross-check against brute-force oracles (n <= 14)");
  app->add_flag("--timing", c.timing, "Report elapsed time");
}

std::size_t default_max_atoms() {
  const char* env = std::getenv("LEVELSET_MAX_N");
  if (env == nullptr || *env == '\0') return kDefaultMaxAtoms;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || env[0] == '-') throw InvalidInput(std::string("LEVELSET_MAX_N is not a count: '") + env + "'");
  return static_cast<std::size_t>(v);
}

EnumerationOptions enumeration_options(const Common& c) {
  EnumerationOptions opts;
  const auto strategy = parse_strategy(c.strategy);
  if (!strategy) throw InvalidInput("unknown strategy '" + c.strategy + "'");
  opts.strategy = *strategy;
  opts.max_atoms = c.limit_n ? *c.limit_n : default_max_atoms();
  return opts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_inline(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && (text[p] == '{' || text[p] == '[');
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(what + ": malformed JSON at byte " + std::to_string(e.byte));
  }
}

/// A measure as given on the command line, with its atoms in the order given.
struct Loaded {
  AnyMeasure measure;
  std::vector<Rational> listed;
  std::string source;
  std::optional<std::size_t> depth;
};

Loaded load(const Common& c) {
  if (!c.example.empty() && !c.measure.empty()) throw InvalidInput("give a measure or --example, not both");
  if (!c.example.empty()) {
    const auto id = parse_example_id(c.example);
    if (!id) throw InvalidInput("unknown example '" + c.example + "'");
    Loaded l{paper_example(*id), paper_example_listing(*id).atoms, to_string(*id), std::nullopt};
    if (id->kind == ExampleId::Kind::ex4) l.depth = id->depth;
    return l;
  }
  if (c.measure.empty()) throw InvalidInput("no measure given (inline JSON, a file path, or --example)");
  const bool inline_text = looks_inline(c.measure);
  const std::string text = inline_text ? c.measure : read_file(c.measure);
  Loaded l{json_io::parse_measure(text), {}, inline_text ? "inline" : c.measure, std::nullopt};
  const json j = json::parse(text);
  l.listed = json_io::rationals_from_json(j.contains("signed_atoms") ? j.at("signed_atoms") : j.at("atoms"), "atoms");
  return l;
}

/// The positive measure a command works on, and where its sorted atoms came from:
/// atom i of `m` is input atom `order[i]`.
struct Aligned {
  AtomicMeasure m;
  std::vector<std::size_t> order;
  std::optional<HahnPartition> hahn;
};

Aligned align(const Loaded& l) {
  Aligned a;
  if (const auto* s = std::get_if<SignedAtomicMeasure>(&l.measure)) {
    a.hahn = hahn_decompose(*s);
    a.m = absolute_measure(*s);
    std::vector<Rational> magnitudes;
    for (const auto& x : s->atoms()) magnitudes.push_back(x.abs());
    a.order = sorting_permutation(magnitudes);
  } else {
    a.m = std::get<AtomicMeasure>(l.measure);
    a.order = sorting_permutation(l.listed);
  }
  return a;
}

std::vector<std::size_t> to_input(const std::vector<std::size_t>& sorted_indices, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> out;
  for (std::size_t i : sorted_indices) out.push_back(order[i]);
  std::sort(out.begin(), out.end());
  return out;
}

/// A sign vector over sorted atoms, re-expressed over input atoms. Returns whether the
/// sign had to be flipped to stay canonical.
std::pair<SignVector, bool> to_input(const SignVector& v, const std::vector<std::size_t>& order) {
  std::vector<std::int8_t> e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[order[i]] = static_cast<std::int8_t>(v[i]);
  const auto lead = std::find_if(e.begin(), e.end(), [](std::int8_t x) { return x != 0; });
  const bool flipped = *lead < 0;
  return {SignVector::canonical(std::move(e)), flipped};
}

std::string index_set(const std::vector<std::size_t>& input_indices) {
  std::string s = "{";
  for (std::size_t k = 0; k < input_indices.size(); ++k) s += (k ? ", a" : "a") + std::to_string(input_indices[k] + 1);
  return s + "}";
}

std::string tuple(const std::vector<Rational>& values) {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + values[i].str();
  return s + ")";
}

json rational_array(const std::vector<Rational>& values) {
  json a = json::array();
  for (const auto& v : values) a.push_back(json_io::to_json(v));
  return a;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + c.out_path + "'");
  f << text;
}

void emit_json(const Common& c, std::ostream& out, const json& j) { emit(c, out, j.dump(2) + "\n"); }

void require_oracle_size(const AtomicMeasure& m) {
  if (m.size() > kBruteForceMax) throw ResourceLimit("oracle cross-check", m.size(), kBruteForceMax);
}

std::vector<Rational> brute_subset_sums(const std::vector<Rational>& atoms) {
  std::set<Rational> sums;
  const std::size_t n = atoms.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s += atoms[i];
    }
    sums.insert(s);
  }
  return {sums.begin(), sums.end()};
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw OracleMismatch("oracle mismatch: " + what);
}

/// Relations of m by the 3^n oracle, in the engine's format.
std::vector<AugmentedRelation> oracle_relations(const AtomicMeasure& m) {
  require_oracle_size(m);
  return brute_force_kappa_relations(m.atoms(), m.kappa());
}

void cross_check_relations(const AtomicMeasure& m, const EnumerationOptions& opts) {
  auto expected = oracle_relations(m);
  if (m.kappa().is_zero()) {
    const auto fast = enumerate_relations(m.atoms(), opts);
    expect(fast.size() == expected.size(), "relation count");
    for (std::size_t i = 0; i < fast.size(); ++i) expect(fast[i] == expected[i].sign_part, "relation " + fast[i].str());
  } else {
    auto fast = kappa_relations(m.atoms(), m.kappa(), opts);
    expect(fast.size() == expected.size(), "augmented relation count");
    auto by_sign = [](const AugmentedRelation& a, const AugmentedRelation& b) { return a.sign_part < b.sign_part; };
    std::sort(fast.begin(), fast.end(), by_sign);
    std::sort(expected.begin(), expected.end(), by_sign);
    for (std::size_t i = 0; i < fast.size(); ++i) expect(fast[i] == expected[i], "augmented relation " + fast[i].sign_part.str());
  }
}

void cross_check(const AnalysisReport& r, const EnumerationOptions& opts) {
  const AtomicMeasure& m = r.analyzed;
  require_oracle_size(m);

  const auto sums = brute_subset_sums(m.atoms());
  expect(sums == subset_sums(m, opts), "subset sums");
  expect(r.range.point_count == sums.size(), "subset-sum count");
  expect(r.range.arithmetic_progression == is_arithmetic_progression(sums), "arithmetic-progression flag");
  std::vector<Interval> pieces;
  for (const auto& s : sums) pieces.push_back({s, s + m.kappa()});
  const RangeSet merged = RangeSet::from_intervals(pieces);
  expect(r.range.interval_count == merged.intervals().size(), "range component count");
  if (r.range.range) expect(*r.range.range == merged, "range");
  if (m.kappa().is_positive()) expect(r.no_bullies == merged.is_single_interval(), "no bullies vs single interval");

  cross_check_relations(m, opts);
  const auto relations = oracle_relations(m);
  RationalMatrix rows;
  for (const auto& rel : relations) {
    rows.push_back(m.kappa().is_zero() ? rel.sign_part.to_rational() : rel.row());
  }
  const std::size_t rank = exact_rank(rows);
  const auto& c = r.certificate;
  expect(rank == c.rank, "relation rank " + std::to_string(c.rank) + " vs oracle " + std::to_string(rank));
  expect((rank == uniqueness_threshold(m)) == (c.verdict == Verdict::unique), "verdict");

  if (c.witness) {
    for (const auto& rel : relations) {
      Rational lhs = rel.sign_part.dot(c.witness->atom_values);
      if (m.kappa().is_positive()) lhs += c.witness->continuous_slope * rel.kappa_component;
      expect(lhs.is_zero(), "witness violates relation " + rel.sign_part.str());
    }
    if (m.kappa().is_zero()) {
      expect(check_L_oracle(m, *c.witness).holds, "witness fails the subset-table (L) check");
      if (c.witness_satisfies_O) expect(*c.witness_satisfies_O == check_O(m, *c.witness).holds, "(O) flag");
    }
  }

  if (const auto* s = std::get_if<SignedAtomicMeasure>(&r.input)) {
    std::set<Rational> signed_sums;
    const std::size_t n = s->size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Rational x;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) x += s->atoms()[i];
      }
      signed_sums.insert(x);
    }
    expect(std::vector<Rational>(signed_sums.begin(), signed_sums.end()) == signed_range(*s, opts), "signed range");
  }
}

int cmd_analyze(const Common& c, std::ostream& out) {
  const Loaded l = load(c);
  const auto opts = enumeration_options(c);
  AnalyzeOptions ao;
  ao.enumeration = opts;
  ao.timing = c.timing;
  if (std::holds_alternative<AtomicMeasure>(l.measure)) ao.listed_atoms = l.listed;
  const AnalysisReport r = analyze(l.measure, l.source, l.depth, ao);
  if (c.oracle) cross_check(r, opts);
  if (c.json) {
    json j = report_to_json(r);
    if (c.oracle) j["oracle"] = "agreed";
    emit_json(c, out, j);
  } else {
    std::ostringstream text;
    render_text(text, r);
    if (c.oracle) text << "oracle:      brute-force cross-check agreed\n";
    emit(c, out, text.str());
  }
  return r.certificate.verdict == Verdict::unique ? kUnique : kNonUnique;
}

int cmd_check(const Common& c, const std::string& nu_arg, const std::string& mode, std::ostream& out) {
  const Loaded l = load(c);
  const Aligned a = align(l);
  if (nu_arg.empty()) throw InvalidInput("--nu is required");
  const json nuj = parse_json(looks_inline(nu_arg) ? nu_arg : read_file(nu_arg), "nu");
  CandidateMeasure nu = json_io::candidate_from_json(nuj);
  const std::size_t n = a.m.size();
  if (nu.atom_values.size() != n) {
    throw InvalidInput("nu has " + std::to_string(nu.atom_values.size()) + " values for " + std::to_string(n) + " atoms");
  }
  if (a.hahn) nu = transform_nu(nu, a.hahn->negative);
  CandidateMeasure sorted_nu;
  sorted_nu.continuous_slope = nu.continuous_slope;
  for (std::size_t i = 0; i < n; ++i) sorted_nu.atom_values.push_back(nu.atom_values[a.order[i]]);

  const auto opts = enumeration_options(c);
  ConditionCheck result;
  if (mode == "L") {
    result = check_L(a.m, sorted_nu, opts);
    if (c.oracle) {
      require_oracle_size(a.m);
      if (a.m.kappa().is_zero()) {
        expect(check_L_oracle(a.m, sorted_nu).holds == result.holds, "(L) verdict against the subset table");
      } else {
        bool holds = true;
        for (const auto& rel : oracle_relations(a.m)) {
          holds = holds && (rel.sign_part.dot(sorted_nu.atom_values) + sorted_nu.continuous_slope * rel.kappa_component).is_zero();
        }
        expect(holds == result.holds, "(L) verdict against the augmented relation scan");
      }
    }
  } else {
    result = check_O(a.m, sorted_nu);
  }

  std::optional<SubsetPair> shown = result.violation;
  if (shown) {
    shown->first = to_input(shown->first, a.order);
    shown->second = to_input(shown->second, a.order);
    // List the side holding the earliest input atom first.
    if (!shown->second.empty() && (shown->first.empty() || shown->second.front() < shown->first.front())) {
      std::swap(shown->first, shown->second);
      std::swap(shown->mu_first, shown->mu_second);
      std::swap(shown->nu_first, shown->nu_second);
    }
  }
  if (c.json) {
    json j{{"source", l.source}, {"mode", mode}, {"holds", result.holds}};
    if (l.depth) j["truncation_depth"] = *l.depth;
    if (a.hahn) j["hahn"] = json{{"positive", a.hahn->positive}, {"negative", a.hahn->negative}};
    if (shown) {
      const auto& v = *shown;
      j["violation"] = json{{"first", v.first}, {"second", v.second},
                            {"mu_first", json_io::to_json(v.mu_first)}, {"mu_second", json_io::to_json(v.mu_second)},
                            {"nu_first", json_io::to_json(v.nu_first)}, {"nu_second", json_io::to_json(v.nu_second)}};
    } else {
      j["violation"] = nullptr;
    }
    j["diagnostic"] = result.diagnostic;
    emit_json(c, out, j);
  } else {
    std::ostringstream text;
    text << "check (" << mode << "): " << (result.holds ? "pass" : "fail") << '\n';
    if (shown) {
      const auto& v = *shown;
      text << "  " << index_set(v.first) << " vs " << index_set(v.second) << ": mu " << v.mu_first << " vs "
           << v.mu_second << ", nu " << v.nu_first << " vs " << v.nu_second << '\n';
    }
    if (!result.diagnostic.empty()) text << "  in non-increasing atom order: " << result.diagnostic << '\n';
    emit(c, out, text.str());
  }
  return result.holds ? kPass : kFail;
}

std::string interval_text(const RangeSet& r) {
  std::string s;
  for (const auto& iv : r.intervals()) {
    if (!s.empty()) s += " u ";
    s += iv.lo == iv.hi ? "{" + iv.lo.str() + "}" : "[" + iv.lo.str() + ", " + iv.hi.str() + "]";
  }
  return s;
}

int cmd_range(const Common& c, std::size_t cap, std::ostream& out) {
  const Loaded l = load(c);
  const auto opts = enumeration_options(c);
  json j{{"source", l.source}};
  if (l.depth) j["truncation_depth"] = *l.depth;
  std::ostringstream text;
  text << "source:  " << l.source << (l.depth ? " (truncated at depth " + std::to_string(*l.depth) + ")" : "") << '\n';

  if (const auto* s = std::get_if<SignedAtomicMeasure>(&l.measure)) {
    const auto points = signed_range(*s, opts);
    if (c.oracle) {
      const auto m = absolute_measure(*s);
      require_oracle_size(m);
      const auto sums = brute_subset_sums(s->atoms());
      expect(sums == points, "signed range");
    }
    const auto hahn = hahn_decompose(*s);
    const bool ap = is_arithmetic_progression(points);
    j["hahn"] = json{{"positive", hahn.positive}, {"negative", hahn.negative}};
    j["signed_offset"] = json_io::to_json(s->negative_total());
    j["point_count"] = points.size();
    j["arithmetic_progression"] = ap;
    if (ap && points.size() >= 2) j["spacing"] = json_io::to_json(points[1] - points[0]);
    j["points"] = rational_array(points);
    text << "signed:  range |mu| shifted by " << s->negative_total() << '\n';
    text << "points:  " << points.size() << (ap ? ", arithmetic progression" : ", not an arithmetic progression");
    if (ap && points.size() >= 2) text << " with spacing " << points[1] - points[0];
    text << '\n';
    if (!points.empty()) text << "span:    [" << points.front() << ", " << points.back() << "]\n";
    if (points.size() <= 64) text << "values:  " << tuple(points) << '\n';
  } else {
    const auto& m = std::get<AtomicMeasure>(l.measure);
    const RangeSummary summary = summarize_range(m, opts, cap);
    if (c.oracle) {
      require_oracle_size(m);
      const auto sums = brute_subset_sums(m.atoms());
      std::vector<Interval> pieces;
      for (const auto& x : sums) pieces.push_back({x, x + m.kappa()});
      const auto merged = RangeSet::from_intervals(pieces);
      expect(summary.point_count == sums.size(), "subset-sum count");
      expect(summary.interval_count == merged.intervals().size(), "component count");
      if (summary.range) expect(*summary.range == merged, "range");
    }
    j["kappa"] = json_io::to_json(m.kappa());
    j["summary"] = json_io::to_json(summary);
    j["is_interval"] = summary.interval_count == 1;
    text << "total:   " << summary.total << ", kappa " << m.kappa() << '\n';
    text << "range:   " << summary.point_count << " subset sums, " << summary.interval_count
         << (summary.interval_count == 1 ? " component" : " components")
         << (summary.arithmetic_progression ? ", arithmetic progression" : ", not an arithmetic progression") << '\n';
    if (summary.range) text << "         " << interval_text(*summary.range) << '\n';
    else text << "         (more than " << cap << " components; not listed)\n";
  }
  if (c.json) emit_json(c, out, j);
  else emit(c, out, text.str());
  return kPass;
}

int cmd_bullies(const Common& c, const std::string& part, std::ostream& out) {
  const Loaded l = load(c);
  AtomicMeasure m;
  std::vector<std::size_t> input_index;  // sorted atom i of m is input atom input_index[i]
  if (const auto* s = std::get_if<SignedAtomicMeasure>(&l.measure)) {
    const auto hahn = hahn_decompose(*s);
    std::vector<std::size_t> chosen;
    if (part == "positive") chosen = hahn.positive;
    else if (part == "negative") chosen = hahn.negative;
    else {
      chosen.resize(s->size());
      std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    }
    std::vector<Rational> magnitudes;
    for (std::size_t i : chosen) magnitudes.push_back(s->atoms()[i].abs());
    for (std::size_t k : sorting_permutation(magnitudes)) input_index.push_back(chosen[k]);
    m = AtomicMeasure(std::move(magnitudes));
  } else {
    if (part != "abs" && part != "positive") throw InvalidInput("--part " + part + " needs a signed measure");
    m = std::get<AtomicMeasure>(l.measure);
    input_index = sorting_permutation(l.listed);
  }
  const auto found = bullies(m);
  const bool none = is_interval(m);
  std::vector<std::size_t> indices;
  std::vector<Rational> masses;
  for (std::size_t i : found) {
    indices.push_back(input_index[i]);
    masses.push_back(m.atom(i));
  }

  if (c.json) {
    json j{{"source", l.source}, {"part", part}, {"atoms", rational_array(m.atoms())}, {"kappa", json_io::to_json(m.kappa())}};
    if (l.depth) j["truncation_depth"] = *l.depth;
    j["bullies"] = indices;
    j["bully_masses"] = rational_array(masses);
    j["no_bullies"] = none;
    emit_json(c, out, j);
  } else {
    std::ostringstream text;
    text << "source:  " << l.source << (l.depth ? " (truncated at depth " + std::to_string(*l.depth) + ")" : "") << '\n';
    text << "part:    " << part << ", atoms " << tuple(m.atoms()) << ", kappa " << m.kappa() << '\n';
    text << "bullies: " << found.size() << " of " << m.size();
    if (!found.empty()) text << ": " << index_set(indices) << " with masses " << tuple(masses);
    text << '\n';
    emit(c, out, text.str());
  }
  return kPass;
}

int cmd_relations(const Common& c, bool basis_only, std::ostream& out) {
  const Loaded l = load(c);
  const Aligned a = align(l);
  const auto opts = enumeration_options(c);
  const bool augmented = a.m.kappa().is_positive();
  if (c.oracle) cross_check_relations(a.m, opts);

  std::vector<AugmentedRelation> listed;
  auto add = [&](const SignVector& v, const Rational& t) {
    auto [w, flipped] = to_input(v, a.order);
    listed.push_back(AugmentedRelation{std::move(w), flipped ? -t : t});
  };
  std::size_t visited = 0;
  RelationBasis basis;
  if (basis_only) {
    basis = measure_relation_basis(a.m, opts, &visited);
  } else if (augmented) {
    const auto all = kappa_relations(a.m.atoms(), a.m.kappa(), opts);
    for (const auto& r : all) add(r.sign_part, r.kappa_component);
    basis = relation_basis(all);
    visited = all.size();
  } else {
    const auto all = enumerate_relations(a.m.atoms(), opts);
    for (const auto& r : all) add(r, Rational{});
    basis = relation_basis(all);
    visited = all.size();
  }
  std::sort(listed.begin(), listed.end(), [](const auto& x, const auto& y) { return x.sign_part < y.sign_part; });
  std::vector<AugmentedRelation> listed_basis;
  for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
    auto [w, flipped] = to_input(basis.vectors[k], a.order);
    Rational t = augmented ? basis.kappa_components[k] : Rational{};
    listed_basis.push_back(AugmentedRelation{std::move(w), flipped ? -t : t});
  }
  const std::size_t threshold = uniqueness_threshold(a.m);

  if (c.json) {
    auto encode = [&](const std::vector<AugmentedRelation>& rs) {
      json arr = json::array();
      for (const auto& r : rs) {
        if (augmented) arr.push_back(json{{"r", r.sign_part.str()}, {"t", json_io::to_json(r.kappa_component)}});
        else arr.push_back(r.sign_part.str());
      }
      return arr;
    };
    json j{{"source", l.source}, {"atoms", rational_array(l.listed)}, {"kappa", json_io::to_json(a.m.kappa())},
           {"augmented", augmented}, {"rank", basis.rank}, {"threshold", threshold}};
    if (l.depth) j["truncation_depth"] = *l.depth;
    if (a.hahn) j["analyzed"] = "absolute value";
    j["basis"] = encode(listed_basis);
    if (basis_only) j["relations_visited"] = visited;
    else j["relations"] = encode(listed);
    emit_json(c, out, j);
  } else {
    std::ostringstream text;
    text << "atoms:     " << tuple(l.listed) << (a.hahn ? " (relations of |mu|)" : "") << ", kappa " << a.m.kappa() << '\n';
    auto show = [&](const AugmentedRelation& r) {
      text << "  " << r.sign_part.str();
      if (augmented) text << "  t = " << r.kappa_component;
      text << '\n';
    };
    if (!basis_only) {
      text << "relations: " << listed.size() << '\n';
      for (const auto& r : listed) show(r);
    }
    text << "rank:      " << basis.rank << " (uniqueness needs " << threshold << ")\n";
    text << "basis:\n";
    for (const auto& r : listed_basis) show(r);
    emit(c, out, text.str());
  }
  return kPass;
}

json listed_measure_json(const Loaded& l) {
  if (const auto* s = std::get_if<SignedAtomicMeasure>(&l.measure)) return json_io::to_json(*s);
  return json{{"atoms", rational_array(l.listed)}, {"kappa", json_io::to_json(std::get<AtomicMeasure>(l.measure).kappa())}};
}

int cmd_example(const Common& c, std::ostream& out) {
  if (c.example.empty()) throw InvalidInput("example id required");
  const Loaded l = load(c);
  if (c.json) {
    json j{{"id", l.source}, {"measure", listed_measure_json(l)}};
    j["truncation_depth"] = l.depth ? json(*l.depth) : json(nullptr);
    emit_json(c, out, j);
  } else {
    emit(c, out, listed_measure_json(l).dump() + "\n");
  }
  return kPass;
}

int cmd_geometric(const Common& c, const std::string& ratio, std::size_t count, const std::string& scale, std::ostream& out) {
  const AtomicMeasure m = leth_geometric(Rational::parse(ratio), count, Rational::parse(scale));
  const json measure = json_io::to_json(m);
  if (c.json) {
    json j{{"construction", "geometric"}, {"ratio", ratio}, {"count", count}, {"scale", scale}, {"measure", measure},
           {"truncation_depth", count}, {"bullies", bullies(m)}, {"no_bullies", is_interval(m)}};
    emit_json(c, out, j);
  } else {
    emit(c, out, measure.dump() + "\n");
  }
  return kPass;
}

std::vector<Rational> read_masses(const std::string& arg) {
  const json j = parse_json(looks_inline(arg) ? arg : read_file(arg), "masses");
  if (j.is_object()) return json_io::rationals_from_json(j.contains("atoms") ? j.at("atoms") : j.at("masses"), "masses");
  return json_io::rationals_from_json(j, "masses");
}

int cmd_lemma31(const Common& c, const std::string& masses_arg, std::size_t harmonic, const std::string& target_text,
                std::ostream& out) {
  std::vector<Rational> masses;
  if (!masses_arg.empty() && harmonic > 0) throw InvalidInput("give --masses or --harmonic, not both");
  if (!masses_arg.empty()) masses = read_masses(masses_arg);
  else if (harmonic > 0) {
    for (std::size_t k = 1; k <= harmonic; ++k) masses.emplace_back(1, static_cast<long>(k));
  } else {
    throw InvalidInput("--masses or --harmonic is required");
  }
  const Rational target = Rational::parse(target_text);
  const BlockSelection sel = lemma31_blocks(masses, target);
  const BlockAudit audit = audit_blocks(sel, target);
  const AtomicMeasure flat = sel.block_measure();
  const auto flat_bullies = bullies(flat);

  if (c.json) {
    json blocks = json::array();
    for (const auto& b : sel.blocks) blocks.push_back(b);
    json j{{"construction", "lemma31"}, {"target", target_text}, {"mass_count", masses.size()}, {"blocks", blocks},
           {"block_sums", rational_array(sel.block_sums)}};
    j["audit"] = json{{"head", audit.head_ok}, {"a", audit.masses_bounded}, {"b", audit.sums_bounded},
                      {"c", audit.ordered}, {"failure", audit.failure}};
    j["block_measure"] = json{{"atom_count", flat.size()}, {"bully_count", flat_bullies.size()},
                              {"no_bullies", flat_bullies.empty()}};
    emit_json(c, out, j);
  } else {
    std::ostringstream text;
    text << "masses:  " << masses.size() << ", target " << target << '\n';
    for (std::size_t j = 0; j < sel.blocks.size(); ++j) {
      const auto& b = sel.blocks[j];
      text << "E_" << j << ": " << b.size() << (b.size() == 1 ? " index" : " indices");
      if (!b.empty()) text << " [" << b.front() + 1 << " .. " << b.back() + 1 << "]";
      text << ", sum " << sel.block_sums[j].to_double() << '\n';
    }
    text << "audit:   " << (audit.ok() ? "all blocks satisfy (a), (b), (c)" : "failed: " + audit.failure) << '\n';
    text << "blocks:  " << flat.size() << " atoms, " << flat_bullies.size() << " bullies\n";
    emit(c, out, text.str());
  }
  return audit.ok() ? kPass : kFail;
}

}  // namespace

int selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
      ok = body();
    } catch (const std::exception& e) {
      detail = std::string(": ") + e.what();
    }
    out << (ok ? "PASS " : "FAIL ") << name << detail << '\n';
    if (!ok) ++failures;
  };
  auto atomic = [](const char* id) { return std::get<AtomicMeasure>(paper_example(*parse_example_id(id))); };
  auto integers = [](std::initializer_list<long> v) { return std::vector<Rational>(v.begin(), v.end()); };

  check("ex1 unique with relation rank 8", [&] {
    const auto c = decide_L_unique(atomic("ex1"));
    return c.verdict == Verdict::unique && c.rank == 8;
  });
  check("ex1 range has 1, 2, 3 but not 4", [&] {
    const auto sums = subset_sums(atomic("ex1"));
    auto has = [&](long x) { return std::binary_search(sums.begin(), sums.end(), Rational(x)); };
    return has(1) && has(2) && has(3) && !has(4) && !is_arithmetic_progression(sums);
  });
  check("ex2-mu unique with rank 4", [&] {
    const auto c = decide_L_unique(atomic("ex2-mu"));
    return c.verdict == Verdict::unique && c.rank == 4;
  });
  check("ex2-mu-prime non-unique, witness (1,2,6,7) satisfies (L) and (O)", [&] {
    const auto m = atomic("ex2-mu-prime");
    const auto c = decide_L_unique(m);
    if (c.verdict != Verdict::non_unique || c.rank != 2 || !c.witness) return false;
    const CandidateMeasure expected{integers({7, 6, 2, 1}), Rational{}};
    return c.witness->atom_values == expected.atom_values && check_L(m, *c.witness).holds && check_O(m, *c.witness).holds;
  });
  check("ex2-mu-prime relations as listed are (+0+-) and (+--+)", [&] {
    const auto listing = paper_example_listing(*parse_example_id("ex2-mu-prime"));
    const auto order = sorting_permutation(listing.atoms);
    std::vector<std::string> got;
    for (const auto& r : enumerate_relations(atomic("ex2-mu-prime").atoms())) got.push_back(to_input(r, order).first.str());
    std::sort(got.begin(), got.end());
    return got == std::vector<std::string>{"+--+", "+0+-"};
  });
  check("ex3-mu unique under the augmented criterion", [&] {
    const auto c = decide_L_unique(atomic("ex3-mu"));
    return c.verdict == Verdict::unique && c.criterion == Criterion::augmented_rank;
  });
  check("ex3-mu-prime non-unique, witness (2,6,7) with slope 1", [&] {
    const auto c = decide_L_unique(atomic("ex3-mu-prime"));
    return c.verdict == Verdict::non_unique && c.witness && c.witness->atom_values == integers({7, 6, 2}) &&
           c.witness->continuous_slope == Rational(1);
  });
  check("ex3 ranges equal [0,1] u [2,3] u [4,8] u [9,10] u [11,12]", [&] {
    std::vector<Interval> expected;
    for (auto [lo, hi] : {std::pair{0, 1}, {2, 3}, {4, 8}, {9, 10}, {11, 12}}) expected.push_back({Rational(lo), Rational(hi)});
    const auto want = RangeSet::from_intervals(expected);
    return range(atomic("ex3-mu")) == want && range(atomic("ex3-mu-prime")) == want;
  });
  for (std::size_t d = 1; d <= 6; ++d) {
    check("ex4:" + std::to_string(d) + " bullies, signed grid and truncation verdict", [&] {
      const auto s = cantor_signed(d);
      const auto pos = positive_part(s);
      const auto neg = negative_part(s);
      if (bullies(pos).size() != d || bullies(neg).size() != d) return false;
      const auto points = signed_range(s);
      const Rational step = Rational(2) / pow(Rational(3), d);
      const Rational top = Rational(1) - Rational(1) / pow(Rational(3), d);
      if (points.empty() || points.front() != -top || points.back() != top || !is_arithmetic_progression(points)) return false;
      if (points.size() >= 2 && points[1] - points[0] != step) return false;
      const auto c = decide_L_unique(absolute_measure(s));
      return d < 2 || c.verdict == Verdict::non_unique;
    });
  }
  out << (failures == 0 ? "selftest: all checks passed" : "selftest: " + std::to_string(failures) + " failed") << '\n';
  return failures;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level-set uniqueness analysis for atomic measures", "levelset"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::string nu_arg, mode = "L", part = "abs", ratio, scale = "1", masses_arg, target;
  std::size_t count = 0, harmonic = 0, cap = 4096;
  bool basis_only = false;

  auto* analyze = app.add_subcommand("analyze", "Range, bullies and uniqueness certificate");
  add_common(analyze, common);
  auto* check = app.add_subcommand("check", "Check (L) or (O) for a candidate nu");
  add_common(check, common);
  check->add_option("--nu", nu_arg, "Candidate as inline JSON or a file: [..] or {\"atoms\": [..], \"slope\": s}");
  check->add_option("--mode", mode, "Condition to check")->check(CLI::IsMember({"L", "O"}));
  auto* range_cmd = app.add_subcommand("range", "Range of the measure");
  add_common(range_cmd, common);
  range_cmd->add_option("--cap", cap, "Largest component count to list");
  auto* bullies_cmd = app.add_subcommand("bullies", "Atoms heavier than kappa plus all smaller atoms");
  add_common(bullies_cmd, common);
  bullies_cmd->add_option("--part", part, "Part of a signed measure")->check(CLI::IsMember({"positive", "negative", "abs"}));
  auto* relations = app.add_subcommand("relations", "Zero-sum sign vectors and their rank");
  add_common(relations, common);
  relations->add_flag("--basis-only", basis_only, "Stream to a basis only, stopping early");
  auto* example = app.add_subcommand("example", "Print a built-in measure");
  example->add_option("id", common.example, "ex1, ex2-mu, ex2-mu-prime, ex3-mu, ex3-mu-prime, ex4:<depth>")->required();
  example->add_flag("--json", common.json, "Wrap the measure with its id and depth");
  example->add_option("--out", common.out_path, "Write to this file instead of stdout");
  auto* construct = app.add_subcommand("construct", "Constructed measures");
  construct->require_subcommand(1);
  auto* geometric = construct->add_subcommand("geometric", "Atoms scale * r^k for k = 1..count");
  geometric->add_option("--ratio", ratio, "r in (0, 1)")->required();
  geometric->add_option("--count", count, "Number of atoms")->required();
  geometric->add_option("--scale", scale, "Scale factor");
  geometric->add_flag("--json", common.json, "Emit a JSON envelope with the bullies");
  geometric->add_option("--out", common.out_path, "Write to this file instead of stdout");
  auto* lemma31 = construct->add_subcommand("lemma31", "Greedy block extraction from a decreasing mass list");
  lemma31->add_option("--masses", masses_arg, "JSON array of masses (inline or file)");
  lemma31->add_option("--harmonic", harmonic, "Use the masses 1/k for k = 1..N");
  lemma31->add_option("--target", target, "Mass the first block must exceed")->required();
  lemma31->add_flag("--json", common.json, "Emit JSON");
  lemma31->add_option("--out", common.out_path, "Write to this file instead of stdout");
  auto* self = app.add_subcommand("selftest", "Regression over the built-in examples");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(common, out);
    if (check->parsed()) return cmd_check(common, nu_arg, mode, out);
    if (range_cmd->parsed()) return cmd_range(common, cap, out);
    if (bullies_cmd->parsed()) return cmd_bullies(common, part, out);
    if (relations->parsed()) return cmd_relations(common, basis_only, out);
    if (example->parsed()) return cmd_example(common, out);
    if (geometric->parsed()) return cmd_geometric(common, ratio, count, scale, out);
    if (lemma31->parsed()) return cmd_lemma31(common, masses_arg, harmonic, target, out);
    if (self->parsed()) return selftest(out) == 0 ? kPass : kFail;
  } catch (const OracleMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kInconsistent;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kInconsistent;
  }
  return kInputError;
}

}  // namespace levelset::cli
