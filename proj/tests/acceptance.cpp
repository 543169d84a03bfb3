// Acceptance criteria. One PASS/FAIL line per criterion.
//
//   acceptance          run every criterion
//   acceptance 4 7      run the listed criteria only

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "levelset/constructions.hpp"
#include "levelset/errors.hpp"
#include "levelset/json_io.hpp"
#include "levelset/range.hpp"
#include "levelset/relations.hpp"
#include "levelset/report.hpp"
#include "levelset/uniqueness.hpp"
#include "oracles.hpp"

using namespace levelset;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Rational> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

AtomicMeasure example(const char* id) { return std::get<AtomicMeasure>(paper_example(*parse_example_id(id))); }

// Values of a sorted-order candidate re-expressed in the order the atoms were listed.
std::vector<Rational> as_listed(const std::vector<Rational>& sorted_values, const std::vector<Rational>& listed_atoms) {
  const auto order = sorting_permutation(listed_atoms);
  std::vector<Rational> out(sorted_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = sorted_values[i];
  return out;
}

bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size() || a.empty()) return false;
  const Rational c = a[0] / b[0];
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != c * b[i]) return false;
  }
  return true;
}

std::vector<std::vector<int>> as_ints(const std::vector<SignVector>& vs) {
  std::vector<std::vector<int>> out;
  for (const auto& v : vs) out.push_back(oracle::as_ints(v));
  std::sort(out.begin(), out.end());
  return out;
}

RangeSet example3_range() {
  std::vector<Interval> pieces;
  for (auto [lo, hi] : {std::pair{0L, 1L}, {2L, 3L}, {4L, 8L}, {9L, 10L}, {11L, 12L}}) pieces.push_back({Rational(lo), Rational(hi)});
  return RangeSet::from_intervals(pieces);
}

// ---------------------------------------------------------------------------

Outcome example1_regression() {
  Outcome o;
  const auto start = Clock::now();
  const auto listed = ints({1, 2, 5, 6, 7, 8, 9, 10, 11});
  const AtomicMeasure m(listed);
  const auto c = decide_L_unique(m);
  o.require(c.verdict == Verdict::unique, "verdict is not unique");
  o.require(c.rank == 8, "relation rank " + std::to_string(c.rank) + " != 8");

  const std::vector<std::vector<int>> printed = {
      {1, 0, 1, -1, 0, 0, 0, 0, 0}, {1, 0, 0, 1, -1, 0, 0, 0, 0}, {1, 0, 0, 0, 1, -1, 0, 0, 0},
      {1, 0, 0, 0, 0, 1, -1, 0, 0}, {1, 0, 0, 0, 0, 0, 1, -1, 0}, {1, 0, 0, 0, 0, 0, 0, 1, -1},
      {0, 1, 1, 0, -1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0, 0, 0, -1}};
  const auto r = as_ints(enumerate_relations(listed));
  for (const auto& v : printed) o.require(std::binary_search(r.begin(), r.end(), v), "a printed relation is missing");
  std::vector<SignVector> eight;
  for (const auto& v : printed) eight.push_back(SignVector(std::vector<std::int8_t>(v.begin(), v.end())));
  o.require(relation_rank(eight) == 8, "printed relations are not independent");

  const auto sums = subset_sums(m);
  auto has = [&](long x) { return std::binary_search(sums.begin(), sums.end(), Rational(x)); };
  o.require(has(1) && has(2) && has(3), "1, 2 or 3 missing from the range");
  o.require(!has(4), "4 is in the range");
  o.require(!is_arithmetic_progression(sums), "range is an arithmetic progression");
  const double t = seconds_since(start);
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s >= 1 s");
  o.detail = o.pass ? "rank 8, " + std::to_string(r.size()) + " relations, " + std::to_string(t) + " s" : o.detail;
  return o;
}

Outcome example2_regression() {
  Outcome o;
  const auto start = Clock::now();
  const auto u = decide_L_unique(AtomicMeasure(ints({1, 2, 2, 2, 5})));
  o.require(u.verdict == Verdict::unique && u.rank == 4, "(1,2,2,2,5) is not unique with rank 4");

  const auto listed = ints({1, 2, 4, 5});
  const AtomicMeasure m(listed);
  const auto r = enumerate_relations(listed);
  o.require(as_ints(r) == std::vector<std::vector<int>>{{1, -1, -1, 1}, {1, 0, 1, -1}},
            "canonical R differs from {(1,0,1,-1), (1,-1,-1,1)}");
  const auto c = decide_L_unique(m);
  o.require(c.verdict == Verdict::non_unique && c.rank == 2, "(1,2,4,5) is not non-unique with rank 2");
  if (c.witness) {
    const auto w = as_listed(c.witness->atom_values, listed);
    o.require(proportional(w, ints({1, 2, 6, 7})), "witness not proportional to (1,2,6,7)");
    o.require(check_L(m, *c.witness).holds, "witness fails check_L");
    o.require(check_O(m, *c.witness).holds, "witness fails check_O");
  } else {
    o.require(false, "no witness");
  }
  const double t = seconds_since(start);
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s >= 1 s");
  if (o.pass) o.detail = "witness (1,2,6,7), " + std::to_string(t) + " s";
  return o;
}

Outcome example3_regression() {
  Outcome o;
  const auto mu = AtomicMeasure(ints({2, 2, 2, 5}), Rational(1));
  const auto listed = ints({2, 4, 5});
  const auto mu_prime = AtomicMeasure(listed, Rational(1));
  const auto a = decide_L_unique(mu);
  o.require(a.verdict == Verdict::unique && a.criterion == Criterion::augmented_rank,
            "(2,2,2,5)+1 is not unique under the augmented criterion");
  const auto b = decide_L_unique(mu_prime);
  o.require(b.verdict == Verdict::non_unique, "(2,4,5)+1 is not non-unique");
  if (b.witness) {
    o.require(as_listed(b.witness->atom_values, listed) == ints({2, 6, 7}), "witness atoms are not (2,6,7)");
    o.require(b.witness->continuous_slope == Rational(1), "witness slope is not 1");
    o.require(check_L(mu_prime, *b.witness).holds, "witness fails check_L");
  } else {
    o.require(false, "no witness");
  }
  const auto expected = example3_range();
  o.require(range(mu) == expected, "range of (2,2,2,5)+1 differs");
  o.require(range(mu_prime) == expected, "range of (2,4,5)+1 differs");
  o.require(json_io::to_json(range(mu)) == json_io::to_json(expected), "serialized ranges differ");
  if (o.pass) o.detail = "range [0,1] u [2,3] u [4,8] u [9,10] u [11,12]";
  return o;
}

Outcome example4_truncations() {
  Outcome o;
  for (std::size_t d = 1; d <= 6; ++d) {
    const std::string at = "d=" + std::to_string(d) + ": ";
    const auto s = cantor_signed(d);
    const auto pos = positive_part(s), neg = negative_part(s);
    o.require(bullies(pos).size() == d && bullies(neg).size() == d, at + "not every atom is a bully");
    // Strict: 2/3^n exceeds the tail of its part.
    for (std::size_t n = 1; n <= d; ++n) {
      Rational tail;
      for (std::size_t k = n + 1; k <= d; ++k) tail += Rational(2) / pow(Rational(3), k);
      o.require(Rational(2) / pow(Rational(3), n) > tail, at + "atom does not exceed its tail");
    }

    const auto points = signed_range(s);
    const auto brute = oracle::subset_sums(s.atoms());
    o.require(points == brute, at + "signed range differs from brute force");
    const Rational step = Rational(2) / pow(Rational(3), d);
    const Rational top = Rational(1) - Rational(1) / pow(Rational(3), d);
    bool grid = !points.empty() && points.front() == -top && points.back() == top;
    for (std::size_t i = 1; grid && i < points.size(); ++i) grid = points[i] - points[i - 1] == step;
    o.require(grid, at + "signed range is not the 2/3^d grid on [-(1-3^-d), 1-3^-d]");

    const auto abs = absolute_measure(s);
    const auto c = decide_L_unique(abs);
    const bool oracle_unique = oracle::solution_dimension(abs) == 1;
    o.require(oracle_unique == (c.verdict == Verdict::unique), at + "verdict disagrees with the oracle");
    if (d >= 2) o.require(c.verdict == Verdict::non_unique, at + "|mu| truncation is not non-unique");
  }
  if (o.pass) o.detail = "d = 1..6; truncation verdicts only";
  return o;
}

// Shared corpus for criteria 5 and 6.
struct Instance {
  AtomicMeasure m;
  UniquenessCertificate certificate;
};

std::vector<Instance>& corpus() {
  static std::vector<Instance> instances;
  return instances;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::uniform_int_distribution<long> num(1, 50), den(1, 4), small_den(1, 2);
  std::size_t mismatches = 0, unique = 0, with_kappa = 0, relations_seen = 0;
  corpus().clear();
  const int count = 240;
  for (int trial = 0; trial < count; ++trial) {
    const std::size_t n = size(rng);
    // Every third instance uses denominators <= 2 so relations are common.
    std::vector<Rational> atoms;
    for (std::size_t i = 0; i < n; ++i) atoms.emplace_back(num(rng), trial % 3 == 0 ? small_den(rng) : den(rng));
    Rational kappa;
    if (trial % 4 == 3) {
      kappa = Rational(num(rng) % 6 + 1, 2);
      ++with_kappa;
    }
    const AtomicMeasure m(atoms, kappa);

    EnumerationOptions split{Strategy::meet_in_middle};
    if (kappa.is_zero()) {
      const auto fast = enumerate_relations(m.atoms(), split);
      if (fast != brute_force_relations(m.atoms())) ++mismatches;
      relations_seen += fast.size();
    } else {
      auto fast = kappa_relations(m.atoms(), kappa, split);
      auto slow = brute_force_kappa_relations(m.atoms(), kappa);
      auto by_sign = [](const AugmentedRelation& x, const AugmentedRelation& y) { return x.sign_part < y.sign_part; };
      std::sort(fast.begin(), fast.end(), by_sign);
      std::sort(slow.begin(), slow.end(), by_sign);
      if (fast != slow) ++mismatches;
      relations_seen += fast.size();
    }
    const auto c = decide_L_unique(m, split);
    if ((oracle::solution_dimension(m) == 1) != (c.verdict == Verdict::unique)) ++mismatches;
    if (c.verdict == Verdict::unique) ++unique;
    corpus().push_back({m, c});
  }
  const double t = seconds_since(start);
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.require(t < 60.0, "runtime " + std::to_string(t) + " s >= 60 s");
  if (o.pass) {
    std::ostringstream d;
    d << count << " measures (" << with_kappa << " with kappa > 0), " << relations_seen << " relations, " << unique
      << " unique, 0 mismatches, " << t << " s";
    o.detail = d.str();
  }
  return o;
}

Outcome property_suite() {
  Outcome o;
  std::mt19937_64 rng(0xfeed);
  std::uniform_int_distribution<std::size_t> size(1, 10);
  std::uniform_int_distribution<long> num(1, 12), den(1, 2);

  std::size_t interval_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> atoms;
    for (std::size_t i = 0, n = size(rng); i < n; ++i) atoms.emplace_back(num(rng), den(rng));
    const AtomicMeasure m(atoms, Rational(num(rng) % 6 + 1, den(rng)));
    const bool single = range(m).is_single_interval();
    o.require(bullies(m).empty() == single, "no-bullies and single-interval disagree");
    interval_cases += single;
  }

  std::size_t o_held = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> atoms;
    for (std::size_t i = 0, n = size(rng) % 8 + 1; i < n; ++i) atoms.emplace_back(num(rng), den(rng));
    const AtomicMeasure m(atoms);
    CandidateMeasure nu;
    const Rational c(num(rng), den(rng));
    for (const auto& a : m.atoms()) nu.atom_values.push_back(trial % 2 ? c * a : Rational(num(rng), den(rng)));
    if (trial % 5 == 1) nu.atom_values.back() += Rational(1);
    const bool holds_o = check_O(m, nu).holds;
    if (holds_o) {
      ++o_held;
      o.require(check_L(m, nu).holds, "check_O holds but check_L fails");
    }
  }

  if (corpus().empty()) oracle_equivalence();
  std::size_t witnesses = 0;
  for (const auto& [m, cert] : corpus()) {
    if (cert.verdict != Verdict::non_unique) continue;
    ++witnesses;
    o.require(cert.witness.has_value(), "non-unique verdict without a witness");
    if (!cert.witness) continue;
    o.require(check_L(m, *cert.witness).holds, "witness fails check_L");
    o.require(is_strictly_positive(m, *cert.witness), "witness not strictly positive");
    o.require(!is_proportional(m, *cert.witness), "witness proportional to mu");
  }

  std::size_t scaled = 0;
  for (std::size_t i = 0; i < corpus().size(); i += 3) {
    const auto& [m, cert] = corpus()[i];
    const Rational c(num(rng) + 1, num(rng));
    const auto other = decide_L_unique(m.scaled(c));
    o.require(other.verdict == cert.verdict && other.rank == cert.rank, "verdict changed under scaling");
    ++scaled;
  }
  if (o.pass) {
    std::ostringstream d;
    d << "300 interval cases (" << interval_cases << " single), " << o_held << " (O) pairs, " << witnesses
      << " witnesses, " << scaled << " scalings";
    o.detail = d.str();
  }
  return o;
}

Outcome leth_question() {
  Outcome o;
  std::mt19937_64 rng(0x1e7);
  std::uniform_int_distribution<long> num(1, 9), den(1, 3);
  std::uniform_int_distribution<std::size_t> tail_size(0, 6);
  const Rational b(1, 2);
  for (int k = 0; k < 20; ++k) {
    std::vector<Rational> tail;
    Rational tail_sum;
    for (std::size_t i = 0, n = tail_size(rng); i < n; ++i) {
      tail.emplace_back(num(rng), den(rng) * 4);
      tail_sum += tail.back();
    }
    // a2 > tail sum makes A2 a bully; a1 > a2 keeps it in second place.
    const Rational a2 = tail_sum + Rational(num(rng), den(rng));
    const Rational a1 = a2 + Rational(num(rng), den(rng));
    std::vector<Rational> atoms{a1, a2};
    for (const auto& t : tail) atoms.push_back(t < a2 ? t : a2 / Rational(2));
    const AtomicMeasure m(atoms);
    const auto bs = bullies(m);
    o.require(std::find(bs.begin(), bs.end(), std::size_t{1}) != bs.end(), "second atom is not a bully");
    o.require(decide_L_unique(m).verdict == Verdict::non_unique, "decide_L_unique is not non-unique");
    const auto nu = leth_two_atom_witness(m, b);
    o.require(nu.atom_values[1] == (Rational(1) - b) * m.atom(0) + b * m.atom(1), "witness A2 value");
    o.require(check_O(m, nu).holds, "two-atom witness fails check_O");
  }
  if (o.pass) o.detail = "20 fixtures, b = 1/2";
  return o;
}

Outcome lemma31_audit() {
  Outcome o;
  const auto start = Clock::now();
  std::vector<Rational> masses;
  masses.reserve(100000);
  for (long k = 1; k <= 100000; ++k) masses.emplace_back(1, k);
  const Rational t(3);
  const auto sel = lemma31_blocks(masses, t);

  // E_0 = {1, ..., 11}: H_10 <= 3 < H_11.
  std::vector<std::size_t> head(11);
  for (std::size_t i = 0; i < head.size(); ++i) head[i] = i;
  o.require(sel.blocks[0] == head, "E_0 is not {1..11}");

  // (a), (b), (c) verbatim for every emitted block with j >= 1.
  for (std::size_t j = 1; j < sel.blocks.size(); ++j) {
    const Rational lower = power_of_two(-static_cast<long>(j));
    Rational sum;
    for (std::size_t i : sel.blocks[j]) {
      o.require(masses[i] <= lower, "(a) fails in E_" + std::to_string(j));
      sum += masses[i];
    }
    o.require(Rational(4, 3) * lower >= sum && sum >= lower, "(b) fails in E_" + std::to_string(j));
    o.require(sel.blocks[j].front() > sel.blocks[j - 1].back(), "(c) fails at E_" + std::to_string(j));
  }
  const std::size_t J = sel.blocks.size() - 1;

  // Every emitted block counts: an incomplete final block is never emitted.
  const auto flat = sel.block_measure();
  const auto flat_bullies = bullies(flat);
  const double elapsed = seconds_since(start);

  // Informational: the same test with the guaranteed mass of the blocks beyond E_J
  // (at least sum_{j > J} 2^-j = 2^-J) supplied as a nonatomic part.
  const AtomicMeasure completed(flat.atoms(), power_of_two(-static_cast<long>(J)));
  std::ostringstream note;
  note << "blocks E_1..E_" << J << " hold " << flat.size() << " atoms; the smallest, 2^-" << J
       << ", has no smaller atom below it. With the tail mass 2^-" << J << " as kappa: "
       << bullies(completed).size() << " bullies";
  o.notes.push_back(note.str());

  o.require(flat_bullies.empty(), std::to_string(flat_bullies.size()) + " of " + std::to_string(flat.size()) +
                                      " atoms of the flattened block measure are bullies");
  o.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s >= 5 s");
  if (o.pass) o.detail = std::to_string(J) + " blocks, " + std::to_string(elapsed) + " s";
  return o;
}

Outcome performance() {
  Outcome o;
  std::mt19937_64 rng(0x26);
  std::uniform_int_distribution<long> mass(1, 1000000);

  EnumerationOptions mitm{Strategy::meet_in_middle};
  EnumerationOptions direct{Strategy::direct};
  AnalyzeOptions ao;
  ao.enumeration = mitm;
  const auto start = Clock::now();
  const int instances = 3;
  for (int k = 0; k < instances; ++k) {
    std::vector<Rational> atoms;
    for (int i = 0; i < 26; ++i) atoms.emplace_back(mass(rng));
    const AtomicMeasure m(atoms);
    const auto r = analyze(m, "random-26", std::nullopt, ao);
    o.require(r.certificate.rank <= 25, "rank out of range");
    if (r.certificate.witness) o.require(check_L(m, *r.certificate.witness, mitm).holds, "n = 26 witness fails check_L");
    bool refused = false;
    try {
      decide_L_unique(m, direct);
    } catch (const ResourceLimit&) {
      refused = true;
    }
    o.require(refused, "direct scan accepted n = 26");
  }
  const double t = seconds_since(start);
  o.require(t < 60.0, "n = 26 runtime " + std::to_string(t) + " s >= 60 s");

  std::uniform_int_distribution<std::size_t> size(1, 14);
  std::uniform_int_distribution<long> small(1, 30);
  int compared = 0;
  for (int k = 0; k < 40; ++k) {
    std::vector<Rational> atoms;
    for (std::size_t i = 0, n = size(rng); i < n; ++i) atoms.emplace_back(small(rng));
    const AtomicMeasure m(atoms, k % 4 == 0 ? Rational(1, 2) : Rational(0));
    AnalyzeOptions a, b;
    a.enumeration = direct;
    b.enumeration = mitm;
    auto ja = report_to_json(analyze(m, "x", std::nullopt, a));
    auto jb = report_to_json(analyze(m, "x", std::nullopt, b));
    ja.erase("strategy");
    jb.erase("strategy");
    o.require(ja == jb, "direct and mitm reports differ");
    ++compared;
  }
  if (o.pass) {
    std::ostringstream d;
    d << instances << " instances at n = 26 in " << t << " s; " << compared << " reports agree for n <= 14";
    o.detail = d.str();
  }
  return o;
}

struct Case {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Case> criteria = {
      {1, "nine-atom regression", example1_regression},
      {2, "(1,2,2,2,5) and (1,2,4,5) regression", example2_regression},
      {3, "nonatomic-part regression", example3_regression},
      {4, "signed Cantor truncations", example4_truncations},
      {5, "oracle equivalence", oracle_equivalence},
      {6, "property suite", property_suite},
      {7, "second-atom bully fixtures", leth_question},
      {8, "block extraction audit", lemma31_audit},
      {9, "performance", performance},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << '\n';
    for (const auto& n : o.notes) std::cout << "     note: " << n << '\n';
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
