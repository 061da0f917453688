// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "support/corpus.hpp"
#include "support/oracle.hpp"
#include "support/tables.hpp"
#include "udc/cli.hpp"
#include "udc/pipeline.hpp"

using namespace udc;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt_ms(double ms) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << ms << " ms";
  return os.str();
}

using K = ConnectorKind;

std::vector<Link> links_of(const std::string& s, const LinkPolicy& policy = {}) {
  auto r = parse(s);
  return r ? extract_links(*r, policy) : std::vector<Link>{};
}

LinkPolicy every_operator() {
  LinkPolicy p;
  p.operators.insert(K::double_colon);
  return p;
}

Outcome worked_example() {
  Outcome o;
  const std::string s = "394.4 :[92(100+437) :329(437).15(091)+327.32(100)]";
  const auto start = Clock::now();
  const auto r = parse(s);
  const double ms = millis_since(start);
  o.expect(ms < 1.0, "parse took " + fmt_ms(ms));
  if (!r) {
    o.expect(false, "did not parse");
    return o;
  }
  const UdcExpression& e = *r;
  o.expect(e.terms.size() == 2, "top-level terms != 2");
  o.expect(e.connectors.size() == 1 && e.connectors[0].kind == K::colon,
           "top-level connector is not a single colon");
  if (e.terms.size() != 2 || !e.terms[1].is_group()) {
    o.expect(false, "second term is not a group");
    return o;
  }
  const Term& first = e.terms[0];
  o.expect(first.class_digits() == "3944" && main_class_of(first) == 3 &&
               first.auxiliaries.empty(),
           "first term mismatch");
  const auto& m = e.terms[1].members;
  o.expect(m.size() == 3, "group members != 3");
  if (m.size() != 3) return o;

  const Term& a = m[0].term;
  o.expect(!m[0].connector && a.class_digits() == "92" && a.auxiliaries.size() == 1 &&
               a.auxiliaries[0].kind == AuxiliaryKind::place &&
               a.auxiliaries[0].payload == "100+437" &&
               a.auxiliaries[0].inner_connectors.size() == 1 &&
               a.auxiliaries[0].inner_connectors[0].kind == K::plus,
           "member 1 mismatch");
  const Term& b = m[1].term;
  o.expect(m[1].connector && m[1].connector->kind == K::colon && b.class_digits() == "329" &&
               b.auxiliaries.size() == 2 && b.auxiliaries[0].kind == AuxiliaryKind::place &&
               b.auxiliaries[0].payload == "437" &&
               b.extensions == std::vector<std::string>{".15"} &&
               b.auxiliaries[1].kind == AuxiliaryKind::form && b.auxiliaries[1].payload == "091",
           "member 2 mismatch");
  const Term& c = m[2].term;
  o.expect(m[2].connector && m[2].connector->kind == K::plus && c.class_digits() == "32732" &&
               c.auxiliaries.size() == 1 && c.auxiliaries[0].kind == AuxiliaryKind::place &&
               c.auxiliaries[0].payload == "100",
           "member 3 mismatch");

  bool internal_plus = false;
  for (const LinkTrace& t : trace_links(e, {})) {
    if (t.op == K::plus && t.suppressed == SuppressionReason::auxiliary_internal &&
        t.links.empty()) {
      internal_plus = true;
    }
  }
  o.expect(internal_plus, "'+' in (100+437) not recorded as auxiliary-internal");
  if (o.pass) o.detail = "structure exact, parse " + fmt_ms(ms);
  return o;
}

Outcome counting_methods() {
  Outcome o;
  const std::vector<UdcRecord> rs{UdcRecord{"", "123.456:213.465", 1, classify("123.456:213.465")}};
  const auto leading = class_distribution(rs, CountingMethod::leading, WeightMode::unique);
  const auto all = class_distribution(rs, CountingMethod::all, WeightMode::unique);
  std::array<std::uint64_t, 10> one{}, both{};
  one[1] = 1;
  both[1] = 1;
  both[2] = 1;
  o.expect(leading.counts == one, "leading method did not tick class 1 only");
  o.expect(all.counts == both, "all method did not tick classes 1 and 2");
  if (o.pass) o.detail = "leading {1:1}, all {1:1, 2:1}";
  return o;
}

Outcome link_direction() {
  Outcome o;
  o.expect(links_of("022:11.203:042") == std::vector<Link>{{K::colon, 0, 1}, {K::colon, 1, 0}},
           "022:11.203:042 links mismatch");
  o.expect(links_of("022:11.203+11.204") == std::vector<Link>{{K::colon, 0, 1}, {K::plus, 1, 1}},
           "022:11.203+11.204 links mismatch");
  if (o.pass) o.detail = "colon 0->1, 1->0; colon 0->1, plus 1->1";
  return o;
}

Outcome auxiliary_opacity() {
  Outcome o;
  testing::CorpusGen gen(4);
  std::vector<std::string> strings;
  for (int i = 0; i < 1000; ++i) strings.push_back(gen.opaque());

  const auto start = Clock::now();
  MatrixSet set = MatrixSet::for_policy(every_operator());
  ClassDistribution leading{CountingMethod::leading}, all{CountingMethod::all};
  std::size_t rejected = 0;
  for (const auto& s : strings) {
    const auto r = classify(s);
    if (!r) {
      ++rejected;
      continue;
    }
    set.add(*r, every_operator(), 1);
    leading.add(*r);
    all.add(*r);
  }
  const double ms = millis_since(start);

  std::uint64_t total = 0;
  for (const auto& [_, m] : set.matrices) total += m.total();
  o.expect(rejected == 0, std::to_string(rejected) + " strings rejected");
  o.expect(total == 0, "matrices carry " + std::to_string(total) + " links");
  o.expect(leading.counts[4] == 0 && all.counts[4] == 0, "class 4 ticked");
  o.expect(ms < 1000.0, "took " + fmt_ms(ms));
  if (o.pass) o.detail = "1000 strings, 0 links, 0 class-4 ticks, " + fmt_ms(ms);
  return o;
}

Outcome sample_end_to_end() {
  Outcome o;
  RunConfig config;
  config.format = InputFormat::oclc;
  std::istringstream in(testing::join_lines(testing::kOclcSample));
  const CorpusRun run = aggregate_stream(in, config);

  o.expect(run.stats.records_accepted == 10, "accepted != 10");
  std::array<std::uint64_t, 10> leading{}, all{};
  leading[5] = 2;
  leading[6] = 4;
  leading[8] = 4;
  all[5] = 2;
  all[6] = 7;
  all[8] = 4;
  o.expect(run.aggregate.leading.counts == leading, "leading distribution mismatch");
  o.expect(run.aggregate.all.counts == all, "all distribution mismatch");
  o.expect(run.aggregate.matrices.matrices.size() == 3, "expected plus, stroke, colon matrices");
  for (const auto& [op, m] : run.aggregate.matrices.matrices) {
    for (int f = 0; f < 10; ++f) {
      for (int t = 0; t < 10; ++t) {
        const std::uint64_t expect = (op == K::colon && f == 6 && t == 6) ? 3 : 0;
        if (m.cells[f][t] != expect) {
          o.expect(false, std::string(to_string(op)) + "[" + std::to_string(f) + "][" +
                              std::to_string(t) + "]=" + std::to_string(m.cells[f][t]));
        }
      }
    }
  }
  if (o.pass) o.detail = "10 accepted, leading {5:2,6:4,8:4}, all {5:2,6:7,8:4}, colon[6][6]=3";
  return o;
}

Outcome libis_sample() {
  Outcome o;
  const std::string text = testing::join_lines(testing::kLibisSample);
  auto collect = [&](bool lenient, WeightMode weights) {
    std::vector<UdcRecord> out;
    std::istringstream in(text);
    ingest_stream(in, {InputFormat::libis, weights, lenient},
                  [&](const UdcRecord& r) { out.push_back(r); });
    return out;
  };
  auto candidates = [](const std::vector<UdcRecord>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(r.raw_udc);
    return out;
  };

  const auto strict = collect(false, WeightMode::frequency);
  o.expect(candidates(strict) == std::vector<std::string>{"\"18\"", "(043)U1"},
           "strict mode did not extract exactly rows 1-2");
  const auto lenient = collect(true, WeightMode::frequency);
  o.expect(candidates(lenient) == std::vector<std::string>{"\"18\"", "(043)U1", "(043)U2",
                                                           "(043)W1", "001 <03>", "001 <061>"},
           "lenient mode did not recover the degraded rows");
  for (const auto& r : lenient) o.expect(r.accepted(), "rejected " + r.raw_udc);
  o.expect(!lenient.empty() && lenient[0].frequency == 2, "row 1 weight under frequency != 2");

  if (!lenient.empty()) {
    const auto weighted = class_distribution(std::span(lenient).first(1), CountingMethod::leading,
                                             WeightMode::frequency);
    o.expect(weighted.unclassed == 2, "row 1 does not count twice under frequency weights");
  }

  for (const auto& r : collect(true, WeightMode::unique)) {
    o.expect(r.frequency == 1, "unique mode kept frequency for " + r.raw_udc);
  }
  if (o.pass) o.detail = "strict 2 rows, lenient 6 rows, row 1 weight 2 vs 1";
  return o;
}

Outcome stroke_semantics() {
  Outcome o;
  o.expect(links_of("629.734/.735").empty(), "629.734/.735 emitted links");
  o.expect(links_of("51/52") == std::vector<Link>{{K::stroke, 5, 5}},
           "51/52 is not a single stroke self-loop");
  o.expect(links_of("82-31/-32").empty(), "82-31/-32 emitted links");
  if (o.pass) o.detail = "range strokes silent, 51/52 -> stroke 5->5";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  testing::CorpusGen gen(8);
  std::vector<std::string> strings;
  for (int i = 0; i < 10000; ++i) strings.push_back(gen.bracket_free(2));

  const auto start = Clock::now();
  oracle::Tally tally;
  for (const auto& s : strings) oracle::add(tally, s);

  const LinkPolicy policy = every_operator();
  ClassDistribution leading{CountingMethod::leading}, all{CountingMethod::all};
  MatrixSet set = MatrixSet::for_policy(policy);
  for (const auto& s : strings) {
    const auto r = classify(s);
    if (!r) {
      o.expect(false, "rejected " + s);
      continue;
    }
    leading.add(*r);
    all.add(*r);
    set.add(*r, policy, 1);
  }
  const double ms = millis_since(start);

  o.expect(leading.counts == tally.leading && leading.unclassed == tally.leading_unclassed,
           "leading distribution differs from oracle");
  o.expect(all.counts == tally.all && all.unclassed == tally.all_unclassed,
           "all distribution differs from oracle");
  const std::pair<K, oracle::Op> pairs[] = {{K::plus, oracle::Op::plus},
                                            {K::stroke, oracle::Op::stroke},
                                            {K::colon, oracle::Op::colon},
                                            {K::double_colon, oracle::Op::double_colon}};
  for (auto [kind, op] : pairs) {
    o.expect(set.matrices.at(kind).cells == tally.cells[static_cast<int>(op)],
             std::string(to_string(kind)) + " matrix differs from oracle");
  }
  o.expect(ms < 10000.0, "took " + fmt_ms(ms));
  if (o.pass) o.detail = "10000 strings match, " + fmt_ms(ms);
  return o;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[entry.path().filename().string()] = ss.str();
  }
  return files;
}

Outcome parallel_determinism(const fs::path& scratch) {
  Outcome o;
  testing::CorpusGen gen(9);
  const fs::path input = scratch / "corpus.txt";
  {
    std::ofstream out(input, std::ios::binary);
    for (int i = 0; i < 100000; ++i) {
      const int kind = gen.uniform(0, 19);
      out << (100000 + i) << '\t';
      if (kind == 0) {
        out << "z" << gen.digits(1, 4) << '\n';
      } else if (kind == 1) {
        out << "anot a number\n";
      } else {
        out << 'a' << gen.compound() << '\n';
      }
    }
  }

  const auto start = Clock::now();
  const fs::path out = scratch / "out";
  std::map<std::string, std::map<std::string, std::string>> runs;
  for (const std::string workers : {"1", "4", "16"}) {
    fs::remove_all(out);
    for (const std::string cmd : {"profile", "cooccur"}) {
      const std::vector<std::string> args{"udc",      cmd,          input.string(), "--format",
                                          "oclc",     "--normalize", "--out",        out.string(),
                                          "--workers", workers};
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream sink_out, sink_err;
      const int code = run_cli(static_cast<int>(argv.size()), argv.data(), sink_out, sink_err);
      o.expect(code == kExitOk, cmd + " with " + workers + " workers exited " +
                                    std::to_string(code) + ": " + sink_err.str());
    }
    runs[workers] = snapshot(out);
  }
  const double ms = millis_since(start);

  o.expect(runs["1"].size() >= 10, "expected profile and cooccur outputs");
  o.expect(runs["1"] == runs["4"], "outputs differ between 1 and 4 workers");
  o.expect(runs["1"] == runs["16"], "outputs differ between 1 and 16 workers");
  o.expect(ms < 30000.0, "took " + fmt_ms(ms));
  if (o.pass) {
    o.detail = std::to_string(runs["1"].size()) + " files identical for 1/4/16 workers on "
               "100000 lines, " + fmt_ms(ms);
  }
  return o;
}

Outcome skew_shape() {
  Outcome o;
  testing::CorpusGen gen(10);
  LengthDistribution lengths;
  std::size_t accepted = 0, round_trips = 0;
  for (int i = 0; i < 20000; ++i) {
    const std::string s = gen.skewed();
    const auto r = classify(s);
    if (!r) continue;
    ++accepted;
    if (render(*r) == s) ++round_trips;
    lengths.add(s);
  }
  const auto summary = distribution_summary(lengths);
  o.expect(summary.has_value(), "empty length distribution");
  if (summary) {
    o.expect(summary->max > summary->mode, "max length does not exceed the mode");
    o.expect(lengths.bins.upper_bound(summary->mode) != lengths.bins.end(),
             "no bins above the mode");
  }
  o.expect(accepted > 0 && round_trips == accepted,
           std::to_string(round_trips) + "/" + std::to_string(accepted) + " round trips");
  if (o.pass) {
    o.detail = "mode " + std::to_string(summary->mode) + ", max " + std::to_string(summary->max) +
               ", round trip " + std::to_string(round_trips) + "/" + std::to_string(accepted);
  }
  return o;
}

}  // namespace

int main() {
  const fs::path scratch =
      fs::temp_directory_path() / ("udc_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"worked-example parse", worked_example},
      {"counting methods", counting_methods},
      {"link direction and placement", link_direction},
      {"auxiliary opacity", auxiliary_opacity},
      {"sample export end-to-end", sample_end_to_end},
      {"LIBIS sample ingestion", libis_sample},
      {"stroke semantics", stroke_semantics},
      {"oracle equivalence", oracle_equivalence},
      {"determinism under parallelism", [&] { return parallel_determinism(scratch); }},
      {"skew shape and round trip", skew_shape},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.expect(false, std::string("exception: ") + e.what());
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] "
              << criteria[i].first << ": " << outcome.detail << std::endl;
  }
  fs::remove_all(scratch);
  return failures == 0 ? 0 : 1;
}
