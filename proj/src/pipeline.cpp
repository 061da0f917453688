#include "udc/pipeline.hpp"

#include <fstream>

namespace udc {

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

template <typename T, typename Fn>
std::string join(const T& items, Fn fn) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out.push_back(',');
    out.append(fn(item));
  }
  return out;
}

}  // namespace

IngestOptions RunConfig::ingest_options() const {
  return IngestOptions{format, weights, lenient_libis};
}

Settings RunConfig::settings() const {
  return {
      {"inputs", join(inputs, [](const std::string& s) { return s; })},
      {"format", std::string(to_string(format))},
      {"weights", std::string(to_string(weights))},
      {"methods", join(methods, [](CountingMethod m) { return std::string(to_string(m)); })},
      {"length_metric", std::string(to_string(length_metric))},
      {"operators",
       join(policy.operators, [](ConnectorKind k) { return std::string(to_string(k)); })},
      {"distribute_over_groups", yes_no(policy.distribute_over_groups)},
      {"count_group_internal", yes_no(policy.count_group_internal)},
      {"lenient_libis", yes_no(lenient_libis)},
      {"drop_class4", yes_no(drop_class4)},
      {"normalize", yes_no(normalize)},
      {"normalization", "cell/(occurrence[from]*occurrence[to]),occurrence=method-all"},
      {"out", out_dir},
  };
}

void CorpusAggregate::merge(const CorpusAggregate& other) {
  leading.merge(other.leading);
  all.merge(other.all);
  lengths.merge(other.lengths);
  matrices.merge(other.matrices);
}

CorpusRun aggregate_stream(std::istream& in, const RunConfig& config) {
  CorpusRun run;
  const LinkPolicy& policy = config.policy;
  const bool weighted = config.weights == WeightMode::frequency;
  const LengthMetric metric = config.length_metric;

  auto step = [&policy, weighted, metric](CorpusAggregate& acc, const UdcRecord& r) {
    if (!r.accepted()) return;
    const std::uint64_t w = weighted ? r.frequency : 1;
    acc.leading.add(*r.result, w);
    acc.all.add(*r.result, w);
    acc.lengths.metric = metric;
    acc.lengths.add(r.raw_udc);
    acc.matrices.add(*r.result, policy, w);
  };

  run.aggregate =
      fold_stream<CorpusAggregate>(in, config.ingest_options(), config.workers, step, run.stats);
  run.aggregate.lengths.metric = metric;
  // Empty operator matrices are still reported.
  MatrixSet base = MatrixSet::for_policy(policy);
  base.merge(run.aggregate.matrices);
  run.aggregate.matrices = std::move(base);
  return run;
}

CorpusRun aggregate_inputs(const RunConfig& config) {
  CorpusRun total;
  total.aggregate.lengths.metric = config.length_metric;
  total.aggregate.matrices = MatrixSet::for_policy(config.policy);
  for (const std::string& path : config.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input '" + path + "'");
    CorpusRun part;
    try {
      part = aggregate_stream(in, config);
    } catch (const std::ios_base::failure& e) {
      throw InputError("error reading '" + path + "': " + e.what());
    }
    total.aggregate.merge(part.aggregate);
    total.stats.merge(part.stats);
  }
  return total;
}

ProfileReport make_report(const CorpusRun& run, const RunConfig& config) {
  ProfileReport report;
  report.settings = config.settings();
  report.ingest = run.stats;
  report.leading = run.aggregate.leading;
  report.all = run.aggregate.all;
  report.lengths = run.aggregate.lengths;
  for (const auto& [op, m] : run.aggregate.matrices.matrices) {
    report.matrix_totals[op] = m.total();
  }
  return report;
}

}  // namespace udc
