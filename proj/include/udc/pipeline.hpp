#pragma once

#include <string>
#include <vector>

#include "udc/analytics.hpp"
#include "udc/cooccur.hpp"
#include "udc/export.hpp"
#include "udc/ingest.hpp"

namespace udc {

struct RunConfig {
  std::vector<std::string> inputs;
  InputFormat format = InputFormat::libis;
  WeightMode weights = WeightMode::unique;
  std::vector<CountingMethod> methods{CountingMethod::leading, CountingMethod::all};
  LengthMetric length_metric = LengthMetric::chars;
  LinkPolicy policy;
  bool lenient_libis = false;
  bool drop_class4 = false;
  bool normalize = false;
  std::string out_dir;
  // Not echoed into outputs: results are identical for any worker count.
  unsigned workers = 1;

  IngestOptions ingest_options() const;
  Settings settings() const;
};

// Everything the profile and cooccur commands report, folded in one pass.
struct CorpusAggregate {
  ClassDistribution leading{CountingMethod::leading};
  ClassDistribution all{CountingMethod::all};
  LengthDistribution lengths;
  MatrixSet matrices;

  void merge(const CorpusAggregate& other);
  bool operator==(const CorpusAggregate&) const = default;
};

struct CorpusRun {
  CorpusAggregate aggregate;
  IngestStats stats;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads every input of `config` in order. Throws InputError when an input
// cannot be opened or read.
CorpusRun aggregate_inputs(const RunConfig& config);

// Same fold over an already-open stream.
CorpusRun aggregate_stream(std::istream& in, const RunConfig& config);

ProfileReport make_report(const CorpusRun& run, const RunConfig& config);

}  // namespace udc
