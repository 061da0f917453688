#pragma once

// Text serializations for distributions, matrices and networks.
//
// All numbers are plain decimal (fixed six decimals for reals), independent
// of locale, and every document ends with a newline.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "udc/analytics.hpp"
#include "udc/cooccur.hpp"
#include "udc/ingest.hpp"

namespace udc {

// Ordered key/value pairs echoed into output metadata.
using Settings = std::vector<std::pair<std::string, std::string>>;

// "<prefix>key=value" per line.
std::string comment_block(const Settings& settings, std::string_view prefix = "# ");

// '# operator=..' and '# class4=noise-channel' lines, then the header
// 'from\to,0,...,9' and one row per class.
std::string export_matrix_csv(const OperationMatrix& matrix);

// Same layout as export_matrix_csv; undefined cells are written as 'NA'.
std::string export_normalized_csv(ConnectorKind op, const NormalizedMatrix& matrix);

// 'from\tto\tweight' for every nonzero cell, sorted by (from, to).
std::string export_edge_list(const OperationMatrix& matrix, bool drop_class4);

// 'length\tcount', length ascending.
std::string export_distribution_tsv(const LengthDistribution& dist);

// 'class,count' rows for 0-9 followed by an 'unclassed' row.
std::string export_class_distribution_csv(const ClassDistribution& dist);

// Directed graph in DOT syntax: one node per class with strength and
// weighted-degree attributes, one edge per nonzero cell of every matrix.
std::string export_dot(const std::vector<OperationMatrix>& matrices, bool drop_class4,
                       const Settings& settings = {});

struct ProfileReport {
  Settings settings;
  IngestStats ingest;
  ClassDistribution leading{CountingMethod::leading};
  ClassDistribution all{CountingMethod::all};
  LengthDistribution lengths;
  std::map<ConnectorKind, std::uint64_t> matrix_totals;
};

std::string export_summary_json(const ProfileReport& report);

}  // namespace udc
