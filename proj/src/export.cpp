#include "udc/export.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "json.hpp"

namespace udc {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed6(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                       std::chars_format::fixed, 6);
  return ec == std::errc{} ? std::string(buf, end) : "NA";
}

void matrix_header(std::ostringstream& os, ConnectorKind op) {
  os << "# operator=" << to_string(op) << '\n';
  os << "# class4=noise-channel\n";
  os << "from\\to";
  for (int c = 0; c < 10; ++c) os << ',' << c;
  os << '\n';
}

bool keep(int c, bool drop_class4) { return !(drop_class4 && c == 4); }

}  // namespace

std::string comment_block(const Settings& settings, std::string_view prefix) {
  std::string out;
  for (const auto& [key, value] : settings) {
    out.append(prefix).append(key).append("=").append(value).push_back('\n');
  }
  return out;
}

std::string export_matrix_csv(const OperationMatrix& matrix) {
  std::ostringstream os;
  matrix_header(os, matrix.op);
  for (int f = 0; f < 10; ++f) {
    os << f;
    for (int t = 0; t < 10; ++t) os << ',' << matrix.cells[f][t];
    os << '\n';
  }
  return os.str();
}

std::string export_normalized_csv(ConnectorKind op, const NormalizedMatrix& matrix) {
  std::ostringstream os;
  os << "# normalization=cell/(occurrence[from]*occurrence[to]),occurrence=method-all\n";
  matrix_header(os, op);
  for (int f = 0; f < 10; ++f) {
    os << f;
    for (int t = 0; t < 10; ++t) {
      const auto& cell = matrix[f][t];
      os << ',' << (cell ? fixed6(*cell) : "NA");
    }
    os << '\n';
  }
  return os.str();
}

std::string export_edge_list(const OperationMatrix& matrix, bool drop_class4) {
  std::ostringstream os;
  for (int f = 0; f < 10; ++f) {
    for (int t = 0; t < 10; ++t) {
      const auto w = matrix.cells[f][t];
      if (w == 0 || !keep(f, drop_class4) || !keep(t, drop_class4)) continue;
      os << f << '\t' << t << '\t' << w << '\n';
    }
  }
  return os.str();
}

std::string export_distribution_tsv(const LengthDistribution& dist) {
  std::ostringstream os;
  for (const auto& [length, n] : dist.bins) {
    if (n > 0) os << length << '\t' << n << '\n';
  }
  return os.str();
}

std::string export_class_distribution_csv(const ClassDistribution& dist) {
  std::ostringstream os;
  os << "# method=" << to_string(dist.method) << '\n';
  os << "class,count\n";
  for (int c = 0; c < 10; ++c) os << c << ',' << dist.counts[c] << '\n';
  os << "unclassed," << dist.unclassed << '\n';
  return os.str();
}

std::string export_dot(const std::vector<OperationMatrix>& matrices, bool drop_class4,
                       const Settings& settings) {
  // Strengths only count edges that are drawn.
  std::array<std::uint64_t, 10> in{}, out{}, degree{};
  for (const OperationMatrix& m : matrices) {
    for (int f = 0; f < 10; ++f) {
      for (int t = 0; t < 10; ++t) {
        if (!keep(f, drop_class4) || !keep(t, drop_class4)) continue;
        out[f] += m.cells[f][t];
        in[t] += m.cells[f][t];
      }
    }
  }
  std::uint64_t max_degree = 0;
  for (int c = 0; c < 10; ++c) {
    degree[c] = in[c] + out[c];
    max_degree = std::max(max_degree, degree[c]);
  }

  std::ostringstream os;
  os << comment_block(settings, "// ");
  os << "// class4=" << (drop_class4 ? "dropped" : "noise-channel") << '\n';
  os << "digraph udc {\n";
  for (int c = 0; c < 10; ++c) {
    if (!keep(c, drop_class4)) continue;
    const double relative =
        max_degree == 0 ? 0.0 : static_cast<double>(degree[c]) / static_cast<double>(max_degree);
    os << "  n" << c << " [label=\"" << c << "\", in_strength=" << in[c]
       << ", out_strength=" << out[c] << ", weighted_degree=" << degree[c]
       << ", relative_degree=\"" << fixed6(relative) << "\"];\n";
  }
  for (const OperationMatrix& m : matrices) {
    for (int f = 0; f < 10; ++f) {
      for (int t = 0; t < 10; ++t) {
        const auto w = m.cells[f][t];
        if (w == 0 || !keep(f, drop_class4) || !keep(t, drop_class4)) continue;
        os << "  n" << f << " -> n" << t << " [operator=\"" << to_string(m.op)
           << "\", label=\"" << symbol(m.op) << "\", weight=" << w << "];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

std::string export_summary_json(const ProfileReport& report) {
  Json doc;

  Json settings = Json::object();
  for (const auto& [key, value] : report.settings) settings[key] = value;
  doc["settings"] = settings;

  const IngestStats& s = report.ingest;
  Json reasons = Json::object();
  for (const auto& [reason, n] : s.dismissal_reasons) reasons[reason] = n;
  doc["ingest"] = {
      {"lines_read", s.lines_read},
      {"blank_lines", s.blank_lines},
      {"malformed_lines", s.malformed_lines},
      {"lines_without_subfield", s.lines_without_subfield},
      {"candidates_extracted", s.candidates_extracted},
      {"dismissed_non_udc", s.dismissed_non_udc},
      {"records_accepted", s.records_accepted},
      {"dismissal_reasons", reasons},
  };

  auto distribution = [](const ClassDistribution& d) {
    Json counts = Json::object();
    for (int c = 0; c < 10; ++c) counts[std::to_string(c)] = d.counts[c];
    return Json{{"method", to_string(d.method)},
                {"counts", counts},
                {"unclassed", d.unclassed},
                {"ticks", d.ticks()},
                {"records", d.records}};
  };
  doc["class_distribution"] = {{"leading", distribution(report.leading)},
                               {"all", distribution(report.all)}};

  Json lengths = {{"metric", to_string(report.lengths.metric)},
                  {"records", report.lengths.total()}};
  if (auto summary = distribution_summary(report.lengths)) {
    lengths["summary"] = {{"min", summary->min},
                          {"max", summary->max},
                          {"mode", summary->mode},
                          {"total", summary->total}};
  } else {
    lengths["summary"] = nullptr;
  }
  Json bins = Json::array();
  for (const auto& [length, n] : report.lengths.bins) bins.push_back({length, n});
  lengths["bins"] = bins;
  doc["length_distribution"] = lengths;

  Json totals = Json::object();
  for (const auto& [op, total] : report.matrix_totals) totals[std::string(to_string(op))] = total;
  doc["matrix_totals"] = totals;

  return doc.dump(2) + "\n";
}

}  // namespace udc
