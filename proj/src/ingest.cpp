#include "udc/ingest.hpp"

#include <algorithm>
#include <charconv>

namespace udc {

namespace {

constexpr std::string_view kSpace = " \t\r\n\f\v";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

LineError no_subfield(std::string detail) {
  return {LineIssue::no_subfield, std::move(detail)};
}

LineError malformed(std::string detail) {
  return {LineIssue::malformed, std::move(detail)};
}

// Heading and language from the part of a LIBIS line after the notation.
void split_heading(std::string_view rest, LibisLine& out) {
  const auto lang_at = rest.find("$$9");
  if (lang_at == std::string_view::npos) {
    out.heading = std::string(rest);
  } else {
    out.heading = std::string(rest.substr(0, lang_at));
    out.language = std::string(rest.substr(lang_at + 3));
  }
}

}  // namespace

std::string_view to_string(InputFormat format) {
  switch (format) {
    case InputFormat::oclc: return "oclc";
    case InputFormat::libis: return "libis";
    case InputFormat::plain: return "plain";
  }
  return "?";
}

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::unique ? "unique" : "frequency";
}

std::optional<InputFormat> input_format_from_name(std::string_view name) {
  if (name == "oclc") return InputFormat::oclc;
  if (name == "libis") return InputFormat::libis;
  if (name == "plain") return InputFormat::plain;
  return std::nullopt;
}

std::optional<WeightMode> weight_mode_from_name(std::string_view name) {
  if (name == "unique") return WeightMode::unique;
  if (name == "frequency") return WeightMode::frequency;
  return std::nullopt;
}

Result<OclcLine, LineError> parse_oclc_line(std::string_view line) {
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) return malformed("no tab separator");

  OclcLine out;
  out.source_id = std::string(line.substr(0, tab));
  std::string_view field = line.substr(tab + 1);
  if (field.empty() || field.front() != 'a') {
    return no_subfield("second field has no 'a' subfield");
  }
  const std::string_view candidate = trim(field.substr(1));
  if (candidate.empty()) return no_subfield("empty 'a' subfield");
  out.candidate = std::string(candidate);
  return out;
}

Result<LibisLine, LineError> parse_libis_line(std::string_view line,
                                              bool lenient) {
  LibisLine out;

  std::string_view record = line;
  const auto tab = line.rfind('\t');
  if (tab != std::string_view::npos) {
    record = line.substr(0, tab);
    const std::string_view count = trim(line.substr(tab + 1));
    if (!count.empty()) {
      std::uint64_t value = 0;
      const auto [end, ec] =
          std::from_chars(count.data(), count.data() + count.size(), value);
      if (ec != std::errc{} || end != count.data() + count.size() || value == 0) {
        return malformed("count field '" + std::string(count) +
                         "' is not a positive integer");
      }
      out.frequency = value;
    }
  }

  std::string_view body;
  if (const auto marker = record.find("$$8"); marker != std::string_view::npos) {
    body = record.substr(marker + 3);
  } else if (!lenient) {
    return no_subfield("no '$$8' subfield");
  } else {
    // Degraded row: the '$$' markers were lost, leaving a bare leading '8'.
    const std::string_view trimmed = trim(record);
    if (trimmed.empty() || trimmed.front() != '8') {
      return no_subfield("no '$$8' subfield");
    }
    body = trimmed.substr(1);
  }

  std::string_view notation = body;
  if (const auto heading_at = body.find("$$a"); heading_at != std::string_view::npos) {
    notation = body.substr(0, heading_at);
    split_heading(body.substr(heading_at + 3), out);
  } else if (lenient) {
    // No heading marker: the notation ends where the first word begins.
    for (std::size_t i = 0; i + 1 < body.size(); ++i) {
      if (is_alpha(body[i]) && is_alpha(body[i + 1])) {
        notation = body.substr(0, i);
        split_heading(body.substr(i), out);
        break;
      }
    }
  } else if (const auto lang_at = body.find("$$9"); lang_at != std::string_view::npos) {
    notation = body.substr(0, lang_at);
    out.language = std::string(body.substr(lang_at + 3));
  }

  notation = trim(notation);
  if (notation.empty()) return no_subfield("empty notation subfield");
  out.candidate = std::string(notation);
  return out;
}

std::optional<std::string> parse_plain_line(std::string_view line) {
  const std::string_view t = trim(line);
  if (t.empty()) return std::nullopt;
  return std::string(t);
}

void IngestStats::merge(const IngestStats& o) {
  lines_read += o.lines_read;
  blank_lines += o.blank_lines;
  malformed_lines += o.malformed_lines;
  lines_without_subfield += o.lines_without_subfield;
  candidates_extracted += o.candidates_extracted;
  dismissed_non_udc += o.dismissed_non_udc;
  records_accepted += o.records_accepted;
  for (const auto& [reason, n] : o.dismissal_reasons) dismissal_reasons[reason] += n;
}

std::optional<UdcRecord> ingest_line(std::string_view line,
                                     std::uint64_t line_number,
                                     const IngestOptions& options,
                                     IngestStats& stats) {
  ++stats.lines_read;
  if (trim(line).empty()) {
    ++stats.blank_lines;
    return std::nullopt;
  }

  std::string clean;
  if (std::any_of(line.begin(), line.end(),
                  [](char c) { return static_cast<unsigned char>(c) >= 0x80; })) {
    clean = sanitize_utf8(line);
    line = clean;
  }

  std::string source_id = std::to_string(line_number);
  std::string candidate;
  std::uint64_t frequency = 1;

  auto reject_line = [&](const LineError& e) {
    if (e.issue == LineIssue::malformed) {
      ++stats.malformed_lines;
    } else {
      ++stats.lines_without_subfield;
    }
  };

  switch (options.format) {
    case InputFormat::oclc: {
      auto parsed = parse_oclc_line(line);
      if (!parsed) {
        reject_line(parsed.error());
        return std::nullopt;
      }
      source_id = std::move(parsed->source_id);
      candidate = std::move(parsed->candidate);
      break;
    }
    case InputFormat::libis: {
      auto parsed = parse_libis_line(line, options.lenient_libis);
      if (!parsed) {
        reject_line(parsed.error());
        return std::nullopt;
      }
      candidate = std::move(parsed->candidate);
      frequency = parsed->frequency;
      break;
    }
    case InputFormat::plain:
      candidate = *parse_plain_line(line);
      break;
  }

  if (options.weights == WeightMode::unique) frequency = 1;
  ++stats.candidates_extracted;

  Classification result = classify(candidate);
  if (result) {
    ++stats.records_accepted;
  } else {
    ++stats.dismissed_non_udc;
    ++stats.dismissal_reasons[result.error().code()];
  }
  return UdcRecord{std::move(source_id), std::move(candidate), frequency,
                   std::move(result)};
}

IngestStats ingest_stream(std::istream& in, const IngestOptions& options,
                          const RecordSink& sink) {
  IngestStats stats;
  std::string line;
  std::uint64_t line_number = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto record = ingest_line(line, ++line_number, options, stats);
    if (record && sink) sink(*record);
  }
  if (in.bad()) throw std::ios_base::failure("read error");
  return stats;
}

bool read_line_batch(std::istream& in, std::size_t max_lines,
                     std::vector<std::string>& out) {
  out.clear();
  std::string line;
  while (out.size() < max_lines && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
  }
  if (in.bad()) throw std::ios_base::failure("read error");
  return !out.empty();
}

std::string sanitize_utf8(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto b = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t min = 0;
    if (b < 0x80) {
      out.push_back(static_cast<char>(b));
      ++i;
      continue;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2, min = 0x80;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3, min = 0x800;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4, min = 0x10000;
    }

    bool ok = len > 0 && i + len <= n;
    std::uint32_t cp = len > 0 ? (b & (0x7F >> len)) : 0;
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto cont = static_cast<unsigned char>(bytes[i + k]);
      if ((cont & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (cont & 0x3F);
      }
    }
    ok = ok && cp >= min && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
    if (ok) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      out.append(kReplacement);
      ++i;
    }
  }
  return out;
}

}  // namespace udc
