#pragma once

// Line-oriented extraction of UDC candidates from catalog exports.
//
// Supported layouts (one record per line, '\n' or '\r\n'):
//   oclc   <id>\ta<udc>
//   libis  $$8<udc>$$a<heading>$$9<lang>\t<count>
//   plain  <udc>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "udc/notation.hpp"
#include "udc/result.hpp"

namespace udc {

enum class InputFormat { oclc, libis, plain };
enum class WeightMode { unique, frequency };

std::string_view to_string(InputFormat format);
std::string_view to_string(WeightMode mode);
std::optional<InputFormat> input_format_from_name(std::string_view name);
std::optional<WeightMode> weight_mode_from_name(std::string_view name);

enum class LineIssue { no_subfield, malformed };

struct LineError {
  LineIssue issue;
  std::string detail;
};

struct OclcLine {
  std::string source_id;
  std::string candidate;
};

struct LibisLine {
  std::string candidate;
  std::string heading;
  std::string language;
  std::uint64_t frequency = 1;
};

Result<OclcLine, LineError> parse_oclc_line(std::string_view line);

// Strict mode requires the '$$8...$$a' markers. Lenient mode also accepts
// degraded rows such as "8(043)U2Dissertaties-U2\t3", where the notation
// runs up to the first alphabetic run of two or more letters.
Result<LibisLine, LineError> parse_libis_line(std::string_view line,
                                              bool lenient = false);

// Trimmed line, or nullopt for a blank line.
std::optional<std::string> parse_plain_line(std::string_view line);

struct UdcRecord {
  std::string source_id;
  std::string raw_udc;
  std::uint64_t frequency = 1;
  Classification result;

  bool accepted() const { return result.has_value(); }
};

struct IngestStats {
  std::uint64_t lines_read = 0;
  std::uint64_t blank_lines = 0;
  std::uint64_t malformed_lines = 0;
  std::uint64_t lines_without_subfield = 0;
  std::uint64_t candidates_extracted = 0;
  std::uint64_t dismissed_non_udc = 0;
  std::uint64_t records_accepted = 0;
  std::map<std::string, std::uint64_t> dismissal_reasons;

  void merge(const IngestStats& other);
  bool operator==(const IngestStats&) const = default;
};

struct IngestOptions {
  InputFormat format = InputFormat::plain;
  WeightMode weights = WeightMode::unique;
  bool lenient_libis = false;
};

// Processes one physical line (terminator already removed). Returns the
// record when a candidate was extracted, accepted or not.
std::optional<UdcRecord> ingest_line(std::string_view line,
                                     std::uint64_t line_number,
                                     const IngestOptions& options,
                                     IngestStats& stats);

using RecordSink = std::function<void(const UdcRecord&)>;

// Streams `in` line by line, in order, calling `sink` for every record.
IngestStats ingest_stream(std::istream& in, const IngestOptions& options,
                          const RecordSink& sink);

// Replaces bytes that are not valid UTF-8 with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

// Reads up to `max_lines` lines into `out` (cleared first), stripping '\n'
// and a trailing '\r'. Returns false once the stream is exhausted and
// nothing was read.
bool read_line_batch(std::istream& in, std::size_t max_lines,
                     std::vector<std::string>& out);

// Chunked parallel fold over the records of a stream.
//
// Lines are read in batches; each batch is cut into `workers` contiguous
// chunks folded concurrently into private accumulators which are then merged.
// `Acc` must be default-constructible with `void merge(const Acc&)`, and
// merge must be commutative and associative so results do not depend on the
// worker count or batch size.
template <typename Acc, typename Step>
Acc fold_stream(std::istream& in, const IngestOptions& options,
                unsigned workers, Step step, IngestStats& stats,
                std::size_t batch_lines = 1u << 16) {
  if (workers == 0) workers = 1;
  Acc total;
  std::vector<std::string> batch;
  std::uint64_t first_line = 1;

  while (read_line_batch(in, batch_lines, batch)) {
    const std::size_t n = batch.size();
    const std::size_t chunks = std::min<std::size_t>(workers, n);
    std::vector<Acc> partial(chunks);
    std::vector<IngestStats> partial_stats(chunks);

    auto run_chunk = [&](std::size_t c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      for (std::size_t i = begin; i < end; ++i) {
        auto record = ingest_line(batch[i], first_line + i, options,
                                  partial_stats[c]);
        if (record) step(partial[c], *record);
      }
    };

    std::vector<std::jthread> threads;
    threads.reserve(chunks > 0 ? chunks - 1 : 0);
    for (std::size_t c = 1; c < chunks; ++c) threads.emplace_back(run_chunk, c);
    if (chunks > 0) run_chunk(0);
    threads.clear();  // joins

    for (std::size_t c = 0; c < chunks; ++c) {
      total.merge(partial[c]);
      stats.merge(partial_stats[c]);
    }
    first_line += n;
  }
  return total;
}

}  // namespace udc
