#pragma once

// Class distributions and string-length distributions over record streams.
// Every accumulator here is a commutative monoid under merge().

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>

#include "udc/ingest.hpp"
#include "udc/notation.hpp"

namespace udc {

enum class CountingMethod {
  leading,  // one tick for the number at the start of the string
  all,      // one tick for every class-bearing number in the string
};

std::string_view to_string(CountingMethod method);
std::optional<CountingMethod> counting_method_from_name(std::string_view name);

struct ClassDistribution {
  CountingMethod method = CountingMethod::leading;
  std::array<std::uint64_t, 10> counts{};
  std::uint64_t unclassed = 0;  // records that produced no class tick
  std::uint64_t records = 0;    // weighted record count

  void add(const UdcExpression& expr, std::uint64_t weight = 1);
  void merge(const ClassDistribution& other);
  std::uint64_t ticks() const;

  bool operator==(const ClassDistribution&) const = default;
};

// Skips records that were dismissed as non-UDC.
ClassDistribution class_distribution(std::span<const UdcRecord> records,
                                     CountingMethod method, WeightMode weights);

struct LengthDistribution {
  LengthMetric metric = LengthMetric::chars;
  std::map<std::size_t, std::uint64_t> bins;  // length -> count, no zero counts

  void add(std::string_view raw);
  void merge(const LengthDistribution& other);
  std::uint64_t total() const;

  bool operator==(const LengthDistribution&) const = default;
};

LengthDistribution length_distribution(std::span<const UdcRecord> records,
                                       LengthMetric metric);

struct DistributionSummary {
  std::size_t min = 0;
  std::size_t max = 0;
  std::size_t mode = 0;  // smallest length among the most frequent
  std::uint64_t total = 0;

  bool operator==(const DistributionSummary&) const = default;
};

// nullopt for an empty distribution.
std::optional<DistributionSummary> distribution_summary(const LengthDistribution& dist);

}  // namespace udc
