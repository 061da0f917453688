#include "udc/analytics.hpp"

namespace udc {

std::string_view to_string(CountingMethod method) {
  return method == CountingMethod::leading ? "leading" : "all";
}

std::optional<CountingMethod> counting_method_from_name(std::string_view name) {
  if (name == "leading") return CountingMethod::leading;
  if (name == "all") return CountingMethod::all;
  return std::nullopt;
}

void ClassDistribution::add(const UdcExpression& expr, std::uint64_t weight) {
  records += weight;
  if (method == CountingMethod::leading) {
    if (auto c = leading_class(expr)) {
      counts[*c] += weight;
    } else {
      unclassed += weight;
    }
    return;
  }
  const auto classes = all_classes(expr);
  if (classes.empty()) unclassed += weight;
  for (MainClass c : classes) counts[c] += weight;
}

void ClassDistribution::merge(const ClassDistribution& other) {
  for (std::size_t c = 0; c < counts.size(); ++c) counts[c] += other.counts[c];
  unclassed += other.unclassed;
  records += other.records;
}

std::uint64_t ClassDistribution::ticks() const {
  std::uint64_t sum = 0;
  for (auto n : counts) sum += n;
  return sum;
}

ClassDistribution class_distribution(std::span<const UdcRecord> records,
                                     CountingMethod method, WeightMode weights) {
  ClassDistribution dist;
  dist.method = method;
  for (const UdcRecord& r : records) {
    if (!r.accepted()) continue;
    dist.add(*r.result, weights == WeightMode::frequency ? r.frequency : 1);
  }
  return dist;
}

void LengthDistribution::add(std::string_view raw) {
  ++bins[string_length(raw, metric)];
}

void LengthDistribution::merge(const LengthDistribution& other) {
  for (const auto& [length, n] : other.bins) bins[length] += n;
}

std::uint64_t LengthDistribution::total() const {
  std::uint64_t sum = 0;
  for (const auto& [length, n] : bins) sum += n;
  return sum;
}

LengthDistribution length_distribution(std::span<const UdcRecord> records,
                                       LengthMetric metric) {
  LengthDistribution dist;
  dist.metric = metric;
  for (const UdcRecord& r : records) {
    if (r.accepted()) dist.add(r.raw_udc);
  }
  return dist;
}

std::optional<DistributionSummary> distribution_summary(const LengthDistribution& dist) {
  if (dist.bins.empty()) return std::nullopt;
  DistributionSummary s;
  s.min = dist.bins.begin()->first;
  s.max = dist.bins.rbegin()->first;
  std::uint64_t best = 0;
  for (const auto& [length, n] : dist.bins) {
    // Ascending iteration with strict '>' keeps the smallest length on ties.
    if (n > best) {
      best = n;
      s.mode = length;
    }
    s.total += n;
  }
  return s;
}

}  // namespace udc
