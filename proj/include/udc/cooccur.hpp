#pragma once

// Directed class-to-class links per connector operator.
//
// Each connector between two terms links the main class of its left operand
// (row) to the main class of its right operand (column). Matrices are 10x10
// over classes 0-9; class 4 is kept as a noise channel since a correct parse
// of current UDC should never produce it.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "udc/analytics.hpp"
#include "udc/ingest.hpp"
#include "udc/notation.hpp"

namespace udc {

struct LinkPolicy {
  std::set<ConnectorKind> operators{ConnectorKind::plus, ConnectorKind::stroke,
                                    ConnectorKind::colon};
  // A connector next to '[...]' links to every class-bearing member.
  bool distribute_over_groups = true;
  // Connectors between members of a group emit links too.
  bool count_group_internal = true;
};

struct Link {
  ConnectorKind op;
  MainClass from;
  MainClass to;
  std::uint64_t weight = 1;

  bool operator==(const Link&) const = default;
};

enum class SuppressionReason {
  auxiliary_internal,       // connector inside an auxiliary payload
  auxiliary_range,          // '/' ranging over qualifiers of one term
  classless_operand,        // an operand has no main class
  operator_excluded,        // operator not in the policy
  group_internal_disabled,  // inside '[...]' with group-internal counting off
};

std::string_view to_string(SuppressionReason reason);

// Every connector of an expression with the links it produced, or the reason
// it produced none. Sorted by source offset.
struct LinkTrace {
  ConnectorKind op;
  std::size_t offset;
  bool group_internal = false;
  std::vector<Link> links;
  std::optional<SuppressionReason> suppressed;
};

std::vector<LinkTrace> trace_links(const UdcExpression& expr, const LinkPolicy& policy);
std::vector<Link> extract_links(const UdcExpression& expr, const LinkPolicy& policy);

using CellMatrix = std::array<std::array<std::uint64_t, 10>, 10>;

struct OperationMatrix {
  ConnectorKind op = ConnectorKind::colon;
  CellMatrix cells{};  // [from][to]

  std::uint64_t total() const;
  void merge(const OperationMatrix& other);
  bool operator==(const OperationMatrix&) const = default;
};

// One matrix per policy operator, always present even when empty.
struct MatrixSet {
  std::map<ConnectorKind, OperationMatrix> matrices;

  static MatrixSet for_policy(const LinkPolicy& policy);
  void add(const UdcExpression& expr, const LinkPolicy& policy, std::uint64_t weight);
  void merge(const MatrixSet& other);
  bool operator==(const MatrixSet&) const = default;
};

std::map<ConnectorKind, OperationMatrix> build_matrices(std::span<const UdcRecord> records,
                                                        const LinkPolicy& policy,
                                                        WeightMode weights);

struct DegreeVector {
  std::array<std::uint64_t, 10> in_strength{};
  std::array<std::uint64_t, 10> out_strength{};
  std::array<std::uint64_t, 10> weighted_degree{};

  bool operator==(const DegreeVector&) const = default;
};

// A self-loop adds its weight to both in- and out-strength of its class.
DegreeVector weighted_degree(const OperationMatrix& matrix);

// cell[f][t] / (occurrence[f] * occurrence[t]); nullopt where a factor is 0.
using NormalizedMatrix = std::array<std::array<std::optional<double>, 10>, 10>;

NormalizedMatrix normalize_matrix(const OperationMatrix& matrix,
                                  const ClassDistribution& occurrence);

}  // namespace udc
