#include "udc/cooccur.hpp"

#include <algorithm>

namespace udc {

std::string_view to_string(SuppressionReason reason) {
  switch (reason) {
    case SuppressionReason::auxiliary_internal: return "auxiliary-internal";
    case SuppressionReason::auxiliary_range: return "auxiliary-range";
    case SuppressionReason::classless_operand: return "classless-operand";
    case SuppressionReason::operator_excluded: return "operator-excluded";
    case SuppressionReason::group_internal_disabled: return "group-internal-disabled";
  }
  return "?";
}

namespace {

std::optional<MainClass> group_leading(const Term& group) {
  for (const Member& m : group.members) {
    if (m.term.is_group()) {
      if (auto c = group_leading(m.term)) return c;
    } else if (auto c = main_class_of(m.term)) {
      return c;
    }
  }
  return std::nullopt;
}

std::vector<MainClass> operand_classes(const Term& t, const LinkPolicy& policy) {
  std::vector<MainClass> out;
  if (!t.is_group()) {
    if (auto c = main_class_of(t)) out.push_back(*c);
  } else if (policy.distribute_over_groups) {
    for (const Member& m : t.members) {
      if (auto c = main_class_of(m.term)) out.push_back(*c);
    }
  } else if (auto c = group_leading(t)) {
    out.push_back(*c);
  }
  return out;
}

class Tracer {
 public:
  explicit Tracer(const LinkPolicy& policy) : policy_(policy) {}

  // terms[i] and terms[i + 1] are joined by *connectors[i].
  void sequence(const std::vector<const Term*>& terms,
                const std::vector<const Connector*>& connectors, bool internal) {
    for (const Term* t : terms) term(*t, internal);
    for (std::size_t i = 0; i < connectors.size(); ++i) {
      connector(*connectors[i], *terms[i], *terms[i + 1], internal);
    }
  }

  std::vector<LinkTrace> take() {
    std::stable_sort(out_.begin(), out_.end(),
                     [](const LinkTrace& a, const LinkTrace& b) { return a.offset < b.offset; });
    return std::move(out_);
  }

 private:
  void term(const Term& t, bool internal) {
    for (const Auxiliary& aux : t.auxiliaries) {
      for (const InnerConnector& ic : aux.inner_connectors) {
        out_.push_back({ic.kind, ic.offset, internal, {}, SuppressionReason::auxiliary_internal});
      }
    }
    for (std::size_t offset : t.ranges) {
      out_.push_back({ConnectorKind::stroke, offset, internal, {},
                      SuppressionReason::auxiliary_range});
    }
    if (!t.is_group()) return;

    std::vector<const Term*> terms;
    std::vector<const Connector*> connectors;
    for (const Member& m : t.members) {
      if (m.connector) connectors.push_back(&*m.connector);
      terms.push_back(&m.term);
    }
    sequence(terms, connectors, /*internal=*/true);
  }

  void connector(const Connector& c, const Term& left, const Term& right, bool internal) {
    LinkTrace trace{c.kind, c.offset, internal, {}, std::nullopt};
    if (!policy_.operators.contains(c.kind)) {
      trace.suppressed = SuppressionReason::operator_excluded;
    } else if (internal && !policy_.count_group_internal) {
      trace.suppressed = SuppressionReason::group_internal_disabled;
    } else {
      const auto from = operand_classes(left, policy_);
      const auto to = operand_classes(right, policy_);
      for (MainClass f : from) {
        for (MainClass t : to) trace.links.push_back({c.kind, f, t, 1});
      }
      if (trace.links.empty()) trace.suppressed = SuppressionReason::classless_operand;
    }
    out_.push_back(std::move(trace));
  }

  const LinkPolicy& policy_;
  std::vector<LinkTrace> out_;
};

}  // namespace

std::vector<LinkTrace> trace_links(const UdcExpression& expr, const LinkPolicy& policy) {
  std::vector<const Term*> terms;
  std::vector<const Connector*> connectors;
  for (const Term& t : expr.terms) terms.push_back(&t);
  for (const Connector& c : expr.connectors) connectors.push_back(&c);
  Tracer tracer(policy);
  tracer.sequence(terms, connectors, /*internal=*/false);
  return tracer.take();
}

std::vector<Link> extract_links(const UdcExpression& expr, const LinkPolicy& policy) {
  std::vector<Link> links;
  for (LinkTrace& t : trace_links(expr, policy)) {
    links.insert(links.end(), t.links.begin(), t.links.end());
  }
  return links;
}

std::uint64_t OperationMatrix::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : cells) {
    for (auto n : row) sum += n;
  }
  return sum;
}

void OperationMatrix::merge(const OperationMatrix& other) {
  for (std::size_t f = 0; f < 10; ++f) {
    for (std::size_t t = 0; t < 10; ++t) cells[f][t] += other.cells[f][t];
  }
}

MatrixSet MatrixSet::for_policy(const LinkPolicy& policy) {
  MatrixSet set;
  for (ConnectorKind op : policy.operators) set.matrices[op].op = op;
  return set;
}

void MatrixSet::add(const UdcExpression& expr, const LinkPolicy& policy,
                    std::uint64_t weight) {
  for (const Link& link : extract_links(expr, policy)) {
    OperationMatrix& m = matrices[link.op];
    m.op = link.op;
    m.cells[link.from][link.to] += link.weight * weight;
  }
}

void MatrixSet::merge(const MatrixSet& other) {
  for (const auto& [op, m] : other.matrices) {
    OperationMatrix& mine = matrices[op];
    mine.op = op;
    mine.merge(m);
  }
}

std::map<ConnectorKind, OperationMatrix> build_matrices(std::span<const UdcRecord> records,
                                                        const LinkPolicy& policy,
                                                        WeightMode weights) {
  MatrixSet set = MatrixSet::for_policy(policy);
  for (const UdcRecord& r : records) {
    if (!r.accepted()) continue;
    set.add(*r.result, policy, weights == WeightMode::frequency ? r.frequency : 1);
  }
  return std::move(set.matrices);
}

DegreeVector weighted_degree(const OperationMatrix& matrix) {
  DegreeVector d;
  for (std::size_t f = 0; f < 10; ++f) {
    for (std::size_t t = 0; t < 10; ++t) {
      d.out_strength[f] += matrix.cells[f][t];
      d.in_strength[t] += matrix.cells[f][t];
    }
  }
  for (std::size_t c = 0; c < 10; ++c) {
    d.weighted_degree[c] = d.in_strength[c] + d.out_strength[c];
  }
  return d;
}

NormalizedMatrix normalize_matrix(const OperationMatrix& matrix,
                                  const ClassDistribution& occurrence) {
  NormalizedMatrix out;
  for (std::size_t f = 0; f < 10; ++f) {
    for (std::size_t t = 0; t < 10; ++t) {
      const auto denom = static_cast<double>(occurrence.counts[f]) *
                         static_cast<double>(occurrence.counts[t]);
      if (denom > 0) out[f][t] = static_cast<double>(matrix.cells[f][t]) / denom;
    }
  }
  return out;
}

}  // namespace udc
