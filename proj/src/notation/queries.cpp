#include <sstream>

#include "udc/notation.hpp"

namespace udc {

std::optional<MainClass> main_class_of(const Term& term) {
  if (term.is_group() || term.class_number.empty()) return std::nullopt;
  return term.class_number.front() - '0';
}

namespace {

std::optional<MainClass> first_class(const std::vector<const Term*>& terms) {
  for (const Term* t : terms) {
    if (t->is_group()) {
      std::vector<const Term*> inner;
      for (const Member& m : t->members) inner.push_back(&m.term);
      if (auto c = first_class(inner)) return c;
    } else if (auto c = main_class_of(*t)) {
      return c;
    }
  }
  return std::nullopt;
}

void collect_classes(const Term& t, std::vector<MainClass>& out) {
  if (t.is_group()) {
    for (const Member& m : t.members) collect_classes(m.term, out);
  } else if (auto c = main_class_of(t)) {
    out.push_back(*c);
  }
}

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::optional<MainClass> leading_class(const UdcExpression& expr) {
  std::vector<const Term*> terms;
  for (const Term& t : expr.terms) terms.push_back(&t);
  return first_class(terms);
}

std::vector<MainClass> all_classes(const UdcExpression& expr) {
  std::vector<MainClass> out;
  for (const Term& t : expr.terms) collect_classes(t, out);
  return out;
}

std::string_view to_string(LengthMetric metric) {
  return metric == LengthMetric::chars ? "chars" : "digits";
}

std::optional<LengthMetric> length_metric_from_name(std::string_view name) {
  if (name == "chars") return LengthMetric::chars;
  if (name == "digits") return LengthMetric::digits;
  return std::nullopt;
}

std::size_t string_length(std::string_view raw, LengthMetric metric) {
  std::size_t n = 0;
  for (char c : raw) {
    if (metric == LengthMetric::digits) {
      n += (c >= '0' && c <= '9');
    } else {
      // Count code points: UTF-8 continuation bytes are 10xxxxxx.
      const auto byte = static_cast<unsigned char>(c);
      n += !is_ascii_space(c) && (byte & 0xC0) != 0x80;
    }
  }
  return n;
}

std::string Rejection::code() const {
  if (kind == RejectionKind::shape) return "shape-rejection";
  return error ? std::string(to_string(error->kind)) : "parse-error";
}

Classification classify(std::string_view raw) {
  const auto first = raw.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) {
    return Rejection{RejectionKind::parse_error,
                     ParseError{ParseErrorKind::empty_expression, 0, "no notation"},
                     "empty string"};
  }
  const char lead = raw[first];
  if (is_ascii_alpha(lead) || static_cast<unsigned char>(lead) >= 0x80) {
    return Rejection{RejectionKind::shape, std::nullopt,
                     "leading alphabetic run with no class digits"};
  }

  auto parsed = parse(raw);
  if (!parsed) {
    return Rejection{RejectionKind::parse_error, parsed.error(),
                     parsed.error().message};
  }

  const bool udc_start = (lead >= '0' && lead <= '9') || lead == '(' ||
                         lead == '"' || lead == '=' || lead == '[';
  if (!udc_start) {
    return Rejection{RejectionKind::shape, std::nullopt,
                     std::string("leading '") + lead +
                         "' cannot start a UDC number"};
  }
  return std::move(parsed).value();
}

namespace {

void dump_term(const Term& t, int depth, std::ostringstream& os);

void indent(int depth, std::ostringstream& os) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void dump_connector(const Connector& c, int depth, std::ostringstream& os) {
  indent(depth, os);
  os << "connector " << to_string(c.kind) << " '" << symbol(c.kind) << "' @"
     << c.offset << '\n';
}

void dump_term(const Term& t, int depth, std::ostringstream& os) {
  indent(depth, os);
  if (t.is_group()) {
    os << "group @" << t.offset << " members=" << t.members.size() << '\n';
    for (const Member& m : t.members) {
      if (m.connector) dump_connector(*m.connector, depth + 1, os);
      dump_term(m.term, depth + 1, os);
    }
  } else if (t.class_number.empty()) {
    os << "term @" << t.offset << " auxiliary-only\n";
  } else {
    os << "term @" << t.offset << " class-number=" << t.class_number
       << " main-class=" << *main_class_of(t) << '\n';
  }
  for (const Piece& p : t.layout) {
    if (p.kind == PieceKind::auxiliary) {
      const Auxiliary& a = t.auxiliaries[p.index];
      indent(depth + 1, os);
      os << "auxiliary " << to_string(a.kind) << " payload=\"" << a.payload
         << '"';
      if (a.ignorable()) os << " ignored";
      for (const InnerConnector& ic : a.inner_connectors) {
        os << " inner-" << to_string(ic.kind) << "@" << ic.offset;
      }
      os << '\n';
    } else if (p.kind == PieceKind::extension) {
      indent(depth + 1, os);
      os << "extension " << t.extensions[p.index] << '\n';
    } else if (p.kind == PieceKind::range_stroke) {
      indent(depth + 1, os);
      os << "range '/' @" << t.ranges[p.index] << '\n';
    }
  }
}

}  // namespace

std::string dump_tree(const UdcExpression& expr) {
  std::ostringstream os;
  os << "expression terms=" << expr.terms.size()
     << " connectors=" << expr.connectors.size() << '\n';
  for (std::size_t i = 0; i < expr.terms.size(); ++i) {
    if (i > 0) dump_connector(expr.connectors[i - 1], 1, os);
    dump_term(expr.terms[i], 1, os);
  }
  return os.str();
}

}  // namespace udc
