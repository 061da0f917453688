#pragma once

// Lexing and parsing of UDC notation strings.
//
// A UDC string is a sequence of terms joined by connectors:
//
//   394.4 :[92(100+437) :329(437).15(091)+327.32(100)]
//   ^term ^conn ^group term .........................
//
// Terms carry a main class number plus qualifiers (common auxiliaries in
// brackets or quotes, special auxiliaries introduced by '-', '.0' or ''',
// extensions, ignorable '<...>' and '*...' notation). Connectors that appear
// inside auxiliary payloads are kept on the auxiliary and never become
// top-level connectors.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "udc/result.hpp"

namespace udc {

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind {
  digits,
  dot,
  colon,
  double_colon,
  plus,
  stroke,
  open_square,
  close_square,
  open_paren,
  close_paren,
  quote,
  equals,
  hyphen,
  apostrophe,
  asterisk,
  angle_span,
  alpha_span,
  whitespace,
  other,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string_view lexeme;  // view into the tokenized input
  std::size_t offset;

  bool operator==(const Token&) const = default;
};

// Total: every byte of `raw` lands in exactly one token, in order.
std::vector<Token> tokenize(std::string_view raw);

// ---------------------------------------------------------------------------
// Expression tree

enum class ConnectorKind { plus, stroke, colon, double_colon };

std::string_view to_string(ConnectorKind kind);
std::string_view symbol(ConnectorKind kind);
std::optional<ConnectorKind> connector_from_name(std::string_view name);

struct Connector {
  ConnectorKind kind;
  std::size_t offset = 0;
  std::string leading_space;
};

enum class AuxiliaryKind {
  place,
  form,
  time,
  language,
  special_hyphen,
  special_point_zero,
  special_apostrophe,
  alphabetic_extension,
  non_udc_asterisk,
  ignored_angle,
};

std::string_view to_string(AuxiliaryKind kind);

struct InnerConnector {
  ConnectorKind kind;
  std::size_t offset;  // absolute byte offset in the parsed string
};

struct Auxiliary {
  AuxiliaryKind kind;
  std::string payload;  // content without delimiters
  std::string text;     // exact source text, delimiters included
  std::vector<InnerConnector> inner_connectors;
  std::size_t offset = 0;

  // '<...>' and '*...' notation is kept for rendering but skipped by analytics.
  bool ignorable() const {
    return kind == AuxiliaryKind::ignored_angle ||
           kind == AuxiliaryKind::non_udc_asterisk;
  }
};

enum class PieceKind {
  class_number,
  auxiliary,
  extension,
  range_stroke,  // '/' joining two qualifiers of the same term (82-31/-32)
  open_group,
  members,
  close_group,
};

// One rendered element of a term, in source order. `index` refers into the
// term's auxiliaries or extensions for those kinds.
struct Piece {
  PieceKind kind;
  std::size_t index = 0;
  std::string leading_space;
};

struct Member;

struct Term {
  enum class Variant { simple, group };

  Variant variant = Variant::simple;

  // Simple terms: raw class number with dots ("394.4"); empty when the term
  // is auxiliary-only (a bare '"18"' or '(043)').
  std::string class_number;
  std::vector<Auxiliary> auxiliaries;
  std::vector<std::string> extensions;  // raw, leading '.' included
  std::vector<std::size_t> ranges;      // offsets of range strokes

  // Group terms ('[...]'): at least one member.
  std::vector<Member> members;

  std::vector<Piece> layout;
  std::size_t offset = 0;

  bool is_group() const { return variant == Variant::group; }
  // Class number with the dots removed ("3944").
  std::string class_digits() const;
};

struct Member {
  std::optional<Connector> connector;  // empty for the first member
  Term term;
};

struct UdcExpression {
  std::string raw;
  std::vector<Term> terms;
  std::vector<Connector> connectors;  // connectors[i] joins terms[i], terms[i+1]
  std::string leading_space;
  std::string trailing_space;
};

enum class ParseErrorKind {
  unbalanced_bracket,
  empty_expression,
  dangling_connector,
  malformed_auxiliary,
  unexpected_token,
};

std::string_view to_string(ParseErrorKind kind);

struct ParseError {
  ParseErrorKind kind;
  std::size_t offset = 0;
  std::string message;
};

Result<UdcExpression, ParseError> parse(std::string_view raw);

// Exact inverse of parse for every accepted string.
std::string render(const UdcExpression& expr);

// ---------------------------------------------------------------------------
// Classification of candidate strings

enum class RejectionKind { parse_error, shape };

struct Rejection {
  RejectionKind kind;
  std::optional<ParseError> error;
  std::string detail;

  // Stable short code used when tallying dismissals, e.g.
  // "empty-expression" or "shape-rejection".
  std::string code() const;
};

using Classification = Result<UdcExpression, Rejection>;

Classification classify(std::string_view raw);

// ---------------------------------------------------------------------------
// Class queries

using MainClass = int;  // 0-9

std::optional<MainClass> main_class_of(const Term& term);
std::optional<MainClass> leading_class(const UdcExpression& expr);
std::vector<MainClass> all_classes(const UdcExpression& expr);

enum class LengthMetric { chars, digits };

std::string_view to_string(LengthMetric metric);
std::optional<LengthMetric> length_metric_from_name(std::string_view name);

std::size_t string_length(std::string_view raw, LengthMetric metric);

// Indented one-node-per-line tree listing for debugging.
std::string dump_tree(const UdcExpression& expr);

}  // namespace udc
