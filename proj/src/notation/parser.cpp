#include <cassert>
#include <utility>

#include "udc/notation.hpp"

namespace udc {

std::string_view to_string(ConnectorKind kind) {
  switch (kind) {
    case ConnectorKind::plus: return "plus";
    case ConnectorKind::stroke: return "stroke";
    case ConnectorKind::colon: return "colon";
    case ConnectorKind::double_colon: return "double-colon";
  }
  return "?";
}

std::string_view symbol(ConnectorKind kind) {
  switch (kind) {
    case ConnectorKind::plus: return "+";
    case ConnectorKind::stroke: return "/";
    case ConnectorKind::colon: return ":";
    case ConnectorKind::double_colon: return "::";
  }
  return "?";
}

std::optional<ConnectorKind> connector_from_name(std::string_view name) {
  if (name == "plus" || name == "+") return ConnectorKind::plus;
  if (name == "stroke" || name == "/") return ConnectorKind::stroke;
  if (name == "colon" || name == ":") return ConnectorKind::colon;
  if (name == "double-colon" || name == "::") return ConnectorKind::double_colon;
  return std::nullopt;
}

std::string_view to_string(AuxiliaryKind kind) {
  switch (kind) {
    case AuxiliaryKind::place: return "place";
    case AuxiliaryKind::form: return "form";
    case AuxiliaryKind::time: return "time";
    case AuxiliaryKind::language: return "language";
    case AuxiliaryKind::special_hyphen: return "special-hyphen";
    case AuxiliaryKind::special_point_zero: return "special-point-zero";
    case AuxiliaryKind::special_apostrophe: return "special-apostrophe";
    case AuxiliaryKind::alphabetic_extension: return "alphabetic-extension";
    case AuxiliaryKind::non_udc_asterisk: return "non-udc-asterisk";
    case AuxiliaryKind::ignored_angle: return "ignored-angle";
  }
  return "?";
}

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::unbalanced_bracket: return "unbalanced-bracket";
    case ParseErrorKind::empty_expression: return "empty-expression";
    case ParseErrorKind::dangling_connector: return "dangling-connector";
    case ParseErrorKind::malformed_auxiliary: return "malformed-auxiliary";
    case ParseErrorKind::unexpected_token: return "unexpected-token";
  }
  return "?";
}

std::string Term::class_digits() const {
  std::string out;
  for (char c : class_number) {
    if (c != '.') out.push_back(c);
  }
  return out;
}

namespace {

std::optional<ConnectorKind> as_connector(TokenKind kind) {
  switch (kind) {
    case TokenKind::plus: return ConnectorKind::plus;
    case TokenKind::stroke: return ConnectorKind::stroke;
    case TokenKind::colon: return ConnectorKind::colon;
    case TokenKind::double_colon: return ConnectorKind::double_colon;
    default: return std::nullopt;
  }
}

struct Failure {
  ParseError error;
};

// Recursive descent over the token stream. Errors unwind via Failure and are
// converted to a ParseError at the entry point.
class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), tokens_(tokenize(src)) {}

  UdcExpression run() {
    UdcExpression expr;
    expr.raw = std::string(src_);
    expr.leading_space = take_space();
    if (at_end()) fail(ParseErrorKind::empty_expression, 0, "no notation");

    Sequence seq = sequence(/*in_group=*/false, 0, {});
    expr.terms = std::move(seq.terms);
    expr.connectors = std::move(seq.connectors);
    expr.trailing_space = std::move(seq.trailing_space);
    return expr;
  }

 private:
  struct Sequence {
    std::vector<Term> terms;
    std::vector<Connector> connectors;
    std::string trailing_space;
  };

  [[noreturn]] void fail(ParseErrorKind kind, std::size_t offset,
                         std::string message) {
    throw Failure{ParseError{kind, offset, std::move(message)}};
  }

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& cur() const { return tokens_[pos_]; }
  bool cur_is(TokenKind kind) const { return !at_end() && cur().kind == kind; }

  std::string take_space() {
    std::string out;
    while (cur_is(TokenKind::whitespace)) {
      out.append(cur().lexeme);
      ++pos_;
    }
    return out;
  }

  std::size_t end_offset() const { return src_.size(); }

  // Reports a token that can start neither a term nor a connector.
  [[noreturn]] void stray(const Token& tok) {
    const auto lex = tok.lexeme;
    if (tok.kind == TokenKind::close_paren ||
        tok.kind == TokenKind::close_square ||
        (tok.kind == TokenKind::other && (lex == "<" || lex == ">"))) {
      fail(ParseErrorKind::unbalanced_bracket, tok.offset,
           "unmatched '" + std::string(lex) + "'");
    }
    fail(ParseErrorKind::unexpected_token, tok.offset,
         "unexpected " + std::string(to_string(tok.kind)) + " '" +
             std::string(lex) + "'");
  }

  // term (connector term)* up to the end of input, or up to ']' in a group.
  // `lead` is whitespace already consumed before the first term.
  Sequence sequence(bool in_group, std::size_t group_offset, std::string lead) {
    Sequence seq;
    std::optional<Connector> pending;

    auto finished = [&] {
      return at_end() || (in_group && cur_is(TokenKind::close_square));
    };

    for (;;) {
      if (finished()) {
        if (pending) {
          fail(ParseErrorKind::dangling_connector, pending->offset,
               "connector '" + std::string(symbol(pending->kind)) +
                   "' has no right operand");
        }
        if (seq.terms.empty()) {
          fail(ParseErrorKind::empty_expression,
               in_group ? group_offset : end_offset(),
               in_group ? "empty group" : "no notation");
        }
        break;
      }
      if (auto kind = as_connector(cur().kind)) {
        fail(ParseErrorKind::dangling_connector, cur().offset,
             "connector '" + std::string(symbol(*kind)) +
                 "' has no left operand");
      }
      seq.terms.push_back(term(std::exchange(lead, {})));
      if (pending) {
        seq.connectors.push_back(std::move(*pending));
        pending.reset();
      }

      std::string space = take_space();
      if (finished()) {
        seq.trailing_space = std::move(space);
        break;
      }
      if (auto kind = as_connector(cur().kind)) {
        pending = Connector{*kind, cur().offset, std::move(space)};
        ++pos_;
        lead = take_space();
        continue;
      }
      stray(cur());
    }

    assert(seq.connectors.size() + 1 == seq.terms.size());
    return seq;
  }

  Term term(std::string lead) {
    if (at_end()) fail(ParseErrorKind::empty_expression, end_offset(), "missing term");
    const Token& tok = cur();
    Term t;
    t.offset = tok.offset;

    switch (tok.kind) {
      case TokenKind::open_square:
        group(t, std::move(lead));
        break;
      case TokenKind::digits:
        t.layout.push_back({PieceKind::class_number, 0, std::move(lead)});
        t.class_number = class_number();
        break;
      case TokenKind::open_paren:
      case TokenKind::quote:
      case TokenKind::equals:
      case TokenKind::angle_span:
      case TokenKind::asterisk:
        if (!qualifier(t, std::move(lead), /*adjacent=*/true)) stray(tok);
        break;
      default:
        stray(tok);
    }
    qualifiers(t);
    return t;
  }

  void group(Term& t, std::string lead) {
    const std::size_t open = cur().offset;
    t.variant = Term::Variant::group;
    t.layout.push_back({PieceKind::open_group, 0, std::move(lead)});
    ++pos_;
    std::string inner_lead = take_space();
    if (at_end()) fail(ParseErrorKind::unbalanced_bracket, open, "unclosed '['");
    Sequence seq = sequence(/*in_group=*/true, open, std::move(inner_lead));
    if (!cur_is(TokenKind::close_square)) {
      fail(ParseErrorKind::unbalanced_bracket, open, "unclosed '['");
    }
    ++pos_;

    for (std::size_t i = 0; i < seq.terms.size(); ++i) {
      Member m;
      if (i > 0) m.connector = std::move(seq.connectors[i - 1]);
      m.term = std::move(seq.terms[i]);
      t.members.push_back(std::move(m));
    }
    t.layout.push_back({PieceKind::members, 0, {}});
    t.layout.push_back({PieceKind::close_group, 0, std::move(seq.trailing_space)});
  }

  // digits ('.' digits)*, where a dotted run starting with '0' is left for
  // the special-point-zero auxiliary.
  std::string class_number() {
    std::string out(cur().lexeme);
    ++pos_;
    while (cur_is(TokenKind::dot) && next_is(TokenKind::digits) &&
           tokens_[pos_ + 1].lexeme.front() != '0') {
      out.push_back('.');
      out.append(tokens_[pos_ + 1].lexeme);
      pos_ += 2;
    }
    return out;
  }

  bool next_is(TokenKind kind) const {
    return pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].kind == kind;
  }

  std::string_view slice(std::size_t begin, std::size_t end) const {
    return src_.substr(begin, end - begin);
  }

  std::size_t token_end(std::size_t index) const {
    const Token& t = tokens_[index];
    return t.offset + t.lexeme.size();
  }

  void qualifiers(Term& t) {
    for (;;) {
      const std::size_t save = pos_;
      std::string space = take_space();
      if (at_end() || !qualifier(t, space, space.empty())) {
        pos_ = save;
        return;
      }
    }
  }

  void push_aux(Term& t, std::string lead, Auxiliary aux) {
    t.layout.push_back({PieceKind::auxiliary, t.auxiliaries.size(), std::move(lead)});
    t.auxiliaries.push_back(std::move(aux));
  }

  // Tries to consume one qualifier at the cursor. Returns false, consuming
  // nothing, when the cursor does not start a qualifier for this term.
  bool qualifier(Term& t, std::string lead, bool adjacent) {
    const Token& tok = cur();
    switch (tok.kind) {
      case TokenKind::open_paren:
        push_aux(t, std::move(lead), paren_auxiliary());
        return true;
      case TokenKind::quote:
        push_aux(t, std::move(lead), quote_auxiliary());
        return true;
      case TokenKind::angle_span: {
        Auxiliary aux{AuxiliaryKind::ignored_angle,
                      std::string(tok.lexeme.substr(1, tok.lexeme.size() - 2)),
                      std::string(tok.lexeme), {}, tok.offset};
        ++pos_;
        push_aux(t, std::move(lead), std::move(aux));
        return true;
      }
      case TokenKind::asterisk:
        push_aux(t, std::move(lead), asterisk_auxiliary());
        return true;
      case TokenKind::equals:
        push_aux(t, std::move(lead), language_auxiliary());
        return true;
      case TokenKind::hyphen:
        if (!adjacent) return false;
        push_aux(t, std::move(lead),
                 special_auxiliary(AuxiliaryKind::special_hyphen));
        return true;
      case TokenKind::apostrophe:
        if (!adjacent) return false;
        push_aux(t, std::move(lead),
                 special_auxiliary(AuxiliaryKind::special_apostrophe));
        return true;
      case TokenKind::dot:
        if (!adjacent) return false;
        dotted(t, std::move(lead));
        return true;
      case TokenKind::alpha_span:
        if (!adjacent) return false;
        push_aux(t, std::move(lead), alphabetic_extension());
        return true;
      case TokenKind::digits:
        // A class number may follow a leading auxiliary ("(043)001").
        if (!adjacent || t.is_group() || !t.class_number.empty()) return false;
        t.layout.push_back({PieceKind::class_number, 0, std::move(lead)});
        t.class_number = class_number();
        return true;
      case TokenKind::stroke:
        // '/' followed directly by '-' or '.' ranges over qualifiers of the
        // current term (82-31/-32, 629.734/.735).
        if (t.layout.empty()) return false;
        if (!(next_is(TokenKind::hyphen) || next_is(TokenKind::dot))) return false;
        t.layout.push_back({PieceKind::range_stroke, t.ranges.size(), std::move(lead)});
        t.ranges.push_back(tok.offset);
        ++pos_;
        return true;
      default:
        return false;
    }
  }

  void collect_inner(Auxiliary& aux, std::size_t from, std::size_t to) const {
    for (std::size_t i = from; i < to; ++i) {
      if (auto kind = as_connector(tokens_[i].kind)) {
        aux.inner_connectors.push_back({*kind, tokens_[i].offset});
      }
    }
  }

  Auxiliary paren_auxiliary() {
    const std::size_t open_index = pos_;
    const std::size_t open = cur().offset;
    int depth = 0;
    std::size_t i = pos_;
    for (; i < tokens_.size(); ++i) {
      if (tokens_[i].kind == TokenKind::open_paren) ++depth;
      if (tokens_[i].kind == TokenKind::close_paren && --depth == 0) break;
    }
    if (i == tokens_.size()) fail(ParseErrorKind::unbalanced_bracket, open, "unclosed '('");

    Auxiliary aux;
    aux.offset = open;
    aux.text = std::string(slice(open, token_end(i)));
    aux.payload = aux.text.substr(1, aux.text.size() - 2);
    collect_inner(aux, open_index + 1, i);
    pos_ = i + 1;

    if (aux.payload.empty()) {
      fail(ParseErrorKind::malformed_auxiliary, open, "empty '()' auxiliary");
    }
    const char first = aux.payload.front();
    if (first >= '1' && first <= '9') {
      aux.kind = AuxiliaryKind::place;
    } else if (first == '0') {
      aux.kind = AuxiliaryKind::form;
    } else if (first == '=') {
      aux.kind = AuxiliaryKind::language;
    } else if ((first >= 'A' && first <= 'Z') || (first >= 'a' && first <= 'z')) {
      aux.kind = AuxiliaryKind::alphabetic_extension;
    } else {
      fail(ParseErrorKind::malformed_auxiliary, open,
           "'(' auxiliary must start with a digit, '=' or a letter");
    }
    return aux;
  }

  Auxiliary quote_auxiliary() {
    const std::size_t open_index = pos_;
    const std::size_t open = cur().offset;
    std::size_t i = pos_ + 1;
    while (i < tokens_.size() && tokens_[i].kind != TokenKind::quote) ++i;
    if (i == tokens_.size()) fail(ParseErrorKind::unbalanced_bracket, open, "unclosed '\"'");

    Auxiliary aux;
    aux.kind = AuxiliaryKind::time;
    aux.offset = open;
    aux.text = std::string(slice(open, token_end(i)));
    aux.payload = aux.text.substr(1, aux.text.size() - 2);
    collect_inner(aux, open_index + 1, i);
    pos_ = i + 1;
    if (aux.payload.empty()) {
      fail(ParseErrorKind::malformed_auxiliary, open, "empty time auxiliary");
    }
    return aux;
  }

  // '=' digits ('.' digits)*, optionally continued by a connector directly
  // followed by another '=' (=111+=112).
  Auxiliary language_auxiliary() {
    const std::size_t start_index = pos_;
    const std::size_t start = cur().offset;
    ++pos_;
    if (!cur_is(TokenKind::digits)) {
      fail(ParseErrorKind::malformed_auxiliary, start,
           "language auxiliary needs digits after '='");
    }
    for (;;) {
      dotted_digits(/*allow_zero=*/true);
      if (at_end()) break;
      if (as_connector(cur().kind) && next_is(TokenKind::equals) &&
          pos_ + 2 < tokens_.size() && tokens_[pos_ + 2].kind == TokenKind::digits) {
        pos_ += 2;
        continue;
      }
      break;
    }
    Auxiliary aux;
    aux.kind = AuxiliaryKind::language;
    aux.offset = start;
    aux.text = std::string(slice(start, token_end(pos_ - 1)));
    aux.payload = aux.text.substr(1);
    collect_inner(aux, start_index + 1, pos_);
    return aux;
  }

  // Consumes digits ('.' digits)* at the cursor, which must be digits.
  void dotted_digits(bool allow_zero) {
    ++pos_;
    while (cur_is(TokenKind::dot) && next_is(TokenKind::digits) &&
           (allow_zero || tokens_[pos_ + 1].lexeme.front() != '0')) {
      pos_ += 2;
    }
  }

  Auxiliary special_auxiliary(AuxiliaryKind kind) {
    const std::size_t start = cur().offset;
    ++pos_;
    if (!cur_is(TokenKind::digits)) {
      fail(ParseErrorKind::malformed_auxiliary, start,
           "special auxiliary needs digits after '" +
               std::string(src_.substr(start, 1)) + "'");
    }
    dotted_digits(/*allow_zero=*/true);
    Auxiliary aux;
    aux.kind = kind;
    aux.offset = start;
    aux.text = std::string(slice(start, token_end(pos_ - 1)));
    aux.payload = aux.text.substr(1);
    return aux;
  }

  // '.' digits after a closed qualifier: an extension of the term, unless the
  // digits start with '0', which makes a special-point-zero auxiliary.
  void dotted(Term& t, std::string lead) {
    const std::size_t start = cur().offset;
    if (!next_is(TokenKind::digits)) {
      fail(ParseErrorKind::malformed_auxiliary, start, "'.' not followed by digits");
    }
    const bool zero = tokens_[pos_ + 1].lexeme.front() == '0';
    ++pos_;
    dotted_digits(/*allow_zero=*/zero);
    std::string text(slice(start, token_end(pos_ - 1)));
    if (zero) {
      Auxiliary aux;
      aux.kind = AuxiliaryKind::special_point_zero;
      aux.offset = start;
      aux.payload = text.substr(1);
      aux.text = std::move(text);
      push_aux(t, std::move(lead), std::move(aux));
    } else {
      t.layout.push_back({PieceKind::extension, t.extensions.size(), std::move(lead)});
      t.extensions.push_back(std::move(text));
    }
  }

  Auxiliary asterisk_auxiliary() {
    const std::size_t start = cur().offset;
    ++pos_;
    const std::size_t first = pos_;
    while (cur_is(TokenKind::digits) || cur_is(TokenKind::alpha_span) ||
           (cur_is(TokenKind::dot) && pos_ > first)) {
      ++pos_;
    }
    if (pos_ == first) {
      fail(ParseErrorKind::malformed_auxiliary, start, "'*' not followed by notation");
    }
    Auxiliary aux;
    aux.kind = AuxiliaryKind::non_udc_asterisk;
    aux.offset = start;
    aux.text = std::string(slice(start, token_end(pos_ - 1)));
    aux.payload = aux.text.substr(1);
    return aux;
  }

  Auxiliary alphabetic_extension() {
    const std::size_t start = cur().offset;
    ++pos_;
    while (cur_is(TokenKind::digits) || cur_is(TokenKind::alpha_span)) ++pos_;
    Auxiliary aux;
    aux.kind = AuxiliaryKind::alphabetic_extension;
    aux.offset = start;
    aux.text = std::string(slice(start, token_end(pos_ - 1)));
    aux.payload = aux.text;
    return aux;
  }

  std::string_view src_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void render_term(const Term& t, std::string& out);

void render_members(const Term& t, std::string& out) {
  for (const Member& m : t.members) {
    if (m.connector) {
      out.append(m.connector->leading_space);
      out.append(symbol(m.connector->kind));
    }
    render_term(m.term, out);
  }
}

void render_term(const Term& t, std::string& out) {
  for (const Piece& p : t.layout) {
    out.append(p.leading_space);
    switch (p.kind) {
      case PieceKind::class_number: out.append(t.class_number); break;
      case PieceKind::auxiliary: out.append(t.auxiliaries[p.index].text); break;
      case PieceKind::extension: out.append(t.extensions[p.index]); break;
      case PieceKind::range_stroke: out.push_back('/'); break;
      case PieceKind::open_group: out.push_back('['); break;
      case PieceKind::members: render_members(t, out); break;
      case PieceKind::close_group: out.push_back(']'); break;
    }
  }
}

}  // namespace

Result<UdcExpression, ParseError> parse(std::string_view raw) {
  try {
    return Parser(raw).run();
  } catch (Failure& f) {
    return std::move(f.error);
  }
}

std::string render(const UdcExpression& expr) {
  std::string out = expr.leading_space;
  for (std::size_t i = 0; i < expr.terms.size(); ++i) {
    if (i > 0) {
      out.append(expr.connectors[i - 1].leading_space);
      out.append(symbol(expr.connectors[i - 1].kind));
    }
    render_term(expr.terms[i], out);
  }
  out.append(expr.trailing_space);
  return out;
}

}  // namespace udc
