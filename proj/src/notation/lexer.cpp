#include "udc/notation.hpp"

namespace udc {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::digits: return "digits";
    case TokenKind::dot: return "dot";
    case TokenKind::colon: return "colon";
    case TokenKind::double_colon: return "double-colon";
    case TokenKind::plus: return "plus";
    case TokenKind::stroke: return "stroke";
    case TokenKind::open_square: return "open-square";
    case TokenKind::close_square: return "close-square";
    case TokenKind::open_paren: return "open-paren";
    case TokenKind::close_paren: return "close-paren";
    case TokenKind::quote: return "quote";
    case TokenKind::equals: return "equals";
    case TokenKind::hyphen: return "hyphen";
    case TokenKind::apostrophe: return "apostrophe";
    case TokenKind::asterisk: return "asterisk";
    case TokenKind::angle_span: return "angle-span";
    case TokenKind::alpha_span: return "alpha-span";
    case TokenKind::whitespace: return "whitespace";
    case TokenKind::other: return "other";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view raw) {
  std::vector<Token> tokens;
  const std::size_t n = raw.size();
  std::size_t i = 0;

  auto emit = [&](TokenKind kind, std::size_t begin, std::size_t end) {
    tokens.push_back({kind, raw.substr(begin, end - begin), begin});
  };
  auto run_while = [&](std::size_t from, auto pred) {
    while (from < n && pred(raw[from])) ++from;
    return from;
  };

  while (i < n) {
    const char c = raw[i];
    const std::size_t start = i;
    if (is_digit(c)) {
      i = run_while(i, is_digit);
      emit(TokenKind::digits, start, i);
    } else if (is_space(c)) {
      i = run_while(i, is_space);
      emit(TokenKind::whitespace, start, i);
    } else if (is_alpha(c)) {
      // An 'A/Z' style alphabetic extension stays one span: a stroke
      // with letters on both sides does not split it.
      i = run_while(i, is_alpha);
      while (i + 1 < n && raw[i] == '/' && is_alpha(raw[i + 1])) {
        i = run_while(i + 1, is_alpha);
      }
      emit(TokenKind::alpha_span, start, i);
    } else if (c == '<') {
      const std::size_t close = raw.find('>', i + 1);
      if (close == std::string_view::npos) {
        i += 1;
        emit(TokenKind::other, start, i);
      } else {
        i = close + 1;
        emit(TokenKind::angle_span, start, i);
      }
    } else if (c == ':') {
      if (i + 1 < n && raw[i + 1] == ':') {
        i += 2;
        emit(TokenKind::double_colon, start, i);
      } else {
        i += 1;
        emit(TokenKind::colon, start, i);
      }
    } else if (is_high(c)) {
      i = run_while(i, is_high);
      emit(TokenKind::other, start, i);
    } else {
      TokenKind kind = TokenKind::other;
      switch (c) {
        case '.': kind = TokenKind::dot; break;
        case '+': kind = TokenKind::plus; break;
        case '/': kind = TokenKind::stroke; break;
        case '[': kind = TokenKind::open_square; break;
        case ']': kind = TokenKind::close_square; break;
        case '(': kind = TokenKind::open_paren; break;
        case ')': kind = TokenKind::close_paren; break;
        case '"': kind = TokenKind::quote; break;
        case '=': kind = TokenKind::equals; break;
        case '-': kind = TokenKind::hyphen; break;
        case '\'': kind = TokenKind::apostrophe; break;
        case '*': kind = TokenKind::asterisk; break;
        default: break;
      }
      i += 1;
      emit(kind, start, i);
    }
  }
  return tokens;
}

}  // namespace udc
