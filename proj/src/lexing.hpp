#pragma once

// Character cursor shared by the dual-literal and expression parsers.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string_view>

#include "dualcalc/errors.hpp"

namespace dualcalc::detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool at_end() const noexcept { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const noexcept {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance(std::size_t n = 1) noexcept { pos_ += n; }
  std::size_t offset() const noexcept { return pos_; }
  std::string_view rest() const noexcept { return text_.substr(pos_); }
  std::string_view text() const noexcept { return text_; }

  void skip_space() noexcept {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  /// Consumes `word` if it is next and not followed by another identifier character.
  bool consume_word(std::string_view word) noexcept {
    if (rest().substr(0, word.size()) != word) return false;
    const char next = peek(word.size());
    if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
    pos_ += word.size();
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

inline bool starts_number(const Cursor& cur) noexcept {
  return is_digit(cur.peek()) || (cur.peek() == '.' && is_digit(cur.peek(1)));
}

/// Unsigned decimal literal. An `e` only starts an exponent when digits follow,
/// so `3eps` lexes as `3` followed by `eps`.
inline double lex_number(Cursor& cur) {
  const std::size_t start = cur.offset();
  while (is_digit(cur.peek())) cur.advance();
  if (cur.peek() == '.') {
    cur.advance();
    while (is_digit(cur.peek())) cur.advance();
  }
  if (cur.peek() == 'e' || cur.peek() == 'E') {
    std::size_t k = 1;
    if (cur.peek(k) == '+' || cur.peek(k) == '-') ++k;
    if (is_digit(cur.peek(k))) {
      cur.advance(k);
      while (is_digit(cur.peek())) cur.advance();
    }
  }
  const std::string_view token = cur.text().substr(start, cur.offset() - start);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) throw SyntaxError("number out of range", start);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw SyntaxError("malformed number", start);
  }
  return value;
}

}  // namespace dualcalc::detail
