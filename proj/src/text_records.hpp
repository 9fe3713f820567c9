#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "dwfilter/parse_error.hpp"

namespace dwf::detail {

struct Token {
  std::string_view text;
  int column;
};

inline std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

class LineParser {
 public:
  LineParser(int line, const std::vector<Token>& tokens) : line_(line), tokens_(tokens) {}

  void expect_count(std::size_t n, const char* usage) const {
    if (tokens_.size() != n) {
      int col = tokens_.size() > n ? tokens_[n].column : tokens_.back().column;
      throw ParseError(line_, col, std::string("expected `") + usage + "`");
    }
  }

  int integer(std::size_t i) const {
    const Token& t = tokens_[i];
    int v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size())
      throw ParseError(line_, t.column, "expected an integer, got `" + std::string(t.text) + "`");
    return v;
  }

  double number(std::size_t i) const {
    const Token& t = tokens_[i];
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size() || !std::isfinite(v))
      throw ParseError(line_, t.column, "expected a number, got `" + std::string(t.text) + "`");
    return v;
  }

  // Integer in [0, count).
  int index(std::size_t i, int count, const char* what) const {
    int v = integer(i);
    if (v < 0 || v >= count)
      throw ParseError(line_, tokens_[i].column,
                       std::string(what) + " " + std::to_string(v) + " out of range [0, " + std::to_string(count) + ")");
    return v;
  }

  double nonnegative(std::size_t i, const char* what) const {
    double v = number(i);
    if (v < 0.0) throw ParseError(line_, tokens_[i].column, std::string(what) + " must be nonnegative");
    return v;
  }

  int column(std::size_t i) const { return tokens_[i].column; }

 private:
  int line_;
  const std::vector<Token>& tokens_;
};

inline std::string format_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// Calls fn(line_number, tokens) for every non-empty line; returns the line count.
template <class Fn>
int for_each_record(std::string_view text, Fn&& fn) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size() || (pos == text.size() && line_no == 0)) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = tokenize(line);
    if (!tokens.empty()) fn(line_no, tokens);
  }
  return line_no;
}

}  // namespace dwf::detail
