#include "rectexplain/rational.hpp"

#include <cctype>

namespace rectexplain {

namespace {

// Strict grammar: -?digits(/-?digits)?  No whitespace, no '+', no base prefixes.
bool valid_rational_literal(const std::string& s) {
  std::size_t i = 0;
  auto digits = [&]() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i > start;
  };
  if (i < s.size() && s[i] == '-') ++i;
  if (!digits()) return false;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  if (i < s.size() && s[i] == '-') ++i;
  if (!digits()) return false;
  return i == s.size();
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  if (!valid_rational_literal(text)) return std::nullopt;
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0) return std::nullopt;
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& value) { return value.get_str(); }

}  // namespace rectexplain
