#include "dircut/rational.hpp"

#include <cctype>

namespace dircut {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::int64_t to_i64(const std::string& s) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::out_of_range&) {
    throw std::overflow_error("integer literal out of range: " + s);
  }
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  Rational r;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!all_digits(ns) || !all_digits(ds))
      throw std::invalid_argument("bad rational literal: " + text);
    r = Rational(to_i64(ns), to_i64(ds));
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("bad decimal literal: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) {
      if (den > INT64_MAX / 10)
        throw std::overflow_error("decimal literal too precise: " + text);
      den *= 10;
    }
    r = Rational(to_i64(ip)) + Rational(fp.empty() ? 0 : to_i64(fp), den);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad integer literal: " + text);
    r = Rational(to_i64(s));
  }
  return neg ? -r : r;
}

}  // namespace dircut
