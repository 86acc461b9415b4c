#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "voalab/graded_vector.hpp"

namespace voalab {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
}

std::string rational_to_string(const Rational& q) {
  std::string out = numerator(q).str();
  if (denominator(q) != 1) out += "/" + denominator(q).str();
  return out;
}

// Canonical text form, e.g. "a[-2]a[-1]|0>" and "a[-1]|p=1>".
std::string render_state(const Sector& sector, const Partition& p) {
  std::string out;
  for (int32_t m : p.parts()) out += "a[-" + std::to_string(m) + "]";
  if (sector.is_algebra()) {
    out += "|0>";
  } else {
    out += "|p=" + rational_to_string(sector.momentum()) + ">";
  }
  return out;
}

std::pair<Sector, Partition> parse_state(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  std::vector<int32_t> parts;
  std::size_t pos = 0;
  while (pos < s.size() && s[pos] == 'a') {
    if (pos + 1 >= s.size() || s[pos + 1] != '[')
      throw std::invalid_argument("malformed state: " + text);
    auto close = s.find(']', pos + 2);
    if (close == std::string::npos)
      throw std::invalid_argument("malformed state: " + text);
    long m = std::strtol(s.c_str() + pos + 2, nullptr, 10);
    if (m >= 0)
      throw std::invalid_argument("state modes must be negative: " + text);
    parts.push_back(static_cast<int32_t>(-m));
    pos = close + 1;
  }
  if (pos >= s.size() || s[pos] != '|')
    throw std::invalid_argument("malformed state: " + text);
  std::string ket = s.substr(pos);
  if (ket == "|0>") return {Sector::algebra(), Partition(parts)};
  if (ket.rfind("|p=", 0) == 0 && ket.back() == '>') {
    Rational p = parse_rational(ket.substr(3, ket.size() - 4));
    return {Sector::module(p), Partition(parts)};
  }
  throw std::invalid_argument("malformed state ket: " + text);
}

}  // namespace voalab
