#include "sttlab/rational.hpp"

#include <cctype>

namespace sttlab {

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// GMP rejects a leading '+'
Integer make_integer(const std::string& token) {
  return Integer(token[0] == '+' ? token.substr(1) : token);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return std::invalid_argument("not a rational: '" + text + "'"); };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den)) throw bad();
    Integer d = make_integer(den);
    if (d == 0) throw bad();
    return Rational(make_integer(num), d);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    std::string head = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || !valid_integer_token(frac) || frac[0] == '-' || frac[0] == '+') throw bad();
    bool negative = false;
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
      negative = head[0] == '-';
      head = head.substr(1);
    }
    if (!head.empty() && !valid_integer_token(head)) throw bad();
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer whole = head.empty() ? Integer(0) : make_integer(head);
    Rational value = Rational(whole) + Rational(Integer(frac), scale);
    return negative ? -value : value;
  }
  if (!valid_integer_token(text)) throw bad();
  return Rational(make_integer(text));
}

std::string to_string(const Rational& value) {
  if (is_integral(value)) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_decimal_string(const Rational& value, int places) {
  if (value < 0) {
    std::string mag = to_decimal_string(-value, places);
    for (char c : mag)
      if (c != '0' && c != '.') return "-" + mag;
    return mag;
  }
  Integer scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const Integer num = numerator(value) * scale;
  const Integer den = denominator(value);
  Integer q = num / den;
  const Integer rem2 = (num - q * den) * 2;
  if (rem2 > den || (rem2 == den && (q & 1) != 0)) ++q;
  std::string digits = q.str();
  if (places == 0) return digits;
  if (digits.size() <= static_cast<std::size_t>(places))
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return digits;
}

Eigen::Index exact_rank(const RatMatrix& m) {
  IntMatrix cleared(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Integer den_lcm = 1;
    for (Eigen::Index c = 0; c < m.cols(); ++c) den_lcm = lcm(den_lcm, denominator(m(r, c)));
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      cleared(r, c) = numerator(m(r, c)) * (den_lcm / denominator(m(r, c)));
  }
  return exact_rank_int(std::move(cleared));
}

Eigen::Index exact_rank_int(IntMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index rank = 0;
  Integer prev = 1;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) m.row(pivot).swap(m.row(rank));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      for (Eigen::Index c = col + 1; c < cols; ++c)
        m(r, c) = (m(rank, col) * m(r, c) - m(r, col) * m(rank, c)) / prev;
      m(r, col) = 0;
    }
    prev = m(rank, col);
    ++rank;
  }
  return rank;
}

RatVector make_rat_vector(std::initializer_list<long> entries) {
  RatVector out(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long e : entries) out(i++) = Rational(e);
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace sttlab
