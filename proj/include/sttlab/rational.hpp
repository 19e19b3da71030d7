#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace sttlab {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;

using boost::multiprecision::abs;
using boost::multiprecision::denominator;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using boost::multiprecision::numerator;

// Accepts "p", "-p", "p/q" and plain decimals like "6.5" or "-0.001".
Rational parse_rational(const std::string& text);

// "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& value);

// Fixed-point rendering with banker's rounding, e.g. 60/59 -> "1.0169".
// Display helper only; exact values are never stored rounded.
std::string to_decimal_string(const Rational& value, int places = 4);

inline bool is_integral(const Rational& value) { return denominator(value) == 1; }

// Smallest positive s such that s*v is integral with coprime entries.
// Returns 1 for the zero vector.
template <typename Derived>
Rational primitive_scale(const Eigen::MatrixBase<Derived>& v) {
  Integer den_lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) den_lcm = lcm(den_lcm, denominator(v(i)));
  Integer num_gcd = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    num_gcd = gcd(num_gcd, numerator(v(i)) * (den_lcm / denominator(v(i))));
  if (num_gcd == 0) return Rational(1);
  return Rational(den_lcm, num_gcd);
}

// v scaled by primitive_scale(v): integral, coprime, same orientation.
template <typename Derived>
IntVector primitive_integer_direction(const Eigen::MatrixBase<Derived>& v) {
  const Rational s = primitive_scale(v);
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = numerator(Rational(v(i) * s));
  return out;
}

// Rank over the rationals via fraction-free (Bareiss) elimination on a
// denominator-cleared integer copy.
Eigen::Index exact_rank(const RatMatrix& m);
Eigen::Index exact_rank_int(IntMatrix m);

template <typename Derived>
RatVector to_rational_vector(const Eigen::MatrixBase<Derived>& v) {
  RatVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

RatVector make_rat_vector(std::initializer_list<long> entries);

std::vector<std::string> split(const std::string& text, char sep);

}  // namespace sttlab
