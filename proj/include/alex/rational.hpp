#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace alex {

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator. Expression templates are off so the type composes with Eigen.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using QMatrix = Matrix<Rational>;
using Index = Eigen::Index;

/// Parses "a/b", "-a/b" or an integer string.
Rational parse_rational(std::string_view text);

/// "a/b", or just "a" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace alex
