// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

namespace canonring {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

// Floor and ceiling of an exact rational.
[[nodiscard]] Integer floor(const Rational& q);
[[nodiscard]] Integer ceil(const Rational& q);
[[nodiscard]] bool is_integral(const Rational& q);

// "p/q" when the denominator is not 1, "p" otherwise.
[[nodiscard]] std::string to_string(const Rational& q);
[[nodiscard]] std::string to_string(const Integer& z);
// Accepts "p", "-p", "p/q". Throws on malformed input or zero denominator.
[[nodiscard]] Rational parse_rational(std::string_view text);
[[nodiscard]] Integer parse_integer(std::string_view text);

[[nodiscard]] Integer lcm(const Integer& a, const Integer& b);
[[nodiscard]] Integer gcd(const Integer& a, const Integer& b);

// Checked narrowing for the int64 fast paths.
[[nodiscard]] bool fits_int64(const Integer& z);

}  // namespace canonring
