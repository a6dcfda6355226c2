// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#include "canonring/scalar.hpp"

#include <limits>

#include "canonring/error.hpp"

namespace canonring {

Integer floor(const Rational& q) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    Integer out = num / den;
    if (num % den != 0 && num < 0) out -= 1;
    return out;
}

Integer ceil(const Rational& q) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    Integer out = num / den;
    if (num % den != 0 && num > 0) out += 1;
    return out;
}

bool is_integral(const Rational& q) { return denominator(q) == 1; }

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool valid_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

Integer integer_from(std::string_view s) {
    if (!valid_integer_text(s)) throw Error(ErrorKind::InvalidInput, "malformed integer '" + std::string(s) + "'");
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s));
}

}  // namespace

Integer parse_integer(std::string_view text) { return integer_from(text); }

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(integer_from(text));
    Integer num = integer_from(text.substr(0, slash));
    Integer den = integer_from(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

bool fits_int64(const Integer& z) {
    return z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max();
}

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::EmptyOrFullSubset: return "EmptyOrFullSubset";
        case ErrorKind::NotMember: return "NotMember";
        case ErrorKind::DegreeOverflow: return "DegreeOverflow";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NonIntegralRefinement: return "NonIntegralRefinement";
        case ErrorKind::InvalidPL: return "InvalidPL";
        case ErrorKind::EmptySubgraph: return "EmptySubgraph";
        case ErrorKind::NotCanonical: return "NotCanonical";
        case ErrorKind::HypothesisFailure: return "HypothesisFailure";
        case ErrorKind::DegenerateCone: return "DegenerateCone";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::VerificationFailure: return "VerificationFailure";
    }
    return "Unknown";
}

}  // namespace canonring
