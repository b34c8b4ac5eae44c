#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcpforge {

// Exact rational arithmetic used for every probability, Fourier
// coefficient and weight in the library. Dyadic denominators dominate,
// but epsilon parameters introduce arbitrary ones.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// 256-bit binary float for the few irrational comparisons (square
// roots, real exponents). Everything rational stays in Rational.
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<
        256, boost::multiprecision::backends::digit_base_2>>;

// Comparison slack for inequalities whose right-hand side is irrational.
inline BigFloat numeric_slack() { return BigFloat("1e-12"); }

struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct size_error : std::length_error {
    using std::length_error::length_error;
};
struct mode_error : std::logic_error {
    using std::logic_error::logic_error;
};
struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rational rational_pow(const Rational& base, std::uint64_t exp) {
    Rational result = 1;
    Rational b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

// Parses "p/q" or "p" with q > 0.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den <= 0) throw input_error("rational denominator must be positive: " + text);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw input_error("malformed rational: " + text);
    }
}

inline std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline BigFloat to_bigfloat(const Rational& r) {
    return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

inline double to_double(const Rational& r) {
    return static_cast<double>(to_bigfloat(r));
}

}  // namespace pcpforge
