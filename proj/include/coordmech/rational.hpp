#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "coordmech/errors.hpp"

namespace coordmech {

// All loads, costs, and potentials are exact rationals. mpq_class keeps
// values canonical (lowest terms, denominator > 0).
using Rat = mpq_class;

// A load matrix entry: a finite positive rational or infinite
// (machine not in the job's strategy set).
using LoadEntry = std::optional<Rat>;

inline Rat rat_pow(const Rat& base, unsigned long exp) {
    if (exp == 0) return Rat(1);
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    return r;
}

inline double to_double(const Rat& x) { return x.get_d(); }

// x^(1/k) as a double; x must be non-negative.
inline double kth_root(const Rat& x, int k) {
    if (k == 1) return to_double(x);
    return std::pow(to_double(x), 1.0 / static_cast<double>(k));
}

namespace detail {

inline mpz_class parse_digits(const std::string& s, const std::string& context) {
    if (s.empty()) throw ParseError("empty number in " + context);
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("invalid character '" + std::string(1, c) + "' in " + context);
    return mpz_class(s, 10);
}

} // namespace detail

// Accepts integer ("14"), decimal ("8.2481", parsed exactly as 82481/10000),
// and fraction ("82481/10000") literals, with an optional leading sign.
inline Rat parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    Rat result;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpz_class num = detail::parse_digits(s.substr(0, slash), "'" + text + "'");
        mpz_class den = detail::parse_digits(s.substr(slash + 1), "'" + text + "'");
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        result = Rat(num, den);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ipart = s.substr(0, dot);
        std::string fpart = s.substr(dot + 1);
        if (ipart.empty() && fpart.empty())
            throw ParseError("invalid number '" + text + "'");
        if (ipart.empty()) ipart = "0";
        if (fpart.empty()) fpart = "0";
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fpart.size());
        mpz_class num = detail::parse_digits(ipart, "'" + text + "'") * scale +
                        detail::parse_digits(fpart, "'" + text + "'");
        result = Rat(num, scale);
    } else {
        result = Rat(detail::parse_digits(s, "'" + text + "'"));
    }
    result.canonicalize();
    if (negative) result = -result;
    return result;
}

// Exact rendering: plain integer, finite decimal when the denominator is of
// the form 2^a 5^b, otherwise "num/den".
inline std::string to_exact_string(const Rat& x) {
    Rat v = x;
    v.canonicalize();
    std::string sign = v < 0 ? "-" : "";
    mpz_class num = abs(v.get_num());
    mpz_class den = v.get_den();
    if (den == 1) return sign + num.get_str();
    unsigned long twos = 0, fives = 0;
    mpz_class d = den;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) { mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2); ++twos; }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) { mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5); ++fives; }
    if (d != 1) return sign + num.get_str() + "/" + den.get_str();
    unsigned long digits = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled = num * (scale / den);
    std::string str = scaled.get_str();
    if (str.size() <= digits) str.insert(0, digits + 1 - str.size(), '0');
    str.insert(str.size() - digits, ".");
    return sign + str;
}

// 12 significant digits, the default precision for reported completion times.
inline std::string to_decimal_string(double x, int significant = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, x);
    return buf;
}

} // namespace coordmech
