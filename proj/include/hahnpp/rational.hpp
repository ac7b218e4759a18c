#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <hahnpp/errors.hpp>

namespace hahnpp
{

// Exact rationals. Every arithmetic result of mpq_class is canonical.
using Rational = mpq_class;

namespace detail
{

inline bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

inline mpz_class parse_integer(std::string_view s)
{
    if (!is_integer_literal(s)) {
        throw InputError("invalid integer literal '" + std::string(s) + "'");
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return mpz_class(std::string(s), 10);
}

} // namespace detail

// Accepts "p", "p/q" (q != 0). The result is canonical.
inline Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(detail::parse_integer(text));
    }
    const mpz_class num = detail::parse_integer(text.substr(0, slash));
    const mpz_class den = detail::parse_integer(text.substr(slash + 1));
    if (den == 0) {
        throw InputError("zero denominator in rational literal '" + std::string(text) + "'");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Serialized form: always "p/q" with q > 0, lowest terms.
inline std::string to_string(const Rational &r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Human-readable form: "p" for integers, "p/q" otherwise.
inline std::string to_text(const Rational &r)
{
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return to_string(r);
}

inline bool is_integer(const Rational &r)
{
    return r.get_den() == 1;
}

inline Rational pow(const Rational &base, long exponent)
{
    if (exponent < 0) {
        if (base == 0) {
            throw DivisionByZeroGerm("zero raised to a negative power");
        }
        return pow(Rational(1) / base, -exponent);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Exact q-th root of a non-negative rational, if it is rational.
inline std::optional<Rational> root(const Rational &value, unsigned long q)
{
    if (value < 0 || q == 0) {
        return std::nullopt;
    }
    mpz_class num, den;
    if (mpz_root(num.get_mpz_t(), value.get_num_mpz_t(), q) == 0
        || mpz_root(den.get_mpz_t(), value.get_den_mpz_t(), q) == 0) {
        return std::nullopt;
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Smallest integer n with n >= r.
inline mpz_class ceil(const Rational &r)
{
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

} // namespace hahnpp
