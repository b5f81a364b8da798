// rational.hpp -- exact arithmetic carriers (GMP-backed) and formatting

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zerorate {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Arbitrary-precision rational, always kept in canonical form
/// (positive denominator, numerator and denominator coprime).
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws on a zero denominator.
inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "a/b", "a" or a finite decimal such as "0.125".
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto bad = [&] { return std::invalid_argument("malformed rational literal '" + s + "'"); };
    auto is_int = [](std::string_view t) {
        if (t.empty())
            return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                return false;
        return true;
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+')
            t.erase(0, 1);
        return Integer(t, 10);
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!is_int(a) || !is_int(b))
            throw bad();
        Integer den = to_int(b);
        if (den == 0)
            throw std::invalid_argument("rational with zero denominator");
        return make_rational(to_int(a), den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole == "-" || whole == "+" || whole.empty())
            whole += "0";
        if (!is_int(whole) || (!frac.empty() && !is_int(frac)) || (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
            throw bad();
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        Integer f = frac.empty() ? Integer(0) : Integer(frac, 10);
        Integer w = to_int(whole);
        Integer num = (neg ? Integer(-w) : w) * scale + f;
        if (neg)
            num = -num;
        return make_rational(num, scale);
    }
    if (!is_int(s))
        throw bad();
    return Rational(to_int(s));
}

/// "a/b", or "a" when the denominator is 1.
inline std::string to_fraction_string(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Fixed 12-digit decimal rendering, rounded half away from zero. Display only.
inline std::string to_decimal_string(const Rational& r, int digits = 12)
{
    Integer scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    Integer num = abs(r.get_num()) * scale * 2 + r.get_den();
    Integer den = r.get_den() * 2;
    Integer q = num / den;
    std::string body = q.get_str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    if (sgn(r) < 0 && q != 0)
        body.insert(0, "-");
    return body;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// C(n, k); zero outside 0 <= k <= n.
inline Integer binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// Small binomial for index arithmetic; throws if it does not fit.
inline std::uint64_t binomial_u64(int n, int k)
{
    Integer b = binomial(n, k);
    if (!b.fits_ulong_p())
        throw std::overflow_error("binomial coefficient too large");
    return b.get_ui();
}

} // namespace zerorate
