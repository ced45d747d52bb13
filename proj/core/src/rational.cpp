#include "holonov/rational.hpp"

namespace holonov {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal: shift the point into an explicit denominator
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        mpz_class num(digits);
        mpz_class den(1);
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(mpq_class(num, den));
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational::parse: bad literal '" + s + "'");
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    return v_.get_str();
}

Rational Rational::pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = e > 0 ? base : Rational(1) / base;
    long n = e > 0 ? e : -e;
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

std::optional<Rational> exact_nth_root(const Rational& r, unsigned n) {
    if (n == 0) throw std::invalid_argument("exact_nth_root: n == 0");
    if (r.is_zero()) return Rational(0);
    if (r.sign() < 0 && n % 2 == 0) return std::nullopt;
    mpz_class num = r.raw().get_num();
    mpz_class den = r.raw().get_den();
    mpz_class rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n);
    int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n);
    if (!exact_n || !exact_d) return std::nullopt;
    return Rational(mpq_class(rn, rd));
}

std::string RationalComplex::str() const {
    if (im.is_zero()) return re.str();
    return re.str() + (im.sign() < 0 ? "-" : "+") + im.abs().str() + "i";
}

}  // namespace holonov
