#include "topolab/rational.hpp"

namespace topolab {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0)
        throw precondition_error("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&] { return precondition_error("rational: cannot parse '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(mpz_class(s));
        std::string n = s.substr(0, slash), d = s.substr(slash + 1);
        if (n.empty() || d.empty() || d.find('/') != std::string::npos) throw bad();
        return Rational(mpz_class(n), mpz_class(d));
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

Rational Rational::abs() const {
    Rational r;
    r.v_ = ::abs(v_);
    return r;
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw precondition_error("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::dyadic_inverse_power(unsigned long m) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, m);
    return Rational(mpz_class(1), p);
}

bool divides_factorial(const mpz_class& q, unsigned long m) {
    if (sgn(q) <= 0)
        throw precondition_error("divides_factorial: q must be positive");
    if (m > 2'000'000)
        throw precondition_error("divides_factorial: index beyond supported range");
    mpz_class n = q;
    if (n == 1) return true;

    auto legendre = [m](unsigned long p) {
        unsigned long total = 0, pk = p;
        while (pk <= m) {
            total += m / pk;
            if (pk > m / p) break; // next power would overflow past m
            pk *= p;
        }
        return total;
    };

    auto strip = [&n](unsigned long p) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        return e;
    };

    unsigned long p = 2;
    while (n > 1) {
        if (mpz_class(p) * p > n) { // remaining cofactor is prime
            if (!n.fits_ulong_p()) return false;
            unsigned long r = n.get_ui();
            return r <= m && legendre(r) >= 1;
        }
        if (p > m) return false; // every remaining prime factor exceeds m
        unsigned long e = strip(p);
        if (e > 0 && legendre(p) < e) return false;
        p += (p == 2 ? 1 : 2);
    }
    return true;
}

mpz_class factorial(unsigned long n) {
    if (n > 20'000)
        throw precondition_error("factorial: index beyond supported range");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace topolab
