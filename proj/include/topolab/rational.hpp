#pragma once

#include <gmpxx.h>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace topolab {

/// Thrown when an operation's stated precondition is violated.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a certificate replay hits a failing assertion.
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a bounded search hits its index cap before succeeding.
struct search_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational scalar. Always canonical: denominator > 0 and
// gcd(|num|, den) = 1. Arithmetic is exact; there is no float anywhere.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& num, const mpz_class& den);
    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

    /// Parses "p", "p/q", "-p/q". Throws precondition_error on bad syntax
    /// or zero denominator.
    static Rational parse(std::string_view text);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const;
    mpz_class floor() const;
    mpz_class ceil() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// Canonical text form: "p/q", or just "p" for integers.
    std::string to_string() const { return v_.get_str(); }

    /// 2^(-m) as an exact dyadic rational.
    static Rational dyadic_inverse_power(unsigned long m);

private:
    mpq_class v_;
};

/// True iff q divides m! — decided by prime multiplicities (Legendre sums),
/// so m! itself is never materialized. Requires m <= 2'000'000, which keeps
/// trial division complete.
bool divides_factorial(const mpz_class& q, unsigned long m);

/// (n+1)! as an exact integer; small n only (n <= 20'000 guard).
mpz_class factorial(unsigned long n);

} // namespace topolab
