#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace hausd {

/// Arbitrary-precision rational scalar. Thin value wrapper around GMP's
/// mpq_class: every operation materializes the result, so generic code can
/// treat Rational exactly like double (no expression-template surprises).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    /// Accepts "n", "n/d", and decimal literals like "-2.5" or "0.125".
    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return v_; }
    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.v_ == 0) throw std::invalid_argument("Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
    Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

private:
    mpq_class v_;
};

inline Rational Rational::parse(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        mpq_class v;
        if (v.set_str(s, 10) != 0) throw std::invalid_argument("Rational::parse: bad literal '" + text + "'");
        v.canonicalize();
        return Rational(v);
    }
    // decimal literal: shift the point into a power-of-ten denominator
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("Rational::parse: bad literal '" + text + "'");
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("Rational::parse: bad literal '" + text + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    mpq_class v(num, den);
    v.canonicalize();
    return Rational(v);
}

/// Scalar helpers shared by the double and Rational backends. Generic code
/// calls these instead of std:: functions so that both backends stay exact
/// where exactness is possible.
namespace num {

inline double abs_val(double x) { return x < 0 ? -x : x; }
inline Rational abs_val(const Rational& x) { return x < Rational(0) ? -x : x; }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }

inline std::string str(double x) { return std::to_string(x); }
inline std::string str(const Rational& x) { return x.str(); }

template <class S>
S int_pow(S base, int e) {
    if (e < 0) throw std::invalid_argument("int_pow: negative exponent");
    S acc(1);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

inline double root(double x, int p) {
    if (p == 1) return x;
    return std::pow(x, 1.0 / p);
}

/// Exact p-th root when the operand is a perfect p-th power; otherwise the
/// nearest double re-wrapped (doubles are exact binary rationals). Finite-p
/// integral distances are the only callers, and their acceptance checks
/// compare p-th powers exactly instead.
inline Rational root(const Rational& x, int p) {
    if (p == 1) return x;
    if (x < Rational(0)) throw std::invalid_argument("root: negative operand");
    mpq_class q = x.raw();
    mpz_class rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), p);
    int exact_d = mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), p);
    if (exact_n != 0 && exact_d != 0) return Rational(mpq_class(rn, rd));
    return Rational(mpq_class(std::pow(x.to_double(), 1.0 / p)));
}

/// Default audit tolerance: exact for rationals, 1e-9 for floating point.
template <class S> inline S default_tolerance() { return S(0); }
template <> inline double default_tolerance<double>() { return 1e-9; }

template <class S> inline bool is_exact_backend() { return true; }
template <> inline bool is_exact_backend<double>() { return false; }

}  // namespace num

}  // namespace hausd
