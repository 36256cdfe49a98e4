#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace starcat {

// Exact rational scalar. mpq_class keeps fractions canonical (lowest terms,
// positive denominator) after every arithmetic operation.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const std::string& s) : v_(s) { v_.canonicalize(); }

    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    Rational inv() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    std::string str() const { return v_.get_str(); }
    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

// Prime-field scalar with a runtime modulus, used by the randomized
// cross-checks. A default-constructed value is the detached zero; it adopts
// the modulus of the other operand.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

    static Fp zero() { return Fp(); }
    // Detached one; adopts the modulus of the first attached operand.
    static Fp one() {
        Fp x;
        x.v_ = 1;
        return x;
    }

    bool is_zero() const { return v_ == 0; }
    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    Fp operator-() const {
        if (p_ == 0) {
            if (v_ != 0) throw std::domain_error("Fp: negation of detached value");
            return Fp();
        }
        return Fp(p_ - v_, p_);
    }
    friend Fp operator+(const Fp& a, const Fp& b) {
        std::uint64_t p = join(a, b);
        if (p == 0) return Fp();
        return Fp((a.v_ + b.v_) % p, p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }
    friend Fp operator*(const Fp& a, const Fp& b) {
        std::uint64_t p = join(a, b);
        if (p == 0) return Fp();
        return Fp((static_cast<unsigned __int128>(a.v_) * b.v_) % p, p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }
    friend bool operator==(const Fp& a, const Fp& b) {
        return a.v_ == b.v_ && (a.v_ == 0 || a.p_ == b.p_);
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inv() const {
        if (is_zero()) throw std::domain_error("Fp: inverse of zero");
        // extended Euclid
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(v_);
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        if (r != 1) throw std::domain_error("Fp: modulus not prime");
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return Fp(static_cast<std::uint64_t>(t), p_);
    }

    std::string str() const { return std::to_string(v_); }

private:
    static std::uint64_t join(const Fp& a, const Fp& b) {
        if (a.p_ == 0) return b.p_;
        if (b.p_ == 0) return a.p_;
        if (a.p_ != b.p_) throw std::invalid_argument("Fp: modulus mismatch");
        return a.p_;
    }
    std::uint64_t v_, p_;
};

}  // namespace starcat
