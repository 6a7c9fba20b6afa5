#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphz {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rat& q) { return sgn(q); }
inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// "p" or "p/q"; accepts surrounding whitespace.
inline Rat parse_rat(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rat& q) {
    return q.get_str();
}

inline std::string to_string(const Int& n) { return n.get_str(); }

inline double to_double(const Rat& q) { return q.get_d(); }

// Rounds to the nearest integer (ties toward +inf).
inline Int round_rat(const Rat& q) {
    Int num = q.get_num(), den = q.get_den();
    Int twice = 2 * num + den;
    Int d = 2 * den;
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), d.get_mpz_t());
    return r;
}

// Uniform random rational in [-bound, bound] with denominator <= max_den.
class RatSampler {
public:
    RatSampler(std::uint64_t seed, long max_den = 97) : rng_(seed), max_den_(max_den) {}

    Rat sample(const Rat& bound) {
        std::uniform_int_distribution<long> dden(1, max_den_);
        long den = dden(rng_);
        // numerator range scaled so |num/den| <= bound
        Rat lim = bound * den;
        long n = static_cast<long>(to_double(lim));
        if (n < 1) n = 1;
        std::uniform_int_distribution<long> dnum(-n, n);
        Rat q(dnum(rng_), den);
        q.canonicalize();
        if (abs_rat(q) > bound) q = bound * sign(q);
        return q;
    }

    long uniform_int(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(rng_);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    long max_den_;
};

// Gaussian rational a + b*i, exact arithmetic.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    GaussRat conj() const { return {re, Rat(-im)}; }
    Rat norm2() const { return re * re + im * im; }

    GaussRat operator-() const { return {Rat(-re), Rat(-im)}; }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.norm2();
        if (is_zero(n)) throw std::domain_error("GaussRat division by zero");
        GaussRat c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline bool is_zero(const GaussRat& z) { return is_zero(z.re) && is_zero(z.im); }

}  // namespace sphz
