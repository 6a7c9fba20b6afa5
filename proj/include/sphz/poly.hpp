#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sphz/rational.hpp"

namespace sphz {

// Polynomial over Q, coefficients low to high, normalized (no trailing zeros).
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(Rat a) { return Poly(std::vector<Rat>{std::move(a)}); }

    bool zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero polynomial
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int k) const { return k < int(c_.size()) ? c_[size_t(k)] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& x) const {
        Rat v(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rat> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = Rat(long(k)) * c_[k];
        return Poly(std::move(d));
    }

    Poly monic() const {
        if (zero()) return *this;
        Rat inv = Rat(1) / c_.back();
        std::vector<Rat> d(c_);
        for (auto& x : d) x *= inv;
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> d(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t k = 0; k < a.c_.size(); ++k) d[k] += a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) d[k] += b.c_[k];
        return Poly(std::move(d));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> d(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t k = 0; k < a.c_.size(); ++k) d[k] += a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) d[k] -= b.c_[k];
        return Poly(std::move(d));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return Poly();
        std::vector<Rat> d(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(d));
    }

    // Euclidean division: returns (quotient, remainder).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rat> rem(a.c_);
        std::vector<Rat> quo(rem.size() >= b.c_.size() ? rem.size() - b.c_.size() + 1 : 0, Rat(0));
        Rat lead_inv = Rat(1) / b.c_.back();
        while (rem.size() >= b.c_.size()) {
            while (!rem.empty() && is_zero(rem.back())) rem.pop_back();
            if (rem.size() < b.c_.size()) break;
            size_t shift = rem.size() - b.c_.size();
            Rat f = rem.back() * lead_inv;
            quo[shift] = f;
            for (size_t k = 0; k < b.c_.size(); ++k) rem[shift + k] -= f * b.c_[k];
            rem.pop_back();
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// p / gcd(p, p') : same roots, all simple.
inline Poly squarefree_part(const Poly& p) {
    if (p.zero() || p.degree() == 0) return p.monic();
    Poly g = poly_gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

// Sturm chain of a squarefree polynomial.
inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    if (p.zero()) return chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().zero()) {
        auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
        chain.push_back(Poly() - r);
    }
    chain.pop_back();
    return chain;
}

namespace detail {
// Sign variations of the chain at x, or at +/-infinity for which = +1/-1.
inline int sturm_variations(const std::vector<Poly>& chain, int where, const Rat& x = Rat(0)) {
    int var = 0, prev = 0;
    for (const Poly& q : chain) {
        int s;
        if (where == 0)
            s = sign(q.eval(x));
        else {
            s = sign(q.leading());
            if (where < 0 && q.degree() % 2 == 1) s = -s;
        }
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}
}  // namespace detail

// Number of distinct real roots of p in the interval (a, b], (a, +inf) or
// (-inf, b] or all of R; bounds are optional.
inline int count_real_roots(const Poly& p_in, std::optional<Rat> a = std::nullopt,
                            std::optional<Rat> b = std::nullopt) {
    Poly p = squarefree_part(p_in);
    if (p.zero()) throw std::domain_error("root count of zero polynomial");
    if (p.degree() == 0) return 0;
    auto chain = sturm_chain(p);
    int va = a ? detail::sturm_variations(chain, 0, *a) : detail::sturm_variations(chain, -1);
    int vb = b ? detail::sturm_variations(chain, 0, *b) : detail::sturm_variations(chain, +1);
    return va - vb;
}

namespace detail {
inline std::vector<Int> positive_divisors(Int n, long iter_cap = 4'000'000) {
    if (n < 0) n = -n;
    std::vector<Int> divs;
    Int i(1);
    for (long steps = 0; i * i <= n; ++i, ++steps) {
        if (steps > iter_cap) throw std::runtime_error("divisor enumeration overflow");
        if (n % i == 0) {
            divs.push_back(i);
            if (i * i != n) divs.push_back(n / i);
        }
    }
    return divs;
}
}  // namespace detail

// All rational roots of p (each once).
inline std::vector<Rat> rational_roots(const Poly& p_in) {
    Poly p = squarefree_part(p_in);
    std::vector<Rat> roots;
    if (p.zero() || p.degree() == 0) return roots;
    // strip root at 0
    std::vector<Rat> c = p.coeffs();
    size_t shift = 0;
    while (shift < c.size() && is_zero(c[shift])) ++shift;
    if (shift > 0) {
        roots.push_back(Rat(0));
        c.erase(c.begin(), c.begin() + long(shift));
        p = Poly(c);
        if (p.degree() == 0) return roots;
    }
    // clear denominators -> integer polynomial
    Int lcm(1);
    for (const Rat& x : c) {
        Int den = x.get_den();
        lcm = lcm / gcd(lcm, den) * den;
    }
    std::vector<Int> ic(c.size());
    for (size_t k = 0; k < c.size(); ++k) {
        Rat t = c[k] * Rat(lcm);
        ic[k] = t.get_num();
    }
    std::vector<Int> ps = detail::positive_divisors(ic.front());
    std::vector<Int> qs = detail::positive_divisors(ic.back());
    for (const Int& num : ps)
        for (const Int& den : qs)
            for (int s : {1, -1}) {
                Rat cand(s * num, den);
                cand.canonicalize();
                if (is_zero(p.eval(cand))) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace sphz
