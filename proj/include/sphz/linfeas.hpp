#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sphz/matrix.hpp"
#include "sphz/rational.hpp"

namespace sphz {

// One linear constraint  sum_j coef[j] x_j  (<= | < | ==)  rhs.
struct LinCon {
    QVec coef;
    Rat rhs;
    enum Kind { LE, LT, EQ } kind = LE;
};

inline LinCon con_le(QVec c, Rat rhs = Rat(0)) { return {std::move(c), std::move(rhs), LinCon::LE}; }
inline LinCon con_lt(QVec c, Rat rhs = Rat(0)) { return {std::move(c), std::move(rhs), LinCon::LT}; }
inline LinCon con_eq(QVec c, Rat rhs = Rat(0)) { return {std::move(c), std::move(rhs), LinCon::EQ}; }

// Exact feasibility of a system of linear constraints over Q by
// Fourier-Motzkin elimination (equalities substituted first). Intended for
// the small systems coming from cone geometry.
inline bool feasible(std::vector<LinCon> sys, int nvars) {
    // Split equalities into two inequalities is wasteful; substitute instead.
    // Gaussian elimination on EQ rows.
    for (bool progress = true; progress;) {
        progress = false;
        for (size_t e = 0; e < sys.size(); ++e) {
            if (sys[e].kind != LinCon::EQ) continue;
            int piv = -1;
            for (int j = 0; j < nvars; ++j)
                if (!is_zero(sys[e].coef[size_t(j)])) { piv = j; break; }
            if (piv < 0) {
                if (!is_zero(sys[e].rhs)) return false;  // 0 == nonzero
                sys.erase(sys.begin() + long(e));
                progress = true;
                break;
            }
            LinCon eq = sys[e];
            sys.erase(sys.begin() + long(e));
            Rat inv = Rat(1) / eq.coef[size_t(piv)];
            for (auto& c : sys) {
                if (is_zero(c.coef[size_t(piv)])) continue;
                Rat f = c.coef[size_t(piv)] * inv;
                for (int j = 0; j < nvars; ++j) c.coef[size_t(j)] -= f * eq.coef[size_t(j)];
                c.rhs -= f * eq.rhs;
            }
            progress = true;
            break;
        }
    }
    // Fourier-Motzkin on the inequalities, with gcd-normalization and
    // de-duplication after every elimination to keep the system small.
    auto normalize = [&](std::vector<LinCon>& rows) {
        std::set<std::pair<std::vector<std::string>, int>> seen;
        std::vector<LinCon> kept;
        for (auto& c : rows) {
            Int lcm(1), g(0);
            for (const Rat& x : c.coef) {
                Int den = x.get_den();
                lcm = lcm / gcd(lcm, den) * den;
            }
            {
                Int den = c.rhs.get_den();
                lcm = lcm / gcd(lcm, den) * den;
            }
            for (const Rat& x : c.coef) g = gcd(g, Int(x.get_num() * (lcm / x.get_den())));
            g = gcd(g, Int(c.rhs.get_num() * (lcm / c.rhs.get_den())));
            if (g == 0) g = 1;
            Rat scale = Rat(lcm) / Rat(g);
            for (Rat& x : c.coef) x *= scale;
            c.rhs *= scale;
            std::vector<std::string> key;
            for (const Rat& x : c.coef) key.push_back(x.get_str());
            key.push_back(c.rhs.get_str());
            if (seen.insert({key, int(c.kind)}).second) kept.push_back(std::move(c));
        }
        rows = std::move(kept);
    };
    normalize(sys);
    for (int v = 0; v < nvars; ++v) {
        std::vector<LinCon> pos, neg, rest;
        for (auto& c : sys) {
            int s = sign(c.coef[size_t(v)]);
            if (s > 0) pos.push_back(c);
            else if (s < 0) neg.push_back(c);
            else rest.push_back(c);
        }
        std::vector<LinCon> next = std::move(rest);
        for (const auto& p : pos)
            for (const auto& n : neg) {
                // p: a x_v + ... <= b (a>0),  n: -c x_v + ... <= d (c>0)
                Rat a = p.coef[size_t(v)], c = -n.coef[size_t(v)];
                LinCon comb;
                comb.coef.resize(size_t(nvars), Rat(0));
                for (int j = 0; j < nvars; ++j)
                    comb.coef[size_t(j)] = c * p.coef[size_t(j)] + a * n.coef[size_t(j)];
                comb.rhs = c * p.rhs + a * n.rhs;
                comb.kind = (p.kind == LinCon::LT || n.kind == LinCon::LT) ? LinCon::LT : LinCon::LE;
                next.push_back(std::move(comb));
            }
        sys = std::move(next);
        normalize(sys);
    }
    for (const auto& c : sys) {
        // all coefficients are zero now
        int s = sign(c.rhs);
        if (c.kind == LinCon::LT && s <= 0) return false;
        if (c.kind == LinCon::LE && s < 0) return false;
    }
    return true;
}

// Membership x in cone(gens) over Q, by Caratheodory: x is in the cone iff it
// is a nonnegative combination of some linearly independent subset.
inline bool in_cone(const std::vector<QVec>& gens, const QVec& x, int dim) {
    if (is_zero_vec(x)) return true;
    if (gens.empty()) return false;
    QMat g = stack_rows(gens, dim);
    int r = rank(g);
    int k = int(gens.size());
    std::vector<int> idx;
    // enumerate subsets of size <= r
    std::vector<int> stack;
    std::function<bool(int)> rec = [&](int start) -> bool {
        if (!stack.empty()) {
            QMat sub(int(stack.size()), dim);
            for (size_t i = 0; i < stack.size(); ++i) sub.set_row(int(i), gens[size_t(stack[i])]);
            // solve xT = cT * sub  i.e. sub^T c = x
            auto c = solve(sub.transpose(), x);
            if (c) {
                bool ok = true;
                for (const Rat& ci : *c)
                    if (sign(ci) < 0) { ok = false; break; }
                if (ok) return true;
            }
        }
        if (int(stack.size()) == r) return false;
        for (int i = start; i < k; ++i) {
            stack.push_back(i);
            if (rec(i + 1)) return true;
            stack.pop_back();
        }
        return false;
    };
    return rec(0);
}

}  // namespace sphz
