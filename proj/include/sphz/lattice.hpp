#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sphz/matrix.hpp"
#include "sphz/rational.hpp"

namespace sphz {

using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;  // row-major, possibly ragged-checked at use

inline Int vec_gcd(const ZVec& v) {
    Int g(0);
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

inline ZVec primitive(ZVec v) {
    Int g = vec_gcd(v);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

// Scales a rational vector to the primitive integer vector on the same ray
// (pointing the same way).
inline ZVec primitive_ray(const QVec& v) {
    Int lcm(1);
    for (const Rat& x : v) {
        Int den = x.get_den();
        lcm = lcm / gcd(lcm, den) * den;
    }
    ZVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat t = v[i] * Rat(lcm);
        w[i] = t.get_num();
    }
    return primitive(std::move(w));
}

inline QVec to_qvec(const ZVec& v) {
    QVec q(v.size());
    for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

inline QMat to_qmat(const ZMat& m, int cols) {
    QMat q(int(m.size()), cols);
    for (size_t i = 0; i < m.size(); ++i)
        for (int j = 0; j < cols; ++j) q(int(i), j) = Rat(m[i][size_t(j)]);
    return q;
}

// gcd of all k x k minors of a k x n integer matrix (k = #rows <= n).
// The rows span a finite-index sublattice of the saturation iff this is
// nonzero; the index equals the gcd. Rows are a basis of a saturated
// sublattice iff the gcd is 1.
inline Int lattice_index(const ZMat& rows, int n) {
    int k = int(rows.size());
    if (k == 0) return Int(1);
    std::vector<int> idx(static_cast<size_t>(k));
    Int g(0);
    // iterate over k-subsets of columns
    for (int i = 0; i < k; ++i) idx[size_t(i)] = i;
    auto minor_det = [&](const std::vector<int>& cols) {
        QMat m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = Rat(rows[size_t(i)][size_t(cols[size_t(j)])]);
        Rat d = det(m);
        return Int(d.get_num());
    };
    while (true) {
        g = gcd(g, minor_det(idx));
        if (g == 1) return g;
        int p = k - 1;
        while (p >= 0 && idx[size_t(p)] == n - k + p) --p;
        if (p < 0) break;
        ++idx[size_t(p)];
        for (int q = p + 1; q < k; ++q) idx[size_t(q)] = idx[size_t(q - 1)] + 1;
    }
    return g;
}

namespace detail {
// Column-style HNF transform: finds unimodular V (n x n) with G V = [L | 0],
// L lower triangular with nonnegative... (we only need V and L invertible).
// Returns (GV, V).
inline std::pair<ZMat, ZMat> column_reduce(ZMat g, int n) {
    ZMat v(static_cast<size_t>(n), ZVec(static_cast<size_t>(n), Int(0)));
    for (int i = 0; i < n; ++i) v[size_t(i)][size_t(i)] = 1;
    auto col_addmul = [&](ZMat& m, int dst, int src, const Int& f) {
        for (auto& row : m) row[size_t(dst)] += f * row[size_t(src)];
    };
    auto col_swap = [&](ZMat& m, int a, int b) {
        for (auto& row : m) std::swap(row[size_t(a)], row[size_t(b)]);
    };
    auto col_neg = [&](ZMat& m, int c) {
        for (auto& row : m) row[size_t(c)] = -row[size_t(c)];
    };
    int r = 0;
    for (size_t i = 0; i < g.size() && r < n; ++i) {
        // gcd-reduce row i across columns r..n-1
        while (true) {
            int p = -1;
            for (int c = r; c < n; ++c)
                if (g[i][size_t(c)] != 0) { p = c; break; }
            if (p < 0) break;
            // move the column with the smallest nonzero |entry| to position r
            for (int c = r; c < n; ++c)
                if (g[i][size_t(c)] != 0 &&
                    abs(g[i][size_t(c)]) < abs(g[i][size_t(p)]))
                    p = c;
            if (p != r) { col_swap(g, r, p); col_swap(v, r, p); }
            if (g[i][size_t(r)] < 0) { col_neg(g, r); col_neg(v, r); }
            bool done = true;
            for (int c = r + 1; c < n; ++c) {
                if (g[i][size_t(c)] == 0) continue;
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), g[i][size_t(c)].get_mpz_t(), g[i][size_t(r)].get_mpz_t());
                col_addmul(g, c, r, -f);
                col_addmul(v, c, r, -f);
                if (g[i][size_t(c)] != 0) done = false;
            }
            if (done) break;
        }
        if (g[i][size_t(r)] != 0) ++r;
    }
    return {g, v};
}
}  // namespace detail

// Given rows g_1..g_k forming a basis of a saturated rank-k sublattice of
// Z^n, returns an n x n unimodular matrix whose first k rows are g_1..g_k.
inline std::optional<ZMat> complete_to_unimodular(const ZMat& gens, int n) {
    int k = int(gens.size());
    if (k == 0) {
        ZMat id(static_cast<size_t>(n), ZVec(static_cast<size_t>(n), Int(0)));
        for (int i = 0; i < n; ++i) id[size_t(i)][size_t(i)] = 1;
        return id;
    }
    auto [l, v] = detail::column_reduce(gens, n);
    // check L (k leading columns of l) is unimodular
    QMat lm(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) lm(i, j) = Rat(l[size_t(i)][size_t(j)]);
    Rat d = det(lm);
    if (!(d == 1 || d == -1)) return std::nullopt;
    // basis = rows of V^-1, with the first k replaced by gens
    QMat vq(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vq(i, j) = Rat(v[size_t(i)][size_t(j)]);
    auto vinv = inverse(vq);
    if (!vinv) return std::nullopt;
    ZMat basis(static_cast<size_t>(n), ZVec(static_cast<size_t>(n)));
    for (int i = 0; i < k; ++i) basis[size_t(i)] = gens[size_t(i)];
    for (int i = k; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat e = (*vinv)(i, j);
            if (e.get_den() != 1) return std::nullopt;
            basis[size_t(i)][size_t(j)] = e.get_num();
        }
    return basis;
}

// Row Hermite normal form (upper echelon, positive pivots) computed with row
// operations only, so the row lattice is unchanged.
inline ZMat row_hermite(ZMat m) {
    if (m.empty()) return m;
    int rows = int(m.size()), cols = int(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        while (true) {
            int p = -1;
            for (int i = r; i < rows; ++i)
                if (m[size_t(i)][size_t(c)] != 0 &&
                    (p < 0 || abs(m[size_t(i)][size_t(c)]) < abs(m[size_t(p)][size_t(c)])))
                    p = i;
            if (p < 0) break;
            std::swap(m[size_t(p)], m[size_t(r)]);
            if (m[size_t(r)][size_t(c)] < 0)
                for (auto& x : m[size_t(r)]) x = -x;
            bool done = true;
            for (int i = r + 1; i < rows; ++i) {
                if (m[size_t(i)][size_t(c)] == 0) continue;
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), m[size_t(i)][size_t(c)].get_mpz_t(),
                           m[size_t(r)][size_t(c)].get_mpz_t());
                for (int j = 0; j < cols; ++j) m[size_t(i)][size_t(j)] -= f * m[size_t(r)][size_t(j)];
                if (m[size_t(i)][size_t(c)] != 0) done = false;
            }
            if (done) break;
        }
        if (m[size_t(r)][size_t(c)] != 0) {
            for (int i = 0; i < r; ++i) {
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), m[size_t(i)][size_t(c)].get_mpz_t(),
                           m[size_t(r)][size_t(c)].get_mpz_t());
                for (int j = 0; j < cols; ++j) m[size_t(i)][size_t(j)] -= f * m[size_t(r)][size_t(j)];
            }
            ++r;
        }
    }
    return m;
}

inline Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Basis of the saturation (span_Q(rows) intersect Z^n) of the row lattice.
inline ZMat saturation_basis(const ZMat& rows, int n) {
    if (rows.empty()) return {};
    auto [l, v] = detail::column_reduce(rows, n);
    (void)l;
    QMat vq(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vq(i, j) = Rat(v[size_t(i)][size_t(j)]);
    auto vinv = inverse(vq);
    if (!vinv) throw std::logic_error("unimodular inverse failed");
    int r = rank(to_qmat(rows, n));
    ZMat out;
    for (int i = 0; i < r; ++i) {
        ZVec row(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            Rat e = (*vinv)(i, j);
            if (e.get_den() != 1) throw std::logic_error("saturation not integral");
            row[size_t(j)] = e.get_num();
        }
        out.push_back(std::move(row));
    }
    return out;
}

// Basis of the saturated integer kernel {x in Z^n : rows . x = 0}.
inline ZMat integer_kernel(const QMat& rows) {
    QMat k = kernel_basis(rows);
    // The rational kernel basis from RREF spans the kernel; saturate by HNF
    // column reduction of the primitive scalings.
    ZMat prim;
    for (int i = 0; i < k.rows(); ++i) prim.push_back(primitive_ray(k.row(i)));
    if (prim.empty()) return prim;
    int n = rows.cols();
    // saturate via column reduction
    auto [l, v] = detail::column_reduce(prim, n);
    // rows of prim = L * (first rows of V^{-1}); the saturated lattice basis is
    // the first k rows of V^{-1}.
    QMat vq(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vq(i, j) = Rat(v[size_t(i)][size_t(j)]);
    auto vinv = inverse(vq);
    if (!vinv) throw std::logic_error("unimodular inverse failed");
    ZMat out;
    for (size_t i = 0; i < prim.size(); ++i) {
        ZVec row(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            Rat e = (*vinv)(int(i), j);
            if (e.get_den() != 1) throw std::logic_error("kernel saturation not integral");
            row[size_t(j)] = e.get_num();
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace sphz
