#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "sphz/lattice.hpp"
#include "sphz/linfeas.hpp"
#include "sphz/matrix.hpp"

namespace sphz {

// Simplicial rational polyhedral cone in the cocharacter lattice Z^n, stored
// by its primitive extremal generators (rows, linearly independent). A
// simplicial cone is automatically strictly convex.
struct LatticeCone {
    int ambient = 0;
    ZMat gens;

    int dim() const { return int(gens.size()); }

    static LatticeCone make(int ambient, ZMat raw) {
        LatticeCone c;
        c.ambient = ambient;
        for (auto& g : raw) c.gens.push_back(primitive(std::move(g)));
        std::sort(c.gens.begin(), c.gens.end());
        if (!c.gens.empty() && rank(to_qmat(c.gens, ambient)) != int(c.gens.size()))
            throw std::invalid_argument("cone generators are linearly dependent");
        return c;
    }

    bool operator==(const LatticeCone& o) const { return gens == o.gens; }
    bool operator<(const LatticeCone& o) const { return gens < o.gens; }

    // coefficients of x over the generators, if x lies in the span
    std::optional<QVec> coefficients(const QVec& x) const {
        if (gens.empty()) return is_zero_vec(x) ? std::optional<QVec>(QVec{}) : std::nullopt;
        return solve(to_qmat(gens, ambient).transpose(), x);
    }

    bool contains(const QVec& x) const {
        auto c = coefficients(x);
        if (!c) return false;
        for (const Rat& v : *c)
            if (sign(v) < 0) return false;
        return true;
    }
    bool contains(const ZVec& x) const { return contains(to_qvec(x)); }

    bool contains_relative_interior(const QVec& x) const {
        auto c = coefficients(x);
        if (!c) return false;
        for (const Rat& v : *c)
            if (sign(v) <= 0) return false;
        return true;
    }
};

// All faces, including the zero cone and the cone itself.
inline std::vector<LatticeCone> faces(const LatticeCone& c) {
    std::vector<LatticeCone> out;
    int k = c.dim();
    for (int mask = 0; mask < (1 << k); ++mask) {
        LatticeCone f;
        f.ambient = c.ambient;
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) f.gens.push_back(c.gens[size_t(i)]);
        out.push_back(std::move(f));
    }
    return out;
}

// Smooth iff the generators extend to a Z-basis of the ambient lattice,
// equivalently they form a basis of the saturated sublattice they span.
inline bool is_smooth(const LatticeCone& c) {
    if (c.gens.empty()) return true;
    return lattice_index(c.gens, c.ambient) == 1;
}

inline Int multiplicity(const LatticeCone& c) {
    return c.gens.empty() ? Int(1) : lattice_index(c.gens, c.ambient);
}

namespace detail {

// Nonzero lattice points sum c_i g_i with 0 <= c_i < 1; empty iff smooth.
// Enumerated as residues of the generator lattice inside its saturation, via
// the Hermite normal form, so the cost is proportional to the multiplicity.
inline std::vector<ZVec> box_points(const LatticeCone& c) {
    std::vector<ZVec> out;
    int n = c.ambient, k = c.dim();
    if (k == 0) return out;
    ZMat sat = saturation_basis(c.gens, n);
    // gens = M . sat with M integral k x k
    QMat satq = to_qmat(sat, n);
    QMat m(k, k);
    for (int i = 0; i < k; ++i) {
        auto x = solve(satq.transpose(), to_qvec(c.gens[size_t(i)]));
        if (!x) throw std::logic_error("generator outside its own saturation");
        for (int j = 0; j < k; ++j) {
            if ((*x)[size_t(j)].get_den() != 1)
                throw std::logic_error("saturation coordinates not integral");
            m(i, j) = (*x)[size_t(j)];
        }
    }
    auto minv = inverse(m);
    if (!minv) throw std::logic_error("degenerate generator matrix");
    ZMat mz(static_cast<size_t>(k), ZVec(static_cast<size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) mz[size_t(i)][size_t(j)] = m(i, j).get_num();
    ZMat h = row_hermite(mz);
    std::vector<Int> diag(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) diag[size_t(i)] = h[size_t(i)][size_t(i)];
    // enumerate residues y, 0 <= y_i < diag_i, and map each to its box point
    std::vector<Int> y(size_t(k), Int(0));
    while (true) {
        // c = frac(y . M^-1), box point = c . gens
        bool nonzero = false;
        QVec frac(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j) {
            Rat cj(0);
            for (int i = 0; i < k; ++i) cj += Rat(y[size_t(i)]) * (*minv)(i, j);
            cj -= Rat(floor_rat(cj));
            frac[size_t(j)] = cj;
            if (!is_zero(cj)) nonzero = true;
        }
        if (nonzero) {
            QVec xq(size_t(n), Rat(0));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < n; ++j)
                    xq[size_t(j)] += frac[size_t(i)] * Rat(c.gens[size_t(i)][size_t(j)]);
            ZVec xz(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) {
                if (xq[size_t(j)].get_den() != 1)
                    throw std::logic_error("box point is not integral");
                xz[size_t(j)] = xq[size_t(j)].get_num();
            }
            out.push_back(std::move(xz));
        }
        int p = 0;
        while (p < k && ++y[size_t(p)] >= diag[size_t(p)]) y[size_t(p)] = 0, ++p;
        if (p == k) break;
    }
    return out;
}

inline Rat norm2(const ZVec& v) {
    Rat s(0);
    for (const Int& x : v) s += Rat(x * x);
    return s;
}

}  // namespace detail

struct Fan {
    LatticeCone support;
    std::vector<LatticeCone> maximal;

    std::vector<LatticeCone> all_cones() const {
        std::set<LatticeCone> seen;
        for (const auto& m : maximal)
            for (auto& f : faces(m)) seen.insert(f);
        return {seen.begin(), seen.end()};
    }
};

// Star subdivision of the maximal cones at the primitive ray w. Cones not
// containing w are unchanged; each cone containing w is replaced in place by
// its pieces, preserving construction order.
inline void star_subdivide(std::vector<LatticeCone>& maximal, const ZVec& w) {
    std::vector<LatticeCone> out;
    QVec wq = to_qvec(w);
    for (const auto& cone : maximal) {
        auto coef = cone.coefficients(wq);
        bool inside = false;
        if (coef) {
            inside = true;
            for (const Rat& ci : *coef)
                if (sign(ci) < 0) { inside = false; break; }
        }
        if (!inside) {
            out.push_back(cone);
            continue;
        }
        for (size_t i = 0; i < coef->size(); ++i) {
            if (sign((*coef)[i]) <= 0) continue;
            ZMat gens;
            for (size_t j = 0; j < cone.gens.size(); ++j)
                if (j != i) gens.push_back(cone.gens[j]);
            gens.push_back(w);
            out.push_back(LatticeCone::make(cone.ambient, std::move(gens)));
        }
    }
    maximal = std::move(out);
}

// Smooth simplicial subdivision of a simplicial cone by iterated star
// subdivision at a minimal box witness (smallest norm, ties lexicographic).
inline Fan smooth_subdivide(const LatticeCone& support) {
    Fan fan;
    fan.support = support;
    fan.maximal = {support};
    for (int guard = 0;; ++guard) {
        if (guard > 100000) throw std::runtime_error("subdivision failed to terminate");
        int bad = -1;
        for (size_t i = 0; i < fan.maximal.size(); ++i)
            if (!is_smooth(fan.maximal[i])) { bad = int(i); break; }
        if (bad < 0) break;
        auto box = detail::box_points(fan.maximal[size_t(bad)]);
        if (box.empty()) throw std::logic_error("non-smooth cone without box witness");
        ZVec best = box.front();
        for (const ZVec& cand : box) {
            Rat nb = detail::norm2(best), nc = detail::norm2(cand);
            if (nc < nb || (nc == nb && cand < best)) best = cand;
        }
        star_subdivide(fan.maximal, best);
    }
    return fan;
}

// --- exact fan verification ---------------------------------------------------

namespace detail {

// Dual description of a full-dimensional (in span coordinates) simplicial
// cone: rows psi with psi_i(g_j) = delta_ij, so the cone is {psi x >= 0}.
inline QMat dual_rows(const QMat& gens_in_coords) {
    auto inv = inverse(gens_in_coords.transpose());
    if (!inv) throw std::logic_error("degenerate cone in dual_rows");
    return *inv;
}

}  // namespace detail

// Checks that c1 and c2 intersect in a common face of both. Both cones must
// be full-dimensional in the span given by span_basis (rows).
inline bool common_face_check(const LatticeCone& c1, const LatticeCone& c2,
                              const ZMat& span_basis) {
    int k = int(span_basis.size());
    QMat sb = to_qmat(span_basis, c1.ambient);
    auto in_span_coords = [&](const LatticeCone& c) {
        QMat m(c.dim(), k);
        for (int i = 0; i < c.dim(); ++i) {
            auto x = solve(sb.transpose(), to_qvec(c.gens[size_t(i)]));
            if (!x) throw std::logic_error("cone not inside the span");
            m.set_row(i, *x);
        }
        return m;
    };
    QMat g1 = in_span_coords(c1), g2 = in_span_coords(c2);
    QMat psi1 = detail::dual_rows(g1), psi2 = detail::dual_rows(g2);

    std::vector<int> s1, s2;
    for (int i = 0; i < c1.dim(); ++i)
        if (c2.contains(c1.gens[size_t(i)])) s1.push_back(i);
    for (int j = 0; j < c2.dim(); ++j)
        if (c1.contains(c2.gens[size_t(j)])) s2.push_back(j);

    // the candidate common face must agree as a set of primitive generators
    std::set<ZVec> f1, f2;
    for (int i : s1) f1.insert(c1.gens[size_t(i)]);
    for (int j : s2) f2.insert(c2.gens[size_t(j)]);
    if (f1 != f2) return false;

    // C1 cap C2 inside face: the system {x in C1, x in C2, phi(x) > 0} with
    // phi the sum of the dual functionals cut out by the face is infeasible
    auto subset_check = [&](const QMat& psi, const std::vector<int>& s_idx) {
        QVec phi(size_t(k), Rat(0));
        std::vector<bool> in_face(size_t(psi.rows()), false);
        for (int i : s_idx) in_face[size_t(i)] = true;
        bool any = false;
        for (int i = 0; i < psi.rows(); ++i) {
            if (in_face[size_t(i)]) continue;
            any = true;
            for (int j = 0; j < k; ++j) phi[size_t(j)] += psi(i, j);
        }
        if (!any) return true;  // face is the whole cone
        std::vector<LinCon> sys;
        for (int i = 0; i < psi1.rows(); ++i) {
            QVec row = psi1.row(i);
            for (auto& x : row) x = -x;
            sys.push_back(con_le(row, Rat(0)));  // psi1 x >= 0
        }
        for (int i = 0; i < psi2.rows(); ++i) {
            QVec row = psi2.row(i);
            for (auto& x : row) x = -x;
            sys.push_back(con_le(row, Rat(0)));
        }
        QVec neg_phi(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j) neg_phi[size_t(j)] = -phi[size_t(j)];
        sys.push_back(con_lt(neg_phi, Rat(0)));  // phi(x) > 0
        return !feasible(std::move(sys), k);
    };
    return subset_check(psi1, s1) && subset_check(psi2, s2);
}

struct FanCheckReport {
    bool smooth = true;
    bool face_to_face = true;
    bool covers_support = true;
    bool interiors_disjoint = true;
    bool ok() const { return smooth && face_to_face && covers_support && interiors_disjoint; }
};

// Exact verification of the three subdivision requirements: union equals the
// support (lattice-point accounting in a box plus containment), pairwise
// intersections are common faces, and every maximal cone is smooth.
inline FanCheckReport verify_fan(const Fan& fan, long box_radius = 4) {
    FanCheckReport rep;
    const int n = fan.support.ambient;
    ZMat span = saturation_basis(fan.support.gens, n);
    QMat sb = to_qmat(span, n);
    const int k = int(span.size());

    // generator matrices and dual rows in span coordinates, computed once
    auto in_span = [&](const LatticeCone& c) {
        QMat m(c.dim(), k);
        for (int r = 0; r < c.dim(); ++r) {
            auto x = solve(sb.transpose(), to_qvec(c.gens[size_t(r)]));
            if (!x) throw std::logic_error("cone escapes the support span");
            m.set_row(r, *x);
        }
        return m;
    };
    std::vector<QMat> duals;
    for (const auto& c : fan.maximal) {
        if (!is_smooth(c)) rep.smooth = false;
        if (c.dim() != fan.support.dim()) rep.covers_support = false;
        for (const auto& g : c.gens)
            if (!fan.support.contains(g)) rep.covers_support = false;
        duals.push_back(detail::dual_rows(in_span(c)));
    }
    QMat support_dual = detail::dual_rows(in_span(fan.support));

    for (size_t i = 0; i < fan.maximal.size(); ++i)
        for (size_t j = i + 1; j < fan.maximal.size(); ++j) {
            if (!common_face_check(fan.maximal[i], fan.maximal[j], span)) rep.face_to_face = false;
            std::vector<LinCon> sys;
            for (const QMat* psi : {&duals[i], &duals[j]})
                for (int r = 0; r < psi->rows(); ++r) {
                    QVec row = psi->row(r);
                    for (auto& x : row) x = -x;
                    sys.push_back(con_lt(row, Rat(0)));  // psi x > 0
                }
            if (feasible(std::move(sys), k)) rep.interiors_disjoint = false;
        }

    // lattice points of the support inside a coefficient box are covered;
    // everything runs in span coordinates with plain matrix-vector products
    auto member = [&](const QMat& psi, const QVec& c) {
        for (int r = 0; r < psi.rows(); ++r) {
            Rat s(0);
            for (int q = 0; q < k; ++q) s += psi(r, q) * c[size_t(q)];
            if (sign(s) < 0) return false;
        }
        return true;
    };
    std::vector<Int> c(size_t(k), Int(-box_radius));
    while (k > 0) {
        QVec pt(static_cast<size_t>(k));
        for (int q = 0; q < k; ++q) pt[size_t(q)] = Rat(c[size_t(q)]);
        if (member(support_dual, pt)) {
            bool covered = false;
            for (const QMat& psi : duals)
                if (member(psi, pt)) { covered = true; break; }
            if (!covered) rep.covers_support = false;
        }
        int p = 0;
        while (p < k && ++c[size_t(p)] > box_radius) c[size_t(p)] = -box_radius, ++p;
        if (p == k) break;
    }
    return rep;
}

// --- the face data attached to subsets of spherical roots --------------------

// F_I = {cones C in the fan : span C = a_I}; roots are integer rows in the
// character coordinates, a_I its kernel intersected with the span data.
struct ConesWithSpan {
    std::vector<LatticeCone> cones;       // members of F_I
    std::vector<std::vector<int>> labels; // for each cone, I(C) = roots vanishing on it
};

inline ConesWithSpan cones_with_span(const Fan& fan, const QMat& aI_basis,
                                     const std::vector<ZVec>& roots) {
    ConesWithSpan out;
    for (const auto& c : fan.all_cones()) {
        if (c.dim() != aI_basis.rows()) continue;
        // equal spans: each generator in span(aI) and dims match
        bool inside = true;
        for (const auto& g : c.gens)
            if (!solve(aI_basis.transpose(), to_qvec(g))) { inside = false; break; }
        if (!inside) continue;
        out.cones.push_back(c);
        std::vector<int> label;
        for (size_t s = 0; s < roots.size(); ++s) {
            bool vanishes = true;
            for (const auto& g : c.gens) {
                Rat v(0);
                for (int j = 0; j < c.ambient; ++j)
                    v += Rat(roots[s][size_t(j)]) * Rat(g[size_t(j)]);
                if (!is_zero(v)) { vanishes = false; break; }
            }
            if (vanishes) label.push_back(int(s));
        }
        out.labels.push_back(std::move(label));
    }
    return out;
}

struct DualBasisData {
    int j_I = -1;                  // index of the chosen maximal cone
    std::vector<QVec> psi;         // basis of the character lattice, transverse first
    std::vector<QVec> e;           // dual basis of psi in the cocharacter space
    QVec e_I;                      // sum of the first k dual vectors
    int k = 0;                     // dim a_I
};

// The basis psi_i^I cutting out the chosen maximal cone, ordered so the last
// |I| functionals span Q[I]; e_i^I is the dual basis and e_I the sum of the
// first k duals. Requires the fan to be full-dimensional and smooth.
inline DualBasisData dual_basis_data(const Fan& fan, const QMat& qI_span_rows,
                                     const LatticeCone& chosen) {
    const int n = fan.support.ambient;
    DualBasisData out;
    for (size_t m = 0; m < fan.maximal.size(); ++m) {
        const auto& mc = fan.maximal[size_t(m)];
        bool contains_all = true;
        for (const auto& g : chosen.gens)
            if (std::find(mc.gens.begin(), mc.gens.end(), g) == mc.gens.end())
                contains_all = false;
        if (contains_all) { out.j_I = int(m); break; }
    }
    if (out.j_I < 0) throw std::invalid_argument("chosen cone is not a face of a maximal cone");
    const LatticeCone& mc = fan.maximal[size_t(out.j_I)];
    if (mc.dim() != n) throw std::invalid_argument("fan is not full-dimensional");
    if (!is_smooth(mc)) throw std::invalid_argument("maximal cone is not smooth");

    // order generators: the ones belonging to the chosen face first
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (std::find(chosen.gens.begin(), chosen.gens.end(), mc.gens[size_t(i)]) !=
            chosen.gens.end())
            order.push_back(i);
    out.k = int(order.size());
    for (int i = 0; i < n; ++i)
        if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);

    QMat g(n, n);
    for (int i = 0; i < n; ++i) g.set_row(i, to_qvec(mc.gens[size_t(order[size_t(i)])]));
    QMat dual = detail::dual_rows(g);  // dual(i) . g(j) = delta_ij
    out.e_I = QVec(size_t(n), Rat(0));
    for (int i = 0; i < n; ++i) {
        QVec ei = g.row(i);
        for (auto& x : ei) x = -x;  // e_i = -g_i: the cone is {psi <= 0}
        QVec psii = dual.row(i);
        for (auto& x : psii) x = -x;
        out.e.push_back(ei);
        out.psi.push_back(psii);
        if (i < out.k) out.e_I = out.e_I + ei;
    }
    // the last n-k functionals must span Q[I]
    if (qI_span_rows.rows() > 0) {
        QMat tail(n - out.k + qI_span_rows.rows(), n);
        for (int i = out.k; i < n; ++i) tail.set_row(i - out.k, out.psi[size_t(i)]);
        for (int i = 0; i < qI_span_rows.rows(); ++i)
            tail.set_row(n - out.k + i, qI_span_rows.row(i));
        if (rank(tail) != n - out.k || qI_span_rows.rows() != n - out.k)
            throw std::runtime_error("ordering impossible: span condition fails");
    } else if (out.k != n) {
        throw std::runtime_error("ordering impossible: span condition fails");
    }
    return out;
}

}  // namespace sphz
