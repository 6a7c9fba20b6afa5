#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphz/matrix.hpp"
#include "sphz/poly.hpp"
#include "sphz/rational.hpp"

namespace sphz {

inline QMat bracket(const QMat& x, const QMat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
        throw std::invalid_argument("bracket: dimension mismatch");
    return x * y - y * x;
}

class MatrixLieAlgebra;

// Subspace of a Lie algebra, canonicalized by reduced row echelon form of the
// coordinate vectors (so equality of subspaces is equality of representations).
class Subspace {
public:
    Subspace() : ambient_dim_(0), coord_len_(0) {}

    static Subspace from_coords(QMat coords) {
        Subspace s;
        s.coord_len_ = coords.cols();
        rref(coords);
        std::vector<QVec> rows;
        for (int i = 0; i < coords.rows(); ++i) {
            QVec r = coords.row(i);
            if (!is_zero_vec(r)) rows.push_back(std::move(r));
        }
        s.basis_ = stack_rows(rows, s.coord_len_);
        s.ambient_dim_ = s.coord_len_;
        return s;
    }

    int dim() const { return basis_.rows(); }
    int coord_len() const { return coord_len_; }
    const QMat& coords() const { return basis_; }
    QVec coord_basis_vector(int i) const { return basis_.row(i); }

    bool contains(const QVec& v) const {
        if (is_zero_vec(v)) return true;
        QMat m(basis_.rows() + 1, coord_len_);
        for (int i = 0; i < basis_.rows(); ++i) m.set_row(i, basis_.row(i));
        m.set_row(basis_.rows(), v);
        return rank(m) == basis_.rows();
    }

    bool contains(const Subspace& other) const {
        for (int i = 0; i < other.dim(); ++i)
            if (!contains(other.coord_basis_vector(i))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    friend Subspace sum(const Subspace& a, const Subspace& b) {
        QMat m(a.dim() + b.dim(), a.coord_len_);
        for (int i = 0; i < a.dim(); ++i) m.set_row(i, a.basis_.row(i));
        for (int i = 0; i < b.dim(); ++i) m.set_row(a.dim() + i, b.basis_.row(i));
        return from_coords(std::move(m));
    }

    friend Subspace intersect(const Subspace& a, const Subspace& b) {
        // rows of the kernel of [A^T | B^T] give coefficients (u, v) with
        // u A = v B; the intersection is spanned by those u A.
        int n = a.coord_len_;
        QMat m(n, a.dim() + b.dim());
        for (int j = 0; j < a.dim(); ++j)
            for (int i = 0; i < n; ++i) m(i, j) = a.basis_(j, i);
        for (int j = 0; j < b.dim(); ++j)
            for (int i = 0; i < n; ++i) m(i, a.dim() + j) = -b.basis_(j, i);
        QMat ker = kernel_basis(m);
        std::vector<QVec> rows;
        for (int r = 0; r < ker.rows(); ++r) {
            QVec v(size_t(n), Rat(0));
            for (int j = 0; j < a.dim(); ++j)
                for (int i = 0; i < n; ++i) v[size_t(i)] += ker(r, j) * a.basis_(j, i);
            rows.push_back(std::move(v));
        }
        return from_coords(stack_rows(rows, n));
    }

private:
    int ambient_dim_;
    int coord_len_;
    QMat basis_;  // RREF rows
};

// A rational functional on the split Cartan, stored by its values on the
// chosen basis of that Cartan. Ordered so functionals can key maps.
struct RootFunctional {
    QVec values;
    bool operator==(const RootFunctional& o) const { return values == o.values; }
    bool operator<(const RootFunctional& o) const {
        for (size_t i = 0; i < values.size(); ++i) {
            if (values[i] < o.values[i]) return true;
            if (values[i] > o.values[i]) return false;
        }
        return false;
    }
    RootFunctional operator+(const RootFunctional& o) const {
        return {values + o.values};
    }
    RootFunctional operator-() const {
        QVec v(values.size());
        for (size_t i = 0; i < values.size(); ++i) v[i] = -values[i];
        return {v};
    }
    bool is_zero() const { return is_zero_vec(values); }
};

struct RootSpaceDecomposition {
    Subspace cartan;                 // the acting split abelian subspace
    Subspace zero_space;             // centralizer of the Cartan inside g
    std::map<RootFunctional, Subspace> root_spaces;
};

// Exact rational matrix Lie algebra with an invariant symmetric form.
class MatrixLieAlgebra {
public:
    MatrixLieAlgebra() = default;

    // form: if absent, the trace form of the defining representation.
    static MatrixLieAlgebra create(int ambient_size, std::vector<QMat> basis,
                                   std::optional<QMat> form = std::nullopt) {
        MatrixLieAlgebra g;
        g.n_ = ambient_size;
        g.basis_ = std::move(basis);
        int d = int(g.basis_.size());
        QMat flat = stack_flat(g.basis_);
        if (rank(flat) != d) throw std::invalid_argument("basis is linearly dependent");
        g.flat_ = std::move(flat);
        if (form) {
            if (form->rows() != d || form->cols() != d)
                throw std::invalid_argument("form has wrong size");
            g.kappa_ = *form;
        } else {
            g.kappa_ = QMat(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = i; j < d; ++j) {
                    Rat v = (g.basis_[size_t(i)] * g.basis_[size_t(j)]).trace();
                    g.kappa_(i, j) = v;
                    g.kappa_(j, i) = v;
                }
        }
        auto kinv = inverse(g.kappa_);
        if (!kinv) throw std::invalid_argument("invariant form is degenerate");
        g.kappa_inv_ = *kinv;
        // left inverse of flat_^T, so coordinates are a single exact matvec
        QMat gram = g.flat_ * g.flat_.transpose();
        auto ginv = inverse(gram);
        if (!ginv) throw std::logic_error("independent basis has singular Gram matrix");
        g.solver_ = (*ginv) * g.flat_;
        return g;
    }

    int ambient_size() const { return n_; }
    int dim() const { return int(basis_.size()); }
    const std::vector<QMat>& basis() const { return basis_; }
    const QMat& form_matrix() const { return kappa_; }

    // Coordinates of an ambient matrix in the algebra basis.
    QVec coords_of(const QMat& x) const {
        auto c = try_coords_of(x);
        if (!c) throw std::invalid_argument("element not in the span of the algebra");
        return *c;
    }
    std::optional<QVec> try_coords_of(const QMat& x) const {
        QVec v = x.flatten();
        QVec c(size_t(dim()), Rat(0));
        for (int i = 0; i < dim(); ++i)
            for (size_t j = 0; j < v.size(); ++j)
                if (!is_zero(v[j])) c[size_t(i)] += solver_(i, int(j)) * v[j];
        // verify membership: reconstruct and compare
        QVec back(v.size(), Rat(0));
        for (int i = 0; i < dim(); ++i) {
            if (is_zero(c[size_t(i)])) continue;
            for (size_t j = 0; j < v.size(); ++j) back[j] += c[size_t(i)] * flat_(i, int(j));
        }
        if (back != v) return std::nullopt;
        return c;
    }
    bool contains_matrix(const QMat& x) const { return bool(try_coords_of(x)); }

    QMat matrix_of(const QVec& coords) const {
        QMat m(n_, n_);
        for (int k = 0; k < dim(); ++k) {
            if (is_zero(coords[size_t(k)])) continue;
            m = m + basis_[size_t(k)] * coords[size_t(k)];
        }
        return m;
    }

    Rat form(const QVec& a, const QVec& b) const {
        Rat s(0);
        for (int i = 0; i < dim(); ++i) {
            if (is_zero(a[size_t(i)])) continue;
            for (int j = 0; j < dim(); ++j) s += a[size_t(i)] * kappa_(i, j) * b[size_t(j)];
        }
        return s;
    }
    Rat form_matrices(const QMat& x, const QMat& y) const { return form(coords_of(x), coords_of(y)); }

    // Matrix of ad(x) in the algebra basis, x given in coordinates.
    QMat ad(const QVec& x) const {
        QMat xm = matrix_of(x);
        QMat a(dim(), dim());
        for (int j = 0; j < dim(); ++j) {
            QVec col = coords_of(bracket(xm, basis_[size_t(j)]));
            for (int i = 0; i < dim(); ++i) a(i, j) = col[size_t(i)];
        }
        return a;
    }

    QVec bracket_coords(const QVec& x, const QVec& y) const {
        return coords_of(bracket(matrix_of(x), matrix_of(y)));
    }

    Subspace span_of_matrices(const std::vector<QMat>& mats) const {
        std::vector<QVec> rows;
        rows.reserve(mats.size());
        for (const QMat& m : mats) rows.push_back(coords_of(m));
        return Subspace::from_coords(stack_rows(rows, dim()));
    }

    Subspace full_space() const {
        return Subspace::from_coords(QMat::identity(dim()));
    }

    // {x : kappa(x, v) = 0 for all v in V}
    Subspace orthogonal_complement(const Subspace& v) const {
        QMat m(v.dim(), dim());
        for (int i = 0; i < v.dim(); ++i) {
            QVec row = v.coord_basis_vector(i);
            for (int j = 0; j < dim(); ++j) {
                Rat s(0);
                for (int k = 0; k < dim(); ++k) s += row[size_t(k)] * kappa_(k, j);
                m(i, j) = s;
            }
        }
        return Subspace::from_coords(kernel_basis(m));
    }

    // Orthocomplement of V inside W (both subspaces of g).
    Subspace relative_complement(const Subspace& v, const Subspace& w) const {
        return intersect(orthogonal_complement(v), w);
    }

    // Verifies closure of a subspace under the bracket.
    bool is_subalgebra(const Subspace& s) const {
        for (int i = 0; i < s.dim(); ++i)
            for (int j = i + 1; j < s.dim(); ++j) {
                QVec br = bracket_coords(s.coord_basis_vector(i), s.coord_basis_vector(j));
                if (!s.contains(br)) return false;
            }
        return true;
    }

    bool normalizes(const Subspace& a, const Subspace& s) const {
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j) {
                QVec br = bracket_coords(a.coord_basis_vector(i), s.coord_basis_vector(j));
                if (!s.contains(br)) return false;
            }
        return true;
    }

    // Structure checks (Jacobi, closure, ad-invariance of the form). Used by
    // validation and tests; quadratic to cubic in dim.
    bool check_closure() const {
        for (int i = 0; i < dim(); ++i)
            for (int j = i + 1; j < dim(); ++j)
                if (!contains_matrix(bracket(basis_[size_t(i)], basis_[size_t(j)]))) return false;
        return true;
    }
    bool check_jacobi() const {
        for (int i = 0; i < dim(); ++i)
            for (int j = i + 1; j < dim(); ++j)
                for (int k = j + 1; k < dim(); ++k) {
                    const QMat &x = basis_[size_t(i)], &y = basis_[size_t(j)], &z = basis_[size_t(k)];
                    QMat s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                             bracket(z, bracket(x, y));
                    if (!s.is_zero_matrix()) return false;
                }
        return true;
    }
    bool check_ad_invariance() const {
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                for (int k = j; k < dim(); ++k) {
                    QVec x(size_t(dim()), Rat(0)), y(size_t(dim()), Rat(0)), w(size_t(dim()), Rat(0));
                    x[size_t(i)] = 1; y[size_t(j)] = 1; w[size_t(k)] = 1;
                    Rat lhs = form(bracket_coords(x, y), w) + form(y, bracket_coords(x, w));
                    if (!is_zero(lhs)) return false;
                }
        return true;
    }

private:
    int n_ = 0;
    std::vector<QMat> basis_;
    QMat flat_;       // basis matrices flattened, one per row
    QMat solver_;     // (flat flat^T)^-1 flat
    QMat kappa_, kappa_inv_;
};

// --- spectral classification of ad X ---------------------------------------

enum class SpectrumType { REAL, IMAGINARY, MIXED };

struct SpectrumCertificate {
    SpectrumType type;
    bool exact = true;            // exact Sturm path produced the verdict
    std::string detail;
};

// X semisimple iff q(ad X) = 0 for q the squarefree part of the
// characteristic polynomial of ad X.
inline bool is_semisimple_element(const MatrixLieAlgebra& g, const QVec& x) {
    QMat a = g.ad(x);
    Poly p = Poly(char_poly(a));
    Poly q = squarefree_part(p);
    // evaluate q(A)
    QMat acc = QMat::identity(a.rows()) * q.coeff(0);
    QMat pw = QMat::identity(a.rows());
    for (int k = 1; k <= q.degree(); ++k) {
        pw = pw * a;
        acc = acc + pw * q.coeff(k);
    }
    return acc.is_zero_matrix();
}

// Exact classification of spec(ad X) as all-real / all-imaginary / mixed.
// All roots lie in i*R iff p(t) = t^k * r(t^2) with r having only real
// nonpositive roots; all real iff the squarefree part has as many real roots
// as its degree. Both are Sturm counts, so the exact path always applies to
// rational input; tol is used only by the numeric cross-check.
inline SpectrumCertificate spectrum_type(const MatrixLieAlgebra& g, const QVec& x,
                                         double tol = 1e-9) {
    (void)tol;
    QMat a = g.ad(x);
    Poly p = Poly(char_poly(a));
    // strip t^k
    std::vector<Rat> c = p.coeffs();
    size_t k = 0;
    while (k < c.size() && is_zero(c[k])) ++k;
    std::vector<Rat> red(c.begin() + long(k), c.end());

    bool even_ok = true;
    for (size_t i = 1; i < red.size(); i += 2)
        if (!is_zero(red[i])) { even_ok = false; break; }

    bool imaginary = false;
    if (red.size() <= 1) {
        imaginary = true;  // p = t^k, nilpotent spectrum {0}
    } else if (even_ok) {
        std::vector<Rat> rc((red.size() + 1) / 2);
        for (size_t i = 0; i < red.size(); i += 2) rc[i / 2] = red[i];
        Poly r(rc);
        Poly rsq = squarefree_part(r);
        int total = count_real_roots(rsq);
        int nonpos = count_real_roots(rsq, std::nullopt, Rat(0));
        imaginary = (total == rsq.degree()) && (nonpos == total);
    }

    SpectrumCertificate cert;
    cert.exact = true;
    if (imaginary) {
        cert.type = SpectrumType::IMAGINARY;
        cert.detail = "all eigenvalues purely imaginary (Sturm certificate)";
        return cert;
    }
    Poly ps = squarefree_part(p);
    if (count_real_roots(ps) == ps.degree()) {
        cert.type = SpectrumType::REAL;
        cert.detail = "all eigenvalues real (Sturm certificate)";
    } else {
        cert.type = SpectrumType::MIXED;
        cert.detail = "eigenvalues off both axes";
    }
    return cert;
}

// --- root space decomposition ----------------------------------------------

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simultaneous rational eigenspace decomposition of ad(a) acting on g.
// Requires every ad(basis vector of a) to be diagonalizable over Q; otherwise
// throws DecompositionError naming the offending element.
inline RootSpaceDecomposition root_space_decomposition(const MatrixLieAlgebra& g,
                                                       const Subspace& a) {
    // invariant subspaces as coordinate row-spans; refine one Cartan
    // generator at a time
    struct Piece {
        QMat rows;       // basis of the subspace (rows, coordinates in g)
        QVec values;     // eigenvalues of the generators processed so far
    };
    std::vector<Piece> pieces{{g.full_space().coords(), {}}};
    for (int gi = 0; gi < a.dim(); ++gi) {
        QMat ad_a = g.ad(a.coord_basis_vector(gi));
        std::vector<Piece> next;
        for (auto& piece : pieces) {
            int m = piece.rows.rows();
            // restriction of ad_a to the span: solve row_i * ad^T = sum c_ij row_j
            QMat images(m, g.dim());
            for (int i = 0; i < m; ++i) {
                QVec v = piece.rows.row(i);
                QVec img(size_t(g.dim()), Rat(0));
                for (int r = 0; r < g.dim(); ++r)
                    for (int c2 = 0; c2 < g.dim(); ++c2) img[size_t(r)] += ad_a(r, c2) * v[size_t(c2)];
                images.set_row(i, img);
            }
            QMat basis_t = piece.rows.transpose();
            QMat restriction(m, m);
            for (int i = 0; i < m; ++i) {
                auto c = solve(basis_t, images.row(i));
                if (!c) throw DecompositionError("ad does not preserve an eigenspace chain");
                for (int j = 0; j < m; ++j) restriction(j, i) = (*c)[size_t(j)];
            }
            // restriction acts on coefficient vectors; find rational eigenvalues
            Poly cp = Poly(char_poly(restriction));
            std::vector<Rat> eigs = rational_roots(cp);
            int total = 0;
            for (const Rat& lam : eigs) {
                QMat shifted = restriction;
                for (int i = 0; i < m; ++i) shifted(i, i) -= lam;
                QMat ker = kernel_basis(shifted);
                if (ker.rows() == 0) continue;
                Piece np;
                np.values = piece.values;
                np.values.push_back(lam);
                std::vector<QVec> rows;
                for (int i = 0; i < ker.rows(); ++i) {
                    QVec v(size_t(g.dim()), Rat(0));
                    for (int j = 0; j < m; ++j)
                        for (int c2 = 0; c2 < g.dim(); ++c2)
                            v[size_t(c2)] += ker(i, j) * piece.rows(j, c2);
                    rows.push_back(std::move(v));
                }
                np.rows = Subspace::from_coords(stack_rows(rows, g.dim())).coords();
                total += np.rows.rows();
                next.push_back(std::move(np));
            }
            if (total != m)
                throw DecompositionError(
                    "ad of Cartan generator " + std::to_string(gi) +
                    " is not diagonalizable over Q (non-split or non-semisimple input)");
        }
        pieces = std::move(next);
    }
    RootSpaceDecomposition out;
    out.cartan = a;
    for (auto& piece : pieces) {
        RootFunctional f{piece.values};
        Subspace s = Subspace::from_coords(piece.rows);
        if (f.is_zero())
            out.zero_space = out.zero_space.dim() == 0 ? s : sum(out.zero_space, s);
        else
            out.root_spaces[f] = s;
    }
    return out;
}

// --- classical families ------------------------------------------------------

namespace families {

inline QMat unit(int n, int i, int j) {
    QMat m(n, n);
    m(i, j) = 1;
    return m;
}

// sl(n, R): elementary off-diagonal + diagonal differences.
inline MatrixLieAlgebra sl(int n) {
    std::vector<QMat> basis;
    for (int i = 0; i < n - 1; ++i) {
        QMat d(n, n);
        d(i, i) = 1;
        d(i + 1, i + 1) = -1;
        basis.push_back(d);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) basis.push_back(unit(n, i, j));
    return MatrixLieAlgebra::create(n, std::move(basis));
}

inline MatrixLieAlgebra gl(int n) {
    std::vector<QMat> basis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) basis.push_back(unit(n, i, j));
    // trace form of gl(n) is nondegenerate
    return MatrixLieAlgebra::create(n, std::move(basis));
}

// so(p, q): X^T J + J X = 0 with J = diag(1_p, -1_q).
inline MatrixLieAlgebra so(int p, int q) {
    int n = p + q;
    std::vector<QMat> basis;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            QMat m(n, n);
            Rat ji = Rat((i < p) ? 1 : -1), jj = Rat((j < p) ? 1 : -1);
            // antisymmetric within blocks, symmetric across
            m(i, j) = 1;
            m(j, i) = -ji * jj;
            basis.push_back(m);
        }
    return MatrixLieAlgebra::create(n, std::move(basis));
}

// sp(2n, R): X^T J + J X = 0 with J = [[0, I], [-I, 0]].
inline MatrixLieAlgebra sp(int two_n) {
    if (two_n % 2) throw std::invalid_argument("sp needs even size");
    int n = two_n / 2;
    std::vector<QMat> basis;
    // X = [[A, B],[C, -A^T]] with B, C symmetric
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QMat m(two_n, two_n);
            m(i, j) = 1;
            m(n + j, n + i) = -1;
            basis.push_back(m);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            QMat b(two_n, two_n);
            b(i, n + j) = 1;
            b(j, n + i) = 1;
            basis.push_back(b);
            QMat c(two_n, two_n);
            c(n + i, j) = 1;
            c(n + j, i) = 1;
            basis.push_back(c);
        }
    return MatrixLieAlgebra::create(two_n, std::move(basis));
}

// Direct sum embedded block-diagonally.
inline MatrixLieAlgebra direct_sum(const MatrixLieAlgebra& a, const MatrixLieAlgebra& b) {
    int n = a.ambient_size() + b.ambient_size();
    std::vector<QMat> basis;
    for (const QMat& m : a.basis()) {
        QMat e(n, n);
        for (int i = 0; i < a.ambient_size(); ++i)
            for (int j = 0; j < a.ambient_size(); ++j) e(i, j) = m(i, j);
        basis.push_back(e);
    }
    for (const QMat& m : b.basis()) {
        QMat e(n, n);
        for (int i = 0; i < b.ambient_size(); ++i)
            for (int j = 0; j < b.ambient_size(); ++j)
                e(a.ambient_size() + i, a.ambient_size() + j) = m(i, j);
        basis.push_back(e);
    }
    return MatrixLieAlgebra::create(n, std::move(basis));
}

}  // namespace families

}  // namespace sphz
