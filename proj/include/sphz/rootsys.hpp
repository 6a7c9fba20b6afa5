#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphz/lattice.hpp"
#include "sphz/linfeas.hpp"
#include "sphz/matrix.hpp"

namespace sphz {

// Subsets of the simple roots are index sets into `simple`.
using RootSubset = std::vector<int>;  // sorted

struct WeylElement {
    QMat matrix;            // action on root coordinates (simple-root basis)
    std::vector<int> word;  // reduced expression in simple reflections

    int length() const { return int(word.size()); }
    bool operator==(const WeylElement& o) const { return matrix == o.matrix; }
};

// Root system presented by a Cartan matrix; roots live in Q^rank with
// coordinates over the simple roots. Handles the non-reduced BC family by
// seeding the doubled short simple root.
class RootSystem {
public:
    static RootSystem from_cartan(const QMat& cartan, std::vector<int> doubled = {},
                                  int weyl_bound = 50000) {
        RootSystem rs;
        rs.rank_ = cartan.rows();
        rs.cartan_ = cartan;
        rs.pairing_ = symmetrize(cartan);
        rs.generate_roots(doubled);
        rs.enumerate_weyl_group(weyl_bound);
        return rs;
    }

    // named: A, B, C, D, BC with rank n
    static RootSystem named(const std::string& type, int n) {
        if (n < 1) throw std::invalid_argument("rank must be positive");
        auto a2 = [&](auto fill) {
            QMat c(n, n);
            for (int i = 0; i < n; ++i) c(i, i) = 2;
            fill(c);
            return c;
        };
        auto chain = [&](QMat& c) {
            for (int i = 0; i + 1 < n; ++i) {
                c(i, i + 1) = -1;
                c(i + 1, i) = -1;
            }
        };
        if (type == "A") return from_cartan(a2(chain));
        if (type == "B" || type == "BC") {
            QMat c = a2(chain);
            if (n >= 2) {
                c(n - 2, n - 1) = -1;
                c(n - 1, n - 2) = -2;
            }
            if (type == "B" && n == 1) return named("A", 1);
            std::vector<int> doubled;
            if (type == "BC") doubled.push_back(n - 1);  // the short simple root
            return from_cartan(c, doubled);
        }
        if (type == "C") {
            if (n == 1) return named("A", 1);
            QMat c = a2(chain);
            c(n - 2, n - 1) = -2;
            c(n - 1, n - 2) = -1;
            return from_cartan(c);
        }
        if (type == "D") {
            if (n < 3) throw std::invalid_argument("D needs rank >= 3");
            QMat c(n, n);
            for (int i = 0; i < n; ++i) c(i, i) = 2;
            for (int i = 0; i + 1 < n - 1; ++i) {
                c(i, i + 1) = -1;
                c(i + 1, i) = -1;
            }
            c(n - 3, n - 1) = -1;
            c(n - 1, n - 3) = -1;
            return from_cartan(c);
        }
        throw std::invalid_argument("unknown root system type " + type);
    }

    int rank() const { return rank_; }
    const QMat& cartan() const { return cartan_; }
    const QMat& pairing() const { return pairing_; }
    const std::vector<QVec>& roots() const { return roots_; }
    const std::vector<QVec>& positive_roots() const { return positive_; }
    const std::vector<WeylElement>& weyl() const { return weyl_; }

    QVec simple_root(int i) const {
        QVec v(size_t(rank_), Rat(0));
        v[size_t(i)] = 1;
        return v;
    }

    Rat inner(const QVec& a, const QVec& b) const {
        Rat s(0);
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) s += a[size_t(i)] * pairing_(i, j) * b[size_t(j)];
        return s;
    }

    QVec apply(const WeylElement& w, const QVec& v) const {
        QVec r(size_t(rank_), Rat(0));
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) r[size_t(i)] += w.matrix(i, j) * v[size_t(j)];
        return r;
    }

    bool is_positive(const QVec& v) const {
        for (const Rat& x : v)
            if (sign(x) < 0) return false;
        return true;
    }

    const WeylElement& identity() const { return weyl_[0]; }

    WeylElement compose(const WeylElement& a, const WeylElement& b) const {
        QMat m = a.matrix * b.matrix;
        auto it = index_.find(key_of(m));
        if (it == index_.end()) throw std::logic_error("composition left the enumerated group");
        return weyl_[size_t(it->second)];
    }

    WeylElement inverse_of(const WeylElement& a) const {
        auto inv = inverse(a.matrix);
        auto it = index_.find(key_of(*inv));
        if (it == index_.end()) throw std::logic_error("inverse left the enumerated group");
        return weyl_[size_t(it->second)];
    }

    // W'(I) = <s_a : a in I>
    std::vector<WeylElement> parabolic_subgroup(const RootSubset& i_set) const {
        check_subset(i_set);
        std::vector<WeylElement> group{identity()};
        std::set<std::string> seen{key_of(identity().matrix)};
        std::vector<WeylElement> frontier = group;
        while (!frontier.empty()) {
            std::vector<WeylElement> next;
            for (const auto& w : frontier)
                for (int i : i_set) {
                    WeylElement e = compose(simple_reflection(i), w);
                    if (seen.insert(key_of(e.matrix)).second) {
                        group.push_back(e);
                        next.push_back(e);
                    }
                }
            frontier = std::move(next);
        }
        sort_elements(group);
        return group;
    }

    // D'_I = {w : w(I) subset positive roots}; minimal-length coset reps for
    // W / W'(I).
    std::vector<WeylElement> distinguished_reps(const RootSubset& i_set) const {
        check_subset(i_set);
        std::vector<WeylElement> out;
        for (const auto& w : weyl_) {
            bool ok = true;
            for (int i : i_set)
                if (!is_positive(apply(w, simple_root(i)))) { ok = false; break; }
            if (ok) out.push_back(w);
        }
        sort_elements(out);
        return out;
    }

    // W'(I, J) = {w : w(J) = I as sets of simple roots}
    std::vector<WeylElement> cross_set(const RootSubset& i_set, const RootSubset& j_set) const {
        check_subset(i_set);
        check_subset(j_set);
        std::vector<WeylElement> out;
        if (i_set.size() != j_set.size()) return out;
        std::set<QVec> target;
        for (int i : i_set) target.insert(simple_root(i));
        for (const auto& w : weyl_) {
            std::set<QVec> image;
            for (int j : j_set) image.insert(apply(w, simple_root(j)));
            if (image == target) out.push_back(w);
        }
        sort_elements(out);
        return out;
    }

    // a_I = {v : (v, alpha_i) = 0 for i in I}, as rows of a basis.
    QMat aI_basis(const RootSubset& i_set) const {
        QMat rows(int(i_set.size()), rank_);
        for (size_t r = 0; r < i_set.size(); ++r)
            for (int j = 0; j < rank_; ++j) rows(int(r), j) = pairing_(i_set[r], j);
        return kernel_basis(rows);
    }

    struct Subquotient {
        std::vector<WeylElement> cross;   // W'(I, I)
        std::vector<QMat> restricted;     // matrices on a_I, basis = aI_basis
        QMat basis;                       // rows span a_I
        bool restriction_injective = true;
        bool generated_by_reflections = true;
    };

    // W'_I as the restriction of W'(I,I) to a_I; verifies injectivity.
    Subquotient subquotient_WI(const RootSubset& i_set) const {
        Subquotient sq;
        sq.basis = aI_basis(i_set);
        sq.cross = cross_set(i_set, i_set);
        std::set<std::string> seen;
        for (const auto& w : sq.cross) {
            QMat r = restrict_to(w, sq.basis);
            if (!seen.insert(key_of(r)).second) sq.restriction_injective = false;
            sq.restricted.push_back(r);
        }
        sq.generated_by_reflections = reflections_generate(sq);
        return sq;
    }

    // Equivalence classes of subsets of S under association.
    std::vector<std::vector<RootSubset>> association_classes() const {
        std::vector<RootSubset> all = all_subsets();
        std::vector<std::vector<RootSubset>> classes;
        std::vector<bool> used(all.size(), false);
        for (size_t i = 0; i < all.size(); ++i) {
            if (used[i]) continue;
            std::vector<RootSubset> cls{all[i]};
            used[i] = true;
            for (size_t j = i + 1; j < all.size(); ++j) {
                if (used[j]) continue;
                if (!cross_set(all[i], all[j]).empty()) {
                    cls.push_back(all[j]);
                    used[j] = true;
                }
            }
            classes.push_back(std::move(cls));
        }
        return classes;
    }

    struct TilePiece {
        RootSubset j_set;
        WeylElement w;
        // cone w((a_J)^-) inside a_I: x (coords in aI basis) satisfies
        // ineqs * x <= 0 componentwise
        QMat ineqs;
    };

    // The cones w(a_J^-), J ~ I, w in W'(I,J), tiling a_I.
    std::vector<TilePiece> tiling(const RootSubset& i_set) const {
        QMat basis = aI_basis(i_set);
        std::vector<TilePiece> tiles;
        for (const RootSubset& j_set : associated_subsets(i_set)) {
            for (const auto& w : cross_set(i_set, j_set)) {
                TilePiece t;
                t.j_set = j_set;
                t.w = w;
                t.ineqs = piece_inequalities(j_set, w, basis);
                tiles.push_back(std::move(t));
            }
        }
        return tiles;
    }

    // Fundamental domain C_I: one minimal-length representative per
    // W_I-orbit (tie broken by lexicographic word order).
    std::vector<TilePiece> fundamental_domain(const RootSubset& i_set) const {
        QMat basis = aI_basis(i_set);
        std::vector<WeylElement> wii = cross_set(i_set, i_set);
        std::vector<TilePiece> pieces;
        for (const RootSubset& j_set : associated_subsets(i_set)) {
            std::vector<WeylElement> cross = cross_set(i_set, j_set);
            std::vector<bool> used(cross.size(), false);
            for (size_t a = 0; a < cross.size(); ++a) {
                if (used[a]) continue;
                // orbit of W'(I,I) acting by left multiplication
                std::vector<size_t> orbit;
                for (size_t b = 0; b < cross.size(); ++b) {
                    if (used[b] && b != a) continue;
                    for (const auto& u : wii)
                        if (compose(u, cross[a]).matrix == cross[b].matrix) {
                            orbit.push_back(b);
                            break;
                        }
                }
                size_t best = orbit.front();
                for (size_t b : orbit) {
                    if (cross[b].length() < cross[best].length() ||
                        (cross[b].length() == cross[best].length() &&
                         cross[b].word < cross[best].word))
                        best = b;
                    used[b] = true;
                }
                TilePiece t;
                t.j_set = j_set;
                t.w = cross[best];
                t.ineqs = piece_inequalities(j_set, cross[best], basis);
                pieces.push_back(std::move(t));
            }
        }
        return pieces;
    }

    struct ParsevalRow {
        RootSubset i_set;
        long class_size;
        long wi_order;
        Rat coefficient;
    };

    std::vector<ParsevalRow> parseval_coefficients() const {
        auto classes = association_classes();
        std::vector<ParsevalRow> rows;
        for (const RootSubset& i_set : all_subsets()) {
            long cls = 0;
            for (auto& c : classes)
                if (std::find(c.begin(), c.end(), i_set) != c.end()) cls = long(c.size());
            long wi = long(subquotient_WI(i_set).cross.size());
            rows.push_back({i_set, cls, wi, Rat(1) / Rat(cls * wi)});
        }
        return rows;
    }

    // Strict interior system of a tile piece, for disjointness certificates.
    std::vector<LinCon> interior_system(const TilePiece& t) const {
        std::vector<LinCon> sys;
        for (int r = 0; r < t.ineqs.rows(); ++r) sys.push_back(con_lt(t.ineqs.row(r), Rat(0)));
        return sys;
    }

    bool interiors_disjoint(const TilePiece& a, const TilePiece& b, int dim) const {
        std::vector<LinCon> sys = interior_system(a);
        for (auto& c : interior_system(b)) sys.push_back(c);
        return !feasible(std::move(sys), dim);
    }

    WeylElement simple_reflection(int i) const { return weyl_[size_t(gen_index_[size_t(i)])]; }

    std::vector<RootSubset> all_subsets() const {
        std::vector<RootSubset> out;
        for (int mask = 0; mask < (1 << rank_); ++mask) {
            RootSubset s;
            for (int i = 0; i < rank_; ++i)
                if (mask & (1 << i)) s.push_back(i);
            out.push_back(std::move(s));
        }
        return out;
    }

    std::vector<RootSubset> associated_subsets(const RootSubset& i_set) const {
        std::vector<RootSubset> out;
        for (const RootSubset& j : all_subsets())
            if (j.size() == i_set.size() && !cross_set(i_set, j).empty()) out.push_back(j);
        return out;
    }

    QMat restrict_to(const WeylElement& w, const QMat& basis) const {
        // basis rows span an invariant subspace; w(basis_i) = sum c_ij basis_j
        int k = basis.rows();
        QMat r(k, k);
        QMat bt = basis.transpose();
        for (int i = 0; i < k; ++i) {
            QVec img = apply(w, basis.row(i));
            auto c = solve(bt, img);
            if (!c) throw std::logic_error("subspace not invariant under restriction");
            for (int j = 0; j < k; ++j) r(j, i) = (*c)[size_t(j)];
        }
        return r;
    }

private:
    static QMat symmetrize(const QMat& cartan) {
        int n = cartan.rows();
        // find d_i > 0 with d_i a_ij = d_j a_ji
        QVec d(size_t(n), Rat(0));
        d[0] = 1;
        for (bool progress = true; progress;) {
            progress = false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j || is_zero(cartan(i, j))) continue;
                    if (!is_zero(d[size_t(i)]) && is_zero(d[size_t(j)])) {
                        d[size_t(j)] = d[size_t(i)] * cartan(i, j) / cartan(j, i);
                        progress = true;
                    }
                }
        }
        for (auto& x : d)
            if (is_zero(x)) x = 1;  // disconnected components scale independently
        QMat b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = d[size_t(i)] * cartan(i, j);
        return b;
    }

    void generate_roots(const std::vector<int>& doubled) {
        std::set<QVec> known;
        for (int i = 0; i < rank_; ++i) known.insert(simple_root(i));
        for (int i : doubled) known.insert(rat(2) * simple_root(i));
        for (bool progress = true; progress;) {
            progress = false;
            std::vector<QVec> snapshot(known.begin(), known.end());
            for (const QVec& beta : snapshot)
                for (int i = 0; i < rank_; ++i) {
                    QVec img = reflect_simple(i, beta);
                    if (known.insert(img).second) progress = true;
                }
        }
        // and negatives
        std::vector<QVec> all(known.begin(), known.end());
        for (const QVec& v : all) {
            QVec neg(static_cast<size_t>(rank_));
            for (int i = 0; i < rank_; ++i) neg[size_t(i)] = -v[size_t(i)];
            known.insert(neg);
        }
        roots_.assign(known.begin(), known.end());
        for (const QVec& v : roots_)
            if (is_positive(v)) positive_.push_back(v);
    }

    QVec reflect_simple(int i, const QVec& v) const {
        // s_i(v) = v - <v, alpha_i^vee> alpha_i
        Rat coef = Rat(2) * inner_simple(v, i) / pairing_(i, i);
        QVec r = v;
        r[size_t(i)] -= coef;
        return r;
    }
    Rat inner_simple(const QVec& v, int i) const {
        Rat s(0);
        for (int j = 0; j < rank_; ++j) s += pairing_(i, j) * v[size_t(j)];
        return s;
    }

    void enumerate_weyl_group(int bound) {
        std::vector<QMat> gens;
        for (int i = 0; i < rank_; ++i) {
            QMat m = QMat::identity(rank_);
            for (int j = 0; j < rank_; ++j) m(i, j) -= cartan_(i, j);
            gens.push_back(m);
        }
        weyl_.clear();
        index_.clear();
        WeylElement id{QMat::identity(rank_), {}};
        weyl_.push_back(id);
        index_[key_of(id.matrix)] = 0;
        std::vector<int> frontier{0};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int wi : frontier)
                for (int i = 0; i < rank_; ++i) {
                    QMat m = gens[size_t(i)] * weyl_[size_t(wi)].matrix;
                    std::string k = key_of(m);
                    if (index_.count(k)) continue;
                    if (int(weyl_.size()) >= bound)
                        throw std::runtime_error("Weyl group enumeration exceeded the rank bound");
                    WeylElement e;
                    e.matrix = std::move(m);
                    e.word = weyl_[size_t(wi)].word;
                    e.word.insert(e.word.begin(), i);
                    index_[key_of(e.matrix)] = int(weyl_.size());
                    next.push_back(int(weyl_.size()));
                    weyl_.push_back(std::move(e));
                }
            frontier = std::move(next);
        }
        gen_index_.resize(size_t(rank_));
        for (int i = 0; i < rank_; ++i) gen_index_[size_t(i)] = index_.at(key_of(gens[size_t(i)]));
        sort_elements(weyl_);
        index_.clear();
        for (size_t k = 0; k < weyl_.size(); ++k) index_[key_of(weyl_[k].matrix)] = int(k);
        for (int i = 0; i < rank_; ++i) gen_index_[size_t(i)] = index_.at(key_of(gens[size_t(i)]));
    }

    static std::string key_of(const QMat& m) {
        std::string s;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                s += m(i, j).get_str();
                s += ',';
            }
        return s;
    }

    static void sort_elements(std::vector<WeylElement>& v) {
        std::sort(v.begin(), v.end(), [](const WeylElement& a, const WeylElement& b) {
            if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
            return a.word < b.word;
        });
    }

    // inequalities (rows) r with r . x <= 0 describing w(a_J^-) in the given
    // aI coordinate basis
    QMat piece_inequalities(const RootSubset& j_set, const WeylElement& w, const QMat& basis) const {
        auto winv = inverse_of(w);
        std::vector<QVec> rows;
        for (int s = 0; s < rank_; ++s) {
            if (std::find(j_set.begin(), j_set.end(), s) != j_set.end()) continue;
            // (alpha_s, w^-1 v) <= 0 for v = x^T basis
            QVec row(size_t(basis.rows()), Rat(0));
            for (int b = 0; b < basis.rows(); ++b) {
                QVec pre = apply(winv, basis.row(b));
                row[size_t(b)] = inner_simple(pre, s);
            }
            rows.push_back(std::move(row));
        }
        return stack_rows(rows, basis.rows());
    }

    void check_subset(const RootSubset& s) const {
        for (size_t k = 0; k < s.size(); ++k) {
            if (s[k] < 0 || s[k] >= rank_) throw std::invalid_argument("subset index out of range");
            if (k > 0 && s[k] <= s[k - 1]) throw std::invalid_argument("subset must be sorted");
        }
    }

    bool reflections_generate(const Subquotient& sq) const {
        int k = sq.basis.rows();
        if (k == 0 || sq.restricted.empty()) return true;
        // reflections: det = -1 and fixed space of codim 1
        std::vector<QMat> refl;
        for (const QMat& m : sq.restricted) {
            QMat shifted = m - QMat::identity(k);
            if (det(m) == rat(-1) && sphz::rank(shifted) == 1) refl.push_back(m);
        }
        std::set<std::string> group{key_of(QMat::identity(k))};
        std::vector<QMat> frontier{QMat::identity(k)};
        while (!frontier.empty()) {
            std::vector<QMat> next;
            for (const QMat& g : frontier)
                for (const QMat& r : refl) {
                    QMat m = r * g;
                    if (group.insert(key_of(m)).second) next.push_back(m);
                }
            frontier = std::move(next);
        }
        std::set<std::string> target;
        for (const QMat& m : sq.restricted) target.insert(key_of(m));
        return group == target;
    }

    int rank_ = 0;
    QMat cartan_, pairing_;
    std::vector<QVec> roots_, positive_;
    std::vector<WeylElement> weyl_;
    std::map<std::string, int> index_;
    std::vector<int> gen_index_;
};

}  // namespace sphz
