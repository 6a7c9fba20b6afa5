#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sphz/rootsys.hpp"

using namespace sphz;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// classical order formulas, the oracle for the enumeration
long weyl_order(const std::string& type, int n) {
    if (type == "A") return factorial(n + 1);
    if (type == "B" || type == "C" || type == "BC") return (1L << n) * factorial(n);
    if (type == "D") return (1L << (n - 1)) * factorial(n);
    throw std::logic_error("unknown type");
}

// integer box sample points of the subspace spanned by basis rows
std::vector<QVec> subspace_grid(const QMat& basis, long radius) {
    std::vector<QVec> pts;
    int k = basis.rows();
    if (k == 0) return pts;
    std::vector<long> c(size_t(k), -radius);
    while (true) {
        QVec v(size_t(basis.cols()), Rat(0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < basis.cols(); ++j) v[size_t(j)] += rat(c[size_t(i)]) * basis(i, j);
        pts.push_back(std::move(v));
        int p = 0;
        while (p < k && ++c[size_t(p)] > radius) c[size_t(p++)] = -radius;
        if (p == k) break;
    }
    return pts;
}

bool piece_contains(const RootSystem::TilePiece& t, const QMat& basis, const QVec& point) {
    // point = x^T basis; solve for x then test the inequalities
    auto x = solve(basis.transpose(), point);
    REQUIRE(x.has_value());
    for (int r = 0; r < t.ineqs.rows(); ++r) {
        Rat s(0);
        for (int j = 0; j < t.ineqs.cols(); ++j) s += t.ineqs(r, j) * (*x)[size_t(j)];
        if (sign(s) > 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("Weyl group orders match the classical formulas") {
    CHECK(RootSystem::named("A", 1).weyl().size() == 2);
    CHECK(RootSystem::named("A", 2).weyl().size() == 6);
    CHECK(RootSystem::named("B", 2).weyl().size() == 8);
    CHECK(RootSystem::named("A", 3).weyl().size() == 24);
    CHECK(RootSystem::named("C", 3).weyl().size() == size_t(weyl_order("C", 3)));
    CHECK(RootSystem::named("D", 4).weyl().size() == size_t(weyl_order("D", 4)));
    CHECK(RootSystem::named("BC", 2).weyl().size() == 8);
}

TEST_CASE("root sets are closed and come in opposite pairs") {
    for (auto& [type, n, count] :
         std::vector<std::tuple<std::string, int, size_t>>{
             {"A", 2, 6}, {"B", 2, 8}, {"BC", 2, 12}, {"A", 3, 12}, {"D", 4, 24}}) {
        auto rs = RootSystem::named(type, n);
        CAPTURE(type, n);
        CHECK(rs.roots().size() == count);
        CHECK(rs.positive_roots().size() * 2 == count);
        std::set<QVec> all(rs.roots().begin(), rs.roots().end());
        for (const QVec& a : rs.roots()) {
            QVec neg(a.size());
            for (size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
            CHECK(all.count(neg) == 1);
            // closure under the reflection in every other root
            for (const QVec& b : rs.roots()) {
                Rat coef = rat(2) * rs.inner(a, b) / rs.inner(b, b);
                QVec img = a - coef * b;
                CHECK(all.count(img) == 1);
            }
        }
    }
}

TEST_CASE("Weyl elements permute the roots and words evaluate correctly") {
    auto rs = RootSystem::named("B", 2);
    std::set<QVec> all(rs.roots().begin(), rs.roots().end());
    for (const auto& w : rs.weyl()) {
        for (const QVec& a : rs.roots()) CHECK(all.count(rs.apply(w, a)) == 1);
        QMat m = QMat::identity(rs.rank());
        for (int i : w.word) m = m * rs.simple_reflection(i).matrix;
        CHECK(m == w.matrix);
    }
}

TEST_CASE("parabolic subgroups") {
    auto a2 = RootSystem::named("A", 2);
    CHECK(a2.parabolic_subgroup({0}).size() == 2);
    CHECK(a2.parabolic_subgroup({}).size() == 1);
    CHECK(a2.parabolic_subgroup({0, 1}).size() == 6);
    // fixes a_I pointwise
    auto sub = a2.parabolic_subgroup({0});
    QMat aI = a2.aI_basis({0});
    for (const auto& w : sub)
        for (int r = 0; r < aI.rows(); ++r) CHECK(a2.apply(w, aI.row(r)) == aI.row(r));
}

TEST_CASE("distinguished representatives biject with cosets") {
    for (auto& [type, n] : std::vector<std::pair<std::string, int>>{{"A", 2}, {"B", 2}, {"A", 3}}) {
        auto rs = RootSystem::named(type, n);
        for (const RootSubset& i_set : rs.all_subsets()) {
            auto reps = rs.distinguished_reps(i_set);
            auto par = rs.parabolic_subgroup(i_set);
            CAPTURE(type, n, i_set);
            CHECK(reps.size() * par.size() == rs.weyl().size());
            // each rep is minimal length in its coset
            for (const auto& d : reps)
                for (const auto& u : par) CHECK(d.length() <= rs.compose(d, u).length());
        }
    }
    auto a2 = RootSystem::named("A", 2);
    CHECK(a2.distinguished_reps({0}).size() == 3);
    CHECK(a2.distinguished_reps({}).size() == 6);
    CHECK(a2.distinguished_reps({0, 1}).size() == 1);
}

TEST_CASE("cross sets and association") {
    auto a2 = RootSystem::named("A", 2);
    CHECK_FALSE(a2.cross_set({0}, {1}).empty());  // a rotation sends alpha2 to alpha1
    CHECK(a2.cross_set({}, {}).size() == 6);
    auto b2 = RootSystem::named("B", 2);
    // alpha0 long, alpha1 short: never associated
    CHECK(b2.cross_set({0}, {1}).empty());
    CHECK(b2.cross_set({1}, {0}).empty());

    auto classes = a2.association_classes();
    CHECK(classes.size() == 3);  // {}, {{0},{1}}, {S}
    for (auto& cls : classes) {
        if (cls[0].empty()) CHECK(cls.size() == 1);
        if (cls[0].size() == 1) CHECK(cls.size() == 2);
        if (cls[0].size() == 2) CHECK(cls.size() == 1);
    }
    auto b2classes = b2.association_classes();
    CHECK(b2classes.size() == 4);  // all singletons

    // brute-force oracle: I assoc J iff some w maps J onto I
    for (const RootSubset& i_set : a2.all_subsets())
        for (const RootSubset& j_set : a2.all_subsets()) {
            bool assoc = false;
            for (const auto& w : a2.weyl()) {
                std::set<QVec> img, tgt;
                for (int j : j_set) img.insert(a2.apply(w, a2.simple_root(j)));
                for (int i : i_set) tgt.insert(a2.simple_root(i));
                if (img == tgt) assoc = true;
            }
            CHECK(assoc == !a2.cross_set(i_set, j_set).empty());
        }
}

TEST_CASE("subquotient W_I and the restriction map") {
    auto a2 = RootSystem::named("A", 2);

    // I = {}: W_I is W itself on the full space
    auto w_empty = a2.subquotient_WI({});
    CHECK(w_empty.cross.size() == 6);
    CHECK(w_empty.restriction_injective);

    // I = S: trivial
    auto w_full = a2.subquotient_WI({0, 1});
    CHECK(w_full.cross.size() == 1);

    // I = {alpha2}: brute-force oracle over all 6 elements shows only the
    // identity maps the set {alpha2} to itself, so W_I is trivial here.
    int fixers = 0;
    for (const auto& w : a2.weyl())
        if (a2.apply(w, a2.simple_root(1)) == a2.simple_root(1)) ++fixers;
    CHECK(fixers == 1);
    auto w_i = a2.subquotient_WI({1});
    CHECK(w_i.cross.size() == size_t(fixers));
    CHECK(w_i.restriction_injective);

    // B2, I = {short}: oracle count of fixers of alpha1
    auto b2 = RootSystem::named("B", 2);
    int b2fix = 0;
    for (const auto& w : b2.weyl())
        if (b2.apply(w, b2.simple_root(1)) == b2.simple_root(1)) ++b2fix;
    auto b2sq = b2.subquotient_WI({1});
    CHECK(b2sq.cross.size() == size_t(b2fix));
    CHECK(b2sq.restriction_injective);
}

TEST_CASE("restriction map bijects onto the subspace stabilizer restrictions") {
    for (auto& [type, n] : std::vector<std::pair<std::string, int>>{{"A", 2}, {"B", 2}, {"A", 3}}) {
        auto rs = RootSystem::named(type, n);
        for (const RootSubset& i_set : rs.all_subsets()) {
            auto sq = rs.subquotient_WI(i_set);
            CAPTURE(type, n, i_set);
            CHECK(sq.restriction_injective);
            if (sq.basis.rows() == 0) continue;
            // oracle: restrictions of all elements preserving a_I
            std::set<std::string> stab_restrictions;
            for (const auto& w : rs.weyl()) {
                bool preserves = true;
                for (int r = 0; r < sq.basis.rows(); ++r) {
                    QVec img = rs.apply(w, sq.basis.row(r));
                    if (!solve(sq.basis.transpose(), img)) { preserves = false; break; }
                }
                if (!preserves) continue;
                QMat m = rs.restrict_to(w, sq.basis);
                std::string key;
                for (int i = 0; i < m.rows(); ++i)
                    for (int j = 0; j < m.cols(); ++j) key += to_string(m(i, j)) + ",";
                stab_restrictions.insert(key);
            }
            std::set<std::string> computed;
            for (const QMat& m : sq.restricted) {
                std::string key;
                for (int i = 0; i < m.rows(); ++i)
                    for (int j = 0; j < m.cols(); ++j) key += to_string(m(i, j)) + ",";
                computed.insert(key);
            }
            CHECK(computed == stab_restrictions);
        }
    }
}

TEST_CASE("pointwise fixers of a_I lie in W(I)") {
    for (auto& [type, n] : std::vector<std::pair<std::string, int>>{{"A", 2}, {"B", 2}, {"A", 3}}) {
        auto rs = RootSystem::named(type, n);
        for (const RootSubset& i_set : rs.all_subsets()) {
            QMat aI = rs.aI_basis(i_set);
            auto par = rs.parabolic_subgroup(i_set);
            for (const auto& w : rs.weyl()) {
                bool fixes = true;
                for (int r = 0; r < aI.rows() && fixes; ++r)
                    if (rs.apply(w, aI.row(r)) != aI.row(r)) fixes = false;
                if (!fixes) continue;
                bool in_par =
                    std::any_of(par.begin(), par.end(),
                                [&](const WeylElement& u) { return u.matrix == w.matrix; });
                CAPTURE(type, n, i_set, w.word);
                CHECK(in_par);
            }
        }
    }
}

TEST_CASE("tiling of a_I: disjoint interiors and lattice coverage") {
    for (auto& [type, n] : std::vector<std::pair<std::string, int>>{{"A", 1}, {"A", 2}, {"B", 2}}) {
        auto rs = RootSystem::named(type, n);
        for (const RootSubset& i_set : rs.all_subsets()) {
            QMat basis = rs.aI_basis(i_set);
            auto tiles = rs.tiling(i_set);
            CAPTURE(type, n, i_set, tiles.size());
            for (size_t a = 0; a < tiles.size(); ++a)
                for (size_t b = a + 1; b < tiles.size(); ++b)
                    CHECK(rs.interiors_disjoint(tiles[a], tiles[b], basis.rows()));
            for (const QVec& p : subspace_grid(basis, 3)) {
                bool covered = false;
                for (const auto& t : tiles)
                    if (piece_contains(t, basis, p)) { covered = true; break; }
                CHECK(covered);
            }
        }
    }
    // A2, I = {alpha2}: the line a_I is covered by two half-lines
    auto a2 = RootSystem::named("A", 2);
    CHECK(a2.tiling({1}).size() == 2);
    // A1, I = {}: two rays
    CHECK(RootSystem::named("A", 1).tiling({}).size() == 2);
    // I = S: single unconstrained piece
    CHECK(a2.tiling({0, 1}).size() == 1);
}

TEST_CASE("fundamental domain: translates cover and orbit reps are unique") {
    for (auto& [type, n] : std::vector<std::pair<std::string, int>>{{"A", 2}, {"B", 2}}) {
        auto rs = RootSystem::named(type, n);
        for (const RootSubset& i_set : rs.all_subsets()) {
            QMat basis = rs.aI_basis(i_set);
            auto sq = rs.subquotient_WI(i_set);
            auto dom = rs.fundamental_domain(i_set);
            CAPTURE(type, n, i_set);

            // exactly one piece per W_I-orbit on each W(I,J)
            size_t orbit_total = 0;
            for (const RootSubset& j_set : rs.associated_subsets(i_set)) {
                size_t cs = rs.cross_set(i_set, j_set).size();
                REQUIRE(cs % sq.cross.size() == 0);
                orbit_total += cs / sq.cross.size();
            }
            CHECK(dom.size() == orbit_total);

            // W_I translates of the domain cover the grid of a_I
            for (const QVec& p : subspace_grid(basis, 2)) {
                bool covered = false;
                for (const auto& u : sq.cross) {
                    QVec moved = rs.apply(rs.inverse_of(u), p);
                    for (const auto& t : dom)
                        if (piece_contains(t, basis, moved)) { covered = true; break; }
                    if (covered) break;
                }
                CHECK(covered);
            }
        }
    }
    // A2, I = {alpha2}: W_I is trivial, so the domain is the whole tiling
    auto a2 = RootSystem::named("A", 2);
    CHECK(a2.fundamental_domain({1}).size() == 2);
    // A1, I = {}: W_I = W of order 2, domain is one ray
    CHECK(RootSystem::named("A", 1).fundamental_domain({}).size() == 1);
}

TEST_CASE("Parseval coefficient table") {
    auto a1 = RootSystem::named("A", 1);
    auto rows1 = a1.parseval_coefficients();
    REQUIRE(rows1.size() == 2);
    CHECK(rows1[0].class_size == 1);
    CHECK(rows1[0].wi_order == 2);
    CHECK(rows1[0].coefficient == rat(1, 2));
    CHECK(rows1[1].coefficient == rat(1));

    auto a2 = RootSystem::named("A", 2);
    for (const auto& row : a2.parseval_coefficients()) {
        // brute-force oracle for the class size and the subquotient order
        long cls = 0;
        for (const RootSubset& j : a2.all_subsets())
            if (j.size() == row.i_set.size() && !a2.cross_set(row.i_set, j).empty()) ++cls;
        long wi = 0;
        for (const auto& w : a2.weyl()) {
            std::set<QVec> img, tgt;
            for (int i : row.i_set) {
                img.insert(a2.apply(w, a2.simple_root(i)));
                tgt.insert(a2.simple_root(i));
            }
            if (img == tgt) ++wi;
        }
        if (row.i_set.empty()) wi = long(a2.weyl().size());
        CAPTURE(row.i_set);
        CHECK(row.class_size == cls);
        CHECK(row.wi_order == wi);
        CHECK(row.coefficient == Rat(1) / Rat(cls * wi));
    }
}

TEST_CASE("rank bound is enforced") {
    CHECK_THROWS_AS(RootSystem::from_cartan(RootSystem::named("A", 3).cartan(), {}, 10),
                    std::runtime_error);
}
