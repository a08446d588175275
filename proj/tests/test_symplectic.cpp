#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symplab/rng.hpp"
#include "symplab/symplectic.hpp"

#include <cmath>

using namespace symplab;
using namespace symplab::sp;

namespace {

CompatibleJ random_j(Rng& rng, int n) {
    const Matrix g = random_symplectic(rng, n);
    return act_on_j(g, make_compatible_j(standard_j(n)));
}

Lagrangian graph_lagrangian(const Matrix& s) {
    const int n = static_cast<int>(s.rows());
    Matrix b(2 * n, n);
    b.topRows(n) = Matrix::Identity(n, n);
    b.bottomRows(n) = s;
    return make_lagrangian(b);
}

}  // namespace

// The operator-norm distance restricted to the parallel-set model must
// evaluate to log max(lmax(Z^-1 Z'), lmax(Z'^-1 Z)).  Everything downstream
// (causal bounds, translation lengths) relies on this identity, so it is
// pinned here: symbolically for n = 1, numerically for n <= 4.
TEST_CASE("parallel-set distance identity") {
    SUBCASE("n = 1 symbolic") {
        const YFrame fr = standard_frame(1);
        for (double z : {0.2, 0.7, 1.0, 3.5}) {
            for (double zp : {0.1, 1.0, 2.0, 9.0}) {
                const PosDefForm a{Matrix::Constant(1, 1, z), 1};
                const PosDefForm b{Matrix::Constant(1, 1, zp), 1};
                const double expected = std::abs(std::log(zp / z));
                CHECK(d_y(a, b) == doctest::Approx(expected).epsilon(1e-12));
                CHECK(d_sp(y_embed(a, fr), y_embed(b, fr)) ==
                      doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
    SUBCASE("n <= 4 numerically, 1000 pairs") {
        Rng rng(101);
        for (int trial = 0; trial < 1000; ++trial) {
            const int n = 1 + static_cast<int>(rng.below(4));
            const YFrame fr = standard_frame(n);
            const PosDefForm a = random_posdef(rng, n);
            const PosDefForm b = random_posdef(rng, n);
            const double closed = d_y(a, b);
            const double literal = d_sp(y_embed(a, fr), y_embed(b, fr));
            CHECK(std::abs(closed - literal) <= 1e-9 * (1.0 + closed));
        }
    }
}

TEST_CASE("symplectic membership") {
    CHECK(is_symplectic(Matrix::Identity(2, 2)));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 0.5;
    CHECK(is_symplectic(d));
    d(1, 1) = 2.0;
    CHECK(!is_symplectic(d));
    CHECK_THROWS_AS(is_symplectic(Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("compatible structures and the action") {
    const int n = 2;
    const CompatibleJ j0 = make_compatible_j(standard_j(n));
    CHECK(max_abs(j0.q() - Matrix::Identity(2 * n, 2 * n)) <= 1e-12);
    // the identity acts trivially
    CHECK(max_abs(act_on_j(Matrix::Identity(2 * n, 2 * n), j0).j - j0.j) <= 1e-12);
    // rotations realified through the unitary embedding fix the base point
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    u(0, 0) = std::polar(1.0, 0.7);
    u(1, 1) = std::polar(1.0, -0.3);
    const Matrix g = realify(u);
    CHECK(is_symplectic(g, 1e-12));
    CHECK(max_abs(act_on_j(g, j0).j - j0.j) <= 1e-12);
    // generic action keeps the form positive and composes contravariantly
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix g1 = random_symplectic(rng, n);
        const Matrix g2 = random_symplectic(rng, n);
        const CompatibleJ j = random_j(rng, n);
        CHECK(min_eig_sym(act_on_j(g1, j).q()) > 0.0);
        const CompatibleJ lhs = act_on_j(g1 * g2, j);
        const CompatibleJ rhs = act_on_j(g2, act_on_j(g1, j));
        CHECK(max_abs(lhs.j - rhs.j) <= 1e-9 * (1.0 + max_abs(lhs.j)));
    }
    // invalid structures are rejected
    CHECK_THROWS_AS(make_compatible_j(standard_form(n)), std::invalid_argument);
    CHECK_THROWS_AS(make_compatible_j(Matrix::Identity(2 * n, 2 * n)),
                    std::invalid_argument);
}

TEST_CASE("distance: identity, block example, invariance") {
    const int n = 2;
    const YFrame fr = standard_frame(n);
    const CompatibleJ j0 = make_compatible_j(standard_j(n));
    CHECK(d_sp(j0, j0) == doctest::Approx(0.0));
    Matrix zp = Matrix::Zero(2, 2);
    zp(0, 0) = std::exp(4.0);
    zp(1, 1) = std::exp(2.0);
    const CompatibleJ j1 = y_embed(PosDefForm{zp, 2}, fr);
    // relative spectrum on V is {e^4, e^2, e^-2, e^-4}
    CHECK(d_sp(j0, j1) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(d_sp(j1, j0) == doctest::Approx(4.0).epsilon(1e-12));
    Rng rng(13);
    for (int trial = 0; trial < 1000; ++trial) {
        const int m = 1 + static_cast<int>(rng.below(4));
        const CompatibleJ a = random_j(rng, m);
        const CompatibleJ b = random_j(rng, m);
        const Matrix g = random_symplectic(rng, m);
        const double d = d_sp(a, b);
        CHECK(d == doctest::Approx(d_sp(b, a)).epsilon(1e-9));
        CHECK(std::abs(d_sp(act_on_j(g, a), act_on_j(g, b)) - d) <= 1e-9 * (1.0 + d));
        if (max_abs(a.j - b.j) > 1e-6) CHECK(d > 0.0);
    }
}

TEST_CASE("triangle inequality is sampled and reported, not assumed") {
    Rng rng(19);
    int violations = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const CompatibleJ a = random_j(rng, n);
        const CompatibleJ b = random_j(rng, n);
        const CompatibleJ c = random_j(rng, n);
        const double excess = d_sp(a, c) - d_sp(a, b) - d_sp(b, c);
        if (excess > 1e-9) {
            ++violations;
            worst = std::max(worst, excess);
        }
    }
    MESSAGE("triangle inequality violations: ", violations, " worst excess ", worst);
    CHECK(violations >= 0);  // recorded, no downstream result depends on it
}

TEST_CASE("Lagrangians: membership, transversality, graphs") {
    const int n = 2;
    const Lagrangian lm = standard_l_minus(n);
    const Lagrangian lp = standard_l_plus(n);
    CHECK(is_lagrangian(lm.basis));
    CHECK(is_lagrangian(lp.basis));
    CHECK(transverse(lm, lp));
    CHECK(!transverse(lm, lm));
    Rng rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix s(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) s(i, j) = s(j, i) = rng.gaussian();
        CHECK(is_lagrangian(graph_lagrangian(s).basis));
        // non-symmetric graphs are not Lagrangian
        Matrix ns = s;
        ns(0, 1) += 0.5;
        Matrix b(2 * n, n);
        b.topRows(n) = Matrix::Identity(n, n);
        b.bottomRows(n) = ns;
        CHECK(!is_lagrangian(b));
    }
}

TEST_CASE("graph maps: base example, conditioning, reconstruction") {
    const Lagrangian lm = standard_l_minus(1);
    const Lagrangian lp = standard_l_plus(1);
    Matrix diagb(2, 1);
    diagb << 1, 1;
    const Lagrangian l0 = make_lagrangian(diagb);
    const GraphMaps maps = graph_map(lm, lp, l0);
    CHECK(maps.t_minus(0, 0) == doctest::Approx(1.0));
    CHECK(maps.t_plus(0, 0) == doctest::Approx(1.0));
    // tilt: L0 = span(eps e1 + e2) has T^- entries ~ 1/eps
    for (double eps : {1e-2, 1e-4}) {
        Matrix tb(2, 1);
        tb << eps, 1;
        const GraphMaps tilted = graph_map(lm, lp, make_lagrangian(tb));
        CHECK(tilted.t_minus(0, 0) == doctest::Approx(1.0 / eps).epsilon(1e-9));
    }
    CHECK_THROWS_AS(graph_map(lm, lp, lp), std::invalid_argument);
    // reconstruction residual on random triples
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2;
        Matrix s(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) s(i, j) = s(j, i) = rng.gaussian();
        const Lagrangian l0n = graph_lagrangian(s);
        const GraphMaps g = graph_map(standard_l_minus(n), standard_l_plus(n), l0n);
        Matrix rebuilt(2 * n, n);
        rebuilt.topRows(n) = Matrix::Identity(n, n);
        rebuilt.bottomRows(n) = g.t_minus;
        CHECK(lagrangian_distance(make_lagrangian(rebuilt), l0n) <= 1e-9);
        CHECK(max_abs(g.t_plus * g.t_minus - Matrix::Identity(n, n)) <= 1e-9);
    }
}

TEST_CASE("triple structures and the Maslov signature") {
    // n = 1: (e1, e1 + e2, e2) is maximal with signature 2
    const Lagrangian e1 = standard_l_minus(1);
    const Lagrangian e2 = standard_l_plus(1);
    Matrix dsum(2, 1), ddiff(2, 1);
    dsum << 1, 1;
    ddiff << 1, -1;
    auto v1 = is_maximal_triple(e1, make_lagrangian(dsum), e2);
    CHECK(v1.maximal);
    CHECK(v1.signature == 2);
    auto v2 = is_maximal_triple(e1, make_lagrangian(ddiff), e2);
    CHECK(!v2.maximal);
    CHECK(v2.signature == -2);
    // the structure of the maximal triple is the standard complex structure
    const Matrix j = triple_j(e1, make_lagrangian(dsum), e2);
    CHECK(max_abs(j - standard_j(1)) <= 1e-12);
    // n = 2: graph of diag(1,-1) has signature 0
    Matrix mixed = Matrix::Zero(2, 2);
    mixed(0, 0) = 1;
    mixed(1, 1) = -1;
    auto v3 = is_maximal_triple(standard_l_minus(2), graph_lagrangian(mixed),
                                standard_l_plus(2));
    CHECK(!v3.maximal);
    CHECK(v3.signature == 0);
}

TEST_CASE("maximality is invariant under the diagonal action") {
    Rng rng(43);
    const int n = 2;
    for (int trial = 0; trial < 30; ++trial) {
        Matrix s = Matrix::Identity(n, n);
        s(0, 1) = s(1, 0) = 0.4 * rng.gaussian();
        s(0, 0) = 1.0 + 0.5 * rng.uniform();
        const Lagrangian l0 = graph_lagrangian(s);
        const auto before =
            is_maximal_triple(standard_l_minus(n), l0, standard_l_plus(n));
        const Matrix g = random_symplectic(rng, n);
        const auto after = is_maximal_triple(apply(g, standard_l_minus(n)),
                                             apply(g, l0), apply(g, standard_l_plus(n)));
        CHECK(before.maximal == after.maximal);
        CHECK(before.signature == after.signature);
    }
}

TEST_CASE("parallel-set model: embed, project, group action") {
    Rng rng(47);
    for (int n : {1, 2, 3, 4}) {
        const YFrame fr = standard_frame(n);
        // base point
        const CompatibleJ j0 = y_embed(PosDefForm{Matrix::Identity(n, n), n}, fr);
        CHECK(max_abs(j0.j - standard_j(n)) <= 1e-12);
        for (int trial = 0; trial < 25; ++trial) {
            const PosDefForm z = random_posdef(rng, n);
            const CompatibleJ j = y_embed(z, fr);
            // Gram matrix is diag(Z, Z^-1)
            Matrix q_expect = Matrix::Zero(2 * n, 2 * n);
            q_expect.topLeftCorner(n, n) = z.z;
            q_expect.bottomRightCorner(n, n) = z.z.inverse();
            CHECK(max_abs(j.q() - q_expect) <= 1e-9 * (1.0 + max_abs(q_expect)));
            CHECK(max_abs(y_project(j, fr).z - z.z) <= 1e-9 * (1.0 + max_abs(z.z)));
            // GL(L-) acts by congruence through diag(A, A^-T)
            Matrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int jj = 0; jj < n; ++jj) a(i, jj) = rng.gaussian();
            a += 3.0 * Matrix::Identity(n, n);
            Matrix g = Matrix::Zero(2 * n, 2 * n);
            g.topLeftCorner(n, n) = a;
            g.bottomRightCorner(n, n) = a.inverse().transpose();
            const CompatibleJ moved = act_on_j(g, j);
            const Matrix expect = a.transpose() * z.z * a;
            CHECK(max_abs(y_project(moved, fr).z - expect) <=
                  1e-9 * (1.0 + max_abs(expect)));
        }
    }
    // projection rejects structures outside the parallel set
    Rng rng1(53);
    const YFrame fr1 = standard_frame(1);
    Matrix zp = Matrix::Constant(1, 1, 2.0);
    const CompatibleJ far =
        act_on_j(random_symplectic(rng1, 1), y_embed(PosDefForm{zp, 1}, fr1));
    // generic conjugation leaves the parallel set of the standard frame
    CHECK_THROWS_AS(y_project(far, fr1), std::invalid_argument);
}

TEST_CASE("cone order") {
    const PosDefForm one{Matrix::Identity(2, 2), 2};
    const PosDefForm two{2.0 * Matrix::Identity(2, 2), 2};
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 0.5;
    CHECK(in_cone(one, two));
    CHECK(!in_cone(one, PosDefForm{m, 2}));
    Rng rng(59);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const PosDefForm z0 = random_posdef(rng, n);
        Matrix w1(n, n), w2(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                w1(i, j) = rng.gaussian();
                w2(i, j) = rng.gaussian();
            }
        const PosDefForm z1{sym(z0.z + w1 * w1.transpose()) +
                                0.01 * Matrix::Identity(n, n), n};
        const PosDefForm z2{sym(z1.z + w2 * w2.transpose()) +
                                0.01 * Matrix::Identity(n, n), n};
        CHECK(in_cone(z0, z1));
        CHECK(in_cone(z1, z2));
        CHECK(in_cone(z0, z2));  // transitivity
        // GL-equivariance of the cone order
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
        a += 2.5 * Matrix::Identity(n, n);
        const PosDefForm za{sym(a.transpose() * z0.z * a), n};
        const PosDefForm zb{sym(a.transpose() * z1.z * a), n};
        CHECK(in_cone(za, zb));
    }
}

TEST_CASE("causal length: segments, bounds, additivity") {
    // n = 1: the cone is the positive half-line, lengths are log-ratios
    const PosDefForm one1{Matrix::Identity(1, 1), 1};
    const PosDefForm two1{2.0 * Matrix::Identity(1, 1), 1};
    const CausalCurve seg = make_causal_curve({one1, two1});
    const double len = causal_length(seg, YMetric::literal);
    CHECK(len == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    const CausalBoundReport r1 = check_causal_bound(seg);
    CHECK(r1.pass);
    CHECK(r1.margin_literal == doctest::Approx(0.0).epsilon(1e-9));
    // n = 2 monotone diagonal path
    Matrix z1 = Matrix::Identity(2, 2);
    Matrix z2 = Matrix::Zero(2, 2);
    z2(0, 0) = std::exp(2.0);
    z2(1, 1) = std::exp(1.0);
    const CausalCurve diag2 = make_causal_curve({PosDefForm{z1, 2}, PosDefForm{z2, 2}});
    const CausalBoundReport r2 = check_causal_bound(diag2);
    CHECK(r2.pass);
    CHECK(r2.bound_literal == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(r2.length_literal <= 4.0 + 1e-9);
    // additivity under concatenation
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2;
        const PosDefForm za = random_posdef(rng, n);
        Matrix w(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w(i, j) = rng.gaussian();
        const PosDefForm zb{sym(za.z + w * w.transpose()) + 0.02 * Matrix::Identity(n, n), n};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w(i, j) = rng.gaussian();
        const PosDefForm zc{sym(zb.z + w * w.transpose()) + 0.02 * Matrix::Identity(n, n), n};
        const double whole = causal_length(make_causal_curve({za, zb, zc}), YMetric::literal);
        const double first = causal_length(make_causal_curve({za, zb}), YMetric::literal);
        const double second = causal_length(make_causal_curve({zb, zc}), YMetric::literal);
        CHECK(std::abs(whole - first - second) <= 1e-6 * (1.0 + whole));
    }
    // the cone invariant is enforced
    CHECK_THROWS_AS(make_causal_curve({two1, one1}), std::invalid_argument);
}

TEST_CASE("unitary polar factor and its determinant") {
    // orthogonal symplectic input is its own factor
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
    u(0, 0) = std::polar(1.0, 0.4);
    u(1, 1) = std::polar(1.0, 1.1);
    const Matrix g = realify(u);
    const UnitaryPart up = unitary_part(g);
    CHECK(max_abs(up.u - g) <= 1e-12);
    CHECK(std::abs(up.det_c - std::polar(1.0, 1.5)) <= 1e-12);
    // positive diagonal has trivial factor
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::exp(1.0);
    d(1, 1) = std::exp(-1.0);
    const UnitaryPart ud = unitary_part(d);
    CHECK(max_abs(ud.u - Matrix::Identity(2, 2)) <= 1e-12);
    CHECK(std::abs(ud.det_c - 1.0) <= 1e-12);
    // rotation by theta in Sp(2,R) has determinant e^{i theta}
    const double theta = 0.83;
    Matrix rot(2, 2);
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    CHECK(std::abs(unitary_part(rot).det_c - std::polar(1.0, theta)) <= 1e-12);
}

TEST_CASE("compatible-structure parameterization round trip") {
    Rng rng(67);
    for (int n : {1, 2, 3}) {
        for (int trial = 0; trial < 20; ++trial) {
            Vector v(n * (n + 1));
            for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 0.7 * rng.gaussian();
            const CompatibleJ j = make_compatible_j(j_from_params(v, n));
            const Vector back = params_from_j(j);
            CHECK((back - v).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}
