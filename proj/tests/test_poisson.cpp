#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srt/poisson.hpp"

#include <random>

using namespace srt;

namespace {

GaussRat gi() { return GaussRat::i(); }

std::mt19937 rng(20240817);

Complex rc() {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return {d(rng), d(rng)};
}

Spinor rspinor() { return {rc(), rc()}; }

// unbound pair with <tau|tau> rescaled to be real positive
SpinorPair rpair() {
    SpinorPair p{rspinor(), rspinor()};
    Complex e = pair_norm(p);
    p.tt.minus *= std::abs(e) / e;
    p.tt.plus *= std::abs(e) / e;
    return p;
}

EdgeSpinors redge() {
    SpinorPair t = rpair();
    return {t, matched(t, rpair())};
}

}  // namespace

TEST_CASE("fluxes close the algebra and spinors transform covariantly") {
    for (int leg : {0, 3}) {
        // {x0, x_pm} = -+ i x_pm: the sign follows from the tensor law below
        // with mu = pm 1 and is fixed by the x0 in the flux display
        PoissonPoly x0 = flux_x0(leg), xp = flux_xplus(leg), xm = flux_xminus(leg);
        CHECK((bracket(x0, xp) + gi() * xp).is_zero());
        CHECK((bracket(x0, xm) - gi() * xm).is_zero());
        CHECK((bracket(xp, xm) - GaussRat{Rational(2)} * (gi() * x0)).is_zero());

        // tau is a spin-1/2 tensor: {x0, tau_pm} = -+ i/2 tau_pm,
        // {x_pm, tau_mp} = tau_pm (Gamma_pm(1/2, -+1/2) = i), {x_pm, tau_pm} = 0
        GaussRat ih{Rational(0), Rational(1, 2)};
        CHECK((bracket(x0, tau(leg, +1)) + ih * tau(leg, +1)).is_zero());
        CHECK((bracket(x0, tau(leg, -1)) - ih * tau(leg, -1)).is_zero());
        CHECK((bracket(xp, tau(leg, -1)) - tau(leg, +1)).is_zero());
        CHECK((bracket(xm, tau(leg, +1)) - tau(leg, -1)).is_zero());
        CHECK(bracket(xp, tau(leg, +1)).is_zero());
        CHECK(bracket(xm, tau(leg, -1)).is_zero());

        // the contravariant spinor (tau*_mu = (-1)^(1/2-mu) tau_-mu)
        // transforms with the opposite weight sign
        PoissonPoly dual_p = tau(leg, -1);           // tau*_+ = tau_-
        PoissonPoly dual_m = -GaussRat{Rational(1)} * tau(leg, +1);
        CHECK((bracket(x0, dual_p) - ih * dual_p).is_zero());
        CHECK((bracket(x0, dual_m) + ih * dual_m).is_zero());
    }
}

TEST_CASE("vertex observables close the displayed Poisson algebra") {
    GaussRat i = gi();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    auto delta = [](int x, int y) {
                        return GaussRat{Rational(x == y ? 1 : 0)};
                    };
                    PoissonPoly r1 =
                        bracket(obs_e(a, b), obs_e(c, d)) +
                        i * (delta(c, b) * obs_e(a, d) - delta(a, d) * obs_e(c, b));
                    PoissonPoly r2 =
                        bracket(obs_e(a, b), obs_f(c, d)) +
                        i * (delta(a, d) * obs_f(b, c) - delta(a, c) * obs_f(b, d));
                    PoissonPoly r3 = bracket(obs_e(a, b), obs_ftilde(c, d)) +
                                     i * (delta(b, c) * obs_ftilde(a, d) -
                                          delta(b, d) * obs_ftilde(a, c));
                    PoissonPoly r4 =
                        bracket(obs_f(a, b), obs_ftilde(c, d)) +
                        i * (delta(d, b) * obs_e(c, a) + delta(c, a) * obs_e(d, b) -
                             delta(c, b) * obs_e(d, a) - delta(d, a) * obs_e(c, b));
                    CHECK(r1.is_zero());
                    CHECK(r2.is_zero());
                    CHECK(r3.is_zero());
                    CHECK(r4.is_zero());
                    CHECK(bracket(obs_f(a, b), obs_f(c, d)).is_zero());
                    CHECK(bracket(obs_ftilde(a, b), obs_ftilde(c, d)).is_zero());
                }
}

TEST_CASE("bracket satisfies the Jacobi identity on random cubics") {
    std::uniform_int_distribution<int> var(0, 7);   // two legs
    std::uniform_int_distribution<std::int64_t> num(-3, 3);
    auto rand_poly = [&] {
        PoissonPoly p;
        for (int t = 0; t < 4; ++t) {
            Monomial m = {var(rng), var(rng), var(rng)};
            p.add_term(m, GaussRat{Rational(num(rng)), Rational(num(rng))});
        }
        return p;
    };
    for (int trial = 0; trial < 20; ++trial) {
        PoissonPoly p = rand_poly(), q = rand_poly(), r = rand_poly();
        PoissonPoly jac = bracket(p, bracket(q, r)) + bracket(q, bracket(r, p)) +
                          bracket(r, bracket(p, q));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("f f~ - e e~ factorises into the leg norms") {
    for (auto [c, a] : {std::pair{0, 1}, {2, 0}}) {
        PoissonPoly lhs = obs_f(c, a) * obs_ftilde(c, a) -
                          obs_e(c, a) * obs_etilde(c, a);
        PoissonPoly rhs = obs_e(a, a) * obs_e(c, c);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("symbolic observables agree with numeric spinor evaluation") {
    std::vector<SpinorPair> legs = {rpair(), rpair()};
    auto val = [&](int v) -> Complex {
        const SpinorPair& p = legs[static_cast<std::size_t>(v / 4)];
        switch (static_cast<SpinorComp>(v % 4)) {
            case SpinorComp::TauMinus: return p.t.minus;
            case SpinorComp::TauPlus: return p.t.plus;
            case SpinorComp::TtMinus: return p.tt.minus;
            case SpinorComp::TtPlus: return p.tt.plus;
        }
        return 0.0;
    };
    CHECK(std::abs(obs_e(0, 1).eval(val) - spinor_bilinear(legs[0].tt, legs[1].t)) < 1e-15);
    CHECK(std::abs(obs_e(0, 0).eval(val) - pair_norm(legs[0])) < 1e-15);
    CHECK(std::abs(obs_f(0, 1).eval(val) - spinor_bilinear(legs[0].t, legs[1].t)) < 1e-15);
}

TEST_CASE("holonomy has unit determinant and transports the spinors") {
    for (int trial = 0; trial < 20; ++trial) {
        SpinorPair t = rpair();
        SpinorPair w = matched(t, rpair());
        Eigen::Matrix2cd g = holonomy(t, w);
        CHECK(std::abs(g.determinant() - 1.0) < 1e-14);

        // g|tau> = |w>, g|tau] = |w], <w|g = <tau|, [w|g = [tau|
        Eigen::Vector2cd kt{t.t.minus, t.t.plus}, kw{w.t.minus, w.t.plus};
        Eigen::Vector2cd bt{t.tt.minus, t.tt.plus}, bw{w.tt.minus, w.tt.plus};
        CHECK((g * kt - kw).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((g * bt - bw).cwiseAbs().maxCoeff() < 1e-13);
        Eigen::RowVector2cd brw{-w.tt.plus, w.tt.minus}, brt{-t.tt.plus, t.tt.minus};
        CHECK((brw * g - brt).cwiseAbs().maxCoeff() < 1e-13);
        // and the inverse transports back
        CHECK((g.inverse() * kw - kt).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(holonomy(SpinorPair{}, rpair()), std::domain_error);
}

TEST_CASE("reality bindings select the compact and non-compact real forms") {
    // uniform binding, positive norms on both ends: SU(1,1) shape
    for (int sign : {-1, +1}) {
        // positive norms required: e = -sign (|tau_+|^2 - |tau_-|^2)
        auto timelike = [&] {
            for (;;) {
                SpinorPair p = bind_lorentzian(rspinor(), sign);
                if (pair_norm(p).real() > 0.2) return p;
            }
        };
        SpinorPair t = timelike();
        SpinorPair w = matched(t, timelike());
        Eigen::Matrix2cd g = holonomy(t, w);
        CHECK(std::abs(g(0, 0) - std::conj(g(1, 1))) < 1e-13);
        CHECK(std::abs(g(0, 1) - std::conj(g(1, 0))) < 1e-13);
    }

    // mixed-component binding: SU(2) shape, no norm-sign caveat
    SpinorPair t = bind_euclidean(rspinor());
    SpinorPair w = matched(t, bind_euclidean(rspinor()));
    Eigen::Matrix2cd g = holonomy(t, w);
    CHECK(std::abs(g(1, 1) - std::conj(g(0, 0))) < 1e-13);
    CHECK(std::abs(g(1, 0) + std::conj(g(0, 1))) < 1e-13);

    // uniform bindings pair f with -conj(f~); mixed bindings flip the sign
    SpinorPair pa = bind_lorentzian(rspinor(), -1);
    SpinorPair pb = bind_lorentzian(rspinor(), -1);
    SpinorPair pc = bind_lorentzian(rspinor(), +1);
    Complex f = spinor_bilinear(pa.t, pb.t), ft = spinor_bilinear(pa.tt, pb.tt);
    CHECK(std::abs(ft + std::conj(f)) < 1e-15);
    f = spinor_bilinear(pa.t, pc.t);
    ft = spinor_bilinear(pa.tt, pc.tt);
    CHECK(std::abs(ft - std::conj(f)) < 1e-15);
}

TEST_CASE("constraint trace identity holds at random valuations") {
    for (int trial = 0; trial < 100; ++trial) {
        TriangleEdges face{redge(), redge(), redge()};
        for (std::array<int, 3> abc :
             {std::array<int, 3>{3, 4, 2}, {4, 2, 3}, {2, 3, 4}})
            CHECK(trace_identity_residual(face, abc) < 1e-12);
    }
}

TEST_CASE("constraints reduce to the vertex observables") {
    // the worked expansion of H<]_342 in terms of e, f, f~ between the
    // vertex spinors, with the middle edge entering through its norm
    TriangleEdges face{redge(), redge(), redge()};
    auto h = face_hamiltonians(face, {3, 4, 2});
    const SpinorPair &w2 = face.e2.dst, &t3 = face.e3.src, &t2 = face.e2.src,
                     &t4 = face.e4.src, &w4 = face.e4.dst, &w3 = face.e3.dst;
    Complex f23 = spinor_bilinear(w2.t, t3.t);
    Complex ft23 = spinor_bilinear(w2.tt, t3.tt);
    Complex e24 = spinor_bilinear(t2.tt, t4.t);
    Complex ft24 = spinor_bilinear(t2.tt, t4.tt);
    Complex ftw43 = spinor_bilinear(w4.tt, w3.tt);
    Complex etw43 = spinor_bilinear(w4.t, w3.tt);
    Complex e4 = pair_norm(t4);
    Complex expanded = ft23 * f23 - (e24 * ftw43 - ft24 * etw43) / e4 * f23;
    CHECK(std::abs(h[2] - expanded) < 1e-12);
}

TEST_CASE("reversed cycles give the paired constraints") {
    /* In the vertex-observable form, H_abc = lead - par * e_b^-1 * trail;
     * reversing the cycle exchanges <> with [[]] and fixes <] and [>.
     * Checked with the denominator cleared, as exact polynomial identities. */
    struct Parts {
        PoissonPoly lead, par, trail;
    };
    auto angle = [](int a, int b, int c) {   // <>
        return Parts{obs_e(c, a) * obs_etilde(c, a),
                     obs_e(c, b) * obs_e(b, a) - obs_ftilde(c, b) * obs_f(b, a),
                     obs_etilde(c, a)};
    };
    auto dbl = [](int a, int b, int c) {     // [[]]
        return Parts{obs_etilde(c, a) * obs_e(c, a),
                     obs_f(c, b) * obs_ftilde(b, a) -
                         obs_etilde(c, b) * obs_etilde(b, a),
                     obs_e(c, a)};
    };
    auto ab = [](int a, int b, int c) {      // <]
        return Parts{obs_ftilde(c, a) * obs_f(c, a),
                     obs_e(c, b) * obs_ftilde(b, a) -
                         obs_ftilde(c, b) * obs_etilde(b, a),
                     obs_f(c, a)};
    };
    auto ba = [](int a, int b, int c) {      // [>
        return Parts{obs_f(c, a) * obs_ftilde(c, a),
                     obs_f(c, b) * obs_e(b, a) - obs_etilde(c, b) * obs_f(b, a),
                     obs_ftilde(c, a)};
    };
    auto same = [](const Parts& x, const Parts& y) {
        return (x.lead - y.lead).is_zero() &&
               (x.par * x.trail - y.par * y.trail).is_zero();
    };
    int a = 0, b = 1, c = 2;
    CHECK(same(angle(c, b, a), dbl(a, b, c)));
    CHECK(same(dbl(c, b, a), angle(a, b, c)));
    CHECK(same(ab(c, b, a), ab(a, b, c)));
    CHECK(same(ba(c, b, a), ba(a, b, c)));
}

TEST_CASE("flat configurations are annihilated") {
    // realize g4 = g3 g2 through spinors: transport tau_4 by the product
    EdgeSpinors e2 = redge(), e3 = redge();
    Eigen::Matrix2cd p = holonomy(e3.src, e3.dst) * holonomy(e2.src, e2.dst);
    SpinorPair t4 = rpair();
    Eigen::Vector2cd kw = p * Eigen::Vector2cd{t4.t.minus, t4.t.plus};
    Eigen::Vector2cd bw = p * Eigen::Vector2cd{t4.tt.minus, t4.tt.plus};
    SpinorPair w4{{kw(0), kw(1)}, {bw(0), bw(1)}};
    TriangleEdges face{e2, e3, {t4, w4}};
    auto h = face_hamiltonians(face, {3, 4, 2});
    for (const Complex& v : h) CHECK(std::abs(v) < 1e-12);
}
