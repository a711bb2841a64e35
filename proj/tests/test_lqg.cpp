#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srt/lqg.hpp"

#include <cmath>
#include <map>
#include <tuple>

using namespace srt;

namespace {

Module F(int twice) { return Module::finite(HalfInt::from_twice(twice)); }
Module Dp(int twice) { return Module::dpos(HalfInt::from_twice(twice)); }

/* A left-right trivalent node as a dualised state: both incoming legs become
 * bras, the outgoing leg stays a ket, and the amplitudes are the coupling
 * coefficients B(j3,m3|j1,m1;j2,m2).  When a base node is supplied the term
 * keys record drifts against the base labels, so that the expansion of a
 * shifted node lives on the same legs as apply_scalar's output. */
MultiLegState expand_lr(const Module& j1, const Module& j2, const Module& j3,
                        const TriNode* base = nullptr) {
    CGTable tab = cg_table(j1, j2);
    std::array<Module, 3> js = {j1, j2, j3};
    std::array<HalfInt, 3> dj{};
    std::vector<LegSpec> legs;
    for (int i = 0; i < 3; ++i) {
        const Module& b = base ? base->j[i] : js[i];
        dj[i] = HalfInt::from_twice(
            std::llround(2.0 * (js[i].jval().real() - b.jval().real())));
        legs.push_back({b, i == 2});
    }
    MultiLegState psi(legs);
    for (HalfInt m1 = *j1.lowest(); m1 <= *j1.highest(); m1 += HalfInt::half()) {
        if (!j1.in_support(m1)) continue;
        for (HalfInt m2 = *j2.lowest(); m2 <= *j2.highest(); m2 += HalfInt::half()) {
            if (!j2.in_support(m2)) continue;
            HalfInt m3 = m1 + m2;
            if (!j3.in_support(m3)) continue;
            Complex b = tab.coeff(j3, m3, m1);
            if (b == 0.0) continue;
            psi.add({{dj[0], HalfInt(0), m1},
                     {dj[1], HalfInt(0), m2},
                     {dj[2], HalfInt(0), m3}},
                    b);
        }
    }
    return psi;
}

// collect a Hamiltonian action as shift -> summed coefficient
std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Complex> as_map(
    const std::vector<TetTerm>& terms) {
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Complex> m;
    for (const auto& t : terms)
        if (t.coeff != 0.0)
            m[{t.dj2.twice(), t.dj3.twice(), t.dj4.twice()}] += t.coeff;
    return m;
}

}  // namespace

TEST_CASE("node actions match the operators applied to the expanded node") {
    RacahEngine eng;
    // F_1/2 x F_1/2 -> F_1 in the left-right orientation
    TriNode node{NodeKind::LeftRight, {F(1), F(1), F(2)}};
    MultiLegState psi = expand_lr(F(1), F(1), F(2));

    struct Case {
        ScalarOpKind op;
        int a, b;          // node slots (1-based)
        std::size_t la, lb;  // state legs (0-based)
    };
    for (const Case& cs : {Case{ScalarOpKind::E, 1, 2, 0, 1},
                           Case{ScalarOpKind::E, 2, 1, 1, 0},
                           Case{ScalarOpKind::F, 1, 2, 0, 1},
                           Case{ScalarOpKind::F, 2, 1, 1, 0},
                           Case{ScalarOpKind::Ftilde, 1, 2, 0, 1},
                           Case{ScalarOpKind::E, 2, 3, 1, 2},
                           Case{ScalarOpKind::E, 3, 2, 2, 1},
                           Case{ScalarOpKind::F, 2, 3, 1, 2},
                           Case{ScalarOpKind::Ftilde, 2, 3, 1, 2}}) {
        NodeAction act = node_action(eng, cs.op, cs.a, cs.b, node);
        MultiLegState lhs = apply_scalar(cs.op, cs.la, cs.lb, psi);
        MultiLegState rhs(lhs.legs());
        if (act.coeff != 0.0) {
            rhs = act.coeff *
                  expand_lr(act.node.j[0], act.node.j[1], act.node.j[2], &node);
        }
        INFO("op ", static_cast<int>(cs.op), " slots ", cs.a, cs.b);
        CHECK(sup_distance(lhs, rhs) < 1e-12);
    }

    // inadmissible shift: F~_12 wants (0,0) -> 1, which does not couple
    NodeAction dead = node_action(eng, ScalarOpKind::Ftilde, 1, 2, node);
    CHECK(dead.coeff == 0.0);
}

TEST_CASE("node actions on a larger finite node, including signs") {
    RacahEngine eng;
    TriNode node{NodeKind::LeftRight, {F(2), F(3), F(3)}};
    MultiLegState psi = expand_lr(F(2), F(3), F(3));
    for (ScalarOpKind op :
         {ScalarOpKind::E, ScalarOpKind::F, ScalarOpKind::Ftilde}) {
        for (auto [a, b, la, lb] : {std::tuple{1, 2, 0, 1}, {2, 1, 1, 0},
                                    {2, 3, 1, 2}, {3, 2, 2, 1}}) {
            if (op == ScalarOpKind::Ftilde && a > b) continue;  // antisymmetric
            NodeAction act = node_action(eng, op, a, b, node);
            MultiLegState lhs = apply_scalar(
                op, static_cast<std::size_t>(la), static_cast<std::size_t>(lb), psi);
            MultiLegState rhs(lhs.legs());
            if (act.coeff != 0.0)
                rhs = act.coeff *
                      expand_lr(act.node.j[0], act.node.j[1], act.node.j[2], &node);
            CHECK(sup_distance(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("adapted pentagon recursion for the constraint") {
    RacahEngine eng;
    // [j1 J2 J3; 1/2 j3 j2] R[j1 j2 j3; j4 j5 j6]
    //   = sum_{J4 = j4 -+ 1/2} [J2 1/2 j2; j4 j6 J4] [j1 J2 J3; J4 j5 j6]
    //                          [J3 1/2 j3; j4 j5 J4]
    auto check = [&](Module j1, Module j2, Module j3, Module j4, Module j5,
                     Module j6, double tol) {
        auto J2 = *shift_half(j2, +1);
        auto J3 = *shift_half(j3, -1);
        Complex lhs = eng.value(j1, J2, J3, F(1), j3, j2) *
                      eng.value(j1, j2, j3, j4, j5, j6);
        Complex rhs = 0.0;
        for (int s : {-1, +1}) {
            auto J4 = shift_half(j4, s);
            if (!J4) continue;
            rhs += eng.value(J2, F(1), j2, j4, j6, *J4) *
                   eng.value(j1, J2, J3, *J4, j5, j6) *
                   eng.value(J3, F(1), j3, j4, j5, *J4);
        }
        CHECK(std::abs(lhs - rhs) < tol);
    };
    check(F(2), F(3), F(3), F(2), F(3), F(3), 1e-12);
    check(Dp(2), Dp(2), Dp(6), Dp(2), Dp(10), Dp(6), 1e-9);
}

TEST_CASE("Hamiltonian action produces the three displayed terms") {
    RacahEngine eng;
    TetNetwork net{F(2), F(3), F(3), F(2), F(3), F(3)};
    auto terms = hamiltonian_apply(eng, BracketType::AngleBracket, {3, 4, 2}, net);
    REQUIRE(terms.size() == 3);

    // diagonal term: -D(j2)D(j3)D(j2+1/2)D(j3-1/2) R[j1 j2 j3; 1/2 j3-1/2 j2+1/2]
    //                x R[j1 j2+1/2 j3-1/2; 1/2 j3 j2]
    CHECK(terms[0].dj2 == HalfInt(0));
    CHECK(terms[0].dj3 == HalfInt(0));
    CHECK(terms[0].dj4 == HalfInt(0));
    auto D = [](const Module& m) { return std::sqrt(2.0 * m.jval().real() + 1.0); };
    Complex expected = -D(F(3)) * D(F(3)) * D(F(4)) * D(F(2)) *
                       eng.value(F(2), F(3), F(3), F(1), F(2), F(4)) *
                       eng.value(F(2), F(4), F(2), F(1), F(3), F(3));
    CHECK(std::abs(terms[0].coeff - expected) < 1e-12);

    // off-diagonal shifts (+1/2, -1/2, -+1/2)
    CHECK(terms[1].dj2 == HalfInt::half());
    CHECK(terms[1].dj3 == -HalfInt::half());
    CHECK(terms[1].dj4 == -HalfInt::half());
    CHECK(terms[2].dj4 == HalfInt::half());
}

TEST_CASE("the Racah amplitude is annihilated, finite regime") {
    RacahEngine eng;
    TetNetwork net{F(2), F(3), F(3), F(2), F(3), F(3)};
    for (BracketType type : {BracketType::AngleAngle, BracketType::DoubleBracket,
                             BracketType::AngleBracket, BracketType::BracketAngle})
        CHECK(annihilation_residual(eng, type, {3, 4, 2}, net) < 1e-10);
    for (std::array<int, 3> cyc : {std::array<int, 3>{4, 2, 3}, {2, 3, 4}})
        CHECK(annihilation_residual(eng, BracketType::AngleBracket, cyc, net) < 1e-10);

    // a second, asymmetric sextuple
    TetNetwork net2{F(1), F(2), F(3), F(2), F(3), F(2)};
    for (BracketType type : {BracketType::AngleBracket, BracketType::AngleAngle})
        CHECK(annihilation_residual(eng, type, {3, 4, 2}, net2) < 1e-10);
}

TEST_CASE("the Racah amplitude is annihilated, discrete regime") {
    RacahEngine eng;
    TetNetwork net{Dp(2), Dp(2), Dp(6), Dp(2), Dp(10), Dp(6)};
    CHECK(annihilation_residual(eng, BracketType::AngleBracket, {3, 4, 2}, net) < 1e-8);
    CHECK(annihilation_residual(eng, BracketType::DoubleBracket, {3, 4, 2}, net) < 1e-8);
}

TEST_CASE("inadmissible networks give vanishing actions") {
    RacahEngine eng;
    // j3 does not couple (1/2 x 1/2 has no F_3)
    TetNetwork net{F(1), F(1), F(6), F(1), F(1), F(1)};
    CHECK(annihilation_residual(eng, BracketType::AngleBracket, {3, 4, 2}, net) == 0.0);
}

TEST_CASE("clockwise angle-bracket equals counter-clockwise double-bracket") {
    RacahEngine eng;
    TetNetwork net{F(2), F(3), F(3), F(2), F(3), F(3)};
    for (auto [abc, cba] : {std::pair<std::array<int, 3>, std::array<int, 3>>{
                                {3, 4, 2}, {2, 4, 3}},
                            {{4, 2, 3}, {3, 2, 4}}}) {
        auto lhs = as_map(hamiltonian_apply(eng, BracketType::AngleAngle, cba, net));
        auto rhs = as_map(hamiltonian_apply(eng, BracketType::DoubleBracket, abc, net));
        REQUIRE(lhs.size() == rhs.size());
        for (const auto& [k, v] : lhs) CHECK(std::abs(v - rhs[k]) < 1e-12);
    }
}

TEST_CASE("annihilation report is a JSON record") {
    RacahEngine eng;
    TetNetwork net{F(2), F(3), F(3), F(2), F(3), F(3)};
    std::string rep = annihilation_report(eng, BracketType::AngleBracket, {3, 4, 2}, net);
    CHECK(rep.find("\"residual\"") != std::string::npos);
    CHECK(rep.find("\"racah_calls\"") != std::string::npos);
    CHECK(rep.find("\"variant\":\"<]\"") != std::string::npos);
}
