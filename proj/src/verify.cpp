#include "srt/verify.hpp"

#include "srt/cg21.hpp"
#include "srt/js21.hpp"
#include "srt/lqg.hpp"
#include "srt/poisson.hpp"
#include "srt/racah.hpp"
#include "srt/sostar.hpp"
#include "srt/spin31.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace srt {

namespace {

const HalfInt h = HalfInt::half();

// running record for one criterion: worst residual plus hard boolean checks
struct Check {
    bool ok = true;
    double worst = 0.0;
    int failures = 0;

    void residual(double r, double tol) {
        worst = std::max(worst, r);
        if (!(r <= tol)) {
            ok = false;
            ++failures;
        }
    }
    void expect(bool b) {
        if (!b) {
            ok = false;
            ++failures;
        }
    }
};

CriterionResult finish(int index, const std::string& name, const Check& c,
                       const std::string& note = "") {
    std::ostringstream d;
    if (!note.empty()) d << note;
    if (c.failures) d << (note.empty() ? "" : "; ") << c.failures << " check(s) failed";
    return {index, name, c.ok, c.worst, d.str()};
}

// ---------------------------------------------------------------------------
// criterion 1: closed-form coupling tables for the two smallest finite factors

Complex golden_half(Complex j, double M, HalfInt mu, int dJ2) {
    Complex d = psqrt(2.0 * j + 1.0);
    if (mu == -h) return dJ2 < 0 ? -psqrt(j + M + 0.5) / d : psqrt(j - M + 0.5) / d;
    return dJ2 < 0 ? psqrt(j - M + 0.5) / d : psqrt(j + M + 0.5) / d;
}

Complex golden_one(Complex j, double M, HalfInt mu, int dJ) {
    const double r2 = std::sqrt(2.0);
    Complex s2j = psqrt(2.0 * j), s2j1 = psqrt(2.0 * j + 1.0), s2j2 = psqrt(2.0 * j + 2.0);
    if (mu == HalfInt(-1)) {
        if (dJ == -1) return psqrt(j + M) * psqrt(j + M + 1.0) / (s2j * s2j1);
        if (dJ == 0) return -r2 * psqrt(j - M) * psqrt(j + M + 1.0) / (s2j * s2j2);
        return psqrt(j - M) * psqrt(j - M + 1.0) / (s2j1 * s2j2);
    }
    if (mu == HalfInt(0)) {
        if (dJ == -1) return -r2 * psqrt(j - M) * psqrt(j + M) / (s2j * s2j1);
        if (dJ == 0) return -2.0 * M / (s2j * s2j2);
        return r2 * psqrt(j - M + 1.0) * psqrt(j + M + 1.0) / (s2j1 * s2j2);
    }
    if (dJ == -1) return psqrt(j - M) * psqrt(j - M + 1.0) / (s2j * s2j1);
    if (dJ == 0) return r2 * psqrt(j + M) * psqrt(j - M + 1.0) / (s2j * s2j2);
    return psqrt(j + M) * psqrt(j + M + 1.0) / (s2j1 * s2j2);
}

double golden_residual(const CGTable& t, HalfInt gamma) {
    double worst = 0.0;
    Complex j = t.v2.jval();
    for (const auto& b : t.blocks)
        for (std::size_t r = 0; r < b.m1.size(); ++r)
            for (std::size_t k = 0; k < b.labels.size(); ++k) {
                int nu = static_cast<int>(std::llround(b.labels[k].jraw.real() - j.real()));
                Complex expect = gamma == h
                                     ? golden_half(j, b.M.to_double(), b.m1[r],
                                                   nu > 0 ? 1 : -1)
                                     : golden_one(j, b.M.to_double(), b.m1[r], nu);
                worst = std::max(
                    worst, std::abs(b.B(static_cast<Eigen::Index>(r),
                                        static_cast<Eigen::Index>(k)) -
                                    expect));
            }
    return worst;
}

CriterionResult criterion1() {
    Check c;
    for (HalfInt gamma : {h, HalfInt(1)}) {
        std::vector<Module> factors;
        for (int j = 1; j <= 5; ++j) factors.push_back(Module::dpos(HalfInt(j)));
        for (int j = 1; j <= 4; ++j) factors.push_back(Module::finite(HalfInt(j)));
        for (double s : {1.0, 2.0})
            factors.push_back(Module::cont(Complex(-0.5, s),
                                           gamma == h ? HalfInt(0) : h));
        for (const Module& x : factors) {
            CGTable t = cg_table(Module::finite(gamma), x, 12);
            c.residual(golden_residual(t, gamma), 1e-12);
        }
    }
    return finish(1, "3d coupling tables match the closed forms", c);
}

// ---------------------------------------------------------------------------
// criterion 2: 4D half-step table against the closed-form block

Complex table4_half(const Rep4Label& l, int A, HalfInt J, int sigma, HalfInt j) {
    double lam = l.lambda.to_double(), Jd = J.to_double();
    Complex ar = double(A) * l.rho;
    Complex den = std::sqrt(2.0 * Jd + 1.0) * psqrt(lam + ar);
    Complex aligned = psqrt(Jd + lam + 0.5) * psqrt(Jd + ar + 0.5);
    Complex opposed = psqrt(Jd - lam + 0.5) * psqrt(Jd - ar + 0.5);
    Complex iA{0.0, double(A)};
    const bool lower = j == J - h;
    if (sigma < 0) return (lower ? iA * opposed : aligned) / den;
    return (lower ? aligned : -iA * opposed) / den;
}

CriterionResult criterion2() {
    Check c;
    for (const auto& [l, A] : {std::pair{Rep4Label{h, Complex(0.0, 0.3)}, +1},
                               {Rep4Label{h, Complex(0.0, 0.3)}, -1},
                               {Rep4Label{1, 0.25}, +1},
                               {Rep4Label{1, 0.25}, -1}}) {
        CG4Half direct = cg4_half(l, A);
        for (HalfInt J = l.lambda + h; J <= l.lambda + 6; J += 1) {
            CG4Table t = cg4_table(l, h, A, J);
            c.expect(t.labels.size() == 2);
            for (std::size_t col = 0; col < t.labels.size(); ++col) {
                int sigma = col == 0 ? -1 : +1;
                for (std::size_t row = 0; row < t.js.size(); ++row) {
                    Complex expect = table4_half(l, A, J, sigma, t.js[row]);
                    c.residual(std::abs(t.B(static_cast<Eigen::Index>(row),
                                            static_cast<Eigen::Index>(col)) -
                                        expect),
                               1e-12);
                    c.residual(std::abs(direct.coeff(J, sigma, t.js[row]) - expect),
                               1e-12);
                }
            }
        }
    }
    return finish(2, "4d half-step table matches the closed-form block", c);
}

// ---------------------------------------------------------------------------
// criterion 3: orthogonality and ladder recursion on produced tables

CriterionResult criterion3() {
    Check c;
    std::vector<CGTable> tables;
    tables.push_back(cg_table(Module::finite(h), Module::dpos(HalfInt(2)), 40));
    tables.push_back(cg_table(Module::finite(HalfInt(1)), Module::finite(HalfInt(3)), 40));
    tables.push_back(cg_table(Module::finite(HalfInt::from_twice(3)),
                              Module::cont(Complex(-0.5, 1.0), HalfInt(0)), 40));
    tables.push_back(cg_table(Module::finite(HalfInt(2)),
                              Module::cont(Complex(0.3, 0.7), h), 40));
    tables.push_back(cg_table(Module::dneg(HalfInt(1)), Module::dneg(h), 40));
    for (int ta = 0; ta <= 4; ++ta)
        for (int tb = 0; tb <= 4; ++tb)
            tables.push_back(cg_table(Module::dpos(HalfInt::from_twice(ta)),
                                      Module::dpos(HalfInt::from_twice(tb)), 40));
    for (const CGTable& t : tables) {
        c.residual(t.orthogonality_residual(), 1e-10);
        c.residual(t.recursion_residual(), 1e-10);
    }
    return finish(3, "orthogonality and recursion on every produced table", c);
}

// ---------------------------------------------------------------------------
// criterion 4: decomposability / defectiveness frontiers

CriterionResult criterion4() {
    Check c;
    // finite x discrete-positive
    for (int tg = 1; tg <= 4; ++tg) {
        HalfInt g = HalfInt::from_twice(tg);
        for (int tj = -1; tj <= 8; ++tj) {
            HalfInt j = HalfInt::from_twice(tj);
            c.expect(decomposable(Module::finite(g), Module::dpos(j)) == (j > g - 1));
        }
    }
    // finite x continuous at real half-integer labels (canonical fold applies)
    for (int tg = 1; tg <= 4; ++tg) {
        HalfInt g = HalfInt::from_twice(tg);
        for (int tj = -6; tj <= 6; ++tj) {
            double j = tj / 2.0;
            bool expect = j > g.to_double() - 1.0 || j < -g.to_double();
            for (HalfInt eps : {HalfInt(0), h}) {
                // a real half-integer label of the same parity as eps is not a
                // continuous-class module at all; skip those combinations
                if (HalfInt::from_twice(tj).same_parity(eps)) continue;
                c.expect(decomposable(Module::finite(g),
                                      Module::cont(Complex(j, 0.0), eps)) == expect);
            }
        }
    }
    // 4D: defective exactly on rho + A lambda in (-2 gamma, 2 gamma) cap Z
    for (HalfInt gamma : {h, HalfInt(1), HalfInt::from_twice(3)})
        for (HalfInt lam : {HalfInt(0), h, HalfInt(1)})
            for (int A : {-1, +1}) {
                for (int tr = -8; tr <= 8; ++tr) {
                    Complex rho(tr / 2.0, 0.0);
                    Complex w = rho + double(A) * lam.to_double();
                    bool integer = std::abs(w.real() - std::round(w.real())) < 1e-12;
                    bool frontier = integer && std::abs(w.real()) < 2.0 * gamma.to_double() - 0.25;
                    c.expect(decomposable4({lam, rho}, gamma, A) == !frontier);
                }
                // complex rho never hits the frontier
                c.expect(decomposable4({lam, Complex(0.3, 0.4)}, gamma, A));
            }
    // a defective block really lacks simultaneous eigenvectors, and a
    // decomposable one does not
    CasimirBlock bad = casimir_block(Rep4Label(h, Complex(0.5, 0.0)), HalfInt(1), 1,
                                     HalfInt::from_twice(5));
    c.expect(!bad.decomposable);
    c.expect(bad.eigenvector_count < static_cast<int>(bad.js.size()));
    CasimirBlock good = casimir_block({h, Complex(0.0, 0.3)}, HalfInt(1), 1,
                                      HalfInt::from_twice(5));
    c.expect(good.decomposable);
    c.expect(good.eigenvector_count == static_cast<int>(good.js.size()));
    return finish(4, "decomposability frontier in 3d and 4d", c);
}

// ---------------------------------------------------------------------------
// criterion 5: spinor-operator Heisenberg pairs and generator reconstruction

MultiLegState random_state(const std::vector<LegSpec>& legs, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    MultiLegState s(legs);
    for (int t = 0; t < 5; ++t) {
        TermKey key(legs.size());
        for (std::size_t i = 0; i < legs.size(); ++i) {
            const Module& mod = legs[i].mod;
            HalfInt base = mod.lowest() ? *mod.lowest() + 2
                                        : (mod.highest() ? *mod.highest() - 6 : mod.eps);
            HalfInt m = base + static_cast<int>(rng() % 3);
            if (!mod.in_support(m)) m = base;
            key[i] = {HalfInt(0), mod.eps, m};
        }
        s.add(key, Complex(coef(rng), coef(rng)));
    }
    return s;
}

std::vector<SU2TowerState> tower_basis(const Rep4Label& l, HalfInt j_cut, HalfInt top) {
    std::vector<SU2TowerState> out;
    for (HalfInt j = abs(l.lambda); j <= top; j += 1)
        for (HalfInt m = -j; m <= j; m += 1)
            out.push_back(SU2TowerState::basis(l, j_cut, j, m));
    return out;
}

CriterionResult criterion5() {
    Check c;
    using K = SpinorOpKind;
    auto T = [](K op, const MultiLegState& s) { return apply_spinor(op, 0, s); };
    auto comm = [&](K x, K y, const MultiLegState& s) {
        return T(x, T(y, s)) - T(y, T(x, s));
    };
    std::vector<LegSpec> legsets[] = {
        {{Module::dpos(1), true}},
        {{Module::dneg(HalfInt::from_twice(3)), true}},
        {{Module::finite(3), true}},
        {{Module::cont(Complex(-0.5, 1.0), HalfInt(0)), true}},  // principal
        {{Module::cont(Complex(-0.5, 2.0), h), true}},
        {{Module::cont(Complex(0.3, 0.7), h), true}},
        {{Module::dpos(1), false}},
        {{Module::cont(Complex(-0.5, 1.0), HalfInt(0)), false}},
    };
    unsigned seed = 11;
    for (const auto& legs : legsets) {
        MultiLegState s = random_state(legs, seed++);
        MultiLegState zero(s.legs());
        c.residual(sup_distance(comm(K::Tplus, K::Ttilde_minus, s), s), 1e-12);
        c.residual(sup_distance(comm(K::Ttilde_plus, K::Tminus, s), s), 1e-12);
        c.residual(sup_distance(comm(K::Tplus, K::Tminus, s), zero), 1e-12);
        c.residual(sup_distance(comm(K::Ttilde_plus, K::Ttilde_minus, s), zero), 1e-12);
        c.residual(sup_distance(comm(K::Tplus, K::Ttilde_plus, s), zero), 1e-12);
        c.residual(sup_distance(comm(K::Tminus, K::Ttilde_minus, s), zero), 1e-12);
        for (Gen21 g : {Gen21::J0, Gen21::Jplus, Gen21::Jminus})
            c.residual(sup_distance(reconstruct_generator(g, 0, s),
                                    apply_generator(g, 0, s)),
                       1e-12);
    }
    // 4D ladder
    auto T4 = [](int A, int mu, const SU2TowerState& p) {
        return js4_apply(JS4Kind::T, A, mu, p);
    };
    auto Tt4 = [](int A, int mu, const SU2TowerState& p) {
        return js4_apply(JS4Kind::Ttilde, A, mu, p);
    };
    for (const Rep4Label& l : {Rep4Label{h, Complex(0.0, 0.3)},
                               Rep4Label{0, Complex(0.0, 0.6)},
                               Rep4Label{1, 0.25}}) {
        HalfInt j_cut = abs(l.lambda) + 8;
        for (const auto& psi : tower_basis(l, j_cut, j_cut - 2)) {
            for (int A : {-1, 1})
                for (int B : {-1, 1}) {
                    SU2TowerState lhs = T4(A, 1, Tt4(B, -1, psi));
                    lhs -= Tt4(B, -1, T4(A, 1, psi));
                    SU2TowerState lhs2 = Tt4(A, 1, T4(B, -1, psi));
                    lhs2 -= T4(B, -1, Tt4(A, 1, psi));
                    if (A == B) {
                        c.residual(sup_distance(lhs, psi), 1e-12);
                        c.residual(sup_distance(lhs2, psi), 1e-12);
                    } else {
                        c.residual(sup_norm(lhs), 1e-12);
                        c.residual(sup_norm(lhs2), 1e-12);
                    }
                }
            for (int A : {-1, 1}) {
                Complex iA{0.0, double(A)};
                SU2TowerState mplus = T4(A, 1, Tt4(A, 1, psi));
                SU2TowerState jk = boost_apply(Gen31::Jplus, psi);
                jk -= iA * boost_apply(Gen31::Kplus, psi);
                c.residual(sup_distance(mplus, 0.5 * jk), 1e-12);
                SU2TowerState m0 = T4(A, -1, Tt4(A, 1, psi));
                m0 += T4(A, 1, Tt4(A, -1, psi));
                m0 = -0.5 * m0;
                SU2TowerState jk0 = boost_apply(Gen31::J0, psi);
                jk0 -= iA * boost_apply(Gen31::K0, psi);
                c.residual(sup_distance(m0, 0.5 * jk0), 1e-12);
            }
        }
    }
    return finish(5, "spinor Heisenberg pairs and generator reconstruction", c);
}

// ---------------------------------------------------------------------------
// criterion 6: pentagon identity on random configurations

Module pick(std::mt19937_64& rng, const DecompositionSet& set) {
    std::vector<Module> avail;
    for (const auto& e : set.entries)
        if (e.measure == MeasureTag::Sum) avail.push_back(e.label);
    return avail[rng() % avail.size()];
}

CriterionResult criterion6() {
    Check c;
    RacahEngine eng;
    std::mt19937_64 rng(20250823);
    auto F = [](std::uint64_t t) { return Module::finite(HalfInt::from_twice(static_cast<std::int64_t>(t))); };
    auto Dp = [](std::int64_t t) { return Module::dpos(HalfInt::from_twice(t)); };

    int produced = 0;
    while (produced < 50) {
        Module j1 = F(1 + rng() % 4), j2 = F(1 + rng() % 4), j3 = F(1 + rng() % 4),
               j4 = F(1 + rng() % 4);
        Module j12 = pick(rng, decompose(j1, j2));
        Module j123 = pick(rng, decompose(j12, j3));
        Module j23 = pick(rng, decompose(j2, j3));
        Module j234 = pick(rng, decompose(j23, j4));
        Module j34 = pick(rng, decompose(j3, j4));
        Module j = pick(rng, decompose(j123, j4));
        if (!decompose(j1, j234).contains(j) || !decompose(j2, j34).contains(j234) ||
            !decompose(j12, j34).contains(j) || !decompose(j1, j23).contains(j123))
            continue;
        int variant = produced % 5 + 1;
        c.residual(eng.pentagon_residual(j1, j2, j3, j4, j, j12, j123, j23, j234,
                                         j34, variant),
                   1e-11);
        ++produced;
    }
    // mixed: three discrete-positive externals and one F_1/2 leg; the tower
    // parameters are chosen so every coupling in the identity is admissible
    for (int t = 0; t < 20; ++t) {
        std::int64_t a = 2 + static_cast<std::int64_t>(rng() % 3);
        std::int64_t b = 2 + static_cast<std::int64_t>(rng() % 3);
        std::int64_t cc = 2 + static_cast<std::int64_t>(rng() % 3);
        std::int64_t r1 = static_cast<std::int64_t>(rng() % 2);
        std::int64_t r2 = static_cast<std::int64_t>(rng() % 2);
        std::int64_t r3 = static_cast<std::int64_t>(rng() % (r1 + r2 + 1));
        int s = rng() % 2 ? 1 : -1;
        Module j1 = Dp(a), j2 = Dp(b), j3 = Dp(cc), j4 = Module::finite(h);
        Module j12 = Dp(a + b + 2 + 2 * r1);
        Module j123 = Dp(a + b + cc + 4 + 2 * (r1 + r2));
        Module j23 = Dp(b + cc + 2 + 2 * r3);
        Module j234 = Dp(b + cc + 2 + 2 * r3 + s);
        Module j34 = Dp(cc + s);
        Module j = Dp(a + b + cc + 4 + 2 * (r1 + r2) + s);
        int variant = t % 5 + 1;
        c.residual(eng.pentagon_residual(j1, j2, j3, j4, j, j12, j123, j23, j234,
                                         j34, variant),
                   1e-9);
    }
    return finish(6, "pentagon identity on random configurations", c);
}

// ---------------------------------------------------------------------------
// criterion 7: Hamiltonian annihilation of the triangular amplitude

CriterionResult criterion7() {
    Check c;
    RacahEngine eng;
    std::mt19937_64 rng(424243);
    const std::array<BracketType, 4> brackets = {
        BracketType::AngleAngle, BracketType::DoubleBracket,
        BracketType::AngleBracket, BracketType::BracketAngle};
    const std::array<std::array<int, 3>, 3> cycles = {
        std::array<int, 3>{3, 4, 2}, {4, 2, 3}, {2, 3, 4}};

    auto run_net = [&](const TetNetwork& net, double tol) {
        // nets whose action vanishes identically prove nothing; skip them
        auto probe = hamiltonian_apply(eng, BracketType::AngleBracket, {3, 4, 2}, net);
        bool alive = false;
        for (const auto& term : probe)
            if (term.coeff != 0.0) alive = true;
        if (!alive) return false;
        for (BracketType type : brackets)
            c.residual(annihilation_residual(eng, type, {3, 4, 2}, net), tol);
        for (const auto& cyc : cycles)
            c.residual(annihilation_residual(eng, BracketType::AngleBracket, cyc, net), tol);
        return true;
    };

    // all-finite (compact) regime
    auto Ft = [](std::int64_t t) { return Module::finite(HalfInt::from_twice(t)); };
    int finite_nets = 0;
    while (finite_nets < 10) {
        std::int64_t t1 = 1 + static_cast<std::int64_t>(rng() % 4);
        std::int64_t t2 = 1 + static_cast<std::int64_t>(rng() % 4);
        std::int64_t t4 = 1 + static_cast<std::int64_t>(rng() % 4);
        auto triangle_pick = [&](std::int64_t x, std::int64_t y) {
            std::int64_t lo = std::abs(x - y), hi = x + y;
            std::int64_t n = (hi - lo) / 2 + 1;
            return lo + 2 * static_cast<std::int64_t>(rng() % n);
        };
        std::int64_t t3 = triangle_pick(t1, t2);
        std::int64_t t6 = triangle_pick(t2, t4);
        // t5 must couple with both (t3, t4) and (t1, t6)
        std::int64_t lo = std::max(std::abs(t3 - t4), std::abs(t1 - t6));
        std::int64_t hi = std::min(t3 + t4, t1 + t6);
        if ((lo + t3 + t4) % 2 != 0) ++lo;
        if (lo > hi) continue;
        std::int64_t t5 = lo + 2 * static_cast<std::int64_t>(rng() % ((hi - lo) / 2 + 1));
        TetNetwork net{Ft(t1), Ft(t2), Ft(t3), Ft(t4), Ft(t5), Ft(t6)};
        if (run_net(net, 1e-10)) ++finite_nets;
    }

    // all-discrete-positive regime: towers force j3 = j1+j2+1+k etc.
    auto Dp = [](std::int64_t t) { return Module::dpos(HalfInt::from_twice(t)); };
    int disc_nets = 0;
    while (disc_nets < 10) {
        std::int64_t t1 = 1 + static_cast<std::int64_t>(rng() % 3);
        std::int64_t t2 = 1 + static_cast<std::int64_t>(rng() % 3);
        std::int64_t t4 = 1 + static_cast<std::int64_t>(rng() % 3);
        std::int64_t k1 = static_cast<std::int64_t>(rng() % 2);
        std::int64_t k2 = static_cast<std::int64_t>(rng() % 2);
        std::int64_t t3 = t1 + t2 + 2 + 2 * k1;
        std::int64_t t6 = t2 + t4 + 2 + 2 * k2;
        std::int64_t t5 = t3 + t4 + 2 + 2 * k2;  // = t1 + t6 + 2 + 2 k1
        TetNetwork net{Dp(t1), Dp(t2), Dp(t3), Dp(t4), Dp(t5), Dp(t6)};
        if (run_net(net, 1e-8)) ++disc_nets;
    }
    return finish(7, "Hamiltonian variants annihilate the amplitude", c);
}

// ---------------------------------------------------------------------------
// criterion 8: classical spinor identities

CriterionResult criterion8() {
    Check c;
    // symbolic closure of the vertex-observable algebra
    GaussRat i = GaussRat::i();
    auto delta = [](int x, int y) { return GaussRat{Rational(x == y ? 1 : 0)}; };
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int cc = 0; cc < 3; ++cc)
                for (int d = 0; d < 3; ++d) {
                    c.expect((bracket(obs_e(a, b), obs_e(cc, d)) +
                              i * (delta(cc, b) * obs_e(a, d) -
                                   delta(a, d) * obs_e(cc, b)))
                                 .is_zero());
                    c.expect((bracket(obs_e(a, b), obs_f(cc, d)) +
                              i * (delta(a, d) * obs_f(b, cc) -
                                   delta(a, cc) * obs_f(b, d)))
                                 .is_zero());
                    c.expect((bracket(obs_e(a, b), obs_ftilde(cc, d)) +
                              i * (delta(b, cc) * obs_ftilde(a, d) -
                                   delta(b, d) * obs_ftilde(a, cc)))
                                 .is_zero());
                    c.expect((bracket(obs_f(a, b), obs_ftilde(cc, d)) +
                              i * (delta(d, b) * obs_e(cc, a) +
                                   delta(cc, a) * obs_e(d, b) -
                                   delta(cc, b) * obs_e(d, a) -
                                   delta(d, a) * obs_e(cc, b)))
                                 .is_zero());
                    c.expect(bracket(obs_f(a, b), obs_f(cc, d)).is_zero());
                    c.expect(bracket(obs_ftilde(a, b), obs_ftilde(cc, d)).is_zero());
                }

    // numeric layer: trace identity, determinant and transport
    std::mt19937 rng(20250823);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    auto rc = [&] { return Complex(d(rng), d(rng)); };
    auto rpair = [&] {
        for (;;) {
            SpinorPair p{{rc(), rc()}, {rc(), rc()}};
            Complex e = pair_norm(p);
            if (std::abs(e) < 0.3) continue;  // keep the holonomy well-scaled
            p.tt.minus *= std::abs(e) / e;
            p.tt.plus *= std::abs(e) / e;
            return p;
        }
    };
    auto redge = [&] {
        SpinorPair t = rpair();
        return EdgeSpinors{t, matched(t, rpair())};
    };
    for (int trial = 0; trial < 100; ++trial) {
        TriangleEdges face{redge(), redge(), redge()};
        for (std::array<int, 3> abc :
             {std::array<int, 3>{3, 4, 2}, {4, 2, 3}, {2, 3, 4}})
            c.residual(trace_identity_residual(face, abc), 1e-12);
    }
    for (int trial = 0; trial < 50; ++trial) {
        SpinorPair t = rpair();
        SpinorPair w = matched(t, rpair());
        Eigen::Matrix2cd g = holonomy(t, w);
        c.residual(std::abs(g.determinant() - 1.0), 1e-14);
        Eigen::Vector2cd kt{t.t.minus, t.t.plus}, kw{w.t.minus, w.t.plus};
        Eigen::Vector2cd bt{t.tt.minus, t.tt.plus}, bw{w.tt.minus, w.tt.plus};
        c.residual((g * kt - kw).cwiseAbs().maxCoeff(), 1e-14);
        c.residual((g * bt - bw).cwiseAbs().maxCoeff(), 1e-14);
    }
    return finish(8, "classical algebra closes; trace identity and transport", c);
}

// ---------------------------------------------------------------------------
// criterion 9: rank-2 total-area distribution

CriterionResult criterion9() {
    Check c;
    DomainPoint z = rank2_point(2, 0.8);
    std::vector<double> P = rank2_distribution(z, 1e-16);
    c.residual(std::abs(P[0] - 0.36), 1e-12);
    c.residual(std::abs(P[1] - 0.288), 1e-12);

    FockState coh = fock_coherent(z, 21);
    for (int J = 0; J <= 20; ++J) {
        double w = std::pow(fock_norm(fock_area_shell(coh, J)), 2);
        c.residual(std::abs(w - P[static_cast<std::size_t>(J)]), 1e-10);
    }
    double sum = 0, mean = 0, second = 0;
    for (std::size_t J = 0; J < P.size(); ++J) {
        sum += P[J];
        mean += double(J) * P[J];
        second += double(J) * double(J) * P[J];
    }
    AreaStatistics st = area_statistics(z);
    c.residual(std::abs(sum - 1.0), 1e-12);
    c.residual(std::abs(mean - 4.0 / 3.0), 1e-10);
    c.residual(std::abs(second - mean * mean - 20.0 / 9.0), 1e-10);
    c.residual(std::abs(st.total_mean - 4.0 / 3.0), 1e-10);
    c.residual(std::abs(st.total_variance - 20.0 / 9.0), 1e-10);
    return finish(9, "rank-2 area distribution and its moments", c);
}

// ---------------------------------------------------------------------------
// criterion 10: expectation values against the Fock oracle

CriterionResult criterion10() {
    Check c;
    const double tol = 1e-8;
    auto rel = [](Complex got, Complex want) {
        return std::abs(got - want) / std::max(1.0, std::abs(want));
    };
    for (int sample = 0; sample < 20; ++sample) {
        // the oracle basis grows like binom(J+n-1, n-1)^2 per shell, so the
        // n = 4 draws use a smaller spectral scale and a lower cap; the tail
        // estimate below confirms the truncation resolves the tolerance
        const Eigen::Index n = 2 + sample % 3;
        const double scale = n == 4 ? 0.25 : 0.6;
        const int J_max = n == 4 ? 14 : 24;
        DomainPoint z = random_domain_point(n, scale, 1000 + sample);
        DomainPoint w = random_domain_point(n, 0.8 * scale, 2000 + sample);

        FockState fz = fock_coherent(z, J_max);
        FockState fw = fock_coherent(w, J_max);
        c.expect(fock_tail_estimate(z, J_max) < 1e-9);
        c.expect(fock_tail_estimate(w, J_max) < 1e-9);

        // per-leg and total area moments from the occupation amplitudes
        AreaStatistics st = area_statistics(z);
        std::vector<double> m1(static_cast<std::size_t>(n), 0.0);
        std::vector<double> m2(static_cast<std::size_t>(n), 0.0);
        double tot1 = 0, tot2 = 0;
        for (const auto& [key, amp] : fz.amp) {
            double p = std::norm(amp);
            double total = 0;
            for (Eigen::Index a = 0; a < n; ++a) {
                double occ = 0.5 * (((key >> (8 * a)) & 0xff) +
                                    ((key >> (8 * (n + a))) & 0xff));
                m1[static_cast<std::size_t>(a)] += p * occ;
                m2[static_cast<std::size_t>(a)] += p * occ * occ;
                total += occ;
            }
            tot1 += p * total;
            tot2 += p * total * total;
        }
        for (Eigen::Index a = 0; a < n; ++a) {
            auto ia = static_cast<std::size_t>(a);
            c.residual(rel(m1[ia], st.leg_mean[ia]), tol);
            c.residual(rel(m2[ia] - m1[ia] * m1[ia], st.leg_variance[ia]), tol);
        }
        c.residual(rel(tot1, st.total_mean), tol);
        c.residual(rel(tot2 - tot1 * tot1, st.total_variance), tol);

        // generator matrix elements between two coherent states
        GeneratorMatrixElements m = generator_matrix_elements(w, z);
        Complex ov = fock_inner(fw, fz);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                c.residual(rel(fock_inner(fw, fock_E(a, b, fz)) / ov, m.E(a, b)), tol);
                c.residual(rel(fock_inner(fw, fock_F(a, b, fz)) / ov, m.F(a, b)), tol);
                c.residual(rel(fock_inner(fw, fock_Ftilde(a, b, fz)) / ov, m.Ftilde(a, b)), tol);
            }
    }
    return finish(10, "area moments and matrix elements match the Fock oracle", c);
}

// ---------------------------------------------------------------------------
// criterion 11: structural identities

CriterionResult criterion11() {
    Check c;
    std::mt19937_64 seeds(7);
    // closure of the semiclassical normals at arbitrary rank
    for (int t = 0; t < 10; ++t) {
        DomainPoint z = random_domain_point(4, 0.8, seeds());
        c.residual(semiclassical_normals(z).closure_residual(), 1e-12);
    }
    // rank-2 norm identity after a generic unitary mixing
    {
        DomainPoint z2 = rank2_point(4, 1.2);
        Matrix herm = random_domain_point(4, 0.5, 99).zeta;
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm + herm.adjoint());
        DomainPoint mixed{es.eigenvectors() * z2.zeta * es.eigenvectors().transpose()};
        SemiclassicalNormals sn = semiclassical_normals(mixed);
        AreaStatistics st = area_statistics(mixed);
        for (std::size_t a = 0; a < 4; ++a)
            c.residual(std::abs(sn.normals[a].norm() - st.leg_mean[a]), 1e-10);
    }
    // invariant-subspace dimensions against the closed form
    for (int n = 2; n <= 4; ++n)
        for (int J = 0; J <= 6; ++J)
            c.expect(invariant_dimension(n, J) == invariant_dimension_formula(n, J));
    // UDL reconstruction
    for (int t = 0; t < 5; ++t) {
        SOStarElement g = g_zeta(random_domain_point(4, 0.7, seeds())) *
                          g_zeta(random_domain_point(4, 0.5, seeds()));
        c.residual((udl_decompose(g).product() - g.full()).cwiseAbs().maxCoeff(), 1e-12);
    }
    // antisymmetric canonical form reconstruction
    std::mt19937 rng(20250823);
    std::normal_distribution<double> gauss;
    auto random_matrix = [&](int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) m(i, k) = Complex(gauss(rng), gauss(rng));
        return m;
    };
    for (int n : {2, 3, 5, 6}) {
        Matrix A = random_matrix(n);
        Matrix X = A - A.transpose();
        auto f = antisym_canonical(X);
        c.residual((f.reconstruct() - X).cwiseAbs().maxCoeff() / norm1(X), 1e-12);
    }
    // each eigenvalue of a random tridiagonal has a one-dimensional eigenspace
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 6 + trial % 3;
        Matrix T = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) T(i, i) = Complex(gauss(rng), gauss(rng));
        for (int i = 0; i + 1 < n; ++i) {
            T(i + 1, i) = Complex(gauss(rng), gauss(rng));
            T(i, i + 1) = Complex(gauss(rng), gauss(rng));
        }
        Eigen::ComplexEigenSolver<Matrix> es(T);
        for (int k = 0; k < n; ++k) {
            Matrix shifted = T - es.eigenvalues()[k] * Matrix::Identity(n, n);
            Eigen::JacobiSVD<Matrix> svd(shifted);
            int nullity = 0;
            const double thresh = 1e-8 * svd.singularValues()(0);
            for (int q = 0; q < n; ++q)
                if (svd.singularValues()(q) < thresh) ++nullity;
            c.expect(nullity == 1);
        }
    }
    return finish(11, "structural identities (closure, dimensions, factorizations)", c);
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    return {criterion1(), criterion2(), criterion3(), criterion4(),
            criterion5(), criterion6(), criterion7(), criterion8(),
            criterion9(), criterion10(), criterion11()};
}

}  // namespace srt
