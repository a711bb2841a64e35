#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srt/rep21.hpp"

using namespace srt;

namespace {

// dense generators on F_j for structure checks
struct FiniteGens {
    Matrix j0, jp, jm;
};

FiniteGens finite_generators(HalfInt j) {
    const Eigen::Index n = j.twice() + 1;
    FiniteGens g{Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n)};
    Complex jc(j.to_double(), 0.0);
    Eigen::Index i = 0;
    for (HalfInt m = -j; m <= j; m += 1, ++i) {
        g.j0(i, i) = m.to_double();
        if (m < j) g.jp(i + 1, i) = gamma_plus(jc, m);
        if (m > -j) g.jm(i - 1, i) = gamma_minus(jc, m);
    }
    return g;
}

}  // namespace

TEST_CASE("ladder factor identities") {
    for (double re : {-0.5, 0.3, 2.0}) {
        for (double im : {0.0, 1.7}) {
            Complex j(re, im);
            for (int t = -7; t <= 7; ++t) {
                HalfInt m = HalfInt::from_twice(t);
                CHECK(std::abs(gamma_plus(j, m - 1) - gamma_minus(j, m)) < 1e-14);
            }
        }
    }
}

TEST_CASE("finite module realizes the algebra") {
    for (HalfInt j : {HalfInt::half(), HalfInt(1), HalfInt(2)}) {
        auto g = finite_generators(j);
        const Eigen::Index n = g.j0.rows();
        // [J0, J+-] = +-J+-
        CHECK(((g.j0 * g.jp - g.jp * g.j0) - g.jp).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(((g.j0 * g.jm - g.jm * g.j0) + g.jm).cwiseAbs().maxCoeff() < 1e-13);
        // [J+, J-] = -2 J0
        CHECK(((g.jp * g.jm - g.jm * g.jp) + 2.0 * g.j0).cwiseAbs().maxCoeff() < 1e-13);
        // both Casimir orderings act as -j(j+1)
        double q = -j.to_double() * (j.to_double() + 1.0);
        Matrix Q1 = -g.j0 * (g.j0 + Matrix::Identity(n, n)) + g.jm * g.jp;
        Matrix Q2 = -g.j0 * (g.j0 - Matrix::Identity(n, n)) + g.jp * g.jm;
        CHECK((Q1 - q * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((Q2 - q * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("discrete ladder factors are real with the D+ sign pattern") {
    // unitary lowest-weight module: J+^dag = J-, so Gamma+(j,m) must equal
    // the conjugate of Gamma-(j,m+1); both are real and negative above the edge
    Complex j(1.5, 0.0);
    for (int k = 0; k < 6; ++k) {
        HalfInt m = HalfInt::from_twice(5 + 2 * k);  // m = j+1, j+2, ...
        Complex gp = gamma_plus(j, m);
        CHECK(gp.imag() == 0.0);
        CHECK(gp.real() < 0.0);
        CHECK(std::abs(gp - std::conj(gamma_minus(j, m + 1))) < 1e-14);
        double expect = -std::sqrt(m.to_double() - 1.5) * std::sqrt(m.to_double() + 2.5);
        CHECK(std::abs(gp.real() - expect) < 1e-14);
    }
    // the edge annihilates downward
    CHECK(std::abs(gamma_minus(j, HalfInt::from_twice(5))) == 0.0);
}

TEST_CASE("weight supports") {
    auto dp = Module::dpos(HalfInt(1));
    CHECK(dp.in_support(HalfInt(2)));
    CHECK(!dp.in_support(HalfInt(1)));
    CHECK(!dp.in_support(HalfInt::from_twice(5)));  // wrong lattice
    CHECK(dp.lowest().value() == HalfInt(2));

    auto dn = Module::dneg(HalfInt::half());
    CHECK(dn.in_support(HalfInt::from_twice(-3)));
    CHECK(!dn.in_support(HalfInt::from_twice(-1)));

    auto c = Module::cont(Complex(-0.5, 2.0), HalfInt::half());
    CHECK(c.in_support(HalfInt::from_twice(7)));
    CHECK(!c.in_support(HalfInt(3)));

    auto f = Module::finite(HalfInt(2));
    CHECK(f.in_support(HalfInt(-2)));
    CHECK(!f.in_support(HalfInt(3)));
}

TEST_CASE("continuous canonicalization and validity") {
    auto c = Module::cont(Complex(-1.5, 1.0), HalfInt(0));
    CHECK(std::abs(c.jc - Complex(0.5, -1.0)) < 1e-15);
    auto p = Module::cont(Complex(-0.5, -3.0), HalfInt(0));
    CHECK(p.jc.imag() == 3.0);
    // j=0 with eps=0 would contain the finite trivial module
    CHECK_THROWS_AS(Module::cont(Complex(0.0, 0.0), HalfInt(0)), std::invalid_argument);
    CHECK_NOTHROW(Module::cont(Complex(0.0, 0.0), HalfInt::half()));
}

TEST_CASE("unitarity classification") {
    CHECK(Module::dpos(HalfInt::from_twice(-1)).is_unitary());
    CHECK(Module::dneg(HalfInt(3)).is_unitary());
    CHECK(Module::cont(Complex(-0.5, 1.0), HalfInt::half()).is_unitary());  // principal
    CHECK(Module::cont(Complex(-0.5, 0.0), HalfInt(0)).is_unitary());       // complementary edge
    CHECK(Module::cont(Complex(-0.3, 0.0), HalfInt(0)).is_unitary());       // complementary
    CHECK(!Module::cont(Complex(-0.3, 0.0), HalfInt::half()).is_unitary());
    CHECK(!Module::cont(Complex(0.7, 0.0), HalfInt::half()).is_unitary());
    CHECK(Module::finite(HalfInt(0)).is_unitary());
    CHECK(!Module::finite(HalfInt(1)).is_unitary());
}

TEST_CASE("duality swaps the discrete series") {
    CHECK(dual_module(Module::dpos(HalfInt(1))) == Module::dneg(HalfInt(1)));
    CHECK(dual_module(Module::dneg(HalfInt(1))) == Module::dpos(HalfInt(1)));
    auto f = Module::finite(HalfInt(2));
    CHECK(dual_module(f) == f);
}

TEST_CASE("casimir eigenvalue") {
    auto c = Module::cont(Complex(-0.5, 1.0), HalfInt(0));
    // -j(j+1) at j = -1/2 + i equals 5/4
    CHECK(std::abs(c.casimir() - Complex(1.25, 0.0)) < 1e-15);
}
