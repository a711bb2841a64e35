#include "srt/rep21.hpp"

#include <sstream>

namespace srt {

static void check_discrete_j(HalfInt j) {
    if (j.twice() < -1) throw std::invalid_argument("discrete label needs j >= -1/2");
}

Module Module::dpos(HalfInt j) {
    check_discrete_j(j);
    Module m;
    m.cls = RepClass::DiscretePos;
    m.j = j;
    return m;
}

Module Module::dneg(HalfInt j) {
    check_discrete_j(j);
    Module m;
    m.cls = RepClass::DiscreteNeg;
    m.j = j;
    return m;
}

Module Module::cont(Complex j, HalfInt eps) {
    if (eps != HalfInt(0) && eps != HalfInt::half())
        throw std::invalid_argument("continuous parity must be 0 or 1/2");
    // canonical representative of j <-> -j-1
    if (j.real() < -0.5 || (j.real() == -0.5 && j.imag() < 0.0)) j = -j - 1.0;
    if (j.imag() == 0.0) {
        // real half-integer j with j - eps integral would contain a discrete
        // or finite invariant subspace; excluded from the continuous class
        double t = 2.0 * j.real();
        if (std::abs(t - std::round(t)) < 1e-12) {
            HalfInt jh = HalfInt::from_twice(static_cast<std::int64_t>(std::llround(t)));
            if (jh.same_parity(eps))
                throw std::invalid_argument("continuous label j=" + jh.str() +
                                            " collides with parity eps=" + eps.str());
        }
    }
    Module m;
    m.cls = RepClass::Continuous;
    m.jc = j;
    m.eps = eps;
    return m;
}

Module Module::finite(HalfInt j) {
    if (j.twice() < 0) throw std::invalid_argument("finite label needs j >= 0");
    Module m;
    m.cls = RepClass::Finite;
    m.j = j;
    return m;
}

bool Module::in_support(HalfInt m) const {
    switch (cls) {
        case RepClass::DiscretePos:
            return m.same_parity(j) && m >= j + 1;
        case RepClass::DiscreteNeg:
            return m.same_parity(j) && m <= -j - 1;
        case RepClass::Continuous:
            return m.same_parity(eps);
        case RepClass::Finite:
            return m.same_parity(j) && -j <= m && m <= j;
    }
    return false;
}

std::optional<HalfInt> Module::lowest() const {
    if (cls == RepClass::DiscretePos) return j + 1;
    if (cls == RepClass::Finite) return -j;
    return std::nullopt;
}

std::optional<HalfInt> Module::highest() const {
    if (cls == RepClass::DiscreteNeg) return -j - 1;
    if (cls == RepClass::Finite) return j;
    return std::nullopt;
}

HalfInt Module::lattice_eps() const {
    HalfInt base = cls == RepClass::Continuous ? eps : j;
    return base.is_integer() ? HalfInt(0) : HalfInt::half();
}

bool Module::is_unitary() const {
    switch (cls) {
        case RepClass::DiscretePos:
        case RepClass::DiscreteNeg:
            return true;  // whole allowed range j >= -1/2
        case RepClass::Continuous:
            if (jc.real() == -0.5 && jc.imag() != 0.0) return true;  // principal
            return jc.imag() == 0.0 && eps == HalfInt(0) &&
                   jc.real() > -1.0 && jc.real() < 0.0;  // complementary
        case RepClass::Finite:
            return j == HalfInt(0);                            // trivial only
    }
    return false;
}

std::string Module::str() const {
    std::ostringstream os;
    switch (cls) {
        case RepClass::DiscretePos: os << "D+_" << j.str(); break;
        case RepClass::DiscreteNeg: os << "D-_" << j.str(); break;
        case RepClass::Continuous:
            os << "C^" << eps.str() << "_(" << jc.real();
            if (jc.imag() != 0.0) os << (jc.imag() > 0 ? "+" : "") << jc.imag() << "i";
            os << ")";
            break;
        case RepClass::Finite: os << "F_" << j.str(); break;
    }
    return os.str();
}

Complex gamma_plus(Complex j, HalfInt m) {
    double md = m.to_double();
    return Complex(0, 1) * psqrt(j - md) * psqrt(j + md + 1.0);
}

Complex gamma_minus(Complex j, HalfInt m) {
    double md = m.to_double();
    return Complex(0, 1) * psqrt(j + md) * psqrt(j - md + 1.0);
}

Module dual_module(const Module& V) {
    switch (V.cls) {
        case RepClass::DiscretePos: return Module::dneg(V.j);
        case RepClass::DiscreteNeg: return Module::dpos(V.j);
        case RepClass::Continuous: return V;
        case RepClass::Finite: return V;
    }
    return V;
}

}  // namespace srt
