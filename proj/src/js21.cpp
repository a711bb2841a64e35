#include "srt/js21.hpp"

#include <stdexcept>

namespace srt {

bool TermLess::operator()(const TermKey& a, const TermKey& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const LegWeight &x = a[i], &y = b[i];
        if (x.dj != y.dj) return x.dj < y.dj;
        if (x.eps != y.eps) return x.eps < y.eps;
        if (x.m != y.m) return x.m < y.m;
    }
    return false;
}

MultiLegState MultiLegState::basis(std::vector<LegSpec> legs,
                                   const std::vector<HalfInt>& weights) {
    if (legs.size() != weights.size())
        throw std::invalid_argument("one weight per leg required");
    TermKey key(legs.size());
    for (std::size_t i = 0; i < legs.size(); ++i) {
        if (!legs[i].mod.in_support(weights[i]))
            throw std::invalid_argument("weight outside leg support");
        key[i] = {HalfInt(0), legs[i].mod.eps, weights[i]};
    }
    MultiLegState s(std::move(legs));
    s.terms_[key] = 1.0;
    return s;
}

MultiLegState MultiLegState::basis(const Module& mod, HalfInt m) {
    return basis({LegSpec{mod, true}}, {m});
}

void MultiLegState::add(const TermKey& key, Complex amp) {
    if (key.size() != legs_.size())
        throw std::invalid_argument("term key has wrong leg count");
    Complex& slot = terms_[key];
    slot += amp;
    if (slot == 0.0) terms_.erase(key);
}

Complex MultiLegState::amp(const TermKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

MultiLegState& MultiLegState::operator+=(const MultiLegState& o) {
    if (legs_.size() != o.legs_.size())
        throw std::invalid_argument("leg mismatch in state sum");
    for (const auto& [k, v] : o.terms_) add(k, v);
    truncated_ = truncated_ || o.truncated_;
    return *this;
}

MultiLegState& MultiLegState::operator*=(Complex c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

MultiLegState operator+(MultiLegState a, const MultiLegState& b) { return a += b; }

MultiLegState operator-(MultiLegState a, const MultiLegState& b) {
    MultiLegState nb = b;
    nb *= -1.0;
    return a += nb;
}

MultiLegState operator*(Complex c, MultiLegState s) {
    s *= c;
    return s;
}

double sup_distance(const MultiLegState& a, const MultiLegState& b) {
    double worst = 0.0;
    for (const auto& [k, v] : a.terms()) worst = std::max(worst, std::abs(v - b.amp(k)));
    for (const auto& [k, v] : b.terms()) worst = std::max(worst, std::abs(v - a.amp(k)));
    return worst;
}

namespace {

// support of a raw (possibly drifted) leg label; discrete and finite labels
// stay real half-integers under the spinor shifts
bool raw_in_support(RepClass cls, const Complex& j, HalfInt eps, HalfInt m) {
    if (cls == RepClass::Continuous) return m.same_parity(eps);
    HalfInt jh = HalfInt::from_twice(std::llround(2.0 * j.real()));
    switch (cls) {
        case RepClass::DiscretePos: return m.same_parity(jh) && m >= jh + 1;
        case RepClass::DiscreteNeg: return m.same_parity(jh) && m <= -jh - 1;
        case RepClass::Finite: return m.same_parity(jh) && -jh <= m && m <= jh;
        default: return false;
    }
}

// label validity after a half-step: D± needs j >= -1/2, F needs j >= 0
bool raw_label_valid(RepClass cls, const Complex& j) {
    if (cls == RepClass::Continuous) return true;
    double bound = cls == RepClass::Finite ? 0.0 : -0.5;
    return j.real() > bound - 0.25;
}

struct SpinorAmp {
    Complex coeff;
    int dj2;  // shift of 2j
    int dm2;  // shift of 2m
};

SpinorAmp spinor_amp(SpinorOpKind op, bool ket, const Complex& j, HalfInt m) {
    double md = m.to_double();
    if (ket) {
        switch (op) {
            case SpinorOpKind::Tminus: return {-psqrt(j + md), -1, -1};
            case SpinorOpKind::Tplus: return {psqrt(j - md), -1, +1};
            case SpinorOpKind::Ttilde_minus: return {psqrt(j - md + 1.0), +1, -1};
            case SpinorOpKind::Ttilde_plus: return {psqrt(j + md + 1.0), +1, +1};
        }
    } else {  // bra side: <j,m| X := (<j,m| X) read off the ket matrix elements
        switch (op) {
            case SpinorOpKind::Tminus: return {-psqrt(j + md + 1.0), +1, +1};
            case SpinorOpKind::Tplus: return {psqrt(j - md + 1.0), +1, -1};
            case SpinorOpKind::Ttilde_minus: return {psqrt(j - md), -1, +1};
            case SpinorOpKind::Ttilde_plus: return {psqrt(j + md), -1, -1};
        }
    }
    return {0.0, 0, 0};
}

}  // namespace

MultiLegState apply_spinor(SpinorOpKind op, std::size_t leg, const MultiLegState& s) {
    if (leg >= s.legs().size()) throw std::out_of_range("leg index");
    const LegSpec& spec = s.legs()[leg];
    MultiLegState out(s.legs());
    if (s.truncated()) out.mark_truncated();

    for (const auto& [key, amp] : s.terms()) {
        const LegWeight& lw = key[leg];
        SpinorAmp a = spinor_amp(op, spec.ket, leg_j(spec, lw), lw.m);
        if (a.coeff == 0.0) continue;

        LegWeight nw;
        nw.dj = lw.dj + HalfInt::from_twice(a.dj2);
        nw.m = lw.m + HalfInt::from_twice(a.dm2);
        nw.eps = spec.mod.cls == RepClass::Continuous
                     ? (lw.eps.is_integer() ? HalfInt::half() : HalfInt(0))
                     : lw.eps;

        Complex nj = leg_j(spec, nw);
        if (!raw_label_valid(spec.mod.cls, nj)) {
            // nonzero amplitude with no target module (D± tower bottom)
            out.mark_truncated();
            continue;
        }
        if (!raw_in_support(spec.mod.cls, nj, nw.eps, nw.m)) continue;

        TermKey nk = key;
        nk[leg] = nw;
        out.add(nk, amp * a.coeff);
    }
    return out;
}

MultiLegState apply_generator(Gen21 g, std::size_t leg, const MultiLegState& s) {
    if (leg >= s.legs().size()) throw std::out_of_range("leg index");
    const bool ket = s.legs()[leg].ket;
    MultiLegState out(s.legs());
    if (s.truncated()) out.mark_truncated();

    for (const auto& [key, amp] : s.terms()) {
        const LegWeight& lw = key[leg];
        Complex j = leg_j(s.legs()[leg], lw);
        Complex coeff;
        int dm2 = 0;
        switch (g) {
            case Gen21::J0:
                coeff = ket ? Complex(lw.m.to_double()) : Complex(-lw.m.to_double());
                break;
            case Gen21::Jplus:
                // dual action: J+ <j,m| = -Gamma-(j,m) <j,m-1|
                coeff = ket ? gamma_plus(j, lw.m) : -gamma_minus(j, lw.m);
                dm2 = ket ? +2 : -2;
                break;
            case Gen21::Jminus:
                coeff = ket ? gamma_minus(j, lw.m) : -gamma_plus(j, lw.m);
                dm2 = ket ? -2 : +2;
                break;
        }
        if (coeff == 0.0) continue;
        TermKey nk = key;
        nk[leg].m += HalfInt::from_twice(dm2);
        out.add(nk, amp * coeff);
    }
    return out;
}

MultiLegState reconstruct_generator(Gen21 g, std::size_t leg, const MultiLegState& s) {
    auto T = [&](SpinorOpKind op, const MultiLegState& x) {
        return apply_spinor(op, leg, x);
    };
    const bool ket = s.legs()[leg].ket;
    // on a bra leg the dual representation is minus the transpose of the
    // quadratic word, so the two factors act in reversed order with an
    // overall sign flip
    auto word = [&](SpinorOpKind first, SpinorOpKind second) {
        return ket ? T(first, T(second, s)) : T(second, T(first, s));
    };
    Complex sgn = ket ? 1.0 : -1.0;
    switch (g) {
        case Gen21::Jplus:
            return sgn * Complex(0, 1) *
                   word(SpinorOpKind::Tplus, SpinorOpKind::Ttilde_plus);
        case Gen21::Jminus:
            return sgn * Complex(0, -1) *
                   word(SpinorOpKind::Tminus, SpinorOpKind::Ttilde_minus);
        case Gen21::J0:
            return sgn * Complex(-0.5) *
                   (word(SpinorOpKind::Tminus, SpinorOpKind::Ttilde_plus) +
                    word(SpinorOpKind::Tplus, SpinorOpKind::Ttilde_minus));
    }
    return MultiLegState(s.legs());
}

MultiLegState apply_total_generator(Gen21 g, const MultiLegState& s) {
    MultiLegState out(s.legs());
    for (std::size_t leg = 0; leg < s.legs().size(); ++leg)
        out += apply_generator(g, leg, s);
    return out;
}

MultiLegState apply_scalar(ScalarOpKind op, std::size_t a, std::size_t b,
                           const MultiLegState& s) {
    using K = SpinorOpKind;
    K first_minus{}, first_plus{};  // the leg-a factors of the two words
    K second_plus{}, second_minus{};
    switch (op) {
        case ScalarOpKind::E:
            first_minus = K::Ttilde_minus;
            first_plus = K::Ttilde_plus;
            second_plus = K::Tplus;
            second_minus = K::Tminus;
            break;
        case ScalarOpKind::F:
            first_minus = K::Tminus;
            first_plus = K::Tplus;
            second_plus = K::Tplus;
            second_minus = K::Tminus;
            break;
        case ScalarOpKind::Ftilde:
            first_minus = K::Ttilde_minus;
            first_plus = K::Ttilde_plus;
            second_plus = K::Ttilde_plus;
            second_minus = K::Ttilde_minus;
            break;
    }
    MultiLegState out = apply_spinor(first_minus, a, apply_spinor(second_plus, b, s)) -
                        apply_spinor(first_plus, a, apply_spinor(second_minus, b, s));
    if (op == ScalarOpKind::E && a == b) out += s;
    return out;
}

}  // namespace srt
