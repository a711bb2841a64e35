#include "srt/lqg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srt {

namespace {

Complex dfac(const Module& m) { return psqrt(2.0 * m.jval() + 1.0); }

Module fhalf() { return Module::finite(HalfInt::half()); }

// signed drift (in units of 1/2) of a shifted label against its original
HalfInt drift(const Module& now, const Module& orig) {
    double d = 2.0 * (now.jval().real() - orig.jval().real());
    return HalfInt::from_twice(std::llround(d));
}

}  // namespace

std::optional<Module> shift_half(const Module& m, int sign) {
    HalfInt step = sign > 0 ? HalfInt::half() : -HalfInt::half();
    switch (m.cls) {
        case RepClass::Finite:
            if ((m.j + step).twice() < 0) return std::nullopt;
            return Module::finite(m.j + step);
        case RepClass::DiscretePos:
            if ((m.j + step).twice() < -1) return std::nullopt;
            return Module::dpos(m.j + step);
        case RepClass::DiscreteNeg:
            if ((m.j + step).twice() < -1) return std::nullopt;
            return Module::dneg(m.j + step);
        case RepClass::Continuous:
            try {
                HalfInt neps = m.eps.is_integer() ? HalfInt::half() : HalfInt(0);
                return Module::cont(m.jc + 0.5 * static_cast<double>(sign), neps);
            } catch (const std::invalid_argument&) {
                return std::nullopt;
            }
    }
    return std::nullopt;
}

NodeAction node_action(RacahEngine& eng, ScalarOpKind op, int a, int b,
                       const TriNode& node) {
    double sign = 1.0;
    if (op != ScalarOpKind::E && a > b) {  // F_ba = -F_ab, F~_ba = -F~_ab
        std::swap(a, b);
        sign = -1.0;
    }
    const bool lr = node.kind == NodeKind::LeftRight;
    const bool swapped = op == ScalarOpKind::E && a > b;  // E with reversed slots
    if (swapped) std::swap(a, b);

    int d1 = 0, d2 = 0;  // half-step shifts of the two slots, in tabulated order
    if (lr && a == 1 && b == 2) {
        switch (op) {
            case ScalarOpKind::E:
                sign *= swapped ? -1.0 : +1.0;
                d1 = swapped ? +1 : -1;
                d2 = -d1;
                break;
            case ScalarOpKind::F: sign *= -1.0; d1 = +1; d2 = +1; break;
            case ScalarOpKind::Ftilde: sign *= -1.0; d1 = -1; d2 = -1; break;
        }
    } else if (!lr && a == 1 && b == 2) {
        switch (op) {
            case ScalarOpKind::E:
                sign *= swapped ? +1.0 : -1.0;
                d1 = swapped ? -1 : +1;
                d2 = -d1;
                break;
            case ScalarOpKind::F: sign *= -1.0; d1 = -1; d2 = -1; break;
            case ScalarOpKind::Ftilde: sign *= -1.0; d1 = +1; d2 = +1; break;
        }
    } else if (lr && a == 2 && b == 3) {
        switch (op) {
            case ScalarOpKind::E:
                d1 = swapped ? +1 : -1;
                d2 = d1;
                break;
            case ScalarOpKind::F: d1 = +1; d2 = -1; break;
            case ScalarOpKind::Ftilde: sign *= -1.0; d1 = -1; d2 = +1; break;
        }
    } else {
        throw std::invalid_argument("unsupported node slot pair");
    }

    NodeAction out;
    out.node = node;
    if (a == 1) {  // slot pair (1,2): prefactor D(k1) D(j2), key [k1 1/2 j1; j2 j3 k2]
        auto k1 = shift_half(node.j[0], d1);
        auto k2 = shift_half(node.j[1], d2);
        if (!k1 || !k2) return out;
        Complex r = eng.value(*k1, fhalf(), node.j[0], node.j[1], node.j[2], *k2);
        out.coeff = sign * dfac(*k1) * dfac(node.j[1]) * r;
        out.node.j[0] = *k1;
        out.node.j[1] = *k2;
    } else {  // slot pair (2,3): prefactor D(j2) D(j3), key [j1 j2 j3; 1/2 k3 k2]
        auto k2 = shift_half(node.j[1], d1);
        auto k3 = shift_half(node.j[2], d2);
        if (!k2 || !k3) return out;
        Complex r = eng.value(node.j[0], node.j[1], node.j[2], fhalf(), *k3, *k2);
        out.coeff = sign * dfac(node.j[1]) * dfac(node.j[2]) * r;
        out.node.j[1] = *k2;
        out.node.j[2] = *k3;
    }
    return out;
}

namespace {

// one factor of a Hamiltonian word: X_{p,q} with legs p, q in {2,3,4};
// tilde-E is E with swapped legs and a sign flip
struct WordOp {
    ScalarOpKind kind;
    int p, q;
    double sgn = 1.0;
};

WordOp E(int p, int q) { return {ScalarOpKind::E, p, q, +1.0}; }
WordOp Et(int p, int q) { return {ScalarOpKind::E, q, p, -1.0}; }
WordOp F(int p, int q) { return {ScalarOpKind::F, p, q, +1.0}; }
WordOp Ft(int p, int q) { return {ScalarOpKind::Ftilde, p, q, +1.0}; }

struct TetState {
    TriNode A, B, C;
    Complex coeff{1.0};
};

// leg -> (node index, slot) inside the triangle:
//   A = lr(j1, j2, j3)  carries legs 2, 3 at slots 2, 3,
//   B = lr(j3, j4, j5)  carries legs 3, 4 at slots 1, 2,
//   C = rl(j2, j4, j6)  carries legs 2, 4 at slots 1, 2
void apply_word_op(RacahEngine& eng, const WordOp& w, TetState& st) {
    if (st.coeff == 0.0) return;
    TriNode* node = nullptr;
    int sa = 0, sb = 0;
    auto slot = [](int leg, int lo) { return leg == lo ? 1 : 2; };
    int lo = std::min(w.p, w.q), hi = std::max(w.p, w.q);
    if (lo == 2 && hi == 3) {
        node = &st.A;
        sa = w.p == 2 ? 2 : 3;
        sb = w.q == 2 ? 2 : 3;
    } else if (lo == 3 && hi == 4) {
        node = &st.B;
        sa = slot(w.p, 3);
        sb = slot(w.q, 3);
    } else if (lo == 2 && hi == 4) {
        node = &st.C;
        sa = slot(w.p, 2);
        sb = slot(w.q, 2);
    } else {
        throw std::invalid_argument("Hamiltonian leg pair outside the triangle");
    }
    NodeAction act = node_action(eng, w.kind, sa, sb, *node);
    st.coeff *= w.sgn * act.coeff;
    *node = act.node;
}

}  // namespace

std::vector<TetTerm> hamiltonian_apply(RacahEngine& eng, BracketType type,
                                       const std::array<int, 3>& abc,
                                       const TetNetwork& net) {
    const int a = abc[0], b = abc[1], c = abc[2];
    {
        std::array<int, 3> sorted = abc;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != std::array<int, 3>{2, 3, 4})
            throw std::invalid_argument("cycle must be a permutation of (2,3,4)");
    }
    const Module& jb = b == 2 ? net.j2 : (b == 3 ? net.j3 : net.j4);
    const Complex eb_inv = 1.0 / (2.0 * jb.jval() + 1.0);

    // words are listed rightmost factor first (the order they act in)
    struct TermSpec {
        Complex pref;
        std::vector<WordOp> word;
    };
    std::vector<TermSpec> specs;
    switch (type) {
        case BracketType::AngleAngle:
            specs = {{1.0, {Et(c, a), E(c, a)}},
                     {-eb_inv, {Et(c, a), E(b, a), E(c, b)}},
                     {+eb_inv, {Et(c, a), F(b, a), Ft(c, b)}}};
            break;
        case BracketType::DoubleBracket:
            specs = {{1.0, {E(c, a), Et(c, a)}},
                     {-eb_inv, {E(c, a), Ft(b, a), F(c, b)}},
                     {+eb_inv, {E(c, a), Et(b, a), Et(c, b)}}};
            break;
        case BracketType::AngleBracket:
            specs = {{1.0, {F(c, a), Ft(c, a)}},
                     {-eb_inv, {F(c, a), Ft(b, a), E(c, b)}},
                     {+eb_inv, {F(c, a), Et(b, a), Ft(c, b)}}};
            break;
        case BracketType::BracketAngle:
            specs = {{1.0, {Ft(c, a), F(c, a)}},
                     {-eb_inv, {Ft(c, a), E(b, a), F(c, b)}},
                     {+eb_inv, {Ft(c, a), F(b, a), Et(c, b)}}};
            break;
    }

    std::vector<TetTerm> out;
    for (const auto& spec : specs) {
        TetState st{{NodeKind::LeftRight, {net.j1, net.j2, net.j3}},
                    {NodeKind::LeftRight, {net.j3, net.j4, net.j5}},
                    {NodeKind::RightLeft, {net.j2, net.j4, net.j6}}};
        for (const auto& w : spec.word) apply_word_op(eng, w, st);

        TetTerm term;
        term.coeff = spec.pref * st.coeff;
        if (term.coeff != 0.0) {
            // the two copies of each internal edge must have shifted together
            term.dj2 = drift(st.A.j[1], net.j2);
            term.dj3 = drift(st.A.j[2], net.j3);
            term.dj4 = drift(st.B.j[1], net.j4);
            if (term.dj2 != drift(st.C.j[0], net.j2) ||
                term.dj3 != drift(st.B.j[0], net.j3) ||
                term.dj4 != drift(st.C.j[1], net.j4))
                throw std::logic_error("internal edge labels failed to re-glue");
        }
        out.push_back(term);
    }
    return out;
}

double annihilation_residual(RacahEngine& eng, BracketType type,
                             const std::array<int, 3>& abc, const TetNetwork& net) {
    std::vector<TetTerm> terms = hamiltonian_apply(eng, type, abc, net);
    Complex total = 0.0;
    double scale = 0.0;
    for (const auto& t : terms) {
        if (t.coeff == 0.0) continue;
        // apply the recorded drifts to the external labels
        auto apply_drift = [](const Module& m, HalfInt d) -> Module {
            Module r = m;
            while (d.twice() > 0) { r = *shift_half(r, +1); d -= HalfInt::half(); }
            while (d.twice() < 0) { r = *shift_half(r, -1); d += HalfInt::half(); }
            return r;
        };
        Module m2 = apply_drift(net.j2, t.dj2);
        Module m3 = apply_drift(net.j3, t.dj3);
        Module m4 = apply_drift(net.j4, t.dj4);
        Complex amp = t.coeff * eng.value(net.j1, m2, m3, m4, net.j5, net.j6);
        total += amp;
        scale = std::max(scale, std::abs(amp));
    }
    return scale == 0.0 ? 0.0 : std::abs(total) / scale;
}

std::string annihilation_report(RacahEngine& eng, BracketType type,
                                const std::array<int, 3>& abc, const TetNetwork& net) {
    std::size_t before = eng.cached_keys();
    double residual = annihilation_residual(eng, type, abc, net);
    static const char* names[] = {"<>", "[[]]", "<]", "[>"};
    nlohmann::json out;
    out["labels"] = {net.j1.str(), net.j2.str(), net.j3.str(),
                     net.j4.str(), net.j5.str(), net.j6.str()};
    out["variant"] = names[static_cast<int>(type)];
    out["cycle"] = abc;
    out["residual"] = residual;
    out["window"] = eng.initial_window();
    out["racah_calls"] = eng.cached_keys() - before;
    return out.dump();
}

}  // namespace srt
