#include "srt/poisson.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace srt {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}
Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}
Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }

PoissonPoly PoissonPoly::constant(GaussRat c) {
    PoissonPoly p;
    p.add_term({}, c);
    return p;
}

PoissonPoly PoissonPoly::variable(int var) {
    PoissonPoly p;
    p.add_term({var}, GaussRat(Rational(1)));
    return p;
}

void PoissonPoly::add_term(Monomial m, GaussRat c) {
    if (c.is_zero()) return;
    std::sort(m.begin(), m.end());
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

PoissonPoly& PoissonPoly::operator+=(const PoissonPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

PoissonPoly& PoissonPoly::operator-=(const PoissonPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

PoissonPoly operator*(const PoissonPoly& a, const PoissonPoly& b) {
    PoissonPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            out.add_term(std::move(m), ca * cb);
        }
    return out;
}

PoissonPoly operator*(GaussRat c, PoissonPoly p) {
    PoissonPoly out;
    for (const auto& [m, v] : p.terms_) out.add_term(m, c * v);
    return out;
}

Complex PoissonPoly::eval(const std::function<Complex(int)>& val) const {
    Complex total = 0.0;
    for (const auto& [m, c] : terms_) {
        Complex t = c.value();
        for (int v : m) t *= val(v);
        total += t;
    }
    return total;
}

std::string PoissonPoly::str() const {
    if (terms_.empty()) return "0";
    static const char* names[] = {"tau-", "tau+", "tt-", "tt+"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.re.num;
        if (c.re.den != 1) os << "/" << c.re.den;
        if (c.im.num != 0) {
            os << (c.im.num > 0 ? "+" : "-") << (c.im.num < 0 ? -c.im.num : c.im.num);
            if (c.im.den != 1) os << "/" << c.im.den;
            os << "i";
        }
        os << ")";
        for (int v : m) os << " " << names[v % 4] << "[" << v / 4 << "]";
    }
    return os.str();
}

namespace {

// fundamental bracket of two generators (nonzero only on the same leg)
GaussRat fundamental(int u, int v) {
    if (u / 4 != v / 4) return {};
    auto cu = static_cast<SpinorComp>(u % 4);
    auto cv = static_cast<SpinorComp>(v % 4);
    GaussRat mi = -GaussRat::i();
    if (cu == SpinorComp::TauPlus && cv == SpinorComp::TtMinus) return mi;
    if (cu == SpinorComp::TtMinus && cv == SpinorComp::TauPlus) return -mi;
    if (cu == SpinorComp::TtPlus && cv == SpinorComp::TauMinus) return mi;
    if (cu == SpinorComp::TauMinus && cv == SpinorComp::TtPlus) return -mi;
    return {};
}

// distinct variables of a monomial with multiplicities
std::vector<std::pair<int, int>> powers(const Monomial& m) {
    std::vector<std::pair<int, int>> out;
    for (int v : m) {
        if (!out.empty() && out.back().first == v)
            ++out.back().second;
        else
            out.emplace_back(v, 1);
    }
    return out;
}

Monomial erase_one(const Monomial& m, int var) {
    Monomial out = m;
    out.erase(std::find(out.begin(), out.end(), var));
    return out;
}

}  // namespace

PoissonPoly bracket(const PoissonPoly& p, const PoissonPoly& q) {
    PoissonPoly out;
    for (const auto& [mp, cp] : p.terms())
        for (const auto& [mq, cq] : q.terms())
            for (const auto& [u, ku] : powers(mp))
                for (const auto& [v, kv] : powers(mq)) {
                    GaussRat f = fundamental(u, v);
                    if (f.is_zero()) continue;
                    Monomial m = erase_one(mp, u);
                    Monomial rest = erase_one(mq, v);
                    m.insert(m.end(), rest.begin(), rest.end());
                    out.add_term(std::move(m),
                                 cp * cq * f * GaussRat(Rational(ku * kv)));
                }
    return out;
}

PoissonPoly tau(int leg, int sign) {
    return PoissonPoly::variable(
        spinor_var(leg, sign > 0 ? SpinorComp::TauPlus : SpinorComp::TauMinus));
}

PoissonPoly tau_tilde(int leg, int sign) {
    return PoissonPoly::variable(
        spinor_var(leg, sign > 0 ? SpinorComp::TtPlus : SpinorComp::TtMinus));
}

PoissonPoly flux_x0(int leg) {
    GaussRat mhalf{Rational(-1, 2)};
    return mhalf * (tau(leg, -1) * tau_tilde(leg, +1) + tau(leg, +1) * tau_tilde(leg, -1));
}

PoissonPoly flux_xplus(int leg) { return GaussRat::i() * (tau(leg, +1) * tau_tilde(leg, +1)); }

PoissonPoly flux_xminus(int leg) {
    return -GaussRat::i() * (tau(leg, -1) * tau_tilde(leg, -1));
}

PoissonPoly obs_e(int a, int b) {
    return tau_tilde(a, -1) * tau(b, +1) - tau_tilde(a, +1) * tau(b, -1);
}

PoissonPoly obs_etilde(int a, int b) { return -obs_e(b, a); }

PoissonPoly obs_f(int a, int b) {
    return tau(a, -1) * tau(b, +1) - tau(a, +1) * tau(b, -1);
}

PoissonPoly obs_ftilde(int a, int b) {
    return tau_tilde(a, -1) * tau_tilde(b, +1) - tau_tilde(a, +1) * tau_tilde(b, -1);
}

// ---------------------------------------------------------------------------
// numeric layer

namespace {

Eigen::Vector2cd ket(const SpinorPair& p) { return {p.t.minus, p.t.plus}; }
Eigen::Vector2cd ketb(const SpinorPair& p) { return {p.tt.minus, p.tt.plus}; }
Eigen::RowVector2cd bra(const SpinorPair& p) { return {-p.tt.plus, p.tt.minus}; }
Eigen::RowVector2cd brab(const SpinorPair& p) { return {-p.t.plus, p.t.minus}; }

}  // namespace

SpinorPair bind_lorentzian(const Spinor& t, int sign) {
    double s = sign >= 0 ? 1.0 : -1.0;
    return {t, {s * std::conj(t.plus), s * std::conj(t.minus)}};
}

SpinorPair bind_euclidean(const Spinor& t) {
    return {t, {std::conj(t.plus), -std::conj(t.minus)}};
}

SpinorPair matched(const SpinorPair& tau_pair, SpinorPair w) {
    Complex nw = pair_norm(w);
    if (nw == 0.0) throw std::domain_error("cannot match a null spinor pair");
    Complex s = psqrt(pair_norm(tau_pair) / nw);
    w.t.minus *= s;
    w.t.plus *= s;
    w.tt.minus *= s;
    w.tt.plus *= s;
    return w;
}

Eigen::Matrix2cd holonomy(const SpinorPair& tau_pair, const SpinorPair& w_pair) {
    Complex n2 = pair_norm(tau_pair) * pair_norm(w_pair);
    if (n2 == 0.0) throw std::domain_error("holonomy of a null spinor pair");
    return (ket(w_pair) * bra(tau_pair) - ketb(w_pair) * brab(tau_pair)) / psqrt(n2);
}

const EdgeSpinors& TriangleEdges::edge(int label) const {
    switch (label) {
        case 2: return e2;
        case 3: return e3;
        case 4: return e4;
    }
    throw std::invalid_argument("triangle edge label must be 2, 3 or 4");
}

std::array<Complex, 4> face_hamiltonians(const TriangleEdges& face,
                                         const std::array<int, 3>& abc) {
    const EdgeSpinors& ea = face.edge(abc[0]);
    const EdgeSpinors& eb = face.edge(abc[1]);
    const EdgeSpinors& ec = face.edge(abc[2]);
    Eigen::Matrix2cd ga = holonomy(ea.src, ea.dst);
    Eigen::Matrix2cd gb = holonomy(eb.src, eb.dst);
    Eigen::Matrix2cd gc = holonomy(ec.src, ec.dst);
    Eigen::Matrix2cd M = Eigen::Matrix2cd::Identity() - gc * gb.inverse() * ga;
    const SpinorPair& wc = ec.dst;
    const SpinorPair& ta = ea.src;
    return {
        (bra(wc) * M * ket(ta)).value() * (brab(wc) * ketb(ta)).value(),   // <>
        (brab(wc) * M * ketb(ta)).value() * (bra(wc) * ket(ta)).value(),   // [[]]
        (bra(wc) * M * ketb(ta)).value() * (brab(wc) * ket(ta)).value(),   // <]
        (brab(wc) * M * ket(ta)).value() * (bra(wc) * ketb(ta)).value(),   // [>
    };
}

double trace_identity_residual(const TriangleEdges& face,
                               const std::array<int, 3>& abc) {
    auto h = face_hamiltonians(face, abc);
    const EdgeSpinors& ea = face.edge(abc[0]);
    const EdgeSpinors& eb = face.edge(abc[1]);
    const EdgeSpinors& ec = face.edge(abc[2]);
    Eigen::Matrix2cd M =
        Eigen::Matrix2cd::Identity() -
        holonomy(ec.src, ec.dst) * holonomy(eb.src, eb.dst).inverse() *
            holonomy(ea.src, ea.dst);
    Complex lhs = h[2] + h[3] - h[0] - h[1];
    Complex rhs = pair_norm(ea.src) * pair_norm(ec.src) * M.trace();
    return std::abs(lhs - rhs);
}

}  // namespace srt
