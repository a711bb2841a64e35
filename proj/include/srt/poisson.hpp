#ifndef SRT_POISSON_HPP
#define SRT_POISSON_HPP

#include "srt/numeric.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace srt {

/* Classical spinor phase space: a symbolic Poisson algebra over the per-leg
 * generators tau_-, tau_+, tilde-tau_-, tilde-tau_+ with
 *
 *     {tau_+, tilde-tau_-} = {tilde-tau_+, tau_-} = -i
 *
 * and all other brackets of generators vanishing.  Coefficients are exact
 * Gaussian rationals, so algebra identities can be asserted as literally zero
 * polynomials.  A small numeric layer evaluates spinors, holonomies and the
 * four Hamiltonian constraints on a triangular face. */

// ---------------------------------------------------------------------------
// exact scalars

struct Rational {
    std::int64_t num = 0, den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n) {}
    Rational(std::int64_t n, std::int64_t d);

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    Rational operator-() const { return {-num, den}; }
    bool operator==(const Rational&) const = default;
    double value() const { return static_cast<double>(num) / den; }
};

// Gaussian rational re + i*im
struct GaussRat {
    Rational re, im;

    GaussRat() = default;
    GaussRat(Rational r) : re(r) {}
    GaussRat(Rational r, Rational i) : re(r), im(i) {}
    static GaussRat i() { return {Rational(0), Rational(1)}; }

    friend GaussRat operator+(GaussRat a, GaussRat b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(GaussRat a, GaussRat b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator*(GaussRat a, GaussRat b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussRat operator-() const { return {-re, -im}; }
    bool operator==(const GaussRat&) const = default;
    bool is_zero() const { return re.num == 0 && im.num == 0; }
    Complex value() const { return {re.value(), im.value()}; }
};

// ---------------------------------------------------------------------------
// polynomials

// generator index: leg*4 + component
enum class SpinorComp { TauMinus = 0, TauPlus = 1, TtMinus = 2, TtPlus = 3 };

inline int spinor_var(int leg, SpinorComp c) { return 4 * leg + static_cast<int>(c); }

// sorted variable ids, one entry per power
using Monomial = std::vector<int>;

class PoissonPoly {
public:
    PoissonPoly() = default;

    static PoissonPoly constant(GaussRat c);
    static PoissonPoly variable(int var);

    const std::map<Monomial, GaussRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(Monomial m, GaussRat c);

    PoissonPoly& operator+=(const PoissonPoly& o);
    PoissonPoly& operator-=(const PoissonPoly& o);
    friend PoissonPoly operator+(PoissonPoly a, const PoissonPoly& b) { return a += b; }
    friend PoissonPoly operator-(PoissonPoly a, const PoissonPoly& b) { return a -= b; }
    friend PoissonPoly operator*(const PoissonPoly& a, const PoissonPoly& b);
    friend PoissonPoly operator*(GaussRat c, PoissonPoly p);
    PoissonPoly operator-() const { return GaussRat{Rational(-1)} * *this; }
    bool operator==(const PoissonPoly& o) const { return terms_ == o.terms_; }

    // numeric evaluation; `val` maps a generator index to its value
    Complex eval(const std::function<Complex(int)>& val) const;

    std::string str() const;

private:
    std::map<Monomial, GaussRat> terms_;
};

// canonical bracket extended to polynomials as a biderivation
PoissonPoly bracket(const PoissonPoly& p, const PoissonPoly& q);

// generators: tau(leg, +1) = tau_+, tau(leg, -1) = tau_-
PoissonPoly tau(int leg, int sign);
PoissonPoly tau_tilde(int leg, int sign);

// fluxes x_0 = -1/2(tau_- tt_+ + tau_+ tt_-), x_pm = pm i tau_pm tt_pm
PoissonPoly flux_x0(int leg);
PoissonPoly flux_xplus(int leg);
PoissonPoly flux_xminus(int leg);

/* vertex observables built from the bilinear form
 * B(s, t) = s_- t_+ - s_+ t_-:
 *   f_ab  = B(tau_a, tau_b),   ft_ab = B(tt_a, tt_b),
 *   e_ab  = B(tt_a,  tau_b),   et_ab = B(tau_a, tt_b) = -e_ba */
PoissonPoly obs_e(int a, int b);
PoissonPoly obs_etilde(int a, int b);
PoissonPoly obs_f(int a, int b);
PoissonPoly obs_ftilde(int a, int b);

// ---------------------------------------------------------------------------
// numeric spinors and holonomies

struct Spinor {
    Complex minus{}, plus{};
};

// a leg's covariant/contravariant pair (tau, tilde-tau)
struct SpinorPair {
    Spinor t, tt;
};

inline Complex spinor_bilinear(const Spinor& s, const Spinor& r) {
    return s.minus * r.plus - s.plus * r.minus;
}

// <tau|tau> = tt_- tau_+ - tt_+ tau_-
inline Complex pair_norm(const SpinorPair& p) { return spinor_bilinear(p.tt, p.t); }

// reality bindings: tilde-tau_pm = sign*conj(tau_mp) keeps the holonomy in
// SU(1,1) (when norms are positive); the mixed Euclidean binding
// tilde-tau_pm = mp*conj(tau_mp) keeps it in SU(2)
SpinorPair bind_lorentzian(const Spinor& t, int sign);
SpinorPair bind_euclidean(const Spinor& t);

// rescale w (both components) so that <w|w> = <tau|tau>
SpinorPair matched(const SpinorPair& tau_pair, SpinorPair w);

/* parallel-transport group element between the spinor pairs of an edge,
 *   g = (|w><tau| - |w][tau|) / sqrt(<tau|tau><w|w>);
 * det g = 1 identically.  Throws std::domain_error when a norm vanishes. */
Eigen::Matrix2cd holonomy(const SpinorPair& tau_pair, const SpinorPair& w_pair);

struct EdgeSpinors {
    SpinorPair src;  // tau, at the source vertex
    SpinorPair dst;  // w, at the target vertex
};

// the triangular face: edges labelled 2, 3, 4, flatness g2 g4^-1 g3 = 1
struct TriangleEdges {
    EdgeSpinors e2, e3, e4;
    const EdgeSpinors& edge(int label) const;
};

/* The four constraints of the cycle <abc> (a permutation of (3,4,2)),
 * built from M = 1 - g_c g_b^-1 g_a and the vertex spinors w_c, tau_a.
 * Order matches the quantum bracket types: <>, [[]], <], [>. */
std::array<Complex, 4> face_hamiltonians(const TriangleEdges& face,
                                         const std::array<int, 3>& abc);

// |H<] + H[> - H<> - H[[ - e_a e_c tr(1 - g_c g_b^-1 g_a)|
double trace_identity_residual(const TriangleEdges& face,
                               const std::array<int, 3>& abc);

}  // namespace srt

#endif
