#ifndef SRT_SPIN31_HPP
#define SRT_SPIN31_HPP

#include "srt/cg21.hpp"  // NotDecomposable / UnsupportedCoupling
#include "srt/halfint.hpp"
#include "srt/numeric.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srt {

/* Modules of the 3+1 Lorentz algebra
 *   [J_a, J_b] = i eps_ab^c J_c,  [J_a, K_b] = i eps_ab^c K_c,
 *   [K_a, K_b] = -i eps_ab^c J_c,
 * realized as towers of su(2) weight spaces |(l,r) j, m>, j = |l|, |l|+1, ...
 * The boosts act in a three-band pattern (j-1, j, j+1) with reduced factors
 * P(j), P-(j), P+(j) = P-(j+1); the tower terminates at j_max = |r|-1 exactly
 * when r is real with |r| in |l|+1, |l|+2, ... */

struct UnsupportedLabel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// labels

struct Rep4Label {
    HalfInt lambda{};
    Complex rho{};

    Rep4Label() = default;
    Rep4Label(HalfInt l, Complex r) : lambda(l), rho(r) {}

    // (l, r) ~ (-l, -r); resolved to l > 0, or l = 0 with Im r >= 0 (Re r >= 0
    // when r is real)
    Rep4Label canonical() const;

    bool is_finite() const;
    std::optional<HalfInt> j_max() const;  // |r| - 1 when finite
    HalfInt j_min() const { return abs(lambda); }

    // principal (r imaginary), complementary (l = 0, 0 < |r| < 1) or trivial
    bool is_unitary() const;

    std::string str() const;
};

bool same_label(const Rep4Label& a, const Rep4Label& b, double tol = 1e-9);

// Casimir scalars (C1, C2) = (i l r, l^2 + r^2 - 1)
std::pair<Complex, Complex> casimir_values(const Rep4Label& l);

/* Finite-dimensional dictionary: the su(2) x su(2) pair (j1, j2) labels the
 * module with l = |j1 - j2| and r = j1 + j2 + 1, taken negative when
 * j1 >= j2.  finite_pair inverts it; throws UnsupportedLabel on an
 * infinite-dimensional input. */
Rep4Label finite_label(HalfInt j1, HalfInt j2);
std::pair<HalfInt, HalfInt> finite_pair(const Rep4Label& l);

// ---------------------------------------------------------------------------
// boost reduced matrix elements

Complex boost_P(const Rep4Label& l, HalfInt j);       // diagonal band, 0 at j=0
Complex boost_Pminus(const Rep4Label& l, HalfInt j);  // j -> j-1
Complex boost_Pplus(const Rep4Label& l, HalfInt j);   // j -> j+1, = P-(j+1)

// ---------------------------------------------------------------------------
// tower states

struct SU2TowerState {
    Rep4Label label;
    HalfInt j_cut{};  // contributions with j > j_cut are dropped
    std::map<std::pair<std::int64_t, std::int64_t>, Complex> amp;  // (2j, 2m)

    static SU2TowerState basis(const Rep4Label& l, HalfInt j_cut, HalfInt j,
                               HalfInt m);

    void add(HalfInt j, HalfInt m, Complex c);
    Complex at(HalfInt j, HalfInt m) const;

    SU2TowerState& operator+=(const SU2TowerState& o);
    SU2TowerState& operator-=(const SU2TowerState& o);
    friend SU2TowerState operator+(SU2TowerState a, const SU2TowerState& b) { return a += b; }
    friend SU2TowerState operator-(SU2TowerState a, const SU2TowerState& b) { return a -= b; }
    friend SU2TowerState operator*(Complex c, SU2TowerState s);
};

double sup_norm(const SU2TowerState& s);
double sup_distance(const SU2TowerState& a, const SU2TowerState& b);

// ---------------------------------------------------------------------------
// generator action

enum class Gen31 { J0, Jplus, Jminus, K0, Kplus, Kminus };

/* Single-generator action on a tower state.  Rotations stay in the j band;
 * boosts spread to j-1, j, j+1 with the P factors above.  Amplitudes pushed
 * past j_cut are discarded, so products of k generators are exact only on
 * amplitudes reachable from j <= j_cut - k. */
SU2TowerState boost_apply(Gen31 g, const SU2TowerState& s);

// ---------------------------------------------------------------------------
// gamma = 1/2 coupling

/* Coupling of the two-dimensional left (A = -1) or right (A = +1) module with
 * V_{l,r}: the product splits into V_{l+s/2, r+sA/2}, s = +-1, and the
 * change of basis on each total-spin space is the closed-form 2x2 table.
 * Columns are bilinearly orthonormal: sum_j B(s,j) B(s',j) = delta_ss'. */
struct CG4Half {
    Rep4Label source;
    int A = 1;

    Rep4Label target(int sigma) const;  // sigma = +-1
    // B{(l+s/2, r+sA/2) J | (1/2)_A; (l,r) j}; zero unless j = J -+ 1/2, j >= |l|
    Complex coeff(HalfInt J, int sigma, HalfInt j) const;
};

// throws NotDecomposable when r = -A l (coincident Casimir pairs)
CG4Half cg4_half(const Rep4Label& l, int A);

// ---------------------------------------------------------------------------
// decomposability frontier

/* F^A_g (x) V_{l,r} (V infinite-dimensional) decomposes iff r + A l is not an
 * integer in (-2g, 2g); the two-sided (g1, g2) product needs both conditions. */
bool decomposable4(const Rep4Label& l, HalfInt gamma, int A);
bool decomposable4_pair(const Rep4Label& l, HalfInt gamma1, HalfInt gamma2);

// ---------------------------------------------------------------------------
// total-spin support

// least element of the total-j set: max(eps, |l| - g), eps the parity of l+g
HalfInt total_j_min(HalfInt lambda, HalfInt gamma);
// the j values contributing to the total-spin-J space, ascending
std::vector<HalfInt> omega_j(HalfInt lambda, HalfInt gamma, HalfInt J);

// ---------------------------------------------------------------------------
// Casimir blocks on V_J

struct CasimirBlock {
    Rep4Label source;
    HalfInt gamma{};
    int A = 1;
    HalfInt J{};

    std::vector<HalfInt> js;  // row/column order
    Matrix C1, C2;            // tridiagonal; column = source j

    bool decomposable = false;        // frontier predicate (infinite-dim source)
    std::vector<Rep4Label> predicted; // (l+nu, r+A nu) with |l+nu| <= J
    // simultaneous (C1, C2) eigenvectors summed over the distinct predicted
    // pairs; < js.size() exactly when the block carries a Jordan cell
    int eigenvector_count = 0;
};

CasimirBlock casimir_block(const Rep4Label& l, HalfInt gamma, int A, HalfInt J);

// ---------------------------------------------------------------------------
// general-gamma coupling table on V_J

/* Simultaneous eigenbasis of the two Casimir blocks, J >= |l| + gamma.
 * Column nu solves C1 v = i(l+nu)(r+A nu) v, bilinearly normalized
 * (v^T v = 1) with the sign pinned against the half-step chain value of the
 * j = J-gamma component.  The edge columns nu = +-gamma reproduce the chain
 * value exactly; interior chain values mix in the gamma-1 channel of the
 * stepwise product and only fix the sign. */
struct CG4Table {
    Rep4Label source;
    HalfInt gamma{};
    int A = 1;
    HalfInt J{};

    std::vector<HalfInt> js;        // rows, J-gamma .. J+gamma
    std::vector<Rep4Label> labels;  // columns, nu ascending
    Matrix B;                       // B(j, nu); B^T B = 1

    double orthogonality_residual() const;  // max |B^T B - 1|
};

CG4Table cg4_table(const Rep4Label& l, HalfInt gamma, int A, HalfInt J);

/* Chain value for the j = J-g component of the (l+nu, r+A nu) column, built by
 * composing half-step couplings (J >= |l|+g).  Equals the stretched-state
 * coefficient B{(l+nu, r+A nu) J | g_A; (l,r) J-g} when nu = +-g, where the
 * coupling is single-channel; for |nu| < g the predicted pair is degenerate in
 * the stepwise product and the chain value is a fixed-phase mixture, reliable
 * as a sign reference only. */
Complex cg4_stretched(const Rep4Label& l, HalfInt gamma, int A, HalfInt J,
                      HalfInt nu);

/* J-independence of the j = J-g table-row ratios after dividing out
 * sqrt(J+L+1) sqrt(J+AP+1) / (sqrt(J-L) sqrt(J-AP)); returns the worst
 * relative spread between J0 and J0 + n. */
double cg4_ratio_spread(const Rep4Label& l, HalfInt gamma, int A, HalfInt J0,
                        int n = 3);

// ---------------------------------------------------------------------------
// Jordan-Schwinger operators

enum class JS4Kind { T, Ttilde };

/* Spinor ladder: T^A shifts the label to (l-1/2, r-A/2), Ttilde^A to
 * (l+1/2, r+A/2), with the two-band (j -+ 1/2) matrix elements; they obey
 * [T^A_+, Tt^B_-] = [Tt^A_+, T^B_-] = delta^AB and build the su(2) x su(2)
 * halves as M^A_+- = +-T^A_+- Tt^A_+-, M^A_0 = -(T^A_- Tt^A_+ + T^A_+ Tt^A_-)/2.
 * Throws UnsupportedLabel when r = +-l or r = +-(l+1). */
SU2TowerState js4_apply(JS4Kind kind, int A, int mu, const SU2TowerState& s);

// ---------------------------------------------------------------------------
// serialization

std::string rep4_to_json(const Rep4Label& l);
Rep4Label rep4_from_json(const std::string& text);
std::string casimir_block_to_csv(const CasimirBlock& b);

}  // namespace srt

#endif
