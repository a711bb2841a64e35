#ifndef SRT_SOSTAR_HPP
#define SRT_SOSTAR_HPP

#include "srt/numeric.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace srt {

/* SO*(2n) group elements, the bounded domain of antisymmetric matrices
 * labelling their coherent intertwiners, expectation values of the u(n)
 * area operators, and a brute-force Fock-space oracle over the 2n harmonic
 * oscillators of the per-leg spinor decomposition. */

// ---------------------------------------------------------------------------
// group elements and the bounded domain

struct SOStarElement {
    Matrix A, B;  // element = [[A, B], [-conj(B), conj(A)]]

    Eigen::Index legs() const { return A.rows(); }
    Matrix full() const;
    SOStarElement inverse() const;  // [[A*, B^T], [-B*, A^T]]

    // worst residual of the four block conditions
    //   AA* - BB* = 1, A*A - B^T conj(B) = 1, A*B = -B^T conj(A), BA^T = -AB^T
    double membership_residual() const;

    static SOStarElement identity(Eigen::Index n);
    friend SOStarElement operator*(const SOStarElement& g, const SOStarElement& h);
};

struct DomainPoint {
    Matrix zeta;  // antisymmetric, zeta* zeta < 1

    Eigen::Index legs() const { return zeta.rows(); }
    double antisymmetry_residual() const;
    double spectral_norm() const;  // largest singular value
    bool in_domain(double tol = 1e-9) const;
};

// random antisymmetric point scaled to the given spectral norm
DomainPoint random_domain_point(Eigen::Index n, double spectral_norm,
                                std::uint64_t seed);
// single-block rank-2 point with tr(zeta* zeta) = trace
DomainPoint rank2_point(Eigen::Index n, double trace);

// the coset representative [[X, zeta conj(X)], [zeta* X, conj(X)]],
// X = sqrt((1 - zeta zeta*)^{-1}); maps 0 to zeta under the Moebius action
SOStarElement g_zeta(const DomainPoint& z);

// holomorphic action g(zeta) = (A zeta + B)(-conj(B) zeta + conj(A))^{-1}
DomainPoint mobius(const SOStarElement& g, const DomainPoint& z);

/* Block UDL decomposition g = raising * diagonal * lowering with
 * raising  = [[1, B conj(A)^{-1}], [0, 1]]        (exp of an F~ element)
 * diagonal = [[(A*)^{-1}, 0], [0, conj(A)]]       (exp of an E element)
 * lowering = [[1, 0], [-conj(A)^{-1} conj(B), 1]] (exp of an F element);
 * the factors land in the complexification unless B = 0. */
struct UDLFactors {
    Matrix raising, diagonal, lowering;  // 2n x 2n
    Matrix product() const { return raising * diagonal * lowering; }
};
UDLFactors udl_decompose(const SOStarElement& g);

// ---------------------------------------------------------------------------
// coherent-state analytics

// <omega|zeta> = det(1-z*z)^1/2 det(1-w*w)^1/2 / det(1-w*z)
Complex inner_product(const DomainPoint& omega, const DomainPoint& zeta);

// <omega|X|zeta>/<omega|zeta> for the three generator families
struct GeneratorMatrixElements {
    Matrix E;       // 1 + 2 w*z (1-w*z)^{-1}
    Matrix F;       // 2 z (1-w*z)^{-1}, antisymmetric
    Matrix Ftilde;  // 2 (1-w*z)^{-1} conj(w)
};
GeneratorMatrixElements generator_matrix_elements(const DomainPoint& omega,
                                                  const DomainPoint& zeta);

struct AreaStatistics {
    Matrix pair_mean;                // <A_ab> = [z*z (1-z*z)^{-1}]_ab
    std::vector<double> leg_mean;    // diagonal
    std::vector<double> leg_variance;
    double total_mean = 0;
    double total_variance = 0;
    double coefficient_of_variation = 0;  // sqrt(Var)/mean, 0 at zeta = 0
};
AreaStatistics area_statistics(const DomainPoint& z);

/* Total-area distribution P(J) = det(1-z*z) (tr(z*z)/2)^J (J+1), valid for
 * rank-2 points only (throws std::invalid_argument otherwise); extended until
 * the analytic geometric tail drops below `tail`. */
std::vector<double> rank2_distribution(const DomainPoint& z, double tail = 1e-12);

/* Face normals of the semi-classical polyhedron: spinors are built from the
 * canonical form zeta = U M U^T, one pair of columns per nonzero block, and
 * V^(a) = sum_alpha <z|sigma|z>/2.  Closure sum_a V^(a) = 0 always holds;
 * |V^(a)| = <A_a> is a rank-2 identity only. */
struct SemiclassicalNormals {
    std::vector<Eigen::Vector3d> normals;
    double closure_residual() const;
};
SemiclassicalNormals semiclassical_normals(const DomainPoint& z);

/* Bogoliubov view: the 4n x 4n symplectic image [[U, V], [conj V, conj U]] of
 * g, with U = diag(A, A), V = [[0, -B], [B, 0]]; squeeze() = -U^{-1} V is the
 * symmetric matrix of the associated squeezed vacuum, and for g_zeta^{-1} it
 * equals [[0, -zeta], [zeta, 0]]. */
struct BogoliubovView {
    Matrix U, V;
    Matrix squeeze() const;
    double membership_residual() const;  // UU+ - VV+ = 1, UV^T = VU^T
};
BogoliubovView bogoliubov_embed(const SOStarElement& g);

// ---------------------------------------------------------------------------
// Fock oracle

/* Occupation-basis states over the 2n oscillators (A_1..A_n, B_1..B_n),
 * packed 8 bits per mode.  Everything acts exactly on the truncated span, so
 * area-preserving and area-lowering operators are error-free; only the
 * coherent-state construction itself truncates. */
struct FockState {
    Eigen::Index n = 0;
    std::unordered_map<std::uint64_t, Complex> amp;

    void add(std::uint64_t key, Complex c);
};

FockState fock_vacuum(Eigen::Index n);
std::uint64_t fock_key(const std::vector<int>& occ);  // size 2n, entries < 256
int fock_total_quanta(std::uint64_t key, Eigen::Index n);

Complex fock_inner(const FockState& bra, const FockState& ket);
double fock_norm(const FockState& s);

enum class Ladder { A, Adag, B, Bdag };
FockState fock_ladder(Ladder op, int leg, const FockState& s);

FockState fock_E(int a, int b, const FockState& s);       // A+aAb + B+aBb + dab
FockState fock_F(int a, int b, const FockState& s);       // BaAb - AaBb
FockState fock_Ftilde(int a, int b, const FockState& s);  // B+aA+b - A+aB+b

// (1/2) Ftilde_zeta = sum_{a<b} zeta_ab Ftilde_ab
FockState fock_half_ftilde(const Matrix& zeta, const FockState& s);

// components with total area J (i.e. 2J quanta)
FockState fock_area_shell(const FockState& s, int J);

// det(1-z*z)^1/2 sum_{J<=J_max} (1/J!) ((1/2) Ftilde_z)^J |0>
FockState fock_coherent(const DomainPoint& z, int J_max = 24);

/* Estimated weight of the dropped shells, from the top-shell norms assuming
 * the observed geometric decay continues; used to confirm that a truncated
 * comparison actually resolves the requested tolerance. */
double fock_tail_estimate(const DomainPoint& z, int J_max);

// exponential actions, for transporting coherent states by group elements
FockState fock_exp_half_ftilde(const Matrix& T, const FockState& s, int J_max);
FockState fock_exp_half_f(const Matrix& T, const FockState& s);  // nilpotent
FockState fock_exp_E(const Matrix& L, const FockState& s, double tol = 1e-16);

// N_J (Ftilde_12)^J |0>, N_J = 1/sqrt(J! (J+1)!); unit norm, E_ab kills a < b
FockState fock_highest_weight(Eigen::Index n, int J);

/* Dimension of the invariant (total-area J) subspace: numeric kernel of the
 * raising ladder sum_a A+aBa restricted to the zero-weight sector, rank via
 * sparse QR; the closed form is (1/(J+1)) C(J+n-1, J) C(J+n-2, J). */
int invariant_dimension(int n, int J);
long long invariant_dimension_formula(int n, int J);

// ---------------------------------------------------------------------------
// reports

std::string distribution_csv(const DomainPoint& z, int J_count);
std::string area_statistics_json(const DomainPoint& z);

}  // namespace srt

#endif
