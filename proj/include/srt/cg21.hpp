#ifndef SRT_CG21_HPP
#define SRT_CG21_HPP

#include "srt/rep21.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace srt {

struct NotDecomposable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedCoupling : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WindowTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// decomposition label sets

enum class MeasureTag { Sum, Integral };

struct DecompositionEntry {
    Module label;  // for Integral entries: the class/parity representative
    int multiplicity = 1;
    MeasureTag measure = MeasureTag::Sum;
    bool coefficients_available = true;
};

struct DecompositionSet {
    std::vector<DecompositionEntry> entries;
    bool truncated = false;  // an infinite discrete tower was cut at the window

    bool contains(const Module& m) const;
};

/* Label set of V1 (x) V2.  Unbounded discrete towers are truncated after
 * `window` members.  Throws NotDecomposable exactly on the known frontier
 * (F_g (x) D with j <= g-1; F_g (x) C with half-integer j unless j > g-1 or
 * j < -g), UnsupportedCoupling outside the supported list. */
DecompositionSet decompose(const Module& a, const Module& b, int window = 40);

// non-throwing frontier predicate
bool decomposable(const Module& a, const Module& b);

// ---------------------------------------------------------------------------
// Clebsch-Gordan tables

struct CoupledLabel {
    Module mod;    // canonical label
    Complex jraw;  // j-value used inside ladder/Casimir formulas (uncanonicalized)
};

struct CGBlock {
    HalfInt M;
    std::vector<HalfInt> m1;           // rows: weight of the first factor (m2 = M - m1)
    std::vector<CoupledLabel> labels;  // columns
    Matrix B;                          // B(J,M | m1, M-m1); A = B^T per block (A==B convention)

    int row_of(HalfInt m) const;          // -1 if absent
    int col_of(const Module& mod) const;  // -1 if absent
};

class CGTable {
public:
    Module v1, v2;
    int window = 40;
    bool swapped = false;  // built from the reversed coupling via the (-1)^(J-j-g) rule
    std::vector<CGBlock> blocks;  // ascending M, unit weight steps

    const CGBlock* block(HalfInt M) const;
    // B(J,M|v1,m1;v2,M-m1); zero when out of support, throws if M outside the window
    Complex coeff(const Module& J, HalfInt M, HalfInt m1) const;

    // max block residual of B^T B - 1 and B B^T - 1
    double orthogonality_residual() const;
    // max residual of the three-term ladder recursion over interior weights
    double recursion_residual() const;
    // M-independence of the ratio B(J+1,M|g,-g;.)/B(J,M|g,-g;.) / sqrt-factor
    bool ratio_check(double tol = 1e-8, double* worst = nullptr) const;
};

/* Main entry point.  Supported: F (x) {F, D+, D-, C}, their reverses (swap
 * rule), and same-sign D (x) D.  The window bounds the number of weight
 * blocks beyond the natural anchor. */
CGTable cg_table(const Module& a, const Module& b, int window = 40);

// named forms mirroring the operation list
CGTable cg_finite_discrete(HalfInt gamma, HalfInt j, int sign, int window = 40);
CGTable cg_finite_continuous(HalfInt gamma, Complex j, HalfInt eps, int window = 40);
CGTable cg_discrete_discrete(HalfInt j, HalfInt jp, int sign, int window = 40);

/* Lowest-weight vector psi_(mu) of F_g (x) D+_j expressed over nu = -g..g,
 * paired with second-factor weight m = j + 1 + mu - nu; entry nu > mu is 0. */
Vector lowest_weight_vector(HalfInt gamma, HalfInt j, HalfInt mu);

// rows of the weight-M subspace of a (x) b, ascending first-factor weight
std::vector<HalfInt> block_rows(const Module& a, const Module& b, HalfInt M);
// dense total Casimir on that subspace
Matrix q_block(const Module& a, const Module& b, HalfInt M);
// number of genuine Q-eigenvectors in the block (detects defective couplings)
int q_block_eigenvector_count(const Module& a, const Module& b, HalfInt M);

std::string cg_to_json(const CGTable& t);

}  // namespace srt

#endif
