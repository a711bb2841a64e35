#ifndef SRT_NUMERIC_HPP
#define SRT_NUMERIC_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace srt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double kTol = 1e-10;  // default tolerance, relative to the 1-norm

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Principal-branch square root (argument in (-pi, pi]); sqrt of a negative
 * real is +i*sqrt(|x|).  This single choice fixes the sign of every Gamma
 * factor for discrete-series weights. */
inline Complex psqrt(Complex z) {
    if (z.imag() == 0.0) {
        double x = z.real();
        if (x >= 0.0) return {std::sqrt(x), 0.0};
        return {0.0, std::sqrt(-x)};
    }
    return std::sqrt(z);
}
inline Complex psqrt(double x) { return psqrt(Complex(x, 0.0)); }

inline double norm1(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// ---------------------------------------------------------------------------
// general (possibly defective) eigenproblem

struct EigenPair {
    Complex value;
    std::vector<Vector> vectors;  // geometric eigenspace basis (may be < algebraic mult.)
    int algebraic = 1;
};

/* Deterministic phase: the first component of largest modulus is made
 * positive real. */
void fix_phase(Vector& v);

/* Eigenvalues from a Schur-based solve, clustered, with the geometric
 * multiplicity of each cluster recovered from an SVD rank test on M - l*I.
 * Defective matrices therefore report fewer eigenvectors than dim. */
std::vector<EigenPair> solve_eigen_general(const Matrix& M, double cluster_tol = 1e-8);

// ---------------------------------------------------------------------------
// tridiagonal

struct Tridiagonal {
    Vector diag;   // length n
    Vector sub;    // length n-1, entry i couples row i+1 <- col i
    Vector super;  // length n-1, entry i couples row i   <- col i+1

    Eigen::Index size() const { return diag.size(); }
    Matrix dense() const;
};

/* Null vector of T - lambda*I by forward substitution with x1 = 1; requires
 * all superdiagonal entries nonzero.  Throws NumericError if the last-row
 * residual shows lambda was not an eigenvalue. */
Vector tridiag_null_vector(const Tridiagonal& T, Complex lambda, double tol = 1e-7);

// ---------------------------------------------------------------------------
// antisymmetric canonical form  X = U M(lambda) U^T

struct AntisymCanonicalForm {
    Matrix U;                     // unitary
    std::vector<double> lambdas;  // non-increasing, length floor(n/2)

    Matrix reconstruct() const;   // U M U^T
    int rank(double cut = 1e-9) const;
};

AntisymCanonicalForm antisym_canonical(const Matrix& X);

// ---------------------------------------------------------------------------
// Hermitian PSD square root

Matrix psd_sqrt(const Matrix& M);

}  // namespace srt

#endif
