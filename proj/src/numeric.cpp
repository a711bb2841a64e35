#include "srt/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <map>

namespace srt {

void fix_phase(Vector& v) {
    Eigen::Index best = 0;
    double mod = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double a = std::abs(v[i]);
        if (a > mod + 1e-14 * (1.0 + mod)) {
            mod = a;
            best = i;
        }
    }
    if (mod == 0.0) return;
    v *= std::abs(v[best]) / v[best];
    v[best] = Complex(std::abs(v[best]), 0.0);  // kill residual imaginary dust
}

std::vector<EigenPair> solve_eigen_general(const Matrix& M, double cluster_tol) {
    const Eigen::Index n = M.rows();
    Eigen::ComplexEigenSolver<Matrix> es(M, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NumericError("eigen solve failed");

    const double scale = std::max(norm1(M), 1.0);
    // defective eigenvalues split by O(sqrt(machine eps)) under perturbation,
    // so clustering must be looser than the rank threshold below
    const double close = std::max(cluster_tol, 1e-6) * scale;

    // cluster eigenvalues
    std::vector<Complex> vals(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<EigenPair> out;
    for (Complex v : vals) {
        if (!out.empty() && std::abs(v - out.back().value) <= close) {
            ++out.back().algebraic;
            continue;
        }
        EigenPair p;
        p.value = v;
        out.push_back(std::move(p));
    }

    // geometric multiplicity + eigenvectors from the SVD of M - l*I; the
    // trailing right-singular vectors spanning the numerical null space are
    // the eigenspace basis.
    for (auto& p : out) {
        Matrix S = M - p.value * Matrix::Identity(n, n);
        Eigen::JacobiSVD<Matrix> svd(S, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int nullity = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (sv[i] <= cluster_tol * scale) ++nullity;
        nullity = std::max(nullity, 1);
        nullity = std::min(nullity, p.algebraic);
        for (int k = 0; k < nullity; ++k) {
            Vector v = svd.matrixV().col(n - 1 - k);
            fix_phase(v);
            p.vectors.push_back(std::move(v));
        }
    }
    return out;
}

Matrix Tridiagonal::dense() const {
    const Eigen::Index n = size();
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[i];
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = super[i];
        m(i + 1, i) = sub[i];
    }
    return m;
}

Vector tridiag_null_vector(const Tridiagonal& T, Complex lambda, double tol) {
    const Eigen::Index n = T.size();
    Vector x(n);
    x[0] = 1.0;
    double scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        scale = std::max(scale, std::abs(T.diag[i] - lambda));
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        scale = std::max({scale, std::abs(T.sub[i]), std::abs(T.super[i])});
    if (scale == 0.0) scale = 1.0;

    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (std::abs(T.super[i]) == 0.0)
            throw NumericError("tridiag_null_vector: vanishing superdiagonal");
        Complex acc = (T.diag[i] - lambda) * x[i];
        if (i > 0) acc += T.sub[i - 1] * x[i - 1];
        x[i + 1] = -acc / T.super[i];
    }
    // last-row residual decides whether lambda really was an eigenvalue
    Complex res = (T.diag[n - 1] - lambda) * x[n - 1];
    if (n > 1) res += T.sub[n - 2] * x[n - 2];
    double xmax = x.cwiseAbs().maxCoeff();
    if (std::abs(res) > tol * scale * xmax)
        throw NumericError("tridiag_null_vector: not an eigenvalue (residual " +
                           std::to_string(std::abs(res) / (scale * xmax)) + ")");
    return x;
}

Matrix AntisymCanonicalForm::reconstruct() const {
    const Eigen::Index n = U.rows();
    Matrix M = Matrix::Zero(n, n);
    for (std::size_t a = 0; a < lambdas.size(); ++a) {
        M(2 * a, 2 * a + 1) = -lambdas[a];
        M(2 * a + 1, 2 * a) = lambdas[a];
    }
    return U * M * U.transpose();
}

int AntisymCanonicalForm::rank(double cut) const {
    int r = 0;
    for (double l : lambdas)
        if (l > cut) r += 2;
    return r;
}

/* Youla-style canonical form of a complex antisymmetric matrix:
 *   X = U diag_blocks([[0, -l],[l, 0]]) U^T,  U unitary, l >= 0 nonincreasing.
 * The eigenvectors of X X^* come in conjugate pairs; within each singular
 * value s, picking any unit eigenvector v1 and setting v2 = conj(X v1)/s
 * yields v1^T X v2 = -s with v2 automatically orthogonal to v1, so the pair
 * can be split off and the remaining space deflated. */
AntisymCanonicalForm antisym_canonical(const Matrix& Xin) {
    const Eigen::Index n = Xin.rows();
    Matrix X = 0.5 * (Xin - Xin.transpose());  // enforce exact antisymmetry
    const double scale = std::max(norm1(X), 1e-300);

    AntisymCanonicalForm out;
    out.U = Matrix::Identity(n, n);

    // Work in a shrinking orthonormal basis B of the untreated subspace.
    Matrix B = Matrix::Identity(n, n);
    Matrix Xc = X;
    std::vector<Vector> cols;
    while (static_cast<Eigen::Index>(cols.size()) + 1 < n) {
        Matrix H = Xc * Xc.adjoint();  // Hermitian PSD, eigvals s^2
        Eigen::SelfAdjointEigenSolver<Matrix> es(H);
        const Eigen::Index m = Xc.rows();
        double s2 = es.eigenvalues()[m - 1];
        if (s2 <= 0.0 || std::sqrt(std::max(s2, 0.0)) < 1e-14 * scale) break;
        double s = std::sqrt(s2);
        Vector v1 = es.eigenvectors().col(m - 1);
        // X conj(v1) = s v2 and X conj(v2) = -s v1: the pair realizes one
        // canonical 2x2 block exactly, no further phase adjustment needed
        Vector v2 = (Xc * v1.conjugate()) / s;
        v2 -= v1 * v1.dot(v2);  // defensive re-orthonormalization
        v2.normalize();
        out.lambdas.push_back(s);
        cols.push_back(B * v1);
        cols.push_back(B * v2);
        // deflate: restrict to the orthogonal complement of {v1, v2}
        Matrix P(m, 2);
        P.col(0) = v1;
        P.col(1) = v2;
        Eigen::JacobiSVD<Matrix> svd(P, Eigen::ComputeFullU);
        Matrix Q = svd.matrixU().rightCols(m - 2);  // ON basis of complement
        B = B * Q;
        Xc = (Q.adjoint() * Xc * Q.conjugate()).eval();
        Xc = 0.5 * (Xc - Xc.transpose()).eval();
    }
    // pad zero blocks / leftover kernel directions
    Eigen::Index used = static_cast<Eigen::Index>(cols.size());
    for (Eigen::Index k = 0; k < n - used; ++k) cols.push_back(B.col(k));
    out.lambdas.resize(static_cast<std::size_t>(n / 2), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) out.U.col(i) = cols[static_cast<std::size_t>(i)];
    return out;
}

Matrix psd_sqrt(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.adjoint()));
    const double scale = std::max(norm1(M), 1.0);
    Eigen::VectorXd d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d[i] < -1e-10 * scale) throw NumericError("psd_sqrt: matrix not PSD");
        d[i] = std::sqrt(std::max(d[i], 0.0));
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace srt
