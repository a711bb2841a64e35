#include "srt/sostar.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace srt {

namespace {

double maxabs(const Matrix& M) { return M.cwiseAbs().maxCoeff(); }

Matrix eye(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace

// ---------------------------------------------------------------------------
// group elements

Matrix SOStarElement::full() const {
    const Eigen::Index n = legs();
    Matrix g(2 * n, 2 * n);
    g.topLeftCorner(n, n) = A;
    g.topRightCorner(n, n) = B;
    g.bottomLeftCorner(n, n) = -B.conjugate();
    g.bottomRightCorner(n, n) = A.conjugate();
    return g;
}

SOStarElement SOStarElement::inverse() const {
    return {A.adjoint(), B.transpose()};
}

double SOStarElement::membership_residual() const {
    const Eigen::Index n = legs();
    double r = maxabs(A * A.adjoint() - B * B.adjoint() - eye(n));
    r = std::max(r, maxabs(A.adjoint() * A - B.transpose() * B.conjugate() - eye(n)));
    r = std::max(r, maxabs(A.adjoint() * B + B.transpose() * A.conjugate()));
    r = std::max(r, maxabs(B * A.transpose() + A * B.transpose()));
    return r;
}

SOStarElement SOStarElement::identity(Eigen::Index n) {
    return {eye(n), Matrix::Zero(n, n)};
}

SOStarElement operator*(const SOStarElement& g, const SOStarElement& h) {
    return {g.A * h.A - g.B * h.B.conjugate(), g.A * h.B + g.B * h.A.conjugate()};
}

// ---------------------------------------------------------------------------
// domain

double DomainPoint::antisymmetry_residual() const {
    return maxabs(zeta + zeta.transpose());
}

double DomainPoint::spectral_norm() const {
    if (zeta.size() == 0) return 0.0;
    return zeta.jacobiSvd().singularValues()(0);
}

bool DomainPoint::in_domain(double tol) const {
    return antisymmetry_residual() < tol && spectral_norm() < 1.0 - tol;
}

DomainPoint random_domain_point(Eigen::Index n, double spectral_norm,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Matrix G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
    DomainPoint z{0.5 * (G - G.transpose())};
    double s = z.spectral_norm();
    if (s > 0) z.zeta *= spectral_norm / s;
    return z;
}

DomainPoint rank2_point(Eigen::Index n, double trace) {
    if (n < 2 || trace < 0 || trace >= 2.0)
        throw std::invalid_argument("rank-2 point needs n >= 2, 0 <= tr < 2");
    double lambda = std::sqrt(trace / 2.0);
    Matrix z = Matrix::Zero(n, n);
    z(0, 1) = -lambda;
    z(1, 0) = lambda;
    return {z};
}

SOStarElement g_zeta(const DomainPoint& z) {
    const Eigen::Index n = z.legs();
    Matrix M = eye(n) - z.zeta * z.zeta.adjoint();
    Matrix X = psd_sqrt(M).inverse();
    return {X, z.zeta * X.conjugate()};
}

DomainPoint mobius(const SOStarElement& g, const DomainPoint& z) {
    Matrix num = g.A * z.zeta + g.B;
    Matrix den = -g.B.conjugate() * z.zeta + g.A.conjugate();
    Matrix w = num * den.inverse();
    return {0.5 * (w - w.transpose())};  // remove numerical symmetric drift
}

UDLFactors udl_decompose(const SOStarElement& g) {
    const Eigen::Index n = g.legs();
    Matrix Ainv_c = g.A.conjugate().inverse();
    UDLFactors f;
    f.raising = Matrix::Identity(2 * n, 2 * n);
    f.raising.topRightCorner(n, n) = g.B * Ainv_c;
    f.diagonal = Matrix::Zero(2 * n, 2 * n);
    f.diagonal.topLeftCorner(n, n) = g.A.adjoint().inverse();
    f.diagonal.bottomRightCorner(n, n) = g.A.conjugate();
    f.lowering = Matrix::Identity(2 * n, 2 * n);
    f.lowering.bottomLeftCorner(n, n) = -Ainv_c * g.B.conjugate();
    return f;
}

// ---------------------------------------------------------------------------
// coherent-state analytics

Complex inner_product(const DomainPoint& omega, const DomainPoint& zeta) {
    const Eigen::Index n = zeta.legs();
    double dz = (eye(n) - zeta.zeta.adjoint() * zeta.zeta).determinant().real();
    double dw = (eye(n) - omega.zeta.adjoint() * omega.zeta).determinant().real();
    Complex mixed = (eye(n) - omega.zeta.adjoint() * zeta.zeta).determinant();
    return std::sqrt(dz) * std::sqrt(dw) / mixed;
}

GeneratorMatrixElements generator_matrix_elements(const DomainPoint& omega,
                                                  const DomainPoint& zeta) {
    const Eigen::Index n = zeta.legs();
    Matrix wz = omega.zeta.adjoint() * zeta.zeta;
    Matrix K = (eye(n) - wz).inverse();
    return {eye(n) + 2.0 * wz * K, 2.0 * zeta.zeta * K, 2.0 * K * omega.zeta.conjugate()};
}

AreaStatistics area_statistics(const DomainPoint& z) {
    const Eigen::Index n = z.legs();
    Matrix sigma = (eye(n) - z.zeta.adjoint() * z.zeta).inverse();
    AreaStatistics st;
    st.pair_mean = sigma - eye(n);  // zeta* zeta sigma
    for (Eigen::Index a = 0; a < n; ++a) {
        double mean = st.pair_mean(a, a).real();
        st.leg_mean.push_back(mean);
        st.leg_variance.push_back(0.5 * mean * (mean + 1.0));
        st.total_mean += mean;
    }
    st.total_variance = ((sigma * sigma - sigma).trace()).real();
    st.coefficient_of_variation =
        st.total_mean > 0 ? std::sqrt(st.total_variance) / st.total_mean : 0.0;
    return st;
}

std::vector<double> rank2_distribution(const DomainPoint& z, double tail) {
    if (antisym_canonical(z.zeta).rank() != 2)
        throw std::invalid_argument("total-area distribution needs rank(zeta) = 2");
    const Eigen::Index n = z.legs();
    double det = (eye(n) - z.zeta.adjoint() * z.zeta).determinant().real();
    double q = 0.5 * (z.zeta.adjoint() * z.zeta).trace().real();
    std::vector<double> P;
    double qJ = 1.0;
    for (int J = 0;; ++J) {
        P.push_back(det * qJ * (J + 1));
        qJ *= q;
        // remaining mass of the geometric-times-linear tail
        double rest = det * qJ * ((J + 2) - (J + 1) * q) / ((1 - q) * (1 - q));
        if (rest < tail) break;
    }
    return P;
}

double SemiclassicalNormals::closure_residual() const {
    Eigen::Vector3d total = Eigen::Vector3d::Zero();
    for (const auto& v : normals) total += v;
    return total.cwiseAbs().maxCoeff();
}

SemiclassicalNormals semiclassical_normals(const DomainPoint& z) {
    const Eigen::Index n = z.legs();
    AntisymCanonicalForm cf = antisym_canonical(z.zeta);
    SemiclassicalNormals out;
    out.normals.assign(static_cast<std::size_t>(n), Eigen::Vector3d::Zero());
    for (std::size_t al = 0; al < cf.lambdas.size(); ++al) {
        double l = cf.lambdas[al];
        if (l <= 1e-9) continue;
        double c = std::sqrt(2.0 * l * l / (1.0 - l * l));
        for (Eigen::Index a = 0; a < n; ++a) {
            Complex x = c * cf.U(a, static_cast<Eigen::Index>(2 * al));
            Complex y = c * cf.U(a, static_cast<Eigen::Index>(2 * al + 1));
            Complex xy = std::conj(x) * y;
            auto& V = out.normals[static_cast<std::size_t>(a)];
            V.x() += xy.real();
            V.y() += xy.imag();
            V.z() += 0.5 * (std::norm(x) - std::norm(y));
        }
    }
    return out;
}

Matrix BogoliubovView::squeeze() const { return -U.partialPivLu().solve(V); }

double BogoliubovView::membership_residual() const {
    const Eigen::Index m = U.rows();
    double r = maxabs(U * U.adjoint() - V * V.adjoint() - Matrix::Identity(m, m));
    return std::max(r, maxabs(U * V.transpose() - V * U.transpose()));
}

BogoliubovView bogoliubov_embed(const SOStarElement& g) {
    const Eigen::Index n = g.legs();
    BogoliubovView b;
    b.U = Matrix::Zero(2 * n, 2 * n);
    b.U.topLeftCorner(n, n) = g.A;
    b.U.bottomRightCorner(n, n) = g.A;
    b.V = Matrix::Zero(2 * n, 2 * n);
    b.V.topRightCorner(n, n) = -g.B;
    b.V.bottomLeftCorner(n, n) = g.B;
    return b;
}

// ---------------------------------------------------------------------------
// Fock oracle

namespace {

int occ_at(std::uint64_t key, int idx) {
    return static_cast<int>((key >> (8 * idx)) & 0xff);
}

std::uint64_t occ_set(std::uint64_t key, int idx, int v) {
    key &= ~(std::uint64_t{0xff} << (8 * idx));
    return key | (std::uint64_t(v) << (8 * idx));
}

FockState fock_scaled(Complex c, const FockState& s) {
    FockState out{s.n, {}};
    for (const auto& [k, a] : s.amp) out.amp.emplace(k, c * a);
    return out;
}

void fock_accumulate(FockState& into, const FockState& s) {
    for (const auto& [k, a] : s.amp) into.add(k, a);
}

}  // namespace

void FockState::add(std::uint64_t key, Complex c) {
    auto [it, fresh] = amp.emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == Complex{}) amp.erase(it);
    }
}

FockState fock_vacuum(Eigen::Index n) {
    FockState s{n, {}};
    s.amp.emplace(0, 1.0);
    return s;
}

std::uint64_t fock_key(const std::vector<int>& occ) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < occ.size(); ++i)
        key = occ_set(key, static_cast<int>(i), occ[i]);
    return key;
}

int fock_total_quanta(std::uint64_t key, Eigen::Index n) {
    int total = 0;
    for (int i = 0; i < 2 * n; ++i) total += occ_at(key, i);
    return total;
}

Complex fock_inner(const FockState& bra, const FockState& ket) {
    const FockState& small = bra.amp.size() <= ket.amp.size() ? bra : ket;
    Complex dot = 0;
    for (const auto& [k, a] : small.amp) {
        auto itb = bra.amp.find(k);
        auto itk = ket.amp.find(k);
        if (itb != bra.amp.end() && itk != ket.amp.end())
            dot += std::conj(itb->second) * itk->second;
    }
    return dot;
}

double fock_norm(const FockState& s) {
    double n2 = 0;
    for (const auto& [k, a] : s.amp) n2 += std::norm(a);
    return std::sqrt(n2);
}

FockState fock_ladder(Ladder op, int leg, const FockState& s) {
    const int idx = (op == Ladder::B || op == Ladder::Bdag)
                        ? static_cast<int>(s.n) + leg
                        : leg;
    const bool raising = op == Ladder::Adag || op == Ladder::Bdag;
    FockState out{s.n, {}};
    for (const auto& [k, a] : s.amp) {
        int occ = occ_at(k, idx);
        if (raising) {
            if (occ >= 255) throw std::overflow_error("occupation overflow");
            out.add(occ_set(k, idx, occ + 1), std::sqrt(double(occ + 1)) * a);
        } else if (occ > 0) {
            out.add(occ_set(k, idx, occ - 1), std::sqrt(double(occ)) * a);
        }
    }
    return out;
}

FockState fock_E(int a, int b, const FockState& s) {
    FockState out = fock_ladder(Ladder::Adag, a, fock_ladder(Ladder::A, b, s));
    fock_accumulate(out, fock_ladder(Ladder::Bdag, a, fock_ladder(Ladder::B, b, s)));
    if (a == b) fock_accumulate(out, s);
    return out;
}

FockState fock_F(int a, int b, const FockState& s) {
    FockState out = fock_ladder(Ladder::B, a, fock_ladder(Ladder::A, b, s));
    fock_accumulate(out, fock_scaled(-1.0, fock_ladder(Ladder::A, a, fock_ladder(Ladder::B, b, s))));
    return out;
}

FockState fock_Ftilde(int a, int b, const FockState& s) {
    FockState out = fock_ladder(Ladder::Bdag, a, fock_ladder(Ladder::Adag, b, s));
    fock_accumulate(out, fock_scaled(-1.0, fock_ladder(Ladder::Adag, a, fock_ladder(Ladder::Bdag, b, s))));
    return out;
}

FockState fock_half_ftilde(const Matrix& zeta, const FockState& s) {
    FockState out{s.n, {}};
    for (Eigen::Index a = 0; a < zeta.rows(); ++a)
        for (Eigen::Index b = a + 1; b < zeta.cols(); ++b) {
            if (zeta(a, b) == Complex{}) continue;
            fock_accumulate(out, fock_scaled(zeta(a, b),
                                             fock_Ftilde(static_cast<int>(a),
                                                         static_cast<int>(b), s)));
        }
    return out;
}

FockState fock_area_shell(const FockState& s, int J) {
    FockState out{s.n, {}};
    for (const auto& [k, a] : s.amp)
        if (fock_total_quanta(k, s.n) == 2 * J) out.amp.emplace(k, a);
    return out;
}

FockState fock_coherent(const DomainPoint& z, int J_max) {
    const Eigen::Index n = z.legs();
    double det = (eye(n) - z.zeta.adjoint() * z.zeta).determinant().real();
    FockState term = fock_vacuum(n);
    FockState total = term;
    for (int J = 1; J <= J_max; ++J) {
        term = fock_scaled(1.0 / J, fock_half_ftilde(z.zeta, term));
        fock_accumulate(total, term);
    }
    return fock_scaled(std::sqrt(det), total);
}

double fock_tail_estimate(const DomainPoint& z, int J_max) {
    FockState coh = fock_coherent(z, J_max);
    double w1 = std::pow(fock_norm(fock_area_shell(coh, J_max - 1)), 2);
    double w2 = std::pow(fock_norm(fock_area_shell(coh, J_max)), 2);
    if (w1 <= 0) return 0.0;
    double r = w2 / w1;
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    return w2 * r / (1.0 - r);
}

FockState fock_exp_half_ftilde(const Matrix& T, const FockState& s, int J_max) {
    FockState term = s;
    FockState total = s;
    for (int k = 1; !term.amp.empty(); ++k) {
        term = fock_scaled(1.0 / k, fock_half_ftilde(T, term));
        // drop shells above the truncation cap
        for (auto it = term.amp.begin(); it != term.amp.end();)
            it = fock_total_quanta(it->first, s.n) > 2 * J_max ? term.amp.erase(it)
                                                               : std::next(it);
        fock_accumulate(total, term);
    }
    return total;
}

FockState fock_exp_half_f(const Matrix& T, const FockState& s) {
    FockState term = s;
    FockState total = s;
    for (int k = 1; !term.amp.empty(); ++k) {  // area-lowering, hence nilpotent
        FockState next{s.n, {}};
        for (Eigen::Index a = 0; a < T.rows(); ++a)
            for (Eigen::Index b = a + 1; b < T.cols(); ++b) {
                if (T(a, b) == Complex{}) continue;
                fock_accumulate(next, fock_scaled(T(a, b),
                                                  fock_F(static_cast<int>(a),
                                                         static_cast<int>(b), term)));
            }
        term = fock_scaled(1.0 / k, next);
        fock_accumulate(total, term);
    }
    return total;
}

FockState fock_exp_E(const Matrix& L, const FockState& s, double tol) {
    FockState term = s;
    FockState total = s;
    for (int k = 1; k <= 500; ++k) {
        FockState next{s.n, {}};
        for (Eigen::Index a = 0; a < L.rows(); ++a)
            for (Eigen::Index b = 0; b < L.cols(); ++b) {
                if (L(a, b) == Complex{}) continue;
                fock_accumulate(next, fock_scaled(L(a, b),
                                                  fock_E(static_cast<int>(a),
                                                         static_cast<int>(b), term)));
            }
        term = fock_scaled(1.0 / k, next);
        fock_accumulate(total, term);
        if (fock_norm(term) < tol) break;
    }
    return total;
}

FockState fock_highest_weight(Eigen::Index n, int J) {
    if (n < 2) throw std::invalid_argument("highest weight needs n >= 2");
    FockState s = fock_vacuum(n);
    for (int k = 0; k < J; ++k) s = fock_Ftilde(0, 1, s);
    double norm = 1.0;
    for (int k = 1; k <= J; ++k) norm *= double(k) * double(k + 1);
    return fock_scaled(1.0 / std::sqrt(norm), s);
}

// ---------------------------------------------------------------------------
// invariant dimension

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int head = 0; head <= total; ++head) {
        cur.push_back(head);
        compositions(total - head, parts - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    compositions(total, parts, cur, out);
    return out;
}

}  // namespace

int invariant_dimension(int n, int J) {
    // zero-weight sector: sum mu = sum nu = J; raising ladder sum_a A+_a B_a
    // maps it into the weight-one sector, and its kernel is the invariants
    auto mus = compositions(J, n);
    auto mus_up = compositions(J + 1, n);
    auto nus_dn = J > 0 ? compositions(J - 1, n) : std::vector<std::vector<int>>{};
    std::map<std::vector<int>, int> mu_up_idx, nu_dn_idx;
    for (std::size_t i = 0; i < mus_up.size(); ++i) mu_up_idx[mus_up[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < nus_dn.size(); ++i) nu_dn_idx[nus_dn[i]] = static_cast<int>(i);

    const int m = static_cast<int>(mus.size());
    const Eigen::Index cols = Eigen::Index(m) * m;
    const Eigen::Index rows = static_cast<Eigen::Index>(mus_up.size() * nus_dn.size());
    if (rows == 0) return static_cast<int>(cols);

    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const auto& mu = mus[static_cast<std::size_t>(i)];
            const auto& nu = mus[static_cast<std::size_t>(j)];
            for (int a = 0; a < n; ++a) {
                if (nu[static_cast<std::size_t>(a)] == 0) continue;
                auto mu2 = mu, nu2 = nu;
                ++mu2[static_cast<std::size_t>(a)];
                --nu2[static_cast<std::size_t>(a)];
                Eigen::Index row = Eigen::Index(mu_up_idx.at(mu2)) *
                                       static_cast<Eigen::Index>(nus_dn.size()) +
                                   nu_dn_idx.at(nu2);
                double coeff = std::sqrt(double(mu[static_cast<std::size_t>(a)] + 1) *
                                         nu[static_cast<std::size_t>(a)]);
                trips.emplace_back(static_cast<int>(row),
                                   static_cast<int>(Eigen::Index(i) * m + j), coeff);
            }
        }
    Eigen::SparseMatrix<double> Jp(rows, cols);
    Jp.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
    qr.setPivotThreshold(1e-9);
    qr.compute(Jp);
    return static_cast<int>(cols - qr.rank());
}

long long invariant_dimension_formula(int n, int J) {
    auto binom = [](long long a, long long b) {
        if (b < 0 || b > a) return 0LL;
        long long r = 1;
        for (long long k = 1; k <= b; ++k) r = r * (a - b + k) / k;
        return r;
    };
    return binom(J + n - 1, J) * binom(J + n - 2, J) / (J + 1);
}

// ---------------------------------------------------------------------------
// reports

std::string distribution_csv(const DomainPoint& z, int J_count) {
    if (antisym_canonical(z.zeta).rank() != 2)
        throw std::invalid_argument("total-area distribution needs rank(zeta) = 2");
    const Eigen::Index n = z.legs();
    double det = (eye(n) - z.zeta.adjoint() * z.zeta).determinant().real();
    double q = 0.5 * (z.zeta.adjoint() * z.zeta).trace().real();
    std::ostringstream out;
    out << "J,P\n";
    out.precision(15);
    double qJ = 1.0;
    for (int J = 0; J < J_count; ++J, qJ *= q) out << J << ',' << det * qJ * (J + 1) << '\n';
    return out.str();
}

std::string area_statistics_json(const DomainPoint& z) {
    AreaStatistics st = area_statistics(z);
    nlohmann::json j;
    j["legs"] = z.legs();
    j["leg_mean"] = st.leg_mean;
    j["leg_variance"] = st.leg_variance;
    j["total_mean"] = st.total_mean;
    j["total_variance"] = st.total_variance;
    j["coefficient_of_variation"] = st.coefficient_of_variation;
    return j.dump(2);
}

}  // namespace srt
