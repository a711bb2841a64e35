#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srt/sostar.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace srt;

namespace {

constexpr Complex I{0, 1};

double maxabs(const Matrix& M) { return M.cwiseAbs().maxCoeff(); }

// random basis state in the truncated occupation span
FockState basis_state(Eigen::Index n, const std::vector<int>& occ) {
    FockState s{n, {}};
    s.amp.emplace(fock_key(occ), 1.0);
    return s;
}

double fock_sup_distance(const FockState& a, const FockState& b) {
    FockState d = a;
    for (const auto& [k, c] : b.amp) d.add(k, -c);
    double m = 0;
    for (const auto& [k, c] : d.amp) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

TEST_CASE("coset representatives and the Moebius action") {
    for (auto [n, seed] : {std::pair{3, 11ull}, std::pair{4, 12ull}}) {
        DomainPoint z = random_domain_point(n, 0.7, seed);
        CHECK(z.antisymmetry_residual() < 1e-14);
        CHECK(z.spectral_norm() == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(z.in_domain());

        SOStarElement g = g_zeta(z);
        CHECK(g.membership_residual() < 1e-12);

        // g_zeta moves the origin to zeta
        DomainPoint origin{Matrix::Zero(n, n)};
        CHECK(maxabs(mobius(g, origin).zeta - z.zeta) < 1e-12);

        SOStarElement gg = g * g.inverse();
        CHECK(maxabs(gg.A - Matrix::Identity(n, n)) < 1e-12);
        CHECK(maxabs(gg.B) < 1e-12);

        // products stay in the group and act compatibly on the domain
        SOStarElement h = g_zeta(random_domain_point(n, 0.4, seed + 100));
        SOStarElement gh = g * h;
        CHECK(gh.membership_residual() < 1e-12);
        DomainPoint w = random_domain_point(n, 0.5, seed + 200);
        DomainPoint lhs = mobius(gh, w);
        DomainPoint rhs = mobius(g, mobius(h, w));
        CHECK(maxabs(lhs.zeta - rhs.zeta) < 1e-11);
        CHECK(lhs.in_domain(1e-6));
    }
    CHECK(SOStarElement::identity(3).membership_residual() == 0.0);
}

TEST_CASE("block UDL decomposition") {
    DomainPoint z = random_domain_point(4, 0.8, 21);
    SOStarElement g = g_zeta(z) * g_zeta(random_domain_point(4, 0.5, 22));
    UDLFactors f = udl_decompose(g);
    CHECK(maxabs(f.product() - g.full()) < 1e-12);

    // off-diagonal blocks of the triangular factors vanish as required
    CHECK(maxabs(f.raising.bottomLeftCorner(4, 4)) == 0.0);
    CHECK(maxabs(f.lowering.topRightCorner(4, 4)) == 0.0);

    // for the coset representative the middle block has det(1 - zeta zeta*)^1/2
    UDLFactors fz = udl_decompose(g_zeta(z));
    Complex d = fz.diagonal.topLeftCorner(4, 4).determinant();
    double expected = std::sqrt(
        (Matrix::Identity(4, 4) - z.zeta * z.zeta.adjoint()).determinant().real());
    CHECK(std::abs(d - Complex(expected)) < 1e-12);

    // the factors only live in the complexified group
    SOStarElement raising{f.raising.topLeftCorner(4, 4), f.raising.topRightCorner(4, 4)};
    CHECK(raising.membership_residual() > 1e-3);
}

TEST_CASE("coherent-state overlaps") {
    DomainPoint z = random_domain_point(3, 0.5, 31);
    DomainPoint w = random_domain_point(3, 0.45, 32);
    DomainPoint origin{Matrix::Zero(3, 3)};

    CHECK(std::abs(inner_product(z, z) - Complex(1)) < 1e-13);
    double det = (Matrix::Identity(3, 3) - z.zeta.adjoint() * z.zeta)
                     .determinant()
                     .real();
    CHECK(std::abs(inner_product(origin, z) - Complex(std::sqrt(det))) < 1e-13);
    CHECK(std::abs(inner_product(w, z)) < 1.0);
    CHECK(std::abs(inner_product(w, z) - std::conj(inner_product(z, w))) < 1e-13);

    // against the Fock-space expansion
    FockState fz = fock_coherent(z, 26);
    FockState fw = fock_coherent(w, 26);
    CHECK(fock_tail_estimate(z, 26) < 1e-12);
    CHECK(std::abs(fock_norm(fz) - 1.0) < 1e-11);
    CHECK(std::abs(fock_inner(fw, fz) - inner_product(w, z)) < 1e-10);
}

TEST_CASE("generator matrix elements against the oscillator realization") {
    DomainPoint z = random_domain_point(3, 0.5, 41);
    DomainPoint w = random_domain_point(3, 0.4, 42);
    DomainPoint origin{Matrix::Zero(3, 3)};

    GeneratorMatrixElements at0 = generator_matrix_elements(origin, origin);
    CHECK(maxabs(at0.E - Matrix::Identity(3, 3)) == 0.0);
    CHECK(maxabs(at0.F) == 0.0);
    CHECK(maxabs(at0.Ftilde) == 0.0);

    GeneratorMatrixElements m = generator_matrix_elements(w, z);
    CHECK(maxabs(m.F + m.F.transpose()) < 1e-12);
    CHECK(maxabs(m.Ftilde + m.Ftilde.transpose()) < 1e-12);

    FockState fz = fock_coherent(z, 26);
    FockState fw = fock_coherent(w, 26);
    Complex ov = fock_inner(fw, fz);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Complex e = fock_inner(fw, fock_E(a, b, fz)) / ov;
            Complex f = fock_inner(fw, fock_F(a, b, fz)) / ov;
            Complex ft = fock_inner(fw, fock_Ftilde(a, b, fz)) / ov;
            CHECK(std::abs(e - m.E(a, b)) < 1e-9);
            CHECK(std::abs(f - m.F(a, b)) < 1e-9);
            CHECK(std::abs(ft - m.Ftilde(a, b)) < 1e-9);
        }
}

TEST_CASE("oscillator commutators") {
    const Eigen::Index n = 3;
    std::vector<FockState> probes = {
        basis_state(n, {1, 0, 2, 0, 1, 0}),
        basis_state(n, {0, 2, 1, 1, 0, 3}),
        fock_coherent(random_domain_point(n, 0.4, 51), 12),
    };
    auto comm = [](auto&& X, auto&& Y, const FockState& s) {
        FockState lhs = X(Y(s));
        FockState rhs = Y(X(s));
        for (const auto& [k, c] : rhs.amp) lhs.add(k, -c);
        return lhs;
    };
    for (const auto& psi : probes) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        auto E_ab = [&](const FockState& s) { return fock_E(a, b, s); };
                        auto E_cd = [&](const FockState& s) { return fock_E(c, d, s); };
                        auto F_ab = [&](const FockState& s) { return fock_F(a, b, s); };
                        auto Ft_cd = [&](const FockState& s) { return fock_Ftilde(c, d, s); };

                        // [E_ab, E_cd] = d_cb E_ad - d_ad E_cb
                        FockState lhs = comm(E_ab, E_cd, psi);
                        FockState rhs{n, {}};
                        if (c == b)
                            for (const auto& [k, x] : fock_E(a, d, psi).amp) rhs.add(k, x);
                        if (a == d)
                            for (const auto& [k, x] : fock_E(c, b, psi).amp) rhs.add(k, -x);
                        CHECK(fock_sup_distance(lhs, rhs) < 1e-12);

                        // [E_ab, Ftilde_cd] = d_bc Ftilde_ad - d_bd Ftilde_ac
                        lhs = comm(E_ab, Ft_cd, psi);
                        rhs = FockState{n, {}};
                        if (b == c)
                            for (const auto& [k, x] : fock_Ftilde(a, d, psi).amp) rhs.add(k, x);
                        if (b == d)
                            for (const auto& [k, x] : fock_Ftilde(a, c, psi).amp) rhs.add(k, -x);
                        CHECK(fock_sup_distance(lhs, rhs) < 1e-12);

                        // [F_ab, Ftilde_cd] = d_db E_ca + d_ca E_db - d_cb E_da - d_da E_cb
                        lhs = comm(F_ab, Ft_cd, psi);
                        rhs = FockState{n, {}};
                        if (d == b)
                            for (const auto& [k, x] : fock_E(c, a, psi).amp) rhs.add(k, x);
                        if (c == a)
                            for (const auto& [k, x] : fock_E(d, b, psi).amp) rhs.add(k, x);
                        if (c == b)
                            for (const auto& [k, x] : fock_E(d, a, psi).amp) rhs.add(k, -x);
                        if (d == a)
                            for (const auto& [k, x] : fock_E(c, b, psi).amp) rhs.add(k, -x);
                        CHECK(fock_sup_distance(lhs, rhs) < 1e-12);
                    }
    }
}

TEST_CASE("area statistics") {
    DomainPoint origin{Matrix::Zero(3, 3)};
    AreaStatistics zero = area_statistics(origin);
    CHECK(zero.total_mean == 0.0);
    CHECK(zero.total_variance == 0.0);

    // rank-2 block with tr(z*z) = 0.8: total area is geometric-times-linear
    DomainPoint z = rank2_point(4, 0.8);
    AreaStatistics st = area_statistics(z);
    CHECK(st.total_mean == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(st.total_variance == doctest::Approx(20.0 / 9.0).epsilon(1e-12));

    // legs 3 and 4 carry nothing
    CHECK(st.leg_mean[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(st.leg_mean[2] == doctest::Approx(0.0));

    // moments of the distribution itself
    std::vector<double> P = rank2_distribution(z, 1e-16);
    double sum = 0, mean = 0, second = 0;
    for (std::size_t J = 0; J < P.size(); ++J) {
        sum += P[J];
        mean += double(J) * P[J];
        second += double(J) * double(J) * P[J];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(st.total_mean).epsilon(1e-10));
    CHECK(second - mean * mean == doctest::Approx(st.total_variance).epsilon(1e-9));

    // higher-rank points respect the coefficient-of-variation bound
    DomainPoint w = random_domain_point(4, 0.7, 61);
    AreaStatistics sw4 = area_statistics(w);
    Matrix sigma = (Matrix::Identity(4, 4) - w.zeta.adjoint() * w.zeta).inverse();
    double bound = std::sqrt(sigma.trace().real() / (sigma.trace().real() - 4.0));
    CHECK(sw4.coefficient_of_variation <= bound + 1e-12);

    // against the Fock expansion for a generic point
    w = random_domain_point(3, 0.55, 62);
    AreaStatistics sw = area_statistics(w);
    FockState fw = fock_coherent(w, 28);
    CHECK(fock_tail_estimate(w, 28) < 1e-11);
    double mean_fock = 0;
    for (int a = 0; a < 3; ++a)
        mean_fock += 0.5 * fock_inner(fw, fock_E(a, a, fw)).real() - 0.5;
    CHECK(std::abs(mean_fock - sw.total_mean) < 1e-9);
}

TEST_CASE("rank-2 total-area distribution") {
    DomainPoint z = rank2_point(2, 0.8);
    std::vector<double> P = rank2_distribution(z);
    CHECK(P[0] == doctest::Approx(0.36).epsilon(1e-14));
    CHECK(P[1] == doctest::Approx(0.288).epsilon(1e-14));

    // shell weights of the exact coherent state reproduce it; shells at or
    // below the truncation cap are produced without error
    FockState coh = fock_coherent(z, 21);
    for (int J = 0; J <= 20; ++J) {
        double w = std::pow(fock_norm(fock_area_shell(coh, J)), 2);
        CHECK(std::abs(w - P[static_cast<std::size_t>(J)]) < 1e-10);
    }

    CHECK_THROWS_AS((void)rank2_distribution(random_domain_point(4, 0.5, 71)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)rank2_point(1, 0.5), std::invalid_argument);
}

TEST_CASE("highest-weight vectors") {
    for (auto [n, J] : {std::pair{2, 3}, std::pair{3, 4}, std::pair{4, 2}}) {
        FockState psi = fock_highest_weight(n, J);
        CHECK(std::abs(fock_norm(psi) - 1.0) < 1e-12);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                FockState killed = fock_E(a, b, psi);
                double m = 0;
                for (const auto& [k, c] : killed.amp) m = std::max(m, std::abs(c));
                CHECK(m < 1e-12);
            }
            double weight = a < 2 ? J + 1.0 : 1.0;
            CHECK(fock_sup_distance(fock_E(a, a, psi), [&] {
                      FockState s = psi;
                      for (auto& [k, c] : s.amp) c *= weight;
                      return s;
                  }()) < 1e-12);
        }
    }
}

TEST_CASE("semiclassical face normals") {
    // closure holds at any rank
    for (std::uint64_t seed : {81ull, 82ull, 83ull}) {
        DomainPoint z = random_domain_point(4, 0.8, seed);
        SemiclassicalNormals sn = semiclassical_normals(z);
        CHECK(sn.closure_residual() < 1e-12);
    }
    // rank 2: |V^(a)| equals the mean area of the leg
    DomainPoint z2 = rank2_point(4, 1.2);
    Matrix rot = random_domain_point(4, 0.3, 84).zeta;  // reuse as generic U-mixer
    // conjugate by a unitary built from a random Hermitian to leave rank 2
    Eigen::SelfAdjointEigenSolver<Matrix> es(rot + rot.adjoint());
    Matrix U = es.eigenvectors();
    DomainPoint mixed{U * z2.zeta * U.transpose()};
    SemiclassicalNormals sn = semiclassical_normals(mixed);
    AreaStatistics st = area_statistics(mixed);
    CHECK(sn.closure_residual() < 1e-12);
    for (int a = 0; a < 4; ++a)
        CHECK(sn.normals[static_cast<std::size_t>(a)].norm() ==
              doctest::Approx(st.leg_mean[static_cast<std::size_t>(a)]).epsilon(1e-10));
}

TEST_CASE("Bogoliubov embedding") {
    BogoliubovView id = bogoliubov_embed(SOStarElement::identity(3));
    CHECK(id.membership_residual() == 0.0);
    CHECK(maxabs(id.squeeze()) == 0.0);

    DomainPoint z = random_domain_point(3, 0.6, 91);
    BogoliubovView b = bogoliubov_embed(g_zeta(z).inverse());
    CHECK(b.membership_residual() < 1e-12);
    Matrix S = b.squeeze();
    CHECK(maxabs(S - S.transpose()) < 1e-12);
    CHECK(maxabs(S.topLeftCorner(3, 3)) < 1e-12);
    CHECK(maxabs(S.bottomRightCorner(3, 3)) < 1e-12);
    CHECK(maxabs(S.topRightCorner(3, 3) + z.zeta) < 1e-12);
    CHECK(maxabs(S.bottomLeftCorner(3, 3) - z.zeta) < 1e-12);
}

TEST_CASE("invariant subspace dimensions") {
    for (int n = 2; n <= 4; ++n)
        for (int J = 0; J <= (n == 4 ? 4 : 6); ++J)
            CHECK(invariant_dimension(n, J) == invariant_dimension_formula(n, J));
    CHECK(invariant_dimension_formula(2, 5) == 1);
    CHECK(invariant_dimension_formula(3, 4) == 15);
}

TEST_CASE("UDL transport of coherent states") {
    // act with g through its UDL factors on the Fock expansion and compare the
    // overlap with the analytically transported state
    const Eigen::Index n = 3;
    DomainPoint z = random_domain_point(n, 0.35, 101);
    SOStarElement g = g_zeta(random_domain_point(n, 0.3, 102));

    const int J_max = 18;
    FockState psi = fock_coherent(z, J_max);

    /* Dictionary between matrix blocks and Fock operators: [[1,T],[0,1]] is
     * exp((1/2) Ftilde_T), [[1,0],[S,1]] is exp((1/2) F_S), and the diagonal
     * factor [[(A*)^{-1}, 0], [0, conj A]] is exp(sum L_ab E_ab) with
     * L = -log(A*) (both sides act on the domain by zeta -> L zeta + zeta L^T
     * infinitesimally, and E_ab is the genuine generator including its
     * delta_ab shift). */
    UDLFactors f = udl_decompose(g);
    Matrix lower = f.lowering.bottomLeftCorner(n, n);
    Matrix upper = f.raising.topRightCorner(n, n);
    Eigen::ComplexEigenSolver<Matrix> ces(g.A.adjoint());
    Matrix L = -(ces.eigenvectors() *
                 ces.eigenvalues().array().log().matrix().asDiagonal() *
                 ces.eigenvectors().inverse());
    FockState out = fock_exp_half_f(lower, psi);
    out = fock_exp_E(L, out);
    out = fock_exp_half_ftilde(upper, out, J_max);

    DomainPoint gz = mobius(g, z);
    Complex expected = inner_product(gz, gz);  // = 1
    FockState target = fock_coherent(gz, J_max);
    Complex overlap = fock_inner(target, out);
    // phases of |g z> and g|z> differ by the automorphy factor
    CHECK(std::abs(std::abs(overlap) - std::abs(expected)) < 1e-6);
}

TEST_CASE("reports") {
    DomainPoint z = rank2_point(3, 0.8);
    std::string csv = distribution_csv(z, 4);
    CHECK(csv.rfind("J,P\n0,0.36", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    std::string js = area_statistics_json(z);
    CHECK(js.find("\"total_mean\"") != std::string::npos);
    CHECK(js.find("1.333333333333333") != std::string::npos);
}
