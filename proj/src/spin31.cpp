#include "srt/spin31.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

namespace srt {

namespace {

constexpr double kLabelTol = 1e-9;

HalfInt half() { return HalfInt::half(); }

bool near(Complex a, Complex b) { return std::abs(a - b) < kLabelTol; }

std::string fmt_complex(Complex z) {
    std::ostringstream os;
    if (std::abs(z.imag()) < kLabelTol) {
        os << z.real();
    } else if (std::abs(z.real()) < kLabelTol) {
        os << z.imag() << "i";
    } else {
        os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// labels

Rep4Label Rep4Label::canonical() const {
    Rep4Label flipped{-lambda, -rho};
    if (lambda.twice() < 0) return flipped;
    if (lambda.twice() == 0) {
        if (rho.imag() < -kLabelTol) return flipped;
        if (std::abs(rho.imag()) < kLabelTol && rho.real() < 0) return flipped;
    }
    return *this;
}

bool Rep4Label::is_finite() const {
    if (std::abs(rho.imag()) > kLabelTol) return false;
    double d = std::abs(rho.real()) - abs(lambda).to_double();
    double n = std::round(d);
    return std::abs(d - n) < kLabelTol && n > 0.5;
}

std::optional<HalfInt> Rep4Label::j_max() const {
    if (!is_finite()) return std::nullopt;
    return HalfInt::from_twice(std::llround(2.0 * (std::abs(rho.real()) - 1.0)));
}

bool Rep4Label::is_unitary() const {
    if (std::abs(rho.real()) < kLabelTol) return true;  // principal series
    if (lambda != HalfInt(0) || std::abs(rho.imag()) > kLabelTol) return false;
    return std::abs(rho.real()) <= 1.0 + kLabelTol;  // complementary or trivial
}

std::string Rep4Label::str() const {
    return "(" + lambda.str() + ", " + fmt_complex(rho) + ")";
}

bool same_label(const Rep4Label& a, const Rep4Label& b, double tol) {
    return a.lambda == b.lambda && std::abs(a.rho - b.rho) < tol;
}

std::pair<Complex, Complex> casimir_values(const Rep4Label& l) {
    double lam = l.lambda.to_double();
    return {Complex(0.0, 1.0) * lam * l.rho, lam * lam + l.rho * l.rho - 1.0};
}

Rep4Label finite_label(HalfInt j1, HalfInt j2) {
    if (j1.twice() < 0 || j2.twice() < 0)
        throw UnsupportedLabel("spins must be non-negative");
    double r = j1.to_double() + j2.to_double() + 1.0;
    return {abs(j1 - j2), Complex(j1 < j2 ? r : -r, 0.0)};
}

std::pair<HalfInt, HalfInt> finite_pair(const Rep4Label& l) {
    Rep4Label c = l.canonical();
    if (!c.is_finite())
        throw UnsupportedLabel("not a finite-dimensional label: " + l.str());
    int B = c.rho.real() > 0 ? 1 : -1;
    HalfInt omega = *c.j_max();
    return {HalfInt::from_twice((omega.twice() - B * c.lambda.twice()) / 2),
            HalfInt::from_twice((omega.twice() + B * c.lambda.twice()) / 2)};
}

// ---------------------------------------------------------------------------
// boost reduced matrix elements

Complex boost_P(const Rep4Label& l, HalfInt j) {
    if (j.twice() == 0) return 0.0;
    double jd = j.to_double();
    return Complex(0.0, 1.0) * l.lambda.to_double() * l.rho / (jd * (jd + 1.0));
}

Complex boost_Pminus(const Rep4Label& l, HalfInt j) {
    if (j.twice() <= 0) return 0.0;
    double jd = j.to_double(), lam = l.lambda.to_double();
    return psqrt(jd + lam) * psqrt(jd - lam) * psqrt(jd + l.rho) *
           psqrt(jd - l.rho) /
           (jd * std::sqrt(2.0 * jd + 1.0) * std::sqrt(2.0 * jd - 1.0));
}

Complex boost_Pplus(const Rep4Label& l, HalfInt j) {
    return boost_Pminus(l, j + 1);
}

// ---------------------------------------------------------------------------
// tower states

SU2TowerState SU2TowerState::basis(const Rep4Label& l, HalfInt j_cut, HalfInt j,
                                   HalfInt m) {
    if (j < abs(l.lambda) || j > j_cut || !(j - abs(l.lambda)).is_integer())
        throw std::invalid_argument("j outside the tower of " + l.str());
    if (auto jm = l.j_max(); jm && j > *jm)
        throw std::invalid_argument("j above the end of the tower of " + l.str());
    if (abs(m) > j || !(m - j).is_integer())
        throw std::invalid_argument("m outside the weight set of j = " + j.str());
    SU2TowerState s;
    s.label = l;
    s.j_cut = j_cut;
    s.amp[{j.twice(), m.twice()}] = 1.0;
    return s;
}

void SU2TowerState::add(HalfInt j, HalfInt m, Complex c) {
    if (c == 0.0 || j > j_cut) return;
    Complex& slot = amp[{j.twice(), m.twice()}];
    slot += c;
    if (slot == 0.0) amp.erase({j.twice(), m.twice()});
}

Complex SU2TowerState::at(HalfInt j, HalfInt m) const {
    auto it = amp.find({j.twice(), m.twice()});
    return it == amp.end() ? Complex(0.0) : it->second;
}

SU2TowerState& SU2TowerState::operator+=(const SU2TowerState& o) {
    if (!same_label(label, o.label) || j_cut != o.j_cut)
        throw std::logic_error("tower states live on different modules");
    for (const auto& [k, v] : o.amp)
        add(HalfInt::from_twice(k.first), HalfInt::from_twice(k.second), v);
    return *this;
}

SU2TowerState& SU2TowerState::operator-=(const SU2TowerState& o) {
    if (!same_label(label, o.label) || j_cut != o.j_cut)
        throw std::logic_error("tower states live on different modules");
    for (const auto& [k, v] : o.amp)
        add(HalfInt::from_twice(k.first), HalfInt::from_twice(k.second), -v);
    return *this;
}

SU2TowerState operator*(Complex c, SU2TowerState s) {
    if (c == 0.0) {
        s.amp.clear();
        return s;
    }
    for (auto& [k, v] : s.amp) v *= c;
    return s;
}

double sup_norm(const SU2TowerState& s) {
    double top = 0.0;
    for (const auto& [k, v] : s.amp) top = std::max(top, std::abs(v));
    return top;
}

double sup_distance(const SU2TowerState& a, const SU2TowerState& b) {
    SU2TowerState d = a;
    d -= b;
    return sup_norm(d);
}

// ---------------------------------------------------------------------------
// generator action

SU2TowerState boost_apply(Gen31 g, const SU2TowerState& s) {
    SU2TowerState out;
    out.label = s.label;
    out.j_cut = s.j_cut;
    for (const auto& [key, v] : s.amp) {
        HalfInt j = HalfInt::from_twice(key.first);
        HalfInt m = HalfInt::from_twice(key.second);
        double jd = j.to_double(), md = m.to_double();
        switch (g) {
            case Gen31::J0:
                out.add(j, m, md * v);
                break;
            case Gen31::Jplus:
                out.add(j, m + 1, std::sqrt(jd - md) * std::sqrt(jd + md + 1.0) * v);
                break;
            case Gen31::Jminus:
                out.add(j, m - 1, std::sqrt(jd + md) * std::sqrt(jd - md + 1.0) * v);
                break;
            case Gen31::K0:
                out.add(j + 1, m,
                        boost_Pplus(s.label, j) * std::sqrt(jd + md + 1.0) *
                            std::sqrt(jd - md + 1.0) * v);
                out.add(j, m, boost_P(s.label, j) * md * v);
                out.add(j - 1, m,
                        boost_Pminus(s.label, j) * std::sqrt(jd + md) *
                            std::sqrt(jd - md) * v);
                break;
            case Gen31::Kplus:
            case Gen31::Kminus: {
                double sg = g == Gen31::Kplus ? 1.0 : -1.0;
                HalfInt mp = g == Gen31::Kplus ? m + 1 : m - 1;
                out.add(j + 1, mp,
                        -sg * boost_Pplus(s.label, j) *
                            std::sqrt(jd + sg * md + 1.0) *
                            std::sqrt(jd + sg * md + 2.0) * v);
                out.add(j, mp,
                        boost_P(s.label, j) * std::sqrt(jd - sg * md) *
                            std::sqrt(jd + sg * md + 1.0) * v);
                out.add(j - 1, mp,
                        sg * boost_Pminus(s.label, j) *
                            std::sqrt(jd - sg * md) *
                            std::sqrt(jd - sg * md - 1.0) * v);
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// gamma = 1/2 coupling

Rep4Label CG4Half::target(int sigma) const {
    HalfInt dl = sigma > 0 ? half() : -half();
    return {source.lambda + dl, source.rho + 0.5 * sigma * double(A)};
}

Complex CG4Half::coeff(HalfInt J, int sigma, HalfInt j) const {
    if (j != J - half() && j != J + half()) return 0.0;
    if (j < abs(source.lambda)) return 0.0;
    double lam = source.lambda.to_double(), Jd = J.to_double();
    Complex ar = double(A) * source.rho;
    Complex den = std::sqrt(2.0 * Jd + 1.0) * psqrt(lam + ar);
    Complex aligned = psqrt(Jd + lam + 0.5) * psqrt(Jd + ar + 0.5);
    Complex opposed = psqrt(Jd - lam + 0.5) * psqrt(Jd - ar + 0.5);
    Complex iA{0.0, double(A)};
    const bool lower = j == J - half();
    if (sigma < 0) return (lower ? iA * opposed : aligned) / den;
    return (lower ? aligned : -iA * opposed) / den;
}

CG4Half cg4_half(const Rep4Label& l, int A) {
    if (near(l.rho, -double(A) * l.lambda.to_double()))
        throw NotDecomposable("coincident Casimir pairs at rho = -A lambda: " +
                              l.str());
    return {l, A};
}

// ---------------------------------------------------------------------------
// decomposability frontier

namespace {

// w lands on an integer inside (-2g, 2g)
bool on_frontier(Complex w, HalfInt gamma) {
    if (std::abs(w.imag()) > kLabelTol) return false;
    double n = std::round(w.real());
    if (std::abs(w.real() - n) > kLabelTol) return false;
    return std::abs(n) < 2.0 * gamma.to_double() - 0.5;
}

}  // namespace

bool decomposable4(const Rep4Label& l, HalfInt gamma, int A) {
    return !on_frontier(l.rho + double(A) * l.lambda.to_double(), gamma);
}

bool decomposable4_pair(const Rep4Label& l, HalfInt gamma1, HalfInt gamma2) {
    double lam = l.lambda.to_double();
    return !on_frontier(l.rho - lam, gamma1) && !on_frontier(l.rho + lam, gamma2);
}

// ---------------------------------------------------------------------------
// total-spin support

HalfInt total_j_min(HalfInt lambda, HalfInt gamma) {
    HalfInt eps = (lambda + gamma).is_integer() ? HalfInt(0) : half();
    return max(eps, abs(lambda) - gamma);
}

std::vector<HalfInt> omega_j(HalfInt lambda, HalfInt gamma, HalfInt J) {
    HalfInt base = total_j_min(lambda, gamma);
    if (J < base || !(J - base).is_integer())
        throw UnsupportedCoupling("J outside the total-spin set of lambda = " +
                                  lambda.str() + ", gamma = " + gamma.str());
    HalfInt lo, hi;
    if (J >= gamma - abs(lambda)) {
        lo = max(abs(lambda), J - gamma);
        hi = J + gamma;
    } else {
        lo = gamma - J;
        hi = gamma + J;
    }
    std::vector<HalfInt> out;
    for (HalfInt j = lo; j <= hi; j += 1) out.push_back(j);
    return out;
}

// ---------------------------------------------------------------------------
// Casimir blocks

CasimirBlock casimir_block(const Rep4Label& l, HalfInt gamma, int A, HalfInt J) {
    CasimirBlock b;
    b.source = l;
    b.gamma = gamma;
    b.A = A;
    b.J = J;
    b.js = omega_j(l.lambda, gamma, J);
    if (auto jm = l.j_max(); jm && b.js.back() > *jm)
        throw UnsupportedLabel("tower ends inside the block: " + l.str());

    const auto n = static_cast<Eigen::Index>(b.js.size());
    b.C1 = Matrix::Zero(n, n);
    b.C2 = Matrix::Zero(n, n);
    const double Jd = J.to_double(), g = gamma.to_double();
    const double lam = l.lambda.to_double();
    const Complex iA{0.0, double(A)};
    const Complex scalars2 = lam * lam + l.rho * l.rho - 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double j = b.js[static_cast<std::size_t>(k)].to_double();
        Complex P = boost_P(l, b.js[static_cast<std::size_t>(k)]);
        b.C1(k, k) = Jd * (Jd + 1.0) * 0.5 * (iA + P) -
                     (j * (j + 1.0) - g * (g + 1.0)) * 0.5 * (iA - P);
        b.C2(k, k) = (Jd * (Jd + 1.0) - j * (j + 1.0)) * (1.0 - iA * P) +
                     g * (g + 1.0) * (1.0 + iA * P) + scalars2;
        if (k + 1 < n) {
            double S = std::sqrt(Jd + j + g + 2.0) * std::sqrt(j + g - Jd + 1.0) *
                       std::sqrt(Jd + j - g + 1.0) * std::sqrt(Jd - j + g);
            Complex Pp = boost_Pplus(l, b.js[static_cast<std::size_t>(k)]);
            b.C1(k + 1, k) = 0.5 * Pp * S;
            b.C2(k + 1, k) = -iA * Pp * S;
        }
        if (k > 0) {
            double S = std::sqrt(Jd + j + g + 1.0) * std::sqrt(j + g - Jd) *
                       std::sqrt(Jd + j - g) * std::sqrt(Jd - j + g + 1.0);
            Complex Pm = boost_Pminus(l, b.js[static_cast<std::size_t>(k)]);
            b.C1(k - 1, k) = 0.5 * Pm * S;
            b.C2(k - 1, k) = -iA * Pm * S;
        }
    }

    b.decomposable = decomposable4(l, gamma, A);
    for (HalfInt nu = -gamma; nu <= gamma; nu += 1)
        if (abs(l.lambda + nu) <= J)
            b.predicted.push_back({l.lambda + nu, l.rho + double(A) * nu.to_double()});
    /* Count simultaneous eigenvectors at the predicted Casimir pairs.  On the
     * frontier two predicted labels are equivalent and share their pair, and
     * the shared eigenvalue carries a Jordan block, so the joint nullity drops
     * below the block dimension.  Evaluating at the exact predicted values
     * avoids the sqrt(eps) eigenvalue splitting a perturbed Jordan block shows
     * under a generic eigensolver. */
    std::vector<std::pair<Complex, Complex>> vals;
    for (const auto& p : b.predicted) {
        auto cv = casimir_values(p);
        bool seen = false;
        for (const auto& q : vals)
            seen = seen || (std::abs(q.first - cv.first) < 1e-9 &&
                            std::abs(q.second - cv.second) < 1e-9);
        if (!seen) vals.push_back(cv);
    }
    for (const auto& [c1, c2] : vals) {
        Matrix stacked(2 * n, n);
        stacked.topRows(n) = b.C1 - c1 * Matrix::Identity(n, n);
        stacked.bottomRows(n) = b.C2 - c2 * Matrix::Identity(n, n);
        Eigen::JacobiSVD<Matrix> svd(stacked);
        const double thresh = 1e-7 * svd.singularValues()(0);
        for (Eigen::Index k = 0; k < n; ++k)
            if (svd.singularValues()(k) < thresh) ++b.eigenvector_count;
    }
    return b;
}

// ---------------------------------------------------------------------------
// general-gamma coupling table

Complex cg4_stretched(const Rep4Label& l, HalfInt gamma, int A, HalfInt J,
                      HalfInt nu) {
    if (abs(nu) > gamma || !(gamma - nu).is_integer()) return 0.0;
    if (gamma == half())
        return cg4_half(l, A).coeff(J, nu.twice() > 0 ? 1 : -1, J - half());
    Complex total = 0.0;
    for (int s : {-1, 1}) {
        HalfInt tau = nu - (s > 0 ? half() : -half());
        if (abs(tau) > gamma - half()) continue;
        Rep4Label mid{l.lambda + tau, l.rho + double(A) * tau.to_double()};
        total += cg4_half(mid, A).coeff(J, s, J - half()) *
                 cg4_stretched(l, gamma - half(), A, J - half(), tau);
    }
    return total;
}

double CG4Table::orthogonality_residual() const {
    Matrix gram = B.transpose() * B;
    return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

CG4Table cg4_table(const Rep4Label& l, HalfInt gamma, int A, HalfInt J) {
    if (J < abs(l.lambda) + gamma)
        throw UnsupportedCoupling("full-width blocks need J >= |lambda| + gamma");
    if (!decomposable4(l, gamma, A))
        throw NotDecomposable("Casimirs are defective for " + l.str() +
                              " with gamma = " + gamma.str());
    CG4Table t;
    t.source = l;
    t.gamma = gamma;
    t.A = A;
    t.J = J;
    for (HalfInt j = J - gamma; j <= J + gamma; j += 1) t.js.push_back(j);
    const auto n = static_cast<Eigen::Index>(t.js.size());
    t.B = Matrix(n, n);

    if (gamma == half()) {
        CG4Half tab = cg4_half(l, A);
        Eigen::Index col = 0;
        for (int sigma : {-1, 1}) {
            t.labels.push_back(tab.target(sigma));
            for (Eigen::Index row = 0; row < n; ++row)
                t.B(row, col) = tab.coeff(J, sigma, t.js[static_cast<std::size_t>(row)]);
            ++col;
        }
        return t;
    }

    CasimirBlock blk = casimir_block(l, gamma, A, J);
    Tridiagonal tri;
    tri.diag = blk.C1.diagonal();
    tri.sub = Vector(n - 1);
    tri.super = Vector(n - 1);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        tri.sub(k) = blk.C1(k + 1, k);
        tri.super(k) = blk.C1(k, k + 1);
    }
    Eigen::Index col = 0;
    for (HalfInt nu = -gamma; nu <= gamma; nu += 1, ++col) {
        Rep4Label tgt{l.lambda + nu, l.rho + double(A) * nu.to_double()};
        t.labels.push_back(tgt);
        Complex value = Complex(0.0, 1.0) * tgt.lambda.to_double() * tgt.rho;
        Vector v = tridiag_null_vector(tri, value);
        Complex s = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) s += v(k) * v(k);
        v /= psqrt(s);
        Complex chain = cg4_stretched(l, gamma, A, J, nu);
        if (std::abs(v(0) - chain) > std::abs(v(0) + chain)) v = -v;
        t.B.col(col) = v;
    }
    return t;
}

double cg4_ratio_spread(const Rep4Label& l, HalfInt gamma, int A, HalfInt J0,
                        int n) {
    double worst = 0.0;
    std::vector<CG4Table> tabs;
    for (int k = 0; k <= n; ++k) tabs.push_back(cg4_table(l, gamma, A, J0 + k));
    for (HalfInt nu = -gamma; nu < gamma; nu += 1) {
        Rep4Label low{l.lambda + nu, l.rho + double(A) * nu.to_double()};
        auto col = static_cast<Eigen::Index>((nu + gamma).to_double());
        Complex alpha0 = 0.0;
        for (int k = 0; k <= n; ++k) {
            double Jd = (J0 + k).to_double(), lam = low.lambda.to_double();
            Complex ap = double(A) * low.rho;
            Complex factor = psqrt(Jd + lam + 1.0) * psqrt(Jd + ap + 1.0) /
                             (psqrt(Jd - lam) * psqrt(Jd - ap));
            Complex alpha = tabs[static_cast<std::size_t>(k)].B(0, col + 1) /
                            tabs[static_cast<std::size_t>(k)].B(0, col) / factor;
            if (k == 0)
                alpha0 = alpha;
            else
                worst = std::max(worst, std::abs(alpha - alpha0) / std::abs(alpha0));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Jordan-Schwinger operators

SU2TowerState js4_apply(JS4Kind kind, int A, int mu, const SU2TowerState& s) {
    const Rep4Label& l = s.label;
    double lam = l.lambda.to_double();
    if (near(l.rho, lam) || near(l.rho, -lam) || near(l.rho, lam + 1.0) ||
        near(l.rho, -(lam + 1.0)))
        throw UnsupportedLabel("spinor ladder needs rho != +-lambda, +-(lambda+1): " +
                               l.str());
    const bool tilde = kind == JS4Kind::Ttilde;
    SU2TowerState out;
    out.label = {l.lambda + (tilde ? half() : -half()),
                 l.rho + (tilde ? 0.5 : -0.5) * double(A)};
    out.j_cut = s.j_cut;
    const Complex iA{0.0, double(A)};
    const Complex ar = double(A) * l.rho;
    const HalfInt dm = mu > 0 ? half() : -half();
    for (const auto& [key, v] : s.amp) {
        HalfInt j = HalfInt::from_twice(key.first);
        HalfInt m = HalfInt::from_twice(key.second);
        double jd = j.to_double(), md = m.to_double();
        if (j.twice() > 0) {
            double wm = std::sqrt(jd - mu * md);
            double den = std::sqrt(2.0 * jd) * std::sqrt(2.0 * jd + 1.0);
            Complex c = tilde ? -double(mu) * iA * wm * psqrt(jd - lam) *
                                    psqrt(jd - ar) / den
                              : double(mu) * wm * psqrt(jd + lam) *
                                    psqrt(jd + ar) / den;
            out.add(j - half(), m + dm, c * v);
        }
        double wp = std::sqrt(jd + mu * md + 1.0);
        double den = std::sqrt(2.0 * jd + 1.0) * std::sqrt(2.0 * jd + 2.0);
        Complex c = tilde
                        ? wp * psqrt(jd + lam + 1.0) * psqrt(jd + ar + 1.0) / den
                        : iA * wp * psqrt(jd - lam + 1.0) * psqrt(jd - ar + 1.0) / den;
        out.add(j + half(), m + dm, c * v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization

std::string rep4_to_json(const Rep4Label& l) {
    nlohmann::json out;
    std::int64_t t = l.lambda.twice();
    out["lambda"] = t % 2 == 0 ? nlohmann::json::array({t / 2, 1})
                               : nlohmann::json::array({t, 2});
    out["rho"] = {l.rho.real(), l.rho.imag()};
    return out.dump();
}

Rep4Label rep4_from_json(const std::string& text) {
    auto js = nlohmann::json::parse(text);
    std::int64_t num = js.at("lambda").at(0), den = js.at("lambda").at(1);
    if (den != 1 && den != 2)
        throw std::invalid_argument("lambda denominator must be 1 or 2");
    HalfInt lam = den == 1 ? HalfInt::from_twice(2 * num) : HalfInt::from_twice(num);
    return {lam, Complex(js.at("rho").at(0), js.at("rho").at(1))};
}

std::string casimir_block_to_csv(const CasimirBlock& b) {
    std::ostringstream os;
    os << "j,c1_diag_re,c1_diag_im,c1_down_re,c1_down_im,"
          "c2_diag_re,c2_diag_im,c2_down_re,c2_down_im\n";
    const auto n = static_cast<Eigen::Index>(b.js.size());
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex d1 = b.C1(k, k), d2 = b.C2(k, k);
        Complex s1 = k > 0 ? b.C1(k - 1, k) : Complex(0.0);
        Complex s2 = k > 0 ? b.C2(k - 1, k) : Complex(0.0);
        os << b.js[static_cast<std::size_t>(k)].str() << "," << d1.real() << ","
           << d1.imag() << "," << s1.real() << "," << s1.imag() << ","
           << d2.real() << "," << d2.imag() << "," << s2.real() << ","
           << s2.imag() << "\n";
    }
    return os.str();
}

}  // namespace srt
