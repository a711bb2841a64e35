#include "srt/cg21.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace srt {

namespace {

// 0 if x is an integer, 1/2 otherwise (weight-lattice parity of a sum)
HalfInt sigma(HalfInt x) { return x.is_integer() ? HalfInt(0) : HalfInt::half(); }

bool is_principal(const Module& m) {
    return m.cls == RepClass::Continuous && m.jc.real() == -0.5 && m.jc.imag() != 0.0;
}

bool is_real_halfint(Complex j, HalfInt* out = nullptr) {
    if (j.imag() != 0.0) return false;
    double t = 2.0 * j.real();
    if (std::abs(t - std::round(t)) > 1e-12) return false;
    if (out) *out = HalfInt::from_twice(static_cast<std::int64_t>(std::llround(t)));
    return true;
}

Module integral_family(HalfInt eps) {
    // representative of the direct-integral family C^eps_(-1/2 + iS), S > 0
    Module m;
    m.cls = RepClass::Continuous;
    m.jc = Complex(-0.5, 0.0);
    m.eps = eps;
    return m;
}

void push_tower(DecompositionSet& set, RepClass cls, HalfInt jmin, int window,
                bool coeffs) {
    for (int k = 0; k <= window; ++k) {
        HalfInt J = jmin + k;
        DecompositionEntry e;
        e.label = cls == RepClass::DiscretePos ? Module::dpos(J) : Module::dneg(J);
        e.coefficients_available = coeffs;
        set.entries.push_back(e);
    }
    set.truncated = true;
}

}  // namespace

bool DecompositionSet::contains(const Module& m) const {
    for (const auto& e : entries) {
        if (e.label.cls != m.cls) continue;
        if (m.cls == RepClass::Continuous) {
            if (e.label.eps == m.eps && std::abs(e.label.jc - m.jc) < 1e-9) return true;
        } else if (e.label.j == m.j) {
            return true;
        }
    }
    return false;
}

DecompositionSet decompose(const Module& a, const Module& b, int window) {
    // the label set is symmetric in the two factors
    if (a.cls != RepClass::Finite && b.cls == RepClass::Finite)
        return decompose(b, a, window);

    DecompositionSet set;
    if (a.cls == RepClass::Finite) {
        HalfInt g = a.j;
        switch (b.cls) {
            case RepClass::Finite: {
                HalfInt lo = abs(g - b.j), hi = g + b.j;
                for (HalfInt J = lo; J <= hi; J += 1)
                    set.entries.push_back({Module::finite(J), 1, MeasureTag::Sum, true});
                return set;
            }
            case RepClass::DiscretePos:
            case RepClass::DiscreteNeg: {
                if (!(b.j > g - 1))
                    throw NotDecomposable("F_" + g.str() + " x D_" + b.j.str() +
                                          " is not diagonalisable (j <= gamma-1)");
                for (HalfInt nu = -g; nu <= g; nu += 1) {
                    Module J = b.cls == RepClass::DiscretePos ? Module::dpos(b.j + nu)
                                                              : Module::dneg(b.j + nu);
                    set.entries.push_back({J, 1, MeasureTag::Sum, true});
                }
                return set;
            }
            case RepClass::Continuous: {
                HalfInt jh;
                if (is_real_halfint(b.jc, &jh)) {
                    // canonical label has Re j >= -1/2, so j < -gamma is folded
                    // into j > gamma-1 already
                    if (!(jh > g - 1))
                        throw NotDecomposable("F_" + g.str() + " x C_" + jh.str() +
                                              " is not diagonalisable");
                }
                HalfInt E = sigma(g + b.eps);
                for (HalfInt nu = -g; nu <= g; nu += 1)
                    set.entries.push_back(
                        {Module::cont(b.jc + nu.to_double(), E), 1, MeasureTag::Sum, true});
                return set;
            }
        }
    }

    const bool apos = a.cls == RepClass::DiscretePos, aneg = a.cls == RepClass::DiscreteNeg;
    const bool bpos = b.cls == RepClass::DiscretePos, bneg = b.cls == RepClass::DiscreteNeg;
    if ((apos && bpos) || (aneg && bneg)) {
        push_tower(set, a.cls, a.j + b.j + 1, window, true);
        return set;
    }
    if ((apos && bneg) || (aneg && bpos)) {
        HalfInt eps = sigma(a.j + b.j);
        for (HalfInt J = eps; J <= a.j - b.j - 1; J += 1)
            set.entries.push_back({apos ? Module::dpos(J) : Module::dneg(J), 1,
                                   MeasureTag::Sum, false});
        for (HalfInt J = eps; J <= b.j - a.j - 1; J += 1)
            set.entries.push_back({apos ? Module::dneg(J) : Module::dpos(J), 1,
                                   MeasureTag::Sum, false});
        set.entries.push_back({integral_family(eps), 1, MeasureTag::Integral, false});
        return set;
    }
    if ((apos || aneg) && b.cls == RepClass::Continuous) {
        if (!is_principal(b)) throw UnsupportedCoupling("D x C needs a principal label");
        HalfInt E = sigma(a.j + b.eps);
        push_tower(set, a.cls, E, window, false);
        set.entries.push_back({integral_family(E), 1, MeasureTag::Integral, false});
        return set;
    }
    if (a.cls == RepClass::Continuous && (bpos || bneg))
        return decompose(b, a, window);
    if (a.cls == RepClass::Continuous && b.cls == RepClass::Continuous) {
        if (!is_principal(a) || !is_principal(b))
            throw UnsupportedCoupling("C x C needs principal labels");
        HalfInt E = sigma(a.eps + b.eps);
        push_tower(set, RepClass::DiscretePos, E, window, false);
        push_tower(set, RepClass::DiscreteNeg, E, window, false);
        set.entries.push_back({integral_family(E), 2, MeasureTag::Integral, false});
        return set;
    }
    throw UnsupportedCoupling("no decomposition rule for " + a.str() + " x " + b.str());
}

bool decomposable(const Module& a, const Module& b) {
    try {
        decompose(a, b, 0);
        return true;
    } catch (const NotDecomposable&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// weight blocks and the total Casimir

std::vector<HalfInt> block_rows(const Module& a, const Module& b, HalfInt M) {
    std::vector<HalfInt> rows;
    auto push_range = [&](HalfInt lo, HalfInt hi) {
        for (HalfInt m = lo; m <= hi; m += 1)
            if (a.in_support(m) && b.in_support(M - m)) rows.push_back(m);
    };
    if (a.cls == RepClass::Finite) {
        push_range(-a.j, a.j);
    } else if (b.cls == RepClass::Finite) {
        push_range(M - b.j, M + b.j);
    } else if (a.has_lower_bound() && b.has_upper_bound()) {
        throw UnsupportedCoupling("weight block is infinite-dimensional");
    } else if (a.has_lower_bound() && b.has_lower_bound()) {
        push_range(a.j + 1, M - b.j - 1);
    } else if (a.has_upper_bound() && b.has_upper_bound()) {
        push_range(M + b.j + 1, -a.j - 1);
    } else {
        throw UnsupportedCoupling("weight block is infinite-dimensional");
    }
    return rows;
}

Matrix q_block(const Module& a, const Module& b, HalfInt M) {
    auto rows = block_rows(a, b, M);
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Complex ja = a.jval(), jb = b.jval();
    Complex qa = -ja * (ja + 1.0), qb = -jb * (jb + 1.0);
    Matrix Q = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        HalfInt m1 = rows[i], m2 = M - m1;
        Q(i, i) = qa + qb - 2.0 * m1.to_double() * m2.to_double();
        if (i + 1 < n) {
            Complex off = gamma_plus(ja, m1) * gamma_minus(jb, m2);
            Q(i + 1, i) = off;
            Q(i, i + 1) = off;  // Gamma+(x,m-1) = Gamma-(x,m) makes Q symmetric
        }
    }
    return Q;
}

int q_block_eigenvector_count(const Module& a, const Module& b, HalfInt M) {
    auto pairs = solve_eigen_general(q_block(a, b, M));
    int count = 0;
    for (const auto& p : pairs) count += static_cast<int>(p.vectors.size());
    return count;
}

// ---------------------------------------------------------------------------
// CGBlock / CGTable lookups

int CGBlock::row_of(HalfInt m) const {
    for (std::size_t i = 0; i < m1.size(); ++i)
        if (m1[i] == m) return static_cast<int>(i);
    return -1;
}

int CGBlock::col_of(const Module& mod) const {
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const Module& l = labels[k].mod;
        if (l.cls != mod.cls) continue;
        if (mod.cls == RepClass::Continuous) {
            if (l.eps == mod.eps && std::abs(l.jc - mod.jc) < 1e-9) return static_cast<int>(k);
        } else if (l.j == mod.j) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

const CGBlock* CGTable::block(HalfInt M) const {
    if (blocks.empty()) return nullptr;
    std::int64_t off = (M - blocks.front().M).twice() / 2;
    if (off < 0 || off >= static_cast<std::int64_t>(blocks.size())) return nullptr;
    if (!M.same_parity(blocks.front().M)) return nullptr;
    return &blocks[static_cast<std::size_t>(off)];
}

Complex CGTable::coeff(const Module& J, HalfInt M, HalfInt m1) const {
    if (!v1.in_support(m1) || !v2.in_support(M - m1)) return 0.0;
    if (!J.in_support(M)) return 0.0;
    const CGBlock* b = block(M);
    if (!b) throw WindowTooSmall("weight " + M.str() + " outside the table window");
    int r = b->row_of(m1), c = b->col_of(J);
    if (r < 0 || c < 0) return 0.0;
    return b->B(r, c);
}

double CGTable::orthogonality_residual() const {
    double worst = 0.0;
    for (const auto& b : blocks) {
        if (b.B.size() == 0) continue;
        Matrix G = b.B.transpose() * b.B;
        G -= Matrix::Identity(G.rows(), G.cols());
        worst = std::max(worst, G.cwiseAbs().maxCoeff());
        if (b.B.rows() == b.B.cols()) {
            Matrix H = b.B * b.B.transpose();
            H -= Matrix::Identity(H.rows(), H.cols());
            worst = std::max(worst, H.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double CGTable::recursion_residual() const {
    double worst = 0.0;
    Complex j1 = v1.jval(), j2 = v2.jval();
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
        const CGBlock &lo = blocks[i], &hi = blocks[i + 1];
        HalfInt M = lo.M;
        auto clo = [&](HalfInt m, int col) -> Complex {
            int r = lo.row_of(m);
            return (r < 0 || col < 0) ? Complex(0.0) : lo.B(r, col);
        };
        auto chi = [&](HalfInt m, int col) -> Complex {
            int r = hi.row_of(m);
            return (r < 0 || col < 0) ? Complex(0.0) : hi.B(r, col);
        };
        // extended row range so boundary vanishing is genuinely exercised
        HalfInt mu_lo = min(lo.m1.front(), hi.m1.front()) - 1;
        HalfInt mu_hi = max(lo.m1.back(), hi.m1.back()) + 1;
        std::vector<CoupledLabel> all = hi.labels;
        for (const auto& l : lo.labels)
            if (hi.col_of(l.mod) < 0) all.push_back(l);
        for (const auto& lab : all) {
            int klo = lo.col_of(lab.mod), khi = hi.col_of(lab.mod);
            Complex J = lab.jraw;
            for (HalfInt mu = mu_lo; mu <= mu_hi; mu += 1) {
                // raising relation between blocks M and M+1
                Complex up = gamma_plus(J, M) * chi(mu, khi) -
                             gamma_plus(j1, mu - 1) * clo(mu - 1, klo) -
                             gamma_plus(j2, M - mu) * clo(mu, klo);
                // lowering relation between blocks M+1 and M
                Complex dn = gamma_minus(J, lo.M + 1) * clo(mu, klo) -
                             gamma_minus(j1, mu + 1) * chi(mu + 1, khi) -
                             gamma_minus(j2, M - mu + 1) * chi(mu, khi);
                worst = std::max({worst, std::abs(up), std::abs(dn)});
            }
        }
    }
    return worst;
}

bool CGTable::ratio_check(double tol, double* worst_out) const {
    double worst = 0.0;
    if (v1.cls == RepClass::Finite && !swapped) {
        HalfInt g = v1.j;
        // full label list lives on the widest (anchor) block
        const CGBlock* full = &blocks.front();
        for (const auto& b : blocks)
            if (b.labels.size() > full->labels.size()) full = &b;
        for (std::size_t k = 0; k + 1 < full->labels.size(); ++k) {
            Complex J = full->labels[k].jraw;
            bool have_ref = false;
            Complex alpha_ref = 0.0;
            for (const auto& b : blocks) {
                int r = b.row_of(-g);
                int c0 = b.col_of(full->labels[k].mod);
                int c1 = b.col_of(full->labels[k + 1].mod);
                if (r < 0 || c0 < 0 || c1 < 0) continue;
                Complex lo = b.B(r, c0), hi = b.B(r, c1);
                double Md = b.M.to_double();
                Complex denom = psqrt(J - Md + 1.0);
                if (std::abs(lo) < 1e-9 || std::abs(denom) < 1e-9) continue;
                Complex alpha = hi / lo * psqrt(J + Md + 1.0) / denom;
                if (!have_ref) {
                    alpha_ref = alpha;
                    have_ref = true;
                } else {
                    worst = std::max(worst,
                                     std::abs(alpha - alpha_ref) / (1.0 + std::abs(alpha_ref)));
                }
            }
        }
    }
    if (worst_out) *worst_out = worst;
    return worst <= tol;
}

// ---------------------------------------------------------------------------
// table construction

namespace {

// coupled labels J = j + nu, nu = -g..g, in the class dictated by the coupling
std::vector<CoupledLabel> coupled_labels(HalfInt g, const Module& x) {
    std::vector<CoupledLabel> labels;
    HalfInt E = x.cls == RepClass::Continuous ? sigma(g + x.eps) : HalfInt(0);
    for (HalfInt nu = -g; nu <= g; nu += 1) {
        Complex jr = x.jval() + nu.to_double();
        CoupledLabel l;
        l.jraw = jr;
        switch (x.cls) {
            case RepClass::DiscretePos: l.mod = Module::dpos(x.j + nu); break;
            case RepClass::DiscreteNeg: l.mod = Module::dneg(x.j + nu); break;
            case RepClass::Continuous: l.mod = Module::cont(jr, E); break;
            case RepClass::Finite: l.mod = Module::finite(x.j + nu); break;
        }
        labels.push_back(l);
    }
    return labels;
}

/* Per-column sign at the anchor block.  The reference entry is the
 * mu = +gamma row (falling back to the highest nonvanishing row).  In the
 * rescaled convention that entry has argument q * pi/2 with q = 0 except
 * above the lowest-weight edge of F (x) D+, where the gamma - nu root
 * factors of the mu = gamma row have each turned imaginary, giving
 * q = gamma - nu quarter turns.  The residual +-1 freedom is resolved by
 * rotating the reference by i^(-q) into the right half-plane. */
void fix_column_sign(Vector& col, int quarter_turns = 0) {
    double xmax = col.cwiseAbs().maxCoeff();
    Complex b = 0.0;
    for (Eigen::Index r = col.size(); r-- > 0;) {
        if (std::abs(col[r]) > 1e-12 * xmax) {
            b = col[r];
            break;
        }
    }
    static const Complex iq[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // i^-q
    b *= iq[((quarter_turns % 4) + 4) % 4];
    bool flip;
    if (std::abs(b.real()) > 1e-12 * xmax)
        flip = b.real() < 0.0;
    else
        flip = b.imag() < 0.0;
    if (flip) col = -col;
}

// one ladder step away from the anchor; dir = +1 raises, -1 lowers
CGBlock ladder_step(const CGBlock& src, int dir, const Module& v1, const Module& v2) {
    CGBlock dst;
    dst.M = src.M + (dir > 0 ? HalfInt(1) : HalfInt(-1));
    dst.m1 = block_rows(v1, v2, dst.M);
    Complex ja = v1.jval(), jb = v2.jval();
    for (const auto& lab : src.labels)
        if (lab.mod.in_support(dst.M)) dst.labels.push_back(lab);
    dst.B = Matrix::Zero(static_cast<Eigen::Index>(dst.m1.size()),
                         static_cast<Eigen::Index>(dst.labels.size()));
    for (std::size_t k = 0; k < dst.labels.size(); ++k) {
        int ks = src.col_of(dst.labels[k].mod);
        Complex J = dst.labels[k].jraw;
        Complex denom = dir > 0 ? gamma_plus(J, src.M) : gamma_minus(J, src.M);
        if (std::abs(denom) < 1e-14)
            throw NumericError("ladder factor vanished at M=" + src.M.str());
        auto c = [&](HalfInt m) -> Complex {
            int r = src.row_of(m);
            return r < 0 ? Complex(0.0) : src.B(r, ks);
        };
        for (std::size_t i = 0; i < dst.m1.size(); ++i) {
            HalfInt mu = dst.m1[i];
            Complex v;
            if (dir > 0)
                v = c(mu - 1) * gamma_plus(ja, mu - 1) + c(mu) * gamma_plus(jb, src.M - mu);
            else
                v = c(mu + 1) * gamma_minus(ja, mu + 1) + c(mu) * gamma_minus(jb, src.M - mu);
            dst.B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v / denom;
        }
    }
    return dst;
}

CGTable build_finite_x(const Module& f, const Module& x, int window) {
    decompose(f, x, 0);  // throws if not decomposable / unsupported
    HalfInt g = f.j;
    auto labels = coupled_labels(g, x);

    HalfInt anchor, Mlo, Mhi;
    switch (x.cls) {
        case RepClass::DiscretePos:
            anchor = x.j + g + 1;
            Mlo = x.j - g + 1;
            Mhi = anchor + window;
            break;
        case RepClass::DiscreteNeg:
            anchor = -(x.j + g + 1);
            Mlo = anchor - window;
            Mhi = -(x.j - g) - 1;
            break;
        case RepClass::Continuous:
            anchor = sigma(g + x.eps);
            Mlo = anchor - window;
            Mhi = anchor + window;
            break;
        case RepClass::Finite:
            anchor = sigma(g + x.j);
            Mlo = -(g + x.j);
            Mhi = g + x.j;
            break;
    }

    // anchor block: all 2g+1 rows and columns are present there
    CGBlock a;
    a.M = anchor;
    a.m1 = block_rows(f, x, anchor);
    a.labels = labels;
    const Eigen::Index n = static_cast<Eigen::Index>(a.m1.size());
    if (n != g.twice() + 1 || static_cast<Eigen::Index>(labels.size()) != n)
        throw NumericError("anchor block is not full");

    Matrix Q = q_block(f, x, anchor);
    Tridiagonal T;
    T.diag = Q.diagonal();
    T.sub.resize(n - 1);
    T.super.resize(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        T.sub[i] = Q(i + 1, i);
        T.super[i] = Q(i, i + 1);
    }
    a.B = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex J = labels[static_cast<std::size_t>(k)].jraw;
        Vector col = n == 1 ? Vector::Ones(1).eval()
                            : tridiag_null_vector(T, -J * (J + 1.0));
        Complex s = (col.array() * col.array()).sum();
        if (std::abs(s) < 1e-12)
            throw NumericError("isotropic eigenvector; cannot normalise bilinearly");
        col /= psqrt(s);
        int q = 0;
        if (x.cls == RepClass::DiscretePos)
            q = static_cast<int>(g.twice() - (-g.twice() + 2 * k)) / 2;  // gamma - nu
        fix_column_sign(col, q);
        a.B.col(k) = col;
    }

    CGTable t;
    t.v1 = f;
    t.v2 = x;
    t.window = window;
    std::vector<CGBlock> down, up;
    {
        CGBlock cur = a;
        for (HalfInt M = anchor - 1; M >= Mlo; M -= 1) {
            cur = ladder_step(cur, -1, f, x);
            down.push_back(cur);
        }
    }
    {
        CGBlock cur = a;
        for (HalfInt M = anchor + 1; M <= Mhi; M += 1) {
            cur = ladder_step(cur, +1, f, x);
            up.push_back(cur);
        }
    }
    for (auto it = down.rbegin(); it != down.rend(); ++it) t.blocks.push_back(std::move(*it));
    t.blocks.push_back(std::move(a));
    for (auto& b : up) t.blocks.push_back(std::move(b));
    return t;
}

CGTable build_dd(const Module& a, const Module& b, int window) {
    const bool pos = a.cls == RepClass::DiscretePos;
    const int dir = pos ? +1 : -1;
    HalfInt j1 = a.j, j2 = b.j;
    HalfInt bottom = pos ? j1 + j2 + 2 : -(j1 + j2 + 2);

    CGTable t;
    t.v1 = a;
    t.v2 = b;
    t.window = window;

    CGBlock cur;
    cur.M = bottom;
    cur.m1 = block_rows(a, b, bottom);
    {
        CoupledLabel l;
        HalfInt J = j1 + j2 + 1;
        l.mod = pos ? Module::dpos(J) : Module::dneg(J);
        l.jraw = Complex(J.to_double(), 0.0);
        cur.labels.push_back(l);
        cur.B = Matrix::Ones(1, 1);
    }
    t.blocks.push_back(cur);

    for (int step = 1; step <= window; ++step) {
        CGBlock next = ladder_step(cur, dir, a, b);
        // the newborn coupled label J with |M| = J + 1 spans the orthogonal
        // complement of the laddered columns (total Casimir is Hermitian here)
        HalfInt J = pos ? next.M - 1 : -next.M - 1;
        CoupledLabel l;
        l.mod = pos ? Module::dpos(J) : Module::dneg(J);
        l.jraw = Complex(J.to_double(), 0.0);
        const Eigen::Index n = static_cast<Eigen::Index>(next.m1.size());
        Eigen::HouseholderQR<Matrix> qr(next.B);
        Matrix Qfull = qr.householderQ();
        Vector w = Qfull.col(n - 1);
        // phase: minimal-m1 nonzero coefficient positive real
        for (Eigen::Index r = 0; r < n; ++r) {
            if (std::abs(w[r]) > 1e-12) {
                w *= std::abs(w[r]) / w[r];
                break;
            }
        }
        next.labels.push_back(l);
        next.B.conservativeResize(n, next.B.cols() + 1);
        next.B.col(next.B.cols() - 1) = w;
        t.blocks.push_back(next);
        cur = std::move(next);
    }
    if (!pos) std::reverse(t.blocks.begin(), t.blocks.end());
    return t;
}

CGTable swap_table(CGTable&& c, const Module& a, const Module& b) {
    HalfInt g = c.v1.j;  // canonical first factor is finite
    CGTable s;
    s.v1 = a;
    s.v2 = b;
    s.window = c.window;
    s.swapped = true;
    for (auto& blk : c.blocks) {
        CGBlock nb;
        nb.M = blk.M;
        nb.labels = blk.labels;
        const Eigen::Index n = blk.B.rows();
        nb.m1.resize(static_cast<std::size_t>(n));
        nb.B.resize(n, blk.B.cols());
        for (Eigen::Index i = 0; i < n; ++i) {
            // rows reverse: new first-factor weight is M - mu
            nb.m1[static_cast<std::size_t>(i)] =
                blk.M - blk.m1[static_cast<std::size_t>(n - 1 - i)];
            for (Eigen::Index k = 0; k < blk.B.cols(); ++k) {
                // B(J,M|j,m;g,mu) = (-1)^(J-j-g) B(J,M|g,mu;j,m); the exponent
                // nu - g is an integer read off the column label (edge blocks
                // drop columns, so the column index is not a reliable proxy)
                double ex = (blk.labels[static_cast<std::size_t>(k)].jraw -
                             c.v2.jval()).real() - g.to_double();
                int sign = (std::llround(ex) % 2 == 0) ? 1 : -1;
                nb.B(i, k) = static_cast<double>(sign) * blk.B(n - 1 - i, k);
            }
        }
        s.blocks.push_back(std::move(nb));
    }
    return s;
}

}  // namespace

CGTable cg_table(const Module& a, const Module& b, int window) {
    if (a.cls == RepClass::Finite) {
        if (b.cls == RepClass::Finite && a.j > b.j)
            return swap_table(cg_table(b, a, window), a, b);
        return build_finite_x(a, b, window);
    }
    if (b.cls == RepClass::Finite) return swap_table(cg_table(b, a, window), a, b);
    if ((a.cls == RepClass::DiscretePos && b.cls == RepClass::DiscretePos) ||
        (a.cls == RepClass::DiscreteNeg && b.cls == RepClass::DiscreteNeg))
        return build_dd(a, b, window);
    throw UnsupportedCoupling("coefficients unavailable for " + a.str() + " x " + b.str());
}

CGTable cg_finite_discrete(HalfInt gamma, HalfInt j, int sign, int window) {
    return cg_table(Module::finite(gamma), sign >= 0 ? Module::dpos(j) : Module::dneg(j),
                    window);
}

CGTable cg_finite_continuous(HalfInt gamma, Complex j, HalfInt eps, int window) {
    return cg_table(Module::finite(gamma), Module::cont(j, eps), window);
}

CGTable cg_discrete_discrete(HalfInt j, HalfInt jp, int sign, int window) {
    return sign >= 0 ? cg_table(Module::dpos(j), Module::dpos(jp), window)
                     : cg_table(Module::dneg(j), Module::dneg(jp), window);
}

Vector lowest_weight_vector(HalfInt gamma, HalfInt j, HalfInt mu) {
    if (abs(mu) > gamma || !mu.same_parity(gamma))
        throw std::invalid_argument("mu must lie in -gamma..gamma");
    const Eigen::Index n = gamma.twice() + 1;
    Vector v = Vector::Zero(n);
    Complex jd(j.to_double(), 0.0);
    Complex prod = 1.0;
    for (HalfInt nu = -gamma; nu <= mu; nu += 1) {
        Eigen::Index idx = (nu + gamma).twice() / 2;
        v[idx] = static_cast<double>(parity_sign(gamma + nu)) * prod;
        // extend the product Prod_{sigma=-gamma}^{nu} G+(j, j+mu-sigma)/G+(gamma, sigma)
        if (nu < mu)
            prod *= gamma_plus(jd, j + mu - nu) /
                    gamma_plus(Complex(gamma.to_double(), 0.0), nu);
    }
    return v;
}

std::string cg_to_json(const CGTable& t) {
    using nlohmann::json;
    auto mod_json = [](const Module& m) {
        json o;
        switch (m.cls) {
            case RepClass::DiscretePos: o["class"] = "D+"; break;
            case RepClass::DiscreteNeg: o["class"] = "D-"; break;
            case RepClass::Continuous: o["class"] = "C"; break;
            case RepClass::Finite: o["class"] = "F"; break;
        }
        Complex j = m.jval();
        o["j"] = {j.real(), j.imag()};
        if (m.cls == RepClass::Continuous) o["epsilon"] = m.eps.to_double();
        return o;
    };
    auto mat_json = [](const Matrix& M) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < M.cols(); ++k)
                row.push_back({M(i, k).real(), M(i, k).imag()});
            rows.push_back(row);
        }
        return rows;
    };
    json out;
    out["coupling"] = {mod_json(t.v1), mod_json(t.v2)};
    out["convention"] = "appB-rescaled";
    out["blocks"] = json::array();
    for (const auto& b : t.blocks) {
        json blk;
        blk["M"] = b.M.to_double();
        blk["labels"] = json::array();
        for (const auto& l : b.labels) blk["labels"].push_back(mod_json(l.mod));
        blk["B"] = mat_json(b.B);
        blk["A"] = mat_json(b.B.transpose());
        out["blocks"].push_back(std::move(blk));
    }
    return out.dump(2);
}

}  // namespace srt
