#include "srt/racah.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <mutex>

namespace srt {

namespace {

std::string module_tag(const Module& m) {
    char buf[96];
    if (m.cls == RepClass::Continuous) {
        std::snprintf(buf, sizeof buf, "C%s(%.17g,%.17g)", m.eps.str().c_str(),
                      m.jc.real(), m.jc.imag());
    } else {
        const char* c = m.cls == RepClass::DiscretePos   ? "D+"
                        : m.cls == RepClass::DiscreteNeg ? "D-"
                                                         : "F";
        std::snprintf(buf, sizeof buf, "%s%s", c, m.j.str().c_str());
    }
    return buf;
}

// (-1)^x for exponents that are integers up to rounding; falls back to the
// principal exp(i pi x) for genuinely non-integer exponents
Complex minus_one_pow(Complex x) {
    long n = std::lround(x.real());
    if (std::abs(x.imag()) < 1e-9 && std::abs(x.real() - n) < 1e-9)
        return (n % 2 == 0) ? Complex(1.0) : Complex(-1.0);
    return std::exp(Complex(0.0, M_PI) * x);
}

Complex dfac(const Module& m) {  // D(j) = sqrt(2j+1)
    return psqrt(2.0 * m.jval() + 1.0);
}

// reference total weights: the lowest/innermost weight and a neighbour
std::pair<HalfInt, std::optional<HalfInt>> reference_weights(const Module& j) {
    switch (j.cls) {
        case RepClass::DiscretePos: return {j.j + 1, j.j + 2};
        case RepClass::DiscreteNeg: return {-j.j - 1, -j.j - 2};
        case RepClass::Continuous: return {j.eps, j.eps + 1};
        case RepClass::Finite: {
            HalfInt m0 = j.j.is_integer() ? HalfInt(0) : HalfInt::half();
            if (j.j == HalfInt(0)) return {m0, std::nullopt};
            return {m0, m0 + 1 <= j.j ? m0 + 1 : m0 - 1};
        }
    }
    return {HalfInt(0), std::nullopt};
}

bool is_integral_candidate(const Module& J) {
    return J.cls == RepClass::Continuous && J.jc.real() == -0.5 && J.jc.imag() != 0.0;
}

}  // namespace

bool RacahKey::operator==(const RacahKey& o) const {
    return j1 == o.j1 && j2 == o.j2 && j12 == o.j12 && j3 == o.j3 && j == o.j &&
           j23 == o.j23;
}

std::string RacahKey::str() const {
    return "[" + module_tag(j1) + " " + module_tag(j2) + " " + module_tag(j12) + "; " +
           module_tag(j3) + " " + module_tag(j) + " " + module_tag(j23) + "]";
}

std::size_t RacahKeyHash::operator()(const RacahKey& k) const {
    return std::hash<std::string>{}(k.str());
}

CouplingKind classify_coupling(const Module& a, const Module& b, const Module& J) {
    DecompositionSet set;
    try {
        // grow the window so unbounded same-sign towers reach J
        int w = 40;
        if (J.cls != RepClass::Continuous && a.cls != RepClass::Finite &&
            b.cls != RepClass::Finite && a.cls == b.cls) {
            std::int64_t need = (J.j - (a.j + b.j)).twice() + 4;
            if (need > w) w = static_cast<int>(need);
        }
        set = decompose(a, b, w);
    } catch (const NotDecomposable&) {
        return CouplingKind::Absent;
    }
    if (set.contains(J)) return CouplingKind::Discrete;
    if (is_integral_candidate(J)) {
        for (const auto& e : set.entries)
            if (e.measure == MeasureTag::Integral && e.label.eps == J.eps)
                return CouplingKind::Integral;
    }
    return CouplingKind::Absent;
}

std::string racah_to_json(const RacahKey& key, const RacahValue& v) {
    nlohmann::json out;
    auto lab = [](const Module& m) {
        nlohmann::json j;
        switch (m.cls) {
            case RepClass::DiscretePos: j["class"] = "D+"; break;
            case RepClass::DiscreteNeg: j["class"] = "D-"; break;
            case RepClass::Continuous: j["class"] = "C"; break;
            case RepClass::Finite: j["class"] = "F"; break;
        }
        Complex z = m.jval();
        j["j"] = {z.real(), z.imag()};
        if (m.cls == RepClass::Continuous) j["epsilon"] = m.eps.to_double();
        return j;
    };
    out["key"] = {{"j1", lab(key.j1)},   {"j2", lab(key.j2)}, {"j12", lab(key.j12)},
                  {"j3", lab(key.j3)},   {"j", lab(key.j)},   {"j23", lab(key.j23)}};
    out["value"] = {v.value.real(), v.value.imag()};
    out["m_residual"] = v.m_independence_residual;
    out["window"] = v.window;
    return out.dump();
}

RacahEngine::RacahEngine(int window, int max_window)
    : window_(window), max_window_(max_window) {}

std::size_t RacahEngine::cached_keys() const {
    std::shared_lock lock(cache_mu_);
    return cache_.size();
}

std::shared_ptr<const CGTable> RacahEngine::table(const Module& a, const Module& b,
                                                  int window) {
    const std::string key = module_tag(a) + "*" + module_tag(b);
    {
        std::shared_lock lock(table_mu_);
        auto it = tables_.find(key);
        if (it != tables_.end() && it->second->window >= window) return it->second;
    }
    auto fresh = std::make_shared<const CGTable>(cg_table(a, b, window));
    std::unique_lock lock(table_mu_);
    auto& slot = tables_[key];
    if (!slot || slot->window < window) slot = fresh;
    return slot;
}

Complex RacahEngine::contract(const RacahKey& k, HalfInt m, int window) {
    auto t1 = table(k.j1, k.j23, window);  // A(j1,m1; j23,m23 | j,m)
    auto t2 = table(k.j2, k.j3, window);   // A(j2,m2; j3,m3 | j23,m23)
    auto t3 = table(k.j1, k.j2, window);   // B(j12,m12 | j1,m1; j2,m2)
    auto t4 = table(k.j12, k.j3, window);  // B(j,m | j12,m12; j3,m3)

    Complex sum = 0.0;
    for (HalfInt m1 : block_rows(k.j1, k.j23, m)) {
        Complex a1 = t1->coeff(k.j, m, m1);
        if (a1 == 0.0) continue;
        HalfInt m23 = m - m1;
        for (HalfInt m2 : block_rows(k.j2, k.j3, m23)) {
            Complex a2 = t2->coeff(k.j23, m23, m2);
            if (a2 == 0.0) continue;
            HalfInt m12 = m1 + m2;
            Complex b1 = t3->coeff(k.j12, m12, m1);
            if (b1 == 0.0) continue;
            sum += a1 * a2 * b1 * t4->coeff(k.j, m, m12);
        }
    }
    return sum;
}

/* Evaluate at m, growing the window on demand and confirming stability by a
 * re-evaluation 8 blocks wider (a Cauchy check; the sums at fixed m are
 * finite, so agreement certifies completeness). */
Complex RacahEngine::eval_stable(const RacahKey& k, HalfInt m, int& window) {
    for (;;) {
        try {
            Complex v = contract(k, m, window);
            Complex vp = contract(k, m, window + 8);
            if (std::abs(vp - v) <= 1e-12 * std::max(1.0, std::abs(vp))) return vp;
            window += 8;
        } catch (const WindowTooSmall&) {
            if (window >= max_window_)
                throw WindowTooSmall("racah window exhausted at " +
                                     std::to_string(window) + " for " + k.str());
            window = std::min(max_window_, 2 * window);
        }
    }
}

RacahValue RacahEngine::racah(const RacahKey& key) {
    {
        std::shared_lock lock(cache_mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }

    const std::array<std::array<const Module*, 3>, 4> couplings = {{
        {&key.j1, &key.j2, &key.j12},
        {&key.j2, &key.j3, &key.j23},
        {&key.j12, &key.j3, &key.j},
        {&key.j1, &key.j23, &key.j},
    }};
    bool admissible = true;
    for (const auto& c : couplings) {
        CouplingKind kind = classify_coupling(*c[0], *c[1], *c[2]);
        if (kind == CouplingKind::Integral)
            throw UnsupportedCoupling("integral-measure internal label in " + key.str());
        if (kind == CouplingKind::Absent) admissible = false;
    }

    RacahValue out;
    auto [m0, m1] = reference_weights(key.j);
    out.m_used = m0;
    out.window = window_;
    if (admissible) {
        int w = window_;
        Complex v0 = eval_stable(key, m0, w);
        out.value = v0;
        if (m1) {
            Complex v1 = eval_stable(key, *m1, w);
            out.m_independence_residual = std::abs(v1 - v0);
        }
        out.window = w;
    }

    std::unique_lock lock(cache_mu_);
    return cache_.emplace(key, out).first->second;
}

Complex RacahEngine::value(const Module& j1, const Module& j2, const Module& j12,
                           const Module& j3, const Module& j, const Module& j23) {
    return racah(RacahKey{j1, j2, j12, j3, j, j23}).value;
}

std::array<double, 3> RacahEngine::symmetry_residuals(const Module& j1,
                                                      const Module& j2,
                                                      const Module& k1,
                                                      const Module& k2,
                                                      const Module& J) {
    const Module half = Module::finite(HalfInt::half());
    const Complex dj1 = dfac(j1), dj2 = dfac(j2), dk1 = dfac(k1), dk2 = dfac(k2);

    Complex l1 = value(j1, half, k1, j2, J, k2);
    Complex r1 = minus_one_pow(j1.jval() + j2.jval() - k1.jval() - k2.jval()) *
                 (dk1 * dk2 / (dj1 * dj2)) * value(k1, half, j1, k2, J, j2);

    Complex l2 = value(half, j1, k1, J, j2, k2);
    Complex r2 = minus_one_pow(j1.jval() + j2.jval() - k1.jval() - k2.jval()) *
                 (dk1 * dk2 / (dj1 * dj2)) * value(half, k1, j1, J, k2, j2);

    Complex l3 = value(J, j1, j2, half, k2, k1);
    Complex r3 = minus_one_pow(j1.jval() + k2.jval() - k1.jval() - j2.jval()) *
                 (dk1 * dj2 / (dj1 * dk2)) * value(J, k1, k2, half, j2, j1);

    return {std::abs(l1 - r1), std::abs(l2 - r2), std::abs(l3 - r3)};
}

double RacahEngine::pentagon_residual(const Module& j1, const Module& j2,
                                      const Module& j3, const Module& j4,
                                      const Module& j, const Module& j12,
                                      const Module& j123, const Module& j23,
                                      const Module& j234, const Module& j34,
                                      int variant) {
    auto R = [this](const Module& a, const Module& b, const Module& c, const Module& d,
                    const Module& e, const Module& f) { return value(a, b, c, d, e, f); };

    auto sum_over = [this](const Module& pa, const Module& pb, auto term) {
        DecompositionSet set;
        try {
            set = decompose(pa, pb, window_);
        } catch (const NotDecomposable&) {
            return Complex(0.0);
        }
        Complex s = 0.0;
        for (const auto& e : set.entries) {
            if (e.measure == MeasureTag::Integral)
                throw UnsupportedCoupling("pentagon sum runs over an integral part");
            s += term(e.label);
        }
        return s;
    };

    Complex lhs, rhs;
    switch (variant) {
        case 1:
            lhs = sum_over(j2, j3, [&](const Module& t) {
                return R(j1, j2, j12, j3, j123, t) * R(j1, t, j123, j4, j, j234) *
                       R(j2, j3, t, j4, j234, j34);
            });
            rhs = R(j1, j2, j12, j34, j, j234) * R(j12, j3, j123, j4, j, j34);
            break;
        case 2:
            lhs = sum_over(j12, j3, [&](const Module& t) {
                return R(j12, j3, t, j4, j, j34) * R(j1, j2, j12, j3, t, j23) *
                       R(j1, j23, t, j4, j, j234);
            });
            rhs = R(j2, j3, j23, j4, j234, j34) * R(j1, j2, j12, j34, j, j234);
            break;
        case 3:
            lhs = sum_over(j1, j2, [&](const Module& t) {
                return R(j1, j2, t, j34, j, j234) * R(t, j3, j123, j4, j, j34) *
                       R(j1, j2, t, j3, j123, j23);
            });
            rhs = R(j1, j23, j123, j4, j, j234) * R(j2, j3, j23, j4, j234, j34);
            break;
        case 4:
            lhs = sum_over(j3, j4, [&](const Module& t) {
                return R(j2, j3, j23, j4, j234, t) * R(j1, j2, j12, t, j, j234) *
                       R(j12, j3, j123, j4, j, t);
            });
            rhs = R(j1, j2, j12, j3, j123, j23) * R(j1, j23, j123, j4, j, j234);
            break;
        case 5:
            lhs = sum_over(j23, j4, [&](const Module& t) {
                return R(j1, j23, j123, j4, j, t) * R(j2, j3, j23, j4, t, j34) *
                       R(j1, j2, j12, j34, j, t);
            });
            rhs = R(j12, j3, j123, j4, j, j34) * R(j1, j2, j12, j3, j123, j23);
            break;
        default:
            throw std::invalid_argument("pentagon variant must be 1..5");
    }
    return std::abs(lhs - rhs);
}

double RacahEngine::orthogonality_residual(const Module& j1, const Module& j2,
                                           const Module& j3, const Module& j,
                                           int pairing) {
    if (pairing != 1 && pairing != 2)
        throw std::invalid_argument("orthogonality pairing must be 1 or 2");

    auto labels_of = [this](const Module& a, const Module& b) {
        std::vector<Module> out;
        DecompositionSet set = decompose(a, b, window_);
        for (const auto& e : set.entries) {
            if (e.measure == MeasureTag::Integral)
                throw UnsupportedCoupling("orthogonality sum runs over an integral part");
            out.push_back(e.label);
        }
        return out;
    };

    // internal labels restricted to those for which the 4-valent intertwiner
    // exists at all (the total must couple through them)
    std::vector<Module> twelve, twentythree;
    for (const Module& c : labels_of(j1, j2))
        if (classify_coupling(c, j3, j) == CouplingKind::Discrete) twelve.push_back(c);
    for (const Module& c : labels_of(j2, j3))
        if (classify_coupling(j1, c, j) == CouplingKind::Discrete)
            twentythree.push_back(c);

    double worst = 0.0;
    if (pairing == 1) {
        for (const Module& a : twentythree)
            for (const Module& b : twentythree) {
                Complex s = 0.0;
                for (const Module& c : twelve)
                    s += value(j1, j2, c, j3, j, a) * value(j1, j2, c, j3, j, b);
                worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
            }
    } else {
        for (const Module& a : twelve)
            for (const Module& b : twelve) {
                Complex s = 0.0;
                for (const Module& c : twentythree)
                    s += value(j1, j2, a, j3, j, c) * value(j1, j2, b, j3, j, c);
                worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
            }
    }
    return worst;
}

}  // namespace srt
