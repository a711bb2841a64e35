#ifndef SRT_JS21_HPP
#define SRT_JS21_HPP

#include "srt/rep21.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace srt {

/* Spinor operators T, T~ on any 2+1 module class, and the scalar bilinears
 * E_ab, F_ab, F~_ab built from them on multi-leg states.
 *
 * T shifts j by -1/2 and T~ by +1/2 within the same class; on a continuous
 * leg the parity eps flips with every half-step.  The generators are
 * recovered as J± = ±i T± T~±, J0 = -1/2 (T- T~+ + T+ T~-), and
 * [T+, T~-] = [T~+, T-] = 1 with all other commutators vanishing. */

enum class SpinorOpKind { Tminus, Tplus, Ttilde_minus, Ttilde_plus };
enum class Gen21 { J0, Jplus, Jminus };
enum class ScalarOpKind { E, F, Ftilde };

/* Instantaneous label of one leg inside a basis term.  The label is stored as
 * an exact half-integer drift off the leg's starting module (T: -1/2 per
 * step, T~: +1/2), so term keys never suffer float round-off and no j <-> -j-1
 * canonicalization is applied: the spinor-operator amplitudes depend on the
 * actual j. */
struct LegWeight {
    HalfInt dj{};   // current j = starting j + dj
    HalfInt eps{};  // continuous parity; ignored for the other classes
    HalfInt m{};

    bool operator==(const LegWeight&) const = default;
};

struct LegSpec {
    Module mod;      // class and starting label
    bool ket = true; // false: dual (bra) leg
};

inline Complex leg_j(const LegSpec& spec, const LegWeight& w) {
    return spec.mod.jval() + w.dj.to_double();
}

using TermKey = std::vector<LegWeight>;

struct TermLess {
    bool operator()(const TermKey& a, const TermKey& b) const;
};

/* Finite linear combination of weight-basis product vectors over a fixed set
 * of legs.  Immutable in use: operators return new states.  `truncated` is
 * set when a T hits the bottom of a discrete-class tower (j = -1/2 has no
 * j - 1/2 target) and the term had a nonzero amplitude. */
class MultiLegState {
public:
    MultiLegState() = default;
    explicit MultiLegState(std::vector<LegSpec> legs) : legs_(std::move(legs)) {}

    // single basis vector with every leg at its starting label
    static MultiLegState basis(std::vector<LegSpec> legs,
                               const std::vector<HalfInt>& weights);
    // convenience: one ket leg |j, m>
    static MultiLegState basis(const Module& mod, HalfInt m);

    const std::vector<LegSpec>& legs() const { return legs_; }
    const std::map<TermKey, Complex, TermLess>& terms() const { return terms_; }
    bool truncated() const { return truncated_; }

    void add(const TermKey& key, Complex amp);
    void mark_truncated() { truncated_ = true; }

    // amplitude of an exact term key (0 if absent)
    Complex amp(const TermKey& key) const;

    MultiLegState& operator+=(const MultiLegState& o);
    MultiLegState& operator*=(Complex c);

private:
    std::vector<LegSpec> legs_;
    std::map<TermKey, Complex, TermLess> terms_;
    bool truncated_ = false;
};

MultiLegState operator+(MultiLegState a, const MultiLegState& b);
MultiLegState operator-(MultiLegState a, const MultiLegState& b);
MultiLegState operator*(Complex c, MultiLegState s);

// sup-norm of the amplitude difference over the union of term keys
double sup_distance(const MultiLegState& a, const MultiLegState& b);

MultiLegState apply_spinor(SpinorOpKind op, std::size_t leg, const MultiLegState& s);

// direct generator action on one leg (dual representation on bra legs)
MultiLegState apply_generator(Gen21 g, std::size_t leg, const MultiLegState& s);

// the same generator rebuilt from quadratic spinor-operator words
MultiLegState reconstruct_generator(Gen21 g, std::size_t leg, const MultiLegState& s);

// sum of apply_generator over all legs
MultiLegState apply_total_generator(Gen21 g, const MultiLegState& s);

/* E_ab = T~a_- Tb_+ - T~a_+ Tb_- + delta_ab,  F_ab = Ta_- Tb_+ - Ta_+ Tb_-,
 * F~_ab = T~a_- T~b_+ - T~a_+ T~b_-  (the b factor acts first). */
MultiLegState apply_scalar(ScalarOpKind op, std::size_t a, std::size_t b,
                           const MultiLegState& s);

}  // namespace srt

#endif
