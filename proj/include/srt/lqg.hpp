#ifndef SRT_LQG_HPP
#define SRT_LQG_HPP

#include "srt/js21.hpp"
#include "srt/racah.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace srt {

/* Three-valent intertwiners, the triangular tetrahedral network and the four
 * quantum Hamiltonian constraints built from the scalar operators E, F, F~.
 *
 * A scalar operator acting on two legs of a trivalent node returns the node
 * with both labels shifted by +-1/2 and a Racah-coefficient prefactor; the
 * twelve cases are tabulated in node_action.  On the triangular network
 * psi(j2,j3,j4), whose reduced amplitude is the Racah coefficient
 * R[j1 j2 j3; j4 j5 j6], every Hamiltonian variant acts as a three-term
 * recursion whose solution is that amplitude, so psi lies in its kernel. */

enum class NodeKind { LeftRight, RightLeft };

struct TriNode {
    NodeKind kind = NodeKind::LeftRight;
    std::array<Module, 3> j;  // slot labels 1..3
};

struct NodeAction {
    Complex coeff{0.0};  // 0: annihilated (inadmissible shift)
    TriNode node;
};

// label shifted by a half-step within its class; nullopt when it leaves the
// allowed range (finite j < 0, discrete j < -1/2, continuous parity collision)
std::optional<Module> shift_half(const Module& m, int sign);

/* Scalar operator `op` acting on slots a, b (1-based) of a trivalent node.
 * LeftRight nodes support the slot pairs (1,2) and (2,3), RightLeft nodes
 * (1,2); index order matters for E, while F and F~ are antisymmetric. */
NodeAction node_action(RacahEngine& eng, ScalarOpKind op, int a, int b,
                       const TriNode& node);

enum class BracketType { AngleAngle, DoubleBracket, AngleBracket, BracketAngle };

struct TetNetwork {
    Module j1, j2, j3, j4, j5, j6;
};

// one summand of a Hamiltonian action: the (j2, j3, j4) label shifts and the
// accumulated Racah-product coefficient
struct TetTerm {
    HalfInt dj2, dj3, dj4;
    Complex coeff{0.0};
};

/* Action of a Hamiltonian variant on the triangular network.  abc is a
 * permutation of (2,3,4) selecting the cycle; terms with an inadmissible
 * internal coupling carry coefficient 0. */
std::vector<TetTerm> hamiltonian_apply(RacahEngine& eng, BracketType type,
                                       const std::array<int, 3>& abc,
                                       const TetNetwork& net);

/* |sum of reduced term amplitudes| / max |term amplitude|; each term is
 * reduced through psi(j2',j3',j4') = R[j1 j2' j3'; j4' j5 j6'] and the
 * residual vanishes when psi is annihilated.  All-zero terms give 0. */
double annihilation_residual(RacahEngine& eng, BracketType type,
                             const std::array<int, 3>& abc, const TetNetwork& net);

// JSON record {labels, variant, residual, window, racah_calls}
std::string annihilation_report(RacahEngine& eng, BracketType type,
                                const std::array<int, 3>& abc, const TetNetwork& net);

}  // namespace srt

#endif
