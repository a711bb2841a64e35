#ifndef SRT_REP21_HPP
#define SRT_REP21_HPP

#include "srt/halfint.hpp"
#include "srt/numeric.hpp"

#include <optional>
#include <string>

namespace srt {

/* Irreducible weight modules of the 2+1 algebra
 *   [J0, J±] = ±J±,   [J+, J-] = -2 J0,
 * with ladder factors (principal-branch roots throughout)
 *   J± |j,m> = Gamma±(j,m) |j,m±1>,  Gamma±(j,m) = i sqrt(j∓m) sqrt(j±m+1),
 * and Casimir Q = -J0(J0+1) + J- J+ acting as -j(j+1).
 *
 * Four classes: lowest-weight D+_j (m = j+1, j+2, ...), highest-weight D-_j
 * (m = -j-1, -j-2, ...), continuous C^eps_j (m runs over eps + Z), and the
 * finite F_j (m = -j..j).  Only the continuous label may be complex. */

enum class RepClass { DiscretePos, DiscreteNeg, Continuous, Finite };

struct Module {
    RepClass cls = RepClass::Finite;
    HalfInt j{};        // discrete/finite label (D±: j >= -1/2; F: j >= 0)
    Complex jc{};       // continuous label, canonical Re >= -1/2
    HalfInt eps{};      // continuous parity, 0 or 1/2

    static Module dpos(HalfInt j);
    static Module dneg(HalfInt j);
    static Module cont(Complex j, HalfInt eps);  // canonicalizes j <-> -j-1
    static Module finite(HalfInt j);

    Complex jval() const {
        return cls == RepClass::Continuous ? jc : Complex(j.to_double(), 0.0);
    }
    Complex casimir() const {  // eigenvalue of Q
        Complex z = jval();
        return -z * (z + 1.0);
    }

    bool in_support(HalfInt m) const;
    bool has_upper_bound() const { return cls == RepClass::DiscreteNeg || cls == RepClass::Finite; }
    bool has_lower_bound() const { return cls == RepClass::DiscretePos || cls == RepClass::Finite; }
    std::optional<HalfInt> lowest() const;   // least weight, if bounded below
    std::optional<HalfInt> highest() const;  // greatest weight, if bounded above

    // weight lattice parity: m ≡ lattice_eps (mod 1) for every supported m
    HalfInt lattice_eps() const;

    bool is_unitary() const;

    std::string str() const;
    bool operator==(const Module&) const = default;
};

// Gamma±; complex j is fine, m must be a true weight of the ambient lattice.
Complex gamma_plus(Complex j, HalfInt m);
Complex gamma_minus(Complex j, HalfInt m);
inline Complex gamma_plus(const Module& V, HalfInt m) { return gamma_plus(V.jval(), m); }
inline Complex gamma_minus(const Module& V, HalfInt m) { return gamma_minus(V.jval(), m); }

/* The contragredient flip J0 -> -J0, J± -> -J∓ sends D- to D+ (and back),
 * fixes C and F up to the weight relabelling m -> -m with sign (-1)^(m)
 * (discrete/continuous) or (-1)^(j-m) (finite). */
Module dual_module(const Module& V);

}  // namespace srt

#endif
