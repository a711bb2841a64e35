#ifndef SRT_RACAH_HPP
#define SRT_RACAH_HPP

#include "srt/cg21.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace srt {

struct RacahKey {
    Module j1, j2, j12, j3, j, j23;

    bool operator==(const RacahKey& o) const;
    std::string str() const;
};

struct RacahKeyHash {
    std::size_t operator()(const RacahKey& k) const;
};

struct RacahValue {
    Complex value{0.0, 0.0};
    HalfInt m_used{0};
    double m_independence_residual = 0.0;
    int window = 0;
};

// how a candidate coupled label sits inside the decomposition of a (x) b
enum class CouplingKind {
    Absent,    // not in the label set (or the pair is not diagonalisable)
    Discrete,  // Kronecker-delta label, coefficients computable
    Integral,  // lies on the integral part of the measure
};

CouplingKind classify_coupling(const Module& a, const Module& b, const Module& J);

std::string racah_to_json(const RacahKey& key, const RacahValue& v);

/* Racah coefficients as explicit contractions of four Clebsch-Gordan tables
 * at a fixed total weight m, with the m-independence checked at a second
 * weight.  CG tables and computed coefficients are memoized; both caches are
 * safe for concurrent readers with single-writer insertion. */
class RacahEngine {
public:
    explicit RacahEngine(int window = 40, int max_window = 400);

    RacahValue racah(const RacahKey& key);

    Complex value(const Module& j1, const Module& j2, const Module& j12,
                  const Module& j3, const Module& j, const Module& j23);

    /* |LHS - RHS| of the three exchange relations available when one label is
     * F_1/2.  The five labels play the roles (j1, j2, k1, k2, J) with
     * k_i = j_i +- 1/2; relations with an inadmissible coupling come out as
     * 0 = 0. */
    std::array<double, 3> symmetry_residuals(const Module& j1, const Module& j2,
                                             const Module& k1, const Module& k2,
                                             const Module& J);

    /* |sum-side - product-side| of the five pentagon identities; variant
     * selects which internal label is summed (1: j23, 2: j123, 3: j12,
     * 4: j34, 5: j234). */
    double pentagon_residual(const Module& j1, const Module& j2, const Module& j3,
                             const Module& j4, const Module& j, const Module& j12,
                             const Module& j123, const Module& j23,
                             const Module& j234, const Module& j34, int variant);

    /* Worst |sum_internal R R' - delta| over admissible internal pairs.
     * pairing 1 sums the (j1 j2) label with the (j2 j3) labels fixed,
     * pairing 2 the transpose relation. */
    double orthogonality_residual(const Module& j1, const Module& j2,
                                  const Module& j3, const Module& j, int pairing);

    int initial_window() const { return window_; }
    int max_window() const { return max_window_; }
    std::size_t cached_keys() const;

private:
    std::shared_ptr<const CGTable> table(const Module& a, const Module& b, int window);
    Complex contract(const RacahKey& k, HalfInt m, int window);
    Complex eval_stable(const RacahKey& k, HalfInt m, int& window);

    int window_;
    int max_window_;

    mutable std::shared_mutex cache_mu_;
    std::unordered_map<RacahKey, RacahValue, RacahKeyHash> cache_;

    mutable std::shared_mutex table_mu_;
    std::map<std::string, std::shared_ptr<const CGTable>> tables_;
};

}  // namespace srt

#endif
