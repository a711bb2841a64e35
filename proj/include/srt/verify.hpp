#ifndef SRT_VERIFY_HPP
#define SRT_VERIFY_HPP

#include <string>
#include <vector>

namespace srt {

/* End-to-end verification battery: eleven fixed criteria spanning the 2+1
 * coupling tables, the 4D tower couplings, the recoupling and Hamiltonian
 * layer, the classical spinor identities and the SO*(2n) coherent-state
 * module.  Tolerances are pinned inside each criterion; `worst` reports the
 * largest residual actually observed (0 for purely structural checks). */
struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    double worst = 0.0;
    std::string detail;
};

std::vector<CriterionResult> run_acceptance();

}  // namespace srt

#endif
