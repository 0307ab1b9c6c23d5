/* oracle.hpp -- random instances and brute-force logical equivalence
 *
 * Everything here is deliberately independent of the synthesizer: formulas
 * are enumerated from the grammar and evaluated through sat_state, never
 * through Phi-sets, so the property suites cross-check the two paths.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "rpbis/logic.hpp"
#include "rpbis/model.hpp"

namespace rpbis {

struct GenParams {
    std::uint32_t max_states = 6;
    std::uint32_t max_actions = 3;
    std::uint32_t max_branching = 3;
    std::uint32_t denominator_bound = 8;
    std::uint64_t seed = 0;
};

// Deterministic in the seed; output always satisfies the RPLTS invariants
// and every distribution has a denominator within the bound.
Rplts random_rplts(const GenParams& params);

// Fragment formulas up to the given modal depth, with diamond bounds drawn
// from the system's achievable cumulative masses (subset sums of each
// distribution, plus 1) and one representative kept per satisfaction class
// of the system. Satisfaction of <a>p phi is a step function of p with
// steps only at achievable masses and depends on phi only through its
// satisfying set, so the list keeps the full separating power of the
// fragment at that depth. Finite and duplicate-free by construction.
std::vector<FormulaPtr> enum_formulas(const Rplts& sys, LogicId logic,
                                      unsigned max_depth);

// True iff no enumerated formula separates the two states.
bool logical_eq_bruteforce(const Rplts& sys, StateId s1, StateId s2,
                           LogicId logic, unsigned max_depth);

// Small deterministic PRNG (splitmix64), stable across platforms.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::uint64_t state_;
};

} // namespace rpbis
