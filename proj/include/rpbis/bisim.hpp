/* bisim.hpp -- coarsest probabilistic bisimulation by partition refinement */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpbis/model.hpp"

namespace rpbis {

struct Partition {
    // Disjoint non-empty blocks covering all states; block k is
    // blocks[k], numbered by least member state id.
    std::vector<std::vector<StateId>> blocks;
    std::vector<std::uint32_t> block_of;
};

// Iterated splitter refinement: start from the enabled-action signature,
// then split blocks by the per-action vector of block masses until stable.
// All mass comparisons are exact, so there is no tolerance parameter.
Partition bisim_partition(const Rplts& sys);

bool bisimilar(const Rplts& sys, StateId s1, StateId s2);
bool bisimilar(const Rplts& sys, const std::string& s1, const std::string& s2);

} // namespace rpbis
