#include "rpbis/bisim.hpp"

#include <algorithm>
#include <map>

namespace rpbis {

namespace {

// Signature of a state against the current partition: per action, the
// nonzero masses its target distribution assigns to each block. Two states
// may share a block in the next round iff their signatures are equal.
using Signature = std::vector<std::pair<ActionId, std::vector<std::pair<std::uint32_t, Rat>>>>;

Signature signature_of(const Rplts& sys, StateId s,
                       const std::vector<std::uint32_t>& block_of) {
    Signature sig;
    for (const auto& [a, dist] : sys.transitions(s)) {
        std::map<std::uint32_t, Rat> mass;
        for (const auto& [tgt, p] : dist.entries())
            mass[block_of[tgt]] += p;
        sig.emplace_back(a, std::vector<std::pair<std::uint32_t, Rat>>(mass.begin(), mass.end()));
    }
    return sig;
}

void renumber(Partition& part, std::uint32_t n) {
    std::sort(part.blocks.begin(), part.blocks.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    part.block_of.assign(n, 0);
    for (std::uint32_t k = 0; k < part.blocks.size(); ++k)
        for (StateId s : part.blocks[k])
            part.block_of[s] = k;
}

} // namespace

Partition bisim_partition(const Rplts& sys) {
    std::uint32_t n = sys.num_states();
    Partition part;
    if (n == 0) return part;

    // Initial split by enabled-action set.
    std::map<std::vector<ActionId>, std::vector<StateId>> initial;
    for (StateId s = 0; s < n; ++s) {
        std::vector<ActionId> enabled;
        for (const auto& [a, d] : sys.transitions(s)) enabled.push_back(a);
        initial[enabled].push_back(s);
    }
    for (auto& [sig, states] : initial) part.blocks.push_back(states);
    renumber(part, n);

    // Refine until no block splits; terminates within n rounds because the
    // block count strictly grows.
    while (true) {
        std::vector<std::vector<StateId>> next;
        bool changed = false;
        for (const auto& block : part.blocks) {
            std::map<Signature, std::vector<StateId>> groups;
            for (StateId s : block)
                groups[signature_of(sys, s, part.block_of)].push_back(s);
            if (groups.size() > 1) changed = true;
            for (auto& [sig, states] : groups) next.push_back(states);
        }
        part.blocks = std::move(next);
        renumber(part, n);
        if (!changed) break;
    }
    return part;
}

bool bisimilar(const Rplts& sys, StateId s1, StateId s2) {
    if (s1 >= sys.num_states() || s2 >= sys.num_states())
        throw Error(ErrKind::UnknownState, "state id out of range");
    if (s1 == s2) return true;
    Partition part = bisim_partition(sys);
    return part.block_of[s1] == part.block_of[s2];
}

bool bisimilar(const Rplts& sys, const std::string& s1, const std::string& s2) {
    return bisimilar(sys, sys.state_or_throw(s1), sys.state_or_throw(s2));
}

} // namespace rpbis
