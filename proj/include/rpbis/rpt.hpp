/* rpt.hpp -- reactive probabilistic trees
 *
 * Canonical finite-height trees obtained by unfolding RPLTS states:
 * unordered, extensional (no two sibling subtrees under one action are
 * equal), per-action child weights sum to exactly 1. Nodes are immutable
 * and hash-consed inside a TreeArena, so equality within one arena is
 * pointer identity; rpt_equal falls back to structural comparison so trees
 * from different arenas over the same alphabet still compare correctly.
 *
 * A TreeArena is one analysis session. Concurrent analyses must use
 * separate arenas; they never interfere.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rpbis/model.hpp"

namespace rpbis {

struct RptNode;
using Rpt = std::shared_ptr<const RptNode>;

struct RptEdge {
    Rpt child;
    Rat prob;
};

struct RptNode {
    // Sorted by action id; edge lists sorted by the canonical tree order.
    std::vector<std::pair<ActionId, std::vector<RptEdge>>> succ;
    std::size_t hash = 0;
    unsigned height = 0;

    bool is_nil() const { return succ.empty(); }
    const std::vector<RptEdge>* edges(ActionId a) const;
};

// Total order on canonical trees: nil first, then lexicographic on the
// (action, children, weights) structure. Defines sibling storage order and
// deterministic tie-breaks in the synthesizer.
int rpt_compare(const Rpt& a, const Rpt& b);
bool rpt_equal(const Rpt& a, const Rpt& b);

unsigned height(const Rpt& t);

// Truncation output: same shape as Rpt but extensionality may be violated.
struct RawNode;
using RawTree = std::shared_ptr<const RawNode>;
struct RawNode {
    std::vector<std::pair<ActionId, std::vector<std::pair<RawTree, Rat>>>> succ;
};

class TreeArena {
  public:
    // The arena adopts the system's action alphabet so tree edges and the
    // system's transitions agree on action ids.
    explicit TreeArena(const Rplts& sys) : actions_(sys.action_table()) {}
    TreeArena() = default;

    const SymbolTable& actions() const { return actions_; }

    Rpt nil();
    // Interns a node; merges nothing, so sibling subtrees must already be
    // pairwise distinct. Validates weights > 0 and per-action sums = 1.
    Rpt intern(std::vector<std::pair<ActionId, std::vector<RptEdge>>> succ);

    // Depth-n unfolding of the transition graph from s, collapsed on the
    // fly; the result is the n-pruning of the state's canonical tree.
    Rpt unfold(const Rplts& sys, StateId s, unsigned depth);

    Rpt collapse(const RawTree& t);
    Rpt prune(const Rpt& t, unsigned depth);

  private:
    struct Key {
        const RptNode* node;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return k.node->hash; }
    };
    struct KeyEq {
        bool operator()(const Key& a, const Key& b) const;
    };

    SymbolTable actions_;
    std::unordered_map<Key, Rpt, KeyHash, KeyEq> table_;
    std::unordered_map<std::uint64_t, Rpt> unfold_memo_; // (state, depth)
    const Rplts* memo_sys_ = nullptr;
    Rpt nil_;
};

// Replaces everything below depth n by nil; does not collapse.
RawTree truncate(const Rpt& t, unsigned depth);

// prune of the full unfolding at every level up to |S| is the same
// tree as the direct depth-N unfolding, so state equality in the final
// semantics reduces to one comparison at N = |S|.
bool semantic_eq(const Rplts& sys, StateId s1, StateId s2);
bool semantic_eq(const Rplts& sys, const std::string& s1, const std::string& s2);

// Indented textual rendering (deterministic, canonical order).
std::string render_tree(const Rpt& t, const SymbolTable& actions);
// GraphViz rendering.
std::string render_tree_dot(const Rpt& t, const SymbolTable& actions);

// Debug validator: positivity, per-action sums, extensionality, ordering.
// Throws Internal on violation.
void validate_rpt(const Rpt& t);

} // namespace rpbis
