/* synth.hpp -- distinguishing-formula synthesis for the four logics
 *
 * For two different canonical trees this produces a formula of the requested
 * fragment satisfied by exactly one of them, of modal depth at most the
 * larger height. The negation fragments proceed by direct induction on the
 * first tree's height; the negation-free fragments select a pivot derivative
 * through the canonical formula sets Phi_or / Phi_and attached to tree nodes
 * and pay for the missing negation by raising (or summing) probability
 * bounds.
 */
#pragma once

#include <optional>
#include <unordered_map>

#include "rpbis/logic.hpp"
#include "rpbis/rpt.hpp"

namespace rpbis {

// Canonical finite formula set attached to a tree node. Sorted, duplicate
// free; every member is satisfied by the node it annotates.
struct PhiSet {
    LogicId logic = LogicId::Or; // Or | And only
    std::vector<FormulaPtr> formulas;

    std::size_t size() const { return formulas.size(); }
    bool contains(const FormulaPtr& f) const;
};

// (<=,<)-variant test between two Phi-sets of the same logic: the
// connective-free members must be in skeleton bijection with all bounds of
// A's members <= their counterparts in B and at least one strictly smaller.
bool is_le_lt_variant(const PhiSet& A, const PhiSet& B);

struct DistResult {
    FormulaPtr formula;
    bool satisfied_by_first; // which input satisfies the formula
};

struct StateDistResult {
    FormulaPtr formula;
    bool satisfied_by_first;
    unsigned level; // minimal n with differing n-prunings; depth(formula) <= level
};

// One synthesis session over trees of a single arena. Phi-sets and the
// negation-fragment recursion are memoized per canonical node, so shared
// subtrees are paid for once.
//
// Phi-sets grow doubly exponentially with tree height; phi_or/phi_and
// materialize them and throw when they pass an internal limit. distinguish
// stays total beyond that limit: the connective-free members (always small)
// are kept separately for the variant test and the pivot scan, set
// membership is decided recursively without materializing, and oversized
// pivot sets are scanned lazily under a candidate budget.
class Synthesizer {
  public:
    explicit Synthesizer(const TreeArena& arena) : arena_(arena) {}

    const PhiSet& phi_or(const Rpt& t);
    const PhiSet& phi_and(const Rpt& t);

    // The connective-free members of the node's Phi-set (diamond chains);
    // computable even when the full set is too large to materialize.
    const PhiSet& phi_chains(const Rpt& t, LogicId logic);

    // Exact membership test against the node's Phi-set, without
    // materializing it.
    bool phi_member(const FormulaPtr& f, const Rpt& t, LogicId logic);

    // Empty iff the trees are equal.
    std::optional<DistResult> distinguish(const Rpt& t1, const Rpt& t2, LogicId logic);

  private:
    DistResult dist_neg_and(const Rpt& t1, const Rpt& t2);
    DistResult dist_neg_or(const Rpt& t1, const Rpt& t2);
    DistResult dist_nofree(const Rpt& t1, const Rpt& t2, bool conjunctive);

    // Materialized set, or nullptr when it overflows the internal limit.
    const PhiSet* try_phi(const Rpt& t, bool conjunctive);
    FormulaPtr scan_for_unsat(const Rpt& pivot, const Rpt& against, bool conjunctive);

    const TreeArena& arena_;
    std::unordered_map<const RptNode*, PhiSet> or_cache_;
    std::unordered_map<const RptNode*, PhiSet> and_cache_;
    std::unordered_map<const RptNode*, PhiSet> or_chain_cache_;
    std::unordered_map<const RptNode*, PhiSet> and_chain_cache_;
    std::unordered_map<const RptNode*, bool> or_overflow_, and_overflow_;
    std::unordered_map<const RptNode*, std::unordered_map<const RptNode*, DistResult>>
        na_cache_, no_cache_;
};

// Convenience wrappers creating a one-shot session.
PhiSet phi_or(const Rpt& t, const TreeArena& arena);
PhiSet phi_and(const Rpt& t, const TreeArena& arena);
std::optional<DistResult> distinguish_trees(const Rpt& t1, const Rpt& t2,
                                            LogicId logic, const TreeArena& arena);

// Finds the minimal level n with differing n-prunings (none iff bisimilar),
// then distinguishes the level-n unfoldings; the result also separates the
// states themselves under sat_state.
std::optional<StateDistResult> distinguish_states(const Rplts& sys, StateId s1,
                                                  StateId s2, LogicId logic);
std::optional<StateDistResult> distinguish_states(const Rplts& sys,
                                                  const std::string& s1,
                                                  const std::string& s2,
                                                  LogicId logic);

} // namespace rpbis
