/* model.hpp -- reactive probabilistic labeled transition systems
 *
 * Core value types: interned state/action symbols, finitely supported exact
 * distributions, and validated RPLTSs. Everything is immutable after
 * construction and safe to share between threads.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rpbis/errors.hpp"
#include "rpbis/rational.hpp"

namespace rpbis {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

// Interned symbols; ids are dense and ordered by first occurrence, which
// fixes the total order used for canonical forms downstream.
class SymbolTable {
  public:
    std::uint32_t intern(const std::string& name);
    std::optional<std::uint32_t> find(const std::string& name) const;
    const std::string& name(std::uint32_t id) const { return names_.at(id); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(names_.size()); }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Finitely supported probability distribution over states. Only strictly
// positive entries are stored, sorted by state id; entries sum to exactly 1.
class Dist {
  public:
    using Entry = std::pair<StateId, Rat>;

    // Duplicate states are merged by summation, zero entries dropped.
    // Throws SumNotOne / NegativeProb.
    static Dist make(std::vector<Entry> pairs);

    const std::vector<Entry>& entries() const { return entries_; }
    bool operator==(const Dist& o) const { return entries_ == o.entries_; }
    bool operator!=(const Dist& o) const { return !(*this == o); }

    Rat at(StateId s) const; // 0 when s is outside the support

    template <typename Pred>
    Rat mass_if(Pred&& pred) const {
        Rat total;
        for (const auto& [s, p] : entries_)
            if (pred(s)) total += p;
        return total;
    }

  private:
    std::vector<Entry> entries_;
};

// Cumulative mass of `d` over an explicit state set.
Rat dist_mass(const Dist& d, const std::vector<StateId>& set);

// One raw transition before validation: source, action, branch list.
struct RawTransition {
    std::string source;
    std::string action;
    std::vector<std::pair<std::string, Rat>> branches;
};

// Finite RPLTS. Per state and action at most one outgoing distribution;
// the choice between differently labeled distributions is external.
class Rplts {
  public:
    std::uint32_t num_states() const { return states_.size(); }
    std::uint32_t num_actions() const { return actions_.size(); }

    const std::string& state_name(StateId s) const { return states_.name(s); }
    const std::string& action_name(ActionId a) const { return actions_.name(a); }
    std::optional<StateId> find_state(const std::string& name) const { return states_.find(name); }
    std::optional<ActionId> find_action(const std::string& name) const { return actions_.find(name); }

    // Throws UnknownState with the offending name.
    StateId state_or_throw(const std::string& name) const;

    // Transitions of s, sorted by action id.
    const std::vector<std::pair<ActionId, Dist>>& transitions(StateId s) const {
        return trans_.at(s);
    }
    const Dist* transition(StateId s, ActionId a) const;

    const SymbolTable& state_table() const { return states_; }
    const SymbolTable& action_table() const { return actions_; }

  private:
    friend Rplts validate_rplts(const std::vector<RawTransition>&);
    SymbolTable states_;
    SymbolTable actions_;
    std::vector<std::vector<std::pair<ActionId, Dist>>> trans_;
};

// Builds a validated system from raw transitions. States are the sources and
// targets mentioned anywhere; `nil` is reserved for a state with no
// transitions. Throws DuplicateTransition, SumNotOne, NegativeProb.
Rplts validate_rplts(const std::vector<RawTransition>& raw);

} // namespace rpbis
