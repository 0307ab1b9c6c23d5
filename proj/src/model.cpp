#include "rpbis/model.hpp"

#include <algorithm>
#include <map>

namespace rpbis {

const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::SyntaxError: return "SyntaxError";
        case ErrKind::SumNotOne: return "SumNotOne";
        case ErrKind::NegativeProb: return "NegativeProb";
        case ErrKind::ProbOutOfRange: return "ProbOutOfRange";
        case ErrKind::DuplicateTransition: return "DuplicateTransition";
        case ErrKind::UnknownState: return "UnknownState";
        case ErrKind::IoError: return "IoError";
        case ErrKind::Internal: return "Internal";
    }
    return "?";
}

std::uint32_t SymbolTable::intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

std::optional<std::uint32_t> SymbolTable::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Dist Dist::make(std::vector<Entry> pairs) {
    std::map<StateId, Rat> acc;
    for (const auto& [s, p] : pairs) {
        if (p.is_negative())
            throw Error(ErrKind::NegativeProb,
                        "negative probability " + p.str());
        acc[s] += p;
    }
    Dist d;
    Rat total;
    for (const auto& [s, p] : acc) {
        if (p.is_zero()) continue;
        total += p;
        d.entries_.emplace_back(s, p);
    }
    if (!total.is_one())
        throw Error(ErrKind::SumNotOne,
                    "distribution sums to " + total.str() + ", expected 1");
    return d;
}

Rat Dist::at(StateId s) const {
    for (const auto& [t, p] : entries_)
        if (t == s) return p;
    return Rat::zero();
}

Rat dist_mass(const Dist& d, const std::vector<StateId>& set) {
    return d.mass_if([&](StateId s) {
        return std::find(set.begin(), set.end(), s) != set.end();
    });
}

StateId Rplts::state_or_throw(const std::string& name) const {
    auto id = states_.find(name);
    if (!id) throw Error(ErrKind::UnknownState, "unknown state '" + name + "'");
    return *id;
}

const Dist* Rplts::transition(StateId s, ActionId a) const {
    for (const auto& [act, dist] : trans_.at(s))
        if (act == a) return &dist;
    return nullptr;
}

Rplts validate_rplts(const std::vector<RawTransition>& raw) {
    Rplts sys;
    // Intern sources and targets in order of first mention.
    for (const auto& t : raw) {
        sys.states_.intern(t.source);
        for (const auto& [tgt, p] : t.branches)
            sys.states_.intern(tgt);
    }
    sys.trans_.resize(sys.states_.size());
    for (const auto& t : raw) {
        if (t.source == "nil")
            throw Error(ErrKind::SyntaxError,
                        "'nil' is reserved for a state with no transitions");
        StateId src = *sys.states_.find(t.source);
        ActionId act = sys.actions_.intern(t.action);
        std::vector<Dist::Entry> entries;
        entries.reserve(t.branches.size());
        for (const auto& [tgt, p] : t.branches)
            entries.emplace_back(*sys.states_.find(tgt), p);
        Dist dist = Dist::make(std::move(entries));
        if (const Dist* prev = sys.transition(src, act)) {
            // Def-level determinism: a repeated (s, a) is fine only when it
            // carries the very same distribution.
            if (*prev != dist)
                throw Error(ErrKind::DuplicateTransition,
                            "state '" + t.source + "' has two different '" +
                                t.action + "'-distributions");
            continue;
        }
        auto& row = sys.trans_[src];
        row.emplace_back(act, std::move(dist));
        std::sort(row.begin(), row.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    return sys;
}

} // namespace rpbis
