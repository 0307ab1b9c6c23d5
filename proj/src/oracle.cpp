#include "rpbis/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rpbis {

std::uint64_t Prng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Prng::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

Rplts random_rplts(const GenParams& params) {
    Prng rng(params.seed);
    std::uint32_t n_states = 1 + static_cast<std::uint32_t>(rng.below(params.max_states));
    std::uint32_t n_actions = 1 + static_cast<std::uint32_t>(rng.below(params.max_actions));

    std::vector<RawTransition> raw;
    for (std::uint32_t s = 0; s < n_states; ++s) {
        for (std::uint32_t a = 0; a < n_actions; ++a) {
            // Sparse-ish systems keep refinement depths interesting without
            // saturating every (state, action) pair.
            if (rng.below(100) < 45) continue;
            std::uint32_t max_b = std::min({params.max_branching, n_states,
                                            params.denominator_bound});
            std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(max_b));

            // k distinct targets.
            std::vector<std::uint32_t> targets;
            while (targets.size() < k) {
                std::uint32_t t = static_cast<std::uint32_t>(rng.below(n_states));
                if (std::find(targets.begin(), targets.end(), t) == targets.end())
                    targets.push_back(t);
            }
            // Composition of a denominator d >= k into k positive parts.
            std::uint32_t d = k + static_cast<std::uint32_t>(
                                      rng.below(params.denominator_bound - k + 1));
            std::set<std::uint32_t> cuts;
            while (cuts.size() < k - 1)
                cuts.insert(1 + static_cast<std::uint32_t>(rng.below(d - 1)));
            std::vector<std::uint32_t> parts;
            std::uint32_t prev = 0;
            for (std::uint32_t c : cuts) {
                parts.push_back(c - prev);
                prev = c;
            }
            parts.push_back(d - prev);

            RawTransition t;
            t.source = "s" + std::to_string(s);
            t.action = std::string(1, static_cast<char>('a' + a));
            for (std::uint32_t i = 0; i < k; ++i)
                t.branches.emplace_back("s" + std::to_string(targets[i]),
                                        Rat(parts[i], d));
            raw.push_back(std::move(t));
        }
    }
    // max_states is a cap: indices that were never mentioned simply do not
    // become states. Guarantee at least one state so callers can always
    // sample pairs.
    if (raw.empty()) {
        RawTransition t;
        t.source = "s0";
        t.action = "a";
        t.branches.emplace_back("s0", Rat::one());
        raw.push_back(std::move(t));
    }
    return validate_rplts(raw);
}

namespace {

// Achievable cumulative masses: subset sums of each distribution's values,
// plus 1. Satisfaction of a diamond changes only at these points.
std::vector<Rat> achievable_bounds(const Rplts& sys) {
    std::set<Rat, std::less<Rat>> out; // Rat has operator<
    out.insert(Rat::one());
    for (StateId s = 0; s < sys.num_states(); ++s) {
        for (const auto& [a, dist] : sys.transitions(s)) {
            std::set<Rat> sums;
            sums.insert(Rat::zero());
            for (const auto& [tgt, p] : dist.entries()) {
                std::set<Rat> next = sums;
                for (const Rat& q : sums) next.insert(q + p);
                sums = std::move(next);
            }
            for (const Rat& q : sums)
                if (!q.is_zero()) out.insert(q);
        }
    }
    return {out.begin(), out.end()};
}

} // namespace

std::vector<FormulaPtr> enum_formulas(const Rplts& sys, LogicId logic,
                                      unsigned max_depth) {
    std::uint32_t n = sys.num_states();
    if (n > 64)
        throw Error(ErrKind::Internal, "oracle enumeration is desk-scale (<= 64 states)");
    bool has_neg = logic == LogicId::NegAnd || logic == LogicId::NegOr;
    bool has_and = logic == LogicId::NegAnd || logic == LogicId::And;
    std::vector<Rat> bounds = achievable_bounds(sys);
    std::uint64_t full = n == 64 ? ~0ULL : (1ULL << n) - 1;

    // One witness formula per satisfaction class. Vectors are maintained
    // incrementally by the satisfaction clauses themselves (pointwise
    // boolean operations, diamond via the distribution masses), so closing
    // a depth level under the fragment's connectives is cheap; the classes
    // are found breadth-first by modal depth, which the connectives do not
    // increase.
    std::map<std::uint64_t, FormulaPtr> classes;
    auto offer = [&](std::uint64_t v, const FormulaPtr& f) -> bool {
        return classes.emplace(v, f).second;
    };

    offer(full, f_top());
    auto close_level = [&]() {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::pair<std::uint64_t, FormulaPtr>> current(classes.begin(),
                                                                      classes.end());
            if (has_neg)
                for (const auto& [v, f] : current)
                    if (offer(~v & full, f_neg(f))) grew = true;
            for (const auto& [v, f] : current) {
                for (const auto& [w, g] : current) {
                    if (has_and) {
                        if (offer(v & w, f_and(f, g))) grew = true;
                    } else {
                        if (offer(v | w, f_or(f, g))) grew = true;
                    }
                }
            }
        }
    };
    close_level();

    for (unsigned d = 1; d <= max_depth; ++d) {
        std::vector<std::pair<std::uint64_t, FormulaPtr>> previous;
        for (const auto& [v, f] : classes)
            if (f->depth < d) previous.emplace_back(v, f);
        for (ActionId a = 0; a < sys.num_actions(); ++a) {
            for (const auto& [v, body] : previous) {
                // Mass each state assigns to the body's satisfying set.
                std::vector<Rat> mass(n);
                std::vector<bool> enabled(n, false);
                for (StateId s = 0; s < n; ++s) {
                    if (const Dist* dist = sys.transition(s, a)) {
                        enabled[s] = true;
                        mass[s] = dist->mass_if(
                            [&](StateId t) { return (v >> t) & 1; });
                    }
                }
                for (const Rat& p : bounds) {
                    std::uint64_t w = 0;
                    for (StateId s = 0; s < n; ++s)
                        if (enabled[s] && mass[s] >= p) w |= 1ULL << s;
                    offer(w, f_dia(sys.action_name(a), p, body));
                }
            }
        }
        close_level();
    }

    std::vector<FormulaPtr> out;
    out.reserve(classes.size());
    for (const auto& [v, f] : classes) out.push_back(f);
    std::sort(out.begin(), out.end(), [](const FormulaPtr& x, const FormulaPtr& y) {
        return formula_compare(x, y) < 0;
    });
    return out;
}

bool logical_eq_bruteforce(const Rplts& sys, StateId s1, StateId s2,
                           LogicId logic, unsigned max_depth) {
    if (s1 >= sys.num_states() || s2 >= sys.num_states())
        throw Error(ErrKind::UnknownState, "state id out of range");
    for (const FormulaPtr& f : enum_formulas(sys, logic, max_depth))
        if (sat_state(sys, s1, f) != sat_state(sys, s2, f)) return false;
    return true;
}

} // namespace rpbis
