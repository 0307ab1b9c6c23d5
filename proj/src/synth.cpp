#include "rpbis/synth.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_set>

namespace rpbis {

namespace {

constexpr std::size_t kPhiGuard = 3'000'000;   // distinct bodies per action
constexpr std::size_t kAndSubsetGuard = 22;    // 2^22 subsets per child

// A body is a canonical set of formulas (the operands of one dotted
// disjunction / conjunction), kept sorted.
struct BodyKey {
    std::vector<FormulaPtr> fs;
    std::size_t h = 0;
};

BodyKey make_body(std::vector<FormulaPtr> fs) {
    BodyKey k;
    k.fs = std::move(fs);
    k.h = 0xcbf29ce4;
    for (const auto& f : k.fs)
        k.h ^= f->hash + 0x9e3779b9 + (k.h << 6) + (k.h >> 2);
    return k;
}

// Insert into a sorted operand set; identical operands merge (forced
// idempotence of the dotted connective).
BodyKey body_insert(const BodyKey& b, const FormulaPtr& f) {
    std::vector<FormulaPtr> fs;
    fs.reserve(b.fs.size() + 1);
    bool placed = false;
    for (const auto& g : b.fs) {
        if (!placed) {
            int c = formula_compare(f, g);
            if (c == 0) return b; // already present
            if (c < 0) {
                fs.push_back(f);
                placed = true;
            }
        }
        fs.push_back(g);
    }
    if (!placed) fs.push_back(f);
    return make_body(std::move(fs));
}

struct BodyHash {
    std::size_t operator()(const BodyKey& b) const { return b.h; }
};
struct BodyEq {
    bool operator()(const BodyKey& a, const BodyKey& b) const {
        if (a.h != b.h || a.fs.size() != b.fs.size()) return false;
        for (std::size_t i = 0; i < a.fs.size(); ++i)
            if (!formula_equal(a.fs[i], b.fs[i])) return false;
        return true;
    }
};

void skeleton_key(const FormulaPtr& f, std::string& out) {
    switch (f->kind) {
        case FKind::Top: out += 'T'; return;
        case FKind::Neg:
            out += '!';
            skeleton_key(f->lhs, out);
            return;
        case FKind::And:
        case FKind::Or:
            out += f->kind == FKind::And ? '&' : '|';
            out += '(';
            skeleton_key(f->lhs, out);
            out += ',';
            skeleton_key(f->rhs, out);
            out += ')';
            return;
        case FKind::Diamond:
            out += '<';
            out += f->action;
            out += '>';
            skeleton_key(f->lhs, out);
            return;
    }
}

std::string skeleton_key(const FormulaPtr& f) {
    std::string s;
    skeleton_key(f, s);
    return s;
}

void collect_bounds(const FormulaPtr& f, std::vector<Rat>& out) {
    switch (f->kind) {
        case FKind::Top: return;
        case FKind::Neg: collect_bounds(f->lhs, out); return;
        case FKind::And:
        case FKind::Or:
            collect_bounds(f->lhs, out);
            collect_bounds(f->rhs, out);
            return;
        case FKind::Diamond:
            out.push_back(f->bound);
            collect_bounds(f->lhs, out);
            return;
    }
}

bool contains_kind(const FormulaPtr& f, FKind k) {
    if (f->kind == k) return true;
    switch (f->kind) {
        case FKind::Top: return false;
        case FKind::Neg:
        case FKind::Diamond: return contains_kind(f->lhs, k);
        case FKind::And:
        case FKind::Or:
            return contains_kind(f->lhs, k) || contains_kind(f->rhs, k);
    }
    return false;
}

// Kuhn's augmenting-path matching; adj[u] lists the right-side candidates
// of left node u.
bool try_augment(std::size_t u, const std::vector<std::vector<std::size_t>>& adj,
                 std::vector<int>& match_right, std::vector<bool>& visited) {
    for (std::size_t v : adj[u]) {
        if (visited[v]) continue;
        visited[v] = true;
        if (match_right[v] < 0 ||
            try_augment(static_cast<std::size_t>(match_right[v]), adj, match_right, visited)) {
            match_right[v] = static_cast<int>(u);
            return true;
        }
    }
    return false;
}

} // namespace

bool PhiSet::contains(const FormulaPtr& f) const {
    return std::binary_search(formulas.begin(), formulas.end(), f,
                              [](const FormulaPtr& a, const FormulaPtr& b) {
                                  return formula_compare(a, b) < 0;
                              });
}

bool is_le_lt_variant(const PhiSet& A, const PhiSet& B) {
    if (A.logic != B.logic)
        throw Error(ErrKind::Internal, "variant test across different logics");
    FKind banned = A.logic == LogicId::Or ? FKind::Or : FKind::And;

    auto connective_free = [&](const PhiSet& S) {
        std::vector<FormulaPtr> out;
        for (const auto& f : S.formulas)
            if (!contains_kind(f, banned)) out.push_back(f);
        return out;
    };
    std::vector<FormulaPtr> as = connective_free(A);
    std::vector<FormulaPtr> bs = connective_free(B);
    if (as.size() != bs.size()) return false;

    // Group both sides by skeleton; the bijection must respect skeletons.
    std::map<std::string, std::pair<std::vector<FormulaPtr>, std::vector<FormulaPtr>>> groups;
    for (const auto& f : as) groups[skeleton_key(f)].first.push_back(f);
    for (const auto& f : bs) groups[skeleton_key(f)].second.push_back(f);

    bool all_equal = true;
    for (auto& [sk, uv] : groups) {
        auto& [us, vs] = uv;
        if (us.size() != vs.size()) return false;
        std::vector<std::vector<Rat>> ub(us.size()), vb(vs.size());
        for (std::size_t i = 0; i < us.size(); ++i) collect_bounds(us[i], ub[i]);
        for (std::size_t i = 0; i < vs.size(); ++i) collect_bounds(vs[i], vb[i]);
        // Perfect matching under componentwise <=. A matching with at least
        // one strict < exists iff one exists at all and the two member sets
        // differ (an all-equal matching would force set equality).
        std::vector<std::vector<std::size_t>> adj(us.size());
        for (std::size_t i = 0; i < us.size(); ++i) {
            for (std::size_t j = 0; j < vs.size(); ++j) {
                bool le = true;
                for (std::size_t k = 0; k < ub[i].size() && le; ++k)
                    le = ub[i][k] <= vb[j][k];
                if (le) adj[i].push_back(j);
            }
        }
        std::vector<int> match_right(vs.size(), -1);
        for (std::size_t i = 0; i < us.size(); ++i) {
            std::vector<bool> visited(vs.size(), false);
            if (!try_augment(i, adj, match_right, visited)) return false;
        }
        for (std::size_t i = 0; i < us.size() && all_equal; ++i) {
            bool found = false;
            for (std::size_t j = 0; j < vs.size() && !found; ++j)
                found = formula_equal(us[i], vs[j]);
            all_equal = found;
        }
    }
    return !all_equal;
}

const PhiSet& Synthesizer::phi_or(const Rpt& t) {
    auto it = or_cache_.find(t.get());
    if (it != or_cache_.end()) return it->second;

    PhiSet result;
    result.logic = LogicId::Or;
    for (const auto& [a, edges] : t->succ) {
        const std::string& name = arena_.actions().name(a);
        result.formulas.push_back(f_dia(name, Rat::one(), f_top()));

        std::vector<const PhiSet*> child_sets;
        std::vector<Rat> child_probs;
        for (const auto& e : edges) {
            const PhiSet& s = phi_or(e.child);
            if (!s.formulas.empty()) {
                child_sets.push_back(&s);
                child_probs.push_back(e.prob);
            }
        }
        // For every nonempty subset of the support and every choice of one
        // member formula per chosen child, the dotted disjunction of the
        // choices, bounded by the summed child probabilities; hplb keeps the
        // maximal bound per distinct body.
        std::unordered_map<BodyKey, Rat, BodyHash, BodyEq> best;
        std::size_t m = child_sets.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
            Rat bound;
            std::unordered_set<BodyKey, BodyHash, BodyEq> bodies;
            bodies.insert(make_body({}));
            for (std::size_t j = 0; j < m; ++j) {
                if (!(mask & (std::size_t(1) << j))) continue;
                bound += child_probs[j];
                std::unordered_set<BodyKey, BodyHash, BodyEq> next;
                for (const auto& b : bodies)
                    for (const auto& f : child_sets[j]->formulas)
                        next.insert(body_insert(b, f));
                bodies = std::move(next);
                if (bodies.size() > kPhiGuard)
                    throw Error(ErrKind::Internal, "Phi-or set explosion");
            }
            for (const auto& b : bodies) {
                auto [pos, inserted] = best.emplace(b, bound);
                if (!inserted && pos->second < bound) pos->second = bound;
            }
        }
        for (const auto& [body, bound] : best) {
            std::vector<FormulaPtr> fs = body.fs;
            result.formulas.push_back(f_dia(name, bound, disj_of(std::move(fs))));
        }
    }
    std::sort(result.formulas.begin(), result.formulas.end(),
              [](const FormulaPtr& x, const FormulaPtr& y) {
                  return formula_compare(x, y) < 0;
              });
    return or_cache_.emplace(t.get(), std::move(result)).first->second;
}

const PhiSet& Synthesizer::phi_and(const Rpt& t) {
    auto it = and_cache_.find(t.get());
    if (it != and_cache_.end()) return it->second;

    PhiSet result;
    result.logic = LogicId::And;
    for (const auto& [a, edges] : t->succ) {
        const std::string& name = arena_.actions().name(a);
        result.formulas.push_back(f_dia(name, Rat::one(), f_top()));

        // Per child, every nonempty subset of its Phi-set becomes one
        // conjunction bounded by that child's probability; splb sums the
        // bounds of identical bodies arising from different children.
        std::unordered_map<BodyKey, Rat, BodyHash, BodyEq> sums;
        for (const auto& e : edges) {
            const PhiSet& s = phi_and(e.child);
            if (s.formulas.empty()) continue;
            if (s.formulas.size() > kAndSubsetGuard)
                throw Error(ErrKind::Internal, "Phi-and set explosion");
            std::size_t m = s.formulas.size();
            for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
                std::vector<FormulaPtr> ops;
                for (std::size_t j = 0; j < m; ++j)
                    if (mask & (std::size_t(1) << j)) ops.push_back(s.formulas[j]);
                BodyKey body = make_body(std::move(ops));
                sums[body] += e.prob;
                if (sums.size() > kPhiGuard)
                    throw Error(ErrKind::Internal, "Phi-and set explosion");
            }
        }
        for (const auto& [body, bound] : sums) {
            std::vector<FormulaPtr> fs = body.fs;
            result.formulas.push_back(f_dia(name, bound, conj_of(std::move(fs))));
        }
    }
    std::sort(result.formulas.begin(), result.formulas.end(),
              [](const FormulaPtr& x, const FormulaPtr& y) {
                  return formula_compare(x, y) < 0;
              });
    return and_cache_.emplace(t.get(), std::move(result)).first->second;
}

const PhiSet& Synthesizer::phi_chains(const Rpt& t, LogicId logic) {
    bool conjunctive = logic == LogicId::And;
    auto& cache = conjunctive ? and_chain_cache_ : or_chain_cache_;
    auto it = cache.find(t.get());
    if (it != cache.end()) return it->second;

    // Connective-free members are diamond chains: the per-action base
    // diamond plus, for every chain in a child's set, a lift whose bound
    // sums the masses of all children carrying that chain (for the
    // conjunctive sets that is the splb sum over singleton bodies, for the
    // disjunctive ones the hplb maximum over the widest choice set).
    PhiSet result;
    result.logic = logic;
    for (const auto& [a, edges] : t->succ) {
        const std::string& name = arena_.actions().name(a);
        result.formulas.push_back(f_dia(name, Rat::one(), f_top()));
        auto cmp = [](const FormulaPtr& x, const FormulaPtr& y) {
            return formula_compare(x, y) < 0;
        };
        std::map<FormulaPtr, Rat, decltype(cmp)> lifted(cmp);
        for (const auto& e : edges)
            for (const auto& chain : phi_chains(e.child, logic).formulas)
                lifted[chain] += e.prob;
        for (const auto& [body, mass] : lifted)
            result.formulas.push_back(f_dia(name, mass, body));
    }
    std::sort(result.formulas.begin(), result.formulas.end(),
              [](const FormulaPtr& x, const FormulaPtr& y) {
                  return formula_compare(x, y) < 0;
              });
    return cache.emplace(t.get(), std::move(result)).first->second;
}

const PhiSet* Synthesizer::try_phi(const Rpt& t, bool conjunctive) {
    auto& overflow = conjunctive ? and_overflow_ : or_overflow_;
    auto of = overflow.find(t.get());
    if (of != overflow.end() && of->second) return nullptr;
    try {
        return conjunctive ? &phi_and(t) : &phi_or(t);
    } catch (const Error&) {
        overflow[t.get()] = true;
        return nullptr;
    }
}

namespace {

void flatten(const FormulaPtr& f, FKind kind, std::vector<FormulaPtr>& out) {
    if (f->kind == kind) {
        flatten(f->lhs, kind, out);
        flatten(f->rhs, kind, out);
    } else {
        out.push_back(f);
    }
}

} // namespace

bool Synthesizer::phi_member(const FormulaPtr& f, const Rpt& t, LogicId logic) {
    bool conjunctive = logic == LogicId::And;
    if (f->kind != FKind::Diamond) return false;
    auto act = arena_.actions().find(f->action);
    if (!act) return false;
    const std::vector<RptEdge>* edges = t->edges(*act);
    if (!edges) return false;
    if (f->lhs->kind == FKind::Top) return f->bound.is_one();

    std::vector<FormulaPtr> parts;
    flatten(f->lhs, conjunctive ? FKind::And : FKind::Or, parts);
    auto member = [&](const FormulaPtr& g, const Rpt& child) {
        if (contains_kind(g, conjunctive ? FKind::And : FKind::Or))
            return phi_member(g, child, logic);
        return phi_chains(child, logic).contains(g);
    };

    if (conjunctive) {
        // The body is one child's member subset; the bound sums the masses
        // of every child whose set contains all of it.
        Rat mass;
        bool any = false;
        for (const auto& e : *edges) {
            bool all = true;
            for (const auto& g : parts)
                if (!(all = member(g, e.child))) break;
            if (all) {
                any = true;
                mass += e.prob;
            }
        }
        return any && f->bound == mass;
    }
    // Disjunctive: each contributing child picks one operand; the maximal
    // bound sums every child that can pick anything, provided some choice
    // still covers all operands (a matching of operands into distinct
    // children).
    std::vector<std::vector<std::size_t>> adj(parts.size());
    Rat mass;
    for (std::size_t c = 0; c < edges->size(); ++c) {
        bool picks = false;
        for (std::size_t g = 0; g < parts.size(); ++g) {
            if (member(parts[g], (*edges)[c].child)) {
                adj[g].push_back(c);
                picks = true;
            }
        }
        if (picks) mass += (*edges)[c].prob;
    }
    std::vector<int> match_right(edges->size(), -1);
    for (std::size_t g = 0; g < parts.size(); ++g) {
        std::vector<bool> visited(edges->size(), false);
        if (!try_augment(g, adj, match_right, visited)) return false;
    }
    return f->bound == mass;
}

FormulaPtr Synthesizer::scan_for_unsat(const Rpt& pool_node, const Rpt& against,
                                       bool conjunctive) {
    const SymbolTable& acts = arena_.actions();
    if (const PhiSet* mat = try_phi(pool_node, conjunctive)) {
        for (const auto& f : mat->formulas)
            if (!sat_tree(against, f, acts)) return f;
        return nullptr;
    }
    // The set is too large to materialize. Chains almost always suffice;
    // beyond them, walk small member subsets under a candidate budget,
    // emitting true members only (bounds recomputed by the membership
    // rules).
    LogicId logic = conjunctive ? LogicId::And : LogicId::Or;
    for (const auto& f : phi_chains(pool_node, logic).formulas)
        if (!sat_tree(against, f, acts)) return f;

    long budget = 50000;
    for (const auto& [a, edges] : pool_node->succ) {
        const std::string& name = acts.name(a);
        for (const auto& e : edges) {
            const PhiSet* base = try_phi(e.child, conjunctive);
            if (!base) continue;
            const auto& members = base->formulas;
            std::size_t m = members.size();
            for (std::size_t k = 2; k <= m; ++k) {
                // Size-k index combinations in lexicographic order.
                std::vector<std::size_t> idx(k);
                for (std::size_t i = 0; i < k; ++i) idx[i] = i;
                while (true) {
                    if (--budget < 0) return nullptr;
                    std::vector<FormulaPtr> parts;
                    parts.reserve(k);
                    for (std::size_t i : idx) parts.push_back(members[i]);
                    FormulaPtr body = conjunctive ? conj_of(parts) : disj_of(parts);
                    Rat mass;
                    if (conjunctive) {
                        for (const auto& o : edges) {
                            bool all = true;
                            for (const auto& g : parts) {
                                bool in =
                                    contains_kind(g, FKind::And)
                                        ? phi_member(g, o.child, LogicId::And)
                                        : phi_chains(o.child, LogicId::And).contains(g);
                                if (!(all = in)) break;
                            }
                            if (all) mass += o.prob;
                        }
                    } else {
                        FormulaPtr probe = f_dia(name, Rat::zero(), body);
                        // Bound via the membership rule: sum of children
                        // able to pick an operand, when coverage holds.
                        for (const auto& o : edges) {
                            bool picks = false;
                            for (const auto& g : parts) {
                                bool in =
                                    contains_kind(g, FKind::Or)
                                        ? phi_member(g, o.child, LogicId::Or)
                                        : phi_chains(o.child, LogicId::Or).contains(g);
                                if ((picks = in)) break;
                            }
                            if (picks) mass += o.prob;
                        }
                        (void)probe;
                    }
                    if (!mass.is_zero()) {
                        FormulaPtr f = f_dia(name, mass, body);
                        if (phi_member(f, pool_node, logic) &&
                            !sat_tree(against, f, acts))
                            return f;
                    }
                    // Next combination.
                    std::size_t i = k;
                    while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
                    if (i == 0) break;
                    ++idx[i - 1];
                    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }
    return nullptr;
}

namespace {

std::vector<ActionId> init_actions(const Rpt& t) {
    std::vector<ActionId> out;
    for (const auto& [a, es] : t->succ) out.push_back(a);
    return out;
}

// First action (in id order) whose successor lists differ; canonical edge
// lists make equality of lists equality of distributions.
std::optional<ActionId> first_differing_action(const Rpt& t1, const Rpt& t2) {
    for (const auto& [a, es1] : t1->succ) {
        const std::vector<RptEdge>* es2 = t2->edges(a);
        if (!es2) continue;
        bool differ = es1.size() != es2->size();
        for (std::size_t i = 0; !differ && i < es1.size(); ++i)
            differ = !rpt_equal(es1[i].child, (*es2)[i].child) ||
                     es1[i].prob != (*es2)[i].prob;
        if (differ) return a;
    }
    return std::nullopt;
}

struct SupportEntry {
    Rpt node;
    Rat p1; // mass under the first tree's distribution
    Rat p2; // mass under the second tree's distribution
};

std::vector<SupportEntry> joint_support(const std::vector<RptEdge>& es1,
                                        const std::vector<RptEdge>& es2) {
    std::vector<SupportEntry> out;
    for (const auto& e : es1) out.push_back({e.child, e.prob, Rat::zero()});
    for (const auto& e : es2) {
        bool found = false;
        for (auto& s : out) {
            if (rpt_equal(s.node, e.child)) {
                s.p2 = e.prob;
                found = true;
                break;
            }
        }
        if (!found) out.push_back({e.child, Rat::zero(), e.prob});
    }
    std::sort(out.begin(), out.end(), [](const SupportEntry& x, const SupportEntry& y) {
        return rpt_compare(x.node, y.node) < 0;
    });
    return out;
}

} // namespace

DistResult Synthesizer::dist_neg_and(const Rpt& t1, const Rpt& t2) {
    auto& slot = na_cache_[t1.get()];
    auto hit = slot.find(t2.get());
    if (hit != slot.end()) return hit->second;

    const SymbolTable& acts = arena_.actions();
    std::vector<ActionId> i1 = init_actions(t1), i2 = init_actions(t2);
    DistResult res;
    res.satisfied_by_first = true;
    if (i1 != i2) {
        for (ActionId a : i1) {
            if (!t2->edges(a)) {
                res.formula = f_dia(acts.name(a), Rat::one(), f_top());
                return na_cache_[t1.get()].emplace(t2.get(), res).first->second;
            }
        }
        for (ActionId a : i2) {
            if (!t1->edges(a)) {
                res.formula = f_neg(f_dia(acts.name(a), Rat::one(), f_top()));
                return na_cache_[t1.get()].emplace(t2.get(), res).first->second;
            }
        }
    }
    auto act = first_differing_action(t1, t2);
    if (!act)
        throw Error(ErrKind::Internal, "unequal trees with equal behaviour maps");
    auto support = joint_support(*t1->edges(*act), *t2->edges(*act));

    // Derivative of t1 reached with strictly larger probability; its
    // distinguishing formulas against every other t2-derivative are made
    // satisfied by it (negating where needed), then conjoined.
    const SupportEntry* pivot = nullptr;
    for (const auto& s : support) {
        if (s.p1 > s.p2) {
            pivot = &s;
            break;
        }
    }
    if (!pivot) throw Error(ErrKind::Internal, "no derivative with larger mass");
    std::vector<FormulaPtr> conj;
    for (const auto& s : support) {
        if (s.p2.is_zero() || rpt_equal(s.node, pivot->node)) continue;
        DistResult sub = dist_neg_and(pivot->node, s.node);
        conj.push_back(sub.formula);
    }
    if (conj.empty()) throw Error(ErrKind::Internal, "empty opposing support");
    res.formula = f_dia(acts.name(*act), pivot->p1, conj_of(std::move(conj)));
    return na_cache_[t1.get()].emplace(t2.get(), res).first->second;
}

DistResult Synthesizer::dist_neg_or(const Rpt& t1, const Rpt& t2) {
    auto& slot = no_cache_[t1.get()];
    auto hit = slot.find(t2.get());
    if (hit != slot.end()) return hit->second;

    const SymbolTable& acts = arena_.actions();
    std::vector<ActionId> i1 = init_actions(t1), i2 = init_actions(t2);
    DistResult res;
    res.satisfied_by_first = false;
    if (i1 != i2) {
        for (ActionId a : i2) {
            if (!t1->edges(a)) {
                res.formula = f_dia(acts.name(a), Rat::one(), f_top());
                return no_cache_[t1.get()].emplace(t2.get(), res).first->second;
            }
        }
        for (ActionId a : i1) {
            if (!t2->edges(a)) {
                res.formula = f_neg(f_dia(acts.name(a), Rat::one(), f_top()));
                return no_cache_[t1.get()].emplace(t2.get(), res).first->second;
            }
        }
    }
    auto act = first_differing_action(t1, t2);
    if (!act)
        throw Error(ErrKind::Internal, "unequal trees with equal behaviour maps");
    auto support = joint_support(*t1->edges(*act), *t2->edges(*act));

    // Dual: formulas are made unsatisfied by the pivot, disjoined, and the
    // diamond carries the probability of t2 avoiding the pivot.
    const SupportEntry* pivot = nullptr;
    for (const auto& s : support) {
        if (s.p1 > s.p2) {
            pivot = &s;
            break;
        }
    }
    if (!pivot) throw Error(ErrKind::Internal, "no derivative with larger mass");
    std::vector<FormulaPtr> disj;
    for (const auto& s : support) {
        if (s.p2.is_zero() || rpt_equal(s.node, pivot->node)) continue;
        DistResult sub = dist_neg_or(pivot->node, s.node);
        disj.push_back(sub.formula);
    }
    if (disj.empty()) throw Error(ErrKind::Internal, "empty opposing support");
    res.formula =
        f_dia(acts.name(*act), Rat::one() - pivot->p2, disj_of(std::move(disj)));
    return no_cache_[t1.get()].emplace(t2.get(), res).first->second;
}

DistResult Synthesizer::dist_nofree(const Rpt& t1, const Rpt& t2, bool conjunctive) {
    const SymbolTable& acts = arena_.actions();
    std::vector<ActionId> i1 = init_actions(t1), i2 = init_actions(t2);
    if (i1 != i2) {
        // No negation: the satisfied side is whichever enables the extra
        // action. Preference keeps the documented orientation whenever both
        // directions are available.
        std::optional<ActionId> only1, only2;
        for (ActionId a : i1)
            if (!t2->edges(a)) { only1 = a; break; }
        for (ActionId a : i2)
            if (!t1->edges(a)) { only2 = a; break; }
        if (conjunctive && only1)
            return {f_dia(acts.name(*only1), Rat::one(), f_top()), true};
        if (only2) return {f_dia(acts.name(*only2), Rat::one(), f_top()), false};
        return {f_dia(acts.name(*only1), Rat::one(), f_top()), true};
    }
    auto act = first_differing_action(t1, t2);
    if (!act)
        throw Error(ErrKind::Internal, "unequal trees with equal behaviour maps");
    auto support = joint_support(*t1->edges(*act), *t2->edges(*act));

    std::vector<const SupportEntry*> neq;
    std::vector<const SupportEntry*> eq;
    for (const auto& s : support)
        (s.p1 != s.p2 ? neq : eq).push_back(&s);
    if (neq.size() < 2)
        throw Error(ErrKind::Internal, "differing distributions share all masses");

    LogicId logic = conjunctive ? LogicId::And : LogicId::Or;

    // Drop derivatives whose Phi-set relates to another one as a
    // (<=,<)-variant: for the disjunctive logic keep the small-bound side
    // (no other set is a variant of the survivor's), for the conjunctive
    // logic keep the large-bound side. The test only reads the
    // connective-free members, so the chain sets decide it even when the
    // full sets are too large to materialize.
    std::vector<const SupportEntry*> survivors;
    for (const SupportEntry* x : neq) {
        bool eliminated = false;
        for (const SupportEntry* y : neq) {
            if (x == y) continue;
            const PhiSet& cx = phi_chains(x->node, logic);
            const PhiSet& cy = phi_chains(y->node, logic);
            eliminated = conjunctive ? is_le_lt_variant(cx, cy)
                                     : is_le_lt_variant(cy, cx);
            if (eliminated) break;
        }
        if (!eliminated) survivors.push_back(x);
    }
    if (survivors.empty())
        throw Error(ErrKind::Internal, "no variant-free derivative exists");

    // Preference among survivors: smallest Phi-set first for the
    // disjunctive logic, largest first for the conjunctive one; ties broken
    // by the canonical tree order. Cardinality alone does not always
    // identify a workable pivot (the per-target member scan below can come
    // up empty for the preferred node while another survivor works), so the
    // candidates are tried in order and the construction self-certifies:
    // any pivot whose scans all succeed yields a separating formula by the
    // mass argument. Unmaterializable sets count as largest.
    auto size_of = [&](const Rpt& u) {
        const PhiSet* s = try_phi(u, conjunctive);
        return s ? s->size() : std::numeric_limits<std::size_t>::max();
    };
    std::sort(survivors.begin(), survivors.end(),
              [&](const SupportEntry* x, const SupportEntry* y) {
                  std::size_t sx = size_of(x->node), sy = size_of(y->node);
                  if (sx != sy) return conjunctive ? sx > sy : sx < sy;
                  return rpt_compare(x->node, y->node) < 0;
              });

    for (const SupportEntry* pivot : survivors) {
        bool swapped = pivot->p1 < pivot->p2;
        auto second_mass = [&](const SupportEntry* s) {
            return swapped ? s->p1 : s->p2;
        };

        // Opposing-side derivatives with a different mass.
        std::vector<const SupportEntry*> targets;
        for (const SupportEntry* s : neq)
            if (s != pivot && !second_mass(s).is_zero()) targets.push_back(s);
        if (targets.empty()) continue;

        std::vector<FormulaPtr> parts;
        bool complete = true;
        for (const SupportEntry* tgt : targets) {
            const Rpt& pool_node = conjunctive ? pivot->node : tgt->node;
            const Rpt& against = conjunctive ? tgt->node : pivot->node;
            FormulaPtr chosen = scan_for_unsat(pool_node, against, conjunctive);
            if (!chosen) {
                complete = false;
                break;
            }
            parts.push_back(std::move(chosen));
        }
        if (!complete) continue;

        FormulaPtr body =
            conjunctive ? conj_of(std::move(parts)) : disj_of(std::move(parts));
        Rat bound;
        if (conjunctive) {
            // Mass of the pivot plus equal-mass derivatives satisfying the body.
            bound = swapped ? pivot->p2 : pivot->p1;
            for (const SupportEntry* s : eq)
                if (sat_tree(s->node, body, acts)) bound += s->p1;
        } else {
            // Probability of the second side avoiding the pivot and the
            // equal-mass derivatives that fail the body.
            Rat avoid = second_mass(pivot);
            for (const SupportEntry* s : eq)
                if (!sat_tree(s->node, body, acts)) avoid += s->p1;
            bound = Rat::one() - avoid;
        }
        if (!bound.is_prob() || bound.is_zero())
            throw Error(ErrKind::Internal, "synthesized bound " + bound.str() +
                                               " outside (0,1]");
        FormulaPtr formula = f_dia(acts.name(*act), bound, body);
        bool sat_first = conjunctive ? !swapped : swapped;
        return {formula, sat_first};
    }
    throw Error(ErrKind::Internal,
                "no variant-free derivative admits a full member scan");
}

std::optional<DistResult> Synthesizer::distinguish(const Rpt& t1, const Rpt& t2,
                                                   LogicId logic) {
    if (rpt_equal(t1, t2)) return std::nullopt;
    DistResult res;
    switch (logic) {
        case LogicId::NegAnd: res = dist_neg_and(t1, t2); break;
        case LogicId::NegOr: res = dist_neg_or(t1, t2); break;
        case LogicId::And: res = dist_nofree(t1, t2, true); break;
        case LogicId::Or: res = dist_nofree(t1, t2, false); break;
    }
    // Contract enforcement: fragment membership, depth bound, and exactly
    // one side satisfying. Violations are implementation bugs, not inputs.
    if (!in_fragment(res.formula, logic))
        throw Error(ErrKind::Internal, "formula left its fragment");
    if (res.formula->depth > std::max(t1->height, t2->height))
        throw Error(ErrKind::Internal, "formula exceeds the height bound");
    bool s1 = sat_tree(t1, res.formula, arena_.actions());
    bool s2 = sat_tree(t2, res.formula, arena_.actions());
    if (s1 == s2 || s1 != res.satisfied_by_first)
        throw Error(ErrKind::Internal, "synthesized formula does not separate");
    return res;
}

PhiSet phi_or(const Rpt& t, const TreeArena& arena) {
    Synthesizer s(arena);
    return s.phi_or(t);
}

PhiSet phi_and(const Rpt& t, const TreeArena& arena) {
    Synthesizer s(arena);
    return s.phi_and(t);
}

std::optional<DistResult> distinguish_trees(const Rpt& t1, const Rpt& t2,
                                            LogicId logic, const TreeArena& arena) {
    Synthesizer s(arena);
    return s.distinguish(t1, t2, logic);
}

std::optional<StateDistResult> distinguish_states(const Rplts& sys, StateId s1,
                                                  StateId s2, LogicId logic) {
    if (s1 >= sys.num_states() || s2 >= sys.num_states())
        throw Error(ErrKind::UnknownState, "state id out of range");
    TreeArena arena(sys);
    unsigned max_level = sys.num_states();
    if (rpt_equal(arena.unfold(sys, s1, max_level), arena.unfold(sys, s2, max_level)))
        return std::nullopt;
    unsigned level = 1;
    while (rpt_equal(arena.unfold(sys, s1, level), arena.unfold(sys, s2, level)))
        ++level;
    Synthesizer syn(arena);
    auto res = syn.distinguish(arena.unfold(sys, s1, level),
                               arena.unfold(sys, s2, level), logic);
    if (!res) throw Error(ErrKind::Internal, "level search found no difference");
    return StateDistResult{res->formula, res->satisfied_by_first, level};
}

std::optional<StateDistResult> distinguish_states(const Rplts& sys,
                                                  const std::string& s1,
                                                  const std::string& s2,
                                                  LogicId logic) {
    return distinguish_states(sys, sys.state_or_throw(s1), sys.state_or_throw(s2),
                              logic);
}

} // namespace rpbis
