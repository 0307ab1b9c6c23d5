#include "rpbis/rpt.hpp"

#include <algorithm>
#include <sstream>

namespace rpbis {

const std::vector<RptEdge>* RptNode::edges(ActionId a) const {
    for (const auto& [act, es] : succ)
        if (act == a) return &es;
    return nullptr;
}

int rpt_compare(const Rpt& a, const Rpt& b) {
    if (a.get() == b.get()) return 0;
    if (a->succ.size() != b->succ.size())
        return a->succ.size() < b->succ.size() ? -1 : 1;
    for (std::size_t i = 0; i < a->succ.size(); ++i) {
        const auto& [aa, ae] = a->succ[i];
        const auto& [ba, be] = b->succ[i];
        if (aa != ba) return aa < ba ? -1 : 1;
        if (ae.size() != be.size()) return ae.size() < be.size() ? -1 : 1;
        for (std::size_t j = 0; j < ae.size(); ++j) {
            if (int c = rpt_compare(ae[j].child, be[j].child)) return c;
            if (ae[j].prob != be[j].prob)
                return ae[j].prob < be[j].prob ? -1 : 1;
        }
    }
    return 0;
}

bool rpt_equal(const Rpt& a, const Rpt& b) {
    if (a.get() == b.get()) return true;
    if (a->hash != b->hash) return false;
    return rpt_compare(a, b) == 0;
}

unsigned height(const Rpt& t) { return t->height; }

namespace {

std::size_t node_hash(const std::vector<std::pair<ActionId, std::vector<RptEdge>>>& succ) {
    std::size_t h = 0x51ed270b;
    for (const auto& [a, es] : succ) {
        h ^= std::hash<ActionId>{}(a) + 0x9e3779b9 + (h << 6) + (h >> 2);
        for (const auto& e : es) {
            h ^= e.child->hash + 0x9e3779b9 + (h << 6) + (h >> 2);
            h ^= e.prob.hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
        }
    }
    return h;
}

} // namespace

bool TreeArena::KeyEq::operator()(const Key& a, const Key& b) const {
    if (a.node == b.node) return true;
    if (a.node->hash != b.node->hash) return false;
    if (a.node->succ.size() != b.node->succ.size()) return false;
    for (std::size_t i = 0; i < a.node->succ.size(); ++i) {
        const auto& [aa, ae] = a.node->succ[i];
        const auto& [ba, be] = b.node->succ[i];
        if (aa != ba || ae.size() != be.size()) return false;
        for (std::size_t j = 0; j < ae.size(); ++j) {
            // Children are interned already, so identity suffices.
            if (ae[j].child.get() != be[j].child.get()) return false;
            if (ae[j].prob != be[j].prob) return false;
        }
    }
    return true;
}

Rpt TreeArena::nil() {
    if (!nil_) nil_ = intern({});
    return nil_;
}

Rpt TreeArena::intern(std::vector<std::pair<ActionId, std::vector<RptEdge>>> succ) {
    std::sort(succ.begin(), succ.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    unsigned h = 0;
    for (auto& [a, es] : succ) {
        std::sort(es.begin(), es.end(), [](const RptEdge& x, const RptEdge& y) {
            return rpt_compare(x.child, y.child) < 0;
        });
        Rat sum;
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (!(es[j].prob > Rat::zero()))
                throw Error(ErrKind::Internal, "tree edge with non-positive weight");
            if (j > 0 && rpt_compare(es[j - 1].child, es[j].child) == 0)
                throw Error(ErrKind::Internal, "tree violates extensionality");
            sum += es[j].prob;
            if (es[j].child->height + 1 > h) h = es[j].child->height + 1;
        }
        if (!es.empty() && !sum.is_one())
            throw Error(ErrKind::Internal,
                        "tree weights sum to " + sum.str() + " under one action");
        if (es.empty())
            throw Error(ErrKind::Internal, "action mapped to empty successor set");
    }
    auto node = std::make_shared<RptNode>();
    node->succ = std::move(succ);
    node->hash = node_hash(node->succ);
    node->height = h;
    auto it = table_.find(Key{node.get()});
    if (it != table_.end()) return it->second;
    Rpt frozen = node;
    table_.emplace(Key{frozen.get()}, frozen);
    return frozen;
}

Rpt TreeArena::unfold(const Rplts& sys, StateId s, unsigned depth) {
    if (s >= sys.num_states())
        throw Error(ErrKind::UnknownState, "state id out of range");
    if (memo_sys_ != &sys) {
        unfold_memo_.clear();
        memo_sys_ = &sys;
    }
    if (depth == 0) return nil();
    std::uint64_t key = (std::uint64_t(s) << 32) | depth;
    auto it = unfold_memo_.find(key);
    if (it != unfold_memo_.end()) return it->second;

    std::vector<std::pair<ActionId, std::vector<RptEdge>>> succ;
    for (const auto& [act, dist] : sys.transitions(s)) {
        // Merge children that unfold to the same subtree, summing weights:
        // this is the collapse step applied on the fly, bottom-up.
        std::vector<RptEdge> edges;
        for (const auto& [tgt, p] : dist.entries()) {
            Rpt child = unfold(sys, tgt, depth - 1);
            bool merged = false;
            for (auto& e : edges) {
                if (e.child.get() == child.get()) {
                    e.prob += p;
                    merged = true;
                    break;
                }
            }
            if (!merged) edges.push_back(RptEdge{std::move(child), p});
        }
        succ.emplace_back(act, std::move(edges));
    }
    Rpt result = intern(std::move(succ));
    unfold_memo_.emplace(key, result);
    return result;
}

RawTree truncate(const Rpt& t, unsigned depth) {
    auto node = std::make_shared<RawNode>();
    if (depth == 0) return node;
    for (const auto& [a, es] : t->succ) {
        std::vector<std::pair<RawTree, Rat>> children;
        children.reserve(es.size());
        for (const auto& e : es)
            children.emplace_back(truncate(e.child, depth - 1), e.prob);
        node->succ.emplace_back(a, std::move(children));
    }
    return node;
}

Rpt TreeArena::collapse(const RawTree& t) {
    std::vector<std::pair<ActionId, std::vector<RptEdge>>> succ;
    for (const auto& [a, children] : t->succ) {
        std::vector<RptEdge> edges;
        for (const auto& [rawChild, p] : children) {
            Rpt child = collapse(rawChild);
            bool merged = false;
            for (auto& e : edges) {
                if (e.child.get() == child.get()) {
                    e.prob += p;
                    merged = true;
                    break;
                }
            }
            if (!merged) edges.push_back(RptEdge{std::move(child), p});
        }
        succ.emplace_back(a, std::move(edges));
    }
    return intern(std::move(succ));
}

Rpt TreeArena::prune(const Rpt& t, unsigned depth) {
    if (t->height <= depth) return t;
    return collapse(truncate(t, depth));
}

bool semantic_eq(const Rplts& sys, StateId s1, StateId s2) {
    TreeArena arena(sys);
    unsigned n = sys.num_states();
    return rpt_equal(arena.unfold(sys, s1, n), arena.unfold(sys, s2, n));
}

bool semantic_eq(const Rplts& sys, const std::string& s1, const std::string& s2) {
    return semantic_eq(sys, sys.state_or_throw(s1), sys.state_or_throw(s2));
}

namespace {

void render_rec(const Rpt& t, const SymbolTable& actions, unsigned indent,
                std::ostringstream& out) {
    for (const auto& [a, es] : t->succ) {
        for (const auto& e : es) {
            out << std::string(indent * 2, ' ') << actions.name(a) << ' '
                << e.prob.str() << " ->";
            if (e.child->is_nil()) {
                out << " nil\n";
            } else {
                out << '\n';
                render_rec(e.child, actions, indent + 1, out);
            }
        }
    }
}

void dot_rec(const Rpt& t, const SymbolTable& actions, int& next,
             int self, std::ostringstream& out) {
    for (const auto& [a, es] : t->succ) {
        for (const auto& e : es) {
            int child = next++;
            out << "  n" << child << " [label=\"" << (e.child->is_nil() ? "nil" : "")
                << "\" shape=" << (e.child->is_nil() ? "plaintext" : "circle") << "];\n";
            out << "  n" << self << " -> n" << child << " [label=\"" << actions.name(a)
                << ", " << e.prob.str() << "\"];\n";
            dot_rec(e.child, actions, next, child, out);
        }
    }
}

} // namespace

std::string render_tree(const Rpt& t, const SymbolTable& actions) {
    if (t->is_nil()) return "nil\n";
    std::ostringstream out;
    render_rec(t, actions, 0, out);
    return out.str();
}

std::string render_tree_dot(const Rpt& t, const SymbolTable& actions) {
    std::ostringstream out;
    out << "digraph rpt {\n  node [shape=circle label=\"\"];\n";
    out << "  n0 [label=\"" << (t->is_nil() ? "nil" : "") << "\"];\n";
    int next = 1;
    dot_rec(t, actions, next, 0, out);
    out << "}\n";
    return out.str();
}

void validate_rpt(const Rpt& t) {
    for (const auto& [a, es] : t->succ) {
        (void)a;
        if (es.empty())
            throw Error(ErrKind::Internal, "empty successor set stored");
        Rat sum;
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (!(es[j].prob > Rat::zero()))
                throw Error(ErrKind::Internal, "non-positive weight");
            if (j > 0 && rpt_compare(es[j - 1].child, es[j].child) >= 0)
                throw Error(ErrKind::Internal, "children unsorted or duplicated");
            sum += es[j].prob;
            validate_rpt(es[j].child);
        }
        if (!sum.is_one())
            throw Error(ErrKind::Internal, "weights do not sum to 1");
    }
}

} // namespace rpbis
