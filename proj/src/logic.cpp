#include "rpbis/logic.hpp"

#include <algorithm>

namespace rpbis {

const char* logic_name(LogicId l) {
    switch (l) {
        case LogicId::NegAnd: return "neg-and";
        case LogicId::NegOr: return "neg-or";
        case LogicId::And: return "and";
        case LogicId::Or: return "or";
    }
    return "?";
}

LogicId logic_from_name(const std::string& s) {
    if (s == "neg-and") return LogicId::NegAnd;
    if (s == "neg-or") return LogicId::NegOr;
    if (s == "and") return LogicId::And;
    if (s == "or") return LogicId::Or;
    throw Error(ErrKind::SyntaxError, "unknown logic '" + s + "'");
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b9 + (h << 6) + (h >> 2));
}

FormulaPtr freeze(Formula f) {
    std::size_t h = mix(0x8f1bbcdc, static_cast<std::size_t>(f.kind));
    switch (f.kind) {
        case FKind::Top:
            f.depth = 0;
            f.size = 1;
            break;
        case FKind::Neg:
            h = mix(h, f.lhs->hash);
            f.depth = f.lhs->depth;
            f.size = 1 + f.lhs->size;
            break;
        case FKind::And:
        case FKind::Or:
            h = mix(h, f.lhs->hash);
            h = mix(h, f.rhs->hash);
            f.depth = std::max(f.lhs->depth, f.rhs->depth);
            f.size = 1 + f.lhs->size + f.rhs->size;
            break;
        case FKind::Diamond:
            h = mix(h, std::hash<std::string>{}(f.action));
            h = mix(h, f.bound.hash());
            h = mix(h, f.lhs->hash);
            f.depth = 1 + f.lhs->depth;
            f.size = 1 + f.lhs->size;
            break;
    }
    f.hash = h;
    return std::make_shared<const Formula>(std::move(f));
}

} // namespace

FormulaPtr f_top() {
    static const FormulaPtr top = freeze(Formula{FKind::Top, "", Rat(), nullptr, nullptr});
    return top;
}

FormulaPtr f_neg(FormulaPtr f) {
    return freeze(Formula{FKind::Neg, "", Rat(), std::move(f), nullptr});
}

FormulaPtr f_and(FormulaPtr l, FormulaPtr r) {
    return freeze(Formula{FKind::And, "", Rat(), std::move(l), std::move(r)});
}

FormulaPtr f_or(FormulaPtr l, FormulaPtr r) {
    return freeze(Formula{FKind::Or, "", Rat(), std::move(l), std::move(r)});
}

FormulaPtr f_dia(std::string action, Rat bound, FormulaPtr body) {
    if (!bound.is_prob())
        throw Error(ErrKind::ProbOutOfRange,
                    "diamond bound " + bound.str() + " outside [0,1]");
    return freeze(Formula{FKind::Diamond, std::move(action), bound, std::move(body), nullptr});
}

int formula_compare(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->depth != b->depth) return a->depth < b->depth ? -1 : 1;
    if (a->size != b->size) return a->size < b->size ? -1 : 1;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
        case FKind::Top:
            return 0;
        case FKind::Neg:
            return formula_compare(a->lhs, b->lhs);
        case FKind::And:
        case FKind::Or:
            if (int c = formula_compare(a->lhs, b->lhs)) return c;
            return formula_compare(a->rhs, b->rhs);
        case FKind::Diamond:
            if (int c = a->action.compare(b->action)) return c < 0 ? -1 : 1;
            if (a->bound != b->bound) return a->bound < b->bound ? -1 : 1;
            return formula_compare(a->lhs, b->lhs);
    }
    return 0;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->hash != b->hash) return false;
    return formula_compare(a, b) == 0;
}

namespace {

FormulaPtr nary(std::vector<FormulaPtr> ops, bool conj) {
    if (ops.empty())
        throw Error(ErrKind::Internal, "empty connective operand list");
    std::sort(ops.begin(), ops.end(), [](const FormulaPtr& x, const FormulaPtr& y) {
        return formula_compare(x, y) < 0;
    });
    ops.erase(std::unique(ops.begin(), ops.end(),
                          [](const FormulaPtr& x, const FormulaPtr& y) {
                              return formula_equal(x, y);
                          }),
              ops.end());
    FormulaPtr acc = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i)
        acc = conj ? f_and(acc, ops[i]) : f_or(acc, ops[i]);
    return acc;
}

} // namespace

FormulaPtr conj_of(std::vector<FormulaPtr> operands) { return nary(std::move(operands), true); }
FormulaPtr disj_of(std::vector<FormulaPtr> operands) { return nary(std::move(operands), false); }

unsigned depth(const FormulaPtr& f) { return f->depth; }

bool in_fragment(const FormulaPtr& f, LogicId logic) {
    switch (f->kind) {
        case FKind::Top:
            return true;
        case FKind::Neg:
            if (logic != LogicId::NegAnd && logic != LogicId::NegOr) return false;
            return in_fragment(f->lhs, logic);
        case FKind::And:
            if (logic != LogicId::NegAnd && logic != LogicId::And) return false;
            return in_fragment(f->lhs, logic) && in_fragment(f->rhs, logic);
        case FKind::Or:
            if (logic != LogicId::NegOr && logic != LogicId::Or) return false;
            return in_fragment(f->lhs, logic) && in_fragment(f->rhs, logic);
        case FKind::Diamond:
            return in_fragment(f->lhs, logic);
    }
    return false;
}

bool sat_state(const Rplts& sys, StateId s, const FormulaPtr& f) {
    if (s >= sys.num_states())
        throw Error(ErrKind::UnknownState, "state id out of range");
    switch (f->kind) {
        case FKind::Top:
            return true;
        case FKind::Neg:
            return !sat_state(sys, s, f->lhs);
        case FKind::And:
            return sat_state(sys, s, f->lhs) && sat_state(sys, s, f->rhs);
        case FKind::Or:
            return sat_state(sys, s, f->lhs) || sat_state(sys, s, f->rhs);
        case FKind::Diamond: {
            auto act = sys.find_action(f->action);
            if (!act) return false;
            const Dist* d = sys.transition(s, *act);
            if (!d) return false;
            Rat mass = d->mass_if([&](StateId tgt) { return sat_state(sys, tgt, f->lhs); });
            return mass >= f->bound;
        }
    }
    return false;
}

bool sat_tree(const Rpt& t, const FormulaPtr& f, const SymbolTable& actions) {
    switch (f->kind) {
        case FKind::Top:
            return true;
        case FKind::Neg:
            return !sat_tree(t, f->lhs, actions);
        case FKind::And:
            return sat_tree(t, f->lhs, actions) && sat_tree(t, f->rhs, actions);
        case FKind::Or:
            return sat_tree(t, f->lhs, actions) || sat_tree(t, f->rhs, actions);
        case FKind::Diamond: {
            auto act = actions.find(f->action);
            if (!act) return false;
            const std::vector<RptEdge>* es = t->edges(*act);
            if (!es) return false;
            Rat mass;
            for (const auto& e : *es)
                if (sat_tree(e.child, f->lhs, actions)) mass += e.prob;
            return mass >= f->bound;
        }
    }
    return false;
}

} // namespace rpbis
