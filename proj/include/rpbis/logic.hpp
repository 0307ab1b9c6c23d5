/* logic.hpp -- probabilistic modal formulas and satisfaction
 *
 * Four fragments over the same AST: diamond <a>p with a probabilistic lower
 * bound is always available, the boolean connectives vary (negation and/or
 * one of conjunction/disjunction). Formulas are immutable shared ASTs;
 * actions are stored by name so a formula can be evaluated against any
 * system (unknown actions make diamonds false).
 */
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rpbis/model.hpp"
#include "rpbis/rpt.hpp"

namespace rpbis {

enum class LogicId { NegAnd, NegOr, And, Or };

const char* logic_name(LogicId l);               // "neg-and" | "neg-or" | "and" | "or"
LogicId logic_from_name(const std::string& s);   // throws SyntaxError

enum class FKind { Top, Neg, And, Or, Diamond };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FKind kind;
    std::string action; // Diamond
    Rat bound;          // Diamond
    FormulaPtr lhs;     // Neg operand / binary left / Diamond body
    FormulaPtr rhs;     // binary right
    std::size_t hash = 0;
    unsigned depth = 0; // modal depth: Neg transparent, And/Or max, Diamond 1+
    unsigned size = 1;  // node count, used only for canonical ordering
};

FormulaPtr f_top();
FormulaPtr f_neg(FormulaPtr f);
FormulaPtr f_and(FormulaPtr l, FormulaPtr r);
FormulaPtr f_or(FormulaPtr l, FormulaPtr r);
FormulaPtr f_dia(std::string action, Rat bound, FormulaPtr body);

// Canonical total order: by depth, then size, then structure (actions
// lexicographic, bounds ascending). Equal formulas compare 0.
int formula_compare(const FormulaPtr& a, const FormulaPtr& b);
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// Canonical n-ary connectives: operands sorted, duplicates merged, folded
// left-associatively. Singletons are returned as-is.
FormulaPtr conj_of(std::vector<FormulaPtr> operands);
FormulaPtr disj_of(std::vector<FormulaPtr> operands);

unsigned depth(const FormulaPtr& f);
bool in_fragment(const FormulaPtr& f, LogicId logic);

// Satisfaction over RPLTS states. <a>p needs an a-transition whose target
// distribution gives the body's satisfying states mass >= p; with p = 0 the
// transition must still exist.
bool sat_state(const Rplts& sys, StateId s, const FormulaPtr& f);

// Satisfaction over tree nodes, reading the tree as an RPLTS whose states
// are nodes. Action names resolve against the arena's alphabet.
bool sat_tree(const Rpt& t, const FormulaPtr& f, const SymbolTable& actions);

} // namespace rpbis
