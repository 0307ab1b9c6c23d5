/* parser.hpp -- textual DSL for systems (.rplts) and formulas (.pml)
 *
 * System grammar (whitespace-insensitive, '#' line comments):
 *   system := decl*
 *   decl   := ID "-" ACTION "->" "{" branch ("," branch)* "}"
 *   branch := RAT ":" ID
 *   RAT    := INT ["/" INT] | DECIMAL
 *
 * Formula grammar: `true`, `!f`, `f & f`, `f | f`, `<a>p f`; '&'/'|'
 * left-associative, '!' and diamonds bind tighter, parentheses allowed,
 * trailing `true` in diamonds optional. Mixing '&' and '|' without
 * parentheses is rejected. Decimals convert exactly to rationals.
 */
#pragma once

#include <string>

#include "rpbis/logic.hpp"
#include "rpbis/model.hpp"

namespace rpbis {

Rplts parse_system(const std::string& text);
FormulaPtr parse_formula(const std::string& text);

// Canonical text; parse_formula(render_formula(f)) is structurally f.
// Bounds render as canonical rationals ("1/2"); decimal = true renders
// exact decimals where the denominator allows ("0.5").
std::string render_formula(const FormulaPtr& f, bool decimal = false);

// Deterministic canonical system text; reparses to an equal system.
std::string render_system(const Rplts& sys);

} // namespace rpbis
