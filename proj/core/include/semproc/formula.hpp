#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "semproc/mlts.hpp"
#include "semproc/process.hpp"
#include "semproc/semiring.hpp"

namespace semproc {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Modal formulas over one semiring: constants, the three semiring
/// connectives, the two modalities, and negation as an optional extension on
/// instances that define one.
struct Formula {
    enum class Kind { constant, plus, times, glb, diamond, box, neg };

    Kind kind = Kind::constant;
    std::optional<Weight> value; // constant
    FormulaPtr lhs, rhs;         // plus / times / glb
    Action action;               // diamond / box
    FormulaPtr sub;              // diamond / box / neg

    static FormulaPtr constant(Weight w);
    static FormulaPtr plus(FormulaPtr a, FormulaPtr b);
    static FormulaPtr times(FormulaPtr a, FormulaPtr b);
    static FormulaPtr glb_of(FormulaPtr a, FormulaPtr b);
    static FormulaPtr diamond(Action a, FormulaPtr f);
    static FormulaPtr box(Action a, FormulaPtr f);
    static FormulaPtr neg(FormulaPtr f);
};

/// Grammar: phi := weight | "top" | "bot" | phi "+" phi | phi "*" phi
///               | phi "&" phi | "<" name ">" phi | "[" name "]" phi
///               | "!" phi | "(" phi ")"
/// Unary operators bind tightest, then "*", then "&", then "+".
/// `!` requires a semiring with negation.
FormulaPtr parse_formula(std::string_view text, const SemiringPtr& ring);

/// Round-trips through parse_formula.
std::string print_formula(const Formula& f);

std::size_t formula_size(const Formula& f);
std::size_t formula_depth(const Formula& f);

/// Value of the formula at a state: constants are themselves, connectives
/// combine sub-values with +, x and glb, <a> sums T(s,a,s') x value(s') over
/// the a-successors, [a] takes the glb of the same products. Empty sums are
/// bottom, empty glbs top.
Weight evaluate(const FormulaPtr& phi, const Mlts& m, StateId s);

/// Restriction of `m` to the derivatives of `p`, keeping transitions whose
/// action occurs in p (tau-steps are retained as well: they are behaviour,
/// not alphabet). The initial state is preserved.
Mlts project(const Mlts& m, const TermPtr& p, const ProcessEnv& env);

struct ThresholdQuery {
    TermPtr process;
    const ProcessEnv* env = nullptr;
    FormulaPtr formula;
    Weight threshold;
    std::size_t state_limit = kDefaultStateLimit;
};

struct SatisfactionResult {
    bool holds = false;
    Weight value;
};

/// Threshold satisfaction: the formula's value on the process's own system
/// is not worse than the threshold in the semiring order.
SatisfactionResult satisfies(const ThresholdQuery& q);

} // namespace semproc
