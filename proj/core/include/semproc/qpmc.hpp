#pragma once

#include "semproc/formula.hpp"
#include "semproc/mlts.hpp"
#include "semproc/process.hpp"

namespace semproc {

/// The component being factored out of a parallel composition, explored to
/// its transition system, plus the synchronisation set L.
struct PmcContext {
    Mlts component;
    ActionSet sync_set;
};

PmcContext make_pmc_context(const TermPtr& component, const ProcessEnv& env,
                            const SemiringPtr& ring, ActionSet sync_set,
                            std::size_t state_limit = kDefaultStateLimit);

/// Rewrites phi against the context's component: constants are untouched,
/// the connectives are homomorphic, and the modalities unfold the
/// component's moves, synchronised for actions in L and interleaved
/// otherwise. Sub-results are memoised per (formula node, component state).
FormulaPtr pmc_transform(const FormulaPtr& phi, const PmcContext& ctx);

/// Semantics-preserving constant folding: constants combine under the three
/// connectives, top factors and bottom summands drop, bottom factors and top
/// summands collapse, top conjuncts drop. Idempotent.
FormulaPtr simplify(const FormulaPtr& phi);

struct TheoremCheck {
    Weight lhs; ///< value of phi on P |[L]| Q
    Weight rhs; ///< value of the residual phi//P on Q
    bool equal = false;
};

/// Evaluates both routes of the factorisation identity and reports whether
/// they agree exactly.
TheoremCheck verify_theorem(const FormulaPtr& phi, const TermPtr& P, const TermPtr& Q,
                            const ActionSet& L, const ProcessEnv& env, const SemiringPtr& ring,
                            std::size_t state_limit = kDefaultStateLimit);

} // namespace semproc
