#pragma once

#include <map>
#include <optional>
#include <string>

#include "semproc/matrix.hpp"
#include "semproc/mlts.hpp"

namespace semproc {

/// Aggregated weak-move weights of one system: for each observable action a,
/// W_a = Tstar (x) M_a (x) Tstar where M_a is the one-step matrix and Tstar
/// the closure of the tau matrix. The diagonal of Tstar admits the empty
/// tau-path, so it is top-dominated.
struct WeakWeightMatrix {
    SemiringPtr ring;
    WeightMatrix tstar;
    std::map<Action, WeightMatrix> per_action;
};

WeakWeightMatrix weak_weight_matrix(const Mlts& m);

enum class RelationKind { wtrace, eps_trace, qweak_bisim, weak_eps_bisim };

std::string relation_name(RelationKind k);

/// Outcome of a behavioural check. When holds is false, `details` carries a
/// concrete witness: the failing condition, the offending values, a
/// distinguishing label sequence or state pair.
struct Verdict {
    bool holds = false;
    RelationKind relation{};
    std::optional<Weight> epsilon;
    std::map<std::string, std::string> details;
};

/// Weak-trace equivalence: equal observable trace sets, and both the strong
/// and the weak evaluation-values pairwise equal-or-incomparable.
Verdict weak_trace_equiv(const Mlts& P, const Mlts& Q,
                         std::size_t depth_limit = kDefaultDepthLimit);

/// The approximate variant: the weak evaluation-values need only match up to
/// eps under two-sided residuated division.
Verdict eps_trace_equiv(const Mlts& P, const Mlts& Q, const Weight& eps,
                        std::size_t depth_limit = kDefaultDepthLimit);

/// Quantitative weak bisimulation: coarsest partition of the disjoint state
/// union in which class-aggregated weak weights and tau-closure weights are
/// equal-or-incomparable across each block; holds iff the initial states
/// share a block.
Verdict quant_weak_bisim(const Mlts& P, const Mlts& Q);

/// Weak eps-bisimulation: greatest fixpoint over state pairs, seeded with
/// all pairs, deleting pairs whose class-aggregated weights violate the
/// two-sided eps-division conditions.
Verdict weak_eps_bisim(const Mlts& P, const Mlts& Q, const Weight& eps);

enum class MinEpsilonKind { trace, bisim };

/// Tightest epsilon for which the approximate relation holds, scanning
/// candidates from best (top) to worst. Requires a totally ordered semiring.
std::optional<Weight> min_epsilon(const Mlts& P, const Mlts& Q, MinEpsilonKind kind,
                                  std::size_t depth_limit = kDefaultDepthLimit);

} // namespace semproc
