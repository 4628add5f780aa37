#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semproc/process.hpp"
#include "semproc/semiring.hpp"

namespace semproc {

using StateId = std::size_t;

/// Finite multi-labelled transition system. Transition weights are already
/// aggregated: at most one weight per (source, action, target), never bottom.
/// Every state is reachable from the initial state.
struct Mlts {
    SemiringPtr ring;
    StateId initial = 0;
    std::vector<std::string> state_names; // canonical term of each state
    std::set<Action> actions;
    std::vector<std::map<Action, std::map<StateId, Weight>>> out;

    std::size_t num_states() const { return out.size(); }
    bool terminal(StateId s) const { return out[s].empty(); }
    std::set<Action> observable_actions() const;
};

inline constexpr std::size_t kDefaultStateLimit = 100000;
inline constexpr std::size_t kDefaultDepthLimit = 10000;

/// Exhaustive exploration of the term's derivatives under the operational
/// rules. States are canonical term forms so structural revisits merge.
Mlts build_mlts(const TermPtr& term, const ProcessEnv& env, const SemiringPtr& ring,
                std::size_t state_limit = kDefaultStateLimit);

/// All reachable states (the derivative set).
std::vector<StateId> derivatives(const Mlts& m);

using Trace = std::vector<std::pair<Action, Weight>>;

struct TraceLess {
    bool operator()(const Trace& a, const Trace& b) const;
};

struct TraceSetResult {
    std::set<Trace, TraceLess> traces;
    bool truncated = false;
};

/// Traces from the initial state to a deadlocked state. `truncated` is set
/// when some path ran past depth_limit (or the enumeration cap) before
/// reaching one.
TraceSetResult maximal_traces(const Mlts& m, std::size_t depth_limit = kDefaultDepthLimit);

std::vector<Action> trace_label(const Trace& t);

/// x-product of every weight in the trace; the empty product is top.
Weight weak_run_weight(const SemiringPtr& ring, const Trace& t);

/// x-product of the non-tau weights; the empty product is top.
Weight strong_run_weight(const SemiringPtr& ring, const Trace& t);

/// Semiring sum of weak run-weights over the maximal traces, computed as an
/// algebraic fixpoint so cyclic systems are handled.
Weight weak_eval(const Mlts& m);

/// Same with tau weights replaced by top.
Weight strong_eval(const Mlts& m);

struct WeakTraceSetResult {
    std::set<std::vector<Action>> sequences;
    bool truncated = false;
};

/// The observable (tau-free) label sequences reachable from the initial
/// state, prefix-closed; includes the empty sequence.
WeakTraceSetResult weak_trace_set(const Mlts& m, std::size_t depth_limit = kDefaultDepthLimit);

} // namespace semproc
