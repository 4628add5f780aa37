#include "semproc/mlts.hpp"

#include <deque>

namespace semproc {

namespace {
// Guard against runaway enumeration on highly branching or cyclic systems.
constexpr std::size_t kEnumerationCap = 200000;
} // namespace

std::set<Action> Mlts::observable_actions() const {
    std::set<Action> out = actions;
    out.erase(kTau);
    return out;
}

Mlts build_mlts(const TermPtr& term, const ProcessEnv& env, const SemiringPtr& ring,
                std::size_t state_limit) {
    Mlts m;
    m.ring = ring;

    std::map<std::string, StateId> index;
    std::vector<TermPtr> pending_terms;

    auto intern = [&](const TermPtr& t) -> StateId {
        std::string key = print_term(*t);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (m.state_names.size() >= state_limit) throw StateLimitError(state_limit);
        StateId id = m.state_names.size();
        index.emplace(std::move(key), id);
        m.state_names.push_back(print_term(*t));
        m.out.emplace_back();
        pending_terms.push_back(t);
        return id;
    };

    TermPtr root = canonical(term);
    m.initial = intern(root);

    for (StateId s = 0; s < pending_terms.size(); ++s) {
        TermPtr t = pending_terms[s];
        for (const auto& mv : term_moves(t, env)) {
            StateId target = intern(canonical(mv.target));
            auto& row = m.out[s][mv.action];
            auto it = row.find(target);
            if (it == row.end())
                row.emplace(target, mv.weight);
            else
                it->second = combine_plus(it->second, mv.weight);
            m.actions.insert(mv.action);
        }
    }
    return m;
}

std::vector<StateId> derivatives(const Mlts& m) {
    std::vector<StateId> out(m.num_states());
    for (StateId s = 0; s < out.size(); ++s) out[s] = s;
    return out;
}

bool TraceLess::operator()(const Trace& a, const Trace& b) const {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first;
        int c = compare_weights(a[i].second, b[i].second);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

TraceSetResult maximal_traces(const Mlts& m, std::size_t depth_limit) {
    TraceSetResult result;
    Trace current;
    std::size_t visited = 0;

    auto dfs = [&](auto&& self, StateId s, std::size_t depth) -> void {
        if (++visited > kEnumerationCap) {
            result.truncated = true;
            return;
        }
        if (m.terminal(s)) {
            result.traces.insert(current);
            return;
        }
        if (depth >= depth_limit) {
            result.truncated = true;
            return;
        }
        for (const auto& [a, row] : m.out[s]) {
            for (const auto& [target, w] : row) {
                current.emplace_back(a, w);
                self(self, target, depth + 1);
                current.pop_back();
            }
        }
    };
    dfs(dfs, m.initial, 0);
    return result;
}

std::vector<Action> trace_label(const Trace& t) {
    std::vector<Action> out;
    out.reserve(t.size());
    for (const auto& [a, _] : t) out.push_back(a);
    return out;
}

Weight weak_run_weight(const SemiringPtr& ring, const Trace& t) {
    Weight acc = ring->top();
    for (const auto& [_, w] : t) acc = combine_times(acc, w);
    return acc;
}

Weight strong_run_weight(const SemiringPtr& ring, const Trace& t) {
    Weight acc = ring->top();
    for (const auto& [a, w] : t)
        if (!is_tau(a)) acc = combine_times(acc, w);
    return acc;
}

namespace {

// Value iteration for the best-value-to-termination vector: terminal states
// are pinned at top, non-terminal states sum w x value(target) over their
// transitions. Monotone from bottom, so it stabilises on finite systems.
Weight eval_fixpoint(const Mlts& m, bool strip_tau) {
    const std::size_t n = m.num_states();
    std::vector<Weight> value(n, m.ring->bottom());
    std::size_t transition_count = 0;
    for (const auto& row : m.out)
        for (const auto& [_, targets] : row) transition_count += targets.size();
    const std::size_t bound = n * transition_count + 2;

    for (std::size_t round = 0; round < bound; ++round) {
        bool changed = false;
        for (StateId s = 0; s < n; ++s) {
            Weight next = m.terminal(s) ? m.ring->top() : m.ring->bottom();
            for (const auto& [a, targets] : m.out[s]) {
                const bool erase = strip_tau && is_tau(a);
                for (const auto& [target, w] : targets) {
                    Weight step = erase ? value[target] : combine_times(w, value[target]);
                    next = combine_plus(next, step);
                }
            }
            if (next != value[s]) {
                value[s] = std::move(next);
                changed = true;
            }
        }
        if (!changed) return value[m.initial];
    }
    throw NonConvergentError("evaluation fixpoint did not stabilise");
}

} // namespace

Weight weak_eval(const Mlts& m) { return eval_fixpoint(m, false); }
Weight strong_eval(const Mlts& m) { return eval_fixpoint(m, true); }

WeakTraceSetResult weak_trace_set(const Mlts& m, std::size_t depth_limit) {
    WeakTraceSetResult result;
    result.sequences.insert(std::vector<Action>{});

    // Breadth-first over (state, observable prefix) pairs; every path prefix
    // is a legal endpoint, so sequences are recorded as they are reached.
    std::set<std::pair<StateId, std::vector<Action>>> seen;
    std::deque<std::pair<StateId, std::vector<Action>>> frontier;
    frontier.push_back({m.initial, {}});
    seen.insert(frontier.front());

    while (!frontier.empty()) {
        auto [s, prefix] = std::move(frontier.front());
        frontier.pop_front();
        if (prefix.size() >= depth_limit) {
            if (!m.terminal(s)) result.truncated = true;
            continue;
        }
        for (const auto& [a, row] : m.out[s]) {
            std::vector<Action> next = prefix;
            if (!is_tau(a)) next.push_back(a);
            for (const auto& [target, _] : row) {
                auto key = std::make_pair(target, next);
                if (!seen.insert(key).second) continue;
                if (seen.size() > kEnumerationCap) {
                    result.truncated = true;
                    return result;
                }
                result.sequences.insert(next);
                frontier.push_back(std::move(key));
            }
        }
    }
    return result;
}

} // namespace semproc
