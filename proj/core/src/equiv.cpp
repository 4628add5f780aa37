#include "semproc/equiv.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

namespace semproc {

std::string relation_name(RelationKind k) {
    switch (k) {
    case RelationKind::wtrace: return "wtrace";
    case RelationKind::eps_trace: return "eps-trace";
    case RelationKind::qweak_bisim: return "bisim";
    case RelationKind::weak_eps_bisim: return "eps-bisim";
    }
    return "?";
}

WeakWeightMatrix weak_weight_matrix(const Mlts& m) {
    const std::size_t n = m.num_states();
    WeightMatrix mtau(m.ring, n);
    std::map<Action, WeightMatrix> one_step;
    for (StateId s = 0; s < n; ++s) {
        for (const auto& [a, row] : m.out[s]) {
            if (is_tau(a)) {
                for (const auto& [t, w] : row) mtau.at(s, t) = combine_plus(mtau.at(s, t), w);
            } else {
                auto it = one_step.try_emplace(a, WeightMatrix(m.ring, n)).first;
                for (const auto& [t, w] : row)
                    it->second.at(s, t) = combine_plus(it->second.at(s, t), w);
            }
        }
    }
    WeakWeightMatrix out{m.ring, matrix_closure(mtau), {}};
    for (auto& [a, ma] : one_step)
        out.per_action.emplace(a, matrix_multiply(matrix_multiply(out.tstar, ma), out.tstar));
    return out;
}

namespace {

void require_same_ring(const Mlts& P, const Mlts& Q) {
    if (!P.ring->same_as(*Q.ring)) throw MixedSemiringsError();
}

std::string sequence_to_string(const std::vector<Action>& seq) {
    if (seq.empty()) return "<empty>";
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ".";
        out += seq[i];
    }
    return out;
}

// First label sequence in one set but not the other.
std::string first_difference(const std::set<std::vector<Action>>& a,
                             const std::set<std::vector<Action>>& b) {
    for (const auto& seq : a)
        if (!b.count(seq)) return sequence_to_string(seq);
    for (const auto& seq : b)
        if (!a.count(seq)) return sequence_to_string(seq);
    return "";
}

struct TraceConditions {
    bool trace_sets_equal = true;
    std::string difference;
    Weight strong_p, strong_q, weak_p, weak_q;
};

TraceConditions trace_conditions(const Mlts& P, const Mlts& Q, std::size_t depth_limit) {
    auto tp = weak_trace_set(P, depth_limit);
    auto tq = weak_trace_set(Q, depth_limit);
    if (tp.truncated || tq.truncated) throw TruncatedComparisonError();
    TraceConditions c;
    c.trace_sets_equal = tp.sequences == tq.sequences;
    if (!c.trace_sets_equal) c.difference = first_difference(tp.sequences, tq.sequences);
    c.strong_p = strong_eval(P);
    c.strong_q = strong_eval(Q);
    c.weak_p = weak_eval(P);
    c.weak_q = weak_eval(Q);
    return c;
}

// Two-sided residuated tolerance: a / eps >= b and b / eps >= a.
bool within_eps(const Weight& a, const Weight& b, const Weight& eps) {
    return leq(b, divide(a, eps)) && leq(a, divide(b, eps));
}

// Combined two-system view: Q's states are shifted past P's.
struct UnionView {
    SemiringPtr ring;
    std::size_t np, nq;
    std::set<Action> observables;
    WeightMatrix tstar;
    std::map<Action, WeightMatrix> weak;

    std::size_t size() const { return np + nq; }
};

UnionView make_union(const Mlts& P, const Mlts& Q) {
    require_same_ring(P, Q);
    auto wp = weak_weight_matrix(P);
    auto wq = weak_weight_matrix(Q);
    UnionView u{P.ring, P.num_states(), Q.num_states(), {}, WeightMatrix(P.ring, 0), {}};
    auto obs_p = P.observable_actions();
    auto obs_q = Q.observable_actions();
    u.observables.insert(obs_p.begin(), obs_p.end());
    u.observables.insert(obs_q.begin(), obs_q.end());

    const std::size_t n = u.size();
    auto embed = [&](const WeightMatrix* mp, const WeightMatrix* mq) {
        WeightMatrix out(P.ring, n);
        if (mp)
            for (std::size_t i = 0; i < u.np; ++i)
                for (std::size_t j = 0; j < u.np; ++j) out.at(i, j) = mp->at(i, j);
        if (mq)
            for (std::size_t i = 0; i < u.nq; ++i)
                for (std::size_t j = 0; j < u.nq; ++j) out.at(u.np + i, u.np + j) = mq->at(i, j);
        return out;
    };
    u.tstar = embed(&wp.tstar, &wq.tstar);
    for (const auto& a : u.observables) {
        auto ip = wp.per_action.find(a);
        auto iq = wq.per_action.find(a);
        u.weak.emplace(a, embed(ip == wp.per_action.end() ? nullptr : &ip->second,
                                iq == wq.per_action.end() ? nullptr : &iq->second));
    }
    return u;
}

// Class-aggregated weight of weak a-moves (or tau-closure moves when
// `matrix` is tstar) from `s` into the block.
Weight block_sum(const UnionView& u, const WeightMatrix& matrix, std::size_t s,
                 const std::vector<std::size_t>& block) {
    Weight acc = u.ring->bottom();
    for (std::size_t d : block) acc = combine_plus(acc, matrix.at(s, d));
    return acc;
}

using Partition = std::vector<std::size_t>; // state -> block id

std::vector<std::vector<std::size_t>> blocks_of(const Partition& part) {
    std::size_t nblocks = 0;
    for (std::size_t b : part) nblocks = std::max(nblocks, b + 1);
    std::vector<std::vector<std::size_t>> blocks(nblocks);
    for (std::size_t s = 0; s < part.size(); ++s) blocks[part[s]].push_back(s);
    return blocks;
}

} // namespace

Verdict weak_trace_equiv(const Mlts& P, const Mlts& Q, std::size_t depth_limit) {
    require_same_ring(P, Q);
    Verdict v;
    v.relation = RelationKind::wtrace;
    auto c = trace_conditions(P, Q, depth_limit);
    v.details["strong_eval_p"] = c.strong_p.str();
    v.details["strong_eval_q"] = c.strong_q.str();
    v.details["weak_eval_p"] = c.weak_p.str();
    v.details["weak_eval_q"] = c.weak_q.str();
    if (!c.trace_sets_equal) {
        v.details["failing_condition"] = "1: trace sets differ";
        v.details["distinguishing_sequence"] = c.difference;
        return v;
    }
    if (!incomparable_or_equal(c.strong_p, c.strong_q)) {
        v.details["failing_condition"] = "2: strong evaluation-values comparable and unequal";
        return v;
    }
    if (!incomparable_or_equal(c.weak_p, c.weak_q)) {
        v.details["failing_condition"] = "3: weak evaluation-values comparable and unequal";
        return v;
    }
    v.holds = true;
    return v;
}

Verdict eps_trace_equiv(const Mlts& P, const Mlts& Q, const Weight& eps,
                        std::size_t depth_limit) {
    require_same_ring(P, Q);
    if (!eps.ring()->same_as(*P.ring)) throw MixedSemiringsError();
    Verdict v;
    v.relation = RelationKind::eps_trace;
    v.epsilon = eps;
    auto c = trace_conditions(P, Q, depth_limit);
    v.details["strong_eval_p"] = c.strong_p.str();
    v.details["strong_eval_q"] = c.strong_q.str();
    v.details["weak_eval_p"] = c.weak_p.str();
    v.details["weak_eval_q"] = c.weak_q.str();
    if (!c.trace_sets_equal) {
        v.details["failing_condition"] = "1: trace sets differ";
        v.details["distinguishing_sequence"] = c.difference;
        return v;
    }
    if (!incomparable_or_equal(c.strong_p, c.strong_q)) {
        v.details["failing_condition"] = "2: strong evaluation-values comparable and unequal";
        return v;
    }
    if (!within_eps(c.weak_p, c.weak_q, eps)) {
        v.details["failing_condition"] = "3: weak evaluation-values differ beyond eps";
        return v;
    }
    v.holds = true;
    return v;
}

Verdict quant_weak_bisim(const Mlts& P, const Mlts& Q) {
    UnionView u = make_union(P, Q);
    const std::size_t n = u.size();
    Partition part(n, 0);

    // Signature refinement. Within a block, states whose class-aggregated
    // weights are pairwise equal-or-incomparable stay together; groups are
    // formed greedily in state order, which is exact for total orders.
    bool changed = true;
    while (changed) {
        changed = false;
        auto blocks = blocks_of(part);
        auto signature_compatible = [&](std::size_t s, std::size_t t) {
            for (const auto& block : blocks) {
                if (block.empty()) continue;
                for (const auto& [a, w] : u.weak) {
                    (void)a;
                    if (!incomparable_or_equal(block_sum(u, w, s, block),
                                               block_sum(u, w, t, block)))
                        return false;
                }
                if (!incomparable_or_equal(block_sum(u, u.tstar, s, block),
                                           block_sum(u, u.tstar, t, block)))
                    return false;
            }
            return true;
        };

        Partition next(n, 0);
        std::size_t next_block = 0;
        for (const auto& block : blocks) {
            if (block.empty()) continue;
            std::vector<std::vector<std::size_t>> groups;
            for (std::size_t s : block) {
                bool placed = false;
                for (auto& g : groups) {
                    bool ok = true;
                    for (std::size_t t : g)
                        if (!signature_compatible(s, t)) {
                            ok = false;
                            break;
                        }
                    if (ok) {
                        g.push_back(s);
                        placed = true;
                        break;
                    }
                }
                if (!placed) groups.push_back({s});
            }
            if (groups.size() > 1) changed = true;
            for (const auto& g : groups) {
                for (std::size_t s : g) next[s] = next_block;
                ++next_block;
            }
        }
        part = std::move(next);
    }

    Verdict v;
    v.relation = RelationKind::qweak_bisim;
    const std::size_t ip = P.initial;
    const std::size_t iq = u.np + Q.initial;
    v.holds = part[ip] == part[iq];
    if (!v.holds) {
        v.details["distinguishing_pair"] =
            P.state_names[P.initial] + "  vs  " + Q.state_names[Q.initial];
        // Report one separating aggregate.
        auto blocks = blocks_of(part);
        for (const auto& block : blocks) {
            for (const auto& [a, w] : u.weak) {
                Weight x = block_sum(u, w, ip, block);
                Weight y = block_sum(u, w, iq, block);
                if (!incomparable_or_equal(x, y)) {
                    v.details["failing_condition"] =
                        "weak '" + a + "'-aggregates " + x.str() + " vs " + y.str();
                    return v;
                }
            }
            Weight x = block_sum(u, u.tstar, ip, block);
            Weight y = block_sum(u, u.tstar, iq, block);
            if (!incomparable_or_equal(x, y)) {
                v.details["failing_condition"] =
                    "tau-closure aggregates " + x.str() + " vs " + y.str();
                return v;
            }
        }
        v.details["failing_condition"] = "initial states separated during refinement";
    }
    return v;
}

namespace {

// Union-find used for the grouping induced by a (symmetric) pair relation.
struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

Verdict weak_eps_bisim(const Mlts& P, const Mlts& Q, const Weight& eps) {
    UnionView u = make_union(P, Q);
    if (!eps.ring()->same_as(*u.ring)) throw MixedSemiringsError();
    const std::size_t n = u.size();

    std::vector<std::vector<bool>> related(n, std::vector<bool>(n, true));

    bool changed = true;
    while (changed) {
        changed = false;
        // Blocks of the current relation: connected components.
        UnionFind uf(n);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = s + 1; t < n; ++t)
                if (related[s][t]) uf.unite(s, t);
        Partition part(n);
        std::map<std::size_t, std::size_t> renumber;
        for (std::size_t s = 0; s < n; ++s) {
            std::size_t root = uf.find(s);
            auto [it, _] = renumber.try_emplace(root, renumber.size());
            part[s] = it->second;
        }
        auto blocks = blocks_of(part);

        auto pair_ok = [&](std::size_t s, std::size_t t) {
            for (const auto& block : blocks) {
                for (const auto& [a, w] : u.weak) {
                    (void)a;
                    if (!within_eps(block_sum(u, w, s, block), block_sum(u, w, t, block), eps))
                        return false;
                }
                if (!within_eps(block_sum(u, u.tstar, s, block),
                                block_sum(u, u.tstar, t, block), eps))
                    return false;
            }
            return true;
        };

        // Simultaneous deletion round.
        std::vector<std::pair<std::size_t, std::size_t>> doomed;
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = s + 1; t < n; ++t)
                if (related[s][t] && !pair_ok(s, t)) doomed.emplace_back(s, t);
        for (auto [s, t] : doomed) {
            related[s][t] = related[t][s] = false;
            changed = true;
        }
    }

    Verdict v;
    v.relation = RelationKind::weak_eps_bisim;
    v.epsilon = eps;
    const std::size_t ip = P.initial;
    const std::size_t iq = u.np + Q.initial;
    v.holds = related[ip][iq];
    if (!v.holds)
        v.details["distinguishing_pair"] =
            P.state_names[P.initial] + "  vs  " + Q.state_names[Q.initial];
    return v;
}

namespace {

void add_candidate(std::vector<Weight>& out, const Weight& w) {
    for (const auto& existing : out)
        if (existing == w) return;
    out.push_back(w);
}

} // namespace

std::optional<Weight> min_epsilon(const Mlts& P, const Mlts& Q, MinEpsilonKind kind,
                                  std::size_t depth_limit) {
    require_same_ring(P, Q);
    if (!P.ring->totally_ordered()) throw UnsupportedPartialOrderError();
    const auto& ring = P.ring;

    // The verdict can only flip at divisions of compared aggregates, so the
    // candidate set is the pairwise divides of every relevant value, plus the
    // values themselves and top.
    std::vector<Weight> values;
    add_candidate(values, ring->top());
    add_candidate(values, ring->bottom());
    if (kind == MinEpsilonKind::trace) {
        add_candidate(values, weak_eval(P));
        add_candidate(values, weak_eval(Q));
        add_candidate(values, strong_eval(P));
        add_candidate(values, strong_eval(Q));
    } else {
        UnionView u = make_union(P, Q);
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < u.size(); ++j) {
                add_candidate(values, u.tstar.at(i, j));
                for (const auto& [_, w] : u.weak) add_candidate(values, w.at(i, j));
            }
    }
    std::vector<Weight> candidates = values;
    for (const auto& a : values)
        for (const auto& b : values) add_candidate(candidates, divide(a, b));

    // Best (closest to top) first: descending in the semiring order.
    std::sort(candidates.begin(), candidates.end(),
              [](const Weight& a, const Weight& b) { return leq(b, a) && !(a == b); });

    for (const auto& eps : candidates) {
        Verdict v = kind == MinEpsilonKind::trace ? eps_trace_equiv(P, Q, eps, depth_limit)
                                                  : weak_eps_bisim(P, Q, eps);
        if (v.holds) return eps;
    }
    return std::nullopt;
}

} // namespace semproc
