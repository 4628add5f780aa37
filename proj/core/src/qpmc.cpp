#include "semproc/qpmc.hpp"

#include <map>
#include <vector>

namespace semproc {

PmcContext make_pmc_context(const TermPtr& component, const ProcessEnv& env,
                            const SemiringPtr& ring, ActionSet sync_set,
                            std::size_t state_limit) {
    if (sync_set.count(kTau)) throw ToolkitError("tau may not be synchronised");
    return {build_mlts(component, env, ring, state_limit), std::move(sync_set)};
}

namespace {

using Memo = std::map<std::pair<const Formula*, StateId>, FormulaPtr>;

FormulaPtr transform(const Formula* phi, const PmcContext& ctx, StateId s, Memo& memo) {
    auto key = std::make_pair(phi, s);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;

    const Mlts& m = ctx.component;
    const SemiringPtr& ring = m.ring;
    FormulaPtr out;

    switch (phi->kind) {
    case Formula::Kind::constant:
        if (!phi->value->ring()->same_as(*ring)) throw MixedSemiringsError();
        out = Formula::constant(*phi->value);
        break;
    case Formula::Kind::plus:
        out = Formula::plus(transform(phi->lhs.get(), ctx, s, memo),
                            transform(phi->rhs.get(), ctx, s, memo));
        break;
    case Formula::Kind::times:
        out = Formula::times(transform(phi->lhs.get(), ctx, s, memo),
                             transform(phi->rhs.get(), ctx, s, memo));
        break;
    case Formula::Kind::glb:
        out = Formula::glb_of(transform(phi->lhs.get(), ctx, s, memo),
                              transform(phi->rhs.get(), ctx, s, memo));
        break;
    case Formula::Kind::neg:
        out = Formula::neg(transform(phi->sub.get(), ctx, s, memo));
        break;
    case Formula::Kind::diamond:
    case Formula::Kind::box: {
        const bool is_box = phi->kind == Formula::Kind::box;
        const Action& a = phi->action;
        const bool synced = ctx.sync_set.count(a) != 0;

        std::vector<std::pair<Weight, StateId>> moves;
        auto row = m.out[s].find(a);
        if (row != m.out[s].end())
            for (const auto& [target, w] : row->second) moves.emplace_back(w, target);

        if (synced) {
            // Every a-step must be joint: each component move contributes one
            // residual modality; no move means the empty fold. The component
            // weight sits inside the box so that an other-side deadlock still
            // yields the empty-fold top rather than a dangling factor (bottom
            // already annihilates the diamond's sum, so it can keep the
            // factor outside).
            FormulaPtr acc;
            for (const auto& [w, target] : moves) {
                FormulaPtr inner = transform(phi->sub.get(), ctx, target, memo);
                FormulaPtr piece =
                    is_box ? Formula::box(a, Formula::times(Formula::constant(w),
                                                            std::move(inner)))
                           : Formula::times(Formula::constant(w),
                                            Formula::diamond(a, std::move(inner)));
                if (!acc)
                    acc = std::move(piece);
                else
                    acc = is_box ? Formula::glb_of(std::move(acc), std::move(piece))
                                 : Formula::plus(std::move(acc), std::move(piece));
            }
            if (!acc) acc = Formula::constant(is_box ? ring->top() : ring->bottom());
            out = std::move(acc);
        } else {
            // Interleaving: either the other side moves (the residual
            // modality) or the component does (one branch per move).
            FormulaPtr acc = is_box ? Formula::box(a, transform(phi->sub.get(), ctx, s, memo))
                                    : Formula::diamond(a, transform(phi->sub.get(), ctx, s, memo));
            for (const auto& [w, target] : moves) {
                FormulaPtr piece = Formula::times(Formula::constant(w),
                                                  transform(phi->sub.get(), ctx, target, memo));
                acc = is_box ? Formula::glb_of(std::move(acc), std::move(piece))
                             : Formula::plus(std::move(acc), std::move(piece));
            }
            out = std::move(acc);
        }
        break;
    }
    }
    memo.emplace(key, out);
    return out;
}

} // namespace

FormulaPtr pmc_transform(const FormulaPtr& phi, const PmcContext& ctx) {
    Memo memo;
    return transform(phi.get(), ctx, ctx.component.initial, memo);
}

namespace {

bool is_const(const FormulaPtr& f) { return f->kind == Formula::Kind::constant; }

FormulaPtr simplify_node(const FormulaPtr& f) {
    switch (f->kind) {
    case Formula::Kind::constant: return f;
    case Formula::Kind::neg: {
        auto sub = simplify_node(f->sub);
        if (is_const(sub)) return Formula::constant(negate(*sub->value));
        return sub == f->sub ? f : Formula::neg(std::move(sub));
    }
    case Formula::Kind::diamond:
    case Formula::Kind::box: {
        auto sub = simplify_node(f->sub);
        if (sub == f->sub) return f;
        return f->kind == Formula::Kind::diamond ? Formula::diamond(f->action, std::move(sub))
                                                 : Formula::box(f->action, std::move(sub));
    }
    case Formula::Kind::plus: {
        auto a = simplify_node(f->lhs);
        auto b = simplify_node(f->rhs);
        if (is_const(a) && is_const(b)) return Formula::constant(combine_plus(*a->value, *b->value));
        if (is_const(a)) {
            if (a->value->is_bottom()) return b;
            if (a->value->is_top()) return a;
        }
        if (is_const(b)) {
            if (b->value->is_bottom()) return a;
            if (b->value->is_top()) return b;
        }
        if (a == f->lhs && b == f->rhs) return f;
        return Formula::plus(std::move(a), std::move(b));
    }
    case Formula::Kind::times: {
        auto a = simplify_node(f->lhs);
        auto b = simplify_node(f->rhs);
        if (is_const(a) && is_const(b)) return Formula::constant(combine_times(*a->value, *b->value));
        if (is_const(a)) {
            if (a->value->is_top()) return b;
            if (a->value->is_bottom()) return a;
        }
        if (is_const(b)) {
            if (b->value->is_top()) return a;
            if (b->value->is_bottom()) return b;
        }
        if (a == f->lhs && b == f->rhs) return f;
        return Formula::times(std::move(a), std::move(b));
    }
    case Formula::Kind::glb: {
        auto a = simplify_node(f->lhs);
        auto b = simplify_node(f->rhs);
        if (is_const(a) && is_const(b)) return Formula::constant(glb(*a->value, *b->value));
        if (is_const(a)) {
            if (a->value->is_top()) return b;
            if (a->value->is_bottom()) return a;
        }
        if (is_const(b)) {
            if (b->value->is_top()) return a;
            if (b->value->is_bottom()) return b;
        }
        if (a == f->lhs && b == f->rhs) return f;
        return Formula::glb_of(std::move(a), std::move(b));
    }
    }
    return f;
}

} // namespace

FormulaPtr simplify(const FormulaPtr& phi) { return simplify_node(phi); }

TheoremCheck verify_theorem(const FormulaPtr& phi, const TermPtr& P, const TermPtr& Q,
                            const ActionSet& L, const ProcessEnv& env, const SemiringPtr& ring,
                            std::size_t state_limit) {
    TermPtr composed = Term::parallel(L, P, Q);
    Mlts composed_m = build_mlts(composed, env, ring, state_limit);
    Weight lhs = evaluate(phi, composed_m, composed_m.initial);

    PmcContext ctx = make_pmc_context(P, env, ring, L, state_limit);
    FormulaPtr residual = pmc_transform(phi, ctx);
    Mlts q_m = build_mlts(Q, env, ring, state_limit);
    Weight rhs = evaluate(residual, q_m, q_m.initial);

    return {lhs, rhs, lhs == rhs};
}

} // namespace semproc
