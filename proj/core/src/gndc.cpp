#include "semproc/gndc.hpp"

#include <algorithm>
#include <map>

namespace semproc {

std::vector<TermPtr> generate_environments(const ActionSet& H, const std::vector<Weight>& palette,
                                           std::size_t depth, std::size_t cap) {
    if (H.count(kTau)) throw ToolkitError("tau may not be an environmental action");
    if (palette.empty()) throw ToolkitError("environment palette must not be empty");

    // Levels of canonical terms keyed by their printed form.
    std::map<std::string, TermPtr> current;
    current.emplace("0", Term::nil());

    for (std::size_t d = 0; d < depth; ++d) {
        std::map<std::string, TermPtr> next = current;
        auto add = [&](TermPtr t) {
            TermPtr c = canonical(t);
            std::string key = print_term(*c);
            if (next.emplace(std::move(key), std::move(c)).second && next.size() > cap)
                throw ExplosionGuardError(cap);
        };
        for (const auto& [_, t] : current)
            for (const auto& h : H)
                for (const auto& w : palette) add(Term::prefix(h, w, t));
        std::vector<TermPtr> level(current.size());
        std::size_t i = 0;
        for (const auto& [_, t] : current) level[i++] = t;
        for (std::size_t a = 0; a < level.size(); ++a)
            for (std::size_t b = a + 1; b < level.size(); ++b)
                add(Term::choice({level[a], level[b]}));
        current = std::move(next);
    }

    std::vector<TermPtr> out;
    out.reserve(current.size());
    for (const auto& [_, t] : current) out.push_back(t);
    return out;
}

TermPtr alpha_apply(const GndcSpec& spec, const TermPtr& P) {
    switch (spec.alpha) {
    case AlphaKind::identity: return P;
    case AlphaKind::hide_h: return Term::hide(spec.H, P);
    }
    throw UnknownAlphaError("?");
}

namespace {

Verdict run_relation(const Mlts& lhs, const Mlts& rhs, const GndcSpec& spec) {
    switch (spec.relation) {
    case RelationKind::wtrace: return weak_trace_equiv(lhs, rhs, spec.depth_limit);
    case RelationKind::eps_trace:
        return eps_trace_equiv(lhs, rhs, *spec.epsilon, spec.depth_limit);
    case RelationKind::qweak_bisim: return quant_weak_bisim(lhs, rhs);
    case RelationKind::weak_eps_bisim: return weak_eps_bisim(lhs, rhs, *spec.epsilon);
    }
    throw ToolkitError("bad relation kind");
}

} // namespace

GndcResult check_qgndc(const TermPtr& P, const ProcessEnv& env, const SemiringPtr& ring,
                       const GndcSpec& spec) {
    if ((spec.relation == RelationKind::eps_trace ||
         spec.relation == RelationKind::weak_eps_bisim) != spec.epsilon.has_value())
        throw ToolkitError("epsilon must be given exactly for the eps-relations");

    std::vector<TermPtr> family = spec.environments;
    if (spec.use_generator) {
        auto generated = generate_environments(spec.H, spec.palette, spec.depth, spec.env_cap);
        family.insert(family.end(), generated.begin(), generated.end());
    }

    GndcResult result;
    result.note = "verdict is relative to the checked family of " +
                  std::to_string(family.size()) + " environment(s), not a proof over all of them";

    Mlts expected = build_mlts(alpha_apply(spec, P), env, ring, spec.state_limit);

    result.holds = true;
    for (const auto& E : family) {
        TermPtr composed = Term::hide(spec.H, Term::parallel(spec.H, P, E));
        Mlts lhs = build_mlts(composed, env, ring, spec.state_limit);
        Verdict v = run_relation(lhs, expected, spec);
        ++result.environments_checked;
        if (!v.holds) {
            result.holds = false;
            result.witness = E;
            result.inner = std::move(v);
            break;
        }
    }
    return result;
}

} // namespace semproc
