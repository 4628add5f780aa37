#pragma once

#include <optional>
#include <vector>

#include "semproc/equiv.hpp"
#include "semproc/process.hpp"

namespace semproc {

enum class AlphaKind { identity, hide_h };

/// One composition check: P is secure when (P |[H]| E) \ H stays related to
/// alpha(P) for every environment E in the family.
struct GndcSpec {
    ActionSet H;
    AlphaKind alpha = AlphaKind::hide_h;
    RelationKind relation = RelationKind::wtrace;
    std::optional<Weight> epsilon; // present iff relation is an eps-relation

    // Either an explicit family, or generator parameters.
    std::vector<TermPtr> environments;
    bool use_generator = false;
    std::size_t depth = 0;
    std::vector<Weight> palette;

    std::size_t env_cap = 5000;
    std::size_t state_limit = kDefaultStateLimit;
    std::size_t depth_limit = kDefaultDepthLimit;
};

/// All processes over 0, prefixes (h, w) with h in H and w in the palette,
/// and binary choice, of syntactic depth <= depth. Choice commutativity and
/// idempotence are quotiented away, so the family has no structural
/// duplicates. Throws ExplosionGuardError past `cap`.
std::vector<TermPtr> generate_environments(const ActionSet& H, const std::vector<Weight>& palette,
                                           std::size_t depth, std::size_t cap = 5000);

struct GndcResult {
    bool holds = false;
    std::size_t environments_checked = 0;
    std::optional<TermPtr> witness;  // first failing environment
    std::optional<Verdict> inner;    // its relation verdict
    std::string note;                // scope statement for the report
};

/// Checks the schema against the spec's (finite) family. The result is
/// explicitly relative to that family, never a proof over all environments.
GndcResult check_qgndc(const TermPtr& P, const ProcessEnv& env, const SemiringPtr& ring,
                       const GndcSpec& spec);

/// The expected-behaviour transform: identity, or hiding of H.
TermPtr alpha_apply(const GndcSpec& spec, const TermPtr& P);

} // namespace semproc
