#include <doctest.h>

#include "semproc/gndc.hpp"
#include "testutil.hpp"

using namespace semproc;
using testutil::Rng;

namespace {
const SemiringPtr trop = Semiring::tropical();
const ProcessEnv empty_env;

TermPtr term_of(const char* text) { return parse_process(text, trop, nullptr); }

std::set<std::string> printed(const std::vector<TermPtr>& ts) {
    std::set<std::string> out;
    for (const auto& t : ts) out.insert(print_term(*t));
    return out;
}
} // namespace

TEST_CASE("environment generation") {
    std::vector<Weight> palette{trop->top()};

    CHECK(printed(generate_environments({"h"}, palette, 0)) == std::set<std::string>{"0"});
    CHECK(printed(generate_environments({"h"}, palette, 1)) ==
          std::set<std::string>{"0", "(h,0).0"});

    auto depth2 = printed(generate_environments({"h"}, palette, 2));
    CHECK(depth2.count("(h,0).(h,0).0"));
    // Choice idempotence and commutativity are quotiented away.
    CHECK(depth2 == std::set<std::string>{"0", "(h,0).0", "(h,0).(h,0).0"});

    auto two_actions = generate_environments({"h", "k"}, palette, 2);
    CHECK(two_actions.size() > 3);
    for (const auto& e : two_actions) {
        ActionSet s = sort_actions(e, empty_env);
        for (const auto& a : s) CHECK((a == "h" || a == "k"));
    }

    CHECK_THROWS_AS(generate_environments({"h", "k"}, palette, 3, 10), ExplosionGuardError);
}

TEST_CASE("alpha transforms") {
    GndcSpec spec;
    spec.H = {"h"};
    spec.alpha = AlphaKind::identity;
    auto P = term_of("(h,1).(a,2).0");
    CHECK(alpha_apply(spec, P) == P);
    spec.alpha = AlphaKind::hide_h;
    auto hidden = alpha_apply(spec, P);
    REQUIRE(hidden->kind == Term::Kind::hide);
    CHECK(hidden->set == ActionSet{"h"});
    CHECK(print_term(*alpha_apply(spec, Term::nil())) == "0 \\ {h}");
}

TEST_CASE("a process without environmental actions passes") {
    GndcSpec spec;
    spec.H = {"h"};
    spec.alpha = AlphaKind::hide_h;
    spec.relation = RelationKind::wtrace;
    spec.use_generator = true;
    spec.depth = 2;
    spec.palette = {trop->top()};

    auto result = check_qgndc(term_of("(a,1).0"), empty_env, trop, spec);
    CHECK(result.holds);
    CHECK(result.environments_checked == 3);
    CHECK_FALSE(result.witness.has_value());
    CHECK(result.note.find("relative to the checked family") != std::string::npos);
}

TEST_CASE("a process waiting on the environment fails against the empty one") {
    GndcSpec spec;
    spec.H = {"h"};
    spec.alpha = AlphaKind::hide_h;
    spec.relation = RelationKind::wtrace;
    spec.environments = {Term::nil()};

    auto result = check_qgndc(term_of("(h,1).(a,2).0"), empty_env, trop, spec);
    CHECK_FALSE(result.holds);
    REQUIRE(result.witness.has_value());
    CHECK(print_term(**result.witness) == "0");
    REQUIRE(result.inner.has_value());
    CHECK_FALSE(result.inner->holds);
}

TEST_CASE("empty family holds vacuously") {
    GndcSpec spec;
    spec.H = {"h"};
    auto result = check_qgndc(term_of("(h,1).0"), empty_env, trop, spec);
    CHECK(result.holds);
    CHECK(result.environments_checked == 0);
}

TEST_CASE("witnesses reproduce independently") {
    Rng rng(139);
    std::vector<Action> actions{"a", "b", "h"};
    for (int i = 0; i < 60; ++i) {
        GndcSpec spec;
        spec.H = {"h"};
        spec.alpha = AlphaKind::hide_h;
        spec.relation = RelationKind::wtrace;
        spec.use_generator = true;
        spec.depth = 2;
        spec.palette = {trop->top(), trop->parse_weight("1")};

        auto P = testutil::random_acyclic_term(rng, trop, actions, 3);
        auto result = check_qgndc(P, empty_env, trop, spec);
        if (result.holds) continue;
        REQUIRE(result.witness.has_value());
        Mlts lhs = build_mlts(Term::hide(spec.H, Term::parallel(spec.H, P, *result.witness)),
                              empty_env, trop);
        Mlts rhs = build_mlts(alpha_apply(spec, P), empty_env, trop);
        CHECK_FALSE(weak_trace_equiv(lhs, rhs).holds);
    }
}

TEST_CASE("failures are anti-monotone in the family") {
    Rng rng(149);
    std::vector<Action> actions{"a", "h"};
    std::vector<Weight> palette{trop->top()};
    auto small = generate_environments({"h"}, palette, 1);
    auto large = generate_environments({"h"}, palette, 2);
    for (int i = 0; i < 40; ++i) {
        auto P = testutil::random_acyclic_term(rng, trop, actions, 3);
        GndcSpec spec;
        spec.H = {"h"};
        spec.alpha = AlphaKind::hide_h;
        spec.relation = RelationKind::wtrace;
        spec.environments = small;
        bool small_holds = check_qgndc(P, empty_env, trop, spec).holds;
        spec.environments = large;
        bool large_holds = check_qgndc(P, empty_env, trop, spec).holds;
        if (large_holds) CHECK(small_holds);
        if (!small_holds) CHECK_FALSE(large_holds);
    }
}

TEST_CASE("passing families lift from wtrace to every eps-trace") {
    Rng rng(151);
    std::vector<Action> actions{"a", "h"};
    for (int i = 0; i < 40; ++i) {
        auto P = testutil::random_acyclic_term(rng, trop, actions, 2);
        GndcSpec spec;
        spec.H = {"h"};
        spec.alpha = AlphaKind::hide_h;
        spec.relation = RelationKind::wtrace;
        spec.use_generator = true;
        spec.depth = 1;
        spec.palette = {trop->top()};
        if (!check_qgndc(P, empty_env, trop, spec).holds) continue;
        for (const char* eps : {"0", "1", "3"}) {
            GndcSpec relaxed = spec;
            relaxed.relation = RelationKind::eps_trace;
            relaxed.epsilon = trop->parse_weight(eps);
            CHECK(check_qgndc(P, empty_env, trop, relaxed).holds);
        }
    }
}

TEST_CASE("epsilon must accompany exactly the eps-relations") {
    GndcSpec spec;
    spec.H = {"h"};
    spec.relation = RelationKind::eps_trace;
    spec.environments = {Term::nil()};
    CHECK_THROWS_AS(check_qgndc(term_of("(a,1).0"), empty_env, trop, spec), ToolkitError);
    spec.relation = RelationKind::wtrace;
    spec.epsilon = trop->top();
    CHECK_THROWS_AS(check_qgndc(term_of("(a,1).0"), empty_env, trop, spec), ToolkitError);
}
