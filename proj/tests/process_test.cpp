#include <doctest.h>

#include "semproc/mlts.hpp"
#include "semproc/process.hpp"
#include "testutil.hpp"

using namespace semproc;
using testutil::Rng;

namespace {
const SemiringPtr trop = Semiring::tropical();

Mlts build(const std::string& text, const ProcessEnv& env = {}) {
    return build_mlts(parse_process(text, trop, nullptr), env, trop);
}
} // namespace

TEST_CASE("parsing the grammar") {
    auto p = parse_process("(a,2).0", trop);
    REQUIRE(p->kind == Term::Kind::prefix);
    CHECK(p->action == "a");
    CHECK(p->weight->str() == "2");
    CHECK(p->cont->kind == Term::Kind::nil);

    auto q = parse_process("(a,2).0 + (b,3).0", trop);
    REQUIRE(q->kind == Term::Kind::choice);
    CHECK(q->branches.size() == 2);

    ProcessEnv env;
    env.define("X", parse_process("(a,1).X", trop));
    auto x = parse_process("X", trop, &env);
    CHECK(x->kind == Term::Kind::var);
    CHECK_THROWS_AS(parse_process("Y", trop, &env), UnboundVariableError);

    auto par = parse_process("(a,2).0 |[a]| (a,3).0", trop);
    CHECK(par->kind == Term::Kind::parallel);
    CHECK(par->set == ActionSet{"a"});

    auto hid = parse_process("((h,1).(a,2).0) \\ {h}", trop);
    CHECK(hid->kind == Term::Kind::hide);
    auto res = parse_process("((h,1).(a,2).0) / {h}", trop);
    CHECK(res->kind == Term::Kind::restrict_);

    CHECK_THROWS_AS(parse_process("(a,2).", trop), SyntaxError);
    CHECK_THROWS_AS(parse_process("(a,2).0 +", trop), SyntaxError);
    CHECK_THROWS_AS(parse_process("(a,-1).0", trop), SyntaxError);
    CHECK_THROWS_AS(parse_process("(a,1).0 |[tau]| 0", trop), SyntaxError);
}

TEST_CASE("precedence: prefix over +, + over parallel") {
    auto p = parse_process("(a,2).0 + (b,3).0 |[a]| (a,1).0", trop);
    REQUIRE(p->kind == Term::Kind::parallel);
    CHECK(p->left->kind == Term::Kind::choice);
    CHECK(p->right->kind == Term::Kind::prefix);
}

TEST_CASE("term printing round-trips") {
    Rng rng(41);
    std::vector<Action> actions{"a", "b", "h"};
    for (int i = 0; i < 300; ++i) {
        auto t = testutil::random_acyclic_term(rng, trop, actions, 4, true, true);
        std::string printed = print_term(*t);
        auto reparsed = parse_process(printed, trop, nullptr);
        CHECK(print_term(*reparsed) == printed);
    }
}

TEST_CASE("synchronised parallel multiplies weights") {
    Mlts m = build("(a,2).0 |[a]| (a,3).0");
    REQUIRE(m.num_states() == 2);
    REQUIRE(m.out[0].count("a"));
    CHECK(m.out[0].at("a").begin()->second == trop->parse_weight("5"));

    Rng rng(43);
    for (int i = 0; i < 100; ++i) {
        Weight k = testutil::random_weight(rng, trop);
        Weight l = testutil::random_weight(rng, trop);
        if (k.is_bottom() || l.is_bottom()) continue;
        auto p = Term::prefix("a", k, Term::nil());
        auto q = Term::prefix("a", l, Term::nil());
        Mlts pm = build_mlts(Term::parallel({"a"}, p, q), {}, trop);
        REQUIRE(pm.out[0].count("a"));
        CHECK(pm.out[0].at("a").begin()->second == combine_times(k, l));
    }
}

TEST_CASE("choice aggregates duplicate transitions with the semiring sum") {
    Mlts m = build("(a,2).0 + (a,3).0");
    REQUIRE(m.num_states() == 2);
    CHECK(m.out[0].at("a").size() == 1);
    CHECK(m.out[0].at("a").begin()->second == trop->parse_weight("2"));
}

TEST_CASE("hiding relabels to tau and merges") {
    Mlts m = build("((h,1).(a,2).0) \\ {h}");
    REQUIRE(m.num_states() == 3);
    CHECK(m.out[0].count(kTau));
    CHECK(m.out[0].at(kTau).begin()->second == trop->parse_weight("1"));
    StateId mid = m.out[0].at(kTau).begin()->first;
    CHECK(m.out[mid].at("a").begin()->second == trop->parse_weight("2"));

    // A hidden action merging with a pre-existing tau between the same pair.
    Mlts h = build("((h,2).0 + (tau,3).0) \\ {h}");
    CHECK(h.out[0].at(kTau).size() == 1);
    CHECK(h.out[0].at(kTau).begin()->second == trop->parse_weight("2"));
}

TEST_CASE("hiding soundness on random terms") {
    Rng rng(47);
    std::vector<Action> actions{"a", "b", "h"};
    for (int i = 0; i < 100; ++i) {
        auto t = testutil::random_acyclic_term(rng, trop, actions, 3);
        Mlts plain = build_mlts(t, {}, trop);
        Mlts hidden = build_mlts(Term::hide({"h"}, t), {}, trop);
        for (StateId s = 0; s < hidden.num_states(); ++s)
            CHECK_FALSE(hidden.out[s].count("h"));
        // The tau weight between a state pair is the sum of the hidden and
        // tau weights between the matching pair in the plain system.
        for (StateId s = 0; s < plain.num_states(); ++s) {
            std::map<StateId, Weight> expected;
            for (const auto& a : {std::string("h"), kTau}) {
                auto row = plain.out[s].find(a);
                if (row == plain.out[s].end()) continue;
                for (const auto& [t2, w2] : row->second) {
                    auto it = expected.find(t2);
                    if (it == expected.end()) expected.emplace(t2, w2);
                    else it->second = combine_plus(it->second, w2);
                }
            }
            // Match states by their printed term wrapped in the hide.
            ActionSet hs{"h"};
            for (const auto& [t2, w2] : expected) {
                std::string key = print_term(*canonical(Term::hide(
                    hs, parse_process(plain.state_names[t2], trop, nullptr))));
                bool found = false;
                std::string src = print_term(*canonical(Term::hide(
                    hs, parse_process(plain.state_names[s], trop, nullptr))));
                for (StateId hsrc = 0; hsrc < hidden.num_states(); ++hsrc) {
                    if (hidden.state_names[hsrc] != src) continue;
                    auto row = hidden.out[hsrc].find(kTau);
                    if (row == hidden.out[hsrc].end()) break;
                    for (const auto& [ht, hw] : row->second)
                        if (hidden.state_names[ht] == key && hw == w2) found = true;
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("restriction drops forbidden actions") {
    Mlts m = build("((a,1).0 + (b,2).0) / {b}");
    CHECK(m.num_states() == 2);
    CHECK(m.out[0].count("a"));
    CHECK_FALSE(m.out[0].count("b"));

    Rng rng(53);
    std::vector<Action> actions{"a", "b"};
    for (int i = 0; i < 100; ++i) {
        auto t = testutil::random_acyclic_term(rng, trop, actions, 3);
        Mlts restricted = build_mlts(Term::restrict({"b"}, t), {}, trop);
        for (StateId s = 0; s < restricted.num_states(); ++s)
            CHECK_FALSE(restricted.out[s].count("b"));
    }
}

TEST_CASE("choice idempotency: P + P collapses to P") {
    Rng rng(59);
    std::vector<Action> actions{"a", "b"};
    for (int i = 0; i < 100; ++i) {
        auto t = testutil::random_acyclic_term(rng, trop, actions, 3);
        Mlts single = build_mlts(t, {}, trop);
        Mlts doubled = build_mlts(Term::choice({t, t}), {}, trop);
        CHECK(single.num_states() == doubled.num_states());
        CHECK(single.state_names == doubled.state_names);
    }
}

TEST_CASE("guarded recursion builds a finite system; unguarded is an error") {
    ProcessEnv env;
    env.define("X", parse_process("(a,1).X", trop));
    Mlts m = build_mlts(Term::var("X"), env, trop);
    CHECK(m.num_states() == 1);
    CHECK(m.out[0].at("a").begin()->first == 0);

    ProcessEnv bad;
    bad.define("Y", parse_process("Y + (a,1).0", trop));
    CHECK_THROWS_AS(build_mlts(Term::var("Y"), bad, trop), UnguardedRecursionError);

    ProcessEnv dangling;
    CHECK_THROWS_AS(build_mlts(Term::var("Z"), dangling, trop), UnboundVariableError);
}

TEST_CASE("state limit") {
    ProcessEnv env;
    env.define("X", parse_process("(a,1).(b,1).(a,2).(b,2).(a,3).(b,3).0", trop));
    CHECK_THROWS_AS(build_mlts(*env.lookup("X"), env, trop, 3), StateLimitError);
}

TEST_CASE("sort collects syntactic actions, tau excluded") {
    ProcessEnv env;
    CHECK(sort_actions(parse_process("(a,2).0 + (b,3).0", trop), env) == ActionSet{"a", "b"});
    CHECK(sort_actions(parse_process("0", trop), env) == ActionSet{});
    CHECK(sort_actions(parse_process("(tau,1).(a,3).0", trop), env) == ActionSet{"a"});

    ProcessEnv rec;
    rec.define("X", parse_process("(a,1).(b,2).X", trop));
    CHECK(sort_actions(Term::var("X"), rec) == ActionSet{"a", "b"});
}

TEST_CASE("derivatives of a linear chain") {
    Mlts m = build("(a,1).(b,1).0");
    CHECK(derivatives(m).size() == 3);
}

TEST_CASE("maximal traces") {
    Mlts m = build("(tau,1).(a,3).(b,2).0");
    auto r = maximal_traces(m);
    REQUIRE(r.traces.size() == 1);
    CHECK_FALSE(r.truncated);
    const Trace& t = *r.traces.begin();
    CHECK(trace_label(t) == std::vector<Action>{"tau", "a", "b"});

    Mlts nil = build("0");
    auto rn = maximal_traces(nil);
    REQUIRE(rn.traces.size() == 1);
    CHECK(rn.traces.begin()->empty());

    ProcessEnv env;
    env.define("X", parse_process("(a,1).X", trop));
    Mlts loop = build_mlts(Term::var("X"), env, trop);
    auto rl = maximal_traces(loop, 5);
    CHECK(rl.truncated);
    CHECK(rl.traces.empty());
}

TEST_CASE("run weights") {
    Mlts m = build("(tau,1).(a,3).(b,2).0");
    const Trace t = *maximal_traces(m).traces.begin();
    CHECK(weak_run_weight(trop, t) == trop->parse_weight("6"));
    CHECK(strong_run_weight(trop, t) == trop->parse_weight("5"));
    CHECK(weak_run_weight(trop, {}) == trop->top());
    CHECK(strong_run_weight(trop, {}) == trop->top());
    Trace only_tau{{kTau, trop->parse_weight("4")}};
    CHECK(weak_run_weight(trop, only_tau) == trop->parse_weight("4"));
    CHECK(strong_run_weight(trop, only_tau) == trop->top());
}

TEST_CASE("evaluation values") {
    CHECK(weak_eval(build("(tau,1).(a,3).(b,2).0")) == trop->parse_weight("6"));
    CHECK(strong_eval(build("(tau,1).(a,3).(b,2).0")) == trop->parse_weight("5"));
    CHECK(weak_eval(build("(a,2).(b,3).0")) == trop->parse_weight("5"));
    CHECK(strong_eval(build("(a,2).(b,3).0")) == trop->parse_weight("5"));
    CHECK(weak_eval(build("0")) == trop->top());
    CHECK(strong_eval(build("0")) == trop->top());
}

TEST_CASE("evaluation agrees with trace enumeration on random acyclic systems") {
    std::vector<Action> actions{"a", "b", "h"};
    for (auto ring : {Semiring::tropical(), Semiring::fuzzy(), Semiring::boolean()}) {
        Rng rng(61);
        for (int i = 0; i < 150; ++i) {
            auto t = testutil::random_acyclic_term(rng, ring, actions, 4, true, true);
            Mlts m = build_mlts(t, {}, ring);
            CHECK(weak_eval(m) == testutil::brute_eval(m, false));
            CHECK(strong_eval(m) == testutil::brute_eval(m, true));
        }
    }
}

TEST_CASE("replacing a weight by top never worsens the evaluation") {
    Rng rng(67);
    std::vector<Action> actions{"a", "b"};
    for (int i = 0; i < 80; ++i) {
        auto t = testutil::random_acyclic_term(rng, trop, actions, 3);
        Mlts m = build_mlts(t, {}, trop);
        bool mutated = false;
        Mlts better = m;
        for (StateId s = 0; s < better.num_states() && !mutated; ++s)
            for (auto& [a, row] : better.out[s]) {
                for (auto& [tgt, w2] : row) {
                    w2 = trop->top();
                    mutated = true;
                    break;
                }
                if (mutated) break;
            }
        if (!mutated) continue;
        CHECK(leq(weak_eval(m), weak_eval(better)));
    }
}

TEST_CASE("weak trace sets") {
    auto seqs = [](const Mlts& m) { return weak_trace_set(m).sequences; };
    using Seq = std::vector<Action>;
    std::set<Seq> expected{{}, {"a"}, {"a", "b"}};
    CHECK(seqs(build("(tau,1).(a,3).(b,2).0")) == expected);
    CHECK(seqs(build("(a,2).(b,3).0")) == expected);
    CHECK(seqs(build("0")) == std::set<Seq>{{}});
}
