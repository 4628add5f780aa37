#include "semproc/model.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "semproc/qpmc.hpp"

namespace semproc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Splits on `sep` at nesting depth zero with respect to (), {} and [].
std::vector<std::string> split_top_level(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{' || c == '[') ++depth;
        else if (c == ')' || c == '}' || c == ']') --depth;
        else if (c == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

// Finds `token` at nesting depth zero; npos when absent.
std::size_t find_top_level(std::string_view s, std::string_view token) {
    int depth = 0;
    for (std::size_t i = 0; i + token.size() <= s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{' || c == '[') ++depth;
        else if (c == ')' || c == '}' || c == ']') --depth;
        else if (depth == 0 && s.substr(i, token.size()) == token) return i;
    }
    return std::string_view::npos;
}

ActionSet parse_action_list(std::string_view body) {
    ActionSet out;
    for (const auto& item : split_top_level(body, ','))
        if (!item.empty()) {
            if (item == kTau) throw SyntaxError("tau may not appear in an action set", 0);
            out.insert(item);
        }
    return out;
}

ActionSet parse_braced_set(const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}')
        throw SyntaxError("expected {a,...}", 0);
    return parse_action_list(std::string_view(t).substr(1, t.size() - 2));
}

class ModelParser {
public:
    explicit ModelParser(const std::string& text) : text_(text) {}

    ModelFile parse() {
        std::istringstream in(text_);
        std::string raw;
        std::size_t lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            std::string line = trim(raw);
            if (line.empty() || line[0] == '#') continue;
            try {
                dispatch(line);
            } catch (const ToolkitError& e) {
                throw SyntaxError("line " + std::to_string(lineno) + ": " + e.what(), lineno);
            }
        }
        // Definitions may be mutually recursive, so dangling references are
        // only checkable once the whole file is read.
        for (const auto& [name, body] : model_.env.definitions()) {
            (void)name;
            validate_vars(body);
        }
        return std::move(model_);
    }

private:
    const std::string& text_;
    ModelFile model_;

    void require_ring() const {
        if (!model_.ring) throw SyntaxError("a semiring must be declared first", 0);
    }

    void validate_vars(const TermPtr& t) const {
        switch (t->kind) {
        case Term::Kind::var:
            if (!model_.env.lookup(t->var_name)) throw UnboundVariableError(t->var_name);
            return;
        case Term::Kind::prefix: validate_vars(t->cont); return;
        case Term::Kind::choice:
            for (const auto& b : t->branches) validate_vars(b);
            return;
        case Term::Kind::parallel:
            validate_vars(t->left);
            validate_vars(t->right);
            return;
        case Term::Kind::hide:
        case Term::Kind::restrict_: validate_vars(t->left); return;
        case Term::Kind::nil: return;
        }
    }

    TermPtr resolve_process(const std::string& text) const {
        require_ring();
        std::string t = trim(text);
        if (const TermPtr* def = model_.env.lookup(t)) return *def;
        return parse_process(t, model_.ring, &model_.env);
    }

    FormulaPtr resolve_formula(const std::string& text) const {
        require_ring();
        std::string t = trim(text);
        auto it = model_.formulas.find(t);
        if (it != model_.formulas.end()) return it->second;
        return parse_formula(t, model_.ring);
    }

    void dispatch(const std::string& line) {
        if (line.starts_with("semiring")) {
            if (model_.ring) throw SyntaxError("only one semiring per file", 0);
            model_.ring = Semiring::parse(trim(line.substr(8)));
            return;
        }
        if (line.starts_with("process")) {
            require_ring();
            auto eq = line.find('=');
            if (eq == std::string::npos) throw SyntaxError("expected 'process NAME = TERM'", 0);
            std::string name = trim(line.substr(7, eq - 7));
            if (name.empty()) throw SyntaxError("missing process name", 0);
            if (model_.env.lookup(name) || model_.formulas.count(name))
                throw SyntaxError("duplicate name: " + name, 0);
            // Definitions may be co-recursive, so the body is parsed without
            // an environment and bound names are checked at the end of the
            // declaration section (first use).
            model_.env.define(name, parse_process(trim(line.substr(eq + 1)), model_.ring));
            return;
        }
        if (line.starts_with("formula")) {
            require_ring();
            auto eq = line.find('=');
            if (eq == std::string::npos) throw SyntaxError("expected 'formula NAME = PHI'", 0);
            std::string name = trim(line.substr(7, eq - 7));
            if (name.empty()) throw SyntaxError("missing formula name", 0);
            if (model_.env.lookup(name) || model_.formulas.count(name))
                throw SyntaxError("duplicate name: " + name, 0);
            model_.formulas.emplace(name, parse_formula(trim(line.substr(eq + 1)), model_.ring));
            return;
        }
        if (line.starts_with("check")) {
            parse_check(trim(line.substr(5)));
            return;
        }
        throw SyntaxError("unrecognised directive: " + line, 0);
    }

    void parse_check(const std::string& body) {
        require_ring();
        auto colon = body.find(':');
        if (colon == std::string::npos) throw SyntaxError("expected 'check KIND: ...'", 0);
        std::string kind = trim(body.substr(0, colon));
        std::string rest = trim(body.substr(colon + 1));

        CheckSpec check;
        check.id = model_.checks.size() + 1;
        check.source = "check " + body;

        if (kind == "eval") {
            check.kind = CheckSpec::Kind::eval;
            check.process = resolve_process(rest);
        } else if (kind == "trace") {
            check.kind = CheckSpec::Kind::trace;
            auto depth_pos = find_top_level(rest, " depth ");
            if (depth_pos != std::string::npos) {
                check.trace_depth = std::stoul(trim(rest.substr(depth_pos + 7)));
                rest = trim(rest.substr(0, depth_pos));
            }
            check.process = resolve_process(rest);
        } else if (kind == "equiv") {
            check.kind = CheckSpec::Kind::equiv;
            auto tilde = find_top_level(rest, "~");
            if (tilde == std::string::npos) throw SyntaxError("expected 'P ~REL Q'", 0);
            std::string lhs = trim(rest.substr(0, tilde));
            std::string rel_and_rhs = trim(rest.substr(tilde + 1));
            auto space = rel_and_rhs.find(' ');
            if (space == std::string::npos) throw SyntaxError("missing right-hand process", 0);
            parse_relation(trim(rel_and_rhs.substr(0, space)), check.relation, check.epsilon);
            check.process = resolve_process(lhs);
            check.other = resolve_process(trim(rel_and_rhs.substr(space + 1)));
        } else if (kind == "sat") {
            check.kind = CheckSpec::Kind::sat;
            auto models_pos = find_top_level(rest, "|=");
            auto q_pos = find_top_level(rest, "?");
            if (models_pos == std::string::npos || q_pos == std::string::npos || q_pos < models_pos)
                throw SyntaxError("expected 'TERM |= PHI ? W'", 0);
            check.process = resolve_process(trim(rest.substr(0, models_pos)));
            check.formula =
                resolve_formula(trim(rest.substr(models_pos + 2, q_pos - models_pos - 2)));
            check.threshold = model_.ring->parse_weight(trim(rest.substr(q_pos + 1)));
        } else if (kind == "pmc-theorem") {
            check.kind = CheckSpec::Kind::pmc_theorem;
            auto slash = find_top_level(rest, "//");
            if (slash == std::string::npos)
                throw SyntaxError("expected 'PHI // NAME on {a,...} against NAME'", 0);
            std::string tail = rest.substr(slash + 2);
            auto on_pos = find_top_level(tail, " on ");
            if (on_pos == std::string::npos)
                throw SyntaxError("expected 'PHI // NAME on {a,...} against NAME'", 0);
            std::string tail2 = tail.substr(on_pos + 4);
            auto against_pos = find_top_level(tail2, " against ");
            if (against_pos == std::string::npos)
                throw SyntaxError("expected 'PHI // NAME on {a,...} against NAME'", 0);
            check.formula = resolve_formula(trim(rest.substr(0, slash)));
            check.process = resolve_process(trim(tail.substr(0, on_pos)));
            check.sync_set = parse_braced_set(trim(tail2.substr(0, against_pos)));
            check.other = resolve_process(trim(tail2.substr(against_pos + 9)));
        } else if (kind == "gndc") {
            check.kind = CheckSpec::Kind::gndc;
            auto with_pos = find_top_level(rest, " with ");
            if (with_pos == std::string::npos) throw SyntaxError("expected 'NAME with ...'", 0);
            check.process = resolve_process(trim(rest.substr(0, with_pos)));
            parse_gndc_items(trim(rest.substr(with_pos + 6)), check.gndc);
        } else {
            throw SyntaxError("unknown check kind: " + kind, 0);
        }
        model_.checks.push_back(std::move(check));
    }

    void parse_relation(const std::string& rel, RelationKind& kind,
                        std::optional<Weight>& eps) const {
        auto with_eps = [&](std::string_view name) -> bool {
            if (!rel.starts_with(name) || !rel.ends_with(")")) return false;
            std::string inner(rel.substr(name.size(), rel.size() - name.size() - 1));
            eps = model_.ring->parse_weight(inner);
            return true;
        };
        if (rel == "wtrace") kind = RelationKind::wtrace;
        else if (rel == "bisim") kind = RelationKind::qweak_bisim;
        else if (with_eps("eps-trace(")) kind = RelationKind::eps_trace;
        else if (with_eps("eps-bisim(")) kind = RelationKind::weak_eps_bisim;
        else throw SyntaxError("unknown relation: " + rel, 0);
    }

    void parse_gndc_items(const std::string& body, GndcSpec& spec) const {
        bool have_envs = false, have_generator = false;
        for (const auto& item : split_top_level(body, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw SyntaxError("expected key=value in gndc spec", 0);
            std::string key = trim(item.substr(0, eq));
            std::string value = trim(item.substr(eq + 1));
            if (key == "H") {
                spec.H = parse_braced_set(value);
            } else if (key == "alpha") {
                if (value == "id") spec.alpha = AlphaKind::identity;
                else if (value == "hideH") spec.alpha = AlphaKind::hide_h;
                else throw UnknownAlphaError(value);
            } else if (key == "rel") {
                parse_relation(value, spec.relation, spec.epsilon);
            } else if (key == "depth") {
                spec.depth = std::stoul(value);
                have_generator = true;
            } else if (key == "palette") {
                std::string t = trim(value);
                if (t.size() < 2 || t.front() != '{' || t.back() != '}')
                    throw SyntaxError("expected palette={w,...}", 0);
                for (const auto& w : split_top_level(t.substr(1, t.size() - 2), ','))
                    if (!w.empty()) spec.palette.push_back(model_.ring->parse_weight(w));
                have_generator = true;
            } else if (key == "envs") {
                std::string t = trim(value);
                if (t.size() < 2 || t.front() != '{' || t.back() != '}')
                    throw SyntaxError("expected envs={TERM;...}", 0);
                for (const auto& e : split_top_level(t.substr(1, t.size() - 2), ';'))
                    if (!e.empty()) spec.environments.push_back(resolve_process(e));
                have_envs = true;
            } else {
                throw SyntaxError("unknown gndc key: " + key, 0);
            }
        }
        spec.use_generator = have_generator;
        if (have_envs && have_generator)
            throw SyntaxError("give either envs={...} or depth/palette, not both", 0);
    }
};

std::string status_name(CheckOutcome::Status s) {
    switch (s) {
    case CheckOutcome::Status::holds: return "holds";
    case CheckOutcome::Status::fails: return "fails";
    case CheckOutcome::Status::error: return "error";
    }
    return "?";
}

std::string trace_to_string(const Trace& t) {
    if (t.empty()) return "<empty>";
    std::string out;
    for (const auto& [a, w] : t) out += "(" + a + "," + w.str() + ")";
    return out;
}

std::string mlts_to_string(const Mlts& m) {
    std::ostringstream out;
    out << m.num_states() << " state(s), initial s0\n";
    for (StateId s = 0; s < m.num_states(); ++s) {
        out << "  s" << s << " = " << m.state_names[s] << "\n";
        for (const auto& [a, row] : m.out[s])
            for (const auto& [t, w] : row)
                out << "    s" << s << " --(" << a << "," << w.str() << ")--> s" << t << "\n";
    }
    return out.str();
}

struct CheckContext {
    const ModelFile& model;
    std::size_t state_limit;
    std::size_t depth_limit;
};

void run_eval(const CheckContext& ctx, const CheckSpec& check, CheckOutcome& out) {
    Mlts m = build_mlts(check.process, ctx.model.env, ctx.model.ring, ctx.state_limit);
    out.fields["states"] = std::to_string(m.num_states());
    out.fields["weak_eval"] = weak_eval(m).str();
    out.fields["strong_eval"] = strong_eval(m).str();
    out.status = CheckOutcome::Status::holds;
}

void run_trace(const CheckContext& ctx, const CheckSpec& check, CheckOutcome& out) {
    Mlts m = build_mlts(check.process, ctx.model.env, ctx.model.ring, ctx.state_limit);
    auto result = maximal_traces(m, check.trace_depth);
    out.fields["count"] = std::to_string(result.traces.size());
    out.fields["truncated"] = result.truncated ? "true" : "false";
    std::size_t i = 0;
    for (const auto& t : result.traces) {
        out.fields["trace_" + std::to_string(i++)] = trace_to_string(t);
        if (i >= 50) {
            out.fields["trace_more"] = "...";
            break;
        }
    }
    out.status = CheckOutcome::Status::holds;
}

void run_equiv(const CheckContext& ctx, const CheckSpec& check, CheckOutcome& out) {
    Mlts P = build_mlts(check.process, ctx.model.env, ctx.model.ring, ctx.state_limit);
    Mlts Q = build_mlts(check.other, ctx.model.env, ctx.model.ring, ctx.state_limit);
    Verdict v;
    switch (check.relation) {
    case RelationKind::wtrace: v = weak_trace_equiv(P, Q, ctx.depth_limit); break;
    case RelationKind::eps_trace: v = eps_trace_equiv(P, Q, *check.epsilon, ctx.depth_limit); break;
    case RelationKind::qweak_bisim: v = quant_weak_bisim(P, Q); break;
    case RelationKind::weak_eps_bisim: v = weak_eps_bisim(P, Q, *check.epsilon); break;
    }
    out.fields["relation"] = relation_name(v.relation);
    if (v.epsilon) out.fields["epsilon"] = v.epsilon->str();
    for (const auto& [k, val] : v.details) out.fields[k] = val;
    out.status = v.holds ? CheckOutcome::Status::holds : CheckOutcome::Status::fails;
}

void run_sat(const CheckContext& ctx, const CheckSpec& check, CheckOutcome& out) {
    ThresholdQuery q{check.process, &ctx.model.env, check.formula, *check.threshold,
                     ctx.state_limit};
    auto result = satisfies(q);
    out.fields["value"] = result.value.str();
    out.fields["threshold"] = check.threshold->str();
    out.status = result.holds ? CheckOutcome::Status::holds : CheckOutcome::Status::fails;
}

void run_pmc(const CheckContext& ctx, const CheckSpec& check, CheckOutcome& out) {
    auto result = verify_theorem(check.formula, check.process, check.other, check.sync_set,
                                 ctx.model.env, ctx.model.ring, ctx.state_limit);
    out.fields["lhs"] = result.lhs.str();
    out.fields["rhs"] = result.rhs.str();
    out.fields["equal"] = result.equal ? "true" : "false";
    PmcContext pmc = make_pmc_context(check.process, ctx.model.env, ctx.model.ring,
                                      check.sync_set, ctx.state_limit);
    out.fields["residual"] = print_formula(*simplify(pmc_transform(check.formula, pmc)));
    out.status = result.equal ? CheckOutcome::Status::holds : CheckOutcome::Status::fails;
}

void run_gndc(const CheckContext& ctx, const CheckSpec& check, CheckOutcome& out) {
    GndcSpec spec = check.gndc;
    spec.state_limit = ctx.state_limit;
    spec.depth_limit = ctx.depth_limit;
    auto result = check_qgndc(check.process, ctx.model.env, ctx.model.ring, spec);
    out.fields["environments_checked"] = std::to_string(result.environments_checked);
    out.fields["note"] = result.note;
    if (result.witness) out.fields["witness"] = print_term(**result.witness);
    if (result.inner)
        for (const auto& [k, val] : result.inner->details) out.fields["witness_" + k] = val;
    out.status = result.holds ? CheckOutcome::Status::holds : CheckOutcome::Status::fails;
}

CheckOutcome run_check(const CheckContext& ctx, const CheckSpec& check) {
    CheckOutcome out;
    out.id = check.id;
    out.inputs = check.source;
    const auto started = std::chrono::steady_clock::now();
    try {
        switch (check.kind) {
        case CheckSpec::Kind::eval:
            out.kind = "eval";
            run_eval(ctx, check, out);
            break;
        case CheckSpec::Kind::trace:
            out.kind = "trace";
            run_trace(ctx, check, out);
            break;
        case CheckSpec::Kind::equiv:
            out.kind = "equiv";
            run_equiv(ctx, check, out);
            break;
        case CheckSpec::Kind::sat:
            out.kind = "sat";
            run_sat(ctx, check, out);
            break;
        case CheckSpec::Kind::pmc_theorem:
            out.kind = "pmc-theorem";
            run_pmc(ctx, check, out);
            break;
        case CheckSpec::Kind::gndc:
            out.kind = "gndc";
            run_gndc(ctx, check, out);
            break;
        }
    } catch (const ToolkitError& e) {
        out.status = CheckOutcome::Status::error;
        out.fields["error"] = e.what();
    }
    out.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    return out;
}

} // namespace

ModelFile parse_model_text(const std::string& text) { return ModelParser(text).parse(); }

ModelFile parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolkitError("cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model_text(buffer.str());
}

Report run_model(const ModelFile& model, const RunFlags& flags) {
    CheckContext ctx{model, flags.limit_states.value_or(kDefaultStateLimit),
                     flags.limit_depth.value_or(kDefaultDepthLimit)};
    Report report;
    report.semiring = model.ring ? model.ring->name() : "<none>";
    for (const auto& check : model.checks) {
        CheckOutcome out = run_check(ctx, check);
        switch (out.status) {
        case CheckOutcome::Status::holds: ++report.holds; break;
        case CheckOutcome::Status::fails: ++report.fails; break;
        case CheckOutcome::Status::error: ++report.errors; break;
        }
        report.checks.push_back(std::move(out));
    }
    return report;
}

int report_exit_code(const Report& report) {
    if (report.errors) return 2;
    if (report.fails) return 1;
    return 0;
}

std::string render_text(const Report& report, const RunFlags& flags) {
    std::ostringstream out;
    out << "semiring: " << report.semiring << "\n";
    for (const auto& c : report.checks) {
        out << "[" << c.id << "] " << c.inputs << "\n";
        out << "    " << status_name(c.status);
        if (flags.timings) out << "  (" << c.wall_ms << " ms)";
        out << "\n";
        for (const auto& [k, v] : c.fields) out << "    " << k << ": " << v << "\n";
    }
    out << "summary: " << report.holds << " hold, " << report.fails << " fail, "
        << report.errors << " error(s)\n";
    return out.str();
}

std::string render_json(const Report& report, const RunFlags& flags) {
    ordered_json doc;
    doc["semiring"] = report.semiring;
    doc["summary"] = {{"checks", report.checks.size()},
                      {"holds", report.holds},
                      {"fails", report.fails},
                      {"errors", report.errors}};
    doc["checks"] = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json entry;
        entry["id"] = c.id;
        entry["kind"] = c.kind;
        entry["inputs"] = c.inputs;
        entry["status"] = status_name(c.status);
        entry["fields"] = ordered_json::object();
        for (const auto& [k, v] : c.fields) entry["fields"][k] = v;
        if (flags.timings) entry["wall_ms"] = c.wall_ms;
        doc["checks"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::string explain_check(const ModelFile& model, const RunFlags& flags, std::size_t check_id) {
    const CheckSpec* found = nullptr;
    for (const auto& c : model.checks)
        if (c.id == check_id) found = &c;
    if (!found) throw UnknownCheckError(check_id);
    const CheckSpec& check = *found;

    CheckContext ctx{model, flags.limit_states.value_or(kDefaultStateLimit),
                     flags.limit_depth.value_or(kDefaultDepthLimit)};
    std::ostringstream out;
    out << "explain [" << check.id << "] " << check.source << "\n";

    auto dump_system = [&](const char* title, const Mlts& m) {
        out << title << ": " << mlts_to_string(m);
    };

    switch (check.kind) {
    case CheckSpec::Kind::eval: {
        Mlts m = build_mlts(check.process, model.env, model.ring, ctx.state_limit);
        dump_system("system", m);
        out << "weak evaluation: " << weak_eval(m).str() << "\n";
        out << "strong evaluation: " << strong_eval(m).str() << "\n";
        break;
    }
    case CheckSpec::Kind::trace: {
        Mlts m = build_mlts(check.process, model.env, model.ring, ctx.state_limit);
        dump_system("system", m);
        auto result = maximal_traces(m, check.trace_depth);
        out << "maximal traces (" << result.traces.size() << ")"
            << (result.truncated ? ", truncated" : "") << ":\n";
        for (const auto& t : result.traces) out << "  " << trace_to_string(t) << "\n";
        break;
    }
    case CheckSpec::Kind::equiv: {
        Mlts P = build_mlts(check.process, model.env, model.ring, ctx.state_limit);
        Mlts Q = build_mlts(check.other, model.env, model.ring, ctx.state_limit);
        dump_system("left system", P);
        dump_system("right system", Q);
        CheckOutcome o = run_check(ctx, check);
        out << "verdict: " << status_name(o.status) << "\n";
        out << "difference:\n";
        for (const auto& [k, v] : o.fields)
            if (k.find("failing") != std::string::npos || k.find("distinguishing") != std::string::npos)
                out << "  " << k << ": " << v << "\n";
        break;
    }
    case CheckSpec::Kind::sat: {
        Mlts m = build_mlts(check.process, model.env, model.ring, ctx.state_limit);
        Mlts projected = project(m, check.process, model.env);
        dump_system("projected system", projected);
        out << "per-state formula values:\n";
        for (StateId s = 0; s < projected.num_states(); ++s)
            out << "  s" << s << ": " << evaluate(check.formula, projected, s).str() << "\n";
        auto result = satisfies(ThresholdQuery{check.process, &model.env, check.formula,
                                               *check.threshold, ctx.state_limit});
        out << "value at s0: " << result.value.str() << ", threshold " << check.threshold->str()
            << " -> " << (result.holds ? "holds" : "fails") << "\n";
        break;
    }
    case CheckSpec::Kind::pmc_theorem: {
        Mlts P = build_mlts(check.process, model.env, model.ring, ctx.state_limit);
        dump_system("factored component", P);
        PmcContext pmc = make_pmc_context(check.process, model.env, model.ring, check.sync_set,
                                          ctx.state_limit);
        FormulaPtr residual = pmc_transform(check.formula, pmc);
        out << "residual formula: " << print_formula(*residual) << "\n";
        out << "simplified: " << print_formula(*simplify(residual)) << "\n";
        CheckOutcome o = run_check(ctx, check);
        out << "lhs: " << o.fields["lhs"] << ", rhs: " << o.fields["rhs"] << ", equal: "
            << o.fields["equal"] << "\n";
        break;
    }
    case CheckSpec::Kind::gndc: {
        GndcSpec spec = check.gndc;
        spec.state_limit = ctx.state_limit;
        spec.depth_limit = ctx.depth_limit;
        auto result = check_qgndc(check.process, model.env, model.ring, spec);
        Mlts expected = build_mlts(alpha_apply(spec, check.process), model.env, model.ring,
                                   ctx.state_limit);
        dump_system("expected behaviour alpha(P)", expected);
        out << "environments checked: " << result.environments_checked << "\n";
        out << result.note << "\n";
        if (result.witness) {
            out << "witness environment: " << print_term(**result.witness) << "\n";
            TermPtr composed =
                Term::hide(spec.H, Term::parallel(spec.H, check.process, *result.witness));
            Mlts lhs = build_mlts(composed, model.env, model.ring, ctx.state_limit);
            dump_system("witness composition (P |[H]| E) \\ H", lhs);
            if (result.inner)
                for (const auto& [k, v] : result.inner->details)
                    out << "  " << k << ": " << v << "\n";
        } else {
            out << "verdict: holds for every environment in the family\n";
        }
        break;
    }
    }
    return out.str();
}

} // namespace semproc
