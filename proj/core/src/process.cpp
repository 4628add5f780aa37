#include "semproc/process.hpp"

#include <algorithm>
#include <cctype>

namespace semproc {

TermPtr Term::nil() {
    static const TermPtr instance = std::make_shared<Term>();
    return instance;
}

TermPtr Term::prefix(Action a, Weight w, TermPtr cont) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::prefix;
    t->action = std::move(a);
    t->weight = std::move(w);
    t->cont = std::move(cont);
    return t;
}

TermPtr Term::choice(std::vector<TermPtr> branches) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::choice;
    t->branches = std::move(branches);
    return t;
}

TermPtr Term::parallel(ActionSet sync, TermPtr left, TermPtr right) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::parallel;
    t->set = std::move(sync);
    t->left = std::move(left);
    t->right = std::move(right);
    return t;
}

TermPtr Term::hide(ActionSet hidden, TermPtr body) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::hide;
    t->set = std::move(hidden);
    t->left = std::move(body);
    return t;
}

TermPtr Term::restrict(ActionSet forbidden, TermPtr body) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::restrict_;
    t->set = std::move(forbidden);
    t->left = std::move(body);
    return t;
}

TermPtr Term::var(std::string name) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::var;
    t->var_name = std::move(name);
    return t;
}

void ProcessEnv::define(const std::string& name, TermPtr body) { defs_[name] = std::move(body); }

const TermPtr* ProcessEnv::lookup(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : &it->second;
}

namespace {

std::string set_to_string(const ActionSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : s) {
        if (!first) out += ",";
        out += a;
        first = false;
    }
    return out + "}";
}

int precedence(Term::Kind k) {
    switch (k) {
    case Term::Kind::parallel: return 0;
    case Term::Kind::choice: return 1;
    default: return 2; // prefix, postfix operators and atoms
    }
}

std::string print_child(const Term& child, int min_prec) {
    std::string s = print_term(child);
    if (precedence(child.kind) < min_prec) return "(" + s + ")";
    return s;
}

} // namespace

std::string print_term(const Term& t) {
    switch (t.kind) {
    case Term::Kind::nil: return "0";
    case Term::Kind::prefix:
        return "(" + t.action + "," + t.weight->str() + ")." + print_child(*t.cont, 2);
    case Term::Kind::choice: {
        std::string out;
        for (std::size_t i = 0; i < t.branches.size(); ++i) {
            if (i) out += " + ";
            out += print_child(*t.branches[i], 2);
        }
        return out;
    }
    case Term::Kind::parallel: {
        std::string names;
        bool first = true;
        for (const auto& a : t.set) {
            if (!first) names += ",";
            names += a;
            first = false;
        }
        return print_child(*t.left, 1) + " |[" + names + "]| " + print_child(*t.right, 1);
    }
    case Term::Kind::hide: return print_child(*t.left, 2) + " \\ " + set_to_string(t.set);
    case Term::Kind::restrict_: return print_child(*t.left, 2) + " / " + set_to_string(t.set);
    case Term::Kind::var: return t.var_name;
    }
    return "?";
}

namespace {

// Recursive-descent parser for the process grammar.
class ProcessParser {
public:
    ProcessParser(std::string_view text, SemiringPtr ring, const ProcessEnv* env)
        : text_(text), ring_(std::move(ring)), env_(env) {}

    TermPtr parse() {
        auto t = parse_parallel();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("trailing input after process term", pos_);
        return t;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    SemiringPtr ring_;
    const ProcessEnv* env_;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool peek_str(std::string_view s) {
        skip_ws();
        return text_.substr(pos_, s.size()) == s;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) throw SyntaxError("expected an identifier", pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    ActionSet parse_action_set(char close) {
        ActionSet s;
        skip_ws();
        if (peek(close)) {
            ++pos_;
            return s;
        }
        while (true) {
            std::string name = parse_ident();
            if (name == kTau) throw SyntaxError("tau may not appear in an action set", pos_);
            s.insert(name);
            skip_ws();
            if (peek(',')) {
                ++pos_;
                continue;
            }
            expect(close);
            return s;
        }
    }

    TermPtr parse_parallel() {
        auto lhs = parse_sum();
        while (true) {
            skip_ws();
            if (!peek_str("|[")) return lhs;
            pos_ += 2;
            ActionSet sync = parse_action_set(']');
            expect('|');
            auto rhs = parse_sum();
            lhs = Term::parallel(std::move(sync), std::move(lhs), std::move(rhs));
        }
    }

    TermPtr parse_sum() {
        std::vector<TermPtr> branches;
        branches.push_back(parse_postfix());
        while (peek('+')) {
            ++pos_;
            branches.push_back(parse_postfix());
        }
        if (branches.size() == 1) return branches[0];
        return Term::choice(std::move(branches));
    }

    TermPtr parse_postfix() {
        auto t = parse_atom();
        while (true) {
            skip_ws();
            if (peek('\\')) {
                ++pos_;
                expect('{');
                t = Term::hide(parse_action_set('}'), std::move(t));
            } else if (peek('/')) {
                ++pos_;
                expect('{');
                t = Term::restrict(parse_action_set('}'), std::move(t));
            } else {
                return t;
            }
        }
    }

    // A '(' opens either a weighted prefix "(a,w).P" or a grouped term.
    bool paren_is_prefix() {
        std::size_t save = pos_;
        ++pos_; // consume '('
        skip_ws();
        bool ident_then_comma = false;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            skip_ws();
            ident_then_comma = pos_ < text_.size() && text_[pos_] == ',';
        }
        pos_ = save;
        return ident_then_comma;
    }

    TermPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of process term", pos_);
        char c = text_[pos_];
        if (c == '0') {
            ++pos_;
            return Term::nil();
        }
        if (c == '(') {
            if (paren_is_prefix()) return parse_prefix();
            ++pos_;
            auto t = parse_parallel();
            expect(')');
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = parse_ident();
            if (name == kTau) throw SyntaxError("tau is only legal as a prefix action", pos_);
            if (env_ && !env_->lookup(name)) throw UnboundVariableError(name);
            return Term::var(name);
        }
        throw SyntaxError("unexpected character in process term", pos_);
    }

    TermPtr parse_prefix() {
        expect('(');
        std::string action = parse_ident();
        expect(',');
        skip_ws();
        // The weight literal runs to the matching ')'; products nest.
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(') ++depth;
            else if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            ++pos_;
        }
        if (pos_ >= text_.size()) throw SyntaxError("unterminated prefix", start);
        Weight w = ring_->parse_weight(text_.substr(start, pos_ - start));
        expect(')');
        expect('.');
        auto cont = parse_postfix();
        return Term::prefix(std::move(action), std::move(w), std::move(cont));
    }
};

} // namespace

TermPtr parse_process(std::string_view text, const SemiringPtr& ring, const ProcessEnv* env) {
    return ProcessParser(text, ring, env).parse();
}

ActionSet sort_actions(const TermPtr& t, const ProcessEnv& env) {
    ActionSet out;
    std::set<std::string> seen_vars;
    auto walk = [&](auto&& self, const TermPtr& u) -> void {
        switch (u->kind) {
        case Term::Kind::nil: return;
        case Term::Kind::prefix:
            if (!is_tau(u->action)) out.insert(u->action);
            self(self, u->cont);
            return;
        case Term::Kind::choice:
            for (const auto& b : u->branches) self(self, b);
            return;
        case Term::Kind::parallel:
            self(self, u->left);
            self(self, u->right);
            return;
        case Term::Kind::hide:
        case Term::Kind::restrict_:
            self(self, u->left);
            return;
        case Term::Kind::var: {
            if (!seen_vars.insert(u->var_name).second) return;
            const TermPtr* def = env.lookup(u->var_name);
            if (!def) throw UnboundVariableError(u->var_name);
            self(self, *def);
            return;
        }
        }
    };
    walk(walk, t);
    return out;
}

TermPtr canonical(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::nil:
    case Term::Kind::var: return t;
    case Term::Kind::prefix: {
        auto cont = canonical(t->cont);
        if (cont == t->cont) return t;
        return Term::prefix(t->action, *t->weight, std::move(cont));
    }
    case Term::Kind::choice: {
        std::vector<TermPtr> flat;
        auto add = [&](auto&& self, const TermPtr& b) -> void {
            auto cb = canonical(b);
            if (cb->kind == Term::Kind::choice) {
                for (const auto& inner : cb->branches) self(self, inner);
            } else if (cb->kind != Term::Kind::nil) {
                flat.push_back(cb);
            }
        };
        for (const auto& b : t->branches) add(add, b);
        if (flat.empty()) return Term::nil();
        std::vector<std::pair<std::string, TermPtr>> keyed;
        keyed.reserve(flat.size());
        for (auto& b : flat) keyed.emplace_back(print_term(*b), std::move(b));
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        keyed.erase(std::unique(keyed.begin(), keyed.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; }),
                    keyed.end());
        if (keyed.size() == 1) return keyed[0].second;
        std::vector<TermPtr> branches;
        branches.reserve(keyed.size());
        for (auto& [_, b] : keyed) branches.push_back(std::move(b));
        return Term::choice(std::move(branches));
    }
    case Term::Kind::parallel: {
        auto l = canonical(t->left);
        auto r = canonical(t->right);
        if (l == t->left && r == t->right) return t;
        return Term::parallel(t->set, std::move(l), std::move(r));
    }
    case Term::Kind::hide: {
        auto body = canonical(t->left);
        if (body->kind == Term::Kind::nil) return body;
        if (t->set.empty()) return body;
        if (body == t->left) return t;
        return Term::hide(t->set, std::move(body));
    }
    case Term::Kind::restrict_: {
        auto body = canonical(t->left);
        if (body->kind == Term::Kind::nil) return body;
        if (t->set.empty()) return body;
        if (body == t->left) return t;
        return Term::restrict(t->set, std::move(body));
    }
    }
    return t;
}

namespace {

void collect_moves(const TermPtr& t, const ProcessEnv& env, std::set<std::string>& guard,
                   std::vector<Move>& out) {
    switch (t->kind) {
    case Term::Kind::nil: return;
    case Term::Kind::prefix:
        if (!t->weight->is_bottom()) out.push_back({t->action, *t->weight, t->cont});
        return;
    case Term::Kind::choice:
        for (const auto& b : t->branches) collect_moves(b, env, guard, out);
        return;
    case Term::Kind::parallel: {
        std::vector<Move> lm, rm;
        collect_moves(t->left, env, guard, lm);
        collect_moves(t->right, env, guard, rm);
        for (const auto& m : lm)
            if (!t->set.count(m.action))
                out.push_back({m.action, m.weight, Term::parallel(t->set, m.target, t->right)});
        for (const auto& m : rm)
            if (!t->set.count(m.action))
                out.push_back({m.action, m.weight, Term::parallel(t->set, t->left, m.target)});
        for (const auto& l : lm) {
            if (!t->set.count(l.action)) continue;
            for (const auto& r : rm) {
                if (r.action != l.action) continue;
                Weight w = combine_times(l.weight, r.weight);
                if (w.is_bottom()) continue;
                out.push_back({l.action, std::move(w), Term::parallel(t->set, l.target, r.target)});
            }
        }
        return;
    }
    case Term::Kind::hide: {
        std::vector<Move> inner;
        collect_moves(t->left, env, guard, inner);
        for (const auto& m : inner) {
            Action a = t->set.count(m.action) ? kTau : m.action;
            out.push_back({std::move(a), m.weight, Term::hide(t->set, m.target)});
        }
        return;
    }
    case Term::Kind::restrict_: {
        std::vector<Move> inner;
        collect_moves(t->left, env, guard, inner);
        for (const auto& m : inner)
            if (!t->set.count(m.action))
                out.push_back({m.action, m.weight, Term::restrict(t->set, m.target)});
        return;
    }
    case Term::Kind::var: {
        if (!guard.insert(t->var_name).second) throw UnguardedRecursionError(t->var_name);
        const TermPtr* def = env.lookup(t->var_name);
        if (!def) throw UnboundVariableError(t->var_name);
        collect_moves(*def, env, guard, out);
        guard.erase(t->var_name);
        return;
    }
    }
}

} // namespace

std::vector<Move> term_moves(const TermPtr& t, const ProcessEnv& env) {
    std::vector<Move> out;
    std::set<std::string> guard;
    collect_moves(t, env, guard, out);
    return out;
}

} // namespace semproc
