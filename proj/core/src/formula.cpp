#include "semproc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

namespace semproc {

FormulaPtr Formula::constant(Weight w) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::constant;
    f->value = std::move(w);
    return f;
}

namespace {
FormulaPtr binary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}
FormulaPtr modal(Formula::Kind k, Action a, FormulaPtr sub) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->action = std::move(a);
    f->sub = std::move(sub);
    return f;
}
} // namespace

FormulaPtr Formula::plus(FormulaPtr a, FormulaPtr b) { return binary(Kind::plus, std::move(a), std::move(b)); }
FormulaPtr Formula::times(FormulaPtr a, FormulaPtr b) { return binary(Kind::times, std::move(a), std::move(b)); }
FormulaPtr Formula::glb_of(FormulaPtr a, FormulaPtr b) { return binary(Kind::glb, std::move(a), std::move(b)); }
FormulaPtr Formula::diamond(Action a, FormulaPtr f) { return modal(Kind::diamond, std::move(a), std::move(f)); }
FormulaPtr Formula::box(Action a, FormulaPtr f) { return modal(Kind::box, std::move(a), std::move(f)); }
FormulaPtr Formula::neg(FormulaPtr f) {
    auto out = std::make_shared<Formula>();
    out->kind = Kind::neg;
    out->sub = std::move(f);
    return out;
}

namespace {

class FormulaParser {
public:
    FormulaParser(std::string_view text, SemiringPtr ring)
        : text_(text), ring_(std::move(ring)) {}

    FormulaPtr parse() {
        auto f = parse_plus();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("trailing input after formula", pos_);
        return f;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    SemiringPtr ring_;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
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
        if (pos_ == start) throw SyntaxError("expected an action name", pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    FormulaPtr parse_plus() {
        auto lhs = parse_glb();
        while (peek('+')) {
            ++pos_;
            lhs = Formula::plus(std::move(lhs), parse_glb());
        }
        return lhs;
    }

    FormulaPtr parse_glb() {
        auto lhs = parse_times();
        while (peek('&')) {
            ++pos_;
            lhs = Formula::glb_of(std::move(lhs), parse_times());
        }
        return lhs;
    }

    FormulaPtr parse_times() {
        auto lhs = parse_unary();
        while (peek('*')) {
            ++pos_;
            lhs = Formula::times(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    FormulaPtr parse_unary() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of formula", pos_);
        char c = text_[pos_];
        if (c == '<') {
            ++pos_;
            std::string a = parse_ident();
            expect('>');
            return Formula::diamond(std::move(a), parse_unary());
        }
        if (c == '[') {
            ++pos_;
            std::string a = parse_ident();
            expect(']');
            return Formula::box(std::move(a), parse_unary());
        }
        if (c == '!') {
            if (!ring_->has_negation()) throw NegationUndefinedError(ring_->name());
            ++pos_;
            return Formula::neg(parse_unary());
        }
        if (c == '(') {
            // Either a grouped formula or a product-weight literal; a weight
            // literal never starts with the formula-only tokens.
            std::size_t save = pos_;
            if (ring_->kind() == SemiringKind::product) {
                std::size_t end = matching_paren(save);
                try {
                    Weight w = ring_->parse_weight(text_.substr(save, end - save + 1));
                    pos_ = end + 1;
                    return Formula::constant(std::move(w));
                } catch (const SyntaxError&) {
                    pos_ = save;
                }
            }
            ++pos_;
            auto f = parse_plus();
            expect(')');
            return f;
        }
        return parse_weight_literal();
    }

    std::size_t matching_paren(std::size_t open) {
        int depth = 0;
        for (std::size_t i = open; i < text_.size(); ++i) {
            if (text_[i] == '(') ++depth;
            if (text_[i] == ')' && --depth == 0) return i;
        }
        throw SyntaxError("unbalanced parentheses", open);
    }

    FormulaPtr parse_weight_literal() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_')
                ++pos_;
            else
                break;
        }
        if (pos_ == start) throw SyntaxError("expected a weight literal", pos_);
        return Formula::constant(ring_->parse_weight(text_.substr(start, pos_ - start)));
    }
};

int formula_precedence(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::plus: return 0;
    case Formula::Kind::glb: return 1;
    case Formula::Kind::times: return 2;
    default: return 3;
    }
}

std::string print_child(const Formula& child, int min_prec) {
    std::string s = print_formula(child);
    if (formula_precedence(child.kind) < min_prec) return "(" + s + ")";
    return s;
}

} // namespace

FormulaPtr parse_formula(std::string_view text, const SemiringPtr& ring) {
    return FormulaParser(text, ring).parse();
}

std::string print_formula(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::constant: return f.value->str();
    case Formula::Kind::plus:
        return print_child(*f.lhs, 0) + " + " + print_child(*f.rhs, 1);
    case Formula::Kind::glb:
        return print_child(*f.lhs, 1) + " & " + print_child(*f.rhs, 2);
    case Formula::Kind::times:
        return print_child(*f.lhs, 2) + " * " + print_child(*f.rhs, 3);
    case Formula::Kind::diamond: return "<" + f.action + ">" + print_child(*f.sub, 3);
    case Formula::Kind::box: return "[" + f.action + "]" + print_child(*f.sub, 3);
    case Formula::Kind::neg: return "!" + print_child(*f.sub, 3);
    }
    return "?";
}

std::size_t formula_size(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::constant: return 1;
    case Formula::Kind::plus:
    case Formula::Kind::times:
    case Formula::Kind::glb: return 1 + formula_size(*f.lhs) + formula_size(*f.rhs);
    default: return 1 + formula_size(*f.sub);
    }
}

std::size_t formula_depth(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::constant: return 1;
    case Formula::Kind::plus:
    case Formula::Kind::times:
    case Formula::Kind::glb:
        return 1 + std::max(formula_depth(*f.lhs), formula_depth(*f.rhs));
    default: return 1 + formula_depth(*f.sub);
    }
}

namespace {

Weight evaluate_memo(const Formula* phi, const Mlts& m, StateId s,
                     std::map<std::pair<const Formula*, StateId>, Weight>& memo) {
    auto key = std::make_pair(phi, s);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    Weight out;
    switch (phi->kind) {
    case Formula::Kind::constant:
        if (!phi->value->ring()->same_as(*m.ring)) throw MixedSemiringsError();
        out = *phi->value;
        break;
    case Formula::Kind::plus:
        out = combine_plus(evaluate_memo(phi->lhs.get(), m, s, memo),
                           evaluate_memo(phi->rhs.get(), m, s, memo));
        break;
    case Formula::Kind::times:
        out = combine_times(evaluate_memo(phi->lhs.get(), m, s, memo),
                            evaluate_memo(phi->rhs.get(), m, s, memo));
        break;
    case Formula::Kind::glb:
        out = glb(evaluate_memo(phi->lhs.get(), m, s, memo),
                  evaluate_memo(phi->rhs.get(), m, s, memo));
        break;
    case Formula::Kind::diamond:
    case Formula::Kind::box: {
        const bool is_box = phi->kind == Formula::Kind::box;
        out = is_box ? m.ring->top() : m.ring->bottom();
        auto row = m.out[s].find(phi->action);
        if (row != m.out[s].end()) {
            for (const auto& [target, w] : row->second) {
                Weight v = combine_times(w, evaluate_memo(phi->sub.get(), m, target, memo));
                out = is_box ? glb(out, v) : combine_plus(out, v);
            }
        }
        break;
    }
    case Formula::Kind::neg:
        out = negate(evaluate_memo(phi->sub.get(), m, s, memo));
        break;
    }
    memo.emplace(key, out);
    return out;
}

} // namespace

Weight evaluate(const FormulaPtr& phi, const Mlts& m, StateId s) {
    if (s >= m.num_states())
        throw StateNotFoundError("state " + std::to_string(s) + " is not in the system");
    std::map<std::pair<const Formula*, StateId>, Weight> memo;
    return evaluate_memo(phi.get(), m, s, memo);
}

Mlts project(const Mlts& m, const TermPtr& p, const ProcessEnv& env) {
    Mlts der = build_mlts(p, env, m.ring);
    std::set<std::string> keep_names(der.state_names.begin(), der.state_names.end());
    ActionSet sort = sort_actions(p, env);

    if (m.num_states() == 0)
        throw StateNotFoundError("the process's initial state is absent from the system");

    std::map<StateId, StateId> remap;
    Mlts out;
    out.ring = m.ring;
    for (StateId s = 0; s < m.num_states(); ++s) {
        // The projected process shares the system's initial state.
        if (s != m.initial && !keep_names.count(m.state_names[s])) continue;
        remap[s] = out.state_names.size();
        out.state_names.push_back(m.state_names[s]);
        out.out.emplace_back();
    }
    out.initial = remap.at(m.initial);
    for (const auto& [old_id, new_id] : remap) {
        for (const auto& [a, row] : m.out[old_id]) {
            if (!is_tau(a) && !sort.count(a)) continue;
            for (const auto& [target, w] : row) {
                auto t = remap.find(target);
                if (t == remap.end()) continue;
                out.out[new_id][a].emplace(t->second, w);
                out.actions.insert(a);
            }
        }
    }
    return out;
}

SatisfactionResult satisfies(const ThresholdQuery& q) {
    const SemiringPtr& ring = q.threshold.ring();
    ProcessEnv empty;
    const ProcessEnv& env = q.env ? *q.env : empty;
    Mlts m = build_mlts(q.process, env, ring, q.state_limit);
    Mlts projected = project(m, q.process, env);
    Weight value = evaluate(q.formula, projected, projected.initial);
    return {leq(q.threshold, value), value};
}

} // namespace semproc
