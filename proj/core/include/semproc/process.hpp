#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semproc/semiring.hpp"

namespace semproc {

/// Action names are plain identifiers; the internal action is spelt "tau".
using Action = std::string;
inline const Action kTau = "tau";
inline bool is_tau(const Action& a) { return a == kTau; }

using ActionSet = std::set<Action>;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Abstract syntax of GPA process terms. Immutable; shared freely.
struct Term {
    enum class Kind { nil, prefix, choice, parallel, hide, restrict_, var };

    Kind kind = Kind::nil;

    // prefix
    Action action;
    std::optional<Weight> weight;
    TermPtr cont;

    // choice
    std::vector<TermPtr> branches;

    // parallel / hide / restrict: `set` is the sync, hidden or forbidden set
    ActionSet set;
    TermPtr left;
    TermPtr right;

    // var
    std::string var_name;

    static TermPtr nil();
    static TermPtr prefix(Action a, Weight w, TermPtr cont);
    static TermPtr choice(std::vector<TermPtr> branches);
    static TermPtr parallel(ActionSet sync, TermPtr left, TermPtr right);
    static TermPtr hide(ActionSet hidden, TermPtr body);
    static TermPtr restrict(ActionSet forbidden, TermPtr body);
    static TermPtr var(std::string name);
};

/// Named co-recursive definitions X = P.
class ProcessEnv {
public:
    void define(const std::string& name, TermPtr body);
    const TermPtr* lookup(const std::string& name) const;
    const std::map<std::string, TermPtr>& definitions() const { return defs_; }

private:
    std::map<std::string, TermPtr> defs_;
};

/// Parses the concrete process grammar:
///   term := "0" | "(" name "," weight ")" "." term | term "+" term
///         | term "|[" names "]|" term | term "\" "{" names "}"
///         | term "/" "{" names "}" | IDENT
/// Prefix binds tighter than +, + tighter than parallel; hiding and
/// restriction are postfix on the closest factor. Weights use `ring`'s
/// literal syntax. Every free identifier must resolve in `env` when one is
/// given.
TermPtr parse_process(std::string_view text, const SemiringPtr& ring,
                      const ProcessEnv* env = nullptr);

/// Round-trips through parse_process.
std::string print_term(const Term& t);

/// Action names syntactically appearing in the term (through variables),
/// tau excluded.
ActionSet sort_actions(const TermPtr& t, const ProcessEnv& env);

/// Structural normal form used for state identity: nested choices are
/// flattened, nil branches dropped, branches sorted and deduplicated, empty
/// hide/restrict sets erased. Variables are kept unexpanded.
TermPtr canonical(const TermPtr& t);

/// One outgoing transition of a term under the operational rules, before
/// target-level aggregation.
struct Move {
    Action action;
    Weight weight;
    TermPtr target;
};

/// All transitions of `t` (targets not canonicalised, duplicates possible).
/// Throws UnboundVariableError / UnguardedRecursionError.
std::vector<Move> term_moves(const TermPtr& t, const ProcessEnv& env);

} // namespace semproc
