#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "semproc/errors.hpp"

namespace semproc {

/// The built-in c-semiring instances. All of them are commutative and
/// absorptive, so + is idempotent and induces the order a <= b iff a+b = b.
enum class SemiringKind {
    boolean,       ///< <{false,true}, or, and, false, true>
    fuzzy,         ///< <[0,1], max, min, 0, 1>
    tropical,      ///< <N u {inf}, min, +, inf, 0>
    probabilistic, ///< <[0,1], max, *, 0, 1>  (Viterbi)
    bottleneck,    ///< <R+ u {inf}, max, min, 0, inf>
    product,       ///< componentwise pair of two instances
};

class Semiring;
class Weight;
using SemiringPtr = std::shared_ptr<const Semiring>;

/// Descriptor of one semiring instance. Immutable; shared by the weights
/// carved from it. Product instances nest two child descriptors.
class Semiring : public std::enable_shared_from_this<Semiring> {
public:
    static SemiringPtr boolean();
    static SemiringPtr fuzzy();
    static SemiringPtr tropical();
    static SemiringPtr probabilistic();
    static SemiringPtr bottleneck();
    static SemiringPtr product(SemiringPtr left, SemiringPtr right);

    /// Parses a declaration such as "tropical" or "product(tropical,fuzzy)".
    static SemiringPtr parse(std::string_view text);

    SemiringKind kind() const { return kind_; }
    bool has_negation() const;
    bool times_idempotent() const;
    bool totally_ordered() const;

    const SemiringPtr& left() const;
    const SemiringPtr& right() const;

    std::string name() const;
    bool same_as(const Semiring& other) const;

    Weight top() const;
    Weight bottom() const;

    /// Parses a weight literal in this instance's syntax: integers and `inf`
    /// (tropical, bottleneck), decimals in [0,1] (fuzzy, probabilistic),
    /// `true`/`false` (boolean), `(w1,w2)` (product). `top`/`bot` always work.
    Weight parse_weight(std::string_view literal) const;

    /// Fuzzy, probabilistic and bottleneck carriers are a fixed decimal grid
    /// of this many steps per unit, so comparisons and idempotent operations
    /// stay exact.
    static constexpr std::int64_t kScale = 1'000'000'000;

private:
    explicit Semiring(SemiringKind kind) : kind_(kind) {}
    Semiring(SemiringPtr left, SemiringPtr right);

    SemiringKind kind_;
    SemiringPtr left_;
    SemiringPtr right_;
};

/// One element of a semiring carrier, tagged with its instance. Scalars are
/// stored exactly: booleans as bool, tropical values as non-negative integers
/// with an infinity sentinel, the decimal carriers as 1e-9-scaled integers.
class Weight {
public:
    Weight() = default;

    const SemiringPtr& ring() const { return ring_; }
    bool valid() const { return ring_ != nullptr; }

    bool is_top() const;
    bool is_bottom() const;

    /// Literal form accepted back by Semiring::parse_weight.
    std::string str() const;

    // Payload accessors; callers must know the kind.
    bool as_bool() const { return bits_ != 0; }
    std::int64_t raw() const { return bits_; }
    const Weight& first() const { return pair_->first; }
    const Weight& second() const { return pair_->second; }

    static constexpr std::int64_t kInfinity = INT64_MAX;

    static Weight scalar(SemiringPtr ring, std::int64_t bits);
    static Weight make_pair(SemiringPtr ring, Weight first, Weight second);

private:
    SemiringPtr ring_;
    std::int64_t bits_ = 0;
    std::shared_ptr<const std::pair<Weight, Weight>> pair_;
};

bool operator==(const Weight& a, const Weight& b);
inline bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }

/// Total structural order (payload-wise), used for deterministic containers.
/// It is unrelated to the semiring order.
int compare_weights(const Weight& a, const Weight& b);

struct WeightLess {
    bool operator()(const Weight& a, const Weight& b) const { return compare_weights(a, b) < 0; }
};

/// a + b, the optimising combination (lub of the induced order).
Weight combine_plus(const Weight& a, const Weight& b);

/// a x b, the sequential combination. Intensive: a x b <= a.
Weight combine_times(const Weight& a, const Weight& b);

/// The induced partial order: true iff a + b = b.
bool leq(const Weight& a, const Weight& b);

/// True iff a = b or a and b are incomparable in the induced order.
bool incomparable_or_equal(const Weight& a, const Weight& b);

/// Greatest lower bound in the induced lattice.
Weight glb(const Weight& a, const Weight& b);

/// Residuation: the maximum x with b x x <= a.
Weight divide(const Weight& a, const Weight& b);

/// Negation where the instance provides one (boolean, fuzzy, probabilistic).
/// Throws NegationUndefinedError otherwise.
Weight negate(const Weight& a);

/// Fold of combine_plus over a collection; the empty fold is bottom.
Weight big_plus(const SemiringPtr& ring, std::span<const Weight> ws);

/// Fold of glb over a collection; the empty fold is top.
Weight big_glb(const SemiringPtr& ring, std::span<const Weight> ws);

} // namespace semproc
