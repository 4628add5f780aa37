#include "semproc/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace semproc {
namespace {

void strip_spaces(std::string_view& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
}

const SemiringPtr& require_same(const Weight& a, const Weight& b) {
    if (!a.valid() || !b.valid()) throw ToolkitError("uninitialised weight");
    if (!a.ring()->same_as(*b.ring())) throw MixedSemiringsError();
    return a.ring();
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
    if (a == Weight::kInfinity || b == Weight::kInfinity) return Weight::kInfinity;
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) return Weight::kInfinity;
    return out;
}

// Probabilistic product on the 1e-9 grid, truncated towards zero so that
// b x (a / b) never overshoots a.
std::int64_t grid_product(std::int64_t a, std::int64_t b) {
    const __int128 p = static_cast<__int128>(a) * static_cast<__int128>(b);
    return static_cast<std::int64_t>(p / Semiring::kScale);
}

std::string scaled_to_string(std::int64_t v) {
    if (v == Weight::kInfinity) return "inf";
    std::string whole = std::to_string(v / Semiring::kScale);
    std::int64_t frac = v % Semiring::kScale;
    if (frac == 0) return whole;
    std::string digits = std::to_string(frac);
    digits.insert(digits.begin(), 9 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    return whole + "." + digits;
}

std::int64_t parse_scaled(std::string_view text, bool allow_infinity) {
    if (text == "inf") {
        if (!allow_infinity) throw SyntaxError("'inf' is not a value of this semiring", 0);
        return Weight::kInfinity;
    }
    const auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw SyntaxError("empty numeric literal", 0);
    if (frac.size() > 9)
        throw SyntaxError("more than 9 fractional digits; the carrier is a 1e-9 grid", dot + 10);
    std::int64_t w = 0;
    if (!whole.empty()) {
        auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
        if (ec != std::errc{} || p != whole.data() + whole.size())
            throw SyntaxError("bad numeric literal", 0);
    }
    std::int64_t f = 0;
    if (!frac.empty()) {
        auto [p, ec] = std::from_chars(frac.data(), frac.data() + frac.size(), f);
        if (ec != std::errc{} || p != frac.data() + frac.size())
            throw SyntaxError("bad numeric literal", 0);
        for (std::size_t i = frac.size(); i < 9; ++i) f *= 10;
    }
    if (w > (Weight::kInfinity - f) / Semiring::kScale)
        throw SyntaxError("numeric literal out of range", 0);
    return w * Semiring::kScale + f;
}

// Splits "a,b" at the top-level comma, respecting nested parentheses.
std::pair<std::string_view, std::string_view> split_pair(std::string_view inner) {
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(') ++depth;
        else if (inner[i] == ')') --depth;
        else if (inner[i] == ',' && depth == 0)
            return {inner.substr(0, i), inner.substr(i + 1)};
    }
    throw SyntaxError("expected ',' in pair literal", 0);
}

} // namespace

Semiring::Semiring(SemiringPtr left, SemiringPtr right)
    : kind_(SemiringKind::product), left_(std::move(left)), right_(std::move(right)) {}

SemiringPtr Semiring::boolean() {
    static const SemiringPtr instance(new Semiring(SemiringKind::boolean));
    return instance;
}
SemiringPtr Semiring::fuzzy() {
    static const SemiringPtr instance(new Semiring(SemiringKind::fuzzy));
    return instance;
}
SemiringPtr Semiring::tropical() {
    static const SemiringPtr instance(new Semiring(SemiringKind::tropical));
    return instance;
}
SemiringPtr Semiring::probabilistic() {
    static const SemiringPtr instance(new Semiring(SemiringKind::probabilistic));
    return instance;
}
SemiringPtr Semiring::bottleneck() {
    static const SemiringPtr instance(new Semiring(SemiringKind::bottleneck));
    return instance;
}
SemiringPtr Semiring::product(SemiringPtr left, SemiringPtr right) {
    return SemiringPtr(new Semiring(std::move(left), std::move(right)));
}

SemiringPtr Semiring::parse(std::string_view text) {
    strip_spaces(text);
    if (text == "boolean") return boolean();
    if (text == "fuzzy") return fuzzy();
    if (text == "tropical") return tropical();
    if (text == "probabilistic") return probabilistic();
    if (text == "bottleneck") return bottleneck();
    if (text.starts_with("product(") && text.ends_with(")")) {
        auto inner = text.substr(8, text.size() - 9);
        auto [l, r] = split_pair(inner);
        return product(parse(l), parse(r));
    }
    throw SyntaxError("unknown semiring: " + std::string(text), 0);
}

bool Semiring::has_negation() const {
    switch (kind_) {
    case SemiringKind::boolean:
    case SemiringKind::fuzzy:
    case SemiringKind::probabilistic: return true;
    case SemiringKind::tropical:
    case SemiringKind::bottleneck: return false;
    case SemiringKind::product: return left_->has_negation() && right_->has_negation();
    }
    return false;
}

bool Semiring::times_idempotent() const {
    switch (kind_) {
    case SemiringKind::boolean:
    case SemiringKind::fuzzy:
    case SemiringKind::bottleneck: return true;
    case SemiringKind::tropical:
    case SemiringKind::probabilistic: return false;
    case SemiringKind::product: return left_->times_idempotent() && right_->times_idempotent();
    }
    return false;
}

bool Semiring::totally_ordered() const { return kind_ != SemiringKind::product; }

const SemiringPtr& Semiring::left() const {
    if (kind_ != SemiringKind::product) throw ToolkitError("not a product semiring");
    return left_;
}
const SemiringPtr& Semiring::right() const {
    if (kind_ != SemiringKind::product) throw ToolkitError("not a product semiring");
    return right_;
}

std::string Semiring::name() const {
    switch (kind_) {
    case SemiringKind::boolean: return "boolean";
    case SemiringKind::fuzzy: return "fuzzy";
    case SemiringKind::tropical: return "tropical";
    case SemiringKind::probabilistic: return "probabilistic";
    case SemiringKind::bottleneck: return "bottleneck";
    case SemiringKind::product: return "product(" + left_->name() + "," + right_->name() + ")";
    }
    return "?";
}

bool Semiring::same_as(const Semiring& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ != SemiringKind::product) return true;
    return left_->same_as(*other.left_) && right_->same_as(*other.right_);
}

Weight Semiring::top() const {
    auto self = shared_from_this();
    switch (kind_) {
    case SemiringKind::boolean: return Weight::scalar(self, 1);
    case SemiringKind::fuzzy:
    case SemiringKind::probabilistic: return Weight::scalar(self, kScale);
    case SemiringKind::tropical: return Weight::scalar(self, 0);
    case SemiringKind::bottleneck: return Weight::scalar(self, Weight::kInfinity);
    case SemiringKind::product: return Weight::make_pair(self, left_->top(), right_->top());
    }
    throw ToolkitError("bad semiring kind");
}

Weight Semiring::bottom() const {
    auto self = shared_from_this();
    switch (kind_) {
    case SemiringKind::boolean: return Weight::scalar(self, 0);
    case SemiringKind::fuzzy:
    case SemiringKind::probabilistic: return Weight::scalar(self, 0);
    case SemiringKind::tropical: return Weight::scalar(self, Weight::kInfinity);
    case SemiringKind::bottleneck: return Weight::scalar(self, 0);
    case SemiringKind::product: return Weight::make_pair(self, left_->bottom(), right_->bottom());
    }
    throw ToolkitError("bad semiring kind");
}

Weight Semiring::parse_weight(std::string_view literal) const {
    strip_spaces(literal);
    if (literal == "top") return top();
    if (literal == "bot") return bottom();
    auto self = shared_from_this();
    switch (kind_) {
    case SemiringKind::boolean:
        if (literal == "true") return Weight::scalar(self, 1);
        if (literal == "false") return Weight::scalar(self, 0);
        throw SyntaxError("expected true/false/top/bot, got '" + std::string(literal) + "'", 0);
    case SemiringKind::tropical: {
        if (literal == "inf") return Weight::scalar(self, Weight::kInfinity);
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), v);
        if (ec != std::errc{} || p != literal.data() + literal.size() || v < 0)
            throw SyntaxError("expected a natural number or 'inf', got '" + std::string(literal) + "'", 0);
        return Weight::scalar(self, v);
    }
    case SemiringKind::fuzzy:
    case SemiringKind::probabilistic: {
        std::int64_t v = parse_scaled(literal, false);
        if (v > kScale)
            throw SyntaxError("value out of [0,1]: '" + std::string(literal) + "'", 0);
        return Weight::scalar(self, v);
    }
    case SemiringKind::bottleneck:
        return Weight::scalar(self, parse_scaled(literal, true));
    case SemiringKind::product: {
        if (!literal.starts_with("(") || !literal.ends_with(")"))
            throw SyntaxError("expected (w1,w2) for a product weight", 0);
        auto [l, r] = split_pair(literal.substr(1, literal.size() - 2));
        return Weight::make_pair(self, left_->parse_weight(l), right_->parse_weight(r));
    }
    }
    throw ToolkitError("bad semiring kind");
}

Weight Weight::scalar(SemiringPtr ring, std::int64_t bits) {
    Weight w;
    w.ring_ = std::move(ring);
    w.bits_ = bits;
    return w;
}

Weight Weight::make_pair(SemiringPtr ring, Weight first, Weight second) {
    Weight w;
    w.ring_ = std::move(ring);
    w.pair_ = std::make_shared<const std::pair<Weight, Weight>>(std::move(first), std::move(second));
    return w;
}

bool Weight::is_top() const { return *this == ring_->top(); }
bool Weight::is_bottom() const { return *this == ring_->bottom(); }

std::string Weight::str() const {
    if (!ring_) return "<invalid>";
    switch (ring_->kind()) {
    case SemiringKind::boolean: return bits_ ? "true" : "false";
    case SemiringKind::tropical:
        return bits_ == kInfinity ? "inf" : std::to_string(bits_);
    case SemiringKind::fuzzy:
    case SemiringKind::probabilistic:
    case SemiringKind::bottleneck: return scaled_to_string(bits_);
    case SemiringKind::product: return "(" + pair_->first.str() + "," + pair_->second.str() + ")";
    }
    return "?";
}

bool operator==(const Weight& a, const Weight& b) { return compare_weights(a, b) == 0; }

int compare_weights(const Weight& a, const Weight& b) {
    require_same(a, b);
    if (a.ring()->kind() == SemiringKind::product) {
        int c = compare_weights(a.first(), b.first());
        if (c != 0) return c;
        return compare_weights(a.second(), b.second());
    }
    if (a.raw() < b.raw()) return -1;
    if (a.raw() > b.raw()) return 1;
    return 0;
}

Weight combine_plus(const Weight& a, const Weight& b) {
    const auto& ring = require_same(a, b);
    switch (ring->kind()) {
    case SemiringKind::boolean: return Weight::scalar(ring, a.raw() | b.raw());
    case SemiringKind::fuzzy:
    case SemiringKind::probabilistic:
    case SemiringKind::bottleneck: return Weight::scalar(ring, std::max(a.raw(), b.raw()));
    case SemiringKind::tropical: return Weight::scalar(ring, std::min(a.raw(), b.raw()));
    case SemiringKind::product:
        return Weight::make_pair(ring, combine_plus(a.first(), b.first()),
                                 combine_plus(a.second(), b.second()));
    }
    throw ToolkitError("bad semiring kind");
}

Weight combine_times(const Weight& a, const Weight& b) {
    const auto& ring = require_same(a, b);
    switch (ring->kind()) {
    case SemiringKind::boolean: return Weight::scalar(ring, a.raw() & b.raw());
    case SemiringKind::fuzzy:
    case SemiringKind::bottleneck: return Weight::scalar(ring, std::min(a.raw(), b.raw()));
    case SemiringKind::probabilistic: return Weight::scalar(ring, grid_product(a.raw(), b.raw()));
    case SemiringKind::tropical: return Weight::scalar(ring, saturating_add(a.raw(), b.raw()));
    case SemiringKind::product:
        return Weight::make_pair(ring, combine_times(a.first(), b.first()),
                                 combine_times(a.second(), b.second()));
    }
    throw ToolkitError("bad semiring kind");
}

bool leq(const Weight& a, const Weight& b) {
    const auto& ring = require_same(a, b);
    switch (ring->kind()) {
    case SemiringKind::boolean: return a.raw() <= b.raw();
    case SemiringKind::fuzzy:
    case SemiringKind::probabilistic:
    case SemiringKind::bottleneck: return a.raw() <= b.raw();
    case SemiringKind::tropical: return a.raw() >= b.raw();
    case SemiringKind::product: return leq(a.first(), b.first()) && leq(a.second(), b.second());
    }
    throw ToolkitError("bad semiring kind");
}

bool incomparable_or_equal(const Weight& a, const Weight& b) {
    if (a == b) return true;
    return !leq(a, b) && !leq(b, a);
}

Weight glb(const Weight& a, const Weight& b) {
    const auto& ring = require_same(a, b);
    if (ring->kind() == SemiringKind::product)
        return Weight::make_pair(ring, glb(a.first(), b.first()), glb(a.second(), b.second()));
    return leq(a, b) ? a : b;
}

Weight divide(const Weight& a, const Weight& b) {
    const auto& ring = require_same(a, b);
    switch (ring->kind()) {
    case SemiringKind::boolean:
        // max{x : b and x <= a}: unconstrained when b = false.
        return b.raw() == 0 ? ring->top() : a;
    case SemiringKind::fuzzy:
    case SemiringKind::bottleneck:
        // max{x : min(b,x) <= a}: unconstrained when b <= a, else a.
        return b.raw() <= a.raw() ? ring->top() : a;
    case SemiringKind::probabilistic: {
        if (b.raw() == 0) return ring->top();
        // Largest grid point x with floor(b*x) <= a.
        const __int128 num =
            (static_cast<__int128>(a.raw()) + 1) * Semiring::kScale - 1;
        const __int128 x = num / b.raw();
        return Weight::scalar(ring, static_cast<std::int64_t>(
                                        std::min<__int128>(x, Semiring::kScale)));
    }
    case SemiringKind::tropical: {
        if (b.raw() == Weight::kInfinity) return ring->top();
        if (a.raw() == Weight::kInfinity) return Weight::scalar(ring, Weight::kInfinity);
        return Weight::scalar(ring, a.raw() > b.raw() ? a.raw() - b.raw() : 0);
    }
    case SemiringKind::product:
        return Weight::make_pair(ring, divide(a.first(), b.first()),
                                 divide(a.second(), b.second()));
    }
    throw ToolkitError("bad semiring kind");
}

Weight negate(const Weight& a) {
    const auto& ring = a.ring();
    if (!ring) throw ToolkitError("uninitialised weight");
    if (!ring->has_negation()) throw NegationUndefinedError(ring->name());
    switch (ring->kind()) {
    case SemiringKind::boolean: return Weight::scalar(ring, a.raw() ? 0 : 1);
    case SemiringKind::fuzzy:
    case SemiringKind::probabilistic: return Weight::scalar(ring, Semiring::kScale - a.raw());
    case SemiringKind::product:
        return Weight::make_pair(ring, negate(a.first()), negate(a.second()));
    default: throw NegationUndefinedError(ring->name());
    }
}

Weight big_plus(const SemiringPtr& ring, std::span<const Weight> ws) {
    Weight acc = ring->bottom();
    for (const auto& w : ws) acc = combine_plus(acc, w);
    return acc;
}

Weight big_glb(const SemiringPtr& ring, std::span<const Weight> ws) {
    Weight acc = ring->top();
    for (const auto& w : ws) acc = glb(acc, w);
    return acc;
}

} // namespace semproc
