#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semproc {

// Base class for all errors raised by the toolkit.
class ToolkitError : public std::runtime_error {
public:
    explicit ToolkitError(const std::string& what) : std::runtime_error(what) {}
};

class MixedSemiringsError : public ToolkitError {
public:
    explicit MixedSemiringsError(const std::string& what = "weights belong to different semirings")
        : ToolkitError(what) {}
};

class NegationUndefinedError : public ToolkitError {
public:
    explicit NegationUndefinedError(const std::string& ring)
        : ToolkitError("negation is undefined for the " + ring + " semiring") {}
};

class NonConvergentError : public ToolkitError {
public:
    explicit NonConvergentError(const std::string& what) : ToolkitError(what) {}
};

class SyntaxError : public ToolkitError {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : ToolkitError(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnboundVariableError : public ToolkitError {
public:
    explicit UnboundVariableError(const std::string& name)
        : ToolkitError("unbound process variable: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class UnguardedRecursionError : public ToolkitError {
public:
    explicit UnguardedRecursionError(const std::string& name)
        : ToolkitError("unguarded recursion through process variable: " + name) {}
};

class StateLimitError : public ToolkitError {
public:
    explicit StateLimitError(std::size_t limit)
        : ToolkitError("state limit exceeded (" + std::to_string(limit) + " states)") {}
};

class TruncatedComparisonError : public ToolkitError {
public:
    explicit TruncatedComparisonError(
        const std::string& what = "trace enumeration was depth-truncated; comparison would be unsound")
        : ToolkitError(what) {}
};

class ExplosionGuardError : public ToolkitError {
public:
    explicit ExplosionGuardError(std::size_t cap)
        : ToolkitError("environment family exceeds the configured cap (" + std::to_string(cap) + ")") {}
};

class UnsupportedPartialOrderError : public ToolkitError {
public:
    explicit UnsupportedPartialOrderError(
        const std::string& what = "operation requires a totally ordered semiring")
        : ToolkitError(what) {}
};

class UnknownAlphaError : public ToolkitError {
public:
    explicit UnknownAlphaError(const std::string& name)
        : ToolkitError("unknown alpha transform: " + name) {}
};

class StateNotFoundError : public ToolkitError {
public:
    explicit StateNotFoundError(const std::string& what) : ToolkitError(what) {}
};

class UnknownCheckError : public ToolkitError {
public:
    explicit UnknownCheckError(std::size_t id)
        : ToolkitError("no check with id " + std::to_string(id)) {}
};

} // namespace semproc
