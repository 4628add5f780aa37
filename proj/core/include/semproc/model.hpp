#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semproc/equiv.hpp"
#include "semproc/formula.hpp"
#include "semproc/gndc.hpp"
#include "semproc/process.hpp"

namespace semproc {

/// One `check ...` directive, kept close to its source text for reporting.
struct CheckSpec {
    enum class Kind { eval, trace, equiv, sat, pmc_theorem, gndc };

    Kind kind{};
    std::size_t id = 0;     // 1-based position in the file
    std::string source;     // the directive as written

    // eval / trace
    TermPtr process;
    std::size_t trace_depth = kDefaultDepthLimit;

    // equiv
    TermPtr other;
    RelationKind relation{};
    std::optional<Weight> epsilon;

    // sat
    FormulaPtr formula;
    std::optional<Weight> threshold;

    // pmc-theorem
    ActionSet sync_set;

    // gndc
    GndcSpec gndc;
};

/// A parsed model file: one semiring, named processes and formulas, and an
/// ordered list of checks.
struct ModelFile {
    SemiringPtr ring;
    ProcessEnv env;
    std::map<std::string, FormulaPtr> formulas;
    std::vector<CheckSpec> checks;
};

ModelFile parse_model_text(const std::string& text);
ModelFile parse_model_file(const std::string& path);

struct RunFlags {
    bool json = false;
    bool timings = false;
    std::optional<std::size_t> limit_states;
    std::optional<std::size_t> limit_depth;
    std::uint64_t seed = 0;
};

struct CheckOutcome {
    enum class Status { holds, fails, error };

    std::size_t id = 0;
    std::string kind;
    std::string inputs;
    Status status = Status::error;
    std::map<std::string, std::string> fields;
    double wall_ms = 0.0;
};

struct Report {
    std::string semiring;
    std::vector<CheckOutcome> checks;
    std::size_t holds = 0, fails = 0, errors = 0;
};

/// Executes every check in order; a failing or erroring check never aborts
/// the rest.
Report run_model(const ModelFile& model, const RunFlags& flags);

/// 0 when every check holds, 1 when some check reports holds = false,
/// 2 when any check errored.
int report_exit_code(const Report& report);

std::string render_text(const Report& report, const RunFlags& flags);
std::string render_json(const Report& report, const RunFlags& flags);

/// Textual derivation for one check: the systems built, per-state formula
/// values, residual formulas, trace differences, witness environments.
std::string explain_check(const ModelFile& model, const RunFlags& flags, std::size_t check_id);

} // namespace semproc
