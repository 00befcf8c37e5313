#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "eig/baseline.hpp"
#include "eig/online.hpp"
#include "eig/power.hpp"

namespace eig {

/// Everything needed to reproduce a run. Serializes losslessly to JSON.
struct RunSpec {
    std::string mode;  ///< offline | online | estimate-shift | bench
    std::string input; ///< Matrix Market / replay path, or a generator spec
    double epsilon = 1e-6;
    double delta = 0.1;
    std::string solver = "svrg"; ///< svrg (alias plain) | accelerated
    std::uint64_t seed = 0;
    std::optional<long long> samples; ///< online sample budget
    double alpha = 200.0;             ///< shift-search accuracy parameter
    int trials = 5;                   ///< bench mode seeds
    std::string output_path;          ///< JSON result sink ("" = stdout only)
    std::string trace_path;           ///< CSV convergence trace ("" = none)
    std::map<std::string, std::string> overrides; ///< flat key=value tuning

    void validate() const;
};

nlohmann::json to_json(const RunSpec& spec);
RunSpec run_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolverReport& r);
nlohmann::json to_json(const EigenResult& r);
nlohmann::json to_json(const ShiftSearchResult& r);

/// Generator mini-grammar: "kind:key=value,key=value". Unknown keys are hard
/// errors. Kinds: "synth" (offline instance; keys d, n, gap, tail, seed) and
/// "spike" (online stream; keys d, lambda, seed).
struct GeneratorSpec {
    std::string kind;
    std::map<std::string, double> params;
};
GeneratorSpec parse_generator(const std::string& text);

/// Offline instance from a path (Matrix Market) or a "synth:..." generator.
DataMatrix load_instance(const std::string& input);

/// Online stream from a "spike:..." generator or a replay file
/// (.bin -> binary, anything else -> CSV).
std::unique_ptr<SampleStream> open_stream(const std::string& input,
                                          std::uint64_t seed);

/// Executes the run described by spec and returns the full RunRecord
/// (resolved config, timings, counters, result payload). Also writes the
/// JSON/CSV artifacts when paths are set.
nlohmann::json execute_run(const RunSpec& spec);

/// Result JSON with the "timings" key removed: the reproducibility contract
/// is byte-identity of this projection for identical spec + seed.
std::string stable_record_string(const nlohmann::json& record);

/// Trial-level worker pool; honors EIG_THREADS, merges by trial index.
void parallel_trials(int trials, const std::function<void(int)>& body);

} // namespace eig
