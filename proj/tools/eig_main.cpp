#include <iostream>

#include "CLI11.hpp"

#include "eig/harness.hpp"

namespace {

void add_common(CLI::App* cmd, eig::RunSpec& spec,
                std::vector<std::string>& overrides) {
    cmd->add_option("--seed", spec.seed, "PRNG seed");
    cmd->add_option("--out", spec.output_path, "result JSON path");
    cmd->add_option("--trace", spec.trace_path, "convergence trace CSV path");
    cmd->add_option("--set", overrides,
                    "config override key=value (repeatable)");
}

void collect_overrides(eig::RunSpec& spec, const std::vector<std::string>& items) {
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw eig::ParseError("override '" + item + "' is not key=value");
        spec.overrides[item.substr(0, eq)] = item.substr(eq + 1);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate top eigenvector of A^T A (offline) or E[aa^T] "
                 "(online) via the shifted-and-inverted power method"};
    app.require_subcommand(1);

    eig::RunSpec spec;
    std::vector<std::string> overrides;

    auto* offline = app.add_subcommand("offline", "sparse-rows instance");
    offline->add_option("--input", spec.input,
                        "Matrix Market path or synth:d=..,n=..,gap=.. generator")
        ->required();
    offline->add_option("--epsilon", spec.epsilon, "relative Rayleigh error target");
    offline->add_option("--solver", spec.solver, "svrg | accelerated");
    add_common(offline, spec, overrides);

    auto* online = app.add_subcommand("online", "sample-stream instance");
    online->add_option("--generator", spec.input,
                       "spike:d=..,lambda=.. generator or replay file path")
        ->required();
    long long samples = 0;
    online->add_option("--samples", samples, "total sample budget");
    online->add_option("--epsilon", spec.epsilon, "relative Rayleigh error target");
    online->add_option("--delta", spec.delta, "failure probability budget");
    add_common(online, spec, overrides);

    auto* shift = app.add_subcommand("estimate-shift", "run the shift search only");
    shift->add_option("--input", spec.input, "Matrix Market path or synth generator")
        ->required();
    shift->add_option("--alpha", spec.alpha, "block-power accuracy parameter (>100)");
    add_common(shift, spec, overrides);

    auto* bench = app.add_subcommand("bench",
                                     "compare svrg / accelerated / plain power");
    bench->add_option("--input", spec.input, "Matrix Market path or synth generator")
        ->required();
    bench->add_option("--epsilon", spec.epsilon, "relative Rayleigh error target");
    bench->add_option("--trials", spec.trials, "number of seeds");
    add_common(bench, spec, overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    spec.mode = offline->parsed()  ? "offline"
                : online->parsed() ? "online"
                : shift->parsed()  ? "estimate-shift"
                                   : "bench";
    if (online->parsed() && samples > 0) spec.samples = samples;

    try {
        collect_overrides(spec, overrides);
        nlohmann::json rec = eig::execute_run(spec);
        std::cout << rec.dump(2) << "\n";
        if (rec.contains("failed") && rec["failed"].get<bool>()) {
            std::cerr << "error: run did not converge; see diagnostics in the result"
                      << "\n";
            return 1;
        }
        return 0;
    } catch (const eig::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const eig::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
