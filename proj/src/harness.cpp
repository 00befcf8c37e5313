#include "eig/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include "eig/dense.hpp"
#include "eig/mmio.hpp"
#include "eig/synth.hpp"

namespace eig {

using nlohmann::json;

void RunSpec::validate() const {
    static const std::set<std::string> modes{"offline", "online", "estimate-shift",
                                            "bench"};
    if (!modes.count(mode)) throw Error("unknown mode: " + mode);
    if (input.empty()) throw Error("mode " + mode + " requires an input");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must be in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must be in (0, 1)");
    if (solver != "svrg" && solver != "plain" && solver != "accelerated" &&
        solver != "dense")
        throw Error("unknown solver: " + solver);
    if (mode == "bench" && trials < 1) throw Error("bench needs trials >= 1");
}

json to_json(const RunSpec& spec) {
    json j;
    j["mode"] = spec.mode;
    j["input"] = spec.input;
    j["epsilon"] = spec.epsilon;
    j["delta"] = spec.delta;
    j["solver"] = spec.solver;
    j["seed"] = spec.seed;
    if (spec.samples) j["samples"] = *spec.samples;
    j["alpha"] = spec.alpha;
    j["trials"] = spec.trials;
    j["overrides"] = spec.overrides;
    return j;
}

RunSpec run_spec_from_json(const json& j) {
    RunSpec s;
    s.mode = j.at("mode").get<std::string>();
    s.input = j.at("input").get<std::string>();
    s.epsilon = j.value("epsilon", 1e-6);
    s.delta = j.value("delta", 0.1);
    s.solver = j.value("solver", std::string("svrg"));
    s.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("samples")) s.samples = j["samples"].get<long long>();
    s.alpha = j.value("alpha", 200.0);
    s.trials = j.value("trials", 5);
    if (j.contains("overrides"))
        s.overrides = j["overrides"].get<std::map<std::string, std::string>>();
    return s;
}

json to_json(const SolverReport& r) {
    return json{{"epochs_run", r.epochs_run},
                {"inner_steps_total", r.inner_steps_total},
                {"full_gradient_count", r.full_gradient_count},
                {"outer_iterations", r.outer_iterations},
                {"gamma_floored", r.gamma_floored},
                {"final_b_norm_residual_proxy", r.final_b_norm_residual_proxy}};
}

json to_json(const EigenResult& r) {
    json j;
    j["vector"] = r.vector;
    j["rayleigh"] = r.rayleigh;
    if (r.alignment_lower_bound)
        j["alignment_lower_bound"] = *r.alignment_lower_bound;
    else
        j["alignment_lower_bound"] = nullptr;
    j["shift_used"] = r.shift_used;
    j["lambda1_estimate"] = r.lambda1_estimate;
    j["gap_estimate"] = r.gap_estimate;
    j["burn_in_iterations"] = r.burn_in_iterations;
    j["warm_iterations_run"] = r.warm_iterations_run;
    j["accepted_count"] = r.accepted_count;
    j["rejected_count"] = r.rejected_count;
    j["converged"] = r.converged;
    j["samples_consumed"] = r.samples_consumed;
    j["diagnostics"] = r.diagnostics;
    j["report"] = to_json(r.report);
    return j;
}

json to_json(const ShiftSearchResult& r) {
    json hist = json::array();
    for (const auto& h : r.history)
        hist.push_back(json{{"lambda_bar", h.lambda_bar},
                            {"lambda_tilde_1", h.lambda_tilde_1},
                            {"lambda_tilde_2", h.lambda_tilde_2}});
    return json{{"lambda_bar", r.lambda_bar},
                {"lambda_tilde_1", r.lambda_tilde_1},
                {"lambda_tilde_2", r.lambda_tilde_2},
                {"gap_estimate", r.gap_estimate()},
                {"iterations", r.iterations},
                {"history", hist}};
}

GeneratorSpec parse_generator(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("generator spec needs 'kind:'");
    GeneratorSpec g;
    g.kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string item = rest.substr(pos, comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("generator item '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        try {
            std::size_t used = 0;
            g.params[key] = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw ParseError("generator value for '" + key + "' is not a number");
        }
        pos = comma + 1;
    }
    return g;
}

namespace {

void check_keys(const GeneratorSpec& g, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : g.params)
        if (!allowed.count(k))
            throw ParseError("unknown generator key '" + k + "' for kind '" + g.kind +
                             "'");
}

double get_or(const GeneratorSpec& g, const std::string& key, double fallback) {
    auto it = g.params.find(key);
    return it == g.params.end() ? fallback : it->second;
}

double parse_override_number(const std::string& key, const std::string& val) {
    try {
        std::size_t used = 0;
        double x = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        return x;
    } catch (const std::exception&) {
        throw Error("override '" + key + "' needs a numeric value, got '" + val + "'");
    }
}

void apply_power_overrides(PowerConfig& cfg,
                           const std::map<std::string, std::string>& ov) {
    for (const auto& [k, v] : ov) {
        const double x = parse_override_number(k, v);
        if (k == "eta_scale")
            cfg.solver_eta_scale = x;
        else if (k == "m_scale")
            cfg.solver_m_scale = x;
        else if (k == "shift_band_scale")
            cfg.shift_band_scale = x;
        else if (k == "burn_in_iterations")
            cfg.burn_in_iterations = static_cast<int>(x);
        else if (k == "burn_in_halvings")
            cfg.burn_in_halvings = static_cast<int>(x);
        else if (k == "warm_iterations")
            cfg.warm_iterations = static_cast<int>(x);
        else if (k == "faithful_constants")
            cfg.faithful_constants = x != 0.0;
        else if (k == "t_constant")
            cfg.shift.t_constant = x;
        else if (k == "shift_override")
            cfg.shift_override = x;
        else if (k == "lambda1_override")
            cfg.lambda1_override = x;
        else if (k == "gap_override")
            cfg.gap_override = x;
        else
            throw Error("unknown override key: " + k);
    }
}

void apply_online_overrides(OnlinePowerConfig& cfg, long long& pilot_samples,
                            const std::map<std::string, std::string>& ov) {
    for (const auto& [k, v] : ov) {
        const double x = parse_override_number(k, v);
        if (k == "c2")
            cfg.solver.c2 = x;
        else if (k == "c3")
            cfg.solver.c3 = x;
        else if (k == "rq_batch_constant")
            cfg.solver.rq_batch_constant = x;
        else if (k == "rq_budget_share")
            cfg.rq_budget_share = x;
        else if (k == "max_iterations")
            cfg.max_iterations = static_cast<int>(x);
        else if (k == "pilot_samples")
            pilot_samples = static_cast<long long>(x);
        else
            throw Error("unknown override key: " + k);
    }
}

} // namespace

DataMatrix load_instance(const std::string& input) {
    if (input.rfind("synth:", 0) == 0) {
        GeneratorSpec g = parse_generator(input);
        check_keys(g, {"d", "n", "gap", "tail", "seed"});
        SynthSpec s;
        s.d = static_cast<std::size_t>(get_or(g, "d", 20));
        s.n = static_cast<std::size_t>(get_or(g, "n", static_cast<double>(2 * s.d)));
        s.spectrum = gapped_spectrum(s.d, get_or(g, "gap", 0.3), get_or(g, "tail", 0.01));
        s.seed = static_cast<std::uint64_t>(get_or(g, "seed", 0));
        return synth_instance(s);
    }
    if (input.find(':') != std::string::npos && input.find('/') == std::string::npos &&
        input.find('\\') == std::string::npos)
        throw Error("generator kind not usable as an offline instance: " + input);
    return read_matrix_market_file(input);
}

std::unique_ptr<SampleStream> open_stream(const std::string& input,
                                          std::uint64_t seed) {
    if (input.rfind("spike:", 0) == 0) {
        GeneratorSpec g = parse_generator(input);
        check_keys(g, {"d", "lambda", "seed"});
        const auto d = static_cast<std::size_t>(get_or(g, "d", 20));
        SpikeModelParams p;
        p.lambda_s = get_or(g, "lambda", 9.0);
        p.seed = static_cast<std::uint64_t>(get_or(g, "seed",
                                                   static_cast<double>(seed)));
        Rng dir_rng(p.seed + 0x9e3779b97f4a7c15ull);
        p.v_star = random_unit_init(d, dir_rng);
        return std::make_unique<SpikeStream>(p);
    }
    if (input.size() > 4 && input.substr(input.size() - 4) == ".bin")
        return ReplayStream::from_binary_file(input);
    return ReplayStream::from_csv_file(input);
}

void parallel_trials(int trials, const std::function<void(int)>& body) {
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("EIG_THREADS")) {
        try {
            threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw Error("EIG_THREADS must be an integer");
        }
    }
    threads = std::min(threads, trials);
    if (threads <= 1) {
        for (int t = 0; t < trials; ++t) body(t);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
                    body(t);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

namespace {

struct TraceRow {
    int iteration;
    double g_proxy;
    double rayleigh_error;
    long long cumulative_work;
};

void write_trace(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open trace file: " + path);
    out << "iteration,g_proxy,rayleigh_error,cumulative_inner_steps\n";
    char buf[64];
    for (const auto& r : rows) {
        out << r.iteration << ",";
        std::snprintf(buf, sizeof(buf), "%.10g", r.g_proxy);
        out << buf << ",";
        std::snprintf(buf, sizeof(buf), "%.10g", r.rayleigh_error);
        out << buf << "," << r.cumulative_work << "\n";
    }
}

long long row_access_estimate(const SolverReport& rep, const DataMatrix& A) {
    const double avg_row = static_cast<double>(A.nnz()) /
                           static_cast<double>(std::max<std::size_t>(A.rows(), 1));
    return rep.full_gradient_count * static_cast<long long>(A.nnz()) +
           static_cast<long long>(
               static_cast<double>(rep.inner_steps_total) *
               (static_cast<double>(A.cols()) + avg_row));
}

json run_offline(const RunSpec& spec) {
    DataMatrix A = load_instance(spec.input);
    PowerConfig cfg;
    cfg.target_epsilon = spec.epsilon;
    cfg.solver_choice = spec.solver == "plain" ? "svrg" : spec.solver;
    cfg.seed = spec.seed;
    cfg.shift.alpha = spec.alpha;
    apply_power_overrides(cfg, spec.overrides);

    std::vector<TraceRow> trace;
    if (!spec.trace_path.empty()) {
        cfg.warm_observer = [&](int it, const Vec& x, bool /*accepted*/,
                                const SolverReport& rep) {
            const double rq = rayleigh_quotient(A, x);
            // the iterate is unit norm, so lambda1_hat - rq proxies the error
            trace.push_back({it, 0.0, rq, rep.inner_steps_total});
        };
    }

    EigenResult res = top_eigenvector_offline(A, cfg);
    if (!spec.trace_path.empty()) {
        const double mu_hat = res.shift_used - res.lambda1_estimate;
        for (auto& row : trace) {
            const double err = std::max(res.lambda1_estimate - row.rayleigh_error, 0.0);
            row.g_proxy = mu_hat > 0.0 ? std::sqrt(err / mu_hat) : 0.0;
            row.rayleigh_error = err;
        }
        write_trace(spec.trace_path, trace);
    }

    json rec;
    rec["result"] = to_json(res);
    rec["counters"] = json{{"row_access_estimate", row_access_estimate(res.report, A)},
                           {"nnz", A.nnz()},
                           {"rows", A.rows()},
                           {"cols", A.cols()}};
    if (!res.converged) rec["failed"] = true;
    return rec;
}

json run_estimate_shift(const RunSpec& spec) {
    DataMatrix A = load_instance(spec.input);
    ShiftSearchConfig cfg;
    cfg.alpha = spec.alpha;
    Rng rng(spec.seed);
    ShiftSearchResult res = [&] {
        if (A.cols() <= 512) {
            DenseShiftedOracle oracle;
            return estimate_shift(A, cfg, oracle, rng);
        }
        SvrgShiftedOracle oracle;
        return estimate_shift(A, cfg, oracle, rng);
    }();
    json rec;
    rec["result"] = to_json(res);
    return rec;
}

json run_online(const RunSpec& spec) {
    auto stream = open_stream(spec.input, spec.seed);
    const std::size_t d = stream->dim();

    OnlinePowerConfig cfg;
    cfg.target_epsilon = spec.epsilon;
    cfg.delta = spec.delta;
    long long pilot_samples = 2000;
    apply_online_overrides(cfg, pilot_samples, spec.overrides);
    if (spec.samples) pilot_samples = std::min(pilot_samples, *spec.samples / 5);
    pilot_samples = std::max<long long>(pilot_samples,
                                        static_cast<long long>(10 * d));

    // pilot: offline run on the buffered prefix supplies lambda, lambda1_hat
    // and the warm start the online theorems assume as inputs
    std::vector<Vec> prefix(static_cast<std::size_t>(pilot_samples));
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(pilot_samples));
    for (auto& row : prefix) {
        stream->next(row);
        scale(row, inv_sqrt);
    }
    DataMatrix P = DataMatrix::from_dense_rows(prefix, d);
    PowerConfig pilot_cfg;
    pilot_cfg.target_epsilon = 1e-4;
    pilot_cfg.solver_choice = d <= 512 ? "dense" : "svrg";
    pilot_cfg.seed = spec.seed + 1;
    EigenResult pilot = top_eigenvector_offline(P, pilot_cfg);

    const double lambda1_hat = pilot.lambda1_estimate;
    const double gap_hat = std::max(pilot.gap_estimate, 1e-6);
    const double lambda = lambda1_hat * (1.0 + 0.5 * gap_hat);
    if (spec.samples)
        cfg.sample_budget = std::max<long long>(1000, *spec.samples - pilot_samples);

    Rng rng(spec.seed + 2);
    EigenResult res = top_eigenvector_online(*stream, pilot.vector, lambda,
                                             lambda1_hat, cfg, rng);
    res.gap_estimate = gap_hat;
    res.samples_consumed = stream->samples_drawn();

    json rec;
    rec["result"] = to_json(res);
    rec["counters"] = json{{"samples_total", stream->samples_drawn()},
                           {"pilot_samples", pilot_samples}};
    if (!res.converged) rec["failed"] = true;
    return rec;
}

json run_bench(const RunSpec& spec) {
    DataMatrix A = load_instance(spec.input);

    // reference lambda1 from the dense oracle when feasible
    std::optional<double> lambda1_ref;
    if (A.cols() <= 512)
        lambda1_ref = jacobi_eigensym(dense_gram(A)).values[0];

    struct Entry {
        std::string method;
        int trial;
        double rayleigh;
        long long row_accesses;
        double seconds;
    };
    const std::vector<std::string> methods{"svrg", "accelerated", "baseline-power"};
    std::vector<Entry> table(static_cast<std::size_t>(spec.trials) * methods.size());

    parallel_trials(spec.trials, [&](int t) {
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const auto& method = methods[mi];
            const auto start = std::chrono::steady_clock::now();
            EigenResult res;
            if (method == "baseline-power") {
                Rng rng(spec.seed + static_cast<std::uint64_t>(t));
                res = baseline_power_method(A, 200, rng);
                res.report.full_gradient_count = 200;
            } else {
                PowerConfig cfg;
                cfg.target_epsilon = spec.epsilon;
                cfg.solver_choice = method;
                cfg.seed = spec.seed + static_cast<std::uint64_t>(t);
                apply_power_overrides(cfg, spec.overrides);
                res = top_eigenvector_offline(A, cfg);
            }
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            table[static_cast<std::size_t>(t) * methods.size() + mi] =
                Entry{method, t, res.rayleigh, row_access_estimate(res.report, A),
                      secs};
        }
    });

    json rows = json::array();
    for (const auto& e : table) {
        json r{{"method", e.method},
               {"trial", e.trial},
               {"rayleigh", e.rayleigh},
               {"row_access_estimate", e.row_accesses},
               {"seconds", e.seconds}};
        if (lambda1_ref) r["rayleigh_error"] = std::max(*lambda1_ref - e.rayleigh, 0.0);
        rows.push_back(r);
    }
    json rec;
    rec["result"] = json{{"comparison", rows}};
    if (lambda1_ref) rec["result"]["lambda1_reference"] = *lambda1_ref;
    return rec;
}

} // namespace

std::string stable_record_string(const json& record) {
    json copy = record;
    copy.erase("timings");
    return copy.dump(2);
}

json execute_run(const RunSpec& spec) {
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    json rec;
    if (spec.mode == "offline")
        rec = run_offline(spec);
    else if (spec.mode == "estimate-shift")
        rec = run_estimate_shift(spec);
    else if (spec.mode == "online")
        rec = run_online(spec);
    else
        rec = run_bench(spec);

    rec["spec"] = to_json(spec);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec["timings"] = json{{"total_seconds", secs}};

    if (!spec.output_path.empty()) {
        std::ofstream out(spec.output_path);
        if (!out) throw Error("cannot open output file: " + spec.output_path);
        out << rec.dump(2) << "\n";
    }
    return rec;
}

} // namespace eig
