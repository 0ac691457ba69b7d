// stratclass: experiment runner for strategic online classification.
//
//   stratclass simulate <config>
//   stratclass verify-bounds <suite>
//   stratclass sweep <config> --axis <a> --values v1,v2,...
//   global: --jobs N, --out DIR; STRATCLASS_SEED overrides the config seed.
//
// Exit codes: 0 ok, 1 a bound check failed, 2 configuration error,
// 3 runtime invariant violation.
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stratclass/acceptance.hpp"
#include "stratclass/experiment.hpp"
#include "stratclass/kernels.hpp"

namespace fs = std::filesystem;
using namespace stratclass;

namespace {

constexpr int kOk = 0;
constexpr int kBoundFailed = 1;
constexpr int kConfigError = 2;
constexpr int kInvariant = 3;

class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ExperimentConfig read_config(const std::string& path) {
    ExperimentConfig cfg = load_config(path);
    if (const char* env = std::getenv("STRATCLASS_SEED")) {
        try {
            set_config_value(cfg, "seed", env);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("STRATCLASS_SEED: ") + e.what());
        }
    }
    return cfg;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

void check_transcript(const Transcript& t, std::size_t rounds) {
    if (t.records.size() != rounds) throw InvariantError("transcript length differs from T");
    double prev = 0.0;
    for (const auto& r : t.records) {
        if (r.cum_loss < prev) throw InvariantError("cumulative loss decreased");
        if (r.loss < 0.0 || r.loss > 1.0) throw InvariantError("round loss outside [0,1]");
        prev = r.cum_loss;
    }
    double best = t.hypothesis_losses.empty() ? 0.0 : t.hypothesis_losses[0];
    for (double l : t.hypothesis_losses) best = std::min(best, l);
    if (best != t.opt) throw InvariantError("OPT differs from the minimum hypothesis loss");
}

int simulate(const std::string& config_path, const fs::path& out_dir) {
    const auto ex = prepare(read_config(config_path));
    fs::create_directories(out_dir);
    const auto& cfg = ex.config;
    if (cfg.protocol == "perceptron") {
        const auto summary = run_perceptron_experiment(ex);
        for (std::size_t i = 0; i < summary.runs.size(); ++i) {
            auto out = open_out(out_dir / (cfg.name + "_run" + std::to_string(i) + ".csv"));
            write_perceptron_csv(out, summary.runs[i], i, true);
        }
        auto out = open_out(out_dir / (cfg.name + "_summary.txt"));
        write_perceptron_summary(out, ex, summary);
        write_perceptron_summary(std::cout, ex, summary);
        return kOk;
    }
    const auto result = run_experiment(ex);
    for (std::size_t i = 0; i < result.transcripts.size(); ++i) {
        check_transcript(result.transcripts[i], cfg.rounds);
        auto out = open_out(out_dir / (cfg.name + "_run" + std::to_string(i) + ".csv"));
        write_csv_header(out);
        write_csv_rows(out, result.transcripts[i], i);
    }
    auto out = open_out(out_dir / (cfg.name + "_summary.txt"));
    write_summary(out, ex, result.summary);
    write_summary(std::cout, ex, result.summary);
    return kOk;
}

int verify_bounds(const std::string& suite) {
    if (!acceptance::is_suite(suite)) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return kConfigError;
    }
    int failures = 0;
    for (int id : acceptance::suite_criteria(suite)) {
        const auto r = acceptance::run_criterion(id);
        std::cout << acceptance::format_result(r) << std::endl;
        failures += r.pass ? 0 : 1;
    }
    return failures == 0 ? kOk : kBoundFailed;
}

void apply_axis(ExperimentConfig& cfg, const std::string& axis, const std::string& value) {
    if (axis == "T") {
        set_config_value(cfg, "T", value);
    } else if (axis == "delta") {
        if (cfg.graph.rfind("star:", 0) != 0) throw ConfigError("axis delta needs graph = star:<delta>[:<w>]");
        const auto rest = cfg.graph.substr(5);
        const auto colon = rest.find(':');
        cfg.graph = "star:" + value + (colon == std::string::npos ? "" : rest.substr(colon));
    } else if (axis == "H-size") {
        set_config_value(cfg, "hypothesis_limit", value);
    } else if (axis == "beta") {
        set_config_value(cfg, "beta", value);
    } else if (axis == "K") {
        set_config_value(cfg, "blocks", value);
    } else if (axis == "noise") {
        if (cfg.protocol == "perceptron") throw ConfigError("axis noise is not available for the perceptron protocol");
        set_config_value(cfg, "noise", value);
    } else {
        throw ConfigError("unknown axis '" + axis + "' (T, delta, H-size, beta, K, noise)");
    }
}

std::vector<std::string> split_values(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty()) out.push_back(cell);
    }
    return out;
}

int sweep(const std::string& config_path, const std::string& axis, const std::string& values_text,
          const fs::path& out_dir) {
    const auto base = read_config(config_path);
    const auto values = split_values(values_text);
    if (values.empty()) throw ConfigError("--values is empty");
    // Validate every point before running any.
    std::vector<PreparedExperiment> points;
    for (const auto& v : values) {
        ExperimentConfig cfg = base;
        apply_axis(cfg, axis, v);
        points.push_back(prepare(cfg));
    }
    fs::create_directories(out_dir);
    auto file = open_out(out_dir / (base.name + "_sweep_" + axis + ".csv"));
    std::ostringstream rows;
    rows << "axis,value,repetitions,seed,mean_cum_loss,sd_cum_loss,mean_mistakes,sd_mistakes,mean_opt,mean_regret,"
            "sd_regret,ci95_regret,bound\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& ex = points[i];
        rows << axis << ',' << values[i] << ',' << ex.config.repetitions << ',' << ex.config.seed << ',';
        if (ex.config.protocol == "perceptron") {
            const auto s = run_perceptron_experiment(ex);
            rows << format_number(s.mistakes.mean) << ',' << format_number(s.mistakes.stddev) << ','
                 << format_number(s.mistakes.mean) << ',' << format_number(s.mistakes.stddev) << ",,,,,"
                 << format_number(s.bound) << '\n';
            continue;
        }
        const auto result = run_experiment(ex);
        for (const auto& t : result.transcripts) check_transcript(t, ex.config.rounds);
        const auto& s = result.summary;
        rows << format_number(s.cumulative_loss.mean) << ',' << format_number(s.cumulative_loss.stddev) << ','
             << format_number(s.mistakes.mean) << ',' << format_number(s.mistakes.stddev) << ','
             << format_number(s.opt.mean) << ',' << format_number(s.regret.mean) << ','
             << format_number(s.regret.stddev) << ',' << format_number(s.regret.half_width) << ',';
        if (const auto b = theoretical_bound(ex, s.opt.mean)) rows << format_number(b->value);
        rows << '\n';
    }
    file << rows.str();
    std::cout << rows.str();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strategic online classification experiments"};
    app.require_subcommand(1);
    int jobs = 0;
    std::string out_dir = ".";
    app.add_option("--jobs", jobs, "worker threads for repetitions and kernels (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", out_dir, "output directory");

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run a config and write transcripts plus a summary");
    sim->add_option("config", config_path, "config file")->required();
    sim->fallthrough();

    std::string suite;
    auto* verify = app.add_subcommand("verify-bounds", "run an acceptance suite");
    verify->add_option("suite", suite, "deterministic | fractional | randomized | perceptron | two-pop | all")
        ->required();
    verify->fallthrough();

    std::string axis;
    std::string values;
    auto* sw = app.add_subcommand("sweep", "run a config over one axis and emit a tidy CSV");
    sw->add_option("config", config_path, "config file")->required();
    sw->add_option("--axis", axis, "T | delta | H-size | beta | K | noise")->required();
    sw->add_option("--values", values, "comma-separated values")->required();
    sw->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }
    kernels::set_thread_count(jobs);

    try {
        if (*sim) return simulate(config_path, out_dir);
        if (*verify) return verify_bounds(suite);
        if (*sw) return sweep(config_path, axis, values, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    }
    return kConfigError;
}
