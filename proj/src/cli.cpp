#include "cgp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cgp/errors.hpp"
#include "cgp/reorder.hpp"
#include "cgp/serialize.hpp"

namespace cgp::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    T value{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || p != text.data() + text.size()) {
        throw ConfigError("'" + std::string(text) + "' is not a valid value for " +
                          std::string(key));
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("'" + std::string(text) + "' is not a boolean for " + std::string(key));
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const auto item = trim(text.substr(start, end - start));
        if (!item.empty()) out.push_back(parse_number<T>(key, item));
        start = end + 1;
    }
    if (out.empty()) throw ConfigError(std::string(key) + " needs at least one value");
    return out;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

SummaryRow summary_from_json(const nlohmann::json& j) {
    SummaryRow row;
    row.benchmark = j.at("benchmark").get<std::string>();
    row.variant = j.at("variant").get<std::string>();
    row.nodes = j.at("nodes").get<int>();
    row.p_reorder = j.at("p_reorder").get<double>();
    row.runs = j.at("runs").get<std::size_t>();
    row.mean_i2s = j.at("mean_i2s").get<double>();
    row.sd_i2s = j.at("sd_i2s").get<double>();
    if (!j.at("mean_i2s_converged").is_null()) {
        row.mean_i2s_converged = j.at("mean_i2s_converged").get<double>();
    }
    row.mean_active = j.at("mean_active").get<double>();
    row.success_rate = j.at("success_rate").get<double>();
    row.mean_train_fitness = j.at("mean_train_fitness").get<double>();
    if (!j.at("mean_test_fitness").is_null()) {
        row.mean_test_fitness = j.at("mean_test_fitness").get<double>();
    }
    return row;
}

std::string stem_for(std::string_view bench, std::string_view variant, int nodes, double p) {
    return std::string(bench) + "_" + std::string(variant) + "_N" + std::to_string(nodes) + "_p" +
           format_number(p);
}

}  // namespace

std::string format_number(double value) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
    text = trim(text);
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const auto first = parse_number<std::uint64_t>("seeds", text.substr(0, dots));
        const auto last = parse_number<std::uint64_t>("seeds", text.substr(dots + 2));
        if (last < first) throw ConfigError("seed range '" + std::string(text) + "' is empty");
        std::vector<std::uint64_t> seeds;
        for (std::uint64_t s = first; s <= last; ++s) seeds.push_back(s);
        return seeds;
    }
    return parse_list<std::uint64_t>("seeds", text);
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "benchmark") {
        const std::string name(value);
        if (!is_boolean_benchmark(name)) {
            const auto reg = regression_benchmark_names();
            if (std::find(reg.begin(), reg.end(), name) == reg.end()) {
                throw ConfigError("unknown benchmark '" + name + "'");
            }
        }
        config.benchmark = name;
    } else if (key == "variant") {
        config.variant = std::string(to_string(parse_reorder_kind(value)));
    } else if (key == "nodes") {
        config.nodes = parse_number<int>(key, value);
        if (config.nodes < 1) throw ConfigError("nodes must be >= 1");
    } else if (key == "p_reorder") {
        config.p_reorder = parse_number<double>(key, value);
        if (!(config.p_reorder >= 0.0 && config.p_reorder <= 1.0)) {
            throw ConfigError("p_reorder must lie in [0, 1]");
        }
    } else if (key == "seeds") {
        config.seeds = parse_seeds(value);
    } else if (key == "master_seed") {
        config.master_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "dataset_seed") {
        config.dataset_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "max_iterations") {
        if (value == "unlimited") {
            config.max_iterations.reset();
        } else {
            config.max_iterations = parse_number<std::int64_t>(key, value);
            if (*config.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
        }
    } else if (key == "safety_cap") {
        config.safety_cap = parse_number<std::int64_t>(key, value);
        if (config.safety_cap < 1) throw ConfigError("safety_cap must be >= 1");
    } else if (key == "threshold") {
        config.threshold = parse_number<double>(key, value);
    } else if (key == "workers") {
        config.workers = parse_number<int>(key, value);
        if (config.workers < 0) throw ConfigError("workers must be >= 0");
    } else if (key == "output") {
        if (value.empty()) throw ConfigError("output must not be empty");
        config.output = fs::path(std::string(value));
    } else if (key == "full_trace") {
        config.full_trace = parse_bool(key, value);
    } else if (key == "trace_interval") {
        config.trace_interval = parse_number<std::int64_t>(key, value);
        if (config.trace_interval < 1) throw ConfigError("trace_interval must be >= 1");
    } else if (key == "verify_reorder") {
        config.verify_reorder = parse_bool(key, value);
    } else if (key == "dump_genome") {
        config.dump_genome = parse_bool(key, value);
    } else if (key == "grid_nodes") {
        config.grid_nodes = parse_list<int>(key, value);
    } else if (key == "grid_p_reorder") {
        config.grid_p_reorder = parse_list<double>(key, value);
        for (double p : config.grid_p_reorder) {
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("grid_p_reorder values must lie in [0, 1]");
        }
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

ExperimentConfig parse_config_text(std::string_view text, std::string_view source,
                                   ExperimentConfig base) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        try {
            if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'");
            apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

ExperimentConfig parse_config_file(const fs::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path.string(), std::move(base));
}

ESConfig es_config(const ExperimentConfig& config, const Benchmark& bench) {
    ESConfig es = ESConfig::defaults_for(bench);
    es.num_computational = config.nodes;
    es.strategy = ReorderStrategy::make(parse_reorder_kind(config.variant), config.p_reorder);
    if (config.max_iterations) {
        es.max_iterations = config.max_iterations;
    } else if (!es.max_iterations) {
        es.max_iterations = config.safety_cap;
    }
    if (config.threshold) es.convergence_threshold = *config.threshold;
    es.full_trace = config.full_trace;
    es.trace_interval = config.trace_interval;
    es.verify_reorder = config.verify_reorder;
    return es;
}

ojson effective_config(const ExperimentConfig& config, const Benchmark& bench) {
    const ESConfig es = es_config(config, bench);
    ojson j;
    j["benchmark"] = config.benchmark;
    j["variant"] = config.variant;
    j["nodes"] = config.nodes;
    j["p_reorder"] = es.strategy.p_reorder;
    j["master_seed"] = config.master_seed;
    j["dataset_seed"] = is_boolean(bench) ? ojson(nullptr) : ojson(config.dataset_seed);
    j["max_iterations"] = *es.max_iterations;
    j["budget_kind"] = config.max_iterations ? "explicit"
                       : is_boolean(bench)   ? "unlimited (safety cap)"
                                             : "regression default";
    j["convergence_threshold"] = es.convergence_threshold;
    j["convergence_rule"] = is_boolean(bench) ? "train fitness >= threshold"
                                              : "train MAE < threshold";
    j["mu"] = kParents;
    j["lambda"] = kOffspring;
    j["mutation"] = "single";
    j["selection"] = "best offspring replaces parent if equal or better";
    j["reorder_placement"] = "parent, start of each iteration, before mutation";
    j["function_set"] = is_boolean(bench) ? "boolean" : "regression";
    j["protection"] = is_boolean(bench) ? "" : std::string(protection_conventions());
    j["trace_interval"] = config.full_trace ? 1 : config.trace_interval;
    return j;
}

Benchmark load_benchmark(const ExperimentConfig& config) {
    if (is_boolean_benchmark(config.benchmark)) return build_boolean(config.benchmark);
    return load_or_build_regression(config.benchmark, config.dataset_seed,
                                    config.output / "datasets");
}

std::string run_stem(const ExperimentConfig& config) {
    const double p = uses_reorder_probability(parse_reorder_kind(config.variant))
                         ? config.p_reorder
                         : 1.0;
    return stem_for(config.benchmark, config.variant, config.nodes, p);
}

ojson summary_to_json(const SummaryRow& row) {
    ojson j;
    j["benchmark"] = row.benchmark;
    j["variant"] = row.variant;
    j["nodes"] = row.nodes;
    j["p_reorder"] = row.p_reorder;
    j["runs"] = row.runs;
    j["mean_i2s"] = row.mean_i2s;
    j["sd_i2s"] = row.sd_i2s;
    j["sd_kind"] = "population";
    j["mean_i2s_converged"] = row.mean_i2s_converged ? ojson(*row.mean_i2s_converged) : nullptr;
    j["mean_active"] = row.mean_active;
    j["success_rate"] = row.success_rate;
    j["mean_train_fitness"] = row.mean_train_fitness;
    j["mean_test_fitness"] = row.mean_test_fitness ? ojson(*row.mean_test_fitness) : nullptr;
    return j;
}

std::string format_summary(const SummaryRow& row) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    out << row.benchmark << " " << row.variant << " N=" << row.nodes
        << " p=" << format_number(row.p_reorder) << " runs=" << row.runs
        << " SR=" << row.success_rate << " mean_I2S=" << std::setprecision(1) << row.mean_i2s
        << " sd_I2S=" << row.sd_i2s << " active=" << row.mean_active << std::setprecision(5)
        << " train=" << row.mean_train_fitness << " test=";
    if (row.mean_test_fitness) {
        out << *row.mean_test_fitness;
    } else {
        out << "-";
    }
    return out.str();
}

RunOutcome cmd_run(const ExperimentConfig& config, std::ostream& log) {
    if (config.seeds.empty()) throw ConfigError("no seeds given");
    const Benchmark bench = load_benchmark(config);
    const ESConfig es = es_config(config, bench);
    const ojson base_config = effective_config(config, bench);
    const std::string stem = run_stem(config);
    const std::string started = timestamp_utc();

    ensure_dir(config.output / "traces");
    if (config.dump_genome) ensure_dir(config.output / "genomes");

    BatchOptions options;
    options.workers = config.workers;
    options.master_seed = config.master_seed;
    RunOutcome outcome;
    outcome.results = run_batch(es, bench, config.seeds, options);

    outcome.results_file = config.output / (stem + ".jsonl");
    auto out = open_out(outcome.results_file);
    for (const RunResult& r : outcome.results) {
        ojson cfg = base_config;
        cfg["seed"] = r.seed;
        ojson record;
        record["config"] = cfg;
        const ojson body = run_result_to_json(r);
        for (auto it = body.begin(); it != body.end(); ++it) record[it.key()] = it.value();
        out << record.dump() << '\n';

        const fs::path trace_path =
            config.output / "traces" / (stem + "_seed" + std::to_string(r.seed) + ".csv");
        auto trace = open_out(trace_path);
        trace << "# config: " << cfg.dump() << '\n' << "iteration,best_fitness\n";
        for (const TracePoint& p : r.trace.points) {
            trace << p.iteration << ',' << format_number(p.best_fitness) << '\n';
        }
        finish(trace, trace_path);

        if (config.dump_genome) {
            const fs::path genome_path =
                config.output / "genomes" / (stem + "_seed" + std::to_string(r.seed) + ".txt");
            auto g = open_out(genome_path);
            g << to_flat(r.final_genome);
            finish(g, genome_path);
        }
    }
    finish(out, outcome.results_file);

    VariantInfo info{config.benchmark, config.variant, config.nodes, es.strategy.p_reorder};
    outcome.summary = summarize(outcome.results, info);

    const fs::path meta_path = config.output / (stem + ".meta.json");
    auto meta = open_out(meta_path);
    ojson m;
    m["started"] = started;
    m["finished"] = timestamp_utc();
    m["workers"] = resolve_workers(config.workers);
    m["seeds"] = config.seeds;
    m["config"] = base_config;
    m["summary"] = summary_to_json(outcome.summary);
    meta << m.dump(2) << '\n';
    finish(meta, meta_path);

    log << format_summary(outcome.summary) << '\n';
    return outcome;
}

GridOutcome cmd_grid(const ExperimentConfig& config, std::ostream& log) {
    const ReorderKind kind = parse_reorder_kind(config.variant);
    std::vector<int> nodes = config.grid_nodes.empty() ? std::vector<int>{config.nodes}
                                                       : config.grid_nodes;
    std::vector<double> ps = config.grid_p_reorder.empty()
                                 ? std::vector<double>{config.p_reorder}
                                 : config.grid_p_reorder;
    if (!uses_reorder_probability(kind)) ps = {1.0};

    GridOutcome outcome;
    for (int n : nodes) {
        for (double p : ps) {
            ExperimentConfig cell = config;
            cell.nodes = n;
            cell.p_reorder = p;
            cell.output = config.output / ("cell_N" + std::to_string(n) + "_p" + format_number(p));
            const fs::path done = cell.output / "DONE";
            const fs::path summary_path = cell.output / "summary.json";
            if (fs::exists(done) && fs::exists(summary_path)) {
                std::ifstream in(summary_path);
                outcome.rows.push_back(summary_from_json(nlohmann::json::parse(in)));
                ++outcome.cells_skipped;
                log << "skip " << cell.output.string() << " (complete)\n";
                continue;
            }
            RunOutcome run = cmd_run(cell, log);
            outcome.runs_executed += run.results.size();
            auto s = open_out(summary_path);
            s << summary_to_json(run.summary).dump(2) << '\n';
            finish(s, summary_path);
            auto marker = open_out(done);
            marker << "complete\n";
            finish(marker, done);
            outcome.rows.push_back(run.summary);
        }
    }

    const bool boolean = is_boolean_benchmark(config.benchmark);
    std::stable_sort(outcome.rows.begin(), outcome.rows.end(),
                     [boolean](const SummaryRow& a, const SummaryRow& b) {
                         if (boolean) return a.mean_i2s < b.mean_i2s;
                         const double fa = a.mean_test_fitness.value_or(a.mean_train_fitness);
                         const double fb = b.mean_test_fitness.value_or(b.mean_train_fitness);
                         return fa < fb;
                     });

    ensure_dir(config.output);
    const fs::path table = config.output / "grid_summary.jsonl";
    auto out = open_out(table);
    log << "rank by " << (boolean ? "mean I2S" : "mean test fitness") << ":\n";
    for (std::size_t i = 0; i < outcome.rows.size(); ++i) {
        out << summary_to_json(outcome.rows[i]).dump() << '\n';
        log << std::setw(3) << i + 1 << ". " << format_summary(outcome.rows[i]) << '\n';
    }
    finish(out, table);
    return outcome;
}

AnalyzeOutcome cmd_analyze(const fs::path& input, const fs::path& output, std::ostream& log) {
    if (!fs::is_directory(input)) throw IoError("not a directory: " + input.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    struct Group {
        ojson config;
        int nodes = 0;
        fs::path first_file;
        std::vector<RunResult> runs;
        std::vector<std::uint64_t> seeds;
    };
    std::map<std::string, Group> groups;
    for (const fs::path& file : files) {
        std::ifstream in(file);
        if (!in) throw IoError("cannot read " + file.string());
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            nlohmann::json record;
            try {
                record = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
            }
            if (!record.contains("config") || !record.contains("trace")) continue;
            const auto& cfg = record["config"];
            const std::string key = cfg.at("benchmark").get<std::string>() + "_" +
                                    cfg.at("variant").get<std::string>() + "_p" +
                                    format_number(cfg.at("p_reorder").get<double>());
            const int nodes = cfg.at("nodes").get<int>();
            auto [it, fresh] = groups.try_emplace(key);
            Group& g = it->second;
            if (fresh) {
                g.config = cfg;
                g.config.erase("seed");
                g.nodes = nodes;
                g.first_file = file;
            } else if (g.nodes != nodes) {
                throw AggregationError("group " + key + " mixes N=" + std::to_string(g.nodes) +
                                       " (" + g.first_file.string() + ") with N=" +
                                       std::to_string(nodes) + " (" + file.string() + ")");
            }
            g.runs.push_back(run_result_from_json(record));
            g.seeds.push_back(g.runs.back().seed);
        }
    }
    if (groups.empty()) throw AggregationError("no run records found in " + input.string());

    ensure_dir(output);
    AnalyzeOutcome outcome;
    const fs::path summary_path = output / "summary.jsonl";
    auto summary = open_out(summary_path);
    for (auto& [key, g] : groups) {
        ojson cfg = g.config;
        cfg["seeds"] = g.seeds;

        const auto hist = active_distribution(g.runs);
        const fs::path hist_path = output / ("positional_bias_" + key + ".csv");
        auto h = open_out(hist_path);
        h << "# config: " << cfg.dump() << '\n' << "position,normalized_position,probability\n";
        for (std::size_t k = 0; k < hist.probability.size(); ++k) {
            h << k << ',' << format_number(hist.normalized_position[k]) << ','
              << format_number(hist.probability[k]) << '\n';
        }
        finish(h, hist_path);

        std::int64_t last = 0;
        std::vector<ConvergenceTrace> traces;
        for (const RunResult& r : g.runs) {
            last = std::max(last, r.iterations);
            traces.push_back(r.trace);
        }
        const auto grid = log_grid(last);
        const auto curve = convergence_mean(traces, grid);
        const fs::path conv_path = output / ("convergence_" + key + ".csv");
        auto c = open_out(conv_path);
        c << "# config: " << cfg.dump() << '\n'
          << "# sd: population standard deviation over runs (divisor n)\n"
          << "iteration,mean_fitness,sd\n";
        for (std::size_t i = 0; i < curve.iterations.size(); ++i) {
            c << curve.iterations[i] << ',' << format_number(curve.mean[i]) << ','
              << format_number(curve.sd[i]) << '\n';
        }
        finish(c, conv_path);

        VariantInfo info{cfg.at("benchmark").get<std::string>(),
                         cfg.at("variant").get<std::string>(), g.nodes,
                         cfg.at("p_reorder").get<double>()};
        const SummaryRow row = summarize(g.runs, info);
        ojson line = summary_to_json(row);
        line["config"] = cfg;
        summary << line.dump() << '\n';
        log << format_summary(row) << '\n';

        outcome.rows.push_back(row);
        outcome.written.push_back(hist_path);
        outcome.written.push_back(conv_path);
    }
    finish(summary, summary_path);
    outcome.written.push_back(summary_path);
    return outcome;
}

namespace {

struct Overrides {
    std::vector<std::pair<std::string, CLI::Option*>> values;
    std::vector<std::pair<std::string, CLI::Option*>> flags;
    std::map<std::string, std::string> storage;
    std::string config_path;
};

void add_experiment_options(CLI::App* cmd, Overrides& o, bool grid) {
    cmd->add_option("-c,--config", o.config_path, "Config file (key = value lines)");
    const std::vector<std::pair<std::string, std::string>> options{
        {"--bench", "benchmark"},       {"--variant", "variant"},
        {"--nodes", "nodes"},           {"--p-reorder", "p_reorder"},
        {"--seeds", "seeds"},           {"--master-seed", "master_seed"},
        {"--dataset-seed", "dataset_seed"}, {"--max-iterations", "max_iterations"},
        {"--safety-cap", "safety_cap"}, {"--threshold", "threshold"},
        {"--workers", "workers"},       {"-o,--output", "output"},
        {"--trace-interval", "trace_interval"},
    };
    for (const auto& [flag, key] : options) {
        o.values.emplace_back(key, cmd->add_option(flag, o.storage[key], key));
    }
    if (grid) {
        o.values.emplace_back("grid_nodes",
                              cmd->add_option("--grid-nodes", o.storage["grid_nodes"],
                                              "Comma-separated N values"));
        o.values.emplace_back("grid_p_reorder",
                              cmd->add_option("--grid-p", o.storage["grid_p_reorder"],
                                              "Comma-separated p_reorder values"));
    }
    o.flags.emplace_back("full_trace", cmd->add_flag("--full-trace", "Record every iteration"));
    o.flags.emplace_back("verify_reorder",
                         cmd->add_flag("--verify-reorder", "Re-evaluate parent after each reorder"));
    o.flags.emplace_back("dump_genome",
                         cmd->add_flag("--dump-genome", "Write final genomes in flat form"));
}

ExperimentConfig resolve(const Overrides& o) {
    ExperimentConfig config;
    if (!o.config_path.empty()) config = parse_config_file(o.config_path);
    for (const auto& [key, opt] : o.values) {
        if (opt->count() > 0) {
            try {
                apply_setting(config, key, o.storage.at(key));
            } catch (const ConfigError& e) {
                throw ConfigError(std::string("--") + key + ": " + e.what());
            }
        }
    }
    for (const auto& [key, opt] : o.flags) {
        if (opt->count() > 0) apply_setting(config, key, "true");
    }
    return config;
}

}  // namespace

int main_entry(int argc, char** argv) {
    CLI::App app{"Cartesian GP with genotype reordering: runs, grids and analysis"};
    app.require_subcommand(1);

    Overrides run_opts;
    auto* run = app.add_subcommand("run", "Run a seed batch for one configuration");
    add_experiment_options(run, run_opts, false);

    Overrides grid_opts;
    auto* grid = app.add_subcommand("grid", "Sweep nodes x p_reorder and rank the cells");
    add_experiment_options(grid, grid_opts, true);

    std::string analyze_dir;
    std::string analyze_out;
    auto* analyze = app.add_subcommand("analyze", "Aggregate run records in a directory");
    analyze->add_option("dir", analyze_dir, "Directory with *.jsonl run records")->required();
    analyze->add_option("-o,--output", analyze_out, "Output directory (default <dir>/analysis)");

    std::string dump_bench = "parity3";
    int dump_nodes = 10;
    std::uint64_t dump_seed = 0;
    std::uint64_t dump_dataset_seed = 0;
    std::string dump_variant = "none";
    std::string dump_input;
    auto* dump = app.add_subcommand("dump-genome", "Print a genome in flat form, optionally reordered");
    dump->add_option("--bench", dump_bench, "Benchmark that fixes the I/O shape");
    dump->add_option("--nodes", dump_nodes, "Computational nodes");
    dump->add_option("--seed", dump_seed, "Seed for the random genome and reorder");
    dump->add_option("--dataset-seed", dump_dataset_seed, "Regression dataset seed");
    dump->add_option("--variant", dump_variant, "Reorder operator to apply before printing");
    dump->add_option("--input", dump_input, "Read a flat genome instead of generating one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            cmd_run(resolve(run_opts), std::cout);
        } else if (*grid) {
            cmd_grid(resolve(grid_opts), std::cout);
        } else if (*analyze) {
            const fs::path dir(analyze_dir);
            cmd_analyze(dir, analyze_out.empty() ? dir / "analysis" : fs::path(analyze_out),
                        std::cout);
        } else if (*dump) {
            Rng rng(dump_seed);
            Genotype g;
            if (!dump_input.empty()) {
                std::ifstream in(dump_input);
                if (!in) throw IoError("cannot read " + dump_input);
                std::stringstream text;
                text << in.rdbuf();
                g = parse_flat(text.str());
                if (auto report = validate(g); !report.empty()) {
                    throw ConfigError(dump_input + ": invalid genome at position " +
                                      std::to_string(report.front().position) + ": " +
                                      report.front().message);
                }
            } else {
                const Benchmark bench = build_benchmark(dump_bench, dump_dataset_seed);
                g = random_genome(params_for(bench, dump_nodes), rng);
            }
            g = reorder(g, parse_reorder_kind(dump_variant), rng);
            std::cout << to_flat(g);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const AggregationError& e) {
        std::cerr << "aggregation error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return kExitOk;
}

}  // namespace cgp::cli
