#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cgp/analysis.hpp"
#include "cgp/batch.hpp"
#include "cgp/benchmarks.hpp"
#include "cgp/evolution.hpp"

namespace cgp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitInvariant = 3;

/// Flat experiment description. Config files use `key = value` lines with the
/// same names as the fields below; `#` starts a comment.
struct ExperimentConfig {
    std::string benchmark = "parity3";
    std::string variant = "none";
    int nodes = 100;
    double p_reorder = 1.0;
    std::vector<std::uint64_t> seeds{0};
    std::uint64_t master_seed = 0;
    std::uint64_t dataset_seed = 0;
    /// Overrides the benchmark's budget when set.
    std::optional<std::int64_t> max_iterations;
    /// Budget for Boolean runs when max_iterations is unset.
    std::int64_t safety_cap = kBooleanSafetyCap;
    std::optional<double> threshold;
    int workers = 0;
    std::filesystem::path output = "results";
    bool full_trace = false;
    std::int64_t trace_interval = 100;
    bool verify_reorder = false;
    bool dump_genome = false;
    // Grid axes.
    std::vector<int> grid_nodes;
    std::vector<double> grid_p_reorder;
};

/// Sets one key. Throws ConfigError for unknown keys or unparsable values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
/// Reads a config file; errors carry `path:line:`.
ExperimentConfig parse_config_file(const std::filesystem::path& path,
                                   ExperimentConfig base = {});
ExperimentConfig parse_config_text(std::string_view text, std::string_view source,
                                   ExperimentConfig base = {});

/// `a..b` (inclusive), a comma list, or a single value.
std::vector<std::uint64_t> parse_seeds(std::string_view text);

/// Shortest round-trip spelling, used in file names and JSON.
std::string format_number(double value);

/// ESConfig for this experiment against `bench`.
ESConfig es_config(const ExperimentConfig& config, const Benchmark& bench);
/// Everything that determines a run, including function protection conventions.
nlohmann::ordered_json effective_config(const ExperimentConfig& config, const Benchmark& bench);
/// Loads the benchmark; regression datasets are cached under `<output>/datasets`.
Benchmark load_benchmark(const ExperimentConfig& config);
/// `<bench>_<variant>_N<nodes>_p<p>`.
std::string run_stem(const ExperimentConfig& config);

struct RunOutcome {
    std::vector<RunResult> results;
    SummaryRow summary;
    std::filesystem::path results_file;
};

/// Runs every seed, writes `<stem>.jsonl`, per-seed trace CSVs under `traces/`,
/// `<stem>.meta.json` (timestamps), and optional genome dumps. Prints the summary.
RunOutcome cmd_run(const ExperimentConfig& config, std::ostream& log);

struct GridOutcome {
    std::vector<SummaryRow> rows;  ///< sorted best first
    std::size_t runs_executed = 0;
    std::size_t cells_skipped = 0;
};

/// Runs each (nodes, p_reorder) cell into `<output>/cell_N<n>_p<p>/`. Cells with a
/// DONE marker are loaded instead of rerun. Rows are sorted by mean I2S for
/// Boolean benchmarks and mean test (else train) fitness for regression.
GridOutcome cmd_grid(const ExperimentConfig& config, std::ostream& log);

struct AnalyzeOutcome {
    std::vector<SummaryRow> rows;
    std::vector<std::filesystem::path> written;
};

/// Groups every `*.jsonl` record in `input` by (benchmark, variant, p_reorder)
/// and writes positional-bias and convergence CSVs plus `summary.jsonl` to `output`.
AnalyzeOutcome cmd_analyze(const std::filesystem::path& input,
                           const std::filesystem::path& output, std::ostream& log);

nlohmann::ordered_json summary_to_json(const SummaryRow& row);
std::string format_summary(const SummaryRow& row);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace cgp::cli
