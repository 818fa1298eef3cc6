#include "cgp/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

constexpr std::array<std::string_view, 4> kBooleanNames{"parity3", "encode16_4", "decode4_16",
                                                        "multiply3"};
constexpr std::array<std::string_view, 4> kRegressionNames{"nguyen7", "koza3", "pagie1",
                                                           "keijzer6"};

struct TableBuilder {
    BooleanBenchmark bench;

    TableBuilder(std::string_view name, int inputs, int outputs) {
        bench.name = std::string(name);
        bench.num_inputs = inputs;
        bench.num_outputs = outputs;
    }
    void add_row(const std::vector<std::uint8_t>& in, const std::vector<std::uint8_t>& out) {
        bench.inputs.insert(bench.inputs.end(), in.begin(), in.end());
        bench.targets.insert(bench.targets.end(), out.begin(), out.end());
        ++bench.rows;
    }
    BooleanBenchmark finish() {
        PackedTable& t = bench.packed;
        t.num_inputs = bench.num_inputs;
        t.num_outputs = bench.num_outputs;
        t.rows = bench.rows;
        t.blocks = (bench.rows + kWordBits - 1) / kWordBits;
        t.inputs = pack_columns(bench.inputs, bench.rows, bench.num_inputs);
        t.targets = pack_columns(bench.targets, bench.rows, bench.num_outputs);
        t.row_mask.assign(t.blocks, ~Word{0});
        if (const std::size_t tail = bench.rows % kWordBits; tail != 0) {
            t.row_mask.back() = (Word{1} << tail) - 1;
        }
        return std::move(bench);
    }
};

std::vector<std::uint8_t> lsb_bits(unsigned value, int width) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(width));
    for (int j = 0; j < width; ++j) bits[static_cast<std::size_t>(j)] = (value >> j) & 1U;
    return bits;
}

std::vector<std::uint8_t> msb_bits(unsigned value, int width) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(width));
    for (int j = 0; j < width; ++j) {
        bits[static_cast<std::size_t>(j)] = (value >> (width - 1 - j)) & 1U;
    }
    return bits;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

void check_io(const Genotype& genome, int inputs, int outputs, std::string_view what) {
    if (genome.params.num_inputs != inputs || genome.params.num_outputs != outputs) {
        throw ConfigError("genome has " + std::to_string(genome.params.num_inputs) + " inputs / " +
                          std::to_string(genome.params.num_outputs) + " outputs but " +
                          std::string(what) + " needs " + std::to_string(inputs) + " / " +
                          std::to_string(outputs));
    }
}

Dataset sample_1d(double lo, double hi, int count, Rng& rng, double (*target)(double)) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (int i = 0; i < count; ++i) {
        const double x = lo + (hi - lo) * unit_uniform(rng);
        xs.push_back(x);
        ys.push_back(target(x));
    }
    return Dataset::from_rows(1, std::move(xs), std::move(ys));
}

Dataset grid_1d(double lo, double hi, double step, double (*target)(double)) {
    std::vector<double> xs = grid_axis(lo, hi, step);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(target(x));
    return Dataset::from_rows(1, std::move(xs), std::move(ys));
}

}  // namespace

Dataset Dataset::from_rows(int num_inputs, std::vector<double> inputs, std::vector<double> targets) {
    if (num_inputs < 1 || inputs.size() != targets.size() * static_cast<std::size_t>(num_inputs)) {
        throw ConfigError("dataset inputs do not match target count");
    }
    Dataset d;
    d.num_inputs = num_inputs;
    d.inputs = std::move(inputs);
    d.targets = std::move(targets);
    const std::size_t n = d.targets.size();
    d.columns.num_inputs = num_inputs;
    d.columns.points = n;
    d.columns.targets = d.targets;
    d.columns.columns.resize(d.inputs.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < num_inputs; ++c) {
            d.columns.columns[static_cast<std::size_t>(c) * n + i] =
                d.inputs[i * static_cast<std::size_t>(num_inputs) + static_cast<std::size_t>(c)];
        }
    }
    return d;
}

std::span<const std::string_view> boolean_benchmark_names() { return kBooleanNames; }
std::span<const std::string_view> regression_benchmark_names() { return kRegressionNames; }

bool is_boolean_benchmark(std::string_view name) {
    for (auto n : kBooleanNames) {
        if (n == name) return true;
    }
    return false;
}

BooleanBenchmark build_boolean(std::string_view name) {
    if (name == "parity3") {
        TableBuilder t(name, 3, 1);
        for (unsigned r = 0; r < 8; ++r) {
            auto in = lsb_bits(r, 3);
            t.add_row(in, {static_cast<std::uint8_t>(in[0] ^ in[1] ^ in[2])});
        }
        return t.finish();
    }
    if (name == "encode16_4") {
        TableBuilder t(name, 16, 4);
        for (unsigned hot = 0; hot < 16; ++hot) t.add_row(lsb_bits(1U << hot, 16), lsb_bits(hot, 4));
        return t.finish();
    }
    if (name == "decode4_16") {
        TableBuilder t(name, 4, 16);
        for (unsigned r = 0; r < 16; ++r) t.add_row(lsb_bits(r, 4), lsb_bits(1U << r, 16));
        return t.finish();
    }
    if (name == "multiply3") {
        TableBuilder t(name, 6, 6);
        for (unsigned a = 0; a < 8; ++a) {
            for (unsigned b = 0; b < 8; ++b) {
                auto in = msb_bits(a, 3);
                auto lo = msb_bits(b, 3);
                in.insert(in.end(), lo.begin(), lo.end());
                t.add_row(in, msb_bits(a * b, 6));
            }
        }
        return t.finish();
    }
    throw ConfigError("unknown boolean benchmark '" + std::string(name) + "'");
}

double nguyen7(double x) { return std::log(x + 1.0) + std::log(x * x + 1.0); }

double koza3(double x) {
    const double x2 = x * x;
    return x2 * x2 * x2 - 2.0 * x2 * x2 + x2;
}

double pagie1(double x, double y) {
    return 1.0 / (1.0 + std::pow(x, -4.0)) + 1.0 / (1.0 + std::pow(y, -4.0));
}

double keijzer6(double x) {
    double sum = 0.0;
    const auto last = static_cast<long>(std::floor(x));
    for (long i = 1; i <= last; ++i) sum += 1.0 / static_cast<double>(i);
    return sum;
}

std::vector<double> grid_axis(double a, double b, double step) {
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    std::vector<double> axis;
    axis.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) axis.push_back(a + static_cast<double>(k) * step);
    return axis;
}

RegressionBenchmark build_regression(std::string_view name, Rng& rng) {
    RegressionBenchmark bench;
    bench.name = std::string(name);
    if (name == "nguyen7") {
        bench.train = sample_1d(0.0, 2.0, 20, rng, nguyen7);
    } else if (name == "koza3") {
        bench.train = sample_1d(-1.0, 1.0, 20, rng, koza3);
    } else if (name == "pagie1") {
        const auto axis = grid_axis(-5.0, 5.0, 0.4);
        std::vector<double> xs;
        std::vector<double> ys;
        for (double x : axis) {
            for (double y : axis) {
                xs.push_back(x);
                xs.push_back(y);
                ys.push_back(pagie1(x, y));
            }
        }
        bench.train = Dataset::from_rows(2, std::move(xs), std::move(ys));
    } else if (name == "keijzer6") {
        bench.train = grid_1d(1.0, 50.0, 1.0, keijzer6);
        bench.test = grid_1d(1.0, 120.0, 1.0, keijzer6);
    } else {
        throw ConfigError("unknown regression benchmark '" + std::string(name) + "'");
    }
    return bench;
}

Benchmark build_benchmark(std::string_view name, std::uint64_t dataset_seed) {
    if (is_boolean_benchmark(name)) return build_boolean(name);
    Rng rng(dataset_seed);
    return build_regression(name, rng);
}

const std::string& benchmark_name(const Benchmark& bench) {
    return std::visit([](const auto& b) -> const std::string& { return b.name; }, bench);
}

bool is_boolean(const Benchmark& bench) {
    return std::holds_alternative<BooleanBenchmark>(bench);
}

GraphParams params_for(const Benchmark& bench, int num_computational) {
    GraphParams p;
    p.num_computational = num_computational;
    if (const auto* b = std::get_if<BooleanBenchmark>(&bench)) {
        p.num_inputs = b->num_inputs;
        p.num_outputs = b->num_outputs;
        p.function_set = FunctionSetId::boolean;
    } else {
        const auto& r = std::get<RegressionBenchmark>(bench);
        p.num_inputs = r.train.num_inputs;
        p.num_outputs = 1;
        p.function_set = FunctionSetId::regression;
    }
    p.check();
    return p;
}

double boolean_fitness(const Genotype& genome, const BooleanBenchmark& bench) {
    PackedEvaluator evaluator;
    return boolean_fitness(genome, decode_active(genome), bench, evaluator);
}

double boolean_fitness(const Genotype& genome, const ActiveSet& active,
                       const BooleanBenchmark& bench, PackedEvaluator& evaluator) {
    check_io(genome, bench.num_inputs, bench.num_outputs, bench.name);
    return static_cast<double>(evaluator.correct_rows(genome, active, bench.packed)) /
           static_cast<double>(bench.rows);
}

double mae_fitness(const Genotype& genome, const Dataset& data) {
    ColumnEvaluator evaluator;
    return mae_fitness(genome, decode_active(genome), data, evaluator);
}

double mae_fitness(const Genotype& genome, const ActiveSet& active, const Dataset& data,
                   ColumnEvaluator& evaluator) {
    if (data.size() == 0) throw ConfigError("mean absolute error over an empty dataset");
    check_io(genome, data.num_inputs, 1, "dataset");
    return evaluator.mean_absolute_error(genome, active, data.columns);
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (int c = 0; c < data.num_inputs; ++c) out << 'x' << c << ',';
    out << "y\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double x : data.input_row(i)) out << format_double(x) << ',';
        out << format_double(data.targets[i]) << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": missing header");
    const int columns = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
    if (columns < 2) throw ConfigError(path.string() + ": header needs x0..,y");
    std::vector<double> xs;
    std::vector<double> ys;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int c = 0; c < columns; ++c) {
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{}) {
                throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                                  ": bad number in column " + std::to_string(c));
            }
            (c + 1 < columns ? xs : ys).push_back(v);
            p = next;
            if (c + 1 < columns) {
                if (p == end || *p != ',') {
                    throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                                      ": expected " + std::to_string(columns) + " columns");
                }
                ++p;
            }
        }
    }
    return Dataset::from_rows(columns - 1, std::move(xs), std::move(ys));
}

RegressionBenchmark load_or_build_regression(std::string_view name, std::uint64_t dataset_seed,
                                             const std::filesystem::path& cache_dir) {
    const std::string stem = std::string(name) + "_seed" + std::to_string(dataset_seed);
    const auto train_path = cache_dir / (stem + "_train.csv");
    const auto test_path = cache_dir / (stem + "_test.csv");
    if (std::filesystem::exists(train_path)) {
        RegressionBenchmark bench;
        bench.name = std::string(name);
        bench.train = read_dataset_csv(train_path);
        if (std::filesystem::exists(test_path)) bench.test = read_dataset_csv(test_path);
        return bench;
    }
    Rng rng(dataset_seed);
    RegressionBenchmark bench = build_regression(name, rng);
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (ec) throw IoError("cannot create " + cache_dir.string() + ": " + ec.message());
    write_dataset_csv(train_path, bench.train);
    if (bench.test) write_dataset_csv(test_path, *bench.test);
    return bench;
}

}  // namespace cgp
