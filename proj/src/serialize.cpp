#include "cgp/serialize.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t j = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > j) out.push_back(s.substr(j, i - j));
    }
    return out;
}

// Non-finite fitness is written as null.
double fitness_from(const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

int to_int(std::string_view s, int line) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw ConfigError("genome line " + std::to_string(line) + ": '" + std::string(s) +
                          "' is not an integer");
    }
    return v;
}

}  // namespace

std::string to_flat(const Genotype& genome) {
    const auto& p = genome.params;
    std::ostringstream out;
    out << "# inputs=" << p.num_inputs << " outputs=" << p.num_outputs
        << " nodes=" << p.num_computational << " arity=" << p.arity
        << " function_set=" << to_string(p.function_set) << '\n';
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        const NodeGene& n = genome.nodes[k];
        out << genome.position_of(k) << ' ' << n.function_id;
        for (int c : n.connections) out << ' ' << c;
        out << '\n';
    }
    for (std::size_t i = 0; i < genome.outputs.size(); ++i) {
        out << "out_" << i << ' ' << genome.outputs[i] << '\n';
    }
    return out.str();
}

Genotype parse_flat(std::string_view text) {
    Genotype g;
    bool have_header = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        const std::string_view line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            for (auto field : split_ws(line.substr(1))) {
                const auto eq = field.find('=');
                if (eq == std::string_view::npos) continue;
                const auto key = field.substr(0, eq);
                const auto value = field.substr(eq + 1);
                if (key == "inputs") g.params.num_inputs = to_int(value, line_no);
                else if (key == "outputs") g.params.num_outputs = to_int(value, line_no);
                else if (key == "nodes") g.params.num_computational = to_int(value, line_no);
                else if (key == "arity") g.params.arity = to_int(value, line_no);
                else if (key == "function_set") g.params.function_set = parse_function_set(value);
                have_header = true;
            }
            continue;
        }
        const auto fields = split_ws(line);
        if (fields[0].starts_with("out_")) {
            if (fields.size() != 2) {
                throw ConfigError("genome line " + std::to_string(line_no) + ": expected 'out_i conn'");
            }
            const int index = to_int(fields[0].substr(4), line_no);
            if (index != static_cast<int>(g.outputs.size())) {
                throw ConfigError("genome line " + std::to_string(line_no) + ": outputs out of order");
            }
            g.outputs.push_back(to_int(fields[1], line_no));
            continue;
        }
        if (fields.size() != 2 + kArity) {
            throw ConfigError("genome line " + std::to_string(line_no) +
                              ": expected 'pos function_id conn_0 conn_1'");
        }
        const int pos = to_int(fields[0], line_no);
        if (pos != g.params.num_inputs + static_cast<int>(g.nodes.size())) {
            throw ConfigError("genome line " + std::to_string(line_no) + ": node position " +
                              std::to_string(pos) + " out of sequence");
        }
        NodeGene node;
        node.function_id = to_int(fields[1], line_no);
        for (int c = 0; c < kArity; ++c) {
            node.connections[static_cast<std::size_t>(c)] =
                to_int(fields[static_cast<std::size_t>(2 + c)], line_no);
        }
        g.nodes.push_back(node);
    }
    if (!have_header) throw ConfigError("genome text lacks the '# inputs=...' header");
    if (g.nodes.size() != static_cast<std::size_t>(g.params.num_computational) ||
        g.outputs.size() != static_cast<std::size_t>(g.params.num_outputs)) {
        throw ConfigError("genome node/output count disagrees with its header");
    }
    return g;
}

std::string bitmap_string(const std::vector<std::uint8_t>& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) s[i] = '1';
    }
    return s;
}

nlohmann::ordered_json run_result_to_json(const RunResult& result) {
    nlohmann::ordered_json j;
    j["seed"] = result.seed;
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    j["evaluations"] = result.evaluations;
    j["final_train_fitness"] = result.final_train_fitness;
    j["final_test_fitness"] =
        result.final_test_fitness ? nlohmann::ordered_json(*result.final_test_fitness) : nullptr;
    j["active_count"] = result.active_count;
    j["active_bitmap"] = bitmap_string(result.active_bitmap);
    auto trace = nlohmann::ordered_json::array();
    for (const TracePoint& p : result.trace.points) {
        trace.push_back(nlohmann::ordered_json::array({p.iteration, p.best_fitness}));
    }
    j["trace"] = std::move(trace);
    return j;
}

RunResult run_result_from_json(const nlohmann::json& record) {
    try {
        RunResult r;
        r.seed = record.at("seed").get<std::uint64_t>();
        r.converged = record.at("converged").get<bool>();
        r.iterations = record.at("iterations").get<std::int64_t>();
        r.evaluations = record.at("evaluations").get<std::int64_t>();
        r.final_train_fitness = fitness_from(record.at("final_train_fitness"));
        if (!record.at("final_test_fitness").is_null()) {
            r.final_test_fitness = record.at("final_test_fitness").get<double>();
        }
        r.active_count = record.at("active_count").get<int>();
        for (char c : record.at("active_bitmap").get<std::string>()) {
            r.active_bitmap.push_back(c == '1' ? 1 : 0);
        }
        for (const auto& p : record.at("trace")) {
            r.trace.points.push_back({p.at(0).get<std::int64_t>(), fitness_from(p.at(1))});
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed run record: ") + e.what());
    }
}

}  // namespace cgp
