#include "cgp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

// Population statistics; summed in sorted order so the result ignores input order.
MeanSd mean_sd(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / n)};
}

}  // namespace

PositionalBiasHistogram active_distribution(std::span<const RunResult> results) {
    if (results.empty()) throw AggregationError("no runs to aggregate");
    const std::size_t n = results.front().active_bitmap.size();
    std::vector<std::size_t> hits(n, 0);
    for (const RunResult& r : results) {
        if (r.active_bitmap.size() != n) {
            throw AggregationError("runs mix genome sizes " + std::to_string(n) + " and " +
                                   std::to_string(r.active_bitmap.size()));
        }
        for (std::size_t k = 0; k < n; ++k) hits[k] += r.active_bitmap[k] ? 1 : 0;
    }
    PositionalBiasHistogram h;
    h.runs = results.size();
    h.probability.resize(n);
    h.normalized_position.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        h.probability[k] = static_cast<double>(hits[k]) / static_cast<double>(h.runs);
        h.normalized_position[k] = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
    }
    return h;
}

std::vector<double> decile_means(std::span<const double> probability) {
    const std::size_t n = probability.size();
    std::vector<double> sum(10, 0.0);
    std::vector<std::size_t> count(10, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t bin = 10 * k / n;
        sum[bin] += probability[k];
        ++count[bin];
    }
    std::vector<double> out(10, 0.0);
    for (std::size_t b = 0; b < 10; ++b) {
        if (count[b] > 0) out[b] = sum[b] / static_cast<double>(count[b]);
    }
    return out;
}

SummaryRow summarize(std::span<const RunResult> results, const VariantInfo& info) {
    if (results.empty()) throw AggregationError("cannot summarize an empty run set");
    SummaryRow row;
    row.benchmark = info.benchmark;
    row.variant = info.variant;
    row.nodes = info.num_computational;
    row.p_reorder = info.p_reorder;
    row.runs = results.size();

    std::vector<double> i2s;
    std::vector<double> converged_i2s;
    double active = 0.0;
    double train = 0.0;
    double test = 0.0;
    std::size_t with_test = 0;
    std::size_t successes = 0;
    for (const RunResult& r : results) {
        i2s.push_back(static_cast<double>(r.iterations));
        if (r.converged) {
            converged_i2s.push_back(static_cast<double>(r.iterations));
            ++successes;
        }
        active += r.active_count;
        train += r.final_train_fitness;
        if (r.final_test_fitness) {
            test += *r.final_test_fitness;
            ++with_test;
        }
    }
    const double n = static_cast<double>(results.size());
    const MeanSd stats = mean_sd(i2s);
    row.mean_i2s = stats.mean;
    row.sd_i2s = stats.sd;
    if (!converged_i2s.empty()) row.mean_i2s_converged = mean_sd(converged_i2s).mean;
    row.mean_active = active / n;
    row.success_rate = static_cast<double>(successes) / n;
    row.mean_train_fitness = train / n;
    if (with_test > 0) row.mean_test_fitness = test / static_cast<double>(with_test);
    return row;
}

double trace_value_at(const ConvergenceTrace& trace, std::int64_t iteration) {
    const auto& pts = trace.points;
    auto it = std::upper_bound(pts.begin(), pts.end(), iteration,
                               [](std::int64_t i, const TracePoint& p) { return i < p.iteration; });
    if (it == pts.begin()) return pts.front().best_fitness;
    return std::prev(it)->best_fitness;
}

ConvergenceCurve convergence_mean(std::span<const ConvergenceTrace> traces,
                                  std::span<const std::int64_t> grid) {
    if (traces.empty()) throw AggregationError("no traces to average");
    ConvergenceCurve curve;
    std::vector<double> values(traces.size());
    for (std::int64_t g : grid) {
        for (std::size_t t = 0; t < traces.size(); ++t) values[t] = trace_value_at(traces[t], g);
        const MeanSd s = mean_sd(values);
        curve.iterations.push_back(g);
        curve.mean.push_back(s.mean);
        curve.sd.push_back(s.sd);
    }
    return curve;
}

std::vector<std::int64_t> log_grid(std::int64_t last, int points_per_decade) {
    std::vector<std::int64_t> grid;
    for (std::int64_t i = 0; i <= std::min<std::int64_t>(last, 10); ++i) grid.push_back(i);
    if (last > 10) {
        const double step = 1.0 / points_per_decade;
        for (double e = 1.0 + step; std::pow(10.0, e) < static_cast<double>(last); e += step) {
            const auto v = static_cast<std::int64_t>(std::llround(std::pow(10.0, e)));
            if (v > grid.back()) grid.push_back(v);
        }
        if (grid.back() != last) grid.push_back(last);
    }
    return grid;
}

}  // namespace cgp
