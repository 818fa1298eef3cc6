#include "cgp/kernels.hpp"

#include <bit>
#include <cmath>

namespace cgp {

std::vector<Word> pack_columns(std::span<const std::uint8_t> row_major, std::size_t rows,
                               int width) {
    const std::size_t blocks = (rows + kWordBits - 1) / kWordBits;
    std::vector<Word> packed(static_cast<std::size_t>(width) * blocks, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (int c = 0; c < width; ++c) {
            if (row_major[r * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)]) {
                packed[static_cast<std::size_t>(c) * blocks + r / kWordBits] |= Word{1}
                                                                                << (r % kWordBits);
            }
        }
    }
    return packed;
}

// ---------------------------------------------------------------------------
// PackedEvaluator

const Word* PackedEvaluator::value(int position, std::size_t blocks) const {
    const int inputs = table_->num_inputs;
    if (position < inputs) return &table_->inputs[static_cast<std::size_t>(position) * blocks];
    return &buffer_[static_cast<std::size_t>(slot_[static_cast<std::size_t>(position - inputs)]) *
                    blocks];
}

void PackedEvaluator::run(const Genotype& genome, const ActiveSet& active,
                          const PackedTable& table) {
    table_ = &table;
    const std::size_t blocks = table.blocks;
    slot_.assign(genome.nodes.size(), -1);
    int next = 0;
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        if (active.active[k]) slot_[k] = next++;
    }
    buffer_.resize(static_cast<std::size_t>(next) * blocks);
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        if (slot_[k] < 0) continue;
        const NodeGene& node = genome.nodes[k];
        const Word* a = value(node.connections[0], blocks);
        const Word* b = value(node.connections[1], blocks);
        Word* out = &buffer_[static_cast<std::size_t>(slot_[k]) * blocks];
        for (std::size_t w = 0; w < blocks; ++w) {
            out[w] = apply_boolean_word(node.function_id, a[w], b[w]);
        }
    }
}

std::vector<Word> PackedEvaluator::outputs(const Genotype& genome, const ActiveSet& active,
                                           const PackedTable& table) {
    run(genome, active, table);
    std::vector<Word> out;
    out.reserve(genome.outputs.size() * table.blocks);
    for (int o : genome.outputs) {
        const Word* v = value(o, table.blocks);
        out.insert(out.end(), v, v + table.blocks);
    }
    return out;
}

std::size_t PackedEvaluator::correct_rows(const Genotype& genome, const ActiveSet& active,
                                          const PackedTable& table) {
    run(genome, active, table);
    std::size_t correct = 0;
    for (std::size_t w = 0; w < table.blocks; ++w) {
        Word wrong = 0;
        for (std::size_t o = 0; o < genome.outputs.size(); ++o) {
            wrong |= value(genome.outputs[o], table.blocks)[w] ^
                     table.target_word(static_cast<int>(o), w);
        }
        correct += static_cast<std::size_t>(std::popcount(~wrong & table.row_mask[w]));
    }
    return correct;
}

// ---------------------------------------------------------------------------
// ColumnEvaluator

const double* ColumnEvaluator::value(int position, const ColumnData& data) const {
    if (position < data.num_inputs) {
        return &data.columns[static_cast<std::size_t>(position) * data.points];
    }
    return &buffer_[static_cast<std::size_t>(
                        slot_[static_cast<std::size_t>(position - data.num_inputs)]) *
                    data.points];
}

void ColumnEvaluator::run(const Genotype& genome, const ActiveSet& active,
                          const ColumnData& data) {
    const std::size_t n = data.points;
    slot_.assign(genome.nodes.size(), -1);
    int next = 0;
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        if (active.active[k]) slot_[k] = next++;
    }
    buffer_.resize(static_cast<std::size_t>(next) * n);
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        if (slot_[k] < 0) continue;
        const NodeGene& node = genome.nodes[k];
        const double* a = value(node.connections[0], data);
        const bool binary = function_arity(genome.params.function_set, node.function_id) == 2;
        const double* b = binary ? value(node.connections[1], data) : a;
        double* out = &buffer_[static_cast<std::size_t>(slot_[k]) * n];
        switch (node.function_id) {
            case fn::kAdd:
                for (std::size_t i = 0; i < n; ++i) out[i] = saturate(a[i] + b[i]);
                break;
            case fn::kSub:
                for (std::size_t i = 0; i < n; ++i) out[i] = saturate(a[i] - b[i]);
                break;
            case fn::kMul:
                for (std::size_t i = 0; i < n; ++i) out[i] = saturate(a[i] * b[i]);
                break;
            case fn::kPdiv:
                for (std::size_t i = 0; i < n; ++i) out[i] = protected_div(a[i], b[i]);
                break;
            case fn::kSin:
                for (std::size_t i = 0; i < n; ++i) out[i] = std::sin(a[i]);
                break;
            case fn::kCos:
                for (std::size_t i = 0; i < n; ++i) out[i] = std::cos(a[i]);
                break;
            case fn::kLn:
                for (std::size_t i = 0; i < n; ++i) out[i] = protected_log(a[i]);
                break;
            default:
                for (std::size_t i = 0; i < n; ++i) out[i] = clamped_exp(a[i]);
                break;
        }
    }
}

std::vector<double> ColumnEvaluator::outputs(const Genotype& genome, const ActiveSet& active,
                                             const ColumnData& data) {
    run(genome, active, data);
    std::vector<double> out;
    out.reserve(genome.outputs.size() * data.points);
    for (int o : genome.outputs) {
        const double* v = value(o, data);
        out.insert(out.end(), v, v + data.points);
    }
    return out;
}

double ColumnEvaluator::mean_absolute_error(const Genotype& genome, const ActiveSet& active,
                                            const ColumnData& data) {
    run(genome, active, data);
    const double* prediction = value(genome.outputs[0], data);
    double sum = 0.0;
    for (std::size_t i = 0; i < data.points; ++i) {
        sum += std::fabs(data.targets[i] - prediction[i]);
    }
    return sum / static_cast<double>(data.points);
}

}  // namespace cgp
