#pragma once

// Whole-dataset evaluation kernels. The row-wise `evaluate` in genome.hpp is the
// reference these must match exactly.

#include <cstdint>
#include <span>
#include <vector>

#include "cgp/genome.hpp"

namespace cgp {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

/// Truth table packed column-wise: bit r of block b is row 64*b + r.
struct PackedTable {
    int num_inputs = 0;
    int num_outputs = 0;
    std::size_t rows = 0;
    std::size_t blocks = 0;
    std::vector<Word> inputs;   ///< [input * blocks + block]
    std::vector<Word> targets;  ///< [output * blocks + block]
    std::vector<Word> row_mask; ///< valid rows per block

    Word input_word(int input, std::size_t block) const {
        return inputs[static_cast<std::size_t>(input) * blocks + block];
    }
    Word target_word(int output, std::size_t block) const {
        return targets[static_cast<std::size_t>(output) * blocks + block];
    }
};

/// Packs row-major bits (`rows` x `width`, one byte per bit) into column words.
std::vector<Word> pack_columns(std::span<const std::uint8_t> row_major, std::size_t rows,
                               int width);

/// Real-valued dataset stored column-wise.
struct ColumnData {
    int num_inputs = 0;
    std::size_t points = 0;
    std::vector<double> columns;  ///< [input * points + i]
    std::vector<double> targets;  ///< one target per point

    double input(int column, std::size_t point) const {
        return columns[static_cast<std::size_t>(column) * points + point];
    }
};

/// Bit-sliced evaluator over a PackedTable. Holds scratch space, so keep one per
/// thread.
class PackedEvaluator {
public:
    /// Output words, laid out [output * blocks + block]. Bits past `rows` are junk.
    std::vector<Word> outputs(const Genotype& genome, const ActiveSet& active,
                              const PackedTable& table);
    /// Rows where every output bit matches the target.
    std::size_t correct_rows(const Genotype& genome, const ActiveSet& active,
                             const PackedTable& table);

private:
    void run(const Genotype& genome, const ActiveSet& active, const PackedTable& table);
    const Word* value(int position, std::size_t blocks) const;

    std::vector<int> slot_;
    std::vector<Word> buffer_;
    const PackedTable* table_ = nullptr;
};

/// Column-at-a-time evaluator over a ColumnData. One per thread.
class ColumnEvaluator {
public:
    /// Predictions for output `o` at point i are at [o * points + i].
    std::vector<double> outputs(const Genotype& genome, const ActiveSet& active,
                                const ColumnData& data);
    /// Mean absolute error against `data.targets` of output 0.
    double mean_absolute_error(const Genotype& genome, const ActiveSet& active,
                               const ColumnData& data);

private:
    void run(const Genotype& genome, const ActiveSet& active, const ColumnData& data);
    const double* value(int position, const ColumnData& data) const;

    std::vector<int> slot_;
    std::vector<double> buffer_;
};

}  // namespace cgp
