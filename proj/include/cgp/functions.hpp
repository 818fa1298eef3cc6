#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace cgp {

enum class FunctionSetId { boolean, regression };

std::string_view to_string(FunctionSetId id);
/// Parses `boolean` / `regression`; throws ConfigError otherwise.
FunctionSetId parse_function_set(std::string_view name);

namespace fn {

// Boolean set.
inline constexpr int kAnd = 0;
inline constexpr int kOr = 1;
inline constexpr int kNand = 2;
inline constexpr int kNor = 3;

// Regression set.
inline constexpr int kAdd = 0;
inline constexpr int kSub = 1;
inline constexpr int kMul = 2;
inline constexpr int kPdiv = 3;
inline constexpr int kSin = 4;
inline constexpr int kCos = 5;
inline constexpr int kLn = 6;
inline constexpr int kExp = 7;

// Protection thresholds.
inline constexpr double kDivisionEpsilon = 1e-9;
inline constexpr double kLogEpsilon = 1e-9;
inline constexpr double kExpClamp = 700.0;

}  // namespace fn

/// Number of functions in the set.
int function_count(FunctionSetId set);
/// How many connection genes `function_id` actually reads.
int function_arity(FunctionSetId set, int function_id);
std::string_view function_name(FunctionSetId set, int function_id);

/// Human-readable protection conventions, embedded in every result file.
std::string_view protection_conventions();

// Scalar semantics. `args` must hold at least the function's arity.
// Unknown ids throw std::out_of_range.
std::uint8_t apply_boolean(int function_id, std::span<const std::uint8_t> args);
double apply_regression(int function_id, std::span<const double> args);

/// Bit-sliced boolean: each bit of the words is an independent row.
inline std::uint64_t apply_boolean_word(int function_id, std::uint64_t a, std::uint64_t b) {
    switch (function_id) {
        case fn::kAnd: return a & b;
        case fn::kOr: return a | b;
        case fn::kNand: return ~(a & b);
        default: return ~(a | b);
    }
}

/// Keeps finite results finite: overflow saturates at +-max double.
inline double saturate(double value) {
    constexpr double kMax = std::numeric_limits<double>::max();
    if (value > kMax) return kMax;
    if (value < -kMax) return -kMax;
    return value;
}

inline double protected_div(double a, double b) {
    return std::fabs(b) < fn::kDivisionEpsilon ? 1.0 : saturate(a / b);
}
inline double protected_log(double a) {
    return std::fabs(a) < fn::kLogEpsilon ? 0.0 : std::log(std::fabs(a));
}
inline double clamped_exp(double a) { return std::exp(std::min(a, fn::kExpClamp)); }

}  // namespace cgp
