#include "cgp/functions.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

constexpr std::array<std::string_view, 4> kBooleanNames{"AND", "OR", "NAND", "NOR"};
constexpr std::array<std::string_view, 8> kRegressionNames{"ADD", "SUB", "MUL", "PDIV",
                                                           "SIN", "COS", "LN",  "EXP"};

void check_id(FunctionSetId set, int function_id) {
    if (function_id < 0 || function_id >= function_count(set)) {
        throw std::out_of_range("function id " + std::to_string(function_id) +
                                " outside " + std::string(to_string(set)) + " set");
    }
}

}  // namespace

std::string_view to_string(FunctionSetId id) {
    return id == FunctionSetId::boolean ? "boolean" : "regression";
}

FunctionSetId parse_function_set(std::string_view name) {
    if (name == "boolean") return FunctionSetId::boolean;
    if (name == "regression") return FunctionSetId::regression;
    throw ConfigError("unknown function set '" + std::string(name) + "'");
}

int function_count(FunctionSetId set) {
    return set == FunctionSetId::boolean ? static_cast<int>(kBooleanNames.size())
                                         : static_cast<int>(kRegressionNames.size());
}

int function_arity(FunctionSetId set, int function_id) {
    check_id(set, function_id);
    if (set == FunctionSetId::boolean) return 2;
    return function_id <= fn::kPdiv ? 2 : 1;
}

std::string_view function_name(FunctionSetId set, int function_id) {
    check_id(set, function_id);
    return set == FunctionSetId::boolean ? kBooleanNames[function_id]
                                         : kRegressionNames[function_id];
}

std::string_view protection_conventions() {
    return "PDIV(a,b)=1 if |b|<1e-9 else a/b; LN(x)=0 if |x|<1e-9 else ln|x|; "
           "EXP(x)=exp(min(x,700)); ADD/SUB/MUL/PDIV saturate at +-DBL_MAX";
}

std::uint8_t apply_boolean(int function_id, std::span<const std::uint8_t> args) {
    check_id(FunctionSetId::boolean, function_id);
    const bool a = args[0] != 0;
    const bool b = args[1] != 0;
    switch (function_id) {
        case fn::kAnd: return a && b;
        case fn::kOr: return a || b;
        case fn::kNand: return !(a && b);
        default: return !(a || b);
    }
}

double apply_regression(int function_id, std::span<const double> args) {
    check_id(FunctionSetId::regression, function_id);
    const double a = args[0];
    switch (function_id) {
        case fn::kAdd: return saturate(a + args[1]);
        case fn::kSub: return saturate(a - args[1]);
        case fn::kMul: return saturate(a * args[1]);
        case fn::kPdiv: return protected_div(a, args[1]);
        case fn::kSin: return std::sin(a);
        case fn::kCos: return std::cos(a);
        case fn::kLn: return protected_log(a);
        default: return clamped_exp(a);
    }
}

}  // namespace cgp
