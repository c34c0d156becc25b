#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sbo {

enum class SizeFamily {
    ExplicitTable,
    Constant,
    Geometric,         // w(i) = q^i
    Power,             // w(i) = i^alpha
    LogPower,          // w(i) = (log(i+1))^p
    LogPlusTwoLogLog,  // w(i) = log(i+1) + 2 log log(i+1), w(1) = log 2
    KaramataStirling,  // w(1) = 1, w(i+1) = w(i) (theta+i-1)/i
};

const char* family_name(SizeFamily family);

enum class Tristate { Yes, No, NotApplicable };

const char* tristate_name(Tristate t);

struct AccumulationSet {
    bool zero = false;
    bool infinity = false;
    bool interior = false;

    bool operator==(const AccumulationSet&) const = default;
};

// Analytic facts about a size function that the order-type classifier
// consumes.  `beta` is the convergence abscissa of sum_i exp(-x w(i)) taken
// over the subsequence with w(i) -> infinity; it is absent when no such
// subsequence exists.  May be +infinity.
struct SizeMetadata {
    AccumulationSet accumulation;
    Tristate small_part_summable = Tristate::NotApplicable;  // sum over {i : w(i) <= 1}
    Tristate total_summable = Tristate::NotApplicable;
    std::optional<double> beta;
    Tristate converges_at_beta = Tristate::NotApplicable;
};

// Immutable description of a size function w(i) > 0, i >= 1.
class SizeFunction {
  public:
    static SizeFunction explicit_table(std::vector<double> values);
    static SizeFunction constant(double c);
    static SizeFunction geometric(double q);
    static SizeFunction power(double alpha);
    static SizeFunction log_power(double p);
    static SizeFunction log_plus_two_loglog();
    static SizeFunction karamata_stirling(double theta);

    SizeFamily family() const { return family_; }
    double param() const { return param_; }
    const std::vector<double>& table() const { return table_; }

    std::int64_t truncation_default() const { return truncation_default_; }
    SizeFunction& set_truncation_default(std::int64_t n);

    // w(i).  Throws std::out_of_range for table misses, std::overflow_error /
    // std::underflow_error when the value leaves the positive range of double.
    double evaluate(std::int64_t i) const;

    // log w(i), computed without forming w(i); finite wherever the family is
    // defined, so samplers can order items at any scale.
    double log_evaluate(std::int64_t i) const;

    // S_n = w(1) + ... + w(n), compensated summation.
    double partial_sum(std::int64_t n) const;

    // First n weights / log-weights in one streaming pass.
    std::vector<double> weights(std::int64_t n) const;
    std::vector<double> log_weights(std::int64_t n) const;

    // Non-throwing w(i): 0 on underflow, +infinity on overflow.  Series
    // kernels use this; the extremes map to the correct limiting terms.
    double weight_raw(std::int64_t i) const;

    // Streaming non-throwing weights, same extremes policy as weight_raw.
    std::vector<double> weights_raw(std::int64_t n) const;

    nlohmann::json to_json() const;
    static SizeFunction from_json(const nlohmann::json& j);

  private:
    SizeFunction(SizeFamily family, double param, std::vector<double> table);

    SizeFamily family_;
    double param_ = 0.0;
    std::vector<double> table_;
    std::int64_t truncation_default_ = 100;
};

// Closed-form metadata for the parametric families.  Throws
// std::invalid_argument for ExplicitTable; tables are handled by the numeric
// estimation path in the classifier.
SizeMetadata analytic_metadata(const SizeFunction& desc);

}  // namespace sbo
