#include "sbo/sizes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbo/kernels.hpp"

namespace sbo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Switch point for the Karamata-Stirling product recurrence: past this the
// running product is carried in log space.
constexpr double kProductCeiling = 1e300;

void check_positive_finite(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

const char* family_name(SizeFamily family) {
    switch (family) {
        case SizeFamily::ExplicitTable: return "explicit_table";
        case SizeFamily::Constant: return "constant";
        case SizeFamily::Geometric: return "geometric";
        case SizeFamily::Power: return "power";
        case SizeFamily::LogPower: return "log_power";
        case SizeFamily::LogPlusTwoLogLog: return "log_plus_two_loglog";
        case SizeFamily::KaramataStirling: return "karamata_stirling";
    }
    return "?";
}

const char* tristate_name(Tristate t) {
    switch (t) {
        case Tristate::Yes: return "yes";
        case Tristate::No: return "no";
        case Tristate::NotApplicable: return "not_applicable";
    }
    return "?";
}

SizeFunction::SizeFunction(SizeFamily family, double param, std::vector<double> table)
    : family_(family), param_(param), table_(std::move(table)) {}

SizeFunction SizeFunction::explicit_table(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("table must be nonempty");
    for (double v : values) check_positive_finite(v, "table entry");
    SizeFunction f(SizeFamily::ExplicitTable, 0.0, std::move(values));
    f.truncation_default_ = static_cast<std::int64_t>(f.table_.size());
    return f;
}

SizeFunction SizeFunction::constant(double c) {
    check_positive_finite(c, "constant size");
    return SizeFunction(SizeFamily::Constant, c, {});
}

SizeFunction SizeFunction::geometric(double q) {
    check_positive_finite(q, "geometric ratio");
    return SizeFunction(SizeFamily::Geometric, q, {});
}

SizeFunction SizeFunction::power(double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("power exponent must be finite");
    return SizeFunction(SizeFamily::Power, alpha, {});
}

SizeFunction SizeFunction::log_power(double p) {
    check_positive_finite(p, "log power exponent");
    return SizeFunction(SizeFamily::LogPower, p, {});
}

SizeFunction SizeFunction::log_plus_two_loglog() {
    return SizeFunction(SizeFamily::LogPlusTwoLogLog, 0.0, {});
}

SizeFunction SizeFunction::karamata_stirling(double theta) {
    check_positive_finite(theta, "theta");
    return SizeFunction(SizeFamily::KaramataStirling, theta, {});
}

SizeFunction& SizeFunction::set_truncation_default(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("truncation default must be >= 1");
    if (family_ == SizeFamily::ExplicitTable && n > static_cast<std::int64_t>(table_.size())) {
        throw std::out_of_range("truncation default exceeds table length");
    }
    truncation_default_ = n;
    return *this;
}

double SizeFunction::weight_raw(std::int64_t i) const {
    if (i < 1) throw std::out_of_range("size function index must be >= 1");
    switch (family_) {
        case SizeFamily::ExplicitTable:
            if (i > static_cast<std::int64_t>(table_.size())) {
                throw std::out_of_range("index exceeds table length");
            }
            return table_[static_cast<std::size_t>(i - 1)];
        case SizeFamily::Constant:
            return param_;
        case SizeFamily::Geometric:
            return std::pow(param_, static_cast<double>(i));
        case SizeFamily::Power:
            return std::pow(static_cast<double>(i), param_);
        case SizeFamily::LogPower:
            return std::pow(std::log1p(static_cast<double>(i)), param_);
        case SizeFamily::LogPlusTwoLogLog: {
            if (i == 1) return std::log(2.0);
            const double l = std::log1p(static_cast<double>(i));
            return l + 2.0 * std::log(l);
        }
        case SizeFamily::KaramataStirling:
            // O(1) log-gamma route; evaluate() keeps the exact recurrence.
            return std::exp(log_evaluate(i));
    }
    return 0.0;
}

std::vector<double> SizeFunction::weights_raw(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (family_ == SizeFamily::KaramataStirling) {
        double w = 1.0;
        for (std::int64_t i = 1; i <= n; ++i) {
            out[static_cast<std::size_t>(i - 1)] = w;
            w *= (param_ + static_cast<double>(i) - 1.0) / static_cast<double>(i);
        }
        return out;
    }
    for (std::int64_t i = 1; i <= n; ++i) out[static_cast<std::size_t>(i - 1)] = weight_raw(i);
    return out;
}

double SizeFunction::evaluate(std::int64_t i) const {
    double w;
    if (family_ == SizeFamily::KaramataStirling) {
        // w(i) = theta (theta+1) ... (theta+i-2) / (i-1)!, by recurrence,
        // moving into log space once the product nears the double ceiling.
        if (i < 1) throw std::out_of_range("size function index must be >= 1");
        w = 1.0;
        double logw = 0.0;
        bool in_log_space = false;
        for (std::int64_t k = 1; k < i; ++k) {
            const double ratio = (param_ + static_cast<double>(k) - 1.0) / static_cast<double>(k);
            if (!in_log_space) {
                if (w * ratio > kProductCeiling) {
                    in_log_space = true;
                    logw = std::log(w);
                } else {
                    w *= ratio;
                }
            }
            if (in_log_space) logw += std::log(ratio);
        }
        if (in_log_space) w = std::exp(logw);
    } else {
        w = weight_raw(i);
    }
    if (w == 0.0) throw std::underflow_error("size underflows to zero at this index");
    if (std::isinf(w)) throw std::overflow_error("size exceeds the representable range");
    return w;
}

double SizeFunction::log_evaluate(std::int64_t i) const {
    if (i < 1) throw std::out_of_range("size function index must be >= 1");
    switch (family_) {
        case SizeFamily::ExplicitTable:
            if (i > static_cast<std::int64_t>(table_.size())) {
                throw std::out_of_range("index exceeds table length");
            }
            return std::log(table_[static_cast<std::size_t>(i - 1)]);
        case SizeFamily::Constant:
            return std::log(param_);
        case SizeFamily::Geometric:
            return static_cast<double>(i) * std::log(param_);
        case SizeFamily::Power:
            return param_ * std::log(static_cast<double>(i));
        case SizeFamily::LogPower:
            return param_ * std::log(std::log1p(static_cast<double>(i)));
        case SizeFamily::LogPlusTwoLogLog:
            return std::log(weight_raw(i));
        case SizeFamily::KaramataStirling:
            // log Gamma form of the rising-factorial quotient.
            return std::lgamma(param_ + static_cast<double>(i) - 1.0) - std::lgamma(param_) -
                   std::lgamma(static_cast<double>(i));
    }
    return 0.0;
}

std::vector<double> SizeFunction::weights(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (family_ == SizeFamily::KaramataStirling) {
        // Single pass over the recurrence rather than O(n^2) restarts.
        double w = 1.0;
        for (std::int64_t i = 1; i <= n; ++i) {
            if (!(w > 0.0) || std::isinf(w)) throw std::overflow_error("size range exceeded");
            out[static_cast<std::size_t>(i - 1)] = w;
            w *= (param_ + static_cast<double>(i) - 1.0) / static_cast<double>(i);
        }
        return out;
    }
    for (std::int64_t i = 1; i <= n; ++i) out[static_cast<std::size_t>(i - 1)] = evaluate(i);
    return out;
}

std::vector<double> SizeFunction::log_weights(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (family_ == SizeFamily::KaramataStirling) {
        double logw = 0.0;
        for (std::int64_t i = 1; i <= n; ++i) {
            out[static_cast<std::size_t>(i - 1)] = logw;
            logw += std::log((param_ + static_cast<double>(i) - 1.0) / static_cast<double>(i));
        }
        return out;
    }
    for (std::int64_t i = 1; i <= n; ++i) out[static_cast<std::size_t>(i - 1)] = log_evaluate(i);
    return out;
}

double SizeFunction::partial_sum(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("partial sum needs n >= 1");
    if (family_ == SizeFamily::KaramataStirling) {
        kernels::CompensatedSum acc;
        double w = 1.0;
        for (std::int64_t i = 1; i <= n; ++i) {
            if (!(w > 0.0) || std::isinf(w)) throw std::overflow_error("size range exceeded");
            acc.add(w);
            w *= (param_ + static_cast<double>(i) - 1.0) / static_cast<double>(i);
        }
        return acc.value();
    }
    kernels::CompensatedSum acc;
    for (std::int64_t i = 1; i <= n; ++i) acc.add(evaluate(i));
    return acc.value();
}

nlohmann::json SizeFunction::to_json() const {
    nlohmann::json j;
    j["family"] = family_name(family_);
    nlohmann::json params = nlohmann::json::object();
    switch (family_) {
        case SizeFamily::Constant: params["c"] = param_; break;
        case SizeFamily::Geometric: params["q"] = param_; break;
        case SizeFamily::Power: params["alpha"] = param_; break;
        case SizeFamily::LogPower: params["p"] = param_; break;
        case SizeFamily::KaramataStirling: params["theta"] = param_; break;
        case SizeFamily::ExplicitTable:
        case SizeFamily::LogPlusTwoLogLog: break;
    }
    params["truncation_default"] = truncation_default_;
    j["params"] = params;
    if (family_ == SizeFamily::ExplicitTable) j["table"] = table_;
    return j;
}

SizeFunction SizeFunction::from_json(const nlohmann::json& j) {
    const std::string name = j.at("family").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    auto param = [&](const char* key) { return params.at(key).get<double>(); };

    std::optional<SizeFunction> f;
    if (name == "explicit_table") {
        f = explicit_table(j.at("table").get<std::vector<double>>());
    } else if (name == "constant") {
        f = constant(param("c"));
    } else if (name == "geometric") {
        f = geometric(param("q"));
    } else if (name == "power") {
        f = power(param("alpha"));
    } else if (name == "log_power") {
        f = log_power(param("p"));
    } else if (name == "log_plus_two_loglog") {
        f = log_plus_two_loglog();
    } else if (name == "karamata_stirling") {
        f = karamata_stirling(param("theta"));
    } else {
        throw std::invalid_argument("unknown size family: " + name);
    }
    if (params.contains("truncation_default")) {
        f->set_truncation_default(params.at("truncation_default").get<std::int64_t>());
    }
    return *f;
}

// ---------------------------------------------------------------------------
// Per-family metadata table.  Each row states the analytic facts that drive
// the classification; the limits involved are closed-form per family, so the
// table is hard-coded rather than estimated.
//
//   constant c            accumulates at c; nothing is summable.
//   geometric q<1         w -> 0 geometrically; everything summable.
//   geometric q=1         constant 1.
//   geometric q>1         w -> infinity; log i / q^i -> 0, so beta = 0.
//   power alpha<-1        summable tail.
//   power -1<=alpha<0     w -> 0 with divergent sum.
//   power alpha=0         constant 1.
//   power alpha>0         w -> infinity; log i / i^alpha -> 0, so beta = 0.
//   log_power p<1         w -> infinity sublogarithmically: beta = infinity.
//   log_power p=1         beta = 1; sum (i+1)^{-1} diverges at 1.
//   log_power p>1         beta = 0.
//   log_plus_two_loglog   beta = 1; sum 1/((i+1) log^2(i+1)) converges at 1.
//   karamata_stirling     theta<1: w -> 0 with divergent sum; theta=1:
//                         constant 1; theta>1: regularly varying growth,
//                         classified dense (beta recorded as infinity).
// ---------------------------------------------------------------------------
SizeMetadata analytic_metadata(const SizeFunction& desc) {
    SizeMetadata m;
    const double p = desc.param();
    switch (desc.family()) {
        case SizeFamily::ExplicitTable:
            throw std::invalid_argument(
                "explicit tables carry no analytic metadata; use the numeric estimator");

        case SizeFamily::Constant:
            m.accumulation = {.zero = false, .infinity = false, .interior = true};
            m.total_summable = Tristate::No;
            m.small_part_summable = (p <= 1.0) ? Tristate::No : Tristate::NotApplicable;
            return m;

        case SizeFamily::Geometric:
            if (p < 1.0) {
                m.accumulation = {.zero = true, .infinity = false, .interior = false};
                m.total_summable = Tristate::Yes;
                m.small_part_summable = Tristate::Yes;
            } else if (p == 1.0) {
                m.accumulation = {.zero = false, .infinity = false, .interior = true};
                m.total_summable = Tristate::No;
                m.small_part_summable = Tristate::No;
            } else {
                m.accumulation = {.zero = false, .infinity = true, .interior = false};
                m.total_summable = Tristate::No;
                m.small_part_summable = Tristate::NotApplicable;  // q^i > 1 throughout
                m.beta = 0.0;
                m.converges_at_beta = Tristate::No;  // terms -> 1 at x = 0
            }
            return m;

        case SizeFamily::Power:
            if (p < -1.0) {
                m.accumulation = {.zero = true, .infinity = false, .interior = false};
                m.total_summable = Tristate::Yes;
                m.small_part_summable = Tristate::Yes;
            } else if (p < 0.0) {
                m.accumulation = {.zero = true, .infinity = false, .interior = false};
                m.total_summable = Tristate::No;
                m.small_part_summable = Tristate::No;
            } else if (p == 0.0) {
                m.accumulation = {.zero = false, .infinity = false, .interior = true};
                m.total_summable = Tristate::No;
                m.small_part_summable = Tristate::No;
            } else {
                m.accumulation = {.zero = false, .infinity = true, .interior = false};
                m.total_summable = Tristate::No;
                m.small_part_summable = Tristate::Yes;  // only w(1) = 1
                m.beta = 0.0;
                m.converges_at_beta = Tristate::No;
            }
            return m;

        case SizeFamily::LogPower:
            m.accumulation = {.zero = false, .infinity = true, .interior = false};
            m.total_summable = Tristate::No;
            m.small_part_summable = Tristate::Yes;  // only w(1) = (log 2)^p
            if (p < 1.0) {
                m.beta = kInf;
                m.converges_at_beta = Tristate::NotApplicable;
            } else if (p == 1.0) {
                m.beta = 1.0;
                m.converges_at_beta = Tristate::No;  // harmonic at x = 1
            } else {
                m.beta = 0.0;
                m.converges_at_beta = Tristate::No;
            }
            return m;

        case SizeFamily::LogPlusTwoLogLog:
            m.accumulation = {.zero = false, .infinity = true, .interior = false};
            m.total_summable = Tristate::No;
            m.small_part_summable = Tristate::Yes;  // only w(1) = log 2
            m.beta = 1.0;
            m.converges_at_beta = Tristate::Yes;
            return m;

        case SizeFamily::KaramataStirling:
            if (p < 1.0) {
                m.accumulation = {.zero = true, .infinity = false, .interior = false};
                m.total_summable = Tristate::No;
                m.small_part_summable = Tristate::No;
            } else if (p == 1.0) {
                m.accumulation = {.zero = false, .infinity = false, .interior = true};
                m.total_summable = Tristate::No;
                m.small_part_summable = Tristate::No;
            } else {
                m.accumulation = {.zero = false, .infinity = true, .interior = false};
                m.total_summable = Tristate::No;
                m.small_part_summable = Tristate::Yes;  // only w(1) = 1
                m.beta = kInf;
                m.converges_at_beta = Tristate::NotApplicable;
            }
            return m;
    }
    throw std::logic_error("unreachable");
}

}  // namespace sbo
