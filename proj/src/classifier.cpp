#include "sbo/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbo/kernels.hpp"

namespace sbo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_beta(const SizeMetadata& meta) {
    if (!meta.beta.has_value()) {
        throw std::invalid_argument("incomplete metadata: abscissa unknown");
    }
    if (*meta.beta < 0.0) throw std::invalid_argument("abscissa must be nonnegative");
    return *meta.beta;
}

Tristate require_convergence_at_beta(const SizeMetadata& meta) {
    if (meta.converges_at_beta == Tristate::NotApplicable) {
        throw std::invalid_argument("incomplete metadata: convergence at the abscissa unknown");
    }
    return meta.converges_at_beta;
}

}  // namespace

const char* to_string(OrderType type) {
    switch (type) {
        case OrderType::ZPos: return "ZPos";
        case OrderType::ZNeg: return "ZNeg";
        case OrderType::Z: return "Z";
        case OrderType::Q: return "Q";
        case OrderType::QThenFinite: return "QThenFinite";
        case OrderType::QThenZNeg: return "QThenZNeg";
        case OrderType::QThenZPos: return "QThenZPos";
        case OrderType::QThenZ: return "QThenZ";
    }
    return "?";
}

std::pair<OrderType, ClassificationEvidence> classify(const SizeMetadata& meta) {
    ClassificationEvidence ev;
    ev.beta = meta.beta;
    ev.dirichlet_converges_at_beta = meta.converges_at_beta;
    ev.small_part_summable = meta.small_part_summable;
    ev.accumulation = meta.accumulation;

    auto fire = [&](const char* label, OrderType type) {
        ev.fired_case = label;
        return std::make_pair(type, ev);
    };

    // 1. Summable sizes: every item is eventually sampled.
    if (meta.total_summable == Tristate::Yes) return fire("summable", OrderType::ZPos);

    // 2. An interior accumulation point makes the point cloud dense.
    if (meta.accumulation.interior) return fire("interior_accumulation", OrderType::Q);

    const bool zero = meta.accumulation.zero;
    const bool inf_acc = meta.accumulation.infinity;

    // 3. Sizes vanishing with divergent sum: dense as well.
    if (zero && !inf_acc) {
        if (meta.total_summable == Tristate::NotApplicable) {
            throw std::invalid_argument("incomplete metadata: total summability unknown");
        }
        return fire("vanishing_nonsummable", OrderType::Q);
    }

    // 4. Sizes diverging to infinity: decided by the abscissa.
    if (inf_acc && !zero) {
        const double beta = require_beta(meta);
        if (beta == 0.0) return fire("divergent_beta_zero", OrderType::ZNeg);
        if (std::isinf(beta)) return fire("divergent_beta_infinite", OrderType::Q);
        if (require_convergence_at_beta(meta) == Tristate::Yes) {
            return fire("divergent_beta_finite_convergent", OrderType::QThenFinite);
        }
        return fire("divergent_beta_finite_divergent", OrderType::QThenZNeg);
    }

    // 5./6. Combined case: small parts clustering at zero plus a subsequence
    // diverging to infinity.
    if (zero && inf_acc) {
        if (meta.small_part_summable == Tristate::No) {
            // The small parts alone already fill every interval in expectation.
            ev.note = "small parts nonsummable: dense cloud below, classified dense";
            return fire("combined_small_part_nonsummable", OrderType::Q);
        }
        const double beta = require_beta(meta);
        if (beta == 0.0) return fire("combined_beta_zero", OrderType::Z);
        if (std::isinf(beta)) return fire("combined_beta_infinite", OrderType::Q);
        if (require_convergence_at_beta(meta) == Tristate::Yes) {
            return fire("combined_beta_finite_convergent", OrderType::QThenZPos);
        }
        return fire("combined_beta_finite_divergent", OrderType::QThenZ);
    }

    throw std::invalid_argument("incomplete metadata: no accumulation behavior recorded");
}

double abscissa_analytic(const SizeFunction& desc) {
    const double p = desc.param();
    switch (desc.family()) {
        case SizeFamily::LogPower:
            if (p < 1.0) return kInf;
            if (p == 1.0) return 1.0;
            return 0.0;
        case SizeFamily::LogPlusTwoLogLog:
            return 1.0;
        case SizeFamily::Geometric:
            if (p > 1.0) return 0.0;
            break;
        case SizeFamily::Power:
            if (p > 0.0) return 0.0;
            break;
        default:
            break;
    }
    throw std::domain_error("family has no divergent subsequence with a closed-form abscissa");
}

namespace {

template <bool Parallel>
AbscissaEstimate abscissa_scan(const SizeFunction& desc, std::int64_t i_max,
                               std::int64_t window) {
    if (window < 100) throw std::invalid_argument("window must be >= 100");
    if (i_max < window) throw std::invalid_argument("i_max must be >= window");

    auto term = [&desc](std::int64_t i) {
        const double w = std::exp(desc.log_evaluate(i));
        const double r = std::log(static_cast<double>(i)) / w;
        return std::isnan(r) ? 0.0 : r;  // w = +inf gives the correct limit 0
    };
    auto block_max = [&](std::int64_t lo, std::int64_t hi) {
        if constexpr (Parallel) {
            return kernels::max_parallel(lo, hi, term);
        } else {
            return kernels::max_serial(lo, hi, term);
        }
    };

    AbscissaEstimate est;

    // Running max recorded at powers of two: the dyadic block maxima are
    // combined by prefix max, so the scan is a set of independent reductions.
    double running = term(1);
    std::int64_t prev = 1;
    for (std::int64_t checkpoint = 2; checkpoint <= i_max; checkpoint *= 2) {
        running = std::max(running, block_max(prev + 1, checkpoint));
        est.checkpoints.emplace_back(checkpoint, running);
        prev = checkpoint;
        if (checkpoint > i_max / 2) break;
    }
    if (prev < i_max) {
        running = std::max(running, block_max(prev + 1, i_max));
        est.checkpoints.emplace_back(i_max, running);
    }

    est.value = block_max(std::max<std::int64_t>(1, i_max - window), i_max);

    // Stabilization check across the last two doublings of the running max.
    if (est.checkpoints.size() >= 3) {
        const auto level = [&](std::size_t back) {
            return est.checkpoints[est.checkpoints.size() - 1 - back].second;
        };
        const double m0 = level(0), m1 = level(1), m2 = level(2);
        const bool stable =
            std::abs(m0 - m1) <= 0.05 * std::abs(m0) && std::abs(m1 - m2) <= 0.05 * std::abs(m1);
        est.low_confidence = !stable;
    } else {
        est.low_confidence = true;
    }
    return est;
}

}  // namespace

AbscissaEstimate abscissa_numeric(const SizeFunction& desc, std::int64_t i_max,
                                  std::int64_t window) {
    return abscissa_scan<true>(desc, i_max, window);
}

AbscissaEstimate abscissa_numeric_serial(const SizeFunction& desc, std::int64_t i_max,
                                         std::int64_t window) {
    return abscissa_scan<false>(desc, i_max, window);
}

double dirichlet_partial(const SizeFunction& desc, double x, std::int64_t n) {
    if (!(x > 0.0)) throw std::invalid_argument("x must be positive");
    return kernels::sum_parallel(1, n,
                                 [&](std::int64_t i) { return std::exp(-x * desc.weight_raw(i)); });
}

double dirichlet_partial_serial(const SizeFunction& desc, double x, std::int64_t n) {
    if (!(x > 0.0)) throw std::invalid_argument("x must be positive");
    return kernels::sum_serial(1, n,
                               [&](std::int64_t i) { return std::exp(-x * desc.weight_raw(i)); });
}

namespace {

double mean_measure_term(const SizeFunction& desc, double x, double y, std::int64_t i) {
    const double w = desc.weight_raw(i);
    return std::exp(-w * x) - std::exp(-w * y);
}

void check_interval(double x, double y) {
    if (!(x >= 0.0) || !(y >= x)) throw std::invalid_argument("need 0 <= x <= y");
}

}  // namespace

double mean_measure(const SizeFunction& desc, double x, double y, std::int64_t n_terms) {
    check_interval(x, y);
    return kernels::sum_parallel(1, n_terms,
                                 [&](std::int64_t i) { return mean_measure_term(desc, x, y, i); });
}

double mean_measure_serial(const SizeFunction& desc, double x, double y, std::int64_t n_terms) {
    check_interval(x, y);
    return kernels::sum_serial(1, n_terms,
                               [&](std::int64_t i) { return mean_measure_term(desc, x, y, i); });
}

AbtResult abt_embeddable(const SizeMetadata& meta) {
    AbtResult r;
    r.no_interior_accumulation = !meta.accumulation.interior;
    if (meta.small_part_summable == Tristate::NotApplicable) {
        r.small_part_summable = true;  // no small parts at all
    } else {
        r.small_part_summable = meta.small_part_summable == Tristate::Yes;
    }
    if (meta.accumulation.infinity) {
        r.abscissa_zero = require_beta(meta) == 0.0;
    } else {
        r.abscissa_zero = true;  // vacuous without a divergent subsequence
    }
    r.embeddable = r.no_interior_accumulation && r.small_part_summable && r.abscissa_zero;
    return r;
}

// ---------------------------------------------------------------------------
// Numeric estimation for explicit tables.  Finite-sample heuristics:
//   accumulation   trend of running min/max between the two halves, plus a
//                  cluster check around the tail median for interior points;
//   summability    relative growth of the partial sums over the last half;
//   beta           windowed abscissa estimate;
//   convergence    log-log slope of the Dirichlet increments at beta.
// ---------------------------------------------------------------------------
SizeMetadata estimate_metadata(const SizeFunction& table, TableEstimateOptions opts) {
    if (table.family() != SizeFamily::ExplicitTable) {
        throw std::invalid_argument("numeric estimation is for explicit tables");
    }
    const std::vector<double>& values = table.table();
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    if (n < 16) throw std::invalid_argument("table too short to estimate metadata");

    const std::int64_t half = n / 2;
    const auto head_begin = values.begin();
    const auto tail_begin = values.begin() + half;

    const double head_min = *std::min_element(head_begin, tail_begin);
    const double head_max = *std::max_element(head_begin, tail_begin);
    const double tail_min = *std::min_element(tail_begin, values.end());
    const double tail_max = *std::max_element(tail_begin, values.end());

    SizeMetadata m;
    m.accumulation.zero = tail_min < head_min || tail_min <= 1e-9;
    m.accumulation.infinity = tail_max > head_max || tail_max >= 1e9;

    // Interior cluster: a constant-scale value the tail keeps returning to.
    std::vector<double> tail(tail_begin, values.end());
    std::nth_element(tail.begin(), tail.begin() + tail.size() / 2, tail.end());
    const double med = tail[tail.size() / 2];
    if (med > 1e-9 && med < 1e9) {
        const auto near_med = static_cast<std::size_t>(
            std::count_if(tail.begin(), tail.end(),
                          [&](double v) { return v >= med / 2 && v <= med * 2; }));
        const bool pinned_low = m.accumulation.zero && med <= 2 * tail_min;
        const bool pinned_high = m.accumulation.infinity && med >= tail_max / 2;
        if (near_med >= tail.size() / 4 && !pinned_low && !pinned_high) {
            m.accumulation.interior = true;
        }
    }

    // Summability: the last half must contribute a vanishing share.
    auto summable = [&](auto include) {
        kernels::CompensatedSum full, first_half;
        for (std::int64_t i = 0; i < n; ++i) {
            const double v = values[static_cast<std::size_t>(i)];
            if (!include(v)) continue;
            full.add(v);
            if (i < half) first_half.add(v);
        }
        if (full.value() == 0.0) return Tristate::NotApplicable;
        const double growth = (full.value() - first_half.value()) / full.value();
        return growth < 0.01 ? Tristate::Yes : Tristate::No;
    };
    m.total_summable = summable([](double) { return true; });
    m.small_part_summable = summable([](double v) { return v <= 1.0; });

    if (m.accumulation.infinity) {
        const std::int64_t window =
            opts.window > 0 ? opts.window : std::max<std::int64_t>(100, n / 10);
        m.beta = abscissa_numeric(table, n, std::min(window, n)).value;

        // Dirichlet increments at beta: slope below -1/2 in log-log reads as
        // convergence.  False positives are possible on short tables.
        if (*m.beta > 0.0 && std::isfinite(*m.beta)) {
            const double d4 = dirichlet_partial(table, *m.beta, n / 4);
            const double d2 = dirichlet_partial(table, *m.beta, half);
            const double d1 = dirichlet_partial(table, *m.beta, n);
            const double g1 = std::max(d1 - d2, 1e-300);
            const double g0 = std::max(d2 - d4, 1e-300);
            const double slope = std::log2(g1 / g0);
            m.converges_at_beta = slope < -0.5 ? Tristate::Yes : Tristate::No;
        }
    }
    return m;
}

}  // namespace sbo
