#include "sbo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbo/kernels.hpp"

namespace sbo {

namespace {

// Positions of each label; throws unless labels are exactly 1..n.
std::vector<std::int64_t> positions_of(const FiniteOrder& order) {
    validate(order);
    const std::int64_t n = static_cast<std::int64_t>(order.labels.size());
    std::vector<std::int64_t> pos(static_cast<std::size_t>(n), -1);
    for (std::int64_t p = 0; p < n; ++p) {
        const int label = order.labels[static_cast<std::size_t>(p)];
        if (label < 1 || label > n) {
            throw std::invalid_argument("order labels must be exactly 1..n");
        }
        pos[static_cast<std::size_t>(label - 1)] = p;
    }
    return pos;
}

std::int64_t merge_count(std::vector<int>& a) {
    const std::size_t n = a.size();
    std::vector<int> buf(n);
    std::int64_t count = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (a[i] <= a[j]) {
                    buf[k++] = a[i++];
                } else {
                    buf[k++] = a[j++];
                    count += static_cast<std::int64_t>(mid - i);
                }
            }
            while (i < mid) buf[k++] = a[i++];
            while (j < hi) buf[k++] = a[j++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      a.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    return count;
}

}  // namespace

std::vector<int> count_records(const FiniteOrder& order) {
    const std::vector<std::int64_t> pos = positions_of(order);
    std::vector<int> records;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (pos[i] < best) {
            best = pos[i];
            records.push_back(static_cast<int>(i + 1));
        }
    }
    return records;
}

InversionSummary count_inversions(const FiniteOrder& order) {
    positions_of(order);  // validates the label set
    std::vector<int> sequence = order.labels;
    InversionSummary summary;
    summary.n = static_cast<std::int64_t>(sequence.size());
    summary.d_n = merge_count(sequence);
    summary.normalized = static_cast<double>(summary.d_n) / static_cast<double>(summary.n);
    return summary;
}

CqResult c_q(double q, double tol) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::domain_error("q must lie in (0,1)");
    if (!(tol > 0.0)) throw std::domain_error("tolerance must be positive");

    // 1/(1+q^{-k}) < q^k, so the tail past K is below q^{K+1}/(1-q).
    CqResult r;
    kernels::CompensatedSum acc;
    int k = 0;
    double tail = q / (1.0 - q);
    while (tail >= tol) {
        ++k;
        acc.add(1.0 / (1.0 + std::pow(q, -k)));
        tail *= q;
    }
    r.value = acc.value();
    r.tail_bound = tail;
    r.terms = k;
    return r;
}

double expected_inversions(const SizeFunction& desc, std::int64_t n) {
    if (desc.family() != SizeFamily::Geometric || !(desc.param() < 1.0)) {
        throw std::invalid_argument("expected inversions needs a geometric family with q < 1");
    }
    if (n < 2) throw std::invalid_argument("need n >= 2");
    const double log_q = std::log(desc.param());
    return kernels::sum_serial(1, n - 1, [&](std::int64_t k) {
        // (n-k) / (1 + q^{-k}); the exponential saturates to +inf harmlessly.
        return static_cast<double>(n - k) / (1.0 + std::exp(-static_cast<double>(k) * log_q));
    });
}

namespace {

double logaddexp(double a, double b) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// Normalized prefix sums S_{cut}/S_n at the given cut indices (ascending).
// Compensated raw sums when the total is representable, otherwise log-space
// prefix sums, so any weight scale yields values in [0,1].
std::vector<double> normalized_prefix_sums(const SizeFunction& desc, std::int64_t n,
                                           const std::vector<std::int64_t>& cuts) {
    std::vector<double> out(cuts.size());
    {
        const std::vector<double> w = desc.weights_raw(n);
        kernels::CompensatedSum acc;
        std::int64_t next = 0;
        for (std::size_t g = 0; g < cuts.size(); ++g) {
            while (next < cuts[g]) acc.add(w[static_cast<std::size_t>(next++)]);
            out[g] = acc.value();
        }
        while (next < n) acc.add(w[static_cast<std::size_t>(next++)]);
        const double total = acc.value();
        if (std::isfinite(total) && total > 0.0) {
            for (std::size_t g = 0; g < cuts.size(); ++g) {
                out[g] = cuts[g] == 0 ? 0.0 : out[g] / total;
            }
            return out;
        }
    }
    // Extreme scales: the same sums in log space.
    const std::vector<double> logw = desc.log_weights(n);
    double log_prefix = -std::numeric_limits<double>::infinity();
    std::int64_t next = 0;
    for (std::size_t g = 0; g < cuts.size(); ++g) {
        while (next < cuts[g]) log_prefix = logaddexp(log_prefix, logw[static_cast<std::size_t>(next++)]);
        out[g] = log_prefix;
    }
    while (next < n) log_prefix = logaddexp(log_prefix, logw[static_cast<std::size_t>(next++)]);
    for (std::size_t g = 0; g < cuts.size(); ++g) {
        out[g] = cuts[g] == 0 ? 0.0 : std::exp(out[g] - log_prefix);
    }
    return out;
}

std::int64_t grid_cut(double t, std::int64_t n) {
    return static_cast<std::int64_t>(std::floor(t * static_cast<double>(n)));
}

}  // namespace

double steele_Fn(const SizeFunction& desc, std::int64_t n, double t) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    if (!(t >= 0.0) || !(t <= 1.0)) throw std::invalid_argument("t must lie in [0,1]");
    return normalized_prefix_sums(desc, n, {grid_cut(t, n)})[0];
}

std::vector<double> steele_Fn_grid(const SizeFunction& desc, std::int64_t n, int points) {
    if (points < 2) throw std::invalid_argument("need at least two grid points");
    std::vector<std::int64_t> cuts(static_cast<std::size_t>(points));
    for (int g = 0; g < points; ++g) {
        cuts[static_cast<std::size_t>(g)] =
            grid_cut(static_cast<double>(g) / static_cast<double>(points - 1), n);
    }
    return normalized_prefix_sums(desc, n, cuts);
}

}  // namespace sbo
