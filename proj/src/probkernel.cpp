#include "sbo/probkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sbo {

namespace {

void check_sizes(std::span<const double> sizes) {
    if (sizes.empty()) throw std::domain_error("chain query must be nonempty");
    for (double x : sizes) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw std::domain_error("chain sizes must be positive and finite");
        }
    }
}

}  // namespace

double log_chain_prob(std::span<const double> sizes) {
    check_sizes(sizes);
    const std::size_t n = sizes.size();
    // Suffix sums in one backward pass, then sum of log ratios.
    double suffix = 0.0;
    std::vector<double> denom(n);
    for (std::size_t k = n; k-- > 0;) {
        suffix += sizes[k];
        denom[k] = suffix;
    }
    double log_p = 0.0;
    for (std::size_t k = 0; k < n; ++k) log_p += std::log(sizes[k]) - std::log(denom[k]);
    return log_p;
}

double chain_prob(std::span<const double> sizes) { return std::exp(log_chain_prob(sizes)); }

double head_prob(std::span<const double> prefix_sizes, double tail_total) {
    if (prefix_sizes.empty()) throw std::domain_error("prefix must be nonempty");
    if (!(tail_total > 0.0) || !std::isfinite(tail_total)) {
        throw std::domain_error("tail total must be positive and finite");
    }
    std::vector<double> extended(prefix_sizes.begin(), prefix_sizes.end());
    extended.push_back(tail_total);
    return chain_prob(extended);
}

double transposition_ratio(double x, double y, double tail_total) {
    if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("sizes must be positive");
    if (!(tail_total >= 0.0)) throw std::domain_error("tail total must be nonnegative");
    return (x + tail_total) / (y + tail_total);
}

RankPmf insertion_rank_pmf(std::span<const double> existing, double new_size) {
    if (!(new_size > 0.0) || !std::isfinite(new_size)) {
        throw std::domain_error("inserted size must be positive and finite");
    }
    const std::size_t m = existing.size();
    if (m == 0) return {1.0};
    check_sizes(existing);

    // suffix[k] = x_{k+1} + ... + x_m (0-based), suffix[m] = 0.
    std::vector<double> suffix(m + 1, 0.0);
    for (std::size_t k = m; k-- > 0;) suffix[k] = suffix[k + 1] + existing[k];

    RankPmf pmf(m + 1);
    double log_carry = 0.0;  // log prod_{l<k} T_l / (T_l + x)
    for (std::size_t k = 0; k <= m; ++k) {
        pmf[k] = std::exp(log_carry + std::log(new_size) - std::log(suffix[k] + new_size));
        if (k < m) log_carry += std::log(suffix[k]) - std::log(suffix[k] + new_size);
    }

    // Close the pmf exactly: take 1 - sum(previous) for the last entry when
    // that is nonnegative and consistent with the direct formula.
    double head = 0.0;
    for (std::size_t k = 0; k < m; ++k) head += pmf[k];
    const double complement = 1.0 - head;
    if (complement >= 0.0 && std::abs(complement - pmf[m]) <= 1e-9) pmf[m] = complement;
    return pmf;
}

double record_prob(const SizeFunction& desc, std::int64_t i) {
    if (i < 1) throw std::out_of_range("record index must be >= 1");
    return desc.evaluate(i) / desc.partial_sum(i);
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

}  // namespace

double lehmer_log_likelihood(const SizeFunction& desc, std::span<const int> code) {
    const std::int64_t n = static_cast<std::int64_t>(code.size());
    if (n == 0) return 0.0;
    const std::vector<double> logw = desc.log_weights(n);

    // Everything stays in log space so prefixes with extreme size ranges keep
    // finite likelihood contributions.
    std::vector<double> arranged_logs;  // log-sizes of the current arrangement
    arranged_logs.reserve(code.size());
    double log_like = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) {
        const int rank = code[static_cast<std::size_t>(i - 1)];
        if (rank < 1 || rank > i) throw std::invalid_argument("relative rank out of range");
        const double logx = logw[static_cast<std::size_t>(i - 1)];

        // log T_k = log(x_k + ... ) over the current arrangement suffixes.
        const std::size_t m = arranged_logs.size();
        std::vector<double> log_tail(m + 1);
        log_tail[m] = -std::numeric_limits<double>::infinity();
        for (std::size_t k = m; k-- > 0;) log_tail[k] = logaddexp(arranged_logs[k], log_tail[k + 1]);

        // log of the insertion-rank pmf entry: pass the first rank-1 gaps,
        // land in the rank-th.
        for (int l = 0; l + 1 < rank; ++l) {
            log_like += log_tail[static_cast<std::size_t>(l)] -
                        logaddexp(log_tail[static_cast<std::size_t>(l)], logx);
        }
        log_like += logx - logaddexp(log_tail[static_cast<std::size_t>(rank - 1)], logx);

        arranged_logs.insert(arranged_logs.begin() + (rank - 1), logx);
    }
    return log_like;
}

}  // namespace sbo
