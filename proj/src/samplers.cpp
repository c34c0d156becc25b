#include "sbo/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "sbo/probkernel.hpp"

namespace sbo {

void validate(const FiniteOrder& order) {
    if (order.labels.empty()) throw std::invalid_argument("order must be nonempty");
    std::unordered_set<int> seen;
    for (int label : order.labels) {
        if (!seen.insert(label).second) throw std::invalid_argument("order labels must be distinct");
    }
}

void validate(const LehmerCode& code) {
    for (std::size_t i = 0; i < code.ranks.size(); ++i) {
        if (code.ranks[i] < 1 || code.ranks[i] > static_cast<int>(i + 1)) {
            throw std::invalid_argument("relative rank out of range");
        }
    }
}

FiniteOrder order_from_lehmer(const LehmerCode& code) {
    validate(code);
    std::vector<int> arrangement;
    arrangement.reserve(code.ranks.size());
    for (std::size_t i = 0; i < code.ranks.size(); ++i) {
        arrangement.insert(arrangement.begin() + (code.ranks[i] - 1), static_cast<int>(i + 1));
    }
    return FiniteOrder{std::move(arrangement)};
}

FiniteOrder sample_exponential(const SizeFunction& desc, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    Rng rng(seed);
    const std::vector<double> logw = desc.log_weights(n);

    // log X_i = log E_i - log w(i) with E_i standard exponential; comparing
    // logs orders the items identically and never overflows.
    std::vector<double> logx(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < logx.size(); ++i) {
        logx[i] = rng.next_log_std_exponential() - logw[i];
    }

    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 1);
    auto by_value = [&](int a, int b) { return logx[a - 1] < logx[b - 1]; };
    std::sort(labels.begin(), labels.end(), by_value);

    // Ties have probability zero up to floating representation; resample the
    // pair and reorder until none remain.
    for (;;) {
        bool tied = false;
        for (std::size_t k = 0; k + 1 < labels.size(); ++k) {
            if (logx[labels[k] - 1] == logx[labels[k + 1] - 1]) {
                logx[labels[k] - 1] = rng.next_log_std_exponential() - logw[labels[k] - 1];
                logx[labels[k + 1] - 1] = rng.next_log_std_exponential() - logw[labels[k + 1] - 1];
                tied = true;
            }
        }
        if (!tied) break;
        std::sort(labels.begin(), labels.end(), by_value);
    }
    return FiniteOrder{std::move(labels)};
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// a/(a+b) given the log ratio log(a/b); saturates cleanly at the extremes.
double share_from_log_ratio(double log_ratio) { return 1.0 / (1.0 + std::exp(-log_ratio)); }

// log of suffix sums: out[k] = log sum_{j>=k} exp(logs[j]), out[size] = -inf.
// Working with log totals keeps the pointer cycles exact at any size scale.
std::vector<double> suffix_log_sums(const std::vector<double>& logs) {
    std::vector<double> out(logs.size() + 1);
    out[logs.size()] = kNegInf;
    for (std::size_t k = logs.size(); k-- > 0;) out[k] = logaddexp(logs[k], out[k + 1]);
    return out;
}

// One size-biased insertion cycle: gap index in 1..(m+1) for an item with
// log-size logx entering a list whose ranked log-sizes are `target_logs`.
// Right-side totals are kept as one suffix pass, O(m) per cycle.
// TODO: an order-statistic tree over the suffix totals would make this
// O(log m) per insertion; worth it only for prefixes beyond ~1e5.
int insertion_cycle(const std::vector<double>& target_logs, double logx, Rng& rng) {
    const std::vector<double> log_tail = suffix_log_sums(target_logs);
    const int gaps = static_cast<int>(target_logs.size()) + 1;
    for (int k = 1; k < gaps; ++k) {
        // insert with probability x/(t+x)
        if (rng.next_open01() < share_from_log_ratio(logx - log_tail[static_cast<std::size_t>(k - 1)])) {
            return k;
        }
    }
    return gaps;  // rightmost gap: t = 0, insertion is certain
}

}  // namespace

FiniteOrder sample_by_picks(const SizeFunction& desc, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    Rng rng(seed);
    const std::vector<double> logw = desc.log_weights(n);

    std::vector<int> source(static_cast<std::size_t>(n));
    std::iota(source.begin(), source.end(), 1);
    std::vector<int> target;
    target.reserve(source.size());
    std::vector<double> source_logs(logw);

    while (!source.empty()) {
        // One cycle: pointer walks from the front until an item is moved.
        const std::vector<double> log_tail = suffix_log_sums(source_logs);
        std::size_t pos = 0;
        for (;;) {
            // advance with probability t/(t+x)
            if (pos + 1 < source.size() &&
                rng.next_open01() < share_from_log_ratio(log_tail[pos + 1] - source_logs[pos])) {
                ++pos;
            } else {
                target.push_back(source[pos]);
                source.erase(source.begin() + static_cast<std::ptrdiff_t>(pos));
                source_logs.erase(source_logs.begin() + static_cast<std::ptrdiff_t>(pos));
                break;
            }
        }
    }
    return FiniteOrder{std::move(target)};
}

InsertionSample sample_by_insertion(const SizeFunction& desc, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    Rng rng(seed);
    const std::vector<double> logw = desc.log_weights(n);

    std::vector<int> target;
    std::vector<double> target_logs;
    std::vector<int> ranks;
    target.reserve(logw.size());
    target_logs.reserve(logw.size());
    ranks.reserve(logw.size());

    for (std::int64_t i = 1; i <= n; ++i) {
        const double logx = logw[static_cast<std::size_t>(i - 1)];
        const int k = insertion_cycle(target_logs, logx, rng);
        target.insert(target.begin() + (k - 1), static_cast<int>(i));
        target_logs.insert(target_logs.begin() + (k - 1), logx);
        ranks.push_back(k);
    }
    return InsertionSample{FiniteOrder{std::move(target)}, LehmerCode{std::move(ranks)}};
}

PoissonScatterSample sample_poisson_scatter(const SizeFunction& desc, std::int64_t n,
                                            std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    Rng rng(seed);
    const std::vector<double> w = desc.weights(n);

    PoissonScatterSample sample;
    sample.points.reserve(w.size());
    double left = 0.0;
    for (double rate : w) {
        const double x = rng.next_exponential(rate);
        const double t = rng.next_uniform(left, left + rate);
        sample.points.push_back({t, x});
        left += rate;
    }
    return sample;
}

FiniteOrder tsetlin_step(const FiniteOrder& state, const SizeFunction& desc, Rng& rng) {
    validate(state);
    if (state.labels.size() == 1) return state;

    std::vector<int> rest(state.labels.begin() + 1, state.labels.end());
    std::vector<double> rest_logs;
    rest_logs.reserve(rest.size());
    for (int label : rest) rest_logs.push_back(desc.log_evaluate(label));

    const int k = insertion_cycle(rest_logs, desc.log_evaluate(state.labels.front()), rng);
    rest.insert(rest.begin() + (k - 1), state.labels.front());
    return FiniteOrder{std::move(rest)};
}

std::size_t TsetlinMatrix::index_of(const std::vector<int>& state) const {
    const auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state) throw std::invalid_argument("unknown arrangement");
    return static_cast<std::size_t>(it - states.begin());
}

TsetlinMatrix transition_matrix_tsetlin(const std::vector<int>& labels, const SizeFunction& desc) {
    if (labels.empty()) throw std::invalid_argument("label set must be nonempty");
    if (labels.size() > 8) throw std::invalid_argument("state space too large (> 8 labels)");

    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("labels must be distinct");
    }

    TsetlinMatrix m;
    std::vector<int> perm = sorted;
    do {
        m.states.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const std::size_t count = m.states.size();
    m.p.assign(count * count, 0.0);

    for (std::size_t row = 0; row < count; ++row) {
        const std::vector<int>& state = m.states[row];
        std::vector<int> rest(state.begin() + 1, state.end());
        std::vector<double> rest_sizes;
        rest_sizes.reserve(rest.size());
        for (int label : rest) rest_sizes.push_back(desc.evaluate(label));

        const RankPmf pmf = insertion_rank_pmf(rest_sizes, desc.evaluate(state.front()));
        for (std::size_t k = 0; k < pmf.size(); ++k) {
            std::vector<int> next = rest;
            next.insert(next.begin() + static_cast<std::ptrdiff_t>(k), state.front());
            m.p[row * count + m.index_of(next)] += pmf[k];
        }
    }
    return m;
}

}  // namespace sbo
