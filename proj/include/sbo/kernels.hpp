#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sbo/rng.hpp"
#include "sbo/threads.hpp"

// Data-parallel kernels with serial reference implementations.  The parallel
// versions split index ranges into fixed-size chunks and combine per-chunk
// results in chunk order, so the result does not depend on the worker count.
// Monte Carlo drivers give every replicate its own derived seed and aggregate
// with integer counts or per-replicate slots; those are bitwise identical to
// the serial path.

namespace sbo::kernels {

inline constexpr std::int64_t kChunk = 1 << 14;

// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double term) {
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

// Compensated sum of f(i) for i in [first, last].
template <class TermFn>
double sum_serial(std::int64_t first, std::int64_t last, TermFn f) {
    CompensatedSum acc;
    for (std::int64_t i = first; i <= last; ++i) acc.add(f(i));
    return acc.value();
}

template <class TermFn>
double sum_parallel(std::int64_t first, std::int64_t last, TermFn f) {
    if (last < first) return 0.0;
    const std::int64_t count = last - first + 1;
    const std::int64_t chunks = (count + kChunk - 1) / kChunk;
    if (chunks == 1) return sum_serial(first, last, f);

    std::vector<double> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) num_threads(max_workers())
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = first + c * kChunk;
        const std::int64_t hi = std::min(last, lo + kChunk - 1);
        partial[static_cast<std::size_t>(c)] = sum_serial(lo, hi, f);
    }
    CompensatedSum acc;
    for (double p : partial) acc.add(p);
    return acc.value();
}

// Max of f(i) for i in [first, last]; range must be nonempty.
template <class TermFn>
double max_serial(std::int64_t first, std::int64_t last, TermFn f) {
    double best = f(first);
    for (std::int64_t i = first + 1; i <= last; ++i) best = std::max(best, f(i));
    return best;
}

template <class TermFn>
double max_parallel(std::int64_t first, std::int64_t last, TermFn f) {
    const std::int64_t count = last - first + 1;
    const std::int64_t chunks = (count + kChunk - 1) / kChunk;
    if (chunks == 1) return max_serial(first, last, f);

    std::vector<double> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) num_threads(max_workers())
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = first + c * kChunk;
        const std::int64_t hi = std::min(last, lo + kChunk - 1);
        partial[static_cast<std::size_t>(c)] = max_serial(lo, hi, f);
    }
    return *std::max_element(partial.begin(), partial.end());
}

// Histogram over replicates: cell(r, rng) names the bin hit by replicate r.
template <class CellFn>
std::vector<std::uint64_t> tally_serial(std::int64_t replicates, std::uint64_t seed,
                                        std::size_t cells, CellFn cell) {
    std::vector<std::uint64_t> counts(cells, 0);
    for (std::int64_t r = 0; r < replicates; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        ++counts[cell(r, rng)];
    }
    return counts;
}

template <class CellFn>
std::vector<std::uint64_t> tally_parallel(std::int64_t replicates, std::uint64_t seed,
                                          std::size_t cells, CellFn cell) {
    std::vector<std::uint64_t> counts(cells, 0);
#pragma omp parallel num_threads(max_workers())
    {
        std::vector<std::uint64_t> local(cells, 0);
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < replicates; ++r) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            ++local[cell(r, rng)];
        }
#pragma omp critical
        for (std::size_t c = 0; c < cells; ++c) counts[c] += local[c];
    }
    return counts;
}

// One double per replicate, written into its own slot.
template <class ValueFn>
std::vector<double> per_replicate_serial(std::int64_t replicates, std::uint64_t seed,
                                         ValueFn value) {
    std::vector<double> out(static_cast<std::size_t>(replicates));
    for (std::int64_t r = 0; r < replicates; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        out[static_cast<std::size_t>(r)] = value(r, rng);
    }
    return out;
}

template <class ValueFn>
std::vector<double> per_replicate_parallel(std::int64_t replicates, std::uint64_t seed,
                                           ValueFn value) {
    std::vector<double> out(static_cast<std::size_t>(replicates));
#pragma omp parallel for schedule(static) num_threads(max_workers())
    for (std::int64_t r = 0; r < replicates; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        out[static_cast<std::size_t>(r)] = value(r, rng);
    }
    return out;
}

}  // namespace sbo::kernels
