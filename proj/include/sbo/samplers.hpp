#pragma once

#include <cstdint>
#include <vector>

#include "sbo/rng.hpp"
#include "sbo/sizes.hpp"

// Three equivalent constructions of a size-biased order prefix, plus the
// Poisson scatter realization and the size-biased top-to-random chain.  All
// samplers are pure functions of (descriptor, n, seed).

namespace sbo {

// Labels read left to right in increasing order position.
struct FiniteOrder {
    std::vector<int> labels;

    bool operator==(const FiniteOrder&) const = default;
};

// Relative ranks R_1, R_2, ...: entry i lies in {1, ..., i}.
struct LehmerCode {
    std::vector<int> ranks;

    bool operator==(const LehmerCode&) const = default;
};

void validate(const FiniteOrder& order);  // distinct labels, nonempty
void validate(const LehmerCode& code);

struct PoissonScatterSample {
    struct Point {
        double t;  // strip abscissa
        double x;  // height of the lowest atom in the strip
    };
    std::vector<Point> points;
};

// Sort labels 1..n by independent exponentials with rates w(i).  Works in log
// space, so extreme rates cannot overflow.  Ties are broken by resampling the
// tied pair.
FiniteOrder sample_exponential(const SizeFunction& desc, std::int64_t n, std::uint64_t seed);

// Iterated size-biased picks, run as the pointer cycle over the source list:
// at an item of size x with tail total t, advance with probability t/(t+x),
// otherwise move the item to the target's rear.
FiniteOrder sample_by_picks(const SizeFunction& desc, std::int64_t n, std::uint64_t seed);

struct InsertionSample {
    FiniteOrder order;
    LehmerCode code;
};

// Size-biased insertion: item i scans target gaps left to right and drops
// into a gap with right-side total t with probability x/(t+x); the realized
// gap index is R_i.
InsertionSample sample_by_insertion(const SizeFunction& desc, std::int64_t n, std::uint64_t seed);

// Lowest atom per vertical strip of a unit-rate Poisson process: X_i is
// exponential with rate w(i), T_i uniform on [S_{i-1}, S_i).
PoissonScatterSample sample_poisson_scatter(const SizeFunction& desc, std::int64_t n,
                                            std::uint64_t seed);

// One step of the size-biased top-to-random shuffle: remove the front label
// and reinsert it by one insertion cycle over the rest.
FiniteOrder tsetlin_step(const FiniteOrder& state, const SizeFunction& desc, Rng& rng);

// Exact transition matrix of the top-to-random chain over all arrangements of
// the label set (lexicographic state order).  Guarded at 8 labels.
struct TsetlinMatrix {
    std::vector<std::vector<int>> states;
    std::vector<double> p;  // row-major, states.size() x states.size()

    std::size_t size() const { return states.size(); }
    double at(std::size_t row, std::size_t col) const { return p[row * states.size() + col]; }
    std::size_t index_of(const std::vector<int>& state) const;
};

TsetlinMatrix transition_matrix_tsetlin(const std::vector<int>& labels, const SizeFunction& desc);

// Arrangement produced by a relative-rank prefix (item i enters position
// ranks[i-1] among 1..i).
FiniteOrder order_from_lehmer(const LehmerCode& code);

}  // namespace sbo
