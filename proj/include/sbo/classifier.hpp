#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sbo/sizes.hpp"

// Order-type classification.  The type of the size-biased order is decided by
// the closure behavior of the size multiset, summability of the small parts,
// and the convergence abscissa beta of sum_i exp(-x w(i)) taken over the
// subsequence diverging to infinity.

namespace sbo {

enum class OrderType {
    ZPos,         // positive integers: a first element, nothing above finitely
    ZNeg,         // negative integers: points collapse toward zero
    Z,            // two-sided integer order
    Q,            // dense without endpoints
    QThenFinite,  // dense part followed by a finite block
    QThenZNeg,
    QThenZPos,
    QThenZ,
};

const char* to_string(OrderType type);

struct ClassificationEvidence {
    std::string fired_case;
    std::optional<double> beta;  // beta or the big-part abscissa beta''
    Tristate dirichlet_converges_at_beta = Tristate::NotApplicable;
    Tristate small_part_summable = Tristate::NotApplicable;
    AccumulationSet accumulation;
    std::string note;
};

// Decision table over complete metadata; throws std::invalid_argument when a
// field needed by the firing branch is unknown.
std::pair<OrderType, ClassificationEvidence> classify(const SizeMetadata& meta);

// Closed-form abscissa limsup_i log i / w(i) for the families with divergent
// sizes; throws std::domain_error otherwise.
double abscissa_analytic(const SizeFunction& desc);

struct AbscissaEstimate {
    double value = 0.0;          // max of log i / w(i) over the trailing window
    bool low_confidence = false;
    // Running max recorded at power-of-two checkpoints and at i_max.
    std::vector<std::pair<std::int64_t, double>> checkpoints;
};

// limsup proxy: max of log i / w(i) over [i_max - window, i_max].  Flagged
// low-confidence when the running max moved more than 5% across either of the
// last two doublings.
AbscissaEstimate abscissa_numeric(const SizeFunction& desc, std::int64_t i_max,
                                  std::int64_t window);
AbscissaEstimate abscissa_numeric_serial(const SizeFunction& desc, std::int64_t i_max,
                                         std::int64_t window);

// Partial Dirichlet sum: sum_{i<=n} exp(-x w(i)), compensated.
double dirichlet_partial(const SizeFunction& desc, double x, std::int64_t n);
double dirichlet_partial_serial(const SizeFunction& desc, double x, std::int64_t n);

// Expected number of exponential points in (x, y]: partial sum of
// exp(-w(i) x) - exp(-w(i) y).  y may be +infinity.
double mean_measure(const SizeFunction& desc, double x, double y, std::int64_t n_terms);
double mean_measure_serial(const SizeFunction& desc, double x, double y, std::int64_t n_terms);

struct AbtResult {
    bool embeddable = false;
    bool no_interior_accumulation = false;  // (a)
    bool small_part_summable = false;       // (b)
    bool abscissa_zero = false;             // (c), vacuous without divergence
};

// Embeddability of the order in the integers: all three conditions must hold.
AbtResult abt_embeddable(const SizeMetadata& meta);

struct TableEstimateOptions {
    std::int64_t window = 0;  // 0: a tenth of the table, at least 100
};

// Numeric metadata for an explicit table.  Every field is a finite-sample
// heuristic; callers must keep the heuristic flag attached to any
// classification built from it.
SizeMetadata estimate_metadata(const SizeFunction& table, TableEstimateOptions opts = {});

}  // namespace sbo
