#pragma once

#include <cstdint>
#include <vector>

#include "sbo/samplers.hpp"
#include "sbo/sizes.hpp"

// Empirical statistics of sampled orders: records, inversions, the geometric
// inversion constant, and the empirical size distribution.

namespace sbo {

// Indices i whose item precedes every item with a smaller index.  The order
// must arrange exactly the labels 1..n.
std::vector<int> count_records(const FiniteOrder& order);

struct InversionSummary {
    std::int64_t n = 0;
    std::int64_t d_n = 0;       // pairs i < j with j before i
    double normalized = 0.0;    // d_n / n
};

// Inversions by merge counting, O(n log n).
InversionSummary count_inversions(const FiniteOrder& order);

struct CqResult {
    double value = 0.0;       // sum_k 1 / (1 + q^{-k})
    double tail_bound = 0.0;  // geometric bound on the truncated tail
    int terms = 0;
};

// Limit constant of D_n / n for the geometric size function, truncated so the
// tail bound q^{K+1}/(1-q) is below tol.
CqResult c_q(double q, double tol);

// E[D_n] = sum_{k=1}^{n-1} (n-k) / (1 + q^{-k}) for a geometric descriptor
// with q < 1.
double expected_inversions(const SizeFunction& desc, std::int64_t n);

// Normalized partial sums F_n(t) = sum_{i <= nt} w(i) / S_n.
double steele_Fn(const SizeFunction& desc, std::int64_t n, double t);

// F_n over an equispaced grid of `points` values of t in [0,1], one pass.
std::vector<double> steele_Fn_grid(const SizeFunction& desc, std::int64_t n, int points);

}  // namespace sbo
