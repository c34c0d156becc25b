#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbo/sizes.hpp"

// Exact finite-dimensional probabilities of the size-biased order.  A chain
// query lists the sizes x_1..x_n of items in the order they are ranked; its
// probability is prod_k x_k / (x_k + ... + x_n).  All products are formed in
// log space from one backward pass of suffix sums.

namespace sbo {

using RankPmf = std::vector<double>;

// log prod_k x_k / (x_k + ... + x_n).  Throws std::domain_error on empty or
// non-positive input.
double log_chain_prob(std::span<const double> sizes);

double chain_prob(std::span<const double> sizes);

// Probability that the chain x_1 < ... < x_n precedes a block of total size
// tail_total: the chain probability of (x_1, ..., x_n, tail_total).
double head_prob(std::span<const double> prefix_sizes, double tail_total);

// Ratio of the chain probabilities of two rankings that differ by one
// adjacent transposition of items with sizes x and y, with tail_total to the
// right of the pair: (x + tail_total) / (y + tail_total).
double transposition_ratio(double x, double y, double tail_total);

// pmf of the rank taken by an item of size new_size inserted into a ranked
// list with sizes `existing`; entry k covers insertion before position k.
// Entries sum to one exactly: the last entry absorbs the complement when that
// agrees with its direct formula to 1e-9.
RankPmf insertion_rank_pmf(std::span<const double> existing, double new_size);

// P[item i ranks first among 1..i] = w(i) / S_i.
double record_prob(const SizeFunction& desc, std::int64_t i);

// Log-likelihood of a relative-rank prefix (entry i in 1..i) under the size
// function; equals the log chain probability of the arrangement the code
// builds.  Throws std::invalid_argument on an out-of-range code entry.
double lehmer_log_likelihood(const SizeFunction& desc, std::span<const int> code);

}  // namespace sbo
