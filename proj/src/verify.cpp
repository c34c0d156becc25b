#include "sbo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sbo/probkernel.hpp"
#include "sbo/rng.hpp"

namespace sbo::verify {

namespace {

std::vector<double> random_sizes(Rng& rng, int n) {
    std::vector<double> sizes(static_cast<std::size_t>(n));
    for (double& s : sizes) {
        s = std::exp(rng.next_uniform(std::log(0.1), std::log(10.0)));
    }
    return sizes;
}

int random_int(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Sum over all permutations of chain probabilities equals one.
double symmetrization_residual(Rng& rng) {
    std::vector<double> sizes = random_sizes(rng, random_int(rng, 2, 7));
    std::sort(sizes.begin(), sizes.end());
    double total = 0.0;
    do {
        total += chain_prob(sizes);
    } while (std::next_permutation(sizes.begin(), sizes.end()));
    return std::abs(total - 1.0);
}

// prod p_2 around a closed cycle equals the product around the reversed
// cycle: both reduce to prod x_k over prod (x_k + x_{k+1}).
double cycle_reversion_residual(Rng& rng) {
    const std::vector<double> sizes = random_sizes(rng, random_int(rng, 2, 7));
    const std::size_t n = sizes.size();
    double forward = 1.0, backward = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = sizes[k];
        const double b = sizes[(k + 1) % n];
        forward *= a / (a + b);
        backward *= b / (b + a);
    }
    return std::abs(forward - backward);
}

// p_{n+m}(x, y) = p_{n+1}(x, sum y) p_m(y).
double recursion_residual(Rng& rng) {
    const int n = random_int(rng, 1, 4);
    const int m = random_int(rng, 1, 3);
    const std::vector<double> xs = random_sizes(rng, n);
    const std::vector<double> ys = random_sizes(rng, m);

    std::vector<double> joint = xs;
    joint.insert(joint.end(), ys.begin(), ys.end());
    const double lhs = chain_prob(joint);

    const double y_total = std::accumulate(ys.begin(), ys.end(), 0.0);
    const double rhs = head_prob(xs, y_total) * chain_prob(ys);
    return std::abs(lhs - rhs);
}

// Quotient of chains differing by one adjacent transposition.
double transposition_residual(Rng& rng) {
    const int n = random_int(rng, 0, 3);
    const int m = random_int(rng, 0, 3);
    const std::vector<double> front = random_sizes(rng, n + 2);  // last two are the pair
    const std::vector<double> back = random_sizes(rng, m);

    std::vector<double> swapped_xy(front.begin(), front.end() - 2);
    std::vector<double> swapped_yx = swapped_xy;
    const double x = front[front.size() - 2];
    const double y = front[front.size() - 1];
    swapped_xy.push_back(x);
    swapped_xy.push_back(y);
    swapped_yx.push_back(y);
    swapped_yx.push_back(x);
    for (double b : back) {
        swapped_xy.push_back(b);
        swapped_yx.push_back(b);
    }
    const double tail = std::accumulate(back.begin(), back.end(), 0.0);
    const double quotient = chain_prob(swapped_xy) / chain_prob(swapped_yx);
    return std::abs(quotient - transposition_ratio(x, y, tail));
}

// p_2(x,y) = p_3(x,y,z) + p_3(x,z,y) + p_3(z,x,y).
double consistency_residual(Rng& rng) {
    const std::vector<double> s = random_sizes(rng, 3);
    const double x = s[0], y = s[1], z = s[2];
    const double lhs = chain_prob(std::vector{x, y});
    const double rhs = chain_prob(std::vector{x, y, z}) + chain_prob(std::vector{x, z, y}) +
                       chain_prob(std::vector{z, x, y});
    return std::abs(lhs - rhs);
}

// Sum over all shuffles of two blocks factorizes.
void shuffle_sum(const std::vector<double>& xs, const std::vector<double>& ys,
                 std::vector<double>& current, std::size_t xi, std::size_t yi, double& total) {
    if (xi == xs.size() && yi == ys.size()) {
        total += chain_prob(current);
        return;
    }
    if (xi < xs.size()) {
        current.push_back(xs[xi]);
        shuffle_sum(xs, ys, current, xi + 1, yi, total);
        current.pop_back();
    }
    if (yi < ys.size()) {
        current.push_back(ys[yi]);
        shuffle_sum(xs, ys, current, xi, yi + 1, total);
        current.pop_back();
    }
}

double shuffle_residual(Rng& rng) {
    const std::vector<double> xs = random_sizes(rng, random_int(rng, 1, 5));
    const std::vector<double> ys = random_sizes(rng, random_int(rng, 1, 5));
    double total = 0.0;
    std::vector<double> current;
    current.reserve(xs.size() + ys.size());
    shuffle_sum(xs, ys, current, 0, 0, total);
    return std::abs(total - chain_prob(xs) * chain_prob(ys));
}

// The decreasing arrangement has the largest chain probability.
double monotonicity_residual(Rng& rng) {
    std::vector<double> sizes = random_sizes(rng, random_int(rng, 2, 6));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    const double decreasing = chain_prob(sizes);

    std::sort(sizes.begin(), sizes.end());
    const double increasing = chain_prob(sizes);
    double worst = 0.0;
    do {
        const double p = chain_prob(sizes);
        worst = std::max(worst, p - decreasing);   // nothing may beat decreasing
        worst = std::max(worst, increasing - p);   // nothing may undercut increasing
    } while (std::next_permutation(sizes.begin(), sizes.end()));
    return worst;
}

// Time reversal of the move-to-front chain: the insertion quotient equals the
// removal quotient times p_2(y, sum x).
double tsetlin_reversal_residual(Rng& rng) {
    const int n = random_int(rng, 1, 6);
    const std::vector<double> xs = random_sizes(rng, n);
    const double y = random_sizes(rng, 1)[0];
    const int k = random_int(rng, 0, n);

    std::vector<double> inserted(xs.begin(), xs.begin() + k);
    inserted.push_back(y);
    inserted.insert(inserted.end(), xs.begin() + k, xs.end());

    std::vector<double> y_first;
    y_first.push_back(y);
    y_first.insert(y_first.end(), xs.begin(), xs.end());

    const double x_total = std::accumulate(xs.begin(), xs.end(), 0.0);
    const double lhs =
        chain_prob(inserted) / chain_prob(y_first) * (y / (y + x_total));
    const double rhs = chain_prob(inserted) / chain_prob(xs);
    return std::abs(lhs - rhs);
}

// The insertion-rank pmf coincides with the chain-probability quotient.
double insertion_quotient_residual(Rng& rng) {
    const int m = random_int(rng, 1, 6);
    const std::vector<double> existing = random_sizes(rng, m);
    const double x = random_sizes(rng, 1)[0];
    const RankPmf pmf = insertion_rank_pmf(existing, x);

    const double base = chain_prob(existing);
    double worst = 0.0;
    for (int k = 0; k <= m; ++k) {
        std::vector<double> inserted(existing.begin(), existing.begin() + k);
        inserted.push_back(x);
        inserted.insert(inserted.end(), existing.begin() + k, existing.end());
        worst = std::max(worst, std::abs(pmf[static_cast<std::size_t>(k)] -
                                         chain_prob(inserted) / base));
    }
    return worst;
}

struct Identity {
    const char* name;
    double tolerance;
    double (*residual)(Rng&);
};

constexpr Identity kIdentities[] = {
    {"symmetrization", 1e-10, symmetrization_residual},
    {"cycle_reversion", 1e-12, cycle_reversion_residual},
    {"recursion", 1e-12, recursion_residual},
    {"transposition", 1e-12, transposition_residual},
    {"consistency", 1e-12, consistency_residual},
    {"shuffle", 1e-10, shuffle_residual},
    {"monotonicity", 1e-15, monotonicity_residual},
    {"tsetlin_reversal", 1e-12, tsetlin_reversal_residual},
    {"insertion_pmf_quotient", 1e-12, insertion_quotient_residual},
};

}  // namespace

std::vector<IdentityResult> run_all(std::uint64_t seed, int tuples) {
    std::vector<IdentityResult> results;
    for (std::size_t idx = 0; idx < std::size(kIdentities); ++idx) {
        const Identity& identity = kIdentities[idx];
        IdentityResult r;
        r.name = identity.name;
        r.tolerance = identity.tolerance;
        Rng rng(derive_seed(seed, idx));
        for (int t = 0; t < tuples; ++t) {
            r.max_residual = std::max(r.max_residual, identity.residual(rng));
        }
        r.pass = r.max_residual <= r.tolerance;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace sbo::verify
