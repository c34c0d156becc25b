// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line each.
// Every tolerance is pinned here; the binary exits nonzero if any line fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sbo/classifier.hpp"
#include "sbo/kernels.hpp"
#include "sbo/probkernel.hpp"
#include "sbo/samplers.hpp"
#include "sbo/stats.hpp"
#include "sbo/verify.hpp"
#include "test_util.hpp"

using namespace sbo;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

// 1. Exact identities at 1e-10 over 1000 random tuples.
Criterion exact_identities() {
    Criterion c;
    constexpr double kTol = 1e-10;
    double worst = 0.0;
    for (const auto& r : verify::run_all(42, 1000)) {
        worst = std::max(worst, r.max_residual);
        if (r.max_residual > kTol) {
            c.pass = false;
            c.detail += r.name + " residual " + fmt(r.max_residual) + "; ";
        }
    }
    if (c.pass) c.detail = "max residual " + fmt(worst) + " <= 1e-10 across 9 identities";
    return c;
}

// 2. Three samplers vs the exact chain law, chi-square at 0.001.
Criterion sampler_equivalence() {
    Criterion c;
    const SizeFunction ramp = SizeFunction::explicit_table({1.0, 2.0, 3.0, 4.0});
    const std::int64_t n_samples = 200000;
    constexpr double kCrit = 49.7282324664315;  // chi-square 0.999 quantile, 23 dof

    std::vector<int> perm{1, 2, 3, 4};
    std::vector<double> probs;
    do {
        std::vector<double> sizes;
        for (int label : perm) sizes.push_back(ramp.evaluate(label));
        probs.push_back(chain_prob(sizes));
    } while (std::next_permutation(perm.begin(), perm.end()));

    const struct {
        const char* name;
        FiniteOrder (*draw)(const SizeFunction&, std::int64_t, std::uint64_t);
        std::uint64_t seed;
    } samplers[] = {
        {"exponential",
         [](const SizeFunction& d, std::int64_t n, std::uint64_t s) {
             return sample_exponential(d, n, s);
         },
         11},
        {"picks",
         [](const SizeFunction& d, std::int64_t n, std::uint64_t s) {
             return sample_by_picks(d, n, s);
         },
         22},
        {"insertion",
         [](const SizeFunction& d, std::int64_t n, std::uint64_t s) {
             return sample_by_insertion(d, n, s).order;
         },
         33},
    };
    for (const auto& s : samplers) {
        const auto counts = kernels::tally_parallel(n_samples, s.seed, 24, [&](std::int64_t r, Rng&) {
            return testutil::perm_index(s.draw(ramp, 4, derive_seed(s.seed, static_cast<std::uint64_t>(r))).labels);
        });
        const double stat = testutil::chi_square(counts, probs, n_samples);
        c.detail += std::string(s.name) + " chi2 " + fmt(stat) + "; ";
        if (!(stat < kCrit)) c.pass = false;
    }
    c.detail += "crit " + fmt(kCrit);
    return c;
}

// 3. Record frequencies and record-indicator correlations, KS theta = 2.
Criterion record_law() {
    Criterion c;
    const SizeFunction ks = SizeFunction::karamata_stirling(2.0);
    constexpr std::int64_t kN = 100000;
    constexpr int kDepth = 20;
    constexpr std::uint64_t kSeed = 7;

    const std::vector<double> logw = ks.log_weights(kDepth);
    std::array<std::uint64_t, kDepth> hits{};
    std::array<std::array<std::uint64_t, kDepth>, kDepth> joint{};
    for (std::int64_t rep = 0; rep < kN; ++rep) {
        Rng rng(derive_seed(kSeed, static_cast<std::uint64_t>(rep)));
        std::array<bool, kDepth> rec{};
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kDepth; ++i) {
            const double logx = rng.next_log_std_exponential() - logw[static_cast<std::size_t>(i)];
            if (logx < best) {
                best = logx;
                rec[static_cast<std::size_t>(i)] = true;
                ++hits[static_cast<std::size_t>(i)];
            }
        }
        for (int i = 0; i < kDepth; ++i) {
            if (!rec[static_cast<std::size_t>(i)]) continue;
            for (int j = i + 1; j < kDepth; ++j) {
                if (rec[static_cast<std::size_t>(j)]) ++joint[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        }
    }

    // Frequencies: theta/(theta+i-1) within three binomial sigmas.
    double worst_z = 0.0;
    if (hits[0] != kN) c.pass = false;  // the first index is always a record
    for (int i = 2; i <= kDepth; ++i) {
        const double p = 2.0 / (2.0 + static_cast<double>(i) - 1.0);
        worst_z = std::max(worst_z, testutil::binomial_z(hits[static_cast<std::size_t>(i - 1)], kN, p));
    }
    if (!(worst_z < 3.0)) c.pass = false;

    // Pairwise correlations of the nondegenerate indicators.
    const double bound = 3.0 / std::sqrt(static_cast<double>(kN));
    double worst_corr = 0.0;
    for (int i = 1; i < kDepth; ++i) {
        for (int j = i + 1; j < kDepth; ++j) {
            const double si = static_cast<double>(hits[static_cast<std::size_t>(i)]);
            const double sj = static_cast<double>(hits[static_cast<std::size_t>(j)]);
            const double sij = static_cast<double>(joint[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            const double n = static_cast<double>(kN);
            const double corr =
                (n * sij - si * sj) / std::sqrt((n * si - si * si) * (n * sj - sj * sj));
            worst_corr = std::max(worst_corr, std::abs(corr));
        }
    }
    if (!(worst_corr <= bound)) c.pass = false;
    c.detail = "worst freq z " + fmt(worst_z) + " < 3; worst |corr| " + fmt(worst_corr) +
               " <= " + fmt(bound);
    return c;
}

// 4. Exact stationarity of the top-to-random chain at n = 4.
Criterion tsetlin_stationarity() {
    Criterion c;
    const SizeFunction ramp = SizeFunction::explicit_table({1.0, 2.0, 3.0, 4.0});
    const TsetlinMatrix m = transition_matrix_tsetlin({1, 2, 3, 4}, ramp);

    std::vector<double> pi(m.size());
    double total = 0.0;
    for (std::size_t s = 0; s < m.size(); ++s) {
        std::vector<double> sizes;
        for (int label : m.states[s]) sizes.push_back(ramp.evaluate(label));
        pi[s] = chain_prob(sizes);
        total += pi[s];
    }
    for (double& v : pi) v /= total;

    // Invariance of the chain law.
    double invariance_gap = 0.0;
    for (std::size_t col = 0; col < m.size(); ++col) {
        double mass = 0.0;
        for (std::size_t row = 0; row < m.size(); ++row) mass += pi[row] * m.at(row, col);
        invariance_gap = std::max(invariance_gap, std::abs(mass - pi[col]));
    }

    // Independent stationary vector by power iteration.
    std::vector<double> v(m.size(), 1.0 / static_cast<double>(m.size()));
    for (int it = 0; it < 4000; ++it) {
        std::vector<double> next(m.size(), 0.0);
        for (std::size_t row = 0; row < m.size(); ++row) {
            for (std::size_t col = 0; col < m.size(); ++col) next[col] += v[row] * m.at(row, col);
        }
        v = std::move(next);
    }
    double solve_gap = 0.0;
    for (std::size_t s = 0; s < m.size(); ++s) solve_gap = std::max(solve_gap, std::abs(v[s] - pi[s]));

    c.pass = invariance_gap <= 1e-12 && solve_gap <= 1e-12;
    c.detail = "pi P vs pi gap " + fmt(invariance_gap) + "; power-iteration gap " +
               fmt(solve_gap) + " (tol 1e-12)";
    return c;
}

// 5. Almost-sure inversion rate and the exact mean formula, q = 1/2.
Criterion inversion_asymptotics() {
    Criterion c;
    const SizeFunction geo = SizeFunction::geometric(0.5);
    const double limit = c_q(0.5, 1e-9).value;

    double worst_rel = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FiniteOrder order = sample_exponential(geo, 20000, derive_seed(777, seed));
        const double rate = count_inversions(order).normalized;
        worst_rel = std::max(worst_rel, std::abs(rate - limit) / limit);
    }
    if (!(worst_rel < 0.05)) c.pass = false;

    // Exact mean at n = 100 against a Monte Carlo mean, three sigmas.
    constexpr std::int64_t kReps = 10000;
    const std::vector<double> draws =
        kernels::per_replicate_parallel(kReps, 4242, [&](std::int64_t, Rng& rng) {
            const std::uint64_t sub = rng.next_u64();
            return static_cast<double>(
                count_inversions(sample_exponential(geo, 100, sub)).d_n);
        });
    const double expected = expected_inversions(geo, 100);
    const double mc_mean = testutil::mean(draws);
    const double sigma = testutil::sample_sd(draws) / std::sqrt(static_cast<double>(kReps));
    const double z = std::abs(mc_mean - expected) / sigma;
    if (!(z < 3.0)) c.pass = false;

    c.detail = "worst |D_n/n - c_q|/c_q " + fmt(worst_rel) + " < 0.05 (c_q " + fmt(limit) +
               "); mean z " + fmt(z) + " < 3";
    return c;
}

// 6. The classification table for every parametric family.
Criterion classification_table() {
    Criterion c;
    const struct {
        SizeFunction desc;
        OrderType expected;
    } rows[] = {
        {SizeFunction::geometric(0.5), OrderType::ZPos},
        {SizeFunction::geometric(2.0), OrderType::ZNeg},
        {SizeFunction::constant(1.0), OrderType::Q},
        {SizeFunction::log_power(0.5), OrderType::Q},
        {SizeFunction::log_power(2.0), OrderType::ZNeg},
        {SizeFunction::log_power(1.0), OrderType::QThenZNeg},
        {SizeFunction::log_plus_two_loglog(), OrderType::QThenFinite},
        {SizeFunction::karamata_stirling(0.5), OrderType::Q},
        {SizeFunction::karamata_stirling(1.0), OrderType::Q},
        {SizeFunction::karamata_stirling(2.0), OrderType::Q},
        {SizeFunction::karamata_stirling(7.5), OrderType::Q},
        {SizeFunction::power(-1.5), OrderType::ZPos},
    };
    int ok = 0;
    for (const auto& row : rows) {
        const OrderType got = classify(analytic_metadata(row.desc)).first;
        if (got == row.expected) {
            ++ok;
        } else {
            c.pass = false;
            c.detail += std::string(family_name(row.desc.family())) + " got " +
                        to_string(got) + " want " + to_string(row.expected) + "; ";
        }
    }
    if (c.pass) c.detail = std::to_string(ok) + "/12 table rows exact";
    return c;
}

// 7. Abscissa: closed form and the numeric estimator at i_max = 1e6.
Criterion abscissa() {
    Criterion c;
    const double analytic = abscissa_analytic(SizeFunction::log_power(1.0));
    if (analytic != 1.0) c.pass = false;

    const struct {
        SizeFunction desc;
        double expected;
    } rows[] = {
        {SizeFunction::log_power(1.0), 1.0},
        {SizeFunction::log_power(2.0), 0.0},
        {SizeFunction::geometric(2.0), 0.0},
    };
    double worst = 0.0;
    for (const auto& row : rows) {
        const AbscissaEstimate est = abscissa_numeric(row.desc, 1000000, 1000);
        worst = std::max(worst, std::abs(est.value - row.expected));
    }
    if (!(worst < 0.1)) c.pass = false;
    c.detail = "analytic beta(log) " + fmt(analytic) + "; worst numeric error " + fmt(worst) +
               " < 0.1";
    return c;
}

// 8. Empirical size distribution limit t^2 for linear weights.
Criterion steele_limit() {
    Criterion c;
    const std::vector<double> grid = steele_Fn_grid(SizeFunction::power(1.0), 100000, 101);
    double sup = 0.0;
    for (int g = 0; g <= 100; ++g) {
        const double t = static_cast<double>(g) / 100.0;
        sup = std::max(sup, std::abs(grid[static_cast<std::size_t>(g)] - t * t));
    }
    c.pass = sup < 0.01;
    c.detail = "sup |F_n(t) - t^2| " + fmt(sup) + " < 0.01";
    return c;
}

// 9. Merge counting vs the quadratic oracle on 500 random arrangements.
Criterion inversion_oracle() {
    Criterion c;
    Rng rng(909090);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 200);
        std::vector<int> labels(static_cast<std::size_t>(n));
        std::iota(labels.begin(), labels.end(), 1);
        for (std::size_t i = labels.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
            std::swap(labels[i - 1], labels[j]);
        }
        const FiniteOrder order{labels};

        std::int64_t brute = 0;
        for (std::size_t a = 0; a < labels.size(); ++a) {
            for (std::size_t b = a + 1; b < labels.size(); ++b) {
                if (labels[a] > labels[b]) ++brute;
            }
        }
        if (count_inversions(order).d_n != brute) {
            c.pass = false;
            c.detail = "mismatch at trial " + std::to_string(trial);
            return c;
        }
        ++checked;
    }
    c.detail = std::to_string(checked) + "/500 arrangements match the quadratic count";
    return c;
}

}  // namespace

int main() {
    const struct {
        const char* name;
        Criterion (*run)();
    } criteria[] = {
        {"exact identities", exact_identities},
        {"sampler equivalence", sampler_equivalence},
        {"record law", record_law},
        {"tsetlin stationarity", tsetlin_stationarity},
        {"inversion asymptotics", inversion_asymptotics},
        {"classification table", classification_table},
        {"abscissa", abscissa},
        {"steele limit", steele_limit},
        {"inversion oracle", inversion_oracle},
    };

    bool all_pass = true;
    int index = 0;
    for (const auto& criterion : criteria) {
        ++index;
        const Criterion result = criterion.run();
        all_pass = all_pass && result.pass;
        std::printf("[%s] %d. %-22s %s\n", result.pass ? "PASS" : "FAIL", index, criterion.name,
                    result.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %s\n", all_pass ? "all criteria passed" : "FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
