// Timing comparison of the serial reference kernels against the OpenMP
// versions: series summation, abscissa scans, and Monte Carlo tallies.
//
//   ./sbo_bench [scale]
//
// scale (default 1) multiplies the problem sizes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "sbo/classifier.hpp"
#include "sbo/kernels.hpp"
#include "sbo/samplers.hpp"
#include "sbo/stats.hpp"
#include "sbo/threads.hpp"

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx   results %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, match ? "match" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const std::int64_t scale = argc > 1 ? std::atoll(argv[1]) : 1;
    std::printf("workers: %d\n", sbo::max_workers());

    {
        const sbo::SizeFunction logs = sbo::SizeFunction::log_power(2.0);
        const std::int64_t n = 20000000 * scale;
        double serial_result = 0.0, parallel_result = 0.0;
        const double serial_ms =
            time_ms([&] { serial_result = sbo::dirichlet_partial_serial(logs, 0.5, n); });
        const double parallel_ms =
            time_ms([&] { parallel_result = sbo::dirichlet_partial(logs, 0.5, n); });
        report("dirichlet_partial", serial_ms, parallel_ms,
               std::abs(serial_result - parallel_result) <= 1e-10 * std::abs(serial_result));
    }

    {
        const sbo::SizeFunction logs = sbo::SizeFunction::log_power(1.0);
        const std::int64_t i_max = 20000000 * scale;
        sbo::AbscissaEstimate serial_est, parallel_est;
        const double serial_ms =
            time_ms([&] { serial_est = sbo::abscissa_numeric_serial(logs, i_max, 1000); });
        const double parallel_ms =
            time_ms([&] { parallel_est = sbo::abscissa_numeric(logs, i_max, 1000); });
        report("abscissa_numeric", serial_ms, parallel_ms, serial_est.value == parallel_est.value);
    }

    {
        const sbo::SizeFunction ramp = sbo::SizeFunction::karamata_stirling(2.0);
        const std::int64_t replicates = 300000 * scale;
        const auto cell = [&](std::int64_t r, sbo::Rng&) {
            const sbo::FiniteOrder order =
                sbo::sample_exponential(ramp, 8, sbo::derive_seed(5, static_cast<std::uint64_t>(r)));
            return static_cast<std::size_t>(sbo::count_inversions(order).d_n);
        };
        std::vector<std::uint64_t> serial_counts, parallel_counts;
        const double serial_ms =
            time_ms([&] { serial_counts = sbo::kernels::tally_serial(replicates, 1, 29, cell); });
        const double parallel_ms =
            time_ms([&] { parallel_counts = sbo::kernels::tally_parallel(replicates, 1, 29, cell); });
        report("monte_carlo_tally", serial_ms, parallel_ms, serial_counts == parallel_counts);
    }

    return 0;
}
