#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sbo/sizes.hpp"

using namespace sbo;

TEST_CASE("evaluate matches the closed forms") {
    CHECK(SizeFunction::karamata_stirling(2.0).evaluate(4) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(SizeFunction::geometric(0.5).evaluate(3) == 0.125);
    CHECK(SizeFunction::constant(1.0).evaluate(1) == 1.0);
    CHECK(SizeFunction::constant(1.0).evaluate(987654) == 1.0);
    CHECK(SizeFunction::power(-2.0).evaluate(4) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(SizeFunction::log_power(2.0).evaluate(1) ==
          doctest::Approx(std::log(2.0) * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("karamata-stirling weights are the rising-factorial quotient") {
    const SizeFunction ks = SizeFunction::karamata_stirling(2.0);
    // theta = 2 gives w(i) = i.
    for (std::int64_t i = 1; i <= 12; ++i) {
        CHECK(ks.evaluate(i) == doctest::Approx(static_cast<double>(i)).epsilon(1e-13));
    }
    // Recurrence ratio for a fractional theta.
    const SizeFunction frac = SizeFunction::karamata_stirling(0.7);
    CHECK(frac.evaluate(1) == 1.0);
    for (std::int64_t i = 1; i <= 40; ++i) {
        const double ratio = frac.evaluate(i + 1) / frac.evaluate(i);
        const double expected = (0.7 + static_cast<double>(i) - 1.0) / static_cast<double>(i);
        CHECK(ratio == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("karamata-stirling theta=1 is exactly the constant function") {
    const SizeFunction ks = SizeFunction::karamata_stirling(1.0);
    const SizeFunction one = SizeFunction::constant(1.0);
    for (std::int64_t i = 1; i <= 200; ++i) {
        CHECK(ks.evaluate(i) == one.evaluate(i));
    }
}

TEST_CASE("log_plus_two_loglog starts at log 2 and stays positive") {
    const SizeFunction f = SizeFunction::log_plus_two_loglog();
    CHECK(f.evaluate(1) == std::log(2.0));
    const double l3 = std::log(3.0);
    CHECK(f.evaluate(2) == doctest::Approx(l3 + 2.0 * std::log(l3)).epsilon(1e-14));
    for (std::int64_t i = 1; i <= 1000; ++i) CHECK(f.evaluate(i) > 0.0);
}

TEST_CASE("partial sums match the closed forms") {
    CHECK(SizeFunction::karamata_stirling(2.0).partial_sum(4) ==
          doctest::Approx(10.0).epsilon(1e-13));
    CHECK(SizeFunction::constant(1.0).partial_sum(5) == 5.0);
    CHECK(SizeFunction::geometric(0.5).partial_sum(3) == doctest::Approx(0.875).epsilon(1e-14));
}

TEST_CASE("partial sum increments equal the weights") {
    const SizeFunction fams[] = {
        SizeFunction::geometric(0.8),
        SizeFunction::power(1.3),
        SizeFunction::log_power(0.5),
        SizeFunction::karamata_stirling(3.2),
        SizeFunction::log_plus_two_loglog(),
    };
    for (const SizeFunction& f : fams) {
        for (std::int64_t n = 2; n <= 60; n += 7) {
            const double diff = f.partial_sum(n) - f.partial_sum(n - 1);
            CHECK(diff == doctest::Approx(f.evaluate(n)).epsilon(1e-11));
        }
    }
}

TEST_CASE("evaluate is deterministic and strictly positive") {
    const SizeFunction fams[] = {
        SizeFunction::geometric(0.5),  SizeFunction::geometric(2.0),
        SizeFunction::power(-1.0),     SizeFunction::power(0.5),
        SizeFunction::log_power(1.0),  SizeFunction::log_plus_two_loglog(),
        SizeFunction::karamata_stirling(0.4),
    };
    for (const SizeFunction& f : fams) {
        for (std::int64_t i = 1; i <= 300; i += 13) {
            const double a = f.evaluate(i);
            CHECK(a > 0.0);
            CHECK(a == f.evaluate(i));
            CHECK(f.log_evaluate(i) == doctest::Approx(std::log(a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("range errors are reported, log evaluation stays finite") {
    const SizeFunction grow = SizeFunction::geometric(2.0);
    CHECK_THROWS_AS((void)grow.evaluate(5000), std::overflow_error);
    CHECK(std::isfinite(grow.log_evaluate(5000)));

    const SizeFunction shrink = SizeFunction::geometric(0.5);
    CHECK_THROWS_AS((void)shrink.evaluate(5000), std::underflow_error);
    CHECK(std::isfinite(shrink.log_evaluate(5000)));
    CHECK(shrink.weight_raw(5000) == 0.0);
}

TEST_CASE("explicit tables validate entries and bounds") {
    CHECK_THROWS_AS(SizeFunction::explicit_table({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(SizeFunction::explicit_table({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SizeFunction::explicit_table({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(SizeFunction::explicit_table({}), std::invalid_argument);

    const SizeFunction t = SizeFunction::explicit_table({2.0, 3.0, 4.0});
    CHECK(t.evaluate(2) == 3.0);
    CHECK(t.truncation_default() == 3);
    CHECK_THROWS_AS((void)t.evaluate(4), std::out_of_range);
    CHECK_THROWS_AS((void)t.evaluate(0), std::out_of_range);
}

TEST_CASE("descriptor json round trip") {
    SizeFunction fams[] = {
        SizeFunction::explicit_table({0.5, 1.5, 2.5}),
        SizeFunction::constant(2.0),
        SizeFunction::geometric(0.25),
        SizeFunction::power(-1.5),
        SizeFunction::log_power(2.0),
        SizeFunction::log_plus_two_loglog(),
        SizeFunction::karamata_stirling(1.7),
    };
    for (SizeFunction& f : fams) {
        f.set_truncation_default(3);
        const SizeFunction back = SizeFunction::from_json(f.to_json());
        CHECK(back.family() == f.family());
        CHECK(back.truncation_default() == 3);
        for (std::int64_t i = 1; i <= 3; ++i) CHECK(back.evaluate(i) == f.evaluate(i));
    }
    CHECK_THROWS_AS(SizeFunction::from_json({{"family", "mystery"}}), std::invalid_argument);
}

TEST_CASE("analytic metadata follows the family table") {
    const SizeMetadata geo = analytic_metadata(SizeFunction::geometric(0.5));
    CHECK(geo.total_summable == Tristate::Yes);
    CHECK(geo.small_part_summable == Tristate::Yes);
    CHECK(geo.accumulation == AccumulationSet{.zero = true, .infinity = false, .interior = false});

    const SizeMetadata lp2 = analytic_metadata(SizeFunction::log_power(2.0));
    REQUIRE(lp2.beta.has_value());
    CHECK(*lp2.beta == 0.0);

    const SizeMetadata cst = analytic_metadata(SizeFunction::constant(1.0));
    CHECK(cst.accumulation.interior);

    const SizeMetadata lll = analytic_metadata(SizeFunction::log_plus_two_loglog());
    REQUIRE(lll.beta.has_value());
    CHECK(*lll.beta == 1.0);
    CHECK(lll.converges_at_beta == Tristate::Yes);

    CHECK_THROWS_AS(analytic_metadata(SizeFunction::explicit_table({1.0, 2.0})),
                    std::invalid_argument);
}
