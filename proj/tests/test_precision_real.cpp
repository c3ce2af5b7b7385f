#include "doctest.h"

#include <cmath>
#include <random>

#include "narep/errors.hpp"
#include "narep/precision_real.hpp"

using namespace narep;

namespace {

PrecisionReal dec(const char* s, long bits = 256) { return PrecisionReal::from_decimal(s, bits); }
PrecisionReal num(long v, long bits = 256) { return PrecisionReal::from_long(v, bits); }

} // namespace

TEST_CASE("decimal literals are enclosed, integers are points") {
    const PrecisionReal tenth = dec("0.1");
    CHECK_FALSE(tenth.is_point());
    CHECK(tenth.lower() > 0.0999999);
    CHECK(tenth.upper() < 0.1000001);
    CHECK_FALSE(tenth.contains(0.1)); // the double 0.1 is slightly above 1/10
    CHECK(tenth.width() < 1e-70);
    CHECK(num(7).is_point());
    CHECK(PrecisionReal::from_integer(BigInt("123456789012345678901234567890"), 256).is_point());
}

TEST_CASE("outward rounding keeps exact identities inside the enclosure") {
    const PrecisionReal third = num(1) / num(3);
    CHECK((third * num(3)).contains(num(1)));
    CHECK((third + third + third).contains(num(1)));
    const PrecisionReal x = dec("2.75e41");
    CHECK(exp(log(x)).contains(x.midpoint_real()));
    CHECK((sqrt(num(2)) * sqrt(num(2))).contains(num(2)));
    CHECK(pow(num(3), 40).contains(PrecisionReal::from_integer(pow_ui(3, 40), 256)));
}

TEST_CASE("interval products take the extreme endpoint products") {
    const PrecisionReal a = PrecisionReal::hull(num(-2), num(3));
    const PrecisionReal b = PrecisionReal::hull(num(-5), num(4));
    const PrecisionReal p = a * b;
    CHECK(p.lower() == -15.0);
    CHECK(p.upper() == 12.0);
    CHECK_THROWS_AS(num(1) / a, Error);
}

TEST_CASE("nearest_int_distance") {
    CHECK(nearest_int_distance(num(5)).upper() == 0.0);
    CHECK(nearest_int_distance(dec("2.5")).lower() == 0.5);
    CHECK(nearest_int_distance(dec("-3.25")).contains(0.25));
    CHECK(nearest_int_distance(dec("7.9")).midpoint() == doctest::Approx(0.1).epsilon(1e-15));
    // straddling an integer: the distance can be zero
    const PrecisionReal s = PrecisionReal::hull(dec("2.999"), dec("3.001"));
    CHECK(nearest_int_distance(s).lower() == 0.0);
    // straddling a half-integer: the distance reaches 1/2
    const PrecisionReal h = PrecisionReal::hull(dec("4.49"), dec("4.51"));
    CHECK(nearest_int_distance(h).upper() == 0.5);
    CHECK(nearest_int_distance(h).lower() > 0.489);
}

TEST_CASE("nearest_int_distance matches a double oracle on random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1000.0, 1000.0);
    for (int i = 0; i < 2000; ++i) {
        const double v = u(rng);
        const double want = std::fabs(v - std::nearbyint(v));
        detail::Mpfr x(256);
        mpfr_set_d(x.get(), v, MPFR_RNDN);
        const PrecisionReal d = nearest_int_distance(PrecisionReal::from_endpoints(x.get(), x.get(), 256));
        CHECK(d.contains(want));
    }
}

TEST_CASE("floor and ceiling of enclosures") {
    const PrecisionReal x = PrecisionReal::hull(dec("3.2"), dec("4.7"));
    CHECK(floor_lower(x) == 3);
    CHECK(floor_upper(x) == 4);
    CHECK(ceil_upper(x) == 5);
    CHECK(certainly_less(num(3), dec("3.0000001")));
    CHECK_FALSE(certainly_less(x, num(4)));
}

TEST_CASE("precision is tracked and can be changed") {
    const PrecisionReal x = log(num(10, 512));
    CHECK(x.precision_bits() == 512);
    const PrecisionReal y = x.at_precision(128);
    CHECK(y.precision_bits() == 128);
    CHECK(y.contains(x));
    CHECK(x.width() < y.width());
}
