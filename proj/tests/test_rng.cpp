#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "authsim/rng.hpp"
#include "authsim/stats.hpp"

using namespace authsim;

TEST_CASE("streams replay bit-identically and separate cleanly") {
    Rng a(42, 7);
    Rng b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c(42, 8);
    Rng d(43, 7);
    int same_c = 0, same_d = 0;
    Rng a2(42, 7);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t ref = a2.next_u64();
        if (ref == c.next_u64()) ++same_c;
        if (ref == d.next_u64()) ++same_d;
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("uniform draws stay inside their ranges") {
    Rng rng(1, 1);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        const double v = rng.uniform_pos();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("zero-variance complex gaussian degenerates to exact zeros") {
    Rng rng(3, 3);
    const auto v = sample_complex_gaussian(4, 0.0, rng);
    REQUIRE(v.size() == 4);
    for (const auto& z : v) {
        CHECK(z.real() == 0.0);
        CHECK(z.imag() == 0.0);
    }
}

TEST_CASE("complex gaussian sample mean obeys the law of large numbers") {
    // n = 1e5, unit variance: each component's sample mean should fall well
    // within 4 standard errors of zero, i.e. |mean| < 4 / sqrt(n) per part.
    Rng rng(11, 0);
    const std::size_t n = 100000;
    const auto v = sample_complex_gaussian(n, 1.0, rng);
    double re = 0.0, im = 0.0;
    for (const auto& z : v) {
        re += z.real();
        im += z.imag();
    }
    re /= static_cast<double>(n);
    im /= static_cast<double>(n);
    const double bound = 4.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(re) < bound);
    CHECK(std::abs(im) < bound);
}

TEST_CASE("complex gaussian empirical variance matches the target") {
    // Chi-square interval for the variance estimate at n = 1e5 draws of
    // variance 2: the total-power mean lies in [1.94, 2.06] with margin.
    Rng rng(12, 0);
    const std::size_t n = 100000;
    const auto v = sample_complex_gaussian(n, 2.0, rng);
    double power = 0.0;
    for (const auto& z : v) power += std::norm(z);
    power /= static_cast<double>(n);
    CHECK(power > 1.94);
    CHECK(power < 2.06);
}

TEST_CASE("complex gaussian fourth moment passes the normality check") {
    // Real parts of CN(0, s2) draws are N(0, s2/2); their fourth moment is
    // 3 (s2/2)^2. At n = 1e6 the estimate must land within 5 standard
    // errors (the fourth-moment estimator's variance is 96 (s2/2)^4 / n).
    Rng rng(13, 0);
    const std::size_t n = 1000000;
    const double s2 = 2.0;
    double m4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = rng.complex_gaussian(s2).real();
        m4 += re * re * re * re;
    }
    m4 /= static_cast<double>(n);
    const double half = s2 / 2.0;
    const double expected = 3.0 * half * half;
    const double se = std::sqrt(96.0 * half * half * half * half / static_cast<double>(n));
    CHECK(std::abs(m4 - expected) < 5.0 * se);
}

TEST_CASE("sampling rejects invalid arguments") {
    Rng rng(1, 1);
    CHECK_THROWS_AS(sample_complex_gaussian(0, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_complex_gaussian(4, -1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_complex_gaussian(4, std::nan(""), rng), std::invalid_argument);
}
