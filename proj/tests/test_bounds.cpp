#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "banditlab/bounds.hpp"

using namespace banditlab;

namespace {

BoundInputs reference_inputs() {
    return make_bound_inputs(0.01, 1.0, 1.0, 1.0, 1.0, 0.5, 2.0, 6);
}

}  // namespace

TEST_CASE("input clamping") {
    SUBCASE("values already above one pass through") {
        const BoundInputs in = reference_inputs();
        CHECK_FALSE(in.clamped);
        CHECK(in.reg == 1.0);
        CHECK(in.param_bound == 1.0);
        CHECK(in.noise_std == 1.0);
        CHECK(in.max_gap == 2.0);
        CHECK(in.min_gap == 0.5);
        CHECK(in.dim == 6);
    }
    SUBCASE("small constants are raised to one and flagged") {
        const BoundInputs in = make_bound_inputs(0.01, 0.5, 1.0, 0.3, 0.2, 0.4, 0.7, 3);
        CHECK(in.clamped);
        CHECK(in.reg == 1.0);
        CHECK(in.param_bound == 1.0);
        CHECK(in.noise_std == 1.0);
        CHECK(in.max_gap == 1.0);
        const BoundInputs ones = make_bound_inputs(0.01, 1.0, 1.0, 1.0, 1.0, 0.4, 1.0, 3);
        CHECK(suboptimal_pulls_bound(in, 1e3) == suboptimal_pulls_bound(ones, 1e3));
    }
    SUBCASE("min gap is never altered") {
        const BoundInputs in = make_bound_inputs(0.01, 1.0, 1.0, 1.0, 1.0, 0.05, 0.05, 2);
        CHECK(in.min_gap == 0.05);
        CHECK(in.max_gap == 1.0);
    }
    SUBCASE("invalid constants are rejected") {
        CHECK_THROWS_AS(make_bound_inputs(0.0, 1, 1, 1, 1, 1, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_bound_inputs(1.01, 1, 1, 1, 1, 1, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_bound_inputs(0.1, 0, 1, 1, 1, 1, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_bound_inputs(0.1, 1, 0, 1, 1, 1, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_bound_inputs(0.1, 1, 1, 0, 1, 1, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_bound_inputs(0.1, 1, 1, 1, 0, 1, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_bound_inputs(0.1, 1, 1, 1, 1, 0, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_bound_inputs(0.1, 1, 1, 1, 1, 2, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_bound_inputs(0.1, 1, 1, 1, 1, 1, 1, 0), std::invalid_argument);
    }
}

TEST_CASE("suboptimal-pull envelope") {
    const BoundInputs in = reference_inputs();
    SUBCASE("matches an independently assembled plug-in") {
        const double t = 1e4;
        const double width =
            4.0 * std::log(10.0) + 6.0 * std::log(1.0 + t / 6.0);
        const double expected = (32.0 * 4.0 / 0.25) * width * width;
        CHECK(suboptimal_pulls_bound(in, t) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("grows with the horizon") {
        double prev = suboptimal_pulls_bound(in, 0.0);
        for (const double t : {1.0, 10.0, 1e2, 1e4, 1e6}) {
            const double cur = suboptimal_pulls_bound(in, t);
            CHECK(cur > prev);
            prev = cur;
        }
    }
    SUBCASE("negative horizon is rejected") {
        CHECK_THROWS_AS((void)suboptimal_pulls_bound(in, -1.0), std::invalid_argument);
    }
}

TEST_CASE("onset time") {
    const BoundInputs in = reference_inputs();
    SUBCASE("matches an independently assembled plug-in") {
        const double lam_hls = 0.5;
        const TauResult r = tau_hls(in, lam_hls);
        CHECK_FALSE(r.log_clamped);

        const double expl = 384.0 * 6.0 / (lam_hls * 0.5) *
                            std::log(64.0 * 36.0 / (std::sqrt(lam_hls) * 0.5 * 0.01));
        const double conc =
            768.0 / (lam_hls * lam_hls) *
            std::log(512.0 * 6.0 / (0.01 * lam_hls * lam_hls));
        CHECK(r.exploration_branch == doctest::Approx(expl * expl).epsilon(1e-12));
        CHECK(r.concentration_branch == doctest::Approx(conc).epsilon(1e-12));
        CHECK(r.tau == std::max(r.exploration_branch, r.concentration_branch));
    }
    SUBCASE("a larger eigenvalue never delays the onset") {
        CHECK(tau_hls(in, 1.0).tau <= tau_hls(in, 0.25).tau);
    }
    SUBCASE("nonpositive eigenvalues give an infinite onset") {
        for (const double bad : {0.0, -1.0}) {
            const TauResult r = tau_hls(in, bad);
            CHECK(std::isinf(r.tau));
            CHECK(std::isinf(r.exploration_branch));
            CHECK(std::isinf(r.concentration_branch));
            CHECK_FALSE(r.log_clamped);
        }
    }
    SUBCASE("tiny logarithm arguments are clamped and flagged") {
        const BoundInputs easy = make_bound_inputs(0.99, 1, 1, 1, 1, 1, 1, 1);
        const double lam_hls = 1e6;
        const TauResult r = tau_hls(easy, lam_hls);
        CHECK(r.log_clamped);
        CHECK(r.exploration_branch ==
              doctest::Approx(std::pow(384.0 / lam_hls, 2.0)).epsilon(1e-12));
        CHECK(r.concentration_branch ==
              doctest::Approx(768.0 / (lam_hls * lam_hls)).epsilon(1e-12));
    }
}

TEST_CASE("regret envelope") {
    const BoundInputs in = reference_inputs();
    const double inf = std::numeric_limits<double>::infinity();

    SUBCASE("matches the pull envelope times the gap while no onset binds") {
        for (const double t : {1.0, 1e2, 1e4}) {
            CHECK(regret_bound(in, t, inf, 1) ==
                  doctest::Approx(suboptimal_pulls_bound(in, t) * in.min_gap)
                      .epsilon(1e-12));
        }
    }
    SUBCASE("non-decreasing in the horizon and flat past the onset") {
        const double tau = 500.0;
        double prev = regret_bound(in, 0.0, tau, 1);
        for (const double n : {10.0, 100.0, 499.0, 500.0, 1e4, 1e9}) {
            const double cur = regret_bound(in, n, tau, 1);
            CHECK(cur >= prev);
            prev = cur;
        }
        CHECK(regret_bound(in, 500.0, tau, 1) == regret_bound(in, 1e9, tau, 1));
    }
    SUBCASE("a union over two representations widens the bracket by 2 ln 2") {
        const double scale = 32.0 * 1.0 * 4.0 * 1.0 * 1.0 / 0.5;
        const double w1 = std::sqrt(regret_bound(in, 1e3, inf, 1) / scale);
        const double w2 = std::sqrt(regret_bound(in, 1e3, inf, 2) / scale);
        CHECK(w2 - w1 == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    }
    SUBCASE("a certain bound drops the confidence term") {
        const BoundInputs sure = make_bound_inputs(1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 2.0, 6);
        const double n = 1e3;
        const double width = 6.0 * std::log(1.0 + n / 6.0);
        const double expected = 32.0 * 4.0 / 0.5 * width * width;
        CHECK(regret_bound(sure, n, inf, 1) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("invalid arguments are rejected") {
        CHECK_THROWS_AS((void)regret_bound(in, -1.0, inf, 1), std::invalid_argument);
        CHECK_THROWS_AS((void)regret_bound(in, 1.0, -1.0, 1), std::invalid_argument);
        CHECK_THROWS_AS((void)regret_bound(in, 1.0, inf, 0), std::invalid_argument);
    }
}
