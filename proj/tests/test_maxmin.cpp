#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "secnoma/maxmin.hpp"

#include <cmath>
#include <stdexcept>

using namespace secnoma;

namespace {

const MaxMinSolution& solution(const Outcome<MaxMinSolution>& o) {
    return std::get<MaxMinSolution>(o);
}

} // namespace

TEST_CASE("positive-rate feasibility") {
    const double e = oracle::kEpsPhiOne;
    CHECK(check_positive_rate_feasibility(oracle::worked_channel(), e));
    CHECK_FALSE(check_positive_rate_feasibility(ChannelRealization({1.0, 5.0}, 1.0), e));
    CHECK(check_positive_rate_feasibility(ChannelRealization({1e-3, 5.0}, 1.0), 1.0 - 1e-9));
}

TEST_CASE("worked instance, bisection") {
    const auto o = solve_maxmin_bisection(oracle::worked_channel(), oracle::kEpsPhiOne, 1.0, 1e-10);
    REQUIRE(is_feasible(o));
    const auto& s = solution(o);
    CHECK(std::abs(s.rate - oracle::kMaxMinRate) < 1e-9);
    CHECK(s.allocation.power(0) == doctest::Approx(oracle::kMaxMinPower1).epsilon(1e-8));
    CHECK(s.allocation.power(1) == doctest::Approx(oracle::kMaxMinPower2).epsilon(1e-8));
    CHECK(s.allocation.total() <= 1.0);
    CHECK(s.iterations_used == 35);
}

TEST_CASE("worked instance, closed form") {
    const auto s = solve_maxmin_two_user(oracle::worked_channel(), oracle::kEpsPhiOne, 1.0);
    CHECK(s.rate == doctest::Approx(oracle::kMaxMinRate).epsilon(1e-13));
    CHECK(s.allocation.power(0) == doctest::Approx(oracle::kMaxMinPower1).epsilon(1e-13));
    CHECK(s.allocation.power(1) == doctest::Approx(oracle::kMaxMinPower2).epsilon(1e-13));
    CHECK(s.allocation.total() == doctest::Approx(1.0).epsilon(1e-14));

    // The min-power recursion at R* reproduces the closed-form powers.
    const auto back = solve_min_power(oracle::worked_channel(), {s.rate, oracle::kEpsPhiOne});
    REQUIRE(is_feasible(back));
    const auto& p = std::get<PowerMinSolution>(back);
    CHECK(p.allocation.power(1) == doctest::Approx(oracle::kMaxMinPower2).epsilon(1e-11));
    CHECK(p.total_power == doctest::Approx(1.0).epsilon(1e-11));

    const auto eq = solve_maxmin_two_user(ChannelRealization({10.0, 10.0}, 1.0),
                                          oracle::kEpsPhiOne, 1.0);
    CHECK(eq.rate == doctest::Approx(oracle::kEqualGainRate).epsilon(1e-13));

    CHECK_THROWS_AS(solve_maxmin_two_user(ChannelRealization({10.0}, 1.0), oracle::kEpsPhiOne, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(solve_maxmin_two_user(ChannelRealization({0.5, 2.0}, 1.0),
                                          oracle::kEpsPhiOne, 1.0),
                    std::domain_error);
}

TEST_CASE("power ratio and bounds") {
    CHECK(optimal_power_ratio_user1(5, 10, 1, 1) ==
          doctest::Approx(oracle::kMaxMinPower1).epsilon(1e-13));
    const auto b = bound_triple(5, 10, 1, 1);
    CHECK(b.b1 == doctest::Approx(oracle::kB1).epsilon(1e-14));
    CHECK(b.b2 == doctest::Approx(oracle::kB2).epsilon(1e-11));
    CHECK(b.b3 == doctest::Approx(oracle::kB3).epsilon(1e-13));
    CHECK_THROWS_AS(optimal_power_ratio_user1(10, 5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(optimal_power_ratio_user1(5, 10, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(optimal_power_ratio_user1(5, 10, 6, 1), std::invalid_argument);

    const auto tie = bound_triple(10, 10, 1, 1);
    CHECK(tie.b3 <= tie.b2);
    CHECK(tie.b2 <= tie.b1);

    RandomStream rng(31);
    for (int t = 0; t < 2000; ++t) {
        const auto inst = oracle::random_positive_rate_instance(rng, 2);
        const double phi = stringency(inst.channel, inst.eps);
        const double p = std::pow(10.0, rng.uniform(-2.0, 3.0));
        const auto bt = bound_triple(inst.channel.gain(0), inst.channel.gain(1), phi, p);
        CHECK(bt.b3 <= bt.b1);
        CHECK(bt.b3 <= bt.b2);
    }
}

TEST_CASE("bisection matches the closed form on random instances") {
    RandomStream rng(32);
    for (int t = 0; t < 100; ++t) {
        const auto inst = oracle::random_positive_rate_instance(rng, 2);
        const double p = std::pow(10.0, rng.uniform(-2.0, 2.0));
        const auto o = solve_maxmin_bisection(inst.channel, inst.eps, p);
        REQUIRE(is_feasible(o));
        const auto closed = solve_maxmin_two_user(inst.channel, inst.eps, p);
        CHECK(std::abs(solution(o).rate - closed.rate) < 1e-8);
        CHECK(closed.allocation.total() == doctest::Approx(p).epsilon(1e-8));
        const double width = std::log2(1.0 + inst.channel.gain(0) * p);
        CHECK(solution(o).iterations_used == bisection_iteration_count(width, 1e-10));
    }
}

TEST_CASE("bisection certificate for larger K") {
    RandomStream rng(33);
    for (int t = 0; t < 40; ++t) {
        const auto inst = oracle::random_positive_rate_instance(rng, 3 + t % 3);
        const double p = std::pow(10.0, rng.uniform(-1.0, 2.0));
        const double v = 1e-8;
        const auto o = solve_maxmin_bisection(inst.channel, inst.eps, p, v);
        REQUIRE(is_feasible(o));
        const auto& s = solution(o);
        if (s.allocation.empty())
            continue;
        const auto at = solve_min_power(inst.channel, {s.rate, inst.eps});
        REQUIRE(is_feasible(at));
        CHECK(std::get<PowerMinSolution>(at).total_power <= p * (1 + 1e-12));
        const auto above = solve_min_power(inst.channel, {s.rate + v, inst.eps});
        CHECK((!is_feasible(above) || std::get<PowerMinSolution>(above).total_power > p));
    }
}

TEST_CASE("iteration count") {
    CHECK(bisection_iteration_count(1.0, 0.3) == 2);
    CHECK(bisection_iteration_count(std::log2(6.0), 1e-10) ==
          static_cast<std::size_t>(std::ceil(std::log2(std::log2(6.0) / 1e-10))));
}

TEST_CASE("limits and monotonicity") {
    const auto c = oracle::worked_channel();
    const double e = oracle::kEpsPhiOne;
    CHECK(solution(solve_maxmin_bisection(c, e, 1e-6)).rate < 1e-5);

    const auto bad = solve_maxmin_bisection(ChannelRealization({1.0, 5.0}, 1.0), e, 1.0);
    REQUIRE_FALSE(is_feasible(bad));
    CHECK(std::get<InfeasibleVerdict>(bad).reason == InfeasibleReason::positive_rate_condition);
    CHECK(std::get<InfeasibleVerdict>(bad).failing_users == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(solve_maxmin_bisection(c, e, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_maxmin_bisection(c, e, 1.0, 0.0), std::invalid_argument);

    double prev = 0.0;
    for (double p = 0.01; p < 1e6; p *= 2.0) {
        const double r = solve_maxmin_two_user(c, e, p).rate;
        CHECK(r >= prev);
        prev = r;
    }
    // Finite asymptote: the strong user's limit 2^Q < gamma_2 / phi.
    CHECK(prev < std::log2(10.0));
    CHECK(solve_maxmin_two_user(c, e, 1e9).rate ==
          doctest::Approx(solve_maxmin_two_user(c, e, 1e10).rate).epsilon(1e-6));

    prev = 0.0;
    for (double eps = 0.01; eps < 1.0; eps += 0.01) {
        if (!check_positive_rate_feasibility(c, eps))
            continue;
        const double r = solve_maxmin_two_user(c, eps, 1.0).rate;
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("weak-user share grows with stringency") {
    RandomStream rng(34);
    for (int t = 0; t < 20; ++t) {
        const auto g = oracle::random_gains(rng, 2, 0.0, 30.0);
        const double p = std::pow(10.0, rng.uniform(-2.0, 2.0));
        double prev = 0.0;
        for (int j = 1; j <= 1000; ++j) {
            const double phi = g[0] * j / 1001.0;
            const double beta = optimal_power_ratio_user1(g[0], g[1], phi, p);
            CHECK(beta > prev);
            CHECK(beta < 1.0);
            prev = beta;
        }
    }
}
