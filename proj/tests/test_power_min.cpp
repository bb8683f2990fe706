#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "secnoma/power_min.hpp"

#include <cmath>
#include <stdexcept>

using namespace secnoma;

namespace {

const InfeasibleVerdict& verdict(const Outcome<PowerMinSolution>& o) {
    return std::get<InfeasibleVerdict>(o);
}

const PowerMinSolution& solution(const Outcome<PowerMinSolution>& o) {
    return std::get<PowerMinSolution>(o);
}

} // namespace

TEST_CASE("single-user minimum power") {
    const ChannelRealization c({10.0}, 1.0);
    const SecrecyRequirement req{1.0, oracle::kEpsPhiOne};
    const auto o = solve_min_power(c, req);
    REQUIRE(is_feasible(o));
    CHECK(solution(o).total_power == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(secrecy_outage_closed_form(c, solution(o).allocation, 1.0, 0) ==
          doctest::Approx(req.outage_budget).epsilon(1e-12));
}

TEST_CASE("worked two-user instance") {
    const auto c = oracle::worked_channel();
    const SecrecyRequirement req{1.0, oracle::kEpsPhiOne};
    const auto o = solve_min_power(c, req);
    REQUIRE(is_feasible(o));
    const auto& s = solution(o);
    CHECK(s.allocation.power(0) == doctest::Approx(oracle::kMinPower1).epsilon(1e-12));
    CHECK(s.allocation.power(1) == doctest::Approx(oracle::kMinPower2).epsilon(1e-12));
    CHECK(s.total_power == doctest::Approx(oracle::kMinPowerTotal).epsilon(1e-12));
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(s.rate_pairs[k].confidential_rate == 1.0);
        CHECK(s.rate_pairs[k].codeword_rate >= 1.0);
        CHECK(std::abs(secrecy_outage_closed_form(c, s.allocation, 1.0, k) - req.outage_budget) <
              1e-9);
    }
    CHECK(s.rate_pairs[0].codeword_rate == doctest::Approx(oracle::kCodewordRate1).epsilon(1e-11));
}

TEST_CASE("infeasibility verdicts") {
    const SecrecyRequirement req{1.0, oracle::kEpsPhiOne};
    const auto boundary = solve_min_power(ChannelRealization({2.0}, 1.0), req);
    REQUIRE_FALSE(is_feasible(boundary));
    CHECK(verdict(boundary).reason == InfeasibleReason::user_condition_K);
    CHECK(verdict(boundary).failing_users == std::vector<std::size_t>{0});

    // The strong user passes, the weak one cannot carry the interference.
    const auto weak = solve_min_power(ChannelRealization({2.05, 40.0}, 1.0), req);
    REQUIRE_FALSE(is_feasible(weak));
    CHECK(verdict(weak).reason == InfeasibleReason::user_condition_k);
    CHECK(verdict(weak).failing_users == std::vector<std::size_t>{0});

    const auto all = solve_min_power(ChannelRealization({1.0, 1.5}, 1.0), req);
    REQUIRE_FALSE(is_feasible(all));
    CHECK(verdict(all).failing_users == std::vector<std::size_t>{0, 1});
    CHECK(to_string(InfeasibleReason::user_condition_K) == "user_condition_K");
}

TEST_CASE("activeness and rate pairs on random instances") {
    RandomStream rng(21);
    for (int t = 0; t < 300; ++t) {
        const std::size_t k = 1 + t % 5;
        const auto inst = oracle::random_min_power_instance(rng, k, 1e-3, 1e3);
        const auto& s = inst.solution;
        double total = 0.0;
        for (std::size_t m = 0; m < k; ++m) {
            total += s.allocation.power(m);
            CHECK(std::abs(secrecy_outage_closed_form(inst.channel, s.allocation,
                                                      inst.req.qos_rate, m) -
                           inst.req.outage_budget) < 1e-9);
            CHECK(s.rate_pairs[m].confidential_rate == inst.req.qos_rate);
            CHECK(s.rate_pairs[m].codeword_rate >= s.rate_pairs[m].confidential_rate);
        }
        CHECK(s.total_power == doctest::Approx(total).epsilon(1e-14));
    }
}

TEST_CASE("powers grow with the QoS rate and diverge at the limit") {
    RandomStream rng(22);
    for (int t = 0; t < 50; ++t) {
        const auto inst = oracle::random_positive_rate_instance(rng, 1 + t % 4);
        const double qmax = max_feasible_qos(inst.channel, inst.eps);
        REQUIRE(qmax > 0.0);
        std::optional<PowerMinSolution> prev;
        double half = 0.0;
        for (int i = 1; i <= 40; ++i) {
            const auto o = solve_min_power(inst.channel, {qmax * i / 41.0, inst.eps});
            REQUIRE(is_feasible(o));
            const auto& s = solution(o);
            if (prev)
                for (std::size_t m = 0; m < s.allocation.num_users(); ++m)
                    CHECK(s.allocation.power(m) > prev->allocation.power(m));
            if (i == 20)
                half = s.total_power;
            prev = s;
        }
        const double near = solution(solve_min_power(inst.channel, {qmax * (1 - 1e-6), inst.eps}))
                                .total_power;
        CHECK(near > 1e3 * half);
        CHECK_FALSE(is_feasible(solve_min_power(inst.channel, {qmax * (1 + 1e-6), inst.eps})));
    }
    CHECK(max_feasible_qos(ChannelRealization({0.5, 3.0}, 1.0), oracle::kEpsPhiOne) == 0.0);
}

TEST_CASE("user selection") {
    const SecrecyRequirement req{1.0, oracle::kEpsPhiOne};
    const auto sel = select_users(ChannelRealization({1.0, 3.0}, 1.0), req);
    CHECK(sel.users == std::vector<std::size_t>{1});
    REQUIRE(sel.solution);
    CHECK(sel.solution->total_power == doctest::Approx(1.0 / (3.0 - 2.0)));

    const auto none = select_users(ChannelRealization({1.0, 2.0}, 1.0), req);
    CHECK(none.suspended());
    CHECK_FALSE(none.solution);

    const auto single = select_users(ChannelRealization({10.0}, 1.0), req);
    CHECK(single.users == std::vector<std::size_t>{0});
    CHECK(single.solution->total_power == doctest::Approx(0.125));

    // The weakest admissible user would break the recursion and is left out.
    const auto greedy = select_users(ChannelRealization({2.05, 40.0, 60.0}, 1.0), req);
    CHECK(greedy.users == std::vector<std::size_t>{1, 2});
    REQUIRE(greedy.solution);
    CHECK(is_feasible(solve_min_power(ChannelRealization({40.0, 60.0}, 1.0), req)));
}

TEST_CASE("grid oracle") {
    const auto c = oracle::worked_channel();
    const SecrecyRequirement req{1.0, oracle::kEpsPhiOne};
    const double gap = verify_optimality_bruteforce(c, req, 1e-3, 2.0);
    CHECK(gap >= -1e-6);
    CHECK(gap <= 5e-3);

    const ChannelRealization one({10.0}, 1.0);
    const double gap1 = verify_optimality_bruteforce(one, req, 1e-4);
    CHECK(gap1 >= -1e-9);
    CHECK(gap1 * 0.125 <= 1e-4 + 1e-12);

    const ChannelRealization bad({2.05, 40.0}, 1.0);
    CHECK_THROWS_AS(verify_optimality_bruteforce(bad, req, 1e-2), std::domain_error);
    CHECK_FALSE(bruteforce_min_power(bad, req, 1e-2, 5.0));

    RandomStream rng(23);
    for (int t = 0; t < 10; ++t) {
        const auto inst = oracle::random_min_power_instance(rng, 3, 0.05, 0.5);
        CHECK(verify_optimality_bruteforce(inst.channel, inst.req, 5e-3) >= -1e-6);
    }
}
