#include "fasuav/config.hpp"
#include "fasuav/ee_optimizer.hpp"
#include "fasuav/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace fasuav;

namespace {

EeParams table_ee()
{
    EeParams ee;
    ee.p_c = dbm_to_watts(5.0);
    ee.p_sw = dbm_to_watts(0.0);
    ee.tau_p = 2e-6;
    ee.w_band = 10e6;
    return ee;
}

SearchSpace unit_space()
{
    SearchSpace s;
    s.p_max = 1.0;
    s.p_min = 1e-6;
    return s;
}

}  // namespace

TEST(EnergyEfficiency, WorkedExample)
{
    const EeParams ee = table_ee();
    const double energy = 0.1 * 16e-6 + ee.p_c * 20e-6 + 1e-3 * 4e-6;
    EXPECT_NEAR(energy, 1.6673e-6, 1e-10);
    EXPECT_NEAR(energy_efficiency(0.0, 0.1, 2, 200, 80, ee), 80.0 / energy, 1e-6);
    EXPECT_NEAR(energy_efficiency(0.0, 0.1, 2, 200, 80, ee), 4.798e7, 0.001e7);
    EXPECT_EQ(energy_efficiency(1.0, 0.1, 2, 200, 80, ee), 0.0);
}

TEST(EnergyEfficiency, CausalityBoundary)
{
    const EeParams ee = table_ee();
    EXPECT_TRUE(causality_ok(9, 200, ee));
    EXPECT_FALSE(causality_ok(10, 200, ee));
    EXPECT_FALSE(causality_ok(11, 200, ee));
    EXPECT_TRUE(causality_ok(24, 500, ee));
    EXPECT_FALSE(causality_ok(25, 500, ee));
    try {
        energy_efficiency(0.0, 0.1, 10, 200, 80, ee);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "causality violated");
    }
}

TEST(EnergyEfficiency, StrictlyDecreasingInBlerAndPower)
{
    const EeParams ee = table_ee();
    for (double p2 = 1e-4; p2 < 10.0; p2 *= 2.0) {
        EXPECT_GT(energy_efficiency(0.01, p2, 3, 300, 80, ee), energy_efficiency(0.02, p2, 3, 300, 80, ee));
        EXPECT_GT(energy_efficiency(0.01, p2, 3, 300, 80, ee), energy_efficiency(0.01, p2 * 1.01, 3, 300, 80, ee));
    }
}

TEST(Bisection, SyntheticExponential)
{
    const double p0 = 0.01;
    SearchSpace space = unit_space();
    space.eps_th = std::exp(-2.0);
    const BisectionResult r = min_power_bisection(space, [&](double p) { return std::exp(-p / p0); });
    ASSERT_TRUE(r.feasible);
    EXPECT_LE(std::fabs(watts_to_dbm(r.p_star) - watts_to_dbm(2.0 * p0)), space.delta_db);
    EXPECT_GE(r.p_star, 2.0 * p0 * (1.0 - 1e-12));
    EXPECT_LE(r.bler, space.eps_th);
    EXPECT_LE(r.midpoint_calls, bisection_call_bound(space));
}

TEST(Bisection, VacuousTargetReturnsMinimumPower)
{
    SearchSpace space = unit_space();
    space.eps_th = 1.0;
    const BisectionResult r = min_power_bisection(space, [](double) { return 1.0; });
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.p_star, space.p_min);
    EXPECT_EQ(r.midpoint_calls, 0);
}

TEST(Bisection, InfeasibleExactlyWhenMaximumPowerMisses)
{
    SearchSpace space = unit_space();
    space.eps_th = 1e-3;
    int calls = 0;
    const BisectionResult r = min_power_bisection(space, [&](double p) {
        ++calls;
        return p >= 1.0 ? 1.0001e-3 : 0.5;
    });
    EXPECT_FALSE(r.feasible);
    EXPECT_EQ(calls, 1);
    EXPECT_NEAR(r.bler, 1.0001e-3, 1e-18);

    const BisectionResult ok = min_power_bisection(space, [](double p) { return p >= 1.0 ? 1e-3 : 0.5; });
    EXPECT_TRUE(ok.feasible);
}

TEST(Bisection, CallBound)
{
    SearchSpace space = unit_space();
    EXPECT_EQ(bisection_call_bound(space), static_cast<int>(std::ceil(std::log2(60.0 / 0.01))));
    for (double threshold_dbm = -29.5; threshold_dbm < 30.0; threshold_dbm += 3.7) {
        const BisectionResult r = min_power_bisection(space, [&](double p) {
            return watts_to_dbm(p) >= threshold_dbm ? 0.0 : 1.0;
        });
        ASSERT_TRUE(r.feasible);
        EXPECT_LE(r.midpoint_calls, bisection_call_bound(space));
        EXPECT_LE(watts_to_dbm(r.p_star) - threshold_dbm, space.delta_db);
        EXPECT_GE(watts_to_dbm(r.p_star), threshold_dbm);
    }
}

TEST(Bisection, DetectsNonMonotoneEvaluator)
{
    SearchSpace space = unit_space();
    space.eps_th = 0.5;
    auto increasing_inside = [](double p) {
        if (p >= 1.0) {
            return 0.0;
        }
        if (p <= 1e-6) {
            return 1.0;
        }
        return 0.1 + 0.8 * (watts_to_dbm(p) + 30.0) / 60.0;
    };
    try {
        min_power_bisection(space, increasing_inside, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("monotonicity violated"), std::string::npos);
    }
}

namespace {

SystemConfig rural()
{
    return preset(Scenario::rural);
}

SearchSpace small_space(const SystemConfig& c)
{
    SearchSpace s = c.search;
    s.l_min = 200;
    s.l_max = 300;
    s.l_step = 100;
    s.z_min = 100;
    s.z_max = 300;
    s.z_step = 100;
    s.n_max = 8;
    return s;
}

}  // namespace

TEST(OptimalPorts, ReliabilityHoldsPostHoc)
{
    const SystemConfig c = rural();
    EeModel model(c);
    const PortsOutcome out = optimal_ports(200, 100.0, c.search, model);
    ASSERT_TRUE(out.feasible);
    EXPECT_LE(model.bler(200, 100.0, out.n_star, out.p2_star), c.search.eps_th);
    ASSERT_EQ(out.profile.size(), 16u);
    for (const PortPoint& p : out.profile) {
        EXPECT_EQ(p.causal, p.ports < 10);
        if (!p.causal) {
            EXPECT_FALSE(p.feasible);
            EXPECT_EQ(p.ee, 0.0);
        }
        if (p.feasible) {
            EXPECT_LE(p.bler, c.search.eps_th);
            EXPECT_LE(p.ee, out.ee);
            const double below = model.bler(200, 100.0, p.ports, p.p2 * std::pow(10.0, -3.0 * c.search.delta_db / 10.0));
            if (p.p2 > c.search.p_min) {
                EXPECT_GT(below, c.search.eps_th);
            }
        }
    }
}

TEST(OptimalPorts, SingletonCausalRangeIsReturned)
{
    SystemConfig c = rural();
    c.ee.tau_p = 15e-6;  // only N = 1 fits in a 20 us block
    EeModel model(c);
    const PortsOutcome out = optimal_ports(200, 100.0, c.search, model);
    ASSERT_TRUE(out.feasible);
    EXPECT_EQ(out.n_star, 1);
}

TEST(OptimalAltitude, SinglePointRange)
{
    const SystemConfig c = rural();
    SearchSpace space = c.search;
    space.z_min = space.z_max = 250.0;
    space.n_max = 4;
    EeModel model(c);
    const AltitudeOutcome out = optimal_altitude(300, space, model);
    ASSERT_TRUE(out.feasible);
    EXPECT_EQ(out.z_star, 250.0);
    ASSERT_EQ(out.profile.size(), 1u);
}

TEST(JointOptimize, DegenerateGridsEqualTheComposedEvaluation)
{
    const SystemConfig c = rural();
    SearchSpace space = c.search;
    space.l_min = space.l_max = 400;
    space.z_min = space.z_max = 150.0;
    space.n_min = space.n_max = 3;
    EeModel model(c);
    const EeOutcome joint = joint_optimize(space, model);

    const BisectionResult b = min_power_bisection(space, model.evaluator(400, 150.0, 3),
                                                  (std::uint64_t{400} << 40) ^ (std::uint64_t{150000} << 8) ^ 3u);
    ASSERT_TRUE(b.feasible);
    ASSERT_TRUE(joint.feasible);
    EXPECT_EQ(joint.l_star, 400);
    EXPECT_EQ(joint.z_star, 150.0);
    EXPECT_EQ(joint.n_star, 3);
    EXPECT_EQ(joint.p2_star, b.p_star);
    EXPECT_DOUBLE_EQ(joint.ee_max, energy_efficiency(model.bler(400, 150.0, 3, b.p_star), b.p_star, 3, 400,
                                                     c.payload_bits, c.ee));
    ASSERT_EQ(joint.surface.size(), 1u);
}

TEST(JointOptimize, InfeasibleReportsTheBindingConstraint)
{
    SystemConfig c = rural();
    SearchSpace space = small_space(c);
    space.p_max = dbm_to_watts(-30.0);
    space.p_min = dbm_to_watts(-40.0);
    EeModel model(c);
    EeOutcome out = joint_optimize(space, model);
    EXPECT_FALSE(out.feasible);
    EXPECT_EQ(out.binding.rfind("reliability", 0), 0u);

    c.ee.tau_p = 1.0;
    EeModel blocked(c);
    out = joint_optimize(small_space(c), blocked);
    EXPECT_FALSE(out.feasible);
    EXPECT_EQ(out.binding.rfind("causality", 0), 0u);
}

TEST(JointOptimize, LargerMaximumPowerNeverLowersTheOptimum)
{
    SystemConfig c = preset(Scenario::urban);
    SearchSpace space = small_space(c);
    space.n_max = 4;
    space.p_max = dbm_to_watts(20.0);
    EeModel model(c);
    const EeOutcome low = joint_optimize(space, model);
    space.p_max = dbm_to_watts(40.0);
    const EeOutcome high = joint_optimize(space, model);
    EXPECT_GE(high.ee_max, low.ee_max);
    EXPECT_TRUE(high.feasible);
}

TEST(JointOptimize, AuditOfRandomTuples)
{
    const SystemConfig c = rural();
    const SearchSpace space = small_space(c);
    EeModel model(c);
    const EeOutcome best = joint_optimize(space, model);
    ASSERT_TRUE(best.feasible);
    EXPECT_LE(model.bler(best.l_star, best.z_star, best.n_star, best.p2_star), space.eps_th);
    EXPECT_TRUE(causality_ok(best.n_star, best.l_star, c.ee));

    const std::vector<int> ls = blocklength_grid(space);
    const std::vector<double> zs = altitude_grid(space);
    std::mt19937_64 rng(42);
    int feasible = 0;
    for (int i = 0; i < 100; ++i) {
        const int l = ls[rng() % ls.size()];
        const double z = zs[rng() % zs.size()];
        const int n = space.n_min + static_cast<int>(rng() % (space.n_max - space.n_min + 1));
        const double p2 = dbm_to_watts(-30.0 + 60.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
        if (!causality_ok(n, l, c.ee)) {
            continue;
        }
        const double bler = model.bler(l, z, n, p2);
        if (bler > space.eps_th) {
            continue;
        }
        ++feasible;
        EXPECT_GE(best.ee_max, energy_efficiency(bler, p2, n, l, c.payload_bits, c.ee));
    }
    EXPECT_GT(feasible, 10);
}
