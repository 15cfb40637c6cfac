#include "fasuav/config.hpp"
#include "fasuav/pipeline.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fasuav;

namespace {

struct Fixture {
    SystemConfig config;
    CorrelationModel corr;
    FblParams fbl;
};

Fixture setup(Scenario scenario)
{
    Fixture s{preset(scenario), {}, {}};
    s.corr = make_correlation(s.config.fas, s.config.rank_tol);
    s.fbl = derive_fbl(s.config.payload_bits, s.config.blocklength);
    return s;
}

}  // namespace

TEST(Pipeline, CachedPipelineMatchesDirectEvaluation)
{
    for (Scenario sc : {Scenario::rural, Scenario::urban}) {
        Fixture s = setup(sc);
        const AnalyticPipeline pipeline(s.config, s.corr);
        for (double p2_dbm : {-10.0, 0.0, 10.0, 20.0}) {
            s.config.radio.p2 = dbm_to_watts(p2_dbm);
            const double direct = average_bler(s.config, s.corr, s.fbl);
            EXPECT_NEAR(pipeline.overall(s.config.radio.p2), direct, 1e-14 + 1e-12 * direct);
            const TrajectoryQuadrature& q = pipeline.quadrature();
            for (std::size_t k = 0; k < q.headings.size(); k += 7) {
                const HeadingBler a = pipeline.at_node(k, s.config.radio.p2);
                const HeadingBler b = heading_bler(s.config, s.corr, s.fbl, q.headings[k]);
                EXPECT_NEAR(a.total, b.total, 1e-14 + 1e-12 * b.total);
                EXPECT_NEAR(a.hop1, b.hop1, 1e-15 + 1e-12 * b.hop1);
            }
        }
        EXPECT_NEAR(pipeline.floor(), error_floor(s.config, s.corr, s.fbl), 1e-15);
    }
}

TEST(Pipeline, OverallNonIncreasingInPowerAndAboveFloor)
{
    for (Scenario sc : {Scenario::rural, Scenario::urban}) {
        Fixture s = setup(sc);
        const AnalyticPipeline pipeline(s.config, s.corr);
        double previous = 1.0;
        for (double p2_dbm = -30.0; p2_dbm <= 40.0; p2_dbm += 1.0) {
            const double v = pipeline.overall(dbm_to_watts(p2_dbm));
            EXPECT_LE(v, previous);
            EXPECT_GE(v, pipeline.floor() * (1.0 - 1e-12));
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
            previous = v;
        }
    }
}

TEST(ErrorFloor, IndependentOfPowerAndFasParameters)
{
    for (Scenario sc : {Scenario::rural, Scenario::urban}) {
        Fixture s = setup(sc);
        const double base = error_floor(s.config, s.corr, s.fbl);
        ASSERT_GT(base, 0.0);

        SystemConfig c = s.config;
        c.radio.p2 *= 1000.0;
        EXPECT_LE(std::fabs(error_floor(c, s.corr, s.fbl) - base) / base, 1e-12);

        c = s.config;
        c.fas.ports = 8;
        EXPECT_LE(std::fabs(error_floor(c, make_correlation(c.fas), s.fbl) - base) / base, 1e-12);

        c = s.config;
        c.fas.aperture = 3.0;
        EXPECT_LE(std::fabs(error_floor(c, make_correlation(c.fas), s.fbl) - base) / base, 1e-12);
    }
}

TEST(ErrorFloor, VanishesWithAPerfectFirstHop)
{
    Fixture s = setup(Scenario::rural);
    double previous = 1.0;
    for (double p1 : {1e-3, 1e-1, 1e1, 1e3, 1e6, 1e9}) {
        s.config.radio.p1 = p1;
        const double floor = error_floor(s.config, s.corr, s.fbl);
        EXPECT_LT(floor, previous) << p1;
        previous = floor;
    }
    EXPECT_LT(previous, 1e-60);
    s.config.radio.p1 = INFINITY;
    EXPECT_EQ(error_floor(s.config, s.corr, s.fbl), 0.0);
}

TEST(ErrorFloor, IsTheLimitOfTheEndToEndBler)
{
    for (Scenario sc : {Scenario::rural, Scenario::urban}) {
        Fixture s = setup(sc);
        s.config.radio.p2 = s.config.search.p_max * 1e6;
        const double floor = error_floor(s.config, s.corr, s.fbl);
        const double full = average_bler(s.config, s.corr, s.fbl);
        EXPECT_LE(std::fabs(full - floor) / floor, 0.01) << to_string(sc);
    }
}

TEST(ErrorFloor, UrbanAtLeastRuralOnTheSameGeometry)
{
    Fixture rural = setup(Scenario::rural);
    Fixture urban = setup(Scenario::urban);
    urban.config.placement = rural.config.placement;
    urban.config.radio = rural.config.radio;
    urban.config.urban.m_los = rural.config.m1;
    urban.config.urban.m_nlos = rural.config.m1;
    EXPECT_GE(error_floor(urban.config, urban.corr, urban.fbl), error_floor(rural.config, rural.corr, rural.fbl));

    // and with the urban shapes left as they are
    Fixture urban2 = setup(Scenario::urban);
    urban2.config.placement = rural.config.placement;
    urban2.config.radio = rural.config.radio;
    EXPECT_GE(error_floor(urban2.config, urban2.corr, urban2.fbl), error_floor(rural.config, rural.corr, rural.fbl));
}

TEST(Pipeline, AsymptoticFormIsClampedAndTracksAtHighPower)
{
    Fixture s = setup(Scenario::rural);
    const AnalyticPipeline pipeline(s.config, s.corr);
    EXPECT_LE(pipeline.overall_asymptotic(dbm_to_watts(-60.0)), 1.0);
    const double p2 = dbm_to_watts(25.0);
    const double exact = pipeline.overall(p2);
    const double asym = pipeline.overall_asymptotic(p2);
    EXPECT_NEAR(asym, exact, 0.5 * exact);
}
