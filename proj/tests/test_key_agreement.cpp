#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "wtc2/errors.hpp"
#include "wtc2/key_agreement.hpp"

using namespace wtc2;

namespace {

const ChannelParams kFig6{1.0, 1.0, 10.0, 10.0, 0.9, 0.9};

ScalarDegradedSource fig6_chain_a()
{
    return reduce_dms(induced_dms_cov(kFig6, {0.9, 0.9}), Chain::A);
}

// Frozen from the first run; cross-checked below against a 10^4-point envelope.
constexpr double kFig6RkAtOneBit = 0.219207022112;

}  // namespace

TEST(ReduceDms, Fig6FullJamChainA)
{
    const ScalarDegradedSource s = fig6_chain_a();
    EXPECT_NEAR(s.var_x, 0.9, 1e-15);
    EXPECT_EQ(s.noise_y, 1.0);
    EXPECT_NEAR(s.eve_gain, std::sqrt(10.0), 1e-15);
    EXPECT_NEAR(s.eve_noise, 10.0, 1e-12);
}

TEST(ReduceDms, NoCoverJamming)
{
    const ScalarDegradedSource s = reduce_dms(induced_dms_cov(kFig6, {0.5, 0.0}), Chain::A);
    EXPECT_EQ(s.eve_noise, 1.0);
}

TEST(ReduceDms, ChainsSwapUnderUserSwap)
{
    const ChannelParams p{1.0, 1.0, 1.5, 1.5, 1.0, 1.0};
    const ScalarDegradedSource a = reduce_dms(induced_dms_cov(p, {0.3, 0.7}), Chain::A);
    const ScalarDegradedSource b = reduce_dms(induced_dms_cov(p, {0.7, 0.3}), Chain::B);
    EXPECT_DOUBLE_EQ(a.var_x, b.var_x);
    EXPECT_DOUBLE_EQ(a.eve_gain, b.eve_gain);
    EXPECT_DOUBLE_EQ(a.eve_noise, b.eve_noise);
}

TEST(ReduceDms, AbsentSourceThrows)
{
    EXPECT_THROW(reduce_dms(induced_dms_cov(kFig6, {0.0, 0.9}), Chain::A), SourceAbsentError);
    EXPECT_THROW(reduce_dms(induced_dms_cov(kFig6, {0.9, 0.0}), Chain::B), SourceAbsentError);
}

TEST(KeyRatePoint, Limits)
{
    const ScalarDegradedSource s = fig6_chain_a();
    const KeyRatePoint far = key_rate_point(s, 1e14);
    EXPECT_NEAR(far.rp, 0.0, 1e-12);
    EXPECT_NEAR(far.rk, 0.0, 1e-12);
    const KeyRatePoint near = key_rate_point(s, 1e-9);
    EXPECT_NEAR(near.rk, unlimited_key_rate(s), 1e-8);
    EXPECT_THROW(key_rate_point(s, 0.0), ParameterError);
    EXPECT_THROW(key_rate_point(s, -1.0), ParameterError);
}

TEST(KeyRatePoint, Fig6ChainALimit)
{
    const ScalarDegradedSource s = fig6_chain_a();
    // I(Y;X) = 1/2 log2(1.9); I(Y;Z) from the 2x2 covariance of (Y, Z).
    const double iyx = 0.5 * std::log2(1.9);
    const double iyz = 0.5 * std::log2(1.9 * 19.0 / (1.9 * 19.0 - 10.0 * 0.81));
    EXPECT_NEAR(unlimited_key_rate(s), iyx - iyz, 1e-12);
    EXPECT_NEAR(unlimited_key_rate(s), 0.2797137, 1e-7);
}

TEST(KeyRatePoint, InvariantUnderEveRescaling)
{
    const ScalarDegradedSource s = fig6_chain_a();
    for (double t : {1e-4, 0.3, 7.0, 1e3}) {
        const KeyRatePoint a = key_rate_point(s, t);
        for (double k : {0.01, 2.0, 1e3}) {
            ScalarDegradedSource r = s;
            r.eve_gain *= k;
            r.eve_noise *= k * k;
            const KeyRatePoint b = key_rate_point(r, t);
            EXPECT_NEAR(a.rp, b.rp, 1e-12);
            EXPECT_NEAR(a.rk, b.rk, 1e-12);
        }
    }
}

TEST(KeyRateCurve, BasicShape)
{
    const ScalarDegradedSource s = fig6_chain_a();
    const KeyRateCurve c = key_rate_curve(s);
    EXPECT_EQ(c.at(0.0), 0.0);
    const std::vector<double> zero{0.0};
    EXPECT_EQ(sample_curve(c, zero).front().rk, 0.0);
    double prev = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double v = c.at(0.05 * i);
        EXPECT_GE(v, prev);
        EXPECT_LE(v, unlimited_key_rate(s) + 1e-12);
        prev = v;
    }
    const std::vector<double> bad{-0.1};
    EXPECT_THROW(sample_curve(c, bad), ParameterError);
}

TEST(KeyRateCurve, Fig6RegressionAtOneBit)
{
    const ScalarDegradedSource s = fig6_chain_a();
    const KeyRateCurve c = key_rate_curve(s);
    std::vector<KeyRatePoint> fine;
    for (int k = 0; k < 10000; ++k) fine.push_back(key_rate_point(s, s.var_x * std::pow(10.0, -6.0 + 12.0 * k / 9999)));
    const KeyRateCurve oracle(fine);
    EXPECT_NEAR(c.at(1.0), oracle.at(1.0), 1e-3);
    EXPECT_LE(c.at(1.0), oracle.at(1.0) + 1e-12);
    EXPECT_NEAR(c.at(1.0), kFig6RkAtOneBit, 1e-9);
}

TEST(KeyRateCurve, SharedBudgetIsOptimal)
{
    const KeyRateCurve c = key_rate_curve(fig6_chain_a());
    for (double budget : {0.0, 0.05, 0.3, 1.0, 4.0, 100.0}) {
        const KeyRatePoint p = c.best_with_shared_budget(budget);
        EXPECT_LE(p.rp + p.rk, budget + 1e-12);
        EXPECT_LE(p.rk, c.at(p.rp) + 1e-12);
        double brute = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double rp = budget * i / 20000;
            brute = std::max(brute, std::min(c.at(rp), budget - rp));
        }
        EXPECT_NEAR(p.rk, brute, 1e-4 * std::max(1.0, budget)) << budget;
        EXPECT_GE(p.rk, brute - 1e-12);
    }
}

TEST(KeyRateCurve, PublicRateInvertsCurve)
{
    const KeyRateCurve c = key_rate_curve(fig6_chain_a());
    for (double rk : {0.01, 0.1, 0.2, 0.27}) {
        const double rp = c.public_rate_for(rk);
        EXPECT_NEAR(c.at(rp), rk, 1e-12);
        EXPECT_LT(c.at(rp * (1 - 1e-6)), rk);
    }
    EXPECT_EQ(c.public_rate_for(10.0), c.breakpoints().back().rp);
}

TEST(KeyRateCurve, EmptySourceIsFlatZero)
{
    const KeyRateCurve c = key_rate_curve({0.0, 1.0, 1.0, 1.0});
    EXPECT_EQ(c.max_key_rate(), 0.0);
    EXPECT_EQ(c.best_with_shared_budget(1.0).rk, 0.0);
}
