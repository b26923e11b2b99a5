#include <gtest/gtest.h>

#include <random>

#include "qalb/carleman.hpp"

using namespace qalb;

TEST(Logistic, ClosedForm)
{
    LogisticParams p{1.0, 0.5, 0.1};
    EXPECT_NEAR(logistic_exact(p, 1.0), 0.037988613290252035, 1e-15);
    LogisticParams fixed{1.0, 0.5, 2.0};
    for (double t : {0.0, 0.5, 3.0}) EXPECT_NEAR(logistic_exact(fixed, t), 2.0, 1e-14);
    LogisticParams decay{2.0, 0.0, 0.3};
    EXPECT_NEAR(logistic_exact(decay, 0.7), 0.3 * std::exp(-1.4), 1e-15);
}

TEST(Logistic, SingularTimeGuard)
{
    LogisticParams p{1.0, 1.0, 2.0};
    const double ts = logistic_singular_time(p);
    EXPECT_NEAR(ts, std::log(2.0), 1e-15);
    EXPECT_NO_THROW(logistic_exact(p, 0.9 * ts));
    EXPECT_THROW(logistic_exact(p, 1.1 * ts), error);
    EXPECT_TRUE(std::isinf(logistic_singular_time({1.0, 1.0, 0.5})));
}

TEST(Linearize, LogisticMatchesChain)
{
    LogisticParams p{1.3, 0.7, 0.05};
    for (int k = 1; k <= 4; ++k) {
        auto a = linearize(logistic_poly(p), k);
        auto b = logistic_carleman_chain(p, k);
        EXPECT_EQ((a.C - b.C).cwiseAbs().maxCoeff(), 0.0);
        EXPECT_EQ(a.b.norm(), 0.0);
    }
}

TEST(Linearize, LinearSystemIsBlockDiagonal)
{
    PolySystem lin = {{{-1.0, {1, 0}}, {2.0, {0, 1}}}, {{0.5, {1, 0}}}};
    auto s = linearize(lin, 3);
    for (size_t r = 0; r < s.vars.size(); ++r)
        for (size_t c = 0; c < s.vars.size(); ++c)
            if (degree(s.vars[r]) != degree(s.vars[c])) EXPECT_EQ(s.C(r, c), 0.0);
}

TEST(Linearize, D1Q3VariableCount)
{
    auto s = linearize(d1q3_bgk_poly(1.0), 2);
    EXPECT_EQ(s.vars.size(), 9u);
    EXPECT_THROW(linearize(PolySystem(10, {{1.0, Exponent(10, 0)}}), 2), error);
}

// The lifted system reproduces the exact derivative of each monomial when
// the polynomial is closed at the given order.
TEST(Linearize, DerivativeOfMonomials)
{
    PolySystem sys = {{{-1.0, {1, 0}}, {0.5, {0, 1}}, {0.2, {0, 0}}}, {{0.3, {1, 0}}, {-2.0, {0, 1}}}};
    auto s = linearize(sys, 2);
    const std::vector<double> x{0.4, -0.7};
    Eigen::VectorXd dv = s.C * s.lift(x) + s.b;
    const double d0 = eval_poly(sys[0], x), d1 = eval_poly(sys[1], x);
    auto idx = s.index();
    EXPECT_NEAR(dv[idx.at({2, 0})], 2 * x[0] * d0, 1e-15);
    EXPECT_NEAR(dv[idx.at({1, 1})], d0 * x[1] + x[0] * d1, 1e-15);
    EXPECT_NEAR(dv[idx.at({0, 1})], d1, 1e-15);
}

TEST(CarlemanCurves, OrderOneIsExponential)
{
    LogisticParams p{1.0, 1.0, 0.01};
    auto r = logistic_error_curves(p, 0.01, 500, 1, stepper::exact);
    for (size_t n = 0; n < r.t.size(); ++n) EXPECT_NEAR(r.approx[0][n], 0.01 * std::exp(-r.t[n]), 1e-12);
}

TEST(CarlemanCurves, ErrorDecreasesWithOrder)
{
    LogisticParams p{1.0, 1.0, 0.01};
    for (auto st : {stepper::euler, stepper::exact}) {
        auto r = logistic_error_curves(p, 0.01, 500, 4, st);
        double prev = INFINITY;
        for (int k = 0; k < 4; ++k) {
            const double m = *std::max_element(r.abs_err[k].begin(), r.abs_err[k].end());
            EXPECT_LT(m, prev) << "order " << k + 1;
            prev = m;
        }
    }
}

TEST(CarlemanCurves, LargerOverlapIsWorse)
{
    LogisticParams lo{1.0, 1.0, 0.01}, hi{1.0, 1.0, 0.5};
    auto a = logistic_error_curves(lo, 0.01, 100, 4);
    auto b = logistic_error_curves(hi, 0.01, 100, 4);
    EXPECT_GE(b.abs_err[3][100], 10 * a.abs_err[3][100]);
}

TEST(ClosedD1Q3, MatchesClassicalEuler)
{
    auto m = build_lattice(lattice_name::D1Q3);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(0.05, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> f{U(rng), U(rng), U(rng)};
        const double s = f[0] + f[1] + f[2];
        for (auto& v : f) v /= s;
        auto lin = clb_closed_d1q3(f, 0.8, 100);
        auto ref = evolve_0d(m, f, 1.0, 0.8, 100);
        for (int t = 0; t <= 100; ++t)
            for (int i = 0; i < 3; ++i) EXPECT_NEAR(lin[t][i], ref[t][i], 1e-13);
    }
}

TEST(ClosedD1Q3, EquilibriumIsFixed)
{
    auto m = build_lattice(lattice_name::D1Q3);
    auto feq = equilibrium(m, {0.6, 0.1, 0.3});
    auto lin = clb_closed_d1q3(feq, 1.3, 20);
    // f_eq of f_eq: u is unchanged, so only rounding moves it
    for (auto& v : lin)
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(v[i], feq[i], 1e-14);
}
