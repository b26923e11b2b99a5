#include <gtest/gtest.h>

#include <sstream>

#include "qalb/streaming.hpp"

using namespace qalb;

TEST(Increment, WrapAndCarries)
{
    auto p = circuit_permutation(3, increment_circuit(3, +1));
    EXPECT_EQ(p[7], 0);
    EXPECT_EQ(p[3], 4);
    for (long x = 0; x < 8; ++x) EXPECT_EQ(p[x], (x + 1) % 8);
    auto m = circuit_permutation(3, increment_circuit(3, -1));
    for (long x = 0; x < 8; ++x) EXPECT_EQ(m[p[x]], x);
}

TEST(Increment, StepTable)
{
    auto t = increment_table(3, +1);
    ASSERT_EQ(t.size(), 8u);
    EXPECT_EQ(t[7], (std::vector<long>{7, 3, 1, 0}));
    EXPECT_EQ(t[3], (std::vector<long>{3, 7, 5, 4}));
    EXPECT_THROW(increment_circuit(0, 1), error);
    EXPECT_THROW(increment_circuit(3, 2), error);
}

TEST(Increment, UniformSuperpositionInvariant)
{
    CVec u = CVec::Constant(16, 0.25);
    CVec v = apply_circuit(u, 4, increment_circuit(4, 1));
    EXPECT_EQ((u - v).norm(), 0.0);
}

TEST(Directions, D2Q9Codes)
{
    auto m = build_lattice(lattice_name::D2Q9);
    auto t = direction_table(m);
    for (int i = 0; i < 9; ++i) {
        if (compass_name(m.c[i]) == "East") EXPECT_EQ(t[i].joined(), "1110");
        if (compass_name(m.c[i]) == "Southwest") EXPECT_EQ(t[i].joined(), "0101");
        if (compass_name(m.c[i]) == "Rest") EXPECT_EQ(t[i].joined(), "1010");
    }
}

TEST(Layout, RejectsNonPowerOfTwo)
{
    EXPECT_THROW(RegisterLayout::make({6}), error);
    auto l = RegisterLayout::make({4, 4});
    EXPECT_EQ(l.nqubits(), 8);
    const long idx = l.basis_index(0, "0110", {1, 3});
    EXPECT_EQ(l.code_of(idx), "0110");
    EXPECT_EQ(l.position_of(idx), (std::vector<int>{1, 3}));
}

TEST(ControlledStream, WestComponentMovesLeft)
{
    auto l = RegisterLayout::make({4, 4});
    auto m = build_lattice(lattice_name::D2Q9);
    auto table = direction_table(m);
    for (int i = 0; i < 9; ++i) {
        CVec psi = CVec::Zero(1L << l.nqubits());
        psi(l.basis_index(0, table[i].joined(), {1, 3})) = 1.0;
        CVec out = controlled_stream(psi, l, 0, -1);
        long where = 0;
        out.cwiseAbs().maxCoeff(&where);
        const int expect_x = m.c[i][0] == -1 ? 0 : 1;
        EXPECT_EQ(l.position_of(where), (std::vector<int>{expect_x, 3})) << compass_name(m.c[i]);
    }
}

TEST(ControlledStream, PeriodEqualsSites)
{
    auto l = RegisterLayout::make({8});
    CVec psi = CVec::Random(1L << l.nqubits());
    for (int sign : {1, -1}) {
        CVec out = psi;
        for (int k = 0; k < 8; ++k) {
            out = controlled_stream(out, l, 0, sign);
            if (k < 7) EXPECT_GT((out - psi).norm(), 0.0);
        }
        EXPECT_EQ((out - psi).norm(), 0.0);
    }
}

TEST(Equivalence, ExhaustiveSweeps)
{
    auto a = equivalence_check({8}, build_lattice(lattice_name::D1Q3));
    EXPECT_TRUE(a.all());
    EXPECT_EQ(a.cases, 24);
    auto b = equivalence_check({4, 4}, build_lattice(lattice_name::D2Q9));
    EXPECT_TRUE(b.all());
    EXPECT_EQ(b.cases, 144);
    auto c = equivalence_check({2, 4}, build_lattice(lattice_name::D2Q9));
    EXPECT_TRUE(c.all());
}

TEST(Circuit, TextDump)
{
    std::ostringstream os;
    dump_circuit(os, increment_circuit(2, 1));
    EXPECT_EQ(os.str(), "X 0 | controls: (1,1)\nX 1 | controls:\n");
}
