#include <gtest/gtest.h>

#include "qalb/engine.hpp"

using namespace qalb;

namespace {
CollisionSetup setup(int qc, lattice_name n = lattice_name::D1Q3, double tau = 1.0)
{
    CollisionSetup s;
    s.model = build_lattice(n);
    s.cfg = FockConfig::from_qubits(qc);
    s.tau = tau;
    return s;
}
}

TEST(Omega, ActsOnEncodedStatesLikeTheClassicalTerm)
{
    // Omega_i is a polynomial in q; on a product of exact q-eigenvectors it
    // returns the classical collision term away from the truncation edge.
    auto s = setup(3);
    const std::vector<double> f{0.6, 0.1, 0.3};
    std::vector<CVec> parts;
    for (double v : f) parts.push_back(encode_value(v, s.cfg));
    CVec psi = tensor(parts);
    auto ops = mode_operators(s);
    auto om = omega_operators(s, ops);
    auto feq = equilibrium(s.model, f);
    for (int i = 0; i < 3; ++i) {
        CVec r = om[i] * psi;
        const double expect = -(f[i] - feq[i]) / s.tau;
        EXPECT_NEAR((r(0) / psi(0)).real(), expect, 1e-12);
    }
}

TEST(Hamiltonian, NonHermitianAndHermitized)
{
    auto s = setup(2);
    CMat H = hamiltonian_nonhermitian(s);
    EXPECT_EQ(H.rows(), 64);
    EXPECT_GT((H - H.adjoint()).norm(), 1e-3);
    auto h = hamiltonian_hermitized(s);
    EXPECT_LE((h.H - h.H.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_EQ(h.divergence, -2.0);
}

TEST(Hamiltonian, DivergenceConstants)
{
    EXPECT_EQ(divergence_constant(build_lattice(lattice_name::D1Q3), 1.0), -2.0);
    EXPECT_EQ(divergence_constant(build_lattice(lattice_name::D2Q9), 2.0), -3.5);
    EXPECT_EQ(divergence_constant(build_lattice(lattice_name::D3Q27), 1.0), -24.0);
}

TEST(Hamiltonian, Guards)
{
    auto s = setup(2, lattice_name::D2Q9);
    EXPECT_THROW(s.validate(), error);
    auto t = setup(2);
    t.tau = 4e-4;
    EXPECT_THROW(t.validate(), error);
    EXPECT_THROW(omega_operator(setup(1), 3), error);
}

TEST(Dissipation, Factor)
{
    EXPECT_EQ(dissipation_factor(0, 1e-3, 1.0, 3, 1), 1.0);
    EXPECT_NEAR(dissipation_factor(1, 1.0, 1.0, 3, 1), std::exp(1.0), 1e-15);
}

TEST(Expm, KnownCases)
{
    EXPECT_LE((expm(CMat::Zero(4, 4)) - CMat::Identity(4, 4)).norm(), 0.0);
    const double th = 0.7;
    CMat X(2, 2);
    X << 0, 1, 1, 0;
    CMat e = expm(cplx(0, th) * X);
    CMat ref = std::cos(th) * CMat::Identity(2, 2) + cplx(0, std::sin(th)) * X;
    EXPECT_LE((e - ref).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(expm(CMat::Zero(2, 3)), error);
}

TEST(Expm, UnitaryForAntiHermitian)
{
    CMat R = CMat::Random(64, 64);
    CMat A = R - R.adjoint();
    CMat U = expm(A);
    EXPECT_LE((U * U.adjoint() - CMat::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Expmv, AgreesWithDense)
{
    auto s = setup(2);
    for (method m : {method::nonhermitian, method::hermitized}) {
        SpMat A = step_generator(s, m);
        CMat U = step_propagator(s, m);
        CVec v = CVec::Random(64);
        EXPECT_LE((expmv(A, v) - U * v).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(RelativeError, Basics)
{
    auto r = relative_error({{1.2, 2.4}}, {{1.0, 2.0}});
    EXPECT_NEAR(r.values[0][0], 0.2, 1e-15);
    EXPECT_NEAR(r.values[0][1], 0.2, 1e-15);
    auto z = relative_error({{0.0, 1.0}}, {{0.0, 1.0}});
    EXPECT_TRUE(std::isnan(z.values[0][0]));
    EXPECT_EQ(z.division_by_zero, 1);
    EXPECT_THROW(relative_error({{1.0}}, {}), error);
}

// stationary up to the truncation edge leaking back into the decoded levels
TEST(Evolve, EquilibriumStaysPut)
{
    auto s = setup(3);
    auto m = build_lattice(lattice_name::D1Q3);
    std::vector<double> f{m.w(0), m.w(1), m.w(2)};
    auto r = evolve_quantum_0d(s, f, 50, method::hermitized);
    for (auto& d : r.decoded)
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(d[i], f[i], 1e-3);
}

TEST(Evolve, HermitizedPreservesNormAndMethodsAgreeAtStart)
{
    auto s = setup(2);
    const std::vector<double> f0{0.6, 0.1, 0.3};
    auto h = evolve_quantum_0d(s, f0, 100, method::hermitized);
    auto n = evolve_quantum_0d(s, f0, 100, method::nonhermitian);
    for (double v : h.norm) EXPECT_NEAR(v, 1.0, 1e-9);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(h.decoded[0][i], n.decoded[0][i]);
    auto fine = evolve_quantum_0d(setup(3), f0, 1, method::nonhermitian);
    for (int i = 0; i < 3; ++i) EXPECT_LT(fine.relerr[1][i], 1e-6);
}

TEST(Evolve, InputValidation)
{
    auto s = setup(1);
    EXPECT_THROW(evolve_quantum_0d(s, {0.5, 0.5}, 1, method::hermitized), error);
    EXPECT_THROW(evolve_quantum_0d(s, {0.5, 0.2, 0.2}, 1, method::hermitized), error);
}
