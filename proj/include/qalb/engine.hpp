#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "classical.hpp"
#include "fock.hpp"

namespace qalb {

inline constexpr long expm_dim_guard = 4096;

struct CollisionSetup {
    LatticeModel model = build_lattice(lattice_name::D1Q3);
    FockConfig cfg = FockConfig::from_qubits(2);
    double tau = 1.0;
    double dt = 1e-3;

    int modes() const { return model.Q; }
    int total_qubits() const { return model.Q * cfg.qc; }
    long dim() const
    {
        long d = 1;
        for (int k = 0; k < model.Q; ++k) d *= cfg.dim();
        return d;
    }
    void validate() const
    {
        check_tau(tau, dt);
        if (total_qubits() > 12)
            throw error(errc::too_large, "collision register of " + std::to_string(total_qubits()) +
                                             " qubits exceeds the dense guard (dim " + std::to_string(expm_dim_guard) + ")");
    }
};

struct ModeOperators {
    std::vector<SpMat> q, p;
};

inline ModeOperators mode_operators(const CollisionSetup& s)
{
    auto qp = position_momentum(s.cfg);
    ModeOperators m;
    for (int i = 0; i < s.modes(); ++i) {
        m.q.push_back(embed(qp.q, i, s.modes()));
        m.p.push_back(embed(qp.p, i, s.modes()));
    }
    return m;
}

// Omega_i(q) = -(1/tau) (q_i - w_i (I + 3 c_i.U + 9/2 (c_i.U)^2 - 3/2 U.U)),  U = sum_j c_j q_j
inline std::vector<SpMat> omega_operators(const CollisionSetup& s, const ModeOperators& ops)
{
    s.validate();
    const auto& m = s.model;
    const long dim = s.dim();
    SpMat I(dim, dim);
    I.setIdentity();
    std::vector<SpMat> U(m.D, SpMat(dim, dim));
    for (int d = 0; d < m.D; ++d)
        for (int j = 0; j < m.Q; ++j)
            if (m.c[j][d] != 0) U[d] += static_cast<double>(m.c[j][d]) * ops.q[j];
    SpMat UU(dim, dim);
    for (int d = 0; d < m.D; ++d) UU += U[d] * U[d];

    std::vector<SpMat> out;
    for (int i = 0; i < m.Q; ++i) {
        SpMat cu(dim, dim);
        for (int d = 0; d < m.D; ++d)
            if (m.c[i][d] != 0) cu += static_cast<double>(m.c[i][d]) * U[d];
        SpMat feq = m.w(i) * (I + 3.0 * cu + 4.5 * SpMat(cu * cu) - 1.5 * UU);
        SpMat om = (-1.0 / s.tau) * (ops.q[i] - feq);
        om.prune(cplx(0.0));
        out.push_back(om);
    }
    return out;
}

inline CMat omega_operator(const CollisionSetup& s, int i)
{
    if (i < 0 || i >= s.modes()) throw error(errc::index_out_of_range, "direction index");
    auto ops = mode_operators(s);
    return CMat(omega_operators(s, ops)[i]);
}

// H = sum_i p_i Omega_i
inline SpMat hamiltonian_nonhermitian_sparse(const CollisionSetup& s)
{
    auto ops = mode_operators(s);
    auto om = omega_operators(s, ops);
    SpMat H(s.dim(), s.dim());
    for (int i = 0; i < s.modes(); ++i) H += ops.p[i] * om[i];
    return H;
}

inline CMat hamiltonian_nonhermitian(const CollisionSetup& s) { return CMat(hamiltonian_nonhermitian_sparse(s)); }

struct HermitizedHamiltonian {
    SpMat H;
    double divergence; // sum_i dOmega_i/dq_i = -(Q - D)/tau
};

// H' = 1/2 sum_i (p_i Omega_i + Omega_i p_i)
inline HermitizedHamiltonian hamiltonian_hermitized_sparse(const CollisionSetup& s)
{
    auto ops = mode_operators(s);
    auto om = omega_operators(s, ops);
    SpMat H(s.dim(), s.dim());
    for (int i = 0; i < s.modes(); ++i) H += 0.5 * (SpMat(ops.p[i] * om[i]) + SpMat(om[i] * ops.p[i]));
    return {H, -(s.model.Q - s.model.D) / s.tau};
}

struct HermitizedDense {
    CMat H;
    double divergence;
};

inline HermitizedDense hamiltonian_hermitized(const CollisionSetup& s)
{
    auto h = hamiltonian_hermitized_sparse(s);
    return {CMat(h.H), h.divergence};
}

inline double divergence_constant(const LatticeModel& m, double tau) { return -(m.Q - m.D) / tau; }

inline double dissipation_factor(int T, double dt, double tau, int Q, int D)
{
    return std::exp(T * dt * (Q - D) / (2.0 * tau));
}

// Pade scaling-and-squaring (Eigen MatrixFunctions). The residual
// ||exp(A) exp(-A) - I|| is checked when dim <= residual_check_dim.
inline CMat expm(const CMat& A, double tol = 1e-9, long residual_check_dim = 1024)
{
    if (A.rows() != A.cols()) throw error(errc::dim_mismatch, "expm of a non-square matrix");
    if (A.rows() > expm_dim_guard) throw error(errc::too_large, "expm dimension above 4096");
    CMat E = A.exp();
    if (!E.allFinite()) throw error(errc::non_finite, "matrix exponential overflowed");
    if (A.rows() <= residual_check_dim) {
        CMat Em = (-A).exp();
        const double r = (E * Em - CMat::Identity(A.rows(), A.cols())).cwiseAbs().maxCoeff();
        if (!(r <= tol)) throw error(errc::non_finite, "expm residual " + std::to_string(r) + " above tolerance");
    }
    return E;
}

// exp(A) v for sparse A: Taylor series on ceil(||A||_1) substeps, each
// summed until two consecutive terms fall below machine precision.
inline CVec expmv(const SpMat& A, const CVec& v, int max_terms = 60)
{
    if (A.rows() != A.cols() || A.cols() != v.size()) throw error(errc::dim_mismatch, "expmv shape mismatch");
    double norm1 = 0.0;
    for (int k = 0; k < A.outerSize(); ++k) {
        double col = 0.0;
        for (SpMat::InnerIterator it(A, k); it; ++it) col += std::abs(it.value());
        norm1 = std::max(norm1, col);
    }
    const int sub = std::max(1, static_cast<int>(std::ceil(norm1)));
    const double eps = std::numeric_limits<double>::epsilon();
    CVec out = v;
    for (int j = 0; j < sub; ++j) {
        CVec term = out, acc = out;
        double prev = term.norm();
        bool done = false;
        for (int k = 1; k <= max_terms && !done; ++k) {
            term = (A * term) / static_cast<double>(sub * k);
            acc += term;
            const double tn = term.norm();
            done = tn + prev <= eps * acc.norm();
            prev = tn;
        }
        if (!done || !acc.allFinite()) throw error(errc::convergence_failure, "expmv Taylor series did not converge");
        out = acc;
    }
    return out;
}

enum class method { nonhermitian, hermitized };

inline std::string to_string(method m) { return m == method::nonhermitian ? "nonhermitian" : "hermitized"; }

struct RelativeError {
    std::vector<std::vector<double>> values; // [t][i], NaN where the classical value is 0
    int division_by_zero = 0;
};

inline RelativeError relative_error(const std::vector<std::vector<double>>& q,
                                    const std::vector<std::vector<double>>& c)
{
    if (q.size() != c.size()) throw error(errc::dim_mismatch, "series lengths differ");
    RelativeError r;
    for (size_t t = 0; t < q.size(); ++t) {
        if (q[t].size() != c[t].size()) throw error(errc::dim_mismatch, "component counts differ");
        std::vector<double> row(q[t].size());
        for (size_t i = 0; i < q[t].size(); ++i) {
            if (c[t][i] == 0.0) {
                row[i] = std::numeric_limits<double>::quiet_NaN();
                ++r.division_by_zero;
            } else {
                row[i] = std::abs(q[t][i] - c[t][i]) / std::abs(c[t][i]);
            }
        }
        r.values.push_back(std::move(row));
    }
    return r;
}

struct EvolutionResult {
    method kind;
    int qc;
    std::vector<double> times;
    std::vector<std::vector<double>> decoded;   // [t][i]
    std::vector<double> imag_residual;          // max |Im| of the decode ratios per step
    std::vector<double> norm;                   // raw statevector norm
    std::vector<double> corrected_norm;         // norm times the dissipation factor (hermitized)
    std::vector<std::vector<double>> classical; // Euler reference
    std::vector<std::vector<double>> relerr;
    std::vector<double> max_relerr;
    bool diverged = false;
    int diverged_step = -1;

    double mass(size_t t) const
    {
        double s = 0.0;
        for (double v : decoded[t]) s += v;
        return s;
    }
};

struct EvolveOptions {
    encoding enc = encoding::hermite;
    double divergence_threshold = 1.0; // max relative error that flags divergence
    long dense_dim_limit = 1024;       // above this, steps use expmv instead of a dense propagator
};

inline SpMat step_generator(const CollisionSetup& s, method m)
{
    s.validate();
    SpMat H = m == method::nonhermitian ? hamiltonian_nonhermitian_sparse(s) : hamiltonian_hermitized_sparse(s).H;
    return cplx(0, -s.dt) * H;
}

inline CMat step_propagator(const CollisionSetup& s, method m) { return expm(CMat(step_generator(s, m))); }

inline EvolutionResult evolve_quantum_0d(const CollisionSetup& s, const std::vector<double>& f0, int steps, method m,
                                         const EvolveOptions& opt = {}, const CMat* propagator = nullptr)
{
    s.validate();
    if (static_cast<int>(f0.size()) != s.modes()) throw error(errc::dim_mismatch, "f0 has wrong length");
    double sum = 0.0;
    for (double v : f0) {
        if (!(std::abs(v) <= 1.0)) throw error(errc::out_of_range, "|f0_i| must be <= 1");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw error(errc::out_of_range, "f0 must sum to 1");

    const int Q = s.modes();
    const int d = s.cfg.dim();
    const bool dense = propagator || s.dim() <= opt.dense_dim_limit;
    CMat Uown;
    SpMat A;
    if (!propagator && dense) Uown = step_propagator(s, m);
    if (!dense) A = step_generator(s, m);
    const CMat& U = propagator ? *propagator : Uown;

    std::vector<CVec> parts;
    for (double v : f0) parts.push_back(encode_value(v, s.cfg, opt.enc));
    CVec psi = tensor(parts);

    EvolutionResult r;
    r.kind = m;
    r.qc = s.cfg.qc;
    r.classical = evolve_0d(s.model, f0, s.tau, s.dt, steps);

    for (int t = 0; t <= steps; ++t) {
        if (t > 0) {
            try {
                psi = dense ? CVec(U * psi) : expmv(A, psi);
            } catch (const error&) {
                psi.setConstant(cplx(std::numeric_limits<double>::quiet_NaN()));
            }
        }
        std::vector<double> dec(Q);
        double imax = 0.0;
        bool finite = psi.allFinite();
        for (int i = 0; i < Q && finite; ++i) {
            try {
                auto dv = decode_mode(psi, i, Q, d, opt.enc);
                dec[i] = dv.value;
                imax = std::max(imax, std::abs(dv.imag_residual));
            } catch (const error&) {
                finite = false;
            }
        }
        if (!finite) std::fill(dec.begin(), dec.end(), std::numeric_limits<double>::quiet_NaN());
        const double nrm = psi.norm();
        r.times.push_back(t * s.dt);
        r.decoded.push_back(dec);
        r.imag_residual.push_back(imax);
        r.norm.push_back(nrm);
        r.corrected_norm.push_back(m == method::hermitized ? nrm * dissipation_factor(t, s.dt, s.tau, s.model.Q, s.model.D)
                                                           : nrm);
        std::vector<double> re(Q);
        double mx = 0.0;
        for (int i = 0; i < Q; ++i) {
            re[i] = std::abs(dec[i] - r.classical[t][i]) / std::abs(r.classical[t][i]);
            mx = std::isfinite(re[i]) ? std::max(mx, re[i]) : std::numeric_limits<double>::infinity();
        }
        r.relerr.push_back(re);
        r.max_relerr.push_back(mx);
        if (!r.diverged && !(mx <= opt.divergence_threshold)) {
            r.diverged = true;
            r.diverged_step = t;
        }
    }
    return r;
}

} // namespace qalb
