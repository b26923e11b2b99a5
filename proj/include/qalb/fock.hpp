#pragma once

#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "common.hpp"

namespace qalb {

struct FockConfig {
    int qc = 2;
    int N = 3;

    static FockConfig from_qubits(int qc)
    {
        if (qc < 1 || qc > 12) throw error(errc::out_of_range, "qc must lie in [1,12]");
        return {qc, (1 << qc) - 1};
    }
    int dim() const { return N + 1; }
};

// a|n> = sqrt(n)|n-1>: sqrt(1..N) on the first superdiagonal.
inline CMat lowering(const FockConfig& cfg)
{
    CMat a = CMat::Zero(cfg.dim(), cfg.dim());
    for (int n = 1; n <= cfg.N; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

struct Ladder {
    CMat a, adag;
};

inline Ladder ladder_matrices(const FockConfig& cfg)
{
    CMat a = lowering(cfg);
    return {a, a.adjoint()};
}

struct PositionMomentum {
    CMat q, p;
};

inline PositionMomentum position_momentum(const FockConfig& cfg)
{
    auto l = ladder_matrices(cfg);
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (l.a + l.adag), cplx(0, s) * (l.adag - l.a)};
}

inline CMat number_operator(const FockConfig& cfg)
{
    CMat n = CMat::Zero(cfg.dim(), cfg.dim());
    for (int k = 0; k <= cfg.N; ++k) n(k, k) = k;
    return n;
}

inline CMat commutator(const CMat& A, const CMat& B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols())
        throw error(errc::dim_mismatch, "commutator of mismatched operators");
    return A * B - B * A;
}

// i (I - (N+1)|N><N|)
inline CMat truncated_commutator_expected(const FockConfig& cfg)
{
    CMat E = CMat::Identity(cfg.dim(), cfg.dim());
    E(cfg.N, cfg.N) -= cfg.N + 1.0;
    return cplx(0, 1) * E;
}

// Embed a single-mode operator into slot `mode` of `nmodes` identical modes.
// Mode 0 is the leftmost Kronecker factor.
inline SpMat embed(const CMat& op, int mode, int nmodes)
{
    const int d = static_cast<int>(op.rows());
    SpMat out(1, 1);
    out.insert(0, 0) = 1.0;
    SpMat I(d, d);
    I.setIdentity();
    SpMat o = op.sparseView();
    for (int k = 0; k < nmodes; ++k) {
        SpMat next = Eigen::kroneckerProduct(out, k == mode ? o : I).eval();
        out = next;
    }
    return out;
}

enum class encoding {
    hermite,     // exact truncated q-eigenvector: H_n(f) / sqrt(2^n n!), physicists' H
    monic,       // He_n(f) / sqrt(2^n n!)
    translation, // exp(-i p f)|0>
};

inline encoding parse_encoding(const std::string& s)
{
    if (s == "hermite") return encoding::hermite;
    if (s == "monic") return encoding::monic;
    if (s == "translation") return encoding::translation;
    throw error(errc::config, "unknown encoding '" + s + "'");
}

inline std::string to_string(encoding e)
{
    switch (e) {
    case encoding::hermite: return "hermite";
    case encoding::monic: return "monic";
    case encoding::translation: return "translation";
    }
    return "?";
}

// <1|psi>/<0|psi> equals f times this factor (leading order for translation).
inline double ratio_factor(encoding e)
{
    return e == encoding::hermite ? std::sqrt(2.0) : 1.0 / std::sqrt(2.0);
}

inline CVec encode_value(double f, const FockConfig& cfg, encoding enc = encoding::hermite)
{
    if (!(std::abs(f) <= 1.0)) throw error(errc::out_of_range, "encoded value must satisfy |f| <= 1");
    const int d = cfg.dim();
    CVec c(d);
    if (enc == encoding::translation) {
        auto qp = position_momentum(cfg);
        CMat U = (cplx(0, -f) * qp.p).exp();
        c = U.col(0);
    } else {
        // c_n = h_n / sqrt(2^n n!) computed directly in scaled form to avoid overflow
        // hermite: c_{n+1} = (sqrt2 f c_n - sqrt(n) c_{n-1}) / sqrt(n+1)
        // monic:   c_{n+1} = (f c_n / sqrt2 - sqrt(n)/2 c_{n-1}) / sqrt(n+1)
        const double x = enc == encoding::hermite ? std::sqrt(2.0) * f : f / std::sqrt(2.0);
        const double g = enc == encoding::hermite ? 1.0 : 0.5;
        c(0) = 1.0;
        if (d > 1) c(1) = x;
        for (int n = 1; n + 1 < d; ++n)
            c(n + 1) = (x * c(n) - g * std::sqrt(static_cast<double>(n)) * c(n - 1)) / std::sqrt(n + 1.0);
    }
    return c / c.norm();
}

struct Decoded {
    double value;
    double imag_residual;
};

inline Decoded decode_value(const cplx& amp0, const cplx& amp1, encoding enc = encoding::hermite)
{
    if (std::abs(amp0) < 1e-300) throw error(errc::ground_amplitude_zero, "<0|psi> vanishes");
    const cplx r = amp1 / amp0 / ratio_factor(enc);
    return {r.real(), r.imag()};
}

inline Decoded decode_value(const CVec& psi, encoding enc = encoding::hermite)
{
    return decode_value(psi(0), psi.size() > 1 ? psi(1) : cplx(0), enc);
}

// Amplitudes <0...0|psi> and <0..1_mode..0|psi> of a product register of
// `nmodes` modes of dimension d.
inline Decoded decode_mode(const CVec& psi, int mode, int nmodes, int d, encoding enc = encoding::hermite)
{
    long stride = 1;
    for (int k = mode + 1; k < nmodes; ++k) stride *= d;
    return decode_value(psi(0), psi(stride), enc);
}

inline CVec tensor(const std::vector<CVec>& parts)
{
    CVec out = CVec::Ones(1);
    for (auto& p : parts) {
        CVec next(out.size() * p.size());
        for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * p.size(), p.size()) = out(i) * p;
        out = std::move(next);
    }
    return out;
}

struct Eigensystem {
    Eigen::VectorXd values; // ascending, eigenvalues of q
    Eigen::MatrixXd vectors; // columns, L2-normalized
};

// Number of eigenvalues of sqrt(2) q = a + a^dag below x (LDL^T inertia).
inline int sturm_count(int N, double x)
{
    int count = 0;
    double d = -x;
    if (d < 0) ++count;
    for (int j = 1; j <= N; ++j) {
        if (d == 0.0) d = 1e-300;
        d = -x - j / d;
        if (d < 0) ++count;
    }
    return count;
}

inline Eigensystem q_eigensystem(const FockConfig& cfg)
{
    const int n = cfg.dim();
    const double bound = 2.0 * std::sqrt(static_cast<double>(cfg.N)) + 1.0;
    if (sturm_count(cfg.N, -bound) != 0 || sturm_count(cfg.N, bound) != n)
        throw error(errc::convergence_failure, "root bracket does not isolate all eigenvalues");
    Eigensystem es;
    es.values.resize(n);
    es.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        double lo = -bound, hi = bound;
        while (hi - lo > 1e-13) {
            const double mid = 0.5 * (lo + hi);
            if (sturm_count(cfg.N, mid) >= k + 1)
                hi = mid;
            else
                lo = mid;
            if (mid == lo && mid == hi) break;
        }
        const double lam = 0.5 * (lo + hi);
        if (k > 0 && !(lam > es.values[k - 1] * std::sqrt(2.0)))
            throw error(errc::convergence_failure, "eigenvalues not separated");
        Eigen::VectorXd v(n);
        v[0] = 1.0;
        if (n > 1) v[1] = lam;
        for (int m = 1; m + 1 < n; ++m) v[m + 1] = (lam * v[m] - std::sqrt(static_cast<double>(m)) * v[m - 1]) / std::sqrt(m + 1.0);
        es.values[k] = lam / std::sqrt(2.0);
        es.vectors.col(k) = v / v.norm();
    }
    return es;
}

struct ZeroVectors {
    CVec occupation_zero;        // |0>
    CVec asymptotic_position_zero; // |N>
};

inline ZeroVectors zero_vectors(const FockConfig& cfg)
{
    ZeroVectors z{CVec::Zero(cfg.dim()), CVec::Zero(cfg.dim())};
    z.occupation_zero(0) = 1.0;
    z.asymptotic_position_zero(cfg.N) = 1.0;
    return z;
}

} // namespace qalb
