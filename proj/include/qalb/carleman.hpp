#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "classical.hpp"

namespace qalb {

struct LogisticParams {
    double a = 1.0;
    double b = 1.0;
    double f0 = 0.01;

    double K() const { return a / b; }
    double R() const { return b / a; }
};

// df/dt = -a f + b f^2
inline double logistic_exact(const LogisticParams& p, double t)
{
    const double e = std::exp(-p.a * t);
    const double den = 1.0 - (p.f0 / p.K()) * (1.0 - e);
    if (!(den > 0.0))
        throw error(errc::singular_time, "logistic solution is singular before t=" + std::to_string(t) +
                                             " (a*t_sing ~ K/f0 = " + std::to_string(p.K() / p.f0) + ")");
    return p.f0 * e / den;
}

// a t_sing = -ln(1 - K/f0) for f0 > K; infinity otherwise.
inline double logistic_singular_time(const LogisticParams& p)
{
    if (p.f0 <= p.K()) return INFINITY;
    return -std::log(1.0 - p.K() / p.f0) / p.a;
}

using Exponent = std::vector<int>;

struct PolyTerm {
    double coeff;
    Exponent exps;
};

// One polynomial per variable: dx_j/dt = Omega_j(x).
using PolySystem = std::vector<std::vector<PolyTerm>>;

inline int degree(const Exponent& e)
{
    int d = 0;
    for (int k : e) d += k;
    return d;
}

inline double eval_monomial(const Exponent& e, const std::vector<double>& x)
{
    double v = 1.0;
    for (size_t j = 0; j < e.size(); ++j)
        for (int k = 0; k < e[j]; ++k) v *= x[j];
    return v;
}

inline double eval_poly(const std::vector<PolyTerm>& p, const std::vector<double>& x)
{
    double s = 0.0;
    for (auto& t : p) s += t.coeff * eval_monomial(t.exps, x);
    return s;
}

struct CarlemanSystem {
    int order = 0;
    int nvars = 0;                 // number of original variables
    std::vector<Exponent> vars;    // graded lex, degree 1 first
    Eigen::MatrixXd C;             // dV/dt = C V + b
    Eigen::VectorXd b;             // constant source (nonzero only if Omega has constants)

    std::map<Exponent, int> index() const
    {
        std::map<Exponent, int> m;
        for (size_t i = 0; i < vars.size(); ++i) m[vars[i]] = static_cast<int>(i);
        return m;
    }

    Eigen::VectorXd lift(const std::vector<double>& x) const
    {
        Eigen::VectorXd v(vars.size());
        for (size_t i = 0; i < vars.size(); ++i) v[i] = eval_monomial(vars[i], x);
        return v;
    }
};

// All exponent vectors of total degree d over n variables, lexicographically
// descending so that x_0 comes first.
inline std::vector<Exponent> monomials_of_degree(int n, int d)
{
    std::vector<Exponent> out;
    Exponent e(n, 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == n - 1) {
            e[j] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[j] = k;
            rec(j + 1, left - k);
        }
    };
    if (n > 0) rec(0, d);
    return out;
}

inline std::vector<Exponent> carleman_variables(int n, int order)
{
    std::vector<Exponent> v;
    for (int d = 1; d <= order; ++d) {
        auto m = monomials_of_degree(n, d);
        v.insert(v.end(), m.begin(), m.end());
    }
    return v;
}

inline CarlemanSystem linearize(const PolySystem& omega, int order)
{
    const int n = static_cast<int>(omega.size());
    int maxdeg = 0;
    for (auto& p : omega)
        for (auto& t : p) maxdeg = std::max(maxdeg, degree(t.exps));
    if (n > 9 || order > 4 || maxdeg > 3)
        throw error(errc::too_large, "linearize guard: Q<=9, order<=4, degree<=3");

    CarlemanSystem s;
    s.order = order;
    s.nvars = n;
    s.vars = carleman_variables(n, order);
    const auto idx = s.index();
    const int m = static_cast<int>(s.vars.size());
    s.C = Eigen::MatrixXd::Zero(m, m);
    s.b = Eigen::VectorXd::Zero(m);

    for (int r = 0; r < m; ++r) {
        const Exponent& e = s.vars[r];
        for (int j = 0; j < n; ++j) {
            if (e[j] == 0) continue;
            for (auto& t : omega[j]) {
                Exponent g = e;
                g[j] -= 1;
                for (int k = 0; k < n; ++k) g[k] += t.exps[k];
                const double c = e[j] * t.coeff;
                const int dg = degree(g);
                if (dg == 0)
                    s.b[r] += c;
                else if (dg <= order)
                    s.C(r, idx.at(g)) += c;
            }
        }
    }
    return s;
}

// df_k/dt = -k (a f_k - b f_{k+1}), f_{kmax+1} = 0, f_k(0) = f0^k
inline CarlemanSystem logistic_carleman_chain(const LogisticParams& p, int kmax)
{
    if (kmax < 1) throw error(errc::out_of_range, "kmax must be >= 1");
    CarlemanSystem s;
    s.order = kmax;
    s.nvars = 1;
    s.vars = carleman_variables(1, kmax);
    s.C = Eigen::MatrixXd::Zero(kmax, kmax);
    s.b = Eigen::VectorXd::Zero(kmax);
    for (int k = 1; k <= kmax; ++k) {
        s.C(k - 1, k - 1) = -k * p.a;
        if (k < kmax) s.C(k - 1, k) = k * p.b;
    }
    return s;
}

inline PolySystem logistic_poly(const LogisticParams& p)
{
    return {{{-p.a, {1}}, {p.b, {2}}}};
}

enum class stepper { euler, exact };

// Returns V(t_n) for n = 0..steps.
inline std::vector<Eigen::VectorXd> march(const CarlemanSystem& s, const Eigen::VectorXd& v0, double dt,
                                          int steps, stepper kind = stepper::euler)
{
    std::vector<Eigen::VectorXd> out;
    out.reserve(steps + 1);
    out.push_back(v0);
    const int m = static_cast<int>(v0.size());
    Eigen::MatrixXd P;
    Eigen::VectorXd src;
    if (kind == stepper::exact) {
        // augmented [C b; 0 0] handles the affine part
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, m + 1);
        A.topLeftCorner(m, m) = s.C * dt;
        A.topRightCorner(m, 1) = s.b * dt;
        Eigen::MatrixXd E = A.exp();
        P = E.topLeftCorner(m, m);
        src = E.topRightCorner(m, 1);
    }
    for (int n = 0; n < steps; ++n) {
        const Eigen::VectorXd& v = out.back();
        if (kind == stepper::euler)
            out.push_back(v + dt * (s.C * v + s.b));
        else
            out.push_back(P * v + src);
    }
    return out;
}

struct LogisticCarlemanRun {
    std::vector<double> t;
    std::vector<double> exact;
    std::vector<std::vector<double>> approx; // [order-1][n]
    std::vector<std::vector<double>> abs_err;
};

inline LogisticCarlemanRun logistic_error_curves(const LogisticParams& p, double dt, int steps, int max_order = 4,
                                                 stepper kind = stepper::euler)
{
    LogisticCarlemanRun r;
    for (int n = 0; n <= steps; ++n) {
        r.t.push_back(n * dt);
        r.exact.push_back(logistic_exact(p, n * dt));
    }
    for (int k = 1; k <= max_order; ++k) {
        auto s = logistic_carleman_chain(p, k);
        auto traj = march(s, s.lift({p.f0}), dt, steps, kind);
        std::vector<double> a, e;
        for (int n = 0; n <= steps; ++n) {
            a.push_back(traj[n][0]);
            e.push_back(std::abs(traj[n][0] - r.exact[n]));
        }
        r.approx.push_back(std::move(a));
        r.abs_err.push_back(std::move(e));
    }
    return r;
}

// Homogeneous D1Q3 BGK closed at second order with the invariant (f2 - f1)^2.
// State F = [f0, f1, f2, (f2 - f1)^2]; rho = f0 + f1 + f2 keeps the system linear.
inline Eigen::Matrix4d clb_closed_d1q3_matrix(double omega)
{
    // f_eq as rows over [f0, f1, f2, w]:
    // f0eq = 2/3 rho - w, f1eq = 1/6 rho - 1/2 (f2 - f1) + 1/2 w, f2eq = 1/6 rho + 1/2 (f2 - f1) + 1/2 w
    Eigen::Matrix4d Feq;
    Feq << 2.0 / 3, 2.0 / 3, 2.0 / 3, -1.0,
           1.0 / 6, 1.0 / 6 + 0.5, 1.0 / 6 - 0.5, 0.5,
           1.0 / 6, 1.0 / 6 - 0.5, 1.0 / 6 + 0.5, 0.5,
           0, 0, 0, 0;
    Eigen::Matrix4d I4 = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d M = I4;
    M.topRows(3) -= omega * (I4.topRows(3) - Feq.topRows(3));
    return M;
}

inline std::vector<Eigen::Vector4d> clb_closed_d1q3(const std::vector<double>& f0, double omega, int steps)
{
    const auto M = clb_closed_d1q3_matrix(omega);
    std::vector<Eigen::Vector4d> out;
    out.reserve(steps + 1);
    const double u = f0[2] - f0[1];
    out.emplace_back(f0[0], f0[1], f0[2], u * u);
    for (int n = 0; n < steps; ++n) out.push_back(M * out.back());
    return out;
}

// BGK collision term for D1Q3 as a polynomial system in f (rho = 1 form).
inline PolySystem d1q3_bgk_poly(double tau)
{
    auto m = build_lattice(lattice_name::D1Q3);
    auto t = mode_coupling(m, 1.0);
    PolySystem sys(3);
    for (int i = 0; i < 3; ++i) {
        std::map<Exponent, double> acc;
        Exponent ei(3, 0);
        ei[i] = 1;
        acc[ei] += -1.0 / tau;
        for (int j = 0; j < 3; ++j) {
            Exponent ej(3, 0);
            ej[j] = 1;
            acc[ej] += t.L(i, j) / tau;
            for (int k = 0; k < 3; ++k) {
                Exponent ejk(3, 0);
                ejk[j] += 1;
                ejk[k] += 1;
                acc[ejk] += t.Qt(i, j, k) / tau;
            }
        }
        for (auto& [e, c] : acc)
            if (c != 0.0) sys[i].push_back({c, e});
    }
    return sys;
}

} // namespace qalb
