#pragma once

#include <cmath>
#include <vector>

#include "lattice.hpp"

namespace qalb {

// Site-major layout: data[site * Q + i]. Site index is row-major over dims
// with the first axis slowest.
struct DistributionField {
    LatticeModel model;
    std::vector<int> dims;
    std::vector<double> data;

    DistributionField(LatticeModel m, std::vector<int> d) : model(std::move(m)), dims(std::move(d))
    {
        if (static_cast<int>(dims.size()) != model.D)
            throw error(errc::dim_mismatch, "grid rank does not match lattice dimension");
        data.assign(static_cast<size_t>(sites()) * model.Q, 0.0);
    }

    int sites() const
    {
        int n = 1;
        for (int d : dims) n *= d;
        return n;
    }
    double& at(int site, int i) { return data[static_cast<size_t>(site) * model.Q + i]; }
    double at(int site, int i) const { return data[static_cast<size_t>(site) * model.Q + i]; }

    std::vector<int> coords(int site) const
    {
        std::vector<int> x(dims.size());
        for (int d = static_cast<int>(dims.size()) - 1; d >= 0; --d) {
            x[d] = site % dims[d];
            site /= dims[d];
        }
        return x;
    }
    int site_index(const std::vector<int>& x) const
    {
        int s = 0;
        for (size_t d = 0; d < dims.size(); ++d) s = s * dims[d] + x[d];
        return s;
    }
};

struct HydroMoments {
    std::vector<double> rho;
    std::vector<std::array<double, 3>> u;
};

// Single-site moments; returns rho and fills u = (1/rho) sum_i f_i c_i.
inline double site_moments(const LatticeModel& m, const double* f, double u[3])
{
    double rho = 0.0;
    u[0] = u[1] = u[2] = 0.0;
    for (int i = 0; i < m.Q; ++i) {
        rho += f[i];
        for (int d = 0; d < 3; ++d) u[d] += f[i] * m.c[i][d];
    }
    if (!(rho > 0.0)) throw error(errc::zero_density, "non-positive density");
    for (int d = 0; d < 3; ++d) u[d] /= rho;
    return rho;
}

// f_i^eq = w_i rho (1 + 3 c.u + 9/2 (c.u)^2 - 3/2 u^2)
inline void site_equilibrium(const LatticeModel& m, double rho, const double u[3], double* feq)
{
    const double uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    for (int i = 0; i < m.Q; ++i) {
        const double cu = m.c[i][0] * u[0] + m.c[i][1] * u[1] + m.c[i][2] * u[2];
        feq[i] = m.w(i) * rho * (1.0 + 3.0 * cu + 4.5 * cu * cu - 1.5 * uu);
    }
}

inline std::vector<double> equilibrium(const LatticeModel& m, const std::vector<double>& f)
{
    double u[3];
    const double rho = site_moments(m, f.data(), u);
    std::vector<double> feq(m.Q);
    site_equilibrium(m, rho, u, feq.data());
    return feq;
}

inline DistributionField equilibrium(const DistributionField& in)
{
    DistributionField out = in;
    double u[3];
    for (int s = 0; s < in.sites(); ++s) {
        const double rho = site_moments(in.model, &in.data[s * in.model.Q], u);
        site_equilibrium(in.model, rho, u, &out.data[s * in.model.Q]);
    }
    return out;
}

inline void check_tau(double tau, double dt)
{
    if (!(tau > dt / 2))
        throw error(errc::tau_too_small, "tau must exceed dt/2 (tau=" + std::to_string(tau) +
                                             ", dt=" + std::to_string(dt) + ")");
}

inline std::vector<double> collide(const LatticeModel& m, const std::vector<double>& f, double tau, double dt)
{
    check_tau(tau, dt);
    const auto feq = equilibrium(m, f);
    std::vector<double> out(f.size());
    const double om = dt / tau;
    for (int i = 0; i < m.Q; ++i) out[i] = f[i] - om * (f[i] - feq[i]);
    return out;
}

inline DistributionField collide(const DistributionField& in, double tau, double dt)
{
    check_tau(tau, dt);
    DistributionField out = in;
    const int Q = in.model.Q;
    const double om = dt / tau;
    std::vector<double> feq(Q);
    double u[3];
    for (int s = 0; s < in.sites(); ++s) {
        const double* f = &in.data[s * Q];
        const double rho = site_moments(in.model, f, u);
        site_equilibrium(in.model, rho, u, feq.data());
        for (int i = 0; i < Q; ++i) out.data[s * Q + i] = f[i] - om * (f[i] - feq[i]);
    }
    return out;
}

// f_i(x + c_i) <- f_i(x), periodic.
inline DistributionField stream(const DistributionField& in)
{
    DistributionField out = in;
    const int Q = in.model.Q;
    for (int s = 0; s < in.sites(); ++s) {
        auto x = in.coords(s);
        for (int i = 0; i < Q; ++i) {
            auto y = x;
            for (size_t d = 0; d < y.size(); ++d) {
                const int n = in.dims[d];
                y[d] = ((y[d] + in.model.c[i][d]) % n + n) % n;
            }
            out.at(in.site_index(y), i) = in.at(s, i);
        }
    }
    return out;
}

inline HydroMoments moments(const DistributionField& in)
{
    HydroMoments h;
    double u[3];
    for (int s = 0; s < in.sites(); ++s) {
        h.rho.push_back(site_moments(in.model, &in.data[s * in.model.Q], u));
        h.u.push_back({u[0], u[1], u[2]});
    }
    return h;
}

// First-order Euler relaxation at a single site; element 0 is f0.
inline std::vector<std::vector<double>> evolve_0d(const LatticeModel& m, const std::vector<double>& f0,
                                                  double tau, double dt, int steps)
{
    check_tau(tau, dt);
    std::vector<std::vector<double>> out;
    out.reserve(steps + 1);
    out.push_back(f0);
    for (int t = 0; t < steps; ++t) out.push_back(collide(m, out.back(), tau, dt));
    return out;
}

// Physicists' Hermite polynomials H_0..H_kmax at x.
inline std::vector<double> hermite_phys(int kmax, double x)
{
    std::vector<double> h(kmax + 1);
    h[0] = 1.0;
    if (kmax >= 1) h[1] = 2.0 * x;
    for (int k = 1; k < kmax; ++k) h[k + 1] = 2.0 * x * h[k] - 2.0 * k * h[k - 1];
    return h;
}

// w_i rho prod_mu sum_{k<=kmax} H_k(c_mu/sqrt(2RT)) (u_mu/sqrt(2RT))^k / k!
// The lattice weight stands in for the Gaussian prefactor exp(-c^2/2RT).
inline std::vector<double> hermite_equilibrium_expansion(const LatticeModel& m, const double u[3], double RT,
                                                         int kmax, double rho = 1.0)
{
    const double s = std::sqrt(2.0 * RT);
    std::vector<double> out(m.Q);
    for (int i = 0; i < m.Q; ++i) {
        double prod = 1.0;
        for (int d = 0; d < m.D; ++d) {
            const auto h = hermite_phys(kmax, m.c[i][d] / s);
            const double y = u[d] / s;
            double sum = 0.0, yk = 1.0, fact = 1.0;
            for (int k = 0; k <= kmax; ++k) {
                if (k > 0) {
                    yk *= y;
                    fact *= k;
                }
                sum += h[k] * yk / fact;
            }
            prod *= sum;
        }
        out[i] = m.w(i) * rho * prod;
    }
    return out;
}

// kmax -> infinity limit of the expansion: w_i rho exp((2 c.u - u^2) / 2RT).
inline std::vector<double> maxwell_boltzmann_discrete(const LatticeModel& m, const double u[3], double RT,
                                                      double rho = 1.0)
{
    std::vector<double> out(m.Q);
    const double uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    for (int i = 0; i < m.Q; ++i) {
        const double cu = m.c[i][0] * u[0] + m.c[i][1] * u[1] + m.c[i][2] * u[2];
        out[i] = m.w(i) * rho * std::exp((2.0 * cu - uu) / (2.0 * RT));
    }
    return out;
}

} // namespace qalb
