#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "common.hpp"

namespace qalb {

struct EpsilonN {
    double value;
    double argmax;
};

// sup_{f in [-1,1]} |2^{-N/2} (N!)^{-1/2} He_{N+1}(f) / 2| on a uniform grid
// (endpoints included).
inline EpsilonN epsilon_N_detail(int N, int grid = 10000)
{
    if (N < 1) throw error(errc::out_of_range, "N must be >= 1");
    const double scale = 0.5 * std::pow(2.0, -N / 2.0) / std::sqrt(std::tgamma(N + 1.0));
    EpsilonN best{0.0, 0.0};
    for (int k = 0; k <= grid; ++k) {
        const double f = -1.0 + 2.0 * k / grid;
        double hm = 1.0, h = f;
        for (int n = 1; n <= N; ++n) {
            const double hn = f * h - n * hm;
            hm = h;
            h = hn;
        }
        const double v = std::abs(scale * h);
        if (v > best.value) best = {v, f};
    }
    return best;
}

inline double epsilon_N(int N) { return epsilon_N_detail(N).value; }

enum class bound_variant { inflate_c0, inflate_a };

inline std::string to_string(bound_variant v) { return v == bound_variant::inflate_c0 ? "inflate_c0" : "inflate_a"; }

struct BoundCoefficients {
    double a, b, c;    // a = 6Q^2, b = 12Q^2 + 3Q + 1, c = 1
    double a2, c2;     // completed-square coefficients
    double C0, C1;     // (C1 x + C0)^2 = a2 x^2 + b x + c2
};

inline BoundCoefficients bound_coefficients(int Q, bound_variant v)
{
    if (Q != 3 && Q != 9 && Q != 27) throw error(errc::out_of_range, "Q must be 3, 9 or 27");
    const double q = Q;
    BoundCoefficients r;
    r.a = 6 * q * q;
    r.b = 12 * q * q + 3 * q + 1;
    r.c = 1;
    r.a2 = r.a;
    r.c2 = r.c;
    if (v == bound_variant::inflate_c0)
        r.c2 = r.c + 6 * q * q + 3 * q + 3.0 / 8 + 1 / (4 * q) + 1 / (24 * q * q);
    else
        r.a2 = r.a + 36 * q * q * q * q + 18 * q * q * q + 2.25 * q * q + 1.5 * q + 0.25;
    const double disc = r.b * r.b - 4 * r.a2 * r.c2;
    if (std::abs(disc) > 1e-9 * r.b * r.b)
        throw error(errc::discriminant_not_closed, "completed square leaves discriminant " + std::to_string(disc));
    r.C1 = std::sqrt(r.a2);
    r.C0 = std::sqrt(r.c2);
    return r;
}

struct KappaRoots {
    double plus, minus;
};

// kappa^2 + kappa - (C0/C1 + eps_N) = 0
inline KappaRoots kappa_roots(double C0, double C1, double eps_N)
{
    const double s = C0 / C1 + eps_N;
    const double rad = 1 + 4 * s;
    if (rad < 0) throw error(errc::negative_radicand, "1 + 4(C0/C1 + eps_N) < 0");
    const double r = std::sqrt(rad);
    return {(-1 + r) / 2, (-1 - r) / 2};
}

struct ErrorBoundParams {
    double C0 = 1.0;
    double C1 = 1.0;
    double tau = 1.0;
    double dt = 1e-3;
    double eps_N = 0.0;
};

struct LogisticMapRun {
    std::complex<double> kappa; // root of alpha k^2 + k + alpha s = 0
    double alpha = 0.0;         // sqrt(dt/tau) C1
    double s = 0.0;             // C0/C1 + eps_N
    double coefficient = 0.0;   // logistic parameter -2 alpha kappa (real part)
    std::vector<std::complex<double>> Z;
    std::vector<double> eps_from_Z;
    std::vector<double> eps_raw;
    bool diverged = false;
    int diverged_step = -1;
};

// Raw recurrence eps(t+1) = (dt/tau)(C1(eps_N + eps(t)) + C0)^2 and its
// logistic normal form. With e = alpha(eps + s), e' = alpha(e^2 + s); the
// substitution Z = (e + kappa)/(2 kappa) turns this into
// Z' = -2 alpha kappa Z (1 - Z) exactly when alpha kappa^2 + kappa + alpha s = 0.
// The root continuous with -1/alpha is used; it is complex when 4 alpha^2 s > 1.
// The map is iterated in W = Z - 1/2, W' = mu/4 - 1/2 - mu W^2, because Z sits
// within O(alpha^2) of 1/2 when dt/tau is small.
inline LogisticMapRun logistic_map_run(const ErrorBoundParams& p, int steps)
{
    LogisticMapRun r;
    const double ratio = p.dt / p.tau;
    r.alpha = std::sqrt(ratio) * p.C1;
    r.s = p.C0 / p.C1 + p.eps_N;
    using C = std::complex<double>;
    const C rad = std::sqrt(C(1 - 4 * r.alpha * r.alpha * r.s));
    r.kappa = (C(-1) - rad) / (2 * r.alpha);
    const C mu = 1.0 + rad; // -2 alpha kappa
    const C shift = -r.alpha * r.alpha * r.s / (1.0 + rad); // mu/4 - 1/2 without cancellation
    r.coefficient = mu.real();

    C W = r.alpha * r.s / (2.0 * r.kappa);
    double eps = 0.0;
    const C back = 2.0 * r.kappa / p.C1 * std::sqrt(p.tau / p.dt);
    for (int t = 0; t <= steps; ++t) {
        r.Z.push_back(0.5 + W);
        r.eps_from_Z.push_back((back * W).real() - r.s);
        r.eps_raw.push_back(eps);
        if (!r.diverged && !(std::abs(W) <= 1e12)) {
            r.diverged = true;
            r.diverged_step = t;
        }
        W = shift - mu * W * W;
        const double v = p.C1 * (p.eps_N + eps) + p.C0;
        eps = ratio * v * v;
    }
    return r;
}

struct Feasibility {
    double lhs, mid, rhs;
    double margin_low;  // mid - lhs, must be >= 0
    double margin_high; // rhs - mid, must be > 0
    bool feasible;
};

// sqrt(dt/tau)(C0 + C1 eps_N) <= (1 + sqrt(1 + 4(C0/C1 + eps_N)))/2 < sqrt(tau/dt)/C1 - 1
inline Feasibility feasibility(double C0, double C1, double dt, double tau, double eps_N)
{
    if (!(C0 >= 0 && C1 > 0 && dt > 0 && tau > 0)) throw error(errc::out_of_range, "feasibility needs positive inputs");
    Feasibility f;
    f.lhs = std::sqrt(dt / tau) * (C0 + C1 * eps_N);
    f.mid = -kappa_roots(C0, C1, eps_N).minus;
    f.rhs = std::sqrt(tau / dt) / C1 - 1;
    f.margin_low = f.mid - f.lhs;
    f.margin_high = f.rhs - f.mid;
    f.feasible = f.margin_low >= 0 && f.margin_high > 0;
    return f;
}

} // namespace qalb
