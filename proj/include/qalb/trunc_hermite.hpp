#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "common.hpp"

namespace qalb {

namespace detail {

inline double truncated_gaussian_integral(const std::function<double(double)>& f, double z, double tol)
{
    double err = 0.0;
    auto g = [&](double x) { return f(x) * std::exp(-x * x); };
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -z, z, 15, tol, &err);
    if (!std::isfinite(v) || err > 1e3 * tol * std::max(1.0, std::abs(v)))
        throw error(errc::quadrature_failure, "adaptive quadrature did not converge");
    return v;
}

inline double horner(const std::vector<double>& c, double x)
{
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

} // namespace detail

// m_k = int_{-z}^{z} x^k e^{-x^2} dx
inline std::vector<double> truncated_gaussian_moments(double z, int kmax, double tol = 1e-12)
{
    std::vector<double> m;
    for (int k = 0; k <= kmax; ++k)
        m.push_back(detail::truncated_gaussian_integral([k](double x) { return std::pow(x, k); }, z, tol));
    return m;
}

struct TruncatedHermiteBasis {
    double z = 1.0;
    int nmax = 0;
    std::vector<double> gammas; // gammas[0] = 0, gammas[n] for n = 1..nmax
    std::vector<std::vector<double>> coeffs; // monic P_n in ascending powers (oracle output)
};

// Independent oracle: orthogonalizes x P_n against every earlier P_k with
// inner products evaluated by adaptive quadrature, then
// gamma_n = <P_n,P_n> / <P_{n-1},P_{n-1}>.
inline TruncatedHermiteBasis gamma_sequence_oracle(double z, int nmax, double tol = 1e-12)
{
    if (!(z > 0.0) || nmax < 1 || nmax > 20) throw error(errc::out_of_range, "need z > 0 and 1 <= nmax <= 20");
    TruncatedHermiteBasis b;
    b.z = z;
    b.nmax = nmax;
    auto inner = [&](const std::vector<double>& p, const std::vector<double>& q) {
        return detail::truncated_gaussian_integral(
            [&](double x) { return detail::horner(p, x) * detail::horner(q, x); }, z, tol);
    };
    std::vector<double> norms;
    b.coeffs.push_back({1.0});
    norms.push_back(inner(b.coeffs[0], b.coeffs[0]));
    for (int n = 0; n <= nmax; ++n) {
        std::vector<double> next(b.coeffs[n].size() + 1, 0.0);
        for (size_t k = 0; k < b.coeffs[n].size(); ++k) next[k + 1] = b.coeffs[n][k];
        for (int k = 0; k <= n; ++k) {
            const double proj = inner(next, b.coeffs[k]) / norms[k];
            for (size_t j = 0; j < b.coeffs[k].size(); ++j) next[j] -= proj * b.coeffs[k][j];
        }
        b.coeffs.push_back(next);
        norms.push_back(inner(next, next));
    }
    b.gammas.push_back(0.0);
    for (int n = 1; n <= nmax; ++n) b.gammas.push_back(norms[n] / norms[n - 1]);
    return b;
}

inline double gamma_at(const TruncatedHermiteBasis& b, int n)
{
    if (n < 0 || n >= static_cast<int>(b.gammas.size()))
        throw error(errc::index_out_of_range, "gamma index " + std::to_string(n) + " not available");
    return b.gammas[n];
}

struct PolyValue {
    double value;
    double deriv;
};

// P_{n+1} = x P_n - gamma_n P_{n-1} and its derivative
// P'_{n+1} = P_n + x P'_n - gamma_n P'_{n-1}
inline PolyValue poly_eval(const TruncatedHermiteBasis& b, int n, double x)
{
    if (n < 0) return {0.0, 0.0};
    double pm = 0.0, p = 1.0, dm = 0.0, d = 0.0;
    for (int k = 0; k < n; ++k) {
        const double g = gamma_at(b, k);
        const double pn = x * p - g * pm;
        const double dn = p + x * d - g * dm;
        pm = p;
        p = pn;
        dm = d;
        d = dn;
    }
    return {p, d};
}

struct IdentityResiduals {
    double laguerre_freud = 0.0;  // first (two-line) form
    double product_form = 0.0;    // gamma_n(n+1/2-..)(n-1/2-..) = z^2(n/2-gamma_n)^2
    double g_form = 0.0;          // (n/2-g_n)(g_n+g_{n+1})(g_n+g_{n-1}) = z^2 g_n^2
};

// Max residuals for n = 1..nmax-2.
inline IdentityResiduals gamma_laguerre_freud_check(const std::vector<double>& g, double z, int nlast = -1)
{
    if (g.size() < 4) throw error(errc::out_of_range, "need at least four gamma values");
    const int last = nlast > 0 ? nlast : static_cast<int>(g.size()) - 3;
    const double z2 = z * z;
    IdentityResiduals r;
    for (int n = 1; n <= last; ++n) {
        const double lf = g[n] * (g[n - 1] + g[n] - z2 + 0.5 - n) - g[n + 1] * (g[n + 1] + g[n + 2] - z2 - n - 1.5) - z2 / 2;
        const double pf = g[n] * (n + 0.5 - g[n] - g[n + 1]) * (n - 0.5 - g[n] - g[n - 1]) - z2 * (n / 2.0 - g[n]) * (n / 2.0 - g[n]);
        auto gg = [&](int k) { return k / 2.0 - g[k]; };
        const double gf = (n / 2.0 - gg(n)) * (gg(n) + gg(n + 1)) * (gg(n) + gg(n - 1)) - z2 * gg(n) * gg(n);
        r.laguerre_freud = std::max(r.laguerre_freud, std::abs(lf));
        r.product_form = std::max(r.product_form, std::abs(pf));
        r.g_form = std::max(r.g_form, std::abs(gf));
    }
    return r;
}

struct LoweringCoefficients {
    double A, B, C;
};

inline LoweringCoefficients lowering_coefficients(const TruncatedHermiteBasis& b, int n, double x)
{
    const double z2 = b.z * b.z;
    const double gn = gamma_at(b, n), gn1 = gamma_at(b, n + 1);
    const double C = x * x - z2 + gn + gn1 - n - 0.5;
    if (std::abs(C) < 1e-10) throw error(errc::singular_coefficient, "C_{z,n}(x) vanishes");
    return {(x * x - z2) / (2 * gn * C), (n - 2 * gn) * x / (2 * gn * C), C};
}

// max |A P_n' - B P_n - P_{n-1}| over xs
inline double lowering_check(const TruncatedHermiteBasis& b, int n, const std::vector<double>& xs)
{
    if (n < 1) throw error(errc::out_of_range, "lowering needs n >= 1");
    double worst = 0.0;
    for (double x : xs) {
        auto c = lowering_coefficients(b, n, x);
        auto p = poly_eval(b, n, x);
        const double r = c.A * p.deriv - c.B * p.value - poly_eval(b, n - 1, x).value;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

inline double diff_lambda(const TruncatedHermiteBasis& b, int n)
{
    return (2 * (gamma_at(b, n) + gamma_at(b, n + 1) + gamma_at(b, n + 2) - b.z * b.z - 1) - n) * gamma_at(b, n + 1);
}

inline double diff_tau(const TruncatedHermiteBasis& b, int n)
{
    return 2 * gamma_at(b, n + 1) * gamma_at(b, n) * gamma_at(b, n - 1);
}

// max |(x^2-z^2) P'_{n+1} - ((n+1) P_{n+2} + lambda_n P_n + tau_n P_{n-2})|
inline double diff_recurrence_check(const TruncatedHermiteBasis& b, int n, const std::vector<double>& xs)
{
    if (n < 2) throw error(errc::out_of_range, "differential recurrence needs n >= 2");
    const double lam = diff_lambda(b, n), tau = diff_tau(b, n);
    double worst = 0.0;
    for (double x : xs) {
        const double lhs = (x * x - b.z * b.z) * poly_eval(b, n + 1, x).deriv;
        const double rhs = (n + 1) * poly_eval(b, n + 2, x).value + lam * poly_eval(b, n, x).value +
                           tau * poly_eval(b, n - 2, x).value;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

} // namespace qalb
