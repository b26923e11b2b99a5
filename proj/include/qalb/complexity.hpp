#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"

namespace qalb {

inline int ceil_log2(long x)
{
    int b = 0;
    while ((1L << b) < x) ++b;
    return b;
}

struct LcuParams {
    long m;   // Q^2 + 2Q + 2 monomials
    long L;   // m ceil(log2(N+1))^2 Pauli words
    double k; // sqrt(2(N+1)) ceil(log2(N+1))^2, coefficient sum of one q or p
    double S0, S1, S2;
    double S; // S0 k + S1 k^2 + S2 k^3
};

inline LcuParams lcu_collision_params(int Q, long N, double tau)
{
    if (Q < 1 || N < 1 || !(tau > 0)) throw error(errc::out_of_range, "lcu_collision_params needs positive inputs");
    LcuParams p;
    const long lg = ceil_log2(N + 1);
    p.m = static_cast<long>(Q) * Q + 2L * Q + 2;
    p.L = p.m * lg * lg;
    p.k = std::sqrt(2.0 * (N + 1)) * lg * lg;
    p.S0 = 1.0 / tau;
    p.S1 = 2.0 * Q / tau;
    p.S2 = (1.0 / tau) * Q * (1.5 * Q - 4.5); // -(1/tau) Q (9/2 - 3Q/2)
    p.S = p.S0 * p.k + p.S1 * p.k * p.k + p.S2 * p.k * p.k * p.k;
    return p;
}

// log2(x)/log2(log2(x)), the truncation-order factor of the LCU simulation.
inline double lcu_log_factor(double x)
{
    const double l = std::log2(x);
    return l / std::log2(l);
}

struct LcuGateCount {
    double ancillas;
    double gates;
};

// S T L (n + log2 L) dt, n = Q ceil(log2(N+1)); the log factor is optional.
inline LcuGateCount lcu_collision_gates(int Q, long N, double tau, double dt, double T, double eps,
                                        bool include_log_factor = false)
{
    auto p = lcu_collision_params(Q, N, tau);
    const double n = static_cast<double>(Q) * ceil_log2(N + 1);
    const double f = include_log_factor ? lcu_log_factor(p.S * T / eps) : 1.0;
    return {std::log2(static_cast<double>(p.L)) * f, dt * p.S * T * p.L * (n + std::log2(static_cast<double>(p.L))) * f};
}

struct ComplexityInputs {
    double G = 256;
    int D = 2;
    double T = 10;
    int Q = 9;
    double tau = 1.0;
    double b = 6;
};

struct ComplexityRow {
    std::string label;
    std::string collision;
    std::string streaming;
    double qubits;
    double ancillas; // NaN where the table has none
    double gates;
};

// Leading terms with unit constants.
inline std::vector<ComplexityRow> complexity_rows(const ComplexityInputs& in)
{
    if (!(in.G > 1 && in.D > 0 && in.T > 0 && in.Q > 0 && in.tau > 0 && in.b > 0))
        throw error(errc::out_of_range, "complexity inputs must be positive (G > 1)");
    const double nan = std::nan("");
    const double G = in.G, D = in.D, T = in.T, Q = in.Q, tau = in.tau, b = in.b;
    const double lG = std::log2(G), clG = std::ceil(lG), lTb = std::log2(T + b);
    const double coll = std::pow(T, 5) / tau * std::pow(Q, 5);
    std::vector<ComplexityRow> r;
    r.push_back({"X*", "", "unitary (embedded position)", lG + Q, std::log2(Q * D * clG), T * Q * Q * D * D * clG * clG});
    r.push_back({"X**", "", "unitary (binary position)", std::log2(Q * G) + 2 * D, nan, T * D * lG * lG});
    r.push_back({"X***", "", "unitary (register swaps)", G * Q, nan, 3 * T * (Q - 1) / 2 * G});
    r.push_back({"X", "unitary", "", Q * lTb, std::log2(Q * lTb), coll});
    r.push_back({"X & X*", "unitary", "unitary (embedded position)", lG + Q * std::max(lG, lTb), std::log2(Q * D * clG),
                 T * Q * Q * D * D * clG * clG + coll});
    r.push_back({"X & X***", "unitary", "unitary (register swaps)", std::min(G, T + lG) * Q * lTb, std::log2(Q * lTb),
                 coll + T * Q * G});
    r.push_back({"X & X(non-unitary)", "unitary", "non-unitary", Q * lTb + lG + 2 * D, std::log2(Q * lTb), G * coll});
    return r;
}

struct ReynoldsQubits {
    double formula;     // (15/2) log10(Re)
    double quoted;      // value quoted alongside Re ~ 1e20, NaN otherwise
};

inline double qubits_for_reynolds(double Re)
{
    if (!(Re >= 1)) throw error(errc::out_of_range, "Re must be >= 1");
    return 7.5 * std::log10(Re);
}

inline ReynoldsQubits qubits_for_reynolds_report(double Re)
{
    return {qubits_for_reynolds(Re), std::abs(std::log10(Re) - 20) < 1e-9 ? 120.0 : std::nan("")};
}

} // namespace qalb
