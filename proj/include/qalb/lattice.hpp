#pragma once

#include <array>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "common.hpp"

namespace qalb {

using rational = boost::rational<long long>;

enum class lattice_name { D1Q3, D2Q9, D3Q27 };

inline std::string to_string(lattice_name n)
{
    switch (n) {
    case lattice_name::D1Q3: return "D1Q3";
    case lattice_name::D2Q9: return "D2Q9";
    case lattice_name::D3Q27: return "D3Q27";
    }
    return "?";
}

inline lattice_name parse_lattice(const std::string& s)
{
    if (s == "D1Q3" || s == "d1q3") return lattice_name::D1Q3;
    if (s == "D2Q9" || s == "d2q9") return lattice_name::D2Q9;
    if (s == "D3Q27" || s == "d3q27") return lattice_name::D3Q27;
    throw error(errc::config, "unknown lattice '" + s + "'");
}

using velocity = std::array<int, 3>;

struct LatticeModel {
    lattice_name name;
    int D;
    int Q;
    std::vector<velocity> c;     // unused trailing components are zero
    std::vector<rational> w_exact;
    rational cs2_exact;
    std::vector<rational> Qi_exact; // |c_i|^2 - cs2

    double w(int i) const { return boost::rational_cast<double>(w_exact[i]); }
    double cs2() const { return boost::rational_cast<double>(cs2_exact); }
    double Qi(int i) const { return boost::rational_cast<double>(Qi_exact[i]); }

    int dot(int i, int j) const { return c[i][0] * c[j][0] + c[i][1] * c[j][1] + c[i][2] * c[j][2]; }
    int norm2(int i) const { return dot(i, i); }

    // index of the velocity -c_i
    int opposite(int i) const
    {
        for (int j = 0; j < Q; ++j)
            if (c[j][0] == -c[i][0] && c[j][1] == -c[i][1] && c[j][2] == -c[i][2]) return j;
        return -1;
    }
};

// Rest velocity first, then lexicographic over (c_x, c_y, c_z).
inline LatticeModel build_lattice(lattice_name name)
{
    LatticeModel m;
    m.name = name;
    m.D = name == lattice_name::D1Q3 ? 1 : name == lattice_name::D2Q9 ? 2 : 3;
    m.cs2_exact = rational(1, 3);

    const int axis[3] = {-1, 0, 1};
    const rational w1[3] = {rational(1, 6), rational(4, 6), rational(1, 6)};

    m.c.push_back({0, 0, 0});
    rational w0(1);
    for (int d = 0; d < m.D; ++d) w0 *= w1[1];
    m.w_exact.push_back(w0);

    int n = 1;
    for (int d = 0; d < m.D; ++d) n *= 3;
    for (int k = 0; k < n; ++k) {
        velocity v{0, 0, 0};
        rational w(1);
        int r = k;
        for (int d = m.D - 1; d >= 0; --d) {
            v[d] = axis[r % 3];
            w *= w1[r % 3];
            r /= 3;
        }
        if (v == velocity{0, 0, 0}) continue;
        m.c.push_back(v);
        m.w_exact.push_back(w);
    }
    m.Q = static_cast<int>(m.c.size());
    for (int i = 0; i < m.Q; ++i) m.Qi_exact.push_back(rational(m.norm2(i)) - m.cs2_exact);
    return m;
}

struct ModeCouplingTensors {
    int Q;
    double omega;
    std::vector<rational> L_exact;  // Q*Q, row-major (i,j)
    std::vector<rational> Qt_exact; // Q*Q*Q, (i,j,k)

    double L(int i, int j) const { return boost::rational_cast<double>(L_exact[i * Q + j]); }
    double Qt(int i, int j, int k) const
    {
        return boost::rational_cast<double>(Qt_exact[(i * Q + j) * Q + k]);
    }
};

// L_ij = w_i (1 + c_i.c_j / cs2)
// Qt_ijk = w_i ((c_i.c_j)(c_i.c_k) - cs2 c_j.c_k) / (2 cs2^2)
// In one dimension Qt reduces to w_i Q_i c_j c_k / (2 cs2^2).
inline ModeCouplingTensors mode_coupling(const LatticeModel& m, double omega)
{
    if (!(omega > 0.0 && omega < 2.0))
        throw error(errc::omega_out_of_range, "omega must lie in (0,2), got " + std::to_string(omega));
    ModeCouplingTensors t;
    t.Q = m.Q;
    t.omega = omega;
    const rational cs2 = m.cs2_exact;
    t.L_exact.resize(m.Q * m.Q);
    t.Qt_exact.resize(m.Q * m.Q * m.Q);
    for (int i = 0; i < m.Q; ++i)
        for (int j = 0; j < m.Q; ++j) {
            t.L_exact[i * m.Q + j] = m.w_exact[i] * (rational(1) + rational(m.dot(i, j)) / cs2);
            for (int k = 0; k < m.Q; ++k) {
                rational num = rational(m.dot(i, j) * m.dot(i, k)) - cs2 * rational(m.dot(j, k));
                t.Qt_exact[(i * m.Q + j) * m.Q + k] = m.w_exact[i] * num / (rational(2) * cs2 * cs2);
            }
        }
    return t;
}

// f_i^eq = sum_j L_ij f_j + sum_jk Qt_ijk f_j f_k  (rho = 1 form)
inline std::vector<double> mode_coupling_equilibrium(const ModeCouplingTensors& t,
                                                     const std::vector<double>& f)
{
    std::vector<double> out(t.Q, 0.0);
    for (int i = 0; i < t.Q; ++i) {
        double s = 0.0;
        for (int j = 0; j < t.Q; ++j) {
            s += t.L(i, j) * f[j];
            for (int k = 0; k < t.Q; ++k) s += t.Qt(i, j, k) * f[j] * f[k];
        }
        out[i] = s;
    }
    return out;
}

struct SumRuleReport {
    bool weights_normalized = true;
    bool first_moment_zero = true;
    bool L_rows_unit = true; // sum over j for each i
    bool L_cols_unit = true; // sum over i for each j
    bool Qt_sum_zero = true;
    std::vector<rational> L_row_sums;
};

inline SumRuleReport sum_rules(const LatticeModel& m)
{
    SumRuleReport r;
    rational ws(0);
    for (auto& w : m.w_exact) ws += w;
    r.weights_normalized = ws == rational(1);
    for (int d = 0; d < 3; ++d) {
        rational s(0);
        for (int i = 0; i < m.Q; ++i) s += m.w_exact[i] * rational(m.c[i][d]);
        if (s != rational(0)) r.first_moment_zero = false;
    }
    auto t = mode_coupling(m, 1.0);
    for (int a = 0; a < m.Q; ++a) {
        rational row(0), col(0);
        for (int b = 0; b < m.Q; ++b) {
            row += t.L_exact[a * m.Q + b];
            col += t.L_exact[b * m.Q + a];
        }
        r.L_row_sums.push_back(row);
        if (row != rational(1)) r.L_rows_unit = false;
        if (col != rational(1)) r.L_cols_unit = false;
    }
    for (int j = 0; j < m.Q; ++j)
        for (int k = 0; k < m.Q; ++k) {
            rational s(0);
            for (int i = 0; i < m.Q; ++i) s += t.Qt_exact[(i * m.Q + j) * m.Q + k];
            if (s != rational(0)) r.Qt_sum_zero = false;
        }
    return r;
}

} // namespace qalb
