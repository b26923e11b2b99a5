#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "carleman.hpp"
#include "classical.hpp"
#include "complexity.hpp"
#include "config.hpp"
#include "engine.hpp"
#include "error_bounds.hpp"
#include "streaming.hpp"

namespace qalb::cli {

enum exit_code { ok = 0, config_error = 2, numeric_guard = 3, divergence = 4 };

inline const std::map<std::string, std::map<std::string, std::string>>& presets()
{
    static const std::map<std::string, std::map<std::string, std::string>> p = {
        {"d1q3-figure",
         {{"lattice", "D1Q3"}, {"tau", "1"}, {"dt", "1e-3"}, {"horizon", "1"}, {"f0", "0.6,0.1,0.3"}, {"qc", "2,3,4"}}},
        {"d1q3-equilibrium",
         {{"lattice", "D1Q3"}, {"tau", "1"}, {"dt", "1e-3"}, {"horizon", "1"},
          {"f0", "0.66666666666666663,0.16666666666666666,0.16666666666666666"}, {"qc", "2"}}},
        {"logistic-figure", {{"dt", "0.01"}, {"horizon", "5"}, {"Rf0", "0.01"}, {"logistic_a", "1"}, {"logistic_b", "1"}}},
    };
    return p;
}

// Preset values first, explicit keys override them.
inline Config effective(const Config& c)
{
    if (!c.has("preset")) return c;
    auto it = presets().find(c.str("preset", ""));
    if (it == presets().end()) throw error(errc::config, "unknown preset '" + c.str("preset", "") + "'");
    Config out;
    for (auto& [k, v] : it->second) out.set(k, v);
    for (auto& [k, v] : c.values()) out.set(k, v);
    return out;
}

inline int steps_of(const Config& c, double dt, double horizon_default)
{
    if (c.has("steps")) return static_cast<int>(c.integer("steps", 0));
    return static_cast<int>(std::llround(c.num("horizon", horizon_default) / dt));
}

inline std::vector<double> default_f0(const LatticeModel& m)
{
    std::vector<double> f(m.Q);
    for (int i = 0; i < m.Q; ++i) f[i] = m.w(i);
    return f;
}

inline int cmd_classical(const Config& raw, std::ostream& out)
{
    const Config c = effective(raw);
    const auto m = build_lattice(parse_lattice(c.str("lattice", "D1Q3")));
    const double tau = c.num("tau", 1.0), dt = c.num("dt", 1e-3);
    const int steps = steps_of(c, dt, 1.0);
    const auto f0 = c.list("f0", default_f0(m));
    if (static_cast<int>(f0.size()) != m.Q) throw error(errc::config, "f0 needs " + std::to_string(m.Q) + " values");

    std::vector<std::string> head{"t"};
    const bool grid = c.has("grid");
    if (grid) head.push_back("site");
    for (int i = 0; i < m.Q; ++i) head.push_back("f_" + std::to_string(i));
    head.push_back("rho");
    const char* ax[3] = {"u_x", "u_y", "u_z"};
    for (int d = 0; d < m.D; ++d) head.push_back(ax[d]);
    csv_row(out, head);

    if (!grid) {
        auto series = evolve_0d(m, f0, tau, dt, steps);
        for (int t = 0; t <= steps; ++t) {
            double u[3];
            const double rho = site_moments(m, series[t].data(), u);
            std::vector<double> row{t * dt};
            row.insert(row.end(), series[t].begin(), series[t].end());
            row.push_back(rho);
            for (int d = 0; d < m.D; ++d) row.push_back(u[d]);
            csv_row(out, row);
        }
        return ok;
    }

    std::vector<int> dims;
    for (double v : c.list("grid", {})) dims.push_back(static_cast<int>(v));
    DistributionField fld(m, dims);
    // deterministic non-uniform start: f0 perturbed by a site-dependent ramp
    for (int s = 0; s < fld.sites(); ++s)
        for (int i = 0; i < m.Q; ++i) fld.at(s, i) = f0[i] * (1.0 + 0.01 * ((s * (i + 1)) % 7));
    const bool stream_only = c.flag("stream_only", false);
    for (int t = 0; t <= steps; ++t) {
        if (t > 0) {
            if (!stream_only) fld = collide(fld, tau, dt);
            fld = stream(fld);
        }
        auto h = moments(fld);
        for (int s = 0; s < fld.sites(); ++s) {
            std::vector<double> row{t * dt, static_cast<double>(s)};
            for (int i = 0; i < m.Q; ++i) row.push_back(fld.at(s, i));
            row.push_back(h.rho[s]);
            for (int d = 0; d < m.D; ++d) row.push_back(h.u[s][d]);
            csv_row(out, row);
        }
    }
    return ok;
}

struct QuantumRuns {
    std::vector<EvolutionResult> runs;
    bool any_diverged = false;
};

inline QuantumRuns run_quantum(const Config& c, int steps_override = -1)
{
    const auto m = build_lattice(parse_lattice(c.str("lattice", "D1Q3")));
    const double tau = c.num("tau", 1.0), dt = c.num("dt", 1e-3);
    const int steps = steps_override >= 0 ? steps_override : steps_of(c, dt, 1.0);
    const auto f0 = c.list("f0", {0.6, 0.1, 0.3});
    const std::string meth = c.str("method", "both");
    if (meth != "both" && meth != "hermitized" && meth != "nonhermitian")
        throw error(errc::config, "method must be hermitized, nonhermitian or both");
    EvolveOptions opt;
    opt.enc = parse_encoding(c.str("init", "hermite"));
    opt.divergence_threshold = c.num("divergence_threshold", 1.0);

    QuantumRuns r;
    for (double q : c.list("qc", {2, 3, 4})) {
        CollisionSetup s;
        s.model = m;
        s.cfg = FockConfig::from_qubits(static_cast<int>(q));
        s.tau = tau;
        s.dt = dt;
        for (method k : {method::nonhermitian, method::hermitized}) {
            if (meth != "both" && meth != to_string(k)) continue;
            r.runs.push_back(evolve_quantum_0d(s, f0, steps, k, opt));
            r.any_diverged = r.any_diverged || r.runs.back().diverged;
        }
    }
    return r;
}

inline int cmd_quantum(const Config& raw, std::ostream& out)
{
    const Config c = effective(raw);
    auto r = run_quantum(c);
    if (r.runs.empty()) return ok;
    const int Q = static_cast<int>(r.runs[0].classical[0].size());
    std::vector<std::string> head{"t"};
    for (int i = 0; i < Q; ++i) head.push_back("classical_f" + std::to_string(i));
    for (auto& run : r.runs) {
        const std::string p = to_string(run.kind) + "_qc" + std::to_string(run.qc) + "_";
        for (int i = 0; i < Q; ++i) head.push_back(p + "f" + std::to_string(i));
        for (int i = 0; i < Q; ++i) head.push_back(p + "relerr" + std::to_string(i));
        head.push_back(p + "norm");
        head.push_back(p + "corrected_norm");
        head.push_back(p + "diverged");
    }
    csv_row(out, head);
    const size_t n = r.runs[0].times.size();
    for (size_t t = 0; t < n; ++t) {
        std::vector<double> row{r.runs[0].times[t]};
        row.insert(row.end(), r.runs[0].classical[t].begin(), r.runs[0].classical[t].end());
        for (auto& run : r.runs) {
            row.insert(row.end(), run.decoded[t].begin(), run.decoded[t].end());
            row.insert(row.end(), run.relerr[t].begin(), run.relerr[t].end());
            row.push_back(run.norm[t]);
            row.push_back(run.corrected_norm[t]);
            row.push_back(run.diverged && static_cast<int>(t) >= run.diverged_step ? 1.0 : 0.0);
        }
        csv_row(out, row);
    }
    return r.any_diverged ? divergence : ok;
}

inline int cmd_carleman(const Config& raw, std::ostream& out)
{
    const Config c = effective(raw);
    LogisticParams p;
    p.a = c.num("logistic_a", 1.0);
    p.b = c.num("logistic_b", 1.0);
    p.f0 = c.num("Rf0", 0.01) / p.R();
    const double dt = c.num("dt", 0.01);
    const int steps = steps_of(c, dt, 5.0);
    const int K = static_cast<int>(c.integer("max_order", 4));
    const std::string st = c.str("stepper", "euler");
    if (st != "euler" && st != "exact") throw error(errc::config, "stepper must be euler or exact");
    const double ts = logistic_singular_time(p);
    if (ts <= steps * dt)
        throw error(errc::singular_time, fmt::format("horizon {} passes the singularity at t = {} (a t_sing ~ K/f0 = {})",
                                                     steps * dt, ts, p.K() / p.f0));
    auto run = logistic_error_curves(p, dt, steps, K, st == "exact" ? stepper::exact : stepper::euler);
    std::vector<std::string> head{"t", "exact"};
    for (int k = 1; k <= K; ++k) head.push_back("order" + std::to_string(k));
    for (int k = 1; k <= K; ++k) head.push_back("abserr" + std::to_string(k));
    csv_row(out, head);
    for (int n = 0; n <= steps; ++n) {
        std::vector<double> row{run.t[n], run.exact[n]};
        for (int k = 0; k < K; ++k) row.push_back(run.approx[k][n]);
        for (int k = 0; k < K; ++k) row.push_back(run.abs_err[k][n]);
        csv_row(out, row);
    }
    return ok;
}

inline std::string bits(long v, int n)
{
    std::string s(n, '0');
    for (int k = n - 1; k >= 0; --k, v >>= 1) s[k] = (v & 1) ? '1' : '0';
    return s;
}

inline int cmd_streaming_demo(const Config& raw, std::ostream& out)
{
    const Config c = effective(raw);
    const int nbits = static_cast<int>(c.integer("position_bits", 3));
    out << "# increment circuit, " << nbits << " position qubits (qubit 0 most significant)\n";
    dump_circuit(out, increment_circuit(nbits, 1));
    out << "# basis value after each step\n";
    std::vector<std::string> head{"start"};
    for (int k = 1; k <= nbits; ++k) head.push_back("step" + std::to_string(k));
    csv_row(out, head);
    for (auto& row : increment_table(nbits, 1)) {
        std::vector<std::string> cells;
        for (long v : row) cells.push_back(bits(v, nbits));
        csv_row(out, cells);
    }

    const auto m = build_lattice(lattice_name::D2Q9);
    auto layout = RegisterLayout::make({4, 4});
    auto table = direction_table(m);
    const std::vector<int> x0{1, 3};
    out << "# D2Q9 on 4x4: left stream then up stream from site (1,3)\n";
    out << "# left stream circuit\n";
    dump_circuit(out, controlled_stream_circuit(layout, 0, -1));
    out << "# up stream circuit\n";
    dump_circuit(out, controlled_stream_circuit(layout, 1, 1));
    csv_row(out, std::vector<std::string>{"direction", "code", "before", "after_left", "after_left_up"});
    auto left = circuit_permutation(layout.nqubits(), controlled_stream_circuit(layout, 0, -1));
    auto up = circuit_permutation(layout.nqubits(), controlled_stream_circuit(layout, 1, 1));
    auto pos = [&](long idx) {
        auto x = layout.position_of(idx);
        return "(" + std::to_string(x[0]) + " " + std::to_string(x[1]) + ")";
    };
    for (int i = 0; i < m.Q; ++i) {
        const long b = layout.basis_index(0, table[i].joined(), x0);
        const long l = left[b];
        csv_row(out, std::vector<std::string>{compass_name(m.c[i]), table[i].per_axis[0] + "|" + table[i].per_axis[1],
                                              pos(b), pos(l), pos(up[l])});
    }
    return ok;
}

inline int cmd_complexity(const Config& raw, std::ostream& out)
{
    const Config c = effective(raw);
    ComplexityInputs in;
    in.G = c.num("G", in.G);
    in.D = static_cast<int>(c.integer("D", in.D));
    in.T = c.num("T", in.T);
    in.Q = static_cast<int>(c.integer("Q", in.Q));
    in.tau = c.num("tau", in.tau);
    in.b = c.num("b", in.b);
    out << "# leading terms, big-O constants set to 1\n";
    csv_row(out, std::vector<std::string>{"row", "collision", "streaming", "qubits", "lcu_ancillas", "gates"});
    for (auto& r : complexity_rows(in))
        csv_row(out, std::vector<std::string>{r.label, r.collision, r.streaming, fmt17(r.qubits),
                                              std::isnan(r.ancillas) ? "-" : fmt17(r.ancillas), fmt17(r.gates)});
    const long N = c.integer("N", 3);
    auto p = lcu_collision_params(in.Q, N, in.tau);
    out << "# LCU collision parameters\n";
    csv_row(out, std::vector<std::string>{"Q", "N", "m", "L", "k", "S0", "S1", "S2", "S"});
    csv_row(out, std::vector<double>{double(in.Q), double(N), double(p.m), double(p.L), p.k, p.S0, p.S1, p.S2, p.S});
    const double Re = c.num("Re", 1e8);
    auto rq = qubits_for_reynolds_report(Re);
    out << "# qubits for Reynolds number\n";
    csv_row(out, std::vector<std::string>{"Re", "qubits_formula", "qubits_quoted"});
    csv_row(out, std::vector<std::string>{fmt17(Re), fmt17(rq.formula), std::isnan(rq.quoted) ? "-" : fmt17(rq.quoted)});
    return ok;
}

inline int cmd_bounds(const Config& raw, std::ostream& out)
{
    const Config c = effective(raw);
    const int Q = static_cast<int>(c.integer("Q", 3));
    const int N = static_cast<int>(c.integer("N", 3));
    const int Nmax = static_cast<int>(c.integer("Nmax", 15));
    const double tau = c.num("tau", 1.0);
    const auto ratios = c.list("dt_over_tau", {1e-6, 1e-3, 1.0});
    const int steps = static_cast<int>(c.integer("bound_steps", 20));
    const double eps = epsilon_N(N);

    out << "# truncation residual\n";
    csv_row(out, std::vector<std::string>{"N", "eps_N", "argmax"});
    for (int n = 1; n <= Nmax; ++n) {
        auto e = epsilon_N_detail(n);
        csv_row(out, std::vector<double>{double(n), e.value, e.argmax});
    }

    std::vector<bound_variant> variants{bound_variant::inflate_c0, bound_variant::inflate_a};
    if (c.has("variant")) {
        const std::string v = c.str("variant", "");
        if (v == "inflate_c0")
            variants = {bound_variant::inflate_c0};
        else if (v == "inflate_a")
            variants = {bound_variant::inflate_a};
        else
            throw error(errc::config, "variant must be inflate_c0 or inflate_a");
    }

    out << "# bound coefficients\n";
    csv_row(out, std::vector<std::string>{"variant", "a", "b", "c", "a2", "c2", "C0", "C1", "kappa_plus", "kappa_minus"});
    for (auto v : variants) {
        auto bc = bound_coefficients(Q, v);
        auto k = kappa_roots(bc.C0, bc.C1, eps);
        csv_row(out, std::vector<std::string>{to_string(v), fmt17(bc.a), fmt17(bc.b), fmt17(bc.c), fmt17(bc.a2),
                                              fmt17(bc.c2), fmt17(bc.C0), fmt17(bc.C1), fmt17(k.plus), fmt17(k.minus)});
    }

    out << "# feasibility\n";
    csv_row(out, std::vector<std::string>{"variant", "dt_over_tau", "lhs", "mid", "rhs", "margin_low", "margin_high",
                                          "feasible"});
    for (auto v : variants) {
        auto bc = bound_coefficients(Q, v);
        for (double r : ratios) {
            auto f = feasibility(bc.C0, bc.C1, r * tau, tau, eps);
            csv_row(out, std::vector<std::string>{to_string(v), fmt17(r), fmt17(f.lhs), fmt17(f.mid), fmt17(f.rhs),
                                                  fmt17(f.margin_low), fmt17(f.margin_high), f.feasible ? "1" : "0"});
        }
    }

    out << "# logistic map\n";
    csv_row(out, std::vector<std::string>{"variant", "dt_over_tau", "t", "Z_re", "Z_im", "eps_from_Z", "eps_raw"});
    for (auto v : variants) {
        auto bc = bound_coefficients(Q, v);
        for (double r : ratios) {
            ErrorBoundParams p{bc.C0, bc.C1, tau, r * tau, eps};
            auto run = logistic_map_run(p, steps);
            for (int t = 0; t <= steps; ++t)
                csv_row(out, std::vector<std::string>{to_string(v), fmt17(r), std::to_string(t), fmt17(run.Z[t].real()),
                                                      fmt17(run.Z[t].imag()), fmt17(run.eps_from_Z[t]),
                                                      fmt17(run.eps_raw[t])});
        }
    }
    return ok;
}

} // namespace qalb::cli
