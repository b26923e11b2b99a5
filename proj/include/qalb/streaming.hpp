#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "classical.hpp"

namespace qalb {

struct GateStep {
    int target;
    std::vector<std::pair<int, int>> controls; // (qubit, required state)
};

inline std::ostream& operator<<(std::ostream& os, const GateStep& g)
{
    os << "X " << g.target << " | controls:";
    for (auto& [q, s] : g.controls) os << " (" << q << "," << s << ")";
    return os;
}

inline void dump_circuit(std::ostream& os, const std::vector<GateStep>& c)
{
    for (auto& g : c) os << g << "\n";
}

// Ripple-carry +-1 on an nbits register. Local qubit k is bit (nbits-1-k),
// so local qubit 0 is the most significant. Gates run from the most to the
// least significant bit; each flips its bit when all lower bits equal
// 1 (sign +1) or 0 (sign -1).
inline std::vector<GateStep> increment_circuit(int nbits, int sign)
{
    if (nbits < 1) throw error(errc::out_of_range, "nbits must be >= 1");
    if (sign != 1 && sign != -1) throw error(errc::out_of_range, "sign must be +1 or -1");
    const int cs = sign > 0 ? 1 : 0;
    std::vector<GateStep> out;
    for (int b = nbits - 1; b >= 0; --b) {
        GateStep g{nbits - 1 - b, {}};
        for (int l = b - 1; l >= 0; --l) g.controls.push_back({nbits - 1 - l, cs});
        out.push_back(g);
    }
    return out;
}

inline std::vector<GateStep> offset_circuit(const std::vector<GateStep>& c, int offset)
{
    auto out = c;
    for (auto& g : out) {
        g.target += offset;
        for (auto& ctl : g.controls) ctl.first += offset;
    }
    return out;
}

// Qubit 0 is the most significant bit of the basis index.
inline void apply_gate(CVec& psi, int nqubits, const GateStep& g)
{
    const long dim = 1L << nqubits;
    if (psi.size() != dim) throw error(errc::dim_mismatch, "state size does not match qubit count");
    auto bit = [&](int q) { return 1L << (nqubits - 1 - q); };
    if (g.target < 0 || g.target >= nqubits) throw error(errc::index_out_of_range, "gate target out of range");
    long cmask = 0, cval = 0;
    for (auto& [q, s] : g.controls) {
        if (q < 0 || q >= nqubits || q == g.target) throw error(errc::index_out_of_range, "bad control qubit");
        cmask |= bit(q);
        if (s) cval |= bit(q);
    }
    const long tm = bit(g.target);
    for (long x = 0; x < dim; ++x) {
        if (x & tm) continue;
        if ((x & cmask) != cval) continue;
        std::swap(psi(x), psi(x | tm));
    }
}

inline CVec apply_circuit(CVec psi, int nqubits, const std::vector<GateStep>& steps)
{
    for (auto& g : steps) apply_gate(psi, nqubits, g);
    return psi;
}

// Permutation of basis indices induced by a circuit.
inline std::vector<long> circuit_permutation(int nqubits, const std::vector<GateStep>& steps)
{
    const long dim = 1L << nqubits;
    std::vector<long> perm(dim);
    for (long x = 0; x < dim; ++x) {
        long y = x;
        for (auto& g : steps) {
            bool ok = true;
            for (auto& [q, s] : g.controls)
                if (((y >> (nqubits - 1 - q)) & 1) != s) ok = false;
            if (ok) y ^= 1L << (nqubits - 1 - g.target);
        }
        perm[x] = y;
    }
    return perm;
}

// stationary 10, positive 11, negative 01
inline std::string direction_code(int c)
{
    return c == 0 ? "10" : c > 0 ? "11" : "01";
}

struct DirectionCode {
    std::vector<std::string> per_axis;
    std::string joined() const
    {
        std::string s;
        for (auto& a : per_axis) s += a;
        return s;
    }
};

inline std::vector<DirectionCode> direction_table(const LatticeModel& m)
{
    std::vector<DirectionCode> t;
    for (int i = 0; i < m.Q; ++i) {
        DirectionCode dc;
        for (int d = 0; d < m.D; ++d) dc.per_axis.push_back(direction_code(m.c[i][d]));
        t.push_back(dc);
    }
    return t;
}

// Compass names for D2Q9 in lattice order.
inline std::string compass_name(const velocity& c)
{
    static const std::map<std::pair<int, int>, std::string> names = {
        {{0, 0}, "Rest"},       {{1, 0}, "East"},       {{-1, 0}, "West"},      {{0, 1}, "North"},
        {{0, -1}, "South"},     {{1, 1}, "Northeast"},  {{-1, 1}, "Northwest"}, {{1, -1}, "Southeast"},
        {{-1, -1}, "Southwest"}};
    auto it = names.find({c[0], c[1]});
    return it == names.end() ? "?" : it->second;
}

// [payload | direction codes, 2 qubits per axis | position bits per axis, MSB first]
struct RegisterLayout {
    int payload_bits = 0;
    int D = 1;
    std::vector<int> position_bits;

    static RegisterLayout make(const std::vector<int>& dims, int payload_bits = 0)
    {
        RegisterLayout l;
        l.payload_bits = payload_bits;
        l.D = static_cast<int>(dims.size());
        for (int n : dims) {
            if (n < 2 || (n & (n - 1)) != 0)
                throw error(errc::out_of_range, "grid size " + std::to_string(n) + " is not a power of two");
            int b = 0;
            while ((1 << b) < n) ++b;
            l.position_bits.push_back(b);
        }
        return l;
    }
    int direction_qubit(int axis, int k) const { return payload_bits + 2 * axis + k; }
    int position_offset(int axis) const
    {
        int o = payload_bits + 2 * D;
        for (int a = 0; a < axis; ++a) o += position_bits[a];
        return o;
    }
    int nqubits() const { return position_offset(D); }
    int sites(int axis) const { return 1 << position_bits[axis]; }

    long basis_index(long payload, const std::string& code, const std::vector<int>& x) const
    {
        long idx = payload;
        for (char ch : code) idx = (idx << 1) | (ch == '1');
        for (int a = 0; a < D; ++a) idx = (idx << position_bits[a]) | x[a];
        return idx;
    }
    std::vector<int> position_of(long idx) const
    {
        std::vector<int> x(D);
        for (int a = D - 1; a >= 0; --a) {
            x[a] = static_cast<int>(idx & ((1L << position_bits[a]) - 1));
            idx >>= position_bits[a];
        }
        return x;
    }
    std::string code_of(long idx) const
    {
        long c = (idx >> (nqubits() - payload_bits - 2 * D)) & ((1L << (2 * D)) - 1);
        std::string s(2 * D, '0');
        for (int k = 2 * D - 1; k >= 0; --k, c >>= 1) s[k] = (c & 1) ? '1' : '0';
        return s;
    }
};

// +-1 on the axis position register, controlled on the axis code being
// 11 (sign +1) or 01 (sign -1).
inline std::vector<GateStep> controlled_stream_circuit(const RegisterLayout& l, int axis, int sign)
{
    if (axis < 0 || axis >= l.D) throw error(errc::index_out_of_range, "axis out of range");
    auto c = offset_circuit(increment_circuit(l.position_bits[axis], sign), l.position_offset(axis));
    const std::string code = direction_code(sign);
    for (auto& g : c) {
        g.controls.insert(g.controls.begin(), {l.direction_qubit(axis, 1), code[1] - '0'});
        g.controls.insert(g.controls.begin(), {l.direction_qubit(axis, 0), code[0] - '0'});
    }
    return c;
}

inline CVec controlled_stream(const CVec& psi, const RegisterLayout& l, int axis, int sign)
{
    return apply_circuit(psi, l.nqubits(), controlled_stream_circuit(l, axis, sign));
}

// All axes, both signs.
inline std::vector<GateStep> full_stream_circuit(const RegisterLayout& l)
{
    std::vector<GateStep> c;
    for (int a = 0; a < l.D; ++a)
        for (int sign : {1, -1}) {
            auto s = controlled_stream_circuit(l, a, sign);
            c.insert(c.end(), s.begin(), s.end());
        }
    return c;
}

struct EquivalenceReport {
    std::vector<std::string> direction;
    std::vector<bool> pass;
    int cases = 0;
    bool all() const
    {
        for (bool p : pass)
            if (!p) return false;
        return true;
    }
};

// For every direction and site, compares the register permutation with the
// classical streaming of a single marked population.
inline EquivalenceReport equivalence_check(const std::vector<int>& dims, const LatticeModel& m)
{
    auto layout = RegisterLayout::make(dims);
    auto table = direction_table(m);
    auto perm = circuit_permutation(layout.nqubits(), full_stream_circuit(layout));
    EquivalenceReport rep;
    DistributionField probe(m, dims);
    for (int i = 0; i < m.Q; ++i) {
        bool ok = true;
        for (int s = 0; s < probe.sites(); ++s) {
            std::fill(probe.data.begin(), probe.data.end(), 0.0);
            probe.at(s, i) = 1.0;
            auto moved = stream(probe);
            int dest = -1;
            for (int t = 0; t < moved.sites(); ++t)
                if (moved.at(t, i) == 1.0) dest = t;
            const long from = layout.basis_index(0, table[i].joined(), probe.coords(s));
            const long to = perm[from];
            if (layout.code_of(to) != table[i].joined() || layout.position_of(to) != probe.coords(dest)) ok = false;
            ++rep.cases;
        }
        rep.direction.push_back(m.D == 2 ? compass_name(m.c[i]) : "c" + std::to_string(i));
        rep.pass.push_back(ok);
    }
    return rep;
}

// Basis value after each gate of the nbits increment, for every start value.
inline std::vector<std::vector<long>> increment_table(int nbits, int sign)
{
    auto c = increment_circuit(nbits, sign);
    std::vector<std::vector<long>> rows;
    for (long x = 0; x < (1L << nbits); ++x) {
        std::vector<long> row{x};
        long y = x;
        for (auto& g : c) {
            bool ok = true;
            for (auto& [q, s] : g.controls)
                if (((y >> (nbits - 1 - q)) & 1) != s) ok = false;
            if (ok) y ^= 1L << (nbits - 1 - g.target);
            row.push_back(y);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace qalb
