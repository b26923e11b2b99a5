#pragma once

#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fock.hpp"

namespace qalb {

struct PauliWord {
    cplx coeff;
    std::string letters; // letters[0] acts on qubit 0, the most significant bit
};

namespace detail {

// (a)(b) = phase * c for single-qubit Paulis
inline char pauli_mul(char a, char b, cplx& phase)
{
    if (a == 'I') return b;
    if (b == 'I') return a;
    if (a == b) return 'I';
    const cplx i(0, 1);
    if (a == 'X' && b == 'Y') { phase *= i; return 'Z'; }
    if (a == 'Y' && b == 'X') { phase *= -i; return 'Z'; }
    if (a == 'Y' && b == 'Z') { phase *= i; return 'X'; }
    if (a == 'Z' && b == 'Y') { phase *= -i; return 'X'; }
    if (a == 'Z' && b == 'X') { phase *= i; return 'Y'; }
    phase *= -i; // X Z
    return 'Y';
}

} // namespace detail

class PauliSum {
public:
    static constexpr double drop_tol = 1e-14;

    explicit PauliSum(int nqubits = 0) : n_(nqubits) {}

    static PauliSum identity(int nqubits, cplx c = 1.0)
    {
        PauliSum s(nqubits);
        s.add(std::string(nqubits, 'I'), c);
        return s;
    }
    static PauliSum word(const std::string& letters, cplx c = 1.0)
    {
        PauliSum s(static_cast<int>(letters.size()));
        s.add(letters, c);
        return s;
    }

    int nqubits() const { return n_; }
    size_t size() const { return terms_.size(); }
    const std::map<std::string, cplx>& terms() const { return terms_; }

    void add(const std::string& letters, cplx c)
    {
        if (static_cast<int>(letters.size()) != n_) throw error(errc::dim_mismatch, "word length mismatch");
        auto it = terms_.find(letters);
        if (it == terms_.end())
            terms_.emplace(letters, c);
        else
            it->second += c;
    }

    // Drop terms whose magnitude fell below drop_tol after merging.
    PauliSum& canonicalize()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (std::abs(it->second) < drop_tol)
                it = terms_.erase(it);
            else
                ++it;
        }
        return *this;
    }

    std::vector<PauliWord> words() const
    {
        std::vector<PauliWord> w;
        for (auto& [l, c] : terms_) w.push_back({c, l});
        return w;
    }

    PauliSum operator+(const PauliSum& o) const
    {
        check(o);
        PauliSum r = *this;
        for (auto& [l, c] : o.terms_) r.add(l, c);
        return r.canonicalize();
    }
    PauliSum operator-(const PauliSum& o) const { return *this + o * cplx(-1.0); }
    PauliSum operator*(cplx s) const
    {
        PauliSum r(n_);
        for (auto& [l, c] : terms_) r.add(l, c * s);
        return r.canonicalize();
    }
    PauliSum operator*(const PauliSum& o) const
    {
        check(o);
        PauliSum r(n_);
        for (auto& [la, ca] : terms_)
            for (auto& [lb, cb] : o.terms_) {
                std::string l(n_, 'I');
                cplx ph = ca * cb;
                for (int k = 0; k < n_; ++k) l[k] = detail::pauli_mul(la[k], lb[k], ph);
                r.add(l, ph);
            }
        return r.canonicalize();
    }
    PauliSum adjoint() const
    {
        PauliSum r(n_);
        for (auto& [l, c] : terms_) r.add(l, std::conj(c));
        return r;
    }

    // this (x) o, this on the leading qubits
    PauliSum tensor(const PauliSum& o) const
    {
        PauliSum r(n_ + o.n_);
        for (auto& [la, ca] : terms_)
            for (auto& [lb, cb] : o.terms_) r.add(la + lb, ca * cb);
        return r.canonicalize();
    }

    bool approx_equal(const PauliSum& o, double tol = 1e-12) const
    {
        if (n_ != o.n_) return false;
        PauliSum d = *this - o;
        for (auto& [l, c] : d.terms_)
            if (std::abs(c) > tol) return false;
        return true;
    }

    void dump(std::ostream& os) const
    {
        for (auto& [l, c] : terms_) os << fmt::format("{:.17g} {:.17g} {}\n", c.real(), c.imag(), l);
    }

private:
    void check(const PauliSum& o) const
    {
        if (n_ != o.n_) throw error(errc::dim_mismatch, "PauliSum qubit counts differ");
    }

    int n_;
    std::map<std::string, cplx> terms_;
};

inline PauliSum operator*(cplx s, const PauliSum& p) { return p * s; }

// |0><1| = (X + iY)/2, |1><0| = (X - iY)/2
inline PauliSum sigma_lower() { return PauliSum::word("X", 0.5) + PauliSum::word("Y", cplx(0, 0.5)); }
inline PauliSum sigma_raise() { return PauliSum::word("X", 0.5) + PauliSum::word("Y", cplx(0, -0.5)); }

// diag(values) over m qubits (values indexed by the big-endian basis index)
// in the I/Z basis: coefficient of Z-subset S is 2^-m sum_h v_h (-1)^{|h & S|}.
inline PauliSum diagonal_to_pauli(const std::vector<double>& values, int m)
{
    if (static_cast<int>(values.size()) != (1 << m)) throw error(errc::dim_mismatch, "diagonal size");
    PauliSum s(m);
    for (int S = 0; S < (1 << m); ++S) {
        double c = 0.0;
        for (int h = 0; h < (1 << m); ++h) c += ((__builtin_popcount(h & S) & 1) ? -1.0 : 1.0) * values[h];
        c /= (1 << m);
        std::string l(m, 'I');
        for (int k = 0; k < m; ++k)
            if (S & (1 << (m - 1 - k))) l[k] = 'Z';
        s.add(l, c);
    }
    return s.canonicalize();
}

struct CompiledLadder {
    PauliSum a, adag;
};

// Binary decrement decomposition: for each bit j the states n whose lowest
// set bit is j map to n - 1 by flipping bits 0..j; the sqrt(n) weights sit in
// a diagonal over the bits above j.
inline CompiledLadder compile_ladder(const FockConfig& cfg)
{
    const int qc = cfg.qc;
    PauliSum a(qc);
    for (int j = 0; j < qc; ++j) {
        const int m = qc - 1 - j; // number of bits above j
        std::vector<double> vals(1 << m);
        for (int h = 0; h < (1 << m); ++h) {
            const long n = (static_cast<long>(h) << (j + 1)) | (1L << j);
            vals[h] = std::sqrt(static_cast<double>(n));
        }
        PauliSum term = m > 0 ? diagonal_to_pauli(vals, m).tensor(sigma_lower()) : sigma_lower() * cplx(vals[0]);
        for (int k = 0; k < j; ++k) term = term.tensor(sigma_raise());
        a = a + term;
    }
    return {a, a.adjoint()};
}

struct CompiledQP {
    PauliSum q, p;
};

inline CompiledQP compile_qp(const FockConfig& cfg)
{
    auto l = compile_ladder(cfg);
    const double s = 1.0 / std::sqrt(2.0);
    return {(l.a + l.adag) * cplx(s), (l.adag - l.a) * cplx(0, s)};
}

inline PauliSum compile_number(const FockConfig& cfg)
{
    PauliSum n(cfg.qc);
    for (int k = 0; k < cfg.qc; ++k) {
        const double w = std::ldexp(1.0, cfg.qc - 1 - k) / 2.0;
        std::string z(cfg.qc, 'I');
        n.add(z, w);
        z[k] = 'Z';
        n.add(z, -w);
    }
    return n.canonicalize();
}

inline CMat pauli_to_dense(const PauliSum& s)
{
    const int n = s.nqubits();
    if (n > 14) throw error(errc::too_large, "pauli_to_dense limited to 14 qubits");
    const long dim = 1L << n;
    CMat M = CMat::Zero(dim, dim);
    for (auto& [l, c] : s.terms()) {
        long flip = 0;
        for (int k = 0; k < n; ++k)
            if (l[k] == 'X' || l[k] == 'Y') flip |= 1L << (n - 1 - k);
        for (long x = 0; x < dim; ++x) {
            cplx ph = c;
            for (int k = 0; k < n; ++k) {
                const int b = (x >> (n - 1 - k)) & 1;
                if (l[k] == 'Z' && b) ph = -ph;
                if (l[k] == 'Y') ph *= b ? cplx(0, -1) : cplx(0, 1);
            }
            M(x ^ flip, x) += ph;
        }
    }
    return M;
}

struct TermStats {
    size_t count = 0;
    int max_weight = 0;
    double coeff_l1 = 0.0;
};

inline TermStats term_stats(const PauliSum& s)
{
    TermStats t;
    for (auto& [l, c] : s.terms()) {
        ++t.count;
        int w = 0;
        for (char ch : l) w += ch != 'I';
        t.max_weight = std::max(t.max_weight, w);
        t.coeff_l1 += std::abs(c);
    }
    return t;
}

inline int count_letter(const std::string& l, char ch)
{
    int n = 0;
    for (char c : l) n += c == ch;
    return n;
}

} // namespace qalb
