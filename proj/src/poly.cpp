#include "loopcrystal/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopcrystal {

void Poly::trim() {
    while (!c.empty() && c.back() == Fp(0)) c.pop_back();
}

Poly Poly::linear(Fp root) { return Poly(std::vector<Fp>{-root, Fp(1)}); }

Fp Poly::eval(Fp x) const {
    Fp r = 0;
    for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
}

Poly Poly::derivative() const {
    std::vector<Fp> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * Fp(static_cast<std::int64_t>(k)));
    return Poly(d);
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    const Fp inv = lead().inverse();
    std::vector<Fp> d = c;
    for (auto& x : d) x *= inv;
    return Poly(d);
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Fp> s(std::max(a.c.size(), b.c.size()), Fp(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) s[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) s[k] += b.c[k];
    return Poly(s);
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Fp> s(std::max(a.c.size(), b.c.size()), Fp(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) s[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) s[k] -= b.c[k];
    return Poly(s);
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Fp> s(a.c.size() + b.c.size() - 1, Fp(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) s[i + j] += a.c[i] * b.c[j];
    return Poly(s);
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    std::vector<Fp> r = a.c;
    const int db = b.degree();
    std::vector<Fp> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0, Fp(0));
    const Fp inv = b.lead().inverse();
    for (int k = a.degree(); k >= db; --k) {
        const Fp f = r[static_cast<std::size_t>(k)] * inv;
        if (f == Fp(0)) continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (int t = 0; t <= db; ++t) r[static_cast<std::size_t>(k - db + t)] -= f * b.c[static_cast<std::size_t>(t)];
    }
    return {Poly(q), Poly(r)};
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly pow(const Poly& a, int e) {
    Poly r = Poly::constant(1);
    for (int k = 0; k < e; ++k) r = r * a;
    return r;
}

std::vector<Poly> invariant_factors(PolyMatrix m) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<Poly> out;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Pivot: nonzero entry of least degree in the trailing block.
        int best = -1;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!m[i][j].is_zero() && (best < 0 || m[i][j].degree() < best)) {
                    best = m[i][j].degree();
                    pi = i;
                    pj = j;
                }
        if (best < 0) break;
        std::swap(m[t], m[pi]);
        for (auto& row : m) std::swap(row[t], row[pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t].is_zero()) continue;
                const Poly q = divmod(m[i][t], m[t][t]).first;
                for (std::size_t j = t; j < cols; ++j) m[i][j] = m[i][j] - q * m[t][j];
                if (!m[i][t].is_zero()) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j].is_zero()) continue;
                const Poly q = divmod(m[t][j], m[t][t]).first;
                for (std::size_t i = t; i < rows; ++i) m[i][j] = m[i][j] - q * m[i][t];
                if (!m[t][j].is_zero()) {
                    for (auto& row : m) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Divisibility: the pivot must divide every trailing entry.
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!divmod(m[i][j], m[t][t]).second.is_zero()) {
                        for (std::size_t k = t; k < cols; ++k) m[t][k] = m[t][k] + m[i][k];
                        clean = false;
                        break;
                    }
        }
        out.push_back(m[t][t].monic());
        ++t;
    }
    return out;
}

std::vector<Poly> squarefree_factors(const Poly& f) {
    std::vector<Poly> out;
    if (f.degree() < 1) return out;
    Poly a = f.monic();
    Poly b = gcd(a, a.derivative());
    Poly c = divmod(a, b).first;
    Poly d = divmod(a.derivative(), b).first - c.derivative();
    while (c.degree() >= 1) {
        Poly g = gcd(c, d);
        out.push_back(g);
        c = divmod(c, g).first;
        d = divmod(d, g).first - c.derivative();
    }
    while (!out.empty() && out.back().degree() < 1) out.pop_back();
    return out;
}

}  // namespace loopcrystal
