#pragma once
// Univariate polynomials over Fp: Euclidean arithmetic, Smith normal form of
// polynomial matrices, and Yun's squarefree factorization.

#include <utility>
#include <vector>

#include "loopcrystal/field.hpp"

namespace loopcrystal {

// Coefficients from the constant term up; no trailing zeros.
struct Poly {
    std::vector<Fp> c;

    Poly() = default;
    Poly(std::vector<Fp> coeffs) : c(std::move(coeffs)) { trim(); }  // NOLINT
    static Poly constant(Fp a) { return Poly(std::vector<Fp>{a}); }
    static Poly linear(Fp root);  // u - root

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    Fp lead() const { return c.back(); }
    Fp eval(Fp x) const;
    Poly derivative() const;
    Poly monic() const;
    void trim();

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);
Poly pow(const Poly& a, int e);

using PolyMatrix = std::vector<std::vector<Poly>>;  // row-major

// Invariant factors (monic, nonzero, in divisibility order) of a polynomial
// matrix; the number of them is the rank.
std::vector<Poly> invariant_factors(PolyMatrix m);

// f = prod_k g_k^k with g_k squarefree and pairwise coprime; returns g_1, g_2, ...
std::vector<Poly> squarefree_factors(const Poly& f);

}  // namespace loopcrystal
