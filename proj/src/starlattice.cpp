#include "loopcrystal/starlattice.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace loopcrystal {

std::string ProjPoint::str() const {
    if (infinite) return "inf";
    std::ostringstream os;
    os << value.numerator();
    if (value.denominator() != 1) os << '/' << value.denominator();
    return os.str();
}

WeightData WeightData::make(std::vector<int> weights, std::vector<ProjPoint> lambda) {
    WeightData w;
    w.p = std::move(weights);
    while (w.p.size() < 3) w.p.push_back(1);
    if (lambda.empty()) {
        for (std::size_t i = 0; i < w.p.size(); ++i) {
            if (i == 0) lambda.push_back(ProjPoint::finite(0));
            else if (i == 1) lambda.push_back(ProjPoint::inf());
            else lambda.push_back(ProjPoint::finite(static_cast<std::int64_t>(i - 1)));
        }
    }
    while (lambda.size() < w.p.size())
        lambda.push_back(ProjPoint::finite(static_cast<std::int64_t>(lambda.size() - 1)));
    w.lambda = std::move(lambda);
    w.validate();
    return w;
}

std::int64_t WeightData::p_lcm() const {
    std::int64_t l = 1;
    for (int q : p) l = std::lcm(l, static_cast<std::int64_t>(q));
    return l;
}

void WeightData::validate() const {
    if (p.size() < 3) throw std::invalid_argument("at least three points required");
    if (lambda.size() != p.size()) throw std::invalid_argument("one parameter per point required");
    for (int q : p)
        if (q < 1) throw std::invalid_argument("weights must be positive");
    if (!(lambda[0] == ProjPoint::finite(0)) || !lambda[1].infinite ||
        !(lambda[2] == ProjPoint::finite(1)))
        throw std::invalid_argument("parameters must start 0, inf, 1");
    for (std::size_t a = 0; a < lambda.size(); ++a)
        for (std::size_t b = a + 1; b < lambda.size(); ++b)
            if (lambda[a] == lambda[b]) throw std::invalid_argument("parameters must be distinct");
}

StarLattice::StarLattice(WeightData w) : w_(std::move(w)), lcm_(w_.p_lcm()) { w_.validate(); }

static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

LElement StarLattice::normalize(const std::vector<std::int64_t>& coeffs, std::int64_t c_multiple) const {
    if (coeffs.size() != w_.p.size()) throw std::invalid_argument("coefficient count mismatch");
    LElement z;
    z.l = c_multiple;
    z.residues.resize(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const std::int64_t pi = w_.p[i];
        const std::int64_t q = floor_div(coeffs[i], pi);
        z.l += q;
        z.residues[i] = static_cast<int>(coeffs[i] - q * pi);
    }
    return z;
}

LElement StarLattice::zero() const { return LElement{0, std::vector<int>(w_.p.size(), 0)}; }
LElement StarLattice::c() const { return LElement{1, std::vector<int>(w_.p.size(), 0)}; }

LElement StarLattice::x(int i) const {
    std::vector<std::int64_t> a(w_.p.size(), 0);
    a[static_cast<std::size_t>(i)] = 1;
    return normalize(a);
}

LElement StarLattice::add(const LElement& a, const LElement& b) const {
    std::vector<std::int64_t> s(w_.p.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.residues[i] + b.residues[i];
    return normalize(s, a.l + b.l);
}

LElement StarLattice::neg(const LElement& a) const {
    std::vector<std::int64_t> s(w_.p.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = -a.residues[i];
    return normalize(s, -a.l);
}

LElement StarLattice::scale(const LElement& a, std::int64_t k) const {
    std::vector<std::int64_t> s(w_.p.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = k * a.residues[i];
    return normalize(s, k * a.l);
}

std::int64_t StarLattice::degree(const LElement& z) const {
    std::int64_t d = z.l * lcm_;
    for (std::size_t i = 0; i < z.residues.size(); ++i) d += z.residues[i] * (lcm_ / w_.p[i]);
    return d;
}

LElement StarLattice::omega() const {
    return normalize(std::vector<std::int64_t>(w_.p.size(), -1), n() - 2);
}

Q StarLattice::genus() const {
    std::int64_t s = (n() - 2) * lcm_;
    for (int q : w_.p) s -= lcm_ / q;
    return Q(1) + Q(s, 2);
}

std::int64_t StarLattice::monomial_count(const LElement& z) const {
    // Exponent a_2 is solved for; every other exponent is enumerated.
    if (z.l < 0) return 0;
    const std::size_t n = w_.p.size();
    std::vector<std::int64_t> hi(n), a(n, 0);
    for (std::size_t i = 0; i < n; ++i) hi[i] = i == 0 ? w_.p[i] * (z.l + 1) : (i == 1 ? 1 : w_.p[i]);
    std::int64_t count = 0;
    while (true) {
        LElement w = sub(z, normalize(a));
        bool only_second = true;
        for (std::size_t i = 0; i < n; ++i)
            if (i != 1 && w.residues[i] != 0) only_second = false;
        if (only_second && w.l * w_.p[1] + w.residues[1] >= 0) ++count;
        std::size_t k = 0;
        while (k < n && ++a[k] == hi[k]) a[k++] = 0;
        if (k == n) break;
    }
    return count;
}

bool StarLattice::effective_by_search(const LElement& z, std::int64_t bound) const {
    const std::size_t n = w_.p.size();
    std::vector<std::int64_t> a(n, 0);
    while (true) {
        LElement y = normalize(a);
        if (y.residues == z.residues && z.l - y.l >= 0 && z.l - y.l <= bound) return true;
        std::size_t k = 0;
        while (k < n && ++a[k] > bound) a[k++] = 0;
        if (k == n) return false;
    }
}

std::string StarLattice::str(const LElement& z) const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](std::int64_t k, const std::string& atom) {
        if (k == 0) return;
        if (k < 0) os << '-';
        else if (!first) os << '+';
        std::int64_t m = k < 0 ? -k : k;
        if (m != 1) os << m;
        os << atom;
        first = false;
    };
    term(z.l, "c");
    for (std::size_t i = 0; i < z.residues.size(); ++i) term(z.residues[i], "x" + std::to_string(i + 1));
    if (first) os << '0';
    return os.str();
}

}  // namespace loopcrystal
