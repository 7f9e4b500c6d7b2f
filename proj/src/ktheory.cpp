#include "loopcrystal/ktheory.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loopcrystal {

std::string Slope::str() const {
    if (infinite) return "inf";
    std::ostringstream os;
    os << q.numerator();
    if (q.denominator() != 1) os << '/' << q.denominator();
    return os.str();
}

Curve::Curve(WeightData w) : lat_(std::move(w)) {
    dim_ = 2;
    for (int i = 0; i < n(); ++i) {
        offset_.push_back(dim_);
        dim_ += p(i) - 1;
    }

    span_.push_back(lat_.zero());
    for (int i = 0; i < n(); ++i)
        for (int j = 1; j < p(i); ++j) span_.push_back(lat_.scale(lat_.x(i), j));
    span_.push_back(lat_.c());

    const auto s = static_cast<Eigen::Index>(span_.size());
    const LElement om = lat_.omega();
    span_gram_.resize(s, s);
    for (Eigen::Index a = 0; a < s; ++a)
        for (Eigen::Index b = 0; b < s; ++b) {
            const auto& x = span_[a];
            const auto& y = span_[b];
            span_gram_(a, b) = lat_.dim_sections(lat_.sub(y, x)) -
                               lat_.dim_sections(lat_.sub(lat_.add(x, om), y));
        }

    // e_r = [O]; delta = [O(c)] - [O]; S_{i,j} = [O(j x_i)] - [O((j-1) x_i)].
    to_span_ = IMat::Zero(s, dim_);
    to_span_(0, 0) = 1;
    to_span_(s - 1, 1) = 1;
    to_span_(0, 1) = -1;
    Eigen::Index t = 1;
    for (int i = 0; i < n(); ++i)
        for (int j = 1; j < p(i); ++j, ++t) {
            const Eigen::Index k = m_index(i, j);
            to_span_(t, k) += 1;
            to_span_(j == 1 ? 0 : t - 1, k) -= 1;
        }
    gram_ = to_span_.transpose() * span_gram_ * to_span_;
}

KClass Curve::O() const {
    KClass a = zero();
    a.v(0) = 1;
    return a;
}

KClass Curve::delta() const {
    KClass a = zero();
    a.v(1) = 1;
    return a;
}

KClass Curve::alpha(int i, int j) const {
    const int pi = p(i);
    j = ((j % pi) + pi) % pi;
    KClass a = zero();
    if (j != 0) {
        a.v(m_index(i, j)) = 1;
        return a;
    }
    a.v(1) = 1;
    for (int k = 1; k < pi; ++k) a.v(m_index(i, k)) = -1;
    return a;
}

KClass Curve::class_of_line_bundle(const LElement& x) const {
    KClass a = zero();
    a.v(0) = 1;
    a.v(1) = x.l;
    for (int i = 0; i < n(); ++i)
        for (int j = 1; j <= x.residues[static_cast<std::size_t>(i)]; ++j) a.v(m_index(i, j)) = 1;
    return a;
}

std::int64_t Curve::degree(const KClass& a) const {
    const std::int64_t pl = lat_.p_lcm();
    std::int64_t d = a.v(1) * pl;
    for (int i = 0; i < n(); ++i)
        for (int j = 1; j < p(i); ++j) d += a.v(m_index(i, j)) * (pl / p(i));
    return d;
}

Slope Curve::slope(const KClass& a) const {
    if (a.is_zero()) throw std::domain_error("zero class");
    if (rank(a) == 0) return Slope::inf();
    return Slope{false, Q(degree(a), rank(a))};
}

bool Curve::is_positive(const KClass& a) const {
    if (rank(a) != 0) return rank(a) > 0;
    std::int64_t need = 0;
    for (int i = 0; i < n(); ++i) {
        std::int64_t t = 0;
        for (int j = 1; j < p(i); ++j) t = std::max(t, -a.v(m_index(i, j)));
        need += t;
    }
    return a.v(1) - need >= 0;
}

KClass Curve::twist(const KClass& a, const LElement& x) const {
    const IVec coeff = to_span_ * a.v;
    KClass out = zero();
    for (Eigen::Index t = 0; t < coeff.size(); ++t)
        if (coeff(t) != 0) out += coeff(t) * class_of_line_bundle(lat_.add(span_[t], x));
    return out;
}

std::vector<HNType> Curve::hn_types(const KClass& a, int max_parts,
                                    const std::optional<HNBound>& bound) const {
    std::vector<HNType> out;
    if (a.is_zero()) {
        out.push_back({});
        return out;
    }
    if (!is_positive(a) || max_parts < 1) return out;
    if (rank(a) == 0) {
        out.push_back({{a}});
        return out;
    }
    if (!bound) throw std::invalid_argument("unbounded");

    std::vector<KClass> cands;
    IVec v = IVec::Constant(dim_, -bound->box);
    while (true) {
        KClass c{v};
        if (!c.is_zero() && rank(c) <= rank(a) && is_positive(c)) {
            Slope s = slope(c);
            if (bound->lo <= s && s <= bound->hi) cands.push_back(c);
        }
        Eigen::Index k = 0;
        while (k < dim_ && ++v(k) > bound->box) v(k++) = -bound->box;
        if (k == dim_) break;
    }
    std::sort(cands.begin(), cands.end());

    std::set<std::vector<KClass>> seen;
    std::vector<KClass> parts;
    std::function<void(const KClass&, std::optional<Slope>)> rec = [&](const KClass& rem,
                                                                       std::optional<Slope> prev) {
        if (rem.is_zero()) {
            if (seen.insert(parts).second) out.push_back({parts});
            return;
        }
        if (static_cast<int>(parts.size()) == max_parts) return;
        for (const auto& c : cands) {
            Slope s = slope(c);
            if (prev && !(s < *prev)) continue;
            KClass r = rem - c;
            if (rank(r) < 0 || (rank(r) == 0 && !r.is_zero())) continue;
            parts.push_back(c);
            rec(r, s);
            parts.pop_back();
        }
    };
    rec(a, std::nullopt);
    return out;
}

std::string Curve::str(const KClass& a) const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](std::int64_t k, const std::string& atom) {
        if (k == 0) return;
        if (!first) os << (k > 0 ? " + " : " - ");
        else if (k < 0) os << '-';
        std::int64_t m = k < 0 ? -k : k;
        if (m != 1) os << m << '*';
        os << atom;
        first = false;
    };
    term(a.v(0), "O");
    term(a.v(1), "delta");
    for (int i = 0; i < n(); ++i)
        for (int j = 1; j < p(i); ++j)
            term(a.v(m_index(i, j)), "S[" + std::to_string(i + 1) + "," + std::to_string(j) + "]");
    if (first) os << '0';
    return os.str();
}

}  // namespace loopcrystal
