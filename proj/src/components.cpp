#include "loopcrystal/components.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace loopcrystal {

namespace {
int mod(int a, int p) { return ((a % p) + p) % p; }
}  // namespace

std::vector<int> segment_dims(int p, int j, int l) {
    std::vector<int> d(static_cast<std::size_t>(p), 0);
    for (int k = 0; k < l; ++k) ++d[static_cast<std::size_t>(mod(j - k, p))];
    return d;
}

int Multisegment::total_dim() const {
    int n = 0;
    for (const auto& [s, c] : mult) n += s.second * c;
    return n;
}

std::vector<int> Multisegment::dims(int p) const {
    std::vector<int> d(static_cast<std::size_t>(p), 0);
    for (const auto& [s, c] : mult) {
        auto sd = segment_dims(p, s.first, s.second);
        for (int k = 0; k < p; ++k) d[static_cast<std::size_t>(k)] += c * sd[static_cast<std::size_t>(k)];
    }
    return d;
}

bool Multisegment::aperiodic(int p) const {
    std::map<int, int> heads;  // length -> number of distinct heads present
    for (const auto& [s, c] : mult)
        if (c > 0) ++heads[s.second];
    for (const auto& [l, h] : heads)
        if (h >= p) return false;
    return true;
}

void Multisegment::add(int j, int l, int count) {
    if (count == 0) return;
    int& c = mult[{j, l}];
    c += count;
    if (c < 0) throw std::logic_error("negative segment multiplicity");
    if (c == 0) mult.erase({j, l});
}

void ComponentLabel::normalize() {
    std::sort(bundle.begin(), bundle.end());
    std::sort(ordinary.begin(), ordinary.end(), std::greater<>());
    while (!ordinary.empty() && ordinary.back() == 0) ordinary.pop_back();
    std::erase_if(exceptional, [](const Multisegment& m) { return m.empty(); });
    std::sort(exceptional.begin(), exceptional.end());
}

const Multisegment* ComponentLabel::at_point(int i) const {
    for (const auto& m : exceptional)
        if (m.point == i) return &m;
    return nullptr;
}

Multisegment& ComponentLabel::at_point_mut(int i) {
    for (auto& m : exceptional)
        if (m.point == i) return m;
    exceptional.push_back(Multisegment{i, {}});
    return exceptional.back();
}

bool operator<(const ComponentLabel& a, const ComponentLabel& b) {
    if (a.bundle != b.bundle) return a.bundle < b.bundle;
    if (!(a.hn == b.hn)) return a.hn < b.hn;
    if (a.ordinary != b.ordinary) return a.ordinary < b.ordinary;
    return a.exceptional < b.exceptional;
}

// ---------------------------------------------------------------- combinatorics

std::vector<Partition> partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(rem, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(rem - k, k);
            cur.pop_back();
        }
    };
    if (n >= 0) rec(n, n);
    return out;
}

std::int64_t partition_count(int n) {
    // Euler's pentagonal recurrence.
    if (n < 0) return 0;
    std::vector<std::int64_t> P(static_cast<std::size_t>(n) + 1, 0);
    P[0] = 1;
    for (int m = 1; m <= n; ++m) {
        std::int64_t s = 0;
        for (int k = 1;; ++k) {
            int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > m) break;
            std::int64_t sign = (k % 2) ? 1 : -1;
            s += sign * P[static_cast<std::size_t>(m - g1)];
            if (g2 <= m) s += sign * P[static_cast<std::size_t>(m - g2)];
        }
        P[static_cast<std::size_t>(m)] = s;
    }
    return P[static_cast<std::size_t>(n)];
}

Partition conjugate(const Partition& nu) {
    Partition mu;
    if (nu.empty()) return mu;
    for (int i = 1; i <= nu.front(); ++i) {
        int c = 0;
        for (int part : nu) c += part >= i;
        mu.push_back(c);
    }
    return mu;
}

std::vector<Partition> mu_prefixes(const Partition& nu) {
    std::vector<Partition> out;
    for (std::size_t i = 1; i <= nu.size(); ++i) out.emplace_back(nu.begin(), nu.begin() + static_cast<long>(i));
    return out;
}

std::vector<Multisegment> all_multisegments(int point, int p, const std::vector<int>& dims) {
    int total = 0;
    for (int d : dims) total += d;
    std::vector<Segment> types;
    for (int l = 1; l <= total; ++l)
        for (int j = 0; j < p; ++j) types.emplace_back(j, l);
    std::vector<Multisegment> out;
    Multisegment cur{point, {}};
    std::vector<int> rem = dims;
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (k == types.size()) return;
        const auto [j, l] = types[k];
        if (l > left) return;
        rec(k + 1, left);
        auto sd = segment_dims(p, j, l);
        int c = 0;
        while (true) {
            bool fits = true;
            for (int v = 0; v < p; ++v) fits &= rem[static_cast<std::size_t>(v)] >= sd[static_cast<std::size_t>(v)];
            if (!fits) break;
            for (int v = 0; v < p; ++v) rem[static_cast<std::size_t>(v)] -= sd[static_cast<std::size_t>(v)];
            ++c;
            left -= l;
            cur.add(j, l);
            rec(k + 1, left);
        }
        for (int v = 0; v < p; ++v) rem[static_cast<std::size_t>(v)] += c * sd[static_cast<std::size_t>(v)];
        cur.add(j, l, -c);
    };
    rec(0, total);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Multisegment> aperiodic_multisegments(int point, int p, const std::vector<int>& dims) {
    auto all = all_multisegments(point, p, dims);
    std::erase_if(all, [p](const Multisegment& m) { return !m.aperiodic(p); });
    return all;
}

std::int64_t root_multiset_count(int p, const std::vector<int>& dims) {
    int total = 0;
    for (int d : dims) total += d;
    std::vector<std::vector<int>> roots;
    for (int l = 1; l <= total; ++l) {
        if (l % p != 0) {
            for (int j = 0; j < p; ++j) roots.push_back(segment_dims(p, j, l));
        } else {
            for (int copy = 0; copy < p - 1; ++copy) roots.push_back(std::vector<int>(static_cast<std::size_t>(p), l / p));
        }
    }
    std::map<std::pair<std::size_t, std::vector<int>>, std::int64_t> memo;
    std::function<std::int64_t(std::size_t, const std::vector<int>&)> count = [&](std::size_t k,
                                                                                  const std::vector<int>& v) {
        if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) return std::int64_t{1};
        if (k == roots.size()) return std::int64_t{0};
        auto key = std::make_pair(k, v);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::int64_t s = 0;
        std::vector<int> w = v;
        while (true) {
            s += count(k + 1, w);
            bool ok = true;
            for (std::size_t t = 0; t < w.size(); ++t) {
                w[t] -= roots[k][t];
                ok &= w[t] >= 0;
            }
            if (!ok) break;
        }
        memo[key] = s;
        return s;
    };
    return count(0, dims);
}

// ---------------------------------------------------------------- Components

KClass Components::multisegment_class(const Multisegment& m) const {
    KClass a = X_.zero();
    const auto d = m.dims(X_.p(m.point));
    for (int k = 0; k < X_.p(m.point); ++k) a += static_cast<std::int64_t>(d[static_cast<std::size_t>(k)]) * X_.alpha(m.point, k);
    return a;
}

KClass Components::weight(const ComponentLabel& Z) const {
    KClass a = X_.zero();
    for (const auto& b : Z.bundle) a += C_.class_of(b);
    for (const auto& h : Z.hn) a += h;
    for (int part : Z.ordinary) a += static_cast<std::int64_t>(part) * X_.delta();
    for (const auto& m : Z.exceptional) a += multisegment_class(m);
    return a;
}

std::int64_t Components::expected_dim(const ComponentLabel& Z) const {
    const KClass w = weight(Z);
    return -X_.euler(w, w);
}

std::vector<Components::Stratum> Components::strata(const KClass& a) const {
    if (X_.rank(a) != 0) throw std::invalid_argument("rank-0 class required");
    std::vector<Stratum> out;
    if (!X_.is_positive(a)) return out;
    const int n = X_.n();
    std::vector<std::int64_t> tmin(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < X_.p(i); ++j) tmin[static_cast<std::size_t>(i)] = std::max(tmin[static_cast<std::size_t>(i)], -a.v(X_.m_index(i, j)));
    std::vector<std::int64_t> t(static_cast<std::size_t>(n), 0);
    std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t left) {
        if (i == n) {
            Stratum s{static_cast<int>(left), std::vector<std::vector<int>>(static_cast<std::size_t>(n))};
            for (int k = 0; k < n; ++k) {
                if (X_.p(k) == 1) continue;
                auto& d = s.dims[static_cast<std::size_t>(k)];
                d.push_back(static_cast<int>(t[static_cast<std::size_t>(k)]));
                for (int j = 1; j < X_.p(k); ++j) d.push_back(static_cast<int>(a.v(X_.m_index(k, j)) + t[static_cast<std::size_t>(k)]));
            }
            out.push_back(std::move(s));
            return;
        }
        if (X_.p(i) == 1) {
            rec(i + 1, left);
            return;
        }
        for (std::int64_t ti = tmin[static_cast<std::size_t>(i)]; ti <= left; ++ti) {
            t[static_cast<std::size_t>(i)] = ti;
            rec(i + 1, left - ti);
        }
    };
    rec(0, a.v(1));
    return out;
}

std::vector<ComponentLabel> Components::enumerate_torsion(const KClass& a) const {
    std::vector<ComponentLabel> out;
    for (const auto& s : strata(a)) {
        std::vector<std::vector<Multisegment>> per_point;
        for (int i = 0; i < X_.n(); ++i)
            if (X_.p(i) > 1) per_point.push_back(aperiodic_multisegments(i, X_.p(i), s.dims[static_cast<std::size_t>(i)]));
        for (const auto& nu : partitions(s.l)) {
            ComponentLabel Z;
            Z.ordinary = nu;
            std::function<void(std::size_t)> rec = [&](std::size_t k) {
                if (k == per_point.size()) {
                    ComponentLabel W = Z;
                    W.normalize();
                    out.push_back(std::move(W));
                    return;
                }
                for (const auto& m : per_point[k]) {
                    Z.exceptional.push_back(m);
                    rec(k + 1);
                    Z.exceptional.pop_back();
                }
            };
            rec(0);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t Components::count_torsion(const KClass& a) const {
    std::int64_t total = 0;
    for (const auto& s : strata(a)) {
        std::int64_t c = partition_count(s.l);
        for (int i = 0; i < X_.n(); ++i)
            if (X_.p(i) > 1) c *= root_multiset_count(X_.p(i), s.dims[static_cast<std::size_t>(i)]);
        total += c;
    }
    return total;
}

FiniteBound Components::default_bound(const KClass& a) const {
    if (X_.rank(a) == 0) return {Slope{false, 0}, Slope{false, 0}, 2};
    const Q s = X_.slope(a).q;
    return {Slope{false, std::min(Q(0), s)}, Slope{false, std::max(Q(0), s)}, 2};
}

std::vector<ComponentLabel> Components::enumerate_finite(const KClass& a,
                                                         const std::optional<FiniteBound>& bound) const {
    if (!(X_.genus() < Q(1))) throw std::invalid_argument("wrong regime");
    if (X_.rank(a) == 0) return enumerate_torsion(a);
    if (X_.rank(a) < 0) return {};
    const FiniteBound b = bound ? *bound : default_bound(a);
    if (b.lo.infinite || b.hi.infinite) throw std::invalid_argument("unbounded");

    const std::int64_t R = X_.rank(a), P = X_.lattice().p_lcm();
    std::vector<KClass> roots;
    for (std::int64_t r = 1; r <= R; ++r) {
        const Q lo = b.lo.q * Q(r), hi = b.hi.q * Q(r);
        const std::int64_t dlo = boost::rational_cast<std::int64_t>(lo / Q(P)) - b.box * X_.n() - 1;
        const std::int64_t dhi = boost::rational_cast<std::int64_t>(hi / Q(P)) + b.box * X_.n() + 1;
        const Eigen::Index dim = X_.dim();
        IVec v = IVec::Constant(dim, -b.box);
        v(0) = r;
        v(1) = dlo;
        while (true) {
            KClass c{v};
            if (X_.euler(c, c) == 1) {
                Q deg(X_.degree(c));
                if (lo <= deg && deg <= hi) roots.push_back(c);
            }
            Eigen::Index k = 1;
            while (k < dim) {
                const std::int64_t top = k == 1 ? dhi : b.box;
                const std::int64_t bottom = k == 1 ? dlo : -b.box;
                if (++v(k) <= top) break;
                v(k++) = bottom;
            }
            if (k == dim) break;
        }
    }
    std::sort(roots.begin(), roots.end());

    std::vector<ComponentLabel> out;
    std::vector<IndecLabel> chosen;
    std::function<void(std::size_t, const KClass&)> rec = [&](std::size_t k, const KClass& rem) {
        if (X_.rank(rem) == 0) {
            if (!X_.is_positive(rem)) return;
            for (auto Z : enumerate_torsion(rem)) {
                Z.bundle = chosen;
                Z.normalize();
                out.push_back(std::move(Z));
            }
            return;
        }
        for (std::size_t t = k; t < roots.size(); ++t) {
            if (X_.rank(roots[t]) > X_.rank(rem)) continue;
            chosen.push_back(C_.bundle_label(roots[t]));
            rec(t, rem - roots[t]);
            chosen.pop_back();
        }
    };
    rec(0, a);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ComponentLabel> Components::enumerate_tubular(const KClass& a, int max_parts, const HNBound& bound) const {
    if (X_.genus() != Q(1)) throw std::invalid_argument("wrong regime");
    std::vector<ComponentLabel> out;
    for (const auto& h : X_.hn_types(a, max_parts, bound)) {
        std::vector<KClass> leaves;
        std::vector<ComponentLabel> tops{ComponentLabel{}};
        for (const auto& part : h.parts) {
            if (X_.rank(part) == 0) tops = enumerate_torsion(part);
            else leaves.push_back(part);
        }
        for (auto Z : tops) {
            Z.hn = leaves;
            out.push_back(std::move(Z));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Components::str(const ComponentLabel& Z) const {
    std::ostringstream os;
    os << '(';
    if (Z.bundle.empty() && Z.hn.empty()) os << '0';
    for (std::size_t k = Z.bundle.size(); k-- > 0;) os << C_.str(Z.bundle[k]) << (k ? "+" : "");
    for (std::size_t k = 0; k < Z.hn.size(); ++k)
        os << (k || !Z.bundle.empty() ? " | " : "") << "HN[" << X_.str(Z.hn[k]) << ']';
    os << "; (";
    for (std::size_t k = 0; k < Z.ordinary.size(); ++k) os << (k ? "," : "") << Z.ordinary[k];
    os << ')';
    for (const auto& m : Z.exceptional) {
        os << "; m" << m.point + 1 << '=';
        bool first = true;
        for (const auto& [s, c] : m.mult) {
            os << (first ? "" : "+");
            if (c != 1) os << c;
            os << '[' << s.first << ';' << s.second << ')';
            first = false;
        }
    }
    os << ')';
    return os.str();
}

}  // namespace loopcrystal
