#include "loopcrystal/catalog.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace loopcrystal {

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int mod(int a, int p) { return ((a % p) + p) % p; }

// dim Hom(S_a(l), S_b(m)) for uniserial torsion at one exceptional point.
std::int64_t serial_hom(int a, int l, int b, int m, int p) {
    std::int64_t n = 0;
    for (int k = 1; k <= std::min(l, m); ++k)
        if (mod(b - m + k - a, p) == 0) ++n;
    return n;
}
}  // namespace

ExcTorsion Catalog::exc(int i, int j, int l) const {
    if (i < 0 || i >= X_.n()) throw std::invalid_argument("point index out of range");
    if (l < 1) throw std::invalid_argument("length must be positive");
    return {i, mod(j, X_.p(i)), l};
}

LineBundle Catalog::line(std::int64_t k) const { return {X_.lattice().scale(X_.lattice().c(), k)}; }

KClass Catalog::class_of(const IndecLabel& a) const {
    return std::visit(overloaded{
                          [&](const LineBundle& b) { return X_.class_of_line_bundle(b.x); },
                          [&](const ExcTorsion& t) {
                              KClass s = X_.zero();
                              for (int k = 0; k < t.l; ++k) s += X_.alpha(t.i, t.j - k);
                              return s;
                          },
                          [&](const OrdTorsion& t) { return static_cast<std::int64_t>(t.len) * X_.delta(); },
                          [&](const RealBundle& r) { return r.a; },
                      },
                      a);
}

bool Catalog::is_torsion(const IndecLabel& a) const {
    return std::holds_alternative<ExcTorsion>(a) || std::holds_alternative<OrdTorsion>(a);
}

std::int64_t Catalog::hom_dim(const IndecLabel& a, const IndecLabel& b) const {
    const auto& L = X_.lattice();
    if (std::holds_alternative<RealBundle>(a) || std::holds_alternative<RealBundle>(b))
        throw std::invalid_argument("unsupported pair");
    if (is_torsion(a) && !is_torsion(b)) return 0;
    if (auto* x = std::get_if<LineBundle>(&a)) {
        if (auto* y = std::get_if<LineBundle>(&b)) return L.dim_sections(L.sub(y->x, x->x));
        if (auto* t = std::get_if<OrdTorsion>(&b)) return t->len;
        const auto& t = std::get<ExcTorsion>(b);
        const int r = x->x.residues[static_cast<std::size_t>(t.i)];
        std::int64_t n = 0;
        for (int k = 0; k < t.l; ++k)
            if (mod(t.j - k - r, X_.p(t.i)) == 0) ++n;
        return n;
    }
    if (auto* s = std::get_if<ExcTorsion>(&a)) {
        auto* t = std::get_if<ExcTorsion>(&b);
        if (!t || t->i != s->i) return 0;
        return serial_hom(s->j, s->l, t->j, t->l, X_.p(s->i));
    }
    const auto& s = std::get<OrdTorsion>(a);
    auto* t = std::get_if<OrdTorsion>(&b);
    if (!t || t->pt != s.pt) return 0;
    return std::min(s.len, t->len);
}

IndecLabel Catalog::twist_omega(const IndecLabel& a) const {
    if (auto* x = std::get_if<LineBundle>(&a)) return LineBundle{X_.lattice().add(x->x, X_.lattice().omega())};
    if (auto* t = std::get_if<ExcTorsion>(&a)) return exc(t->i, t->j - 1, t->l);
    if (std::holds_alternative<OrdTorsion>(a)) return a;
    throw std::invalid_argument("unsupported pair");
}

std::int64_t Catalog::ext_dim(const IndecLabel& a, const IndecLabel& b) const {
    return hom_dim(b, twist_omega(a));
}

bool Catalog::is_rigid(const IndecLabel& a) const {
    if (std::holds_alternative<RealBundle>(a)) return true;
    return ext_dim(a, a) == 0;
}

std::vector<KClass> Catalog::real_roots(int max_rank, std::int64_t box) const {
    if (!(X_.genus() < Q(1))) throw std::invalid_argument("wrong regime");
    std::vector<KClass> out;
    const Eigen::Index dim = X_.dim();
    for (int r = 1; r <= max_rank; ++r) {
        IVec v = IVec::Constant(dim, -box);
        v(0) = r;
        while (true) {
            KClass a{v};
            if (X_.euler(a, a) == 1) out.push_back(a);
            Eigen::Index k = 1;
            while (k < dim && ++v(k) > box) v(k++) = -box;
            if (k == dim) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

IndecLabel Catalog::bundle_label(const KClass& root) const {
    if (X_.rank(root) == 1) {
        std::vector<int> res(static_cast<std::size_t>(X_.n()), 0);
        bool ok = true;
        for (int i = 0; i < X_.n() && ok; ++i) {
            int k = 0;
            while (k + 1 < X_.p(i) && root.v(X_.m_index(i, k + 1)) == 1) ++k;
            for (int j = k + 1; j < X_.p(i); ++j)
                if (root.v(X_.m_index(i, j)) != 0) ok = false;
            res[static_cast<std::size_t>(i)] = k;
        }
        if (ok) return LineBundle{LElement{root.v(1), res}};
    }
    return RealBundle{root};
}

std::string Catalog::str(const IndecLabel& a) const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const LineBundle& b) {
                       if (b.x == X_.lattice().zero()) os << 'O';
                       else os << "O(" << X_.lattice().str(b.x) << ')';
                   },
                   [&](const ExcTorsion& t) { os << "S(" << t.i + 1 << ',' << t.j << ',' << t.l << ')'; },
                   [&](const OrdTorsion& t) { os << "Ox(" << t.pt << ',' << t.len << ')'; },
                   [&](const RealBundle& r) { os << "E[" << X_.str(r.a) << ']'; },
               },
               a);
    return os.str();
}

}  // namespace loopcrystal
