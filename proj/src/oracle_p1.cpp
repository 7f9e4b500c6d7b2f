#include "loopcrystal/oracle_p1.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace loopcrystal {

namespace {

int size_of(int a, int d) { return std::max(0, a + d + 1); }

// (t + c)^e truncated mod t^m, as coefficients of t^0..t^{m-1}.
std::vector<Fp> shifted_power(Fp c, int e, int m) {
    std::vector<Fp> r(static_cast<std::size_t>(m), Fp(0));
    if (m == 0) return r;
    r[0] = 1;
    for (int k = 0; k < e; ++k) {
        for (int q = m - 1; q >= 1; --q) r[static_cast<std::size_t>(q)] = r[static_cast<std::size_t>(q)] * c + r[static_cast<std::size_t>(q - 1)];
        r[0] = r[0] * c;
    }
    return r;
}

std::vector<Fp> truncated_product(const std::vector<Fp>& a, const std::vector<Fp>& b, int m) {
    std::vector<Fp> r(static_cast<std::size_t>(m), Fp(0));
    for (int i = 0; i < m && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j < m && j < static_cast<int>(b.size()); ++j) r[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return r;
}

Poly random_poly(int degree, std::mt19937_64& rng) {
    std::vector<Fp> c;
    for (int k = 0; k <= degree; ++k) c.push_back(Fp::random(rng));
    return Poly(c);
}

struct Layout {
    std::vector<int> off, size;
    int total = 0;
};

Layout layout(const P1Higgs& h, int d) {
    Layout L;
    for (int a : h.degs) {
        L.off.push_back(L.total);
        L.size.push_back(size_of(a, d));
        L.total += L.size.back();
    }
    for (int m : h.nu) {
        L.off.push_back(L.total);
        L.size.push_back(m);
        L.total += m;
    }
    return L;
}

}  // namespace

P1Higgs p1_sample(const std::vector<int>& degs, const Partition& nu, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    P1Higgs h;
    h.degs = degs;
    h.nu = nu;
    const std::size_t r = degs.size();
    h.f1.assign(r, std::vector<Poly>(r));
    for (std::size_t k2 = 0; k2 < r; ++k2)
        for (std::size_t k = 0; k < r; ++k) {
            const int e = degs[k2] - 2 - degs[k];
            if (e >= 0) h.f1[k2][k] = random_poly(e, rng);
        }
    for (int m : nu) {
        Fp y;
        do {
            y = Fp::random(rng);
        } while (std::find(h.points.begin(), h.points.end(), y) != h.points.end());
        h.points.push_back(y);
        std::vector<std::vector<Fp>> row;
        for (std::size_t k = 0; k < r; ++k) {
            std::vector<Fp> phi;
            for (int q = 0; q < m; ++q) phi.push_back(Fp::random(rng));
            row.push_back(phi);
        }
        h.f3.push_back(row);
        std::vector<Fp> g(static_cast<std::size_t>(m), Fp(0));
        for (int q = 1; q < m; ++q) g[static_cast<std::size_t>(q)] = Fp::random(rng);
        if (m > 1 && g[1] == Fp(0)) g[1] = 1;
        h.f2.push_back(g);
    }
    return h;
}

Mat<Fp> p1_section_map(const P1Higgs& h, int d) {
    const Layout src = layout(h, d), dst = layout(h, d - 2);
    Mat<Fp> M = Mat<Fp>::Zero(dst.total, src.total);
    const std::size_t r = h.degs.size();
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t k2 = 0; k2 < r; ++k2) {
            const Poly& g = h.f1[k2][k];
            for (int e = 0; e < src.size[k]; ++e)
                for (int q = 0; q <= g.degree(); ++q)
                    M(dst.off[k2] + e + q, src.off[k] + e) += g.c[static_cast<std::size_t>(q)];
        }
        for (std::size_t i = 0; i < h.nu.size(); ++i) {
            const int m = h.nu[i];
            for (int e = 0; e < src.size[k]; ++e) {
                auto tau = truncated_product(h.f3[i][k], shifted_power(h.points[i], e, m), m);
                for (int q = 0; q < m; ++q) M(dst.off[r + i] + q, src.off[k] + e) += tau[static_cast<std::size_t>(q)];
            }
        }
    }
    for (std::size_t i = 0; i < h.nu.size(); ++i) {
        const int m = h.nu[i];
        for (int e = 0; e < m; ++e) {
            std::vector<Fp> unit_e(static_cast<std::size_t>(m), Fp(0));
            unit_e[static_cast<std::size_t>(e)] = 1;
            auto img = truncated_product(h.f2[i], unit_e, m);
            for (int q = 0; q < m; ++q) M(dst.off[r + i] + q, src.off[r + i] + e) += img[static_cast<std::size_t>(q)];
        }
    }
    return M;
}

int p1_hom_into_kernel(const P1Higgs& h, int b) {
    const Mat<Fp> M = p1_section_map(h, -b);
    return static_cast<int>(M.cols() - rank(M));
}

static int generic_kernel_rank(const P1Higgs& h, std::uint64_t salt) {
    const auto r = static_cast<Eigen::Index>(h.degs.size());
    if (r == 0) return 0;
    std::mt19937_64 rng(salt);
    const Fp u0 = Fp::random(rng);
    Mat<Fp> F(r, r);
    for (Eigen::Index k2 = 0; k2 < r; ++k2)
        for (Eigen::Index k = 0; k < r; ++k) F(k2, k) = h.f1[static_cast<std::size_t>(k2)][static_cast<std::size_t>(k)].eval(u0);
    return static_cast<int>(r - rank(F));
}

P1KernelProfile p1_kernel_profile(const P1Higgs& h) {
    P1KernelProfile out;
    const int rk = generic_kernel_rank(h, 0x9e3779b97f4a7c15ULL);
    const int top = h.degs.empty() ? 0 : *std::max_element(h.degs.begin(), h.degs.end()) + 1;
    out.torsion = p1_hom_into_kernel(h, top);
    int nu_total = std::accumulate(h.nu.begin(), h.nu.end(), 0);
    int floor_b = top - 2 * static_cast<int>(h.degs.size()) * (top + 2) - nu_total - 8;
    if (!h.degs.empty()) floor_b = std::min(floor_b, *std::min_element(h.degs.begin(), h.degs.end()) - 2 * static_cast<int>(h.degs.size()) - nu_total - 8);
    int H_above = out.torsion, count_above = 0;
    for (int b = top - 1; count_above < rk; --b) {
        if (b < floor_b) throw P1SampleError("kernel splitting window exhausted");
        const int H = p1_hom_into_kernel(h, b);
        const int count = H - H_above;
        for (int k = count_above; k < count; ++k) out.splitting.push_back(b);
        count_above = count;
        H_above = H;
    }
    return out;
}

int p1_rk_line(const P1Higgs& h, int a) { return p1_hom_into_kernel(h, a) - p1_hom_into_kernel(h, a + 1); }

P1Quotient p1_quotient_invariants(const P1Higgs& h, int a, int s, std::uint64_t seed) {
    const std::size_t r = h.degs.size(), B = h.nu.size();
    P1Quotient out;
    out.rank = static_cast<std::int64_t>(r) - s;
    out.degree = std::accumulate(h.degs.begin(), h.degs.end(), std::int64_t{0}) +
                 std::accumulate(h.nu.begin(), h.nu.end(), std::int64_t{0}) - static_cast<std::int64_t>(s) * a;
    if (s == 0) {
        out.splitting = h.degs;
        std::sort(out.splitting.rbegin(), out.splitting.rend());
        out.nu = h.nu;
        return out;
    }
    const Mat<Fp> M = p1_section_map(h, -a);
    const Mat<Fp> K = nullspace(M);
    if (K.cols() < s || p1_rk_line(h, a) < s) throw P1SampleError("not enough copies");
    const Layout L = layout(h, -a);
    std::mt19937_64 rng(seed);

    for (int attempt = 0; attempt < 16; ++attempt) {
        Mat<Fp> coeff(K.cols(), s);
        for (Eigen::Index i = 0; i < coeff.rows(); ++i)
            for (Eigen::Index j = 0; j < s; ++j) coeff(i, j) = Fp::random(rng);
        const Mat<Fp> sec = K * coeff;
        // Injectivity at a random point of the affine chart.
        const Fp u0 = Fp::random(rng);
        Mat<Fp> ev(static_cast<Eigen::Index>(r), s);
        for (std::size_t k = 0; k < r; ++k)
            for (int j = 0; j < s; ++j) {
                Fp v = 0, pw = 1;
                for (int e = 0; e < L.size[k]; ++e, pw *= u0) v += sec(L.off[k] + e, j) * pw;
                ev(static_cast<Eigen::Index>(k), j) = v;
            }
        if (rank(ev) != s) continue;

        // Section polynomials of the injection.
        std::vector<std::vector<Poly>> iota(r, std::vector<Poly>(static_cast<std::size_t>(s)));
        for (std::size_t k = 0; k < r; ++k)
            for (int j = 0; j < s; ++j) {
                std::vector<Fp> c;
                for (int e = 0; e < L.size[k]; ++e) c.push_back(sec(L.off[k] + e, j));
                iota[k][static_cast<std::size_t>(j)] = Poly(c);
            }

        // Splitting of the quotient's vector bundle part from dim Hom(G, O(b)).
        std::vector<int> split;
        if (out.rank > 0) {
            const int lo = *std::min_element(h.degs.begin(), h.degs.end());
            const int hi = static_cast<int>(out.degree - (out.rank - 1) * lo);
            auto D = [&](int b) {
                std::vector<int> off, sz;
                int unknowns = 0;
                for (int ak : h.degs) {
                    off.push_back(unknowns);
                    sz.push_back(std::max(0, b - ak + 1));
                    unknowns += sz.back();
                }
                const int per = std::max(0, b - a + 1);
                Mat<Fp> sys = Mat<Fp>::Zero(per * s, unknowns);
                for (int j = 0; j < s; ++j)
                    for (std::size_t k = 0; k < r; ++k) {
                        const Poly& g = iota[k][static_cast<std::size_t>(j)];
                        for (int e = 0; e < sz[k]; ++e)
                            for (int q = 0; q <= g.degree(); ++q) sys(j * per + e + q, off[k] + e) += g.c[static_cast<std::size_t>(q)];
                    }
                return static_cast<int>(unknowns - rank(sys));
            };
            std::vector<int> N;  // N[b - lo + 1] = #{g <= b}
            int prev = D(lo - 2);
            for (int b = lo - 1; b <= hi; ++b) {
                const int cur = D(b);
                N.push_back(cur - prev);
                prev = cur;
            }
            for (std::size_t t = 1; t < N.size(); ++t)
                for (int k = 0; k < N[t] - N[t - 1]; ++k) split.push_back(lo - 1 + static_cast<int>(t));
            if (static_cast<std::int64_t>(split.size()) != out.rank) continue;
        }

        // Torsion of the quotient on the affine chart via the Smith form.
        PolyMatrix rel(r + B, std::vector<Poly>(B + static_cast<std::size_t>(s)));
        for (std::size_t i = 0; i < B; ++i) rel[r + i][i] = pow(Poly::linear(h.points[i]), h.nu[i]);
        for (int j = 0; j < s; ++j) {
            const std::size_t col = B + static_cast<std::size_t>(j);
            for (std::size_t k = 0; k < r; ++k) rel[k][col] = iota[k][static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < B; ++i) {
                Poly lift;
                for (int q = 0; q < h.nu[i]; ++q)
                    lift = lift + Poly::constant(sec(L.off[r + i] + q, j)) * pow(Poly::linear(h.points[i]), q);
                rel[r + i][col] = lift;
            }
        }
        const auto inv = invariant_factors(rel);
        if (static_cast<std::int64_t>(r + B - inv.size()) != out.rank) continue;
        int nonunit = 0, affine_length = 0;
        for (const auto& d : inv)
            if (d.degree() > 0) {
                ++nonunit;
                affine_length += d.degree();
            }
        if (nonunit > 1) continue;
        const std::int64_t vec_deg = std::accumulate(split.begin(), split.end(), std::int64_t{0});
        if (out.degree - vec_deg != affine_length) continue;
        Partition nu;
        if (nonunit == 1) {
            auto g = squarefree_factors(inv.back());
            for (std::size_t k = 0; k < g.size(); ++k)
                for (int c = 0; c < g[k].degree(); ++c) nu.push_back(static_cast<int>(k) + 1);
        }
        std::sort(nu.rbegin(), nu.rend());
        std::sort(split.rbegin(), split.rend());
        out.splitting = split;
        out.nu = nu;
        return out;
    }
    throw P1SampleError("no generic injection found");
}

P1OperatorSample p1_sample_operator(const std::vector<int>& degs, const Partition& nu, int a, int trials,
                                    std::uint64_t seed) {
    std::mt19937_64 master(seed);
    P1OperatorSample out;
    out.eps = -1;
    std::uint64_t best_seed = 0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t sd = master();
        const auto h = p1_sample(degs, nu, sd);
        const int e = p1_rk_line(h, a);
        if (out.eps < 0 || e < out.eps) {
            out.eps = e;
            out.hom_dim = p1_hom_into_kernel(h, a);
            best_seed = sd;
        }
    }
    out.fmax = p1_quotient_invariants(p1_sample(degs, nu, best_seed), a, out.eps, master());
    return out;
}

}  // namespace loopcrystal
