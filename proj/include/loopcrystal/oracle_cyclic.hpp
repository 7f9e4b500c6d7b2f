#pragma once
// Matrix models of nilpotent representations of the cyclic quiver with
// their Higgs fields, used to check Hom dimensions, rigidity and the crystal
// operators at an exceptional point by sampling.
//
// Orientation: phi[k] maps V_k -> V_{k-1}, so vertex k carries the
// composition factor S_k; phibar[k] maps V_k -> V_{k+1} and represents an
// element of Hom(M, M(omega)). Commutation reads
//     phibar[k-1] * phi[k] == phi[k+1] * phibar[k].

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "loopcrystal/components.hpp"
#include "loopcrystal/linalg.hpp"

namespace loopcrystal {

template <class S>
struct CyclicPair {
    int p = 1;
    std::vector<int> dims;
    std::vector<Mat<S>> phi;     // phi[k]: V_k -> V_{k-1}
    std::vector<Mat<S>> phibar;  // phibar[k]: V_k -> V_{k+1}

    int prev(int k) const { return (k + p - 1) % p; }
    int next(int k) const { return (k + 1) % p; }
    int total() const {
        int t = 0;
        for (int d : dims) t += d;
        return t;
    }
};

// Rank profile: rank of the length-t path composite starting at each vertex.
using RankProfile = std::vector<std::vector<int>>;  // [vertex][t-1]

namespace cyclic {

inline int mod(int a, int p) { return ((a % p) + p) % p; }

template <class S>
CyclicPair<S> zero_pair(int p, const std::vector<int>& dims) {
    CyclicPair<S> c;
    c.p = p;
    c.dims = dims;
    for (int k = 0; k < p; ++k) {
        c.phi.push_back(Mat<S>::Zero(dims[static_cast<std::size_t>(c.prev(k))], dims[static_cast<std::size_t>(k)]));
        c.phibar.push_back(Mat<S>::Zero(dims[static_cast<std::size_t>(c.next(k))], dims[static_cast<std::size_t>(k)]));
    }
    return c;
}

template <class S>
CyclicPair<S> build_rep(const Multisegment& m, int p) {
    auto c = zero_pair<S>(p, m.dims(p));
    std::vector<int> used(static_cast<std::size_t>(p), 0);
    for (const auto& [seg, count] : m.mult)
        for (int copy = 0; copy < count; ++copy) {
            int prev_vertex = -1, prev_index = -1;
            for (int t = 0; t < seg.second; ++t) {
                const int v = mod(seg.first - t, p);
                const int idx = used[static_cast<std::size_t>(v)]++;
                if (t > 0) c.phi[static_cast<std::size_t>(prev_vertex)](idx, prev_index) = S(1);
                prev_vertex = v;
                prev_index = idx;
            }
        }
    return c;
}

// Composite of phi along a path of length t starting at vertex k.
template <class S>
Mat<S> phi_path(const CyclicPair<S>& c, int k, int t) {
    Mat<S> m = Mat<S>::Identity(c.dims[static_cast<std::size_t>(k)], c.dims[static_cast<std::size_t>(k)]);
    int v = k;
    for (int s = 0; s < t; ++s) {
        m = (c.phi[static_cast<std::size_t>(v)] * m).eval();
        v = c.prev(v);
    }
    return m;
}

template <class S>
RankProfile rank_profile(const CyclicPair<S>& c) {
    RankProfile r(static_cast<std::size_t>(c.p));
    const int N = c.total();
    for (int k = 0; k < c.p; ++k)
        for (int t = 1; t <= N; ++t) r[static_cast<std::size_t>(k)].push_back(static_cast<int>(rank(phi_path(c, k, t))));
    return r;
}

// Basis of module maps A -> B(shift), where B(shift)_k = B_{k+shift}.
// Each basis element is a tuple of matrices h[k]: A_k -> B_{k+shift}.
template <class S>
std::vector<std::vector<Mat<S>>> hom_basis(const CyclicPair<S>& A, const CyclicPair<S>& B, int shift) {
    const int p = A.p;
    std::vector<int> off(static_cast<std::size_t>(p) + 1, 0);
    auto bdim = [&](int k) { return B.dims[static_cast<std::size_t>(mod(k + shift, p))]; };
    for (int k = 0; k < p; ++k) off[static_cast<std::size_t>(k) + 1] = off[static_cast<std::size_t>(k)] + bdim(k) * A.dims[static_cast<std::size_t>(k)];
    const int unknowns = off[static_cast<std::size_t>(p)];
    // Equation at vertex k: phiB[k+shift] * h[k] == h[k-1] * phiA[k], as maps A_k -> B_{k-1+shift}.
    int eqs = 0;
    for (int k = 0; k < p; ++k) eqs += bdim(k - 1) * A.dims[static_cast<std::size_t>(k)];
    Mat<S> sys = Mat<S>::Zero(eqs, unknowns);
    int row = 0;
    auto var = [&](int k, int r, int col) { return off[static_cast<std::size_t>(k)] + col * bdim(k) + r; };
    for (int k = 0; k < p; ++k) {
        const int km = mod(k - 1, p);
        const Mat<S>& pb = B.phi[static_cast<std::size_t>(mod(k + shift, p))];  // B_{k+s} -> B_{k-1+s}
        const Mat<S>& pa = A.phi[static_cast<std::size_t>(k)];                   // A_k -> A_{k-1}
        const int ak = A.dims[static_cast<std::size_t>(k)];
        for (int r = 0; r < bdim(k - 1); ++r)
            for (int col = 0; col < ak; ++col, ++row) {
                for (int q = 0; q < bdim(k); ++q)
                    if (pb(r, q) != S(0)) sys(row, var(k, q, col)) += pb(r, q);
                for (int q = 0; q < A.dims[static_cast<std::size_t>(km)]; ++q)
                    if (pa(q, col) != S(0)) sys(row, var(km, r, q)) -= pa(q, col);
            }
    }
    Mat<S> ns = nullspace(sys);
    std::vector<std::vector<Mat<S>>> out;
    for (Eigen::Index b = 0; b < ns.cols(); ++b) {
        std::vector<Mat<S>> h;
        for (int k = 0; k < p; ++k) {
            Mat<S> m(bdim(k), A.dims[static_cast<std::size_t>(k)]);
            for (int col = 0; col < m.cols(); ++col)
                for (int r = 0; r < m.rows(); ++r) m(r, col) = ns(var(k, r, col), b);
            h.push_back(m);
        }
        out.push_back(std::move(h));
    }
    return out;
}

template <class S>
std::vector<std::vector<Mat<S>>> commutant_fiber(const CyclicPair<S>& c) {
    return hom_basis(c, c, 1);
}

template <class S>
Mat<S> total_phi(const CyclicPair<S>& c, bool bar) {
    const int N = c.total();
    std::vector<int> off(static_cast<std::size_t>(c.p) + 1, 0);
    for (int k = 0; k < c.p; ++k) off[static_cast<std::size_t>(k) + 1] = off[static_cast<std::size_t>(k)] + c.dims[static_cast<std::size_t>(k)];
    Mat<S> T = Mat<S>::Zero(N, N);
    for (int k = 0; k < c.p; ++k) {
        const int to = bar ? c.next(k) : c.prev(k);
        const Mat<S>& m = bar ? c.phibar[static_cast<std::size_t>(k)] : c.phi[static_cast<std::size_t>(k)];
        T.block(off[static_cast<std::size_t>(to)], off[static_cast<std::size_t>(k)], m.rows(), m.cols()) = m;
    }
    return T;
}

template <class S>
bool commutes(const CyclicPair<S>& c) {
    const Mat<S> a = total_phi(c, false), b = total_phi(c, true);
    return is_zero(a * b - b * a);
}

template <class S>
bool is_nilpotent(const CyclicPair<S>& c) {
    const int N = c.total();
    if (N == 0) return true;
    Mat<S> s = total_phi(c, false) + total_phi(c, true);
    Mat<S> acc = s;
    for (int k = 1; k < N; ++k) acc = (acc * s).eval();
    return is_zero(acc);
}

// Random element `sum c_b * basis_b` with c_b drawn by `draw`.
template <class S, class Draw>
std::vector<Mat<S>> random_combination(const std::vector<std::vector<Mat<S>>>& basis,
                                       const std::vector<Mat<S>>& shape, Draw&& draw) {
    std::vector<Mat<S>> out;
    for (const auto& m : shape) out.push_back(Mat<S>::Zero(m.rows(), m.cols()));
    for (const auto& b : basis) {
        const S cb = draw();
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += cb * b[k];
    }
    return out;
}

}  // namespace cyclic

// Scalar drawing shared by the samplers: Fp draws the full field, Rational
// draws small integers so that exact audits stay cheap.
template <class S>
S draw_scalar(std::mt19937_64& rng);
template <>
inline Fp draw_scalar<Fp>(std::mt19937_64& rng) { return Fp::random(rng); }
template <>
inline Rational draw_scalar<Rational>(std::mt19937_64& rng) {
    return Rational(static_cast<std::int64_t>(rng() % 2001) - 1000);
}

struct CyclicSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class S>
CyclicPair<S> sample_generic(const Multisegment& m, int p, std::uint64_t seed, int retries = 8) {
    auto c = cyclic::build_rep<S>(m, p);
    auto fiber = cyclic::commutant_fiber(c);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < retries; ++attempt) {
        c.phibar = cyclic::random_combination(fiber, c.phibar, [&] { return draw_scalar<S>(rng); });
        if (cyclic::is_nilpotent(c)) return c;
    }
    throw CyclicSampleError("nilpotency repeatedly violated");
}

// Rank profile of a multisegment computed combinatorially.
RankProfile multisegment_profile(const Multisegment& m, int p);

template <class S>
Multisegment recover_type(const CyclicPair<S>& c, int point) {
    const RankProfile r = cyclic::rank_profile(c);
    for (const auto& cand : all_multisegments(point, c.p, c.dims))
        if (multisegment_profile(cand, c.p) == r) return cand;
    throw std::logic_error("no match");
}

// Data of the injections S_j(l)^s -> ker(phibar) for one sampled pair.
template <class S>
struct KernelInjections {
    Mat<S> U;       // basis of {u in V_j : phi^l u = 0, phibar u = 0}
    Eigen::Index eps = 0;       // rank of u -> phi^{l-1} u on U
    Eigen::Index hom_dim = 0;   // dim Hom(S_j(l), ker phibar) = dim U
};

template <class S>
KernelInjections<S> kernel_injections(const CyclicPair<S>& c, int j, int l) {
    KernelInjections<S> out;
    const int dj = c.dims[static_cast<std::size_t>(j)];
    Mat<S> pl = cyclic::phi_path(c, j, l);
    const Mat<S>& fb = c.phibar[static_cast<std::size_t>(j)];
    Mat<S> stacked(pl.rows() + fb.rows(), dj);
    stacked << pl, fb;
    out.U = nullspace(stacked);
    out.hom_dim = out.U.cols();
    out.eps = out.U.cols() ? rank(cyclic::phi_path(c, j, l - 1) * out.U) : 0;
    return out;
}

template <class S>
Mat<S> inverse(const Mat<S>& m) {
    const Eigen::Index n = m.rows();
    Mat<S> aug(n, 2 * n);
    aug << m, Mat<S>::Identity(n, n);
    auto e = rref(aug);
    if (static_cast<Eigen::Index>(e.pivots.size()) < n || (n > 0 && e.pivots.back() >= n))
        throw std::logic_error("singular matrix");
    return e.reduced.rightCols(n);
}

// Quotient of the module part of c by the submodule generated by the
// columns of `gens` (vectors at vertex j).
template <class S>
CyclicPair<S> quotient_by(const CyclicPair<S>& c, int j, int l, const Mat<S>& gens) {
    const int p = c.p;
    std::vector<Mat<S>> W(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) W[static_cast<std::size_t>(k)] = Mat<S>(c.dims[static_cast<std::size_t>(k)], 0);
    for (int t = 0; t < l; ++t) {
        const int v = cyclic::mod(j - t, p);
        Mat<S> img = cyclic::phi_path(c, j, t) * gens;
        Mat<S>& w = W[static_cast<std::size_t>(v)];
        Mat<S> grown(w.rows(), w.cols() + img.cols());
        grown << w, img;
        w = column_basis(grown);
    }
    std::vector<Mat<S>> Qm(static_cast<std::size_t>(p)), Cm(static_cast<std::size_t>(p));
    std::vector<int> qd(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
        const int d = c.dims[static_cast<std::size_t>(k)];
        Mat<S> basis = W[static_cast<std::size_t>(k)];
        const Eigen::Index w = basis.cols();
        Mat<S> comp(d, 0);
        for (int e = 0; e < d; ++e) {
            Mat<S> trial(d, basis.cols() + 1);
            trial << basis, Mat<S>::Identity(d, d).col(e);
            if (rank(trial) > basis.cols()) {
                basis = trial;
                Mat<S> grown(d, comp.cols() + 1);
                grown << comp, Mat<S>::Identity(d, d).col(e);
                comp = grown;
            }
        }
        Qm[static_cast<std::size_t>(k)] = inverse(basis).bottomRows(d - w);
        Cm[static_cast<std::size_t>(k)] = comp;
        qd[static_cast<std::size_t>(k)] = static_cast<int>(d - w);
    }
    auto q = cyclic::zero_pair<S>(p, qd);
    for (int k = 0; k < p; ++k)
        q.phi[static_cast<std::size_t>(k)] =
            Qm[static_cast<std::size_t>(c.prev(k))] * c.phi[static_cast<std::size_t>(k)] * Cm[static_cast<std::size_t>(k)];
    return q;
}

// Sampled generic epsilon and f_max for the color S_j(l) at the point of m.
struct CyclicOperatorSample {
    int eps = 0;
    int hom_dim = 0;
    Multisegment fmax;
};

template <class S>
CyclicOperatorSample sample_operator(const Multisegment& m, int p, int j, int l, int trials, std::uint64_t seed) {
    CyclicOperatorSample out;
    out.eps = -1;
    std::mt19937_64 master(seed);
    std::optional<CyclicPair<S>> best;
    std::optional<KernelInjections<S>> best_k;
    for (int t = 0; t < trials; ++t) {
        auto c = sample_generic<S>(m, p, master());
        auto k = kernel_injections(c, j, l);
        if (out.eps < 0 || k.eps < out.eps) {
            out.eps = static_cast<int>(k.eps);
            out.hom_dim = static_cast<int>(k.hom_dim);
            best = std::move(c);
            best_k = std::move(k);
        }
    }
    if (out.eps <= 0) {
        out.eps = 0;
        out.fmax = m;
        return out;
    }
    // Generic injection: s random combinations of U whose socle images are independent.
    std::mt19937_64 rng(master());
    const Mat<S> socle_map = cyclic::phi_path(*best, j, l - 1);
    for (int attempt = 0; attempt < 16; ++attempt) {
        Mat<S> coeff(best_k->U.cols(), out.eps);
        for (Eigen::Index a = 0; a < coeff.rows(); ++a)
            for (Eigen::Index b = 0; b < coeff.cols(); ++b) coeff(a, b) = draw_scalar<S>(rng);
        Mat<S> gens = best_k->U * coeff;
        if (rank(socle_map * gens) != out.eps) continue;
        out.fmax = recover_type(quotient_by(*best, j, l, gens), m.point);
        return out;
    }
    throw CyclicSampleError("no generic injection found");
}

}  // namespace loopcrystal
