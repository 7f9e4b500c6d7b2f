#pragma once
// Sampled Higgs fields f: F -> F(-2) on P^1 for F = (+) O(a_k) (+) torsion
// blocks O_y^(m) at random affine points, with exact kernel and quotient
// computations over Fp.
//
// Global sections of F(d) are coordinatized on the affine chart: a line
// bundle O(a) contributes polynomials in u of degree <= a + d, a torsion
// block of length m contributes k[t]/t^m with t = u - y.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "loopcrystal/components.hpp"
#include "loopcrystal/linalg.hpp"
#include "loopcrystal/poly.hpp"

namespace loopcrystal {

struct P1Higgs {
    std::vector<int> degs;
    Partition nu;
    std::vector<Fp> points;                       // support point of each torsion block
    std::vector<std::vector<Poly>> f1;            // f1[k2][k]: O(a_k) -> O(a_k2 - 2)
    std::vector<std::vector<std::vector<Fp>>> f3; // f3[i][k]: O(a_k) -> block i, in k[t]/t^m
    std::vector<std::vector<Fp>> f2;              // f2[i]: block i -> block i, in t k[t]/t^m
};

struct P1KernelProfile {
    std::vector<int> splitting;  // (ker f)^vec, decreasing
    int torsion = 0;
};

struct P1Quotient {
    std::int64_t rank = 0, degree = 0;
    std::vector<int> splitting;  // quotient^vec, decreasing
    Partition nu;                // torsion of the quotient at distinct points
};

struct P1SampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

P1Higgs p1_sample(const std::vector<int>& degs, const Partition& nu, std::uint64_t seed);
// Matrix of f on global sections: H^0(F(d)) -> H^0(F(d-2)).
Mat<Fp> p1_section_map(const P1Higgs& h, int d);
// dim Hom(O(b), ker f).
int p1_hom_into_kernel(const P1Higgs& h, int b);
P1KernelProfile p1_kernel_profile(const P1Higgs& h);
int p1_rk_line(const P1Higgs& h, int a);
// Quotient of F by a generic injection O(a)^s -> ker f.
P1Quotient p1_quotient_invariants(const P1Higgs& h, int a, int s, std::uint64_t seed);

// Generic values over `trials` independent samples of the component (V, nu).
struct P1OperatorSample {
    int eps = 0;
    int hom_dim = 0;
    P1Quotient fmax;
};
P1OperatorSample p1_sample_operator(const std::vector<int>& degs, const Partition& nu, int a, int trials,
                                    std::uint64_t seed);

}  // namespace loopcrystal
