#include <doctest.h>

#include "loopcrystal/oracle_p1.hpp"

using namespace loopcrystal;

static std::vector<int> bundle(int l, int n) {
    std::vector<int> d(static_cast<std::size_t>(l), 1);
    d.insert(d.end(), static_cast<std::size_t>(n), 0);
    return d;
}

TEST_CASE("trivial bundle has zero field") {
    auto h = p1_sample({0, 0, 0}, {}, 1);
    auto prof = p1_kernel_profile(h);
    CHECK(prof.splitting == std::vector<int>{0, 0, 0});
    CHECK(prof.torsion == 0);
    CHECK(p1_rk_line(h, 0) == 3);
    CHECK(p1_rk_line(h, 1) == 0);
    CHECK(p1_rk_line(h, -1) == 3);
    CHECK(p1_hom_into_kernel(h, -1) == 6);
}

TEST_CASE("a gap of two forces one isomorphism") {
    auto h = p1_sample({2, 0}, {}, 7);
    auto prof = p1_kernel_profile(h);
    CHECK(prof.splitting == std::vector<int>{2});
    CHECK(p1_rk_line(h, 2) == 1);
    CHECK(p1_rk_line(h, 0) == 1);
    auto g = p1_sample({3, 0}, {}, 8);
    CHECK(p1_kernel_profile(g).splitting == std::vector<int>{3});
}

TEST_CASE("torsion block is killed by a generic map") {
    auto h = p1_sample({0}, {1}, 3);
    auto prof = p1_kernel_profile(h);
    CHECK(prof.splitting == std::vector<int>{-1});
    CHECK(prof.torsion == 1);
    auto t = p1_sample({}, {2}, 4);
    auto pt = p1_kernel_profile(t);
    CHECK(pt.splitting.empty());
    CHECK(pt.torsion == 1);
}

TEST_CASE("closed forms on O(1)^l + O^n") {
    for (int l = 0; l <= 5; ++l)
        for (int n = 0; l + n <= 5; ++n) {
            if (l + n == 0) continue;
            CAPTURE(l);
            CAPTURE(n);
            auto s = p1_sample_operator(bundle(l, n), {}, -1, 3, 100 + 10 * l + n);
            CHECK(s.eps == n + l);
            CHECK(s.fmax.rank == 0);
            CHECK(s.fmax.degree == n + 2 * l);
            CHECK(s.fmax.nu == Partition(static_cast<std::size_t>(n + 2 * l), 1));
            auto so = p1_sample_operator(bundle(l, n), {}, 0, 3, 200 + 10 * l + n);
            CHECK(so.eps == n + l);
            if (n >= 2 || (n == 1 && l >= 1)) {
                auto h = p1_sample(bundle(l, n), {}, 300 + 10 * l + n);
                auto q = p1_quotient_invariants(h, -1, 1, 5);
                CHECK(q.nu.empty());
                if (n >= 2) {
                    std::vector<int> want(static_cast<std::size_t>(l + 1), 1);
                    want.insert(want.end(), static_cast<std::size_t>(n - 2), 0);
                    CHECK(q.splitting == want);
                } else {
                    std::vector<int> want{2};
                    want.insert(want.end(), static_cast<std::size_t>(l - 1), 1);
                    CHECK(q.splitting == want);
                }
            }
        }
}

TEST_CASE("quotient errors and degenerate cases") {
    auto h = p1_sample({0}, {}, 9);
    CHECK_THROWS_AS(p1_quotient_invariants(h, 0, 2, 1), P1SampleError);
    auto q = p1_quotient_invariants(h, 0, 0, 1);
    CHECK(q.splitting == std::vector<int>{0});
    auto z = p1_quotient_invariants(h, 0, 1, 1);
    CHECK(z.rank == 0);
    CHECK(z.degree == 0);
    CHECK(z.nu.empty());
}
