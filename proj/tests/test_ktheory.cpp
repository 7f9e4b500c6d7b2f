#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "loopcrystal/ktheory.hpp"

using namespace loopcrystal;

static Curve curve(std::vector<int> p) { return Curve(WeightData::make(std::move(p))); }

TEST_CASE("line bundle classes") {
    auto X = curve({2, 2, 2});
    const auto& L = X.lattice();
    CHECK(X.class_of_line_bundle(L.zero()) == X.O());
    CHECK(X.class_of_line_bundle(L.c()) == X.O() + X.delta());
    CHECK(X.class_of_line_bundle(L.x(0)) == X.O() + X.alpha(0, 1));
    CHECK(X.euler(X.O(), X.class_of_line_bundle(L.c()) - X.O()) == 1);
    CHECK(X.dim() == 5);
}

TEST_CASE("Euler form basics") {
    for (auto p : {std::vector<int>{1, 1, 1}, {2, 2, 2, 2}, {2, 3, 4}, {3, 3, 3}}) {
        auto X = curve(p);
        CHECK(X.euler(X.O(), X.O()) == 1);
        CHECK(X.euler(X.delta(), X.delta()) == 0);
        CHECK(X.euler(X.O(), X.delta()) == 1);
        CHECK(X.euler(X.delta(), X.O()) == -1);
    }
}

TEST_CASE("Euler form on line bundles matches Hom minus Ext") {
    for (auto p : {std::vector<int>{2, 3, 5}, {2, 2, 2, 2}, {2, 3, 7}, {1, 1, 1}}) {
        auto X = curve(p);
        const auto& L = X.lattice();
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> d(-9, 9);
        auto om = L.omega();
        for (int t = 0; t < 300; ++t) {
            std::vector<std::int64_t> a(p.size()), b(p.size());
            for (auto& v : a) v = d(rng);
            for (auto& v : b) v = d(rng);
            auto x = L.normalize(a), y = L.normalize(b);
            std::int64_t direct = L.dim_sections(L.sub(y, x)) - L.dim_sections(L.sub(L.add(x, om), y));
            CHECK(X.euler(X.class_of_line_bundle(x), X.class_of_line_bundle(y)) == direct);
        }
    }
}

TEST_CASE("bilinearity and the dimension identity") {
    auto X = curve({2, 2, 2, 2});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-5, 5);
    auto rnd = [&] {
        KClass a = X.zero();
        for (Eigen::Index k = 0; k < X.dim(); ++k) a.v(k) = d(rng);
        return a;
    };
    for (int t = 0; t < 200; ++t) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK(X.euler(a + b, c) == X.euler(a, c) + X.euler(b, c));
        CHECK(X.euler(c, a + b) == X.euler(c, a) + X.euler(c, b));
        CHECK(-X.euler(a + b, a + b) == -X.euler(a, a) - X.euler(a, b) - X.euler(b, a) - X.euler(b, b));
        CHECK(X.rank(a + b) == X.rank(a) + X.rank(b));
        CHECK(X.degree(a + b) == X.degree(a) + X.degree(b));
    }
}

TEST_CASE("degree and slope") {
    auto X = curve({2, 3, 4});
    const auto& L = X.lattice();
    CHECK(X.slope(X.delta()) == Slope::inf());
    CHECK(X.slope(X.O()) == Slope{false, 0});
    CHECK(X.slope(X.class_of_line_bundle(L.c())) == Slope{false, 12});
    CHECK(X.degree(X.alpha(1, 2)) == 4);
    CHECK(X.degree(X.alpha(1, 0)) == 4);
    CHECK_THROWS_WITH(X.slope(X.zero()), "zero class");
    auto x = L.add(L.x(0), L.x(2));
    auto a = X.O() + X.alpha(2, 1);
    CHECK(X.slope(X.twist(a, x)).q == X.slope(a).q + Q(L.degree(x)));
}

TEST_CASE("positivity") {
    auto X = curve({2, 3, 1});
    CHECK(X.is_positive(X.O()));
    CHECK(X.is_positive(X.alpha(0, 0)));
    CHECK(X.is_positive(X.alpha(1, 0)));
    CHECK_FALSE(X.is_positive(-X.delta()));
    CHECK(X.is_positive(X.zero()));
    CHECK_FALSE(X.is_positive(X.alpha(1, 1) - X.alpha(1, 2)));
    CHECK(X.is_positive(X.O() - 5 * X.delta()));
    // Every non-negative combination of simples is positive, and every positive
    // rank-0 class in a small box is such a combination.
    std::set<KClass> sums;
    std::vector<KClass> simples{X.alpha(0, 0), X.alpha(0, 1), X.alpha(1, 0), X.alpha(1, 1), X.alpha(1, 2), X.delta()};
    std::function<void(std::size_t, KClass, int)> rec = [&](std::size_t k, KClass a, int budget) {
        if (k == simples.size()) { sums.insert(a); return; }
        for (int c = 0; c <= budget; ++c) rec(k + 1, a + c * simples[k], budget - c);
    };
    rec(0, X.zero(), 5);
    for (const auto& s : sums) CHECK(X.is_positive(s));
    IVec v = IVec::Constant(X.dim(), -2);
    v(0) = 0;
    while (true) {
        KClass a{v};
        if (X.is_positive(a) && X.degree(a) <= 5 * X.degree(X.alpha(1, 1))) CHECK(sums.count(a) == 1);
        Eigen::Index k = 1;
        while (k < X.dim() && ++v(k) > 2) v(k++) = -2;
        if (k == X.dim()) break;
    }
}

TEST_CASE("twisting") {
    auto X = curve({2, 2, 2, 2});
    const auto& L = X.lattice();
    CHECK(X.twist(X.O(), L.c()) == X.O() + X.delta());
    CHECK(X.twist(X.delta(), L.x(0)) == X.delta());
    CHECK(X.twist(X.alpha(0, 1), L.zero()) == X.alpha(0, 1));
    CHECK(X.twist(X.alpha(0, 1), L.x(0)) == X.alpha(0, 0));
    auto x = L.add(L.x(1), L.x(3));
    CHECK(X.twist(X.class_of_line_bundle(L.x(0)), x) == X.class_of_line_bundle(L.add(L.x(0), x)));
}

TEST_CASE("HN types") {
    auto X = curve({2, 2, 2, 2});
    auto t = X.hn_types(X.delta(), 3);
    REQUIRE(t.size() == 1);
    CHECK(t[0].parts == std::vector<KClass>{X.delta()});
    CHECK_THROWS_WITH(X.hn_types(X.O(), 2), "unbounded");
    HNBound b{Slope{false, 0}, Slope::inf(), 1};
    auto u = X.hn_types(X.O() + X.delta(), 2, b);
    bool found = false, single = false;
    for (const auto& h : u) {
        if (h.parts == std::vector<KClass>{X.delta(), X.O()}) found = true;
        if (h.parts == std::vector<KClass>{X.O() + X.delta()}) single = true;
        Slope prev = Slope::inf();
        KClass sum = X.zero();
        for (std::size_t k = 0; k < h.parts.size(); ++k) {
            if (k) CHECK(X.slope(h.parts[k]) < prev);
            prev = X.slope(h.parts[k]);
            CHECK(X.is_positive(h.parts[k]));
            sum += h.parts[k];
        }
        CHECK(sum == X.O() + X.delta());
    }
    CHECK(found);
    CHECK(single);
}
