#include <doctest.h>

#include "loopcrystal/catalog.hpp"

using namespace loopcrystal;

static std::vector<IndecLabel> battery(const Catalog& C) {
    const auto& X = C.curve();
    const auto& L = X.lattice();
    std::vector<IndecLabel> out;
    for (int k = -2; k <= 2; ++k)
        for (int i = 0; i < X.n(); ++i)
            for (int j = 0; j < X.p(i); ++j) out.push_back(C.line(L.add(L.scale(L.c(), k), L.scale(L.x(i), j))));
    for (int i = 0; i < X.n(); ++i)
        if (X.p(i) > 1)
            for (int j = 0; j < X.p(i); ++j)
                for (int l = 1; l <= 2 * X.p(i) + 1; ++l) out.push_back(C.exc(i, j, l));
    for (int pt = 0; pt < 2; ++pt)
        for (int d = 1; d <= 3; ++d) out.push_back(OrdTorsion{pt, d});
    return out;
}

TEST_CASE("classes of indecomposables") {
    Curve X(WeightData::make({3, 2, 1}));
    Catalog C(X);
    CHECK(C.class_of(C.exc(0, 1, 1)) == X.alpha(0, 1));
    CHECK(C.class_of(C.exc(0, 0, 3)) == X.delta());
    CHECK(C.class_of(C.exc(0, 2, 6)) == 2 * X.delta());
    CHECK(C.class_of(OrdTorsion{0, 4}) == 4 * X.delta());
    CHECK(C.exc(0, -1, 2).j == 2);
}

TEST_CASE("Euler form equals Hom minus Ext on every supported pair") {
    for (auto p : {std::vector<int>{2, 3, 1}, {4, 2, 2}, {2, 2, 2, 2}, {3, 3, 3}, {1, 1, 1}}) {
        Curve X(WeightData::make(p));
        Catalog C(X);
        auto b = battery(C);
        for (const auto& A : b)
            for (const auto& B : b) {
                auto h = C.hom_dim(A, B), e = C.ext_dim(A, B);
                CHECK(h >= 0);
                CHECK(e >= 0);
                CHECK(X.euler(C.class_of(A), C.class_of(B)) == h - e);
            }
        for (const auto& A : b) {
            CHECK(C.hom_dim(A, A) >= 1);
            if (C.is_rigid(A)) CHECK(X.euler(C.class_of(A), C.class_of(A)) == C.hom_dim(A, A));
        }
    }
}

TEST_CASE("small Hom values and rigidity") {
    Curve X(WeightData::make({3, 2, 2}));
    Catalog C(X);
    const auto& L = X.lattice();
    CHECK(C.hom_dim(C.line(L.zero()), C.line(L.x(0))) == 1);
    CHECK(C.hom_dim(C.exc(0, 1, 1), C.exc(0, 1, 1)) == 1);
    CHECK(C.hom_dim(C.exc(0, 0, 1), C.exc(0, 1, 1)) == 0);
    CHECK(C.is_rigid(C.line(L.zero())));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < X.p(i); ++j)
            for (int l = 1; l <= 2 * X.p(i); ++l) CHECK(C.is_rigid(C.exc(i, j, l)) == (l < X.p(i)));
    for (int d = 1; d <= 3; ++d) CHECK_FALSE(C.is_rigid(OrdTorsion{0, d}));
    CHECK_THROWS_WITH(C.hom_dim(RealBundle{X.O()}, C.exc(0, 0, 1)), "unsupported pair");
}

TEST_CASE("twist equivariance of line bundle Homs") {
    Curve X(WeightData::make({2, 3, 4}));
    Catalog C(X);
    const auto& L = X.lattice();
    auto t = L.add(L.x(1), L.scale(L.x(2), 3));
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b) {
            auto x = L.normalize({a, 0, 0}), y = L.normalize({0, b, 1});
            CHECK(C.hom_dim(C.line(x), C.line(y)) == C.hom_dim(C.line(L.add(x, t)), C.line(L.add(y, t))));
        }
}

TEST_CASE("real roots in the finite regime") {
    Curve X(WeightData::make({2, 2, 1}));
    Catalog C(X);
    auto roots = C.real_roots(2, 2);
    bool has_O = false;
    for (const auto& r : roots) {
        CHECK(X.euler(r, r) == 1);
        if (r == X.O()) has_O = true;
        if (X.rank(r) == 1) CHECK(std::holds_alternative<LineBundle>(C.bundle_label(r)));
    }
    CHECK(has_O);
    Curve T(WeightData::make({2, 2, 2, 2}));
    CHECK_THROWS_WITH(Catalog(T).real_roots(1, 1), "wrong regime");
}
