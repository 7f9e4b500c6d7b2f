#pragma once
// Symbolic indecomposable sheaves: classes, Hom/Ext dimensions, rigidity.
// Point indices are 0-based in code and 1-based in text and JSON.

#include <string>
#include <variant>
#include <vector>

#include "loopcrystal/ktheory.hpp"

namespace loopcrystal {

struct LineBundle {
    LElement x;
    friend auto operator<=>(const LineBundle&, const LineBundle&) = default;
    friend bool operator==(const LineBundle&, const LineBundle&) = default;
};

// S_j(l) at exceptional point i: head j, composition factors j, j-1, ..., j-l+1.
struct ExcTorsion {
    int i = 0, j = 0, l = 1;
    friend auto operator<=>(const ExcTorsion&, const ExcTorsion&) = default;
};

struct OrdTorsion {
    int pt = 0, len = 1;
    friend auto operator<=>(const OrdTorsion&, const OrdTorsion&) = default;
};

struct RealBundle {
    KClass a;
    friend bool operator==(const RealBundle& x, const RealBundle& y) { return x.a == y.a; }
    friend bool operator<(const RealBundle& x, const RealBundle& y) { return x.a < y.a; }
};

using IndecLabel = std::variant<LineBundle, ExcTorsion, OrdTorsion, RealBundle>;

class Catalog {
public:
    explicit Catalog(const Curve& X) : X_(X) {}
    const Curve& curve() const { return X_; }

    ExcTorsion exc(int i, int j, int l) const;  // reduces j mod p_i
    LineBundle line(const LElement& x) const { return {x}; }
    LineBundle line(std::int64_t k) const;  // O(k c)

    KClass class_of(const IndecLabel& a) const;
    std::int64_t hom_dim(const IndecLabel& a, const IndecLabel& b) const;  // throws "unsupported pair"
    std::int64_t ext_dim(const IndecLabel& a, const IndecLabel& b) const;
    IndecLabel twist_omega(const IndecLabel& a) const;
    bool is_rigid(const IndecLabel& a) const;
    bool is_torsion(const IndecLabel& a) const;

    // Positive real roots of rank 1..max_rank with every coordinate in
    // [-box, box] (g < 1 only). Rank-1 roots are line bundle classes.
    std::vector<KClass> real_roots(int max_rank, std::int64_t box) const;
    // Rank-1 root -> line bundle label; other roots -> RealBundle.
    IndecLabel bundle_label(const KClass& root) const;

    std::string str(const IndecLabel& a) const;

private:
    const Curve& X_;
};

}  // namespace loopcrystal
