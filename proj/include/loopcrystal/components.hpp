#pragma once
// Labels of irreducible components of the global nilpotent cone and their
// enumeration: torsion (partitions and aperiodic multisegments), the finite
// regime (real-root bundle parts) and the tubular regime (HN leaves).

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "loopcrystal/catalog.hpp"

namespace loopcrystal {

using Partition = std::vector<int>;  // weakly decreasing

// Segment (j, l) = S_j(l): head j, composition factors j, j-1, ..., j-l+1.
using Segment = std::pair<int, int>;

struct Multisegment {
    int point = 0;  // 0-based exceptional point
    std::map<Segment, int> mult;

    bool empty() const { return mult.empty(); }
    int total_dim() const;
    std::vector<int> dims(int p) const;
    bool aperiodic(int p) const;
    void add(int j, int l, int count = 1);  // j already reduced
    friend bool operator==(const Multisegment&, const Multisegment&) = default;
    friend auto operator<=>(const Multisegment&, const Multisegment&) = default;
};

struct ComponentLabel {
    std::vector<IndecLabel> bundle;  // sorted multiset of rank > 0 indecomposables
    std::vector<KClass> hn;          // unreduced rank > 0 HN leaves, slopes decreasing
    Partition ordinary;
    std::vector<Multisegment> exceptional;  // nonempty only, sorted by point

    void normalize();
    bool is_torsion() const { return bundle.empty() && hn.empty(); }
    bool empty() const { return is_torsion() && ordinary.empty() && exceptional.empty(); }
    const Multisegment* at_point(int i) const;
    Multisegment& at_point_mut(int i);

    friend bool operator==(const ComponentLabel& a, const ComponentLabel& b) {
        return a.bundle == b.bundle && a.hn == b.hn && a.ordinary == b.ordinary && a.exceptional == b.exceptional;
    }
    friend bool operator<(const ComponentLabel& a, const ComponentLabel& b);
};

// Summand slope window and coordinate box for bundle parts in the finite regime.
struct FiniteBound {
    Slope lo, hi;
    std::int64_t box = 2;
};

class Components {
public:
    explicit Components(const Catalog& C) : C_(C), X_(C.curve()) {}
    const Catalog& catalog() const { return C_; }
    const Curve& curve() const { return X_; }

    KClass multisegment_class(const Multisegment& m) const;
    KClass weight(const ComponentLabel& Z) const;
    std::int64_t expected_dim(const ComponentLabel& Z) const;

    // Decompositions of a rank-0 class: (l, per-point dimension vectors).
    struct Stratum {
        int l;
        std::vector<std::vector<int>> dims;  // indexed by point; empty for weight-1 points
    };
    std::vector<Stratum> strata(const KClass& a) const;

    std::vector<ComponentLabel> enumerate_torsion(const KClass& a) const;
    // Cardinality of enumerate_torsion computed without enumeration.
    std::int64_t count_torsion(const KClass& a) const;

    // Default window: summand slopes between min(0, slope(a)) and max(0, slope(a)).
    FiniteBound default_bound(const KClass& a) const;
    std::vector<ComponentLabel> enumerate_finite(const KClass& a,
                                                 const std::optional<FiniteBound>& bound = std::nullopt) const;
    std::vector<ComponentLabel> enumerate_tubular(const KClass& a, int max_parts, const HNBound& bound) const;

    std::string str(const ComponentLabel& Z) const;

private:
    const Catalog& C_;
    const Curve& X_;
};

// Combinatorics shared with the oracle and crystal modules.
std::vector<Partition> partitions(int n);
std::int64_t partition_count(int n);
Partition conjugate(const Partition& nu);
std::vector<Partition> mu_prefixes(const Partition& nu);
std::vector<Multisegment> aperiodic_multisegments(int point, int p, const std::vector<int>& dims);
std::vector<Multisegment> all_multisegments(int point, int p, const std::vector<int>& dims);
// Kostant-type count of multisets of positive roots of the affine sl_p root
// system with dimension vector `dims`; equals the aperiodic multisegment count.
std::int64_t root_multiset_count(int p, const std::vector<int>& dims);
std::vector<int> segment_dims(int p, int j, int l);

}  // namespace loopcrystal
