#pragma once
// Grothendieck group K(X) in coordinates (r, d, m_{i,j}) with its Euler form,
// degree, slope, positivity, twisting and HN-type enumeration.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "loopcrystal/starlattice.hpp"

namespace loopcrystal {

using IVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Coordinates: v(0) = r, v(1) = d, then m_{i,j} point by point.
struct KClass {
    IVec v;

    friend KClass operator+(const KClass& a, const KClass& b) { return {a.v + b.v}; }
    friend KClass operator-(const KClass& a, const KClass& b) { return {a.v - b.v}; }
    friend KClass operator-(const KClass& a) { return {-a.v}; }
    friend KClass operator*(std::int64_t k, const KClass& a) { return {k * a.v}; }
    KClass& operator+=(const KClass& b) { v += b.v; return *this; }
    KClass& operator-=(const KClass& b) { v -= b.v; return *this; }
    friend bool operator==(const KClass& a, const KClass& b) {
        return a.v.size() == b.v.size() && a.v == b.v;
    }
    friend bool operator<(const KClass& a, const KClass& b) {
        return std::lexicographical_compare(a.v.data(), a.v.data() + a.v.size(), b.v.data(),
                                            b.v.data() + b.v.size());
    }
    bool is_zero() const { return v.isZero(); }
};

// A slope in Q or +infinity.
struct Slope {
    bool infinite = false;
    Q q = 0;
    static Slope inf() { return {true, 0}; }
    friend bool operator==(const Slope& a, const Slope& b) {
        return a.infinite == b.infinite && (a.infinite || a.q == b.q);
    }
    friend bool operator<(const Slope& a, const Slope& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.q < b.q;
    }
    friend bool operator<=(const Slope& a, const Slope& b) { return !(b < a); }
    friend bool operator>(const Slope& a, const Slope& b) { return b < a; }
    std::string str() const;
};

struct HNType {
    std::vector<KClass> parts;  // largest slope first
};

struct HNBound {
    Slope lo;
    Slope hi = Slope::inf();
    std::int64_t box = 4;  // |coordinate| bound for every part
};

class Curve {
public:
    explicit Curve(WeightData w);

    const StarLattice& lattice() const { return lat_; }
    int n() const { return lat_.n(); }
    int p(int i) const { return lat_.p(i); }  // 0-based
    Eigen::Index dim() const { return dim_; }
    Q genus() const { return lat_.genus(); }

    // Coordinate index of m_{i,j}; i 0-based, 1 <= j <= p_i - 1.
    Eigen::Index m_index(int i, int j) const { return offset_[static_cast<std::size_t>(i)] + j - 1; }

    KClass zero() const { return {IVec::Zero(dim_)}; }
    KClass O() const;
    KClass delta() const;
    // Simple torsion class alpha_{i,j} at point i (0-based) for j in Z/p_i.
    KClass alpha(int i, int j) const;
    KClass class_of_line_bundle(const LElement& x) const;

    std::int64_t euler(const KClass& a, const KClass& b) const { return a.v.dot(gram_ * b.v); }
    const IMat& gram() const { return gram_; }
    // Gram matrix on the spanning classes [O(x)], 0 <= x <= c, straight from dim S.
    const IMat& spanning_gram() const { return span_gram_; }
    const std::vector<LElement>& spanning_elements() const { return span_; }

    std::int64_t rank(const KClass& a) const { return a.v(0); }
    std::int64_t degree(const KClass& a) const;
    Slope slope(const KClass& a) const;  // throws on the zero class
    bool is_positive(const KClass& a) const;
    KClass twist(const KClass& a, const LElement& x) const;
    std::vector<HNType> hn_types(const KClass& a, int max_parts,
                                 const std::optional<HNBound>& bound = std::nullopt) const;

    std::string str(const KClass& a) const;

private:
    StarLattice lat_;
    Eigen::Index dim_;
    std::vector<Eigen::Index> offset_;
    std::vector<LElement> span_;
    IMat span_gram_;
    IMat to_span_;  // column k: spanning-basis coefficients of coordinate vector e_k
    IMat gram_;
};

}  // namespace loopcrystal
