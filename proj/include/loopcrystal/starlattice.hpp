#pragma once
// The grading group L(p) of a weighted projective line: normal forms,
// degree, dualizing element, genus and graded section dimensions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace loopcrystal {

using Q = boost::rational<std::int64_t>;

// A point of P^1 over Q; `infinite` marks the point at infinity.
struct ProjPoint {
    bool infinite = false;
    Q value = 0;
    static ProjPoint inf() { return {true, 0}; }
    static ProjPoint finite(Q q) { return {false, q}; }
    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    std::string str() const;
};

struct WeightData {
    std::vector<int> p;
    std::vector<ProjPoint> lambda;

    // Pads to at least three points; default parameters 0, inf, 1, 2, 3, ...
    static WeightData make(std::vector<int> weights, std::vector<ProjPoint> lambda = {});
    int n() const { return static_cast<int>(p.size()); }
    std::int64_t p_lcm() const;
    void validate() const;  // throws std::invalid_argument
};

struct LElement {
    std::int64_t l = 0;
    std::vector<int> residues;
    friend bool operator==(const LElement&, const LElement&) = default;
    friend auto operator<=>(const LElement&, const LElement&) = default;
};

class StarLattice {
public:
    explicit StarLattice(WeightData w);

    const WeightData& weights() const { return w_; }
    int n() const { return w_.n(); }
    int p(int i) const { return w_.p[static_cast<std::size_t>(i)]; }  // 0-based point index
    std::int64_t p_lcm() const { return lcm_; }

    LElement normalize(const std::vector<std::int64_t>& coeffs, std::int64_t c_multiple = 0) const;
    LElement zero() const;
    LElement c() const;
    LElement x(int i) const;  // 0-based
    LElement add(const LElement& a, const LElement& b) const;
    LElement neg(const LElement& a) const;
    LElement sub(const LElement& a, const LElement& b) const { return add(a, neg(b)); }
    LElement scale(const LElement& a, std::int64_t k) const;

    bool is_effective(const LElement& z) const { return z.l >= 0; }
    std::int64_t degree(const LElement& z) const;
    LElement omega() const;
    Q genus() const;
    std::int64_t dim_sections(const LElement& z) const { return z.l >= 0 ? z.l + 1 : 0; }
    std::int64_t monomial_count(const LElement& z) const;
    // Search for a representative sum a_i x_i + k c with all a_i, k >= 0 and
    // carries bounded by `bound`; independent check of is_effective.
    bool effective_by_search(const LElement& z, std::int64_t bound) const;

    std::string str(const LElement& z) const;

private:
    WeightData w_;
    std::int64_t lcm_;
};

}  // namespace loopcrystal
