#pragma once
// Loop-crystal operators on component labels, the colored graph builder,
// axiom checks and explicit connectivity paths.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "loopcrystal/components.hpp"

namespace loopcrystal {

struct CrystalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CrystalOptions {
    int trials = 8;
    std::uint64_t seed = 0x6c6f6f70ULL;
};

// Generic data of (Z, I): eps = rk_I(ker f), hom = dim Hom(I, ker f) when
// sampled (-1 for closed rules), and the generic quotient.
struct OperatorData {
    int eps = 0;
    int hom = -1;
    ComponentLabel fmax;
    std::string rule;
};

class Crystal {
public:
    explicit Crystal(const Components& K, CrystalOptions opt = {}) : K_(K), C_(K.catalog()), X_(K.curve()), opt_(opt) {}
    const Components& components() const { return K_; }
    bool is_p1() const;

    const OperatorData& data(const ComponentLabel& Z, const IndecLabel& I) const;
    int epsilon(const ComponentLabel& Z, const IndecLabel& I) const { return data(Z, I).eps; }
    std::int64_t phi(const ComponentLabel& Z, const IndecLabel& I) const;
    ComponentLabel f_max(const ComponentLabel& Z, const IndecLabel& I) const { return data(Z, I).fmax; }
    ComponentLabel e_s(const ComponentLabel& Zp, const IndecLabel& I, int s) const;
    std::optional<ComponentLabel> f(const ComponentLabel& Z, const IndecLabel& I) const;
    ComponentLabel e(const ComponentLabel& Z, const IndecLabel& I) const;

    // Labels of class wt(Zp) + s [I] that could map to Zp under f_max.
    std::vector<ComponentLabel> preimage_candidates(const ComponentLabel& Zp, const IndecLabel& I, int s) const;

private:
    OperatorData compute(const ComponentLabel& Z, const IndecLabel& I) const;
    OperatorData exceptional(const ComponentLabel& Z, const ExcTorsion& I) const;
    OperatorData p1_line(const ComponentLabel& Z, std::int64_t a) const;
    std::uint64_t seed_for(const ComponentLabel& Z, const IndecLabel& I) const;

    const Components& K_;
    const Catalog& C_;
    const Curve& X_;
    CrystalOptions opt_;
    mutable std::map<std::pair<ComponentLabel, IndecLabel>, OperatorData> memo_;
    mutable std::map<std::tuple<ComponentLabel, IndecLabel, int>, ComponentLabel> e_memo_;
};

// Combinatorial rule for a simple color S_j(1) on a multisegment.
struct SimpleRule {
    int eps = 0;
    Multisegment fmax;
};
SimpleRule simple_color_rule(const Multisegment& m, int p, int j);

// Ladder rungs (sum_{m<t} O(2m), conj(mu_{t+1}, ..., mu_k)) for t = 0..k, and
// the colors O(2(t-1) - mu_t) with f(rung t) = rung t-1.
struct Ladder {
    std::vector<ComponentLabel> rungs;
    std::vector<std::int64_t> colors;  // colors[t-1] links rung t to rung t-1
};
Ladder ordinary_ladder(const Catalog& C, const Partition& lambda);

struct Budget {
    std::optional<std::int64_t> max_rank, max_abs_deg;
    std::optional<KClass> bound;  // wt <= bound
    std::size_t max_nodes = 20000;
    bool contains(const Curve& X, const KClass& a) const;
};

struct ColorRecord {
    int eps = 0;
    std::optional<ComponentLabel> f;  // nullopt: f = 0
    std::optional<ComponentLabel> e;  // nullopt: outside the budget
};

struct CrystalGraph {
    struct Edge {
        std::size_t src, dst, color;
        friend auto operator<=>(const Edge&, const Edge&) = default;
    };
    std::vector<IndecLabel> colors;
    std::vector<ComponentLabel> nodes;  // sorted
    std::vector<KClass> weights;        // per node
    std::vector<Edge> edges;            // f_color(src) = dst, sorted
    std::map<std::pair<std::size_t, std::size_t>, ColorRecord> records;  // (node, color)
    bool truncated = false;

    std::optional<std::size_t> index(const ComponentLabel& Z) const;
};

CrystalGraph build_graph(const Crystal& K, const std::vector<ComponentLabel>& seeds,
                         const std::vector<IndecLabel>& colors, const Budget& budget);

struct Violation {
    std::string axiom, detail;
};
enum class PhiForm { literal, symmetrized };
// phi(Z, I) = eps + <[I], wt>, or eps - (<[I], wt> + <wt, [I]>) when symmetrized.
std::vector<Violation> verify_axioms(const Curve& X, const Catalog& C, const CrystalGraph& G,
                                     PhiForm form = PhiForm::literal);
std::size_t count_axiom(const std::vector<Violation>& v, const std::string& axiom);

struct PathStep {
    IndecLabel color;
    char op = 'f';  // 'f' or 'e'
};
std::vector<PathStep> connectivity_path(const Crystal& K, const ComponentLabel& Z);
ComponentLabel apply_path(const Crystal& K, ComponentLabel Z, const std::vector<PathStep>& path);

std::string to_dot(const Catalog& C, const Components& K, const CrystalGraph& G);

}  // namespace loopcrystal
