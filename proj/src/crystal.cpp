#include "loopcrystal/crystal.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "loopcrystal/oracle_cyclic.hpp"
#include "loopcrystal/oracle_p1.hpp"

namespace loopcrystal {

namespace {

int wrap(int a, int p) { return ((a % p) + p) % p; }

// Summand degrees of a bundle part made of line bundles, increasing.
std::optional<std::vector<std::int64_t>> line_degrees(const StarLattice& L, const ComponentLabel& Z) {
    std::vector<std::int64_t> d;
    for (const auto& b : Z.bundle) {
        const auto* lb = std::get_if<LineBundle>(&b);
        if (!lb) return std::nullopt;
        d.push_back(L.degree(lb->x));
    }
    std::sort(d.begin(), d.end());
    return d;
}

ComponentLabel p1_label(const Catalog& C, const std::vector<std::int64_t>& degs, Partition nu) {
    ComponentLabel Z;
    for (auto k : degs) Z.bundle.emplace_back(C.line(k));
    Z.ordinary = std::move(nu);
    Z.normalize();
    return Z;
}

// Nondecreasing sequences of `r` integers in [lo, hi] with sum `total`.
void bounded_multisets(int r, std::int64_t lo, std::int64_t hi, std::int64_t total, std::vector<std::int64_t>& cur,
                       std::vector<std::vector<std::int64_t>>& out) {
    if (r == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    const std::int64_t from = cur.empty() ? lo : cur.back();
    for (std::int64_t v = from; v <= hi; ++v) {
        if (v * r > total) break;
        if (hi * (r - 1) + v < total) continue;
        cur.push_back(v);
        bounded_multisets(r - 1, lo, hi, total - v, cur, out);
        cur.pop_back();
    }
}

}  // namespace

SimpleRule simple_color_rule(const Multisegment& m, int p, int j) {
    j = wrap(j, p);
    // Sources: segments with socle j. Targets: segments with socle j+1.
    std::vector<std::pair<int, int>> sources;  // (length, count)
    std::multiset<int> targets;
    for (const auto& [seg, cnt] : m.mult) {
        const int socle = wrap(seg.first - seg.second + 1, p);
        if (socle == j) sources.emplace_back(seg.second, cnt);
        if (socle == wrap(j + 1, p))
            for (int c = 0; c < cnt; ++c) targets.insert(seg.second);
    }
    std::sort(sources.rbegin(), sources.rend());
    SimpleRule out;
    out.fmax = Multisegment{m.point, {}};
    std::map<int, int> unmatched;  // length -> count
    for (auto [l, cnt] : sources)
        for (int c = 0; c < cnt; ++c) {
            auto it = targets.lower_bound(l);
            if (it != targets.end())
                targets.erase(it);
            else
                ++unmatched[l];
        }
    for (const auto& [seg, cnt] : m.mult) {
        const int socle = wrap(seg.first - seg.second + 1, p);
        int keep = cnt;
        if (socle == j) {
            auto it = unmatched.find(seg.second);
            if (it != unmatched.end()) {
                keep -= it->second;
                out.eps += it->second;
                if (seg.second > 1) out.fmax.add(seg.first, seg.second - 1, it->second);
            }
        }
        if (keep > 0) out.fmax.add(seg.first, seg.second, keep);
    }
    return out;
}

bool Crystal::is_p1() const {
    for (int i = 0; i < X_.n(); ++i)
        if (X_.p(i) != 1) return false;
    return true;
}

std::uint64_t Crystal::seed_for(const ComponentLabel& Z, const IndecLabel& I) const {
    return opt_.seed ^ std::hash<std::string>{}(K_.str(Z) + "|" + C_.str(I));
}

const OperatorData& Crystal::data(const ComponentLabel& Z, const IndecLabel& I) const {
    auto key = std::make_pair(Z, I);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (!C_.is_rigid(I)) throw CrystalError("non-rigid operator index");
    return memo_.emplace(std::move(key), compute(Z, I)).first->second;
}

OperatorData Crystal::compute(const ComponentLabel& Z, const IndecLabel& I) const {
    if (Z.empty()) return {0, 0, Z, "empty"};
    if (const auto* t = std::get_if<ExcTorsion>(&I)) return exceptional(Z, *t);
    if (const auto* lb = std::get_if<LineBundle>(&I)) {
        if (Z.is_torsion()) return {0, 0, Z, "torsion"};  // no line bundle embeds in a torsion sheaf
        if (is_p1()) return p1_line(Z, X_.lattice().degree(lb->x));
    }
    throw CrystalError("unsupported component family");
}

OperatorData Crystal::exceptional(const ComponentLabel& Z, const ExcTorsion& I) const {
    if (!Z.is_torsion()) throw CrystalError("unsupported component family");
    const Multisegment* m = Z.at_point(I.i);
    if (!m) return {0, 0, Z, "empty point"};
    const int p = X_.p(I.i);
    OperatorData out;
    Multisegment q;
    if (I.l == 1) {
        auto r = simple_color_rule(*m, p, I.j);
        out.eps = r.eps;
        out.rule = "simple";
        q = r.fmax;
    } else {
        auto s = sample_operator<Fp>(*m, p, I.j, I.l, opt_.trials, seed_for(Z, I));
        out.eps = s.eps;
        out.hom = s.hom_dim;
        out.rule = "sampled";
        q = s.fmax;
    }
    out.fmax = Z;
    out.fmax.at_point_mut(I.i) = q;
    out.fmax.normalize();
    return out;
}

OperatorData Crystal::p1_line(const ComponentLabel& Z, std::int64_t a) const {
    auto degs = line_degrees(X_.lattice(), Z);
    if (!degs || !Z.hn.empty() || !Z.exceptional.empty()) throw CrystalError("unsupported component family");
    const auto& d = *degs;
    OperatorData out;
    if (Z.ordinary.empty() && d.back() - d.front() <= 1) {
        // f vanishes, ker f = V; the generic quotient by O(a)^s is balanced.
        out.rule = "closed";
        out.eps = static_cast<int>(std::count_if(d.begin(), d.end(), [&](auto x) { return x >= a; }));
        if (out.eps == 0) {
            out.fmax = Z;
            return out;
        }
        const std::int64_t r = static_cast<std::int64_t>(d.size()) - out.eps;
        const std::int64_t D = std::accumulate(d.begin(), d.end(), std::int64_t{0}) - out.eps * a;
        if (r == 0) {
            out.fmax = p1_label(C_, {}, Partition(static_cast<std::size_t>(D), 1));
            return out;
        }
        const std::int64_t q = D >= 0 ? D / r : -((-D + r - 1) / r);
        std::vector<std::int64_t> bal(static_cast<std::size_t>(r), q);
        for (std::int64_t k = 0; k < D - q * r; ++k) bal[static_cast<std::size_t>(k)] += 1;
        out.fmax = p1_label(C_, bal, {});
        return out;
    }
    std::vector<int> di(d.begin(), d.end());
    auto s = p1_sample_operator(di, Z.ordinary, static_cast<int>(a), opt_.trials, seed_for(Z, C_.line(a)));
    out.rule = "sampled";
    out.eps = s.eps;
    out.hom = s.hom_dim;
    std::vector<std::int64_t> split(s.fmax.splitting.begin(), s.fmax.splitting.end());
    out.fmax = p1_label(C_, split, s.fmax.nu);
    return out;
}

std::int64_t Crystal::phi(const ComponentLabel& Z, const IndecLabel& I) const {
    return epsilon(Z, I) + X_.euler(C_.class_of(I), K_.weight(Z));
}

std::vector<ComponentLabel> Crystal::preimage_candidates(const ComponentLabel& Zp, const IndecLabel& I, int s) const {
    std::vector<ComponentLabel> out;
    if (s == 0) return {Zp};
    if (const auto* t = std::get_if<ExcTorsion>(&I)) {
        if (!Zp.is_torsion()) throw CrystalError("unsupported component family");
        const int p = X_.p(t->i);
        const Multisegment* m = Zp.at_point(t->i);
        std::vector<int> dims = m ? m->dims(p) : std::vector<int>(static_cast<std::size_t>(p), 0);
        const auto add = segment_dims(p, t->j, t->l);
        for (int k = 0; k < p; ++k) dims[static_cast<std::size_t>(k)] += s * add[static_cast<std::size_t>(k)];
        for (auto& cand : aperiodic_multisegments(t->i, p, dims)) {
            ComponentLabel Z = Zp;
            Z.at_point_mut(t->i) = cand;
            Z.normalize();
            out.push_back(Z);
        }
        return out;
    }
    const auto* lb = std::get_if<LineBundle>(&I);
    if (!lb || !is_p1()) throw CrystalError("unsupported component family");
    auto gdeg = line_degrees(X_.lattice(), Zp);
    if (!gdeg || !Zp.exceptional.empty() || !Zp.hn.empty()) throw CrystalError("unsupported component family");
    const std::int64_t a = X_.lattice().degree(lb->x);
    const std::int64_t nuG = std::accumulate(Zp.ordinary.begin(), Zp.ordinary.end(), std::int64_t{0});
    std::int64_t lo = a, hi = a + nuG;
    if (!gdeg->empty()) {
        lo = std::min(lo, gdeg->front());
        hi = std::max(hi, gdeg->back());
    }
    const int r = static_cast<int>(gdeg->size()) + s;
    const std::int64_t total = std::accumulate(gdeg->begin(), gdeg->end(), std::int64_t{0}) + nuG + s * a;
    for (std::int64_t N = 0; N <= nuG; ++N) {
        std::vector<std::vector<std::int64_t>> vs;
        std::vector<std::int64_t> cur;
        bounded_multisets(r, lo, hi, total - N, cur, vs);
        if (vs.empty()) continue;
        const auto parts = N == 0 ? std::vector<Partition>{Partition{}} : partitions(static_cast<int>(N));
        for (const auto& v : vs)
            for (const auto& nu : parts) out.push_back(p1_label(C_, v, nu));
    }
    return out;
}

ComponentLabel Crystal::e_s(const ComponentLabel& Zp, const IndecLabel& I, int s) const {
    if (s == 0) return Zp;
    auto key = std::make_tuple(Zp, I, s);
    if (auto it = e_memo_.find(key); it != e_memo_.end()) return it->second;
    std::optional<ComponentLabel> found;
    for (const auto& Z : preimage_candidates(Zp, I, s)) {
        const auto& d = data(Z, I);
        if (d.eps != s || !(d.fmax == Zp)) continue;
        if (found) throw CrystalError("ambiguous preimage");
        found = Z;
    }
    if (!found) throw CrystalError("no preimage found");
    e_memo_.emplace(std::move(key), *found);
    return *found;
}

std::optional<ComponentLabel> Crystal::f(const ComponentLabel& Z, const IndecLabel& I) const {
    const auto& d = data(Z, I);
    if (d.eps == 0) return std::nullopt;
    return e_s(d.fmax, I, d.eps - 1);
}

ComponentLabel Crystal::e(const ComponentLabel& Z, const IndecLabel& I) const {
    const auto& d = data(Z, I);
    return e_s(d.fmax, I, d.eps + 1);
}

// ---------------------------------------------------------------- ladder

Ladder ordinary_ladder(const Catalog& C, const Partition& lambda) {
    const Partition mu = conjugate(lambda);
    const int k = static_cast<int>(mu.size());
    Ladder L;
    for (int t = 0; t <= k; ++t) {
        std::vector<std::int64_t> degs;
        for (int m = 0; m < t; ++m) degs.push_back(2 * m);
        Partition tail(mu.begin() + t, mu.end());
        L.rungs.push_back(p1_label(C, degs, conjugate(tail)));
        if (t >= 1) L.colors.push_back(2 * (t - 1) - mu[static_cast<std::size_t>(t - 1)]);
    }
    return L;
}

// ---------------------------------------------------------------- graph

bool Budget::contains(const Curve& X, const KClass& a) const {
    if (max_rank && X.rank(a) > *max_rank) return false;
    if (max_abs_deg && std::abs(X.degree(a)) > *max_abs_deg) return false;
    if (bound && !(*bound == a) && !X.is_positive(*bound - a)) return false;
    return true;
}

std::optional<std::size_t> CrystalGraph::index(const ComponentLabel& Z) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), Z);
    if (it == nodes.end() || !(*it == Z)) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
}

CrystalGraph build_graph(const Crystal& K, const std::vector<ComponentLabel>& seeds,
                         const std::vector<IndecLabel>& colors, const Budget& budget) {
    const auto& comps = K.components();
    const auto& X = comps.curve();
    const auto& C = comps.catalog();
    for (const auto& I : colors)
        if (!C.is_rigid(I)) throw CrystalError("non-rigid operator index");

    struct Raw {
        std::map<std::size_t, ColorRecord> rec;
    };
    std::map<ComponentLabel, Raw> seen;
    std::set<std::tuple<ComponentLabel, ComponentLabel, std::size_t>> edges;
    std::deque<ComponentLabel> queue;
    bool truncated = false;
    auto visit = [&](const ComponentLabel& Z) {
        if (seen.count(Z)) return;
        if (seen.size() >= budget.max_nodes) {
            truncated = true;
            return;
        }
        seen.emplace(Z, Raw{});
        queue.push_back(Z);
    };
    for (auto Z : seeds) {
        Z.normalize();
        visit(Z);
    }
    while (!queue.empty()) {
        const ComponentLabel Z = queue.front();
        queue.pop_front();
        const KClass wt = comps.weight(Z);
        for (std::size_t c = 0; c < colors.size(); ++c) {
            const auto& I = colors[c];
            const KClass cls = C.class_of(I);
            ColorRecord r;
            r.eps = K.epsilon(Z, I);
            if (r.eps > 0) {
                r.f = K.f(Z, I);
                if (budget.contains(X, wt - cls)) {
                    visit(*r.f);
                    if (seen.count(*r.f)) edges.emplace(Z, *r.f, c);
                }
            }
            if (budget.contains(X, wt + cls)) {
                r.e = K.e(Z, I);
                visit(*r.e);
                if (seen.count(*r.e)) edges.emplace(*r.e, Z, c);
            }
            seen[Z].rec[c] = r;
        }
    }

    CrystalGraph G;
    G.colors = colors;
    G.truncated = truncated;
    for (const auto& [Z, raw] : seen) {
        G.nodes.push_back(Z);
        G.weights.push_back(comps.weight(Z));
    }
    for (const auto& [Z, raw] : seen) {
        const std::size_t i = *G.index(Z);
        for (const auto& [c, r] : raw.rec) G.records[{i, c}] = r;
    }
    for (const auto& [a, b, c] : edges) G.edges.push_back({*G.index(a), *G.index(b), c});
    std::sort(G.edges.begin(), G.edges.end());
    return G;
}

std::size_t count_axiom(const std::vector<Violation>& v, const std::string& axiom) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [&](const Violation& x) { return x.axiom == axiom; }));
}

std::vector<Violation> verify_axioms(const Curve& X, const Catalog& C, const CrystalGraph& G, PhiForm form) {
    std::vector<Violation> out;
    std::vector<KClass> cls;
    for (const auto& I : G.colors) cls.push_back(C.class_of(I));
    auto phi = [&](std::size_t node, std::size_t c, int eps) {
        const auto& w = G.weights[node];
        if (form == PhiForm::literal) return eps + X.euler(cls[c], w);
        return eps - X.euler(cls[c], w) - X.euler(w, cls[c]);
    };
    auto where = [&](std::size_t node, std::size_t c) {
        return "node " + std::to_string(node) + " color " + C.str(G.colors[c]);
    };
    std::set<CrystalGraph::Edge> edge_set(G.edges.begin(), G.edges.end());

    for (const auto& e : G.edges) {
        std::vector<std::string> bad;
        if (!(G.weights[e.dst] == G.weights[e.src] - cls[e.color])) bad.push_back("weight");
        auto rs = G.records.find({e.src, e.color});
        auto rd = G.records.find({e.dst, e.color});
        if (rs == G.records.end() || !rs->second.f || !(*rs->second.f == G.nodes[e.dst])) bad.push_back("f record");
        if (rd == G.records.end() || !rd->second.e || !(*rd->second.e == G.nodes[e.src])) bad.push_back("e record");
        if (!bad.empty()) {
            std::string d;
            for (const auto& b : bad) d += (d.empty() ? "" : ", ") + b;
            out.push_back({"edge", std::to_string(e.src) + " -> " + std::to_string(e.dst) + " [" +
                                       C.str(G.colors[e.color]) + "]: " + d});
        }
    }

    for (const auto& [key, r] : G.records) {
        const auto [i, c] = key;
        const auto& w = G.weights[i];
        if ((r.eps == 0) != !r.f.has_value())
            out.push_back({"f-vanishing", where(i, c) + ": eps " + std::to_string(r.eps)});
        if (r.e) {
            if (!X.is_positive(w + cls[c])) out.push_back({"weight", where(i, c) + ": e leaves the positive cone"});
            if (auto j = G.index(*r.e)) {
                if (!(G.weights[*j] == w + cls[c])) out.push_back({"weight", where(i, c) + ": e shift"});
                const auto& re = G.records.find({*j, c});
                if (re != G.records.end()) {
                    if (re->second.eps != r.eps + 1) out.push_back({"epsilon", where(i, c) + ": e increment"});
                    if (phi(*j, c, re->second.eps) != phi(i, c, r.eps) - 1)
                        out.push_back({"phi", where(i, c) + ": e increment"});
                    if (!re->second.f || !(*re->second.f == G.nodes[i]))
                        out.push_back({"inverse", where(i, c) + ": f(e(Z)) != Z"});
                }
                if (!edge_set.count({*j, i, c})) out.push_back({"inverse", where(i, c) + ": missing e edge"});
            }
        }
        if (r.f) {
            if (auto j = G.index(*r.f)) {
                const auto& rf = G.records.find({*j, c});
                if (rf != G.records.end()) {
                    if (rf->second.eps != r.eps - 1) out.push_back({"epsilon", where(i, c) + ": f decrement"});
                    if (phi(*j, c, rf->second.eps) != phi(i, c, r.eps) + 1)
                        out.push_back({"phi", where(i, c) + ": f decrement"});
                    if (rf->second.e && !(*rf->second.e == G.nodes[i]))
                        out.push_back({"inverse", where(i, c) + ": e(f(Z)) != Z"});
                }
                if (!edge_set.count({i, *j, c})) out.push_back({"inverse", where(i, c) + ": missing f edge"});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- paths

std::vector<PathStep> connectivity_path(const Crystal& K, const ComponentLabel& Z0) {
    const auto& C = K.components().catalog();
    const auto& X = K.components().curve();
    ComponentLabel Z = Z0;
    Z.normalize();
    std::vector<PathStep> path;
    auto push = [&](const IndecLabel& I, char op, int times) {
        for (int t = 0; t < times; ++t) path.push_back({I, op});
    };

    // Bundle part: f_max along the top degree of the kernel.
    while (!Z.is_torsion()) {
        auto degs = line_degrees(X.lattice(), Z);
        if (!K.is_p1() || !degs) throw CrystalError("unsupported family");
        const std::int64_t floor = degs->front() - 4 * static_cast<std::int64_t>(degs->size()) -
                                   std::accumulate(Z.ordinary.begin(), Z.ordinary.end(), std::int64_t{0}) - 4;
        bool moved = false;
        for (std::int64_t a = degs->back(); a >= floor && !moved; --a) {
            const IndecLabel I = C.line(a);
            const auto& d = K.data(Z, I);
            if (d.eps == 0) continue;
            push(I, 'f', d.eps);
            Z = d.fmax;
            moved = true;
        }
        if (!moved) throw CrystalError("unsupported family");
    }

    // Exceptional multisegments: simple colors with eps > 0.
    for (int i = 0; i < X.n(); ++i) {
        while (Z.at_point(i)) {
            bool moved = false;
            for (int j = 0; j < X.p(i) && !moved; ++j) {
                const IndecLabel I = C.exc(i, j, 1);
                const auto& d = K.data(Z, I);
                if (d.eps == 0) continue;
                push(I, 'f', d.eps);
                Z = d.fmax;
                moved = true;
            }
            if (!moved) throw CrystalError("unsupported family");
        }
    }

    // Ordinary partition: climb the ladder by e, then strip its bundle by f.
    if (!Z.ordinary.empty()) {
        const Ladder L = ordinary_ladder(C, Z.ordinary);
        for (auto a : L.colors) push(C.line(a), 'e', 1);
        for (std::size_t t = L.colors.size(); t >= 1; --t) push(C.line(2 * static_cast<std::int64_t>(t - 1)), 'f', 1);
    }
    return path;
}

ComponentLabel apply_path(const Crystal& K, ComponentLabel Z, const std::vector<PathStep>& path) {
    Z.normalize();
    for (const auto& s : path) {
        if (s.op == 'e') {
            Z = K.e(Z, s.color);
        } else {
            auto n = K.f(Z, s.color);
            if (!n) throw CrystalError("path step vanishes");
            Z = *n;
        }
    }
    return Z;
}

std::string to_dot(const Catalog& C, const Components& K, const CrystalGraph& G) {
    std::ostringstream os;
    os << "digraph crystal {\n";
    for (std::size_t i = 0; i < G.nodes.size(); ++i) {
        const std::string name = G.nodes[i].empty() ? std::string("0") : K.str(G.nodes[i]);
        os << "  n" << i << " [label=\"" << name << "\"];\n";
    }
    for (const auto& e : G.edges)
        os << "  n" << e.src << " -> n" << e.dst << " [label=\"f[" << C.str(G.colors[e.color]) << "]\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace loopcrystal
