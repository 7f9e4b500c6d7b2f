// Acceptance run: one PASS/FAIL line per criterion.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "loopcrystal/crystal.hpp"
#include "loopcrystal/oracle_cyclic.hpp"
#include "loopcrystal/oracle_p1.hpp"

using namespace loopcrystal;

namespace {

struct World {
    Curve X;
    Catalog C;
    Components K;
    Crystal Kr;
    explicit World(std::vector<int> w) : X(WeightData::make(std::move(w))), C(X), K(C), Kr(K) {}

    ComponentLabel p1(const std::vector<std::int64_t>& degs, Partition nu = {}) const {
        ComponentLabel Z;
        for (auto k : degs) Z.bundle.emplace_back(C.line(k));
        Z.ordinary = std::move(nu);
        Z.normalize();
        return Z;
    }
};

// Failures are collected as text; an empty log means PASS.
struct Log {
    std::ostringstream os;
    int fails = 0;
    void check(bool ok, const std::string& what) {
        if (ok) return;
        if (++fails <= 5) os << "  " << what << "\n";
    }
};

std::vector<std::int64_t> degs_of(int l, int n, std::int64_t hi = 1, std::int64_t lo = 0) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(l), hi);
    d.insert(d.end(), static_cast<std::size_t>(n), lo);
    return d;
}

Partition ones(int n) { return Partition(static_cast<std::size_t>(n), 1); }

// Every dimension vector of length p with entries summing to at most `total`.
void for_dims(int p, int total, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> d(static_cast<std::size_t>(p), 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == p) {
            fn(d);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            d[static_cast<std::size_t>(k)] = v;
            rec(k + 1, left - v);
        }
        d[static_cast<std::size_t>(k)] = 0;
    };
    rec(0, total);
}

// Criterion 5 graphs, shared by 6, 8 and 9.
struct GraphCase {
    std::string name;
    World* w;
    CrystalGraph G;
};
std::vector<GraphCase> graphs;

bool run(int n, const std::string& title, const std::function<bool(Log&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Log log;
    bool ok = false;
    std::string err;
    try {
        ok = body(log) && log.fails == 0;
    } catch (const std::exception& e) {
        err = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s (%.2f s)\n", ok ? "PASS" : "FAIL", n, title.c_str(), secs);
    if (!err.empty()) std::printf("  exception: %s\n", err.c_str());
    if (log.fails) std::printf("%s  %d failing checks\n", log.os.str().c_str(), log.fails);
    std::fflush(stdout);
    return ok;
}

bool genus_table(Log& log) {
    const std::vector<std::pair<std::vector<int>, Q>> table{
        {{1, 1, 1}, Q(0)}, {{2, 2, 2, 2}, Q(1)}, {{3, 3, 3}, Q(1)}, {{2, 3, 7}, Q(3, 2)}};
    for (const auto& [w, g] : table) {
        const StarLattice L(WeightData::make(w));
        std::ostringstream name;
        for (int p : w) name << p << ' ';
        log.check(L.genus() == g, "genus of " + name.str());
        const Q want = Q(L.p_lcm()) * (2 * L.genus() - 2);
        const std::int64_t got = L.degree(L.omega());
        std::ostringstream d;
        d << name.str() << "deg(omega) = " << got << ", p(2g-2) = " << want;
        log.check(Q(got) == want, d.str());
    }
    return true;
}

bool euler_suite(Log& log) {
    std::mt19937_64 rng(7);
    for (const auto& w : {std::vector<int>{}, std::vector<int>{2, 2, 2, 2}}) {
        const Curve X(WeightData::make(w));
        const Catalog C(X);
        const auto O = X.O(), d = X.delta();
        log.check(X.euler(O, O) == 1, "<O,O>");
        log.check(X.euler(d, d) == 0, "<delta,delta>");
        log.check(X.euler(O, d) == 1, "<O,delta>");
        log.check(X.euler(d, O) == -1, "<delta,O>");
        std::uniform_int_distribution<std::int64_t> coef(-20, 20);
        auto rnd = [&] {
            KClass a = X.zero();
            for (Eigen::Index k = 0; k < a.v.size(); ++k) a.v(k) = coef(rng);
            return a;
        };
        for (int t = 0; t < 1000; ++t) {
            const KClass a = rnd(), b = rnd(), c = rnd();
            const std::int64_t k = coef(rng);
            log.check(X.euler(a + b, c) == X.euler(a, c) + X.euler(b, c), "left additivity");
            log.check(X.euler(a, b + c) == X.euler(a, b) + X.euler(a, c), "right additivity");
            log.check(X.euler(k * a, c) == k * X.euler(a, c) && X.euler(a, k * c) == k * X.euler(a, c),
                      "homogeneity");
        }
        // The form agrees with hom - ext on line bundles and simple torsion.
        const auto& L = X.lattice();
        std::uniform_int_distribution<int> pick(-3, 3);
        for (int t = 0; t < 200; ++t) {
            std::vector<std::int64_t> cx(static_cast<std::size_t>(X.n())), cy(cx.size());
            for (auto& v : cx) v = pick(rng);
            for (auto& v : cy) v = pick(rng);
            const IndecLabel A = C.line(L.normalize(cx)), B = C.line(L.normalize(cy));
            log.check(X.euler(C.class_of(A), C.class_of(B)) == C.hom_dim(A, B) - C.ext_dim(A, B),
                      "euler vs hom - ext");
        }
    }
    return true;
}

bool sections(Log& log) {
    for (const auto& w : {std::vector<int>{2, 2, 2}, std::vector<int>{2, 3, 7}, std::vector<int>{1, 1, 1}}) {
        const WeightData wd = WeightData::make(w);
        const StarLattice L(wd);
        const std::int64_t p = L.p_lcm();
        std::vector<int> r(static_cast<std::size_t>(L.n()), 0);
        for (std::int64_t l = -p; l <= p; ++l) {
            std::fill(r.begin(), r.end(), 0);
            while (true) {
                const LElement z{l, r};
                if (L.dim_sections(z) != L.monomial_count(z)) {
                    log.check(false, "dim S at " + L.str(z));
                }
                std::size_t i = 0;
                while (i < r.size() && ++r[i] >= L.p(static_cast<int>(i))) r[i++] = 0;
                if (i == r.size()) break;
            }
        }
    }
    return true;
}

bool p1_tables(Log& log) {
    World w({});
    const IndecLabel O = w.C.line(0), Om = w.C.line(-1);
    for (int n = 1; n <= 5; ++n) {
        const auto On = w.p1(degs_of(0, n));
        const auto f = w.Kr.f(On, O);
        log.check(f && *f == w.p1(degs_of(0, n - 1)), "f_O(O^n)");
        log.check(w.Kr.e(On, O) == w.p1(degs_of(0, n + 1)), "e_O(O^n)");
    }
    for (int l = 0; l <= 5; ++l)
        for (int n = 0; l + n <= 5; ++n) {
            if (l + n == 0) continue;
            const auto Z = w.p1(degs_of(l, n));
            const std::string tag = " at l=" + std::to_string(l) + " n=" + std::to_string(n);
            log.check(w.Kr.f_max(Z, Om) == w.p1({}, ones(n + 2 * l)), "f_max" + tag);
            const auto f = w.Kr.f(Z, Om);
            if (n >= 2) log.check(f && *f == w.p1(degs_of(l + 1, n - 2)), "f, n >= 2" + tag);
            if (n == 1 && l >= 1) {
                auto want = degs_of(l - 1, 0);
                want.push_back(2);
                log.check(f && *f == w.p1(want), "f, n = 1" + tag);
            }
        }
    const auto f = w.Kr.f(w.p1({0}), Om);
    log.check(f && *f == w.p1({}, {1}), "f_O(-1)(O)");
    return true;
}

void check_purity(Log& log, const World& w, const CrystalGraph& G) {
    for (const auto& [key, rec] : G.records) {
        if (rec.eps == 0) continue;
        const auto& Z = G.nodes[key.first];
        const IndecLabel& I = G.colors[key.second];
        const auto Zp = w.Kr.f_max(Z, I);
        const KClass beta = w.K.weight(Zp);
        const KClass gamma = static_cast<std::int64_t>(rec.eps) * w.C.class_of(I);
        const KClass wt = w.K.weight(Z);
        log.check(wt == beta + gamma, "weight split " + w.K.str(Z));
        const std::int64_t lhs = w.K.expected_dim(Z);
        const std::int64_t rhs = w.K.expected_dim(Zp) - w.X.euler(beta, gamma) - w.X.euler(gamma, beta) -
                                 w.X.euler(gamma, gamma);
        log.check(lhs == rhs, "purity at " + w.K.str(Z));
        log.check(lhs == -w.X.euler(wt, wt), "expected dim of source " + w.K.str(Z));
        log.check(rhs == -w.X.euler(wt, wt), "expected dim of quotient side " + w.K.str(Z));
    }
}

World& keep(std::vector<int> weights) {
    static std::vector<std::unique_ptr<World>> worlds;
    worlds.push_back(std::make_unique<World>(std::move(weights)));
    return *worlds.back();
}

bool axioms(Log& log) {
    {
        World& w = keep({});
        Budget b;
        b.max_rank = 3;
        b.max_abs_deg = 3;
        graphs.push_back({"P1", &w, build_graph(w.Kr, {ComponentLabel{}}, {w.C.line(0), w.C.line(1), w.C.line(-1)}, b)});
    }
    for (int p : {2, 3}) {
        World& w = keep({p});
        std::vector<IndecLabel> colors;
        for (int j = 0; j < p; ++j)
            for (int l = 1; l < p; ++l) {
                const IndecLabel I = w.C.exc(0, j, l);
                if (w.C.is_rigid(I)) colors.push_back(I);
            }
        Budget b;
        b.bound = 3 * w.X.delta();
        graphs.push_back({"(" + std::to_string(p) + ",1,1)", &w, build_graph(w.Kr, {ComponentLabel{}}, colors, b)});
    }
    for (const auto& g : graphs) {
        const auto lit = verify_axioms(g.w->X, g.w->C, g.G, PhiForm::literal);
        const auto sym = verify_axioms(g.w->X, g.w->C, g.G, PhiForm::symmetrized);
        std::ostringstream os;
        os << g.name << ": " << g.G.nodes.size() << " nodes, " << g.G.edges.size() << " edges"
           << (g.G.truncated ? " (truncated)" : "") << "; literal phi: " << lit.size() << " violations (";
        for (const char* a : {"edge", "f-vanishing", "weight", "epsilon", "phi", "inverse", "missing edge"})
            if (auto c = count_axiom(lit, a)) os << a << " " << c << " ";
        os << "); symmetrized phi: " << sym.size();
        std::printf("  %s\n", os.str().c_str());
        log.check(!g.G.truncated, g.name + " truncated");
        log.check(lit.empty(), g.name + " violations: " + (lit.empty() ? "" : lit.front().axiom + " " + lit.front().detail));
    }
    return !graphs.empty();
}

bool purity(Log& log) {
    if (graphs.empty()) return false;
    for (const auto& g : graphs) check_purity(log, *g.w, g.G);
    return true;
}

bool counts(Log& log) {
    {
        World w({});
        log.check(w.K.enumerate_torsion(2 * w.X.delta()).size() == 2, "|Irr(2 delta)| on P^1");
    }
    {
        World w({2});
        log.check(w.K.enumerate_torsion(w.X.delta()).size() == 3, "|Irr(delta)| on (2,1,1)");
    }
    std::size_t classes = 0;
    for (const auto& weights : {std::vector<int>{2}, std::vector<int>{2, 2, 2}}) {
        World w(weights);
        const Eigen::Index dim = w.X.dim();
        // Rank-0 classes: d in [0, 4], every m in [-4, 4].
        KClass a = w.X.zero();
        std::function<void(Eigen::Index)> rec = [&](Eigen::Index k) {
            if (k == dim) {
                if (a.is_zero() || !w.X.is_positive(a) || w.X.degree(a) > 4) return;
                std::int64_t formula = 0;
                for (const auto& s : w.K.strata(a)) {
                    std::int64_t prod = partition_count(s.l);
                    for (std::size_t i = 0; i < s.dims.size(); ++i)
                        if (!s.dims[i].empty())
                            prod *= static_cast<std::int64_t>(
                                aperiodic_multisegments(static_cast<int>(i), w.X.p(static_cast<int>(i)), s.dims[i]).size());
                    formula += prod;
                }
                ++classes;
                const auto got = static_cast<std::int64_t>(w.K.enumerate_torsion(a).size());
                log.check(got == formula, "count at " + w.X.str(a));
                log.check(got == w.K.count_torsion(a), "count_torsion at " + w.X.str(a));
                return;
            }
            const std::int64_t lo = k == 1 ? 0 : -4, hi = 4;
            for (std::int64_t v = lo; v <= hi; ++v) {
                a.v(k) = v;
                rec(k + 1);
            }
            a.v(k) = 0;
        };
        rec(1);
    }
    std::printf("  %zu rank-0 classes cross-checked\n", classes);
    return classes > 0;
}

bool connectivity(Log& log) {
    if (graphs.empty()) return false;
    for (const auto& g : graphs)
        for (const auto& Z : g.G.nodes)
            log.check(apply_path(g.w->Kr, Z, connectivity_path(g.w->Kr, Z)).empty(), g.name + " " + g.w->K.str(Z));

    // Z_{l,nu} = (O(2) + ... + O(2l), nu): replay the path one step at a time.
    World w({});
    std::size_t instances = 0, steps = 0;
    for (int l = 1; l <= 3; ++l)
        for (int s = 0; s <= 3; ++s)
            for (const auto& nu : s == 0 ? std::vector<Partition>{{}} : partitions(s)) {
                std::vector<std::int64_t> degs;
                for (int k = 1; k <= l; ++k) degs.push_back(2 * k);
                ComponentLabel Z = w.p1(degs, nu);
                const std::string tag = w.K.str(Z);
                const auto path = connectivity_path(w.Kr, Z);
                ++instances;
                steps += path.size();
                std::size_t step = 0;
                for (; step < path.size() && !Z.is_torsion(); ++step) {
                    const auto& I = path[step].color;
                    const auto n = w.Kr.f(Z, I);
                    if (path[step].op != 'f' || !n) {
                        log.check(false, tag + ": bundle step " + std::to_string(step));
                        break;
                    }
                    log.check(w.K.weight(*n) == w.K.weight(Z) - w.C.class_of(I), tag + ": weight drop");
                    log.check(w.Kr.e(*n, I) == Z, tag + ": e undoes f");
                    Z = *n;
                }
                log.check(Z.is_torsion() && Z.exceptional.empty(), tag + ": bundle not stripped");
                if (Z.ordinary.empty()) {
                    log.check(step == path.size(), tag + ": trailing steps");
                    continue;
                }
                const Ladder L = ordinary_ladder(w.C, Z.ordinary);
                const std::size_t k = L.colors.size();
                log.check(path.size() == step + 2 * k, tag + ": ladder length");
                if (path.size() != step + 2 * k) continue;
                for (std::size_t t = 1; t <= k; ++t, ++step) {
                    const IndecLabel I = w.C.line(L.colors[t - 1]);
                    log.check(path[step].op == 'e' && path[step].color == I, tag + ": ladder color");
                    log.check(w.Kr.epsilon(L.rungs[t], I) == 1, tag + ": rung eps");
                    const auto down = w.Kr.f(L.rungs[t], I);
                    log.check(down && *down == L.rungs[t - 1], tag + ": f along the ladder");
                    Z = w.Kr.e(Z, I);
                    log.check(Z == L.rungs[t], tag + ": e along the ladder");
                }
                for (std::size_t t = k; t >= 1; --t, ++step) {
                    const IndecLabel I = w.C.line(2 * static_cast<std::int64_t>(t - 1));
                    log.check(path[step].op == 'f' && path[step].color == I, tag + ": strip color");
                    const auto n = w.Kr.f(Z, I);
                    log.check(n.has_value(), tag + ": strip step vanishes");
                    if (!n) break;
                    Z = *n;
                    log.check(Z == w.p1([&] {
                        std::vector<std::int64_t> d;
                        for (std::size_t m = 0; m + 1 < t; ++m) d.push_back(2 * static_cast<std::int64_t>(m));
                        return d;
                    }()), tag + ": strip rung");
                }
                log.check(Z.empty(), tag + ": end is not empty");
            }
    std::printf("  %zu family instances, %zu replayed steps\n", instances, steps);
    return true;
}

bool oracles(Log& log) {
    std::size_t count_a = 0;
    for (int p = 2; p <= 4; ++p)
        for_dims(p, 8, [&](const std::vector<int>& d) {
            for (const auto& m : aperiodic_multisegments(0, p, d)) {
                ++count_a;
                log.check(recover_type(cyclic::build_rep<Fp>(m, p), 0) == m, "round trip");
            }
        });
    std::size_t count_b = 0;
    for (const auto& g : graphs) {
        if (g.name == "P1") continue;
        const int p = g.w->X.p(0);
        for (const auto& Z : g.G.nodes) {
            const Multisegment m = Z.at_point(0) ? *Z.at_point(0) : Multisegment{0, {}};
            for (int j = 0; j < p; ++j) {
                ++count_b;
                const auto s = sample_operator<Fp>(m, p, j, 1, 8, 1000 + count_b);
                log.check(s.eps == simple_color_rule(m, p, j).eps, g.name + " eps at " + g.w->K.str(Z));
            }
        }
    }
    log.check(count_b > 0, "no torsion graph pairs");
    std::size_t count_c = 0;
    for (int l = 0; l <= 5; ++l)
        for (int n = 0; l + n <= 5; ++n) {
            if (l + n == 0) continue;
            std::vector<int> d(static_cast<std::size_t>(l), 1);
            d.insert(d.end(), static_cast<std::size_t>(n), 0);
            const std::string tag = " at l=" + std::to_string(l) + " n=" + std::to_string(n);
            const auto s = p1_sample_operator(d, {}, -1, 8, 500 + ++count_c);
            log.check(s.eps == n + l, "sampled eps_O(-1)" + tag);
            log.check(s.fmax.splitting.empty() && s.fmax.nu == ones(n + 2 * l), "sampled f_max" + tag);
            if (l == 0) log.check(p1_sample_operator(d, {}, 0, 8, 900 + count_c).eps == n, "sampled eps_O" + tag);
        }
    std::printf("  round trips %zu, torsion pairs %zu, P1 cases %zu\n", count_a, count_b, count_c);
    return true;
}

bool rigidity(Log& log) {
    World w({2, 3, 4});
    for (int i = 0; i < 3; ++i) {
        const int p = w.X.p(i);
        for (int j = 0; j < p; ++j)
            for (int l = 1; l <= 2 * p; ++l) {
                Multisegment m{i, {}};
                m.add(j, l);
                const bool oracle = cyclic::commutant_fiber(cyclic::build_rep<Fp>(m, p)).empty();
                const bool lib = w.C.is_rigid(w.C.exc(i, j, l));
                const std::string tag = "S(" + std::to_string(i + 1) + "," + std::to_string(j) + "," + std::to_string(l) + ")";
                log.check(lib == (l < p), tag + " classification");
                log.check(oracle == lib, tag + " oracle");
            }
    }
    for (int d = 1; d <= 3; ++d) {
        Multisegment m{0, {}};
        m.add(0, d);
        log.check(!w.C.is_rigid(OrdTorsion{0, d}), "Ox(" + std::to_string(d) + ")");
        log.check(!cyclic::commutant_fiber(cyclic::build_rep<Fp>(m, 1)).empty(), "Ox oracle");
    }
    return true;
}

}  // namespace

int main() {
    int failed = 0;
    failed += !run(1, "genus and dualizing degree", genus_table);
    failed += !run(2, "Euler form", euler_suite);
    failed += !run(3, "section dimensions vs monomial count", sections);
    failed += !run(4, "P1 operator tables", p1_tables);
    failed += !run(5, "crystal axioms on BFS graphs", axioms);
    failed += !run(6, "purity identity on f_max records", purity);
    failed += !run(7, "torsion component counts", counts);
    failed += !run(8, "connectivity to the empty component", connectivity);
    failed += !run(9, "oracle agreement", oracles);
    failed += !run(10, "rigidity classification", rigidity);
    std::printf("%d of 10 criteria failed\n", failed);
    return failed ? 1 : 0;
}
