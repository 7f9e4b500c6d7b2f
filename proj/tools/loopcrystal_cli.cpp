#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "loopcrystal/oracle_cyclic.hpp"
#include "loopcrystal/oracle_p1.hpp"
#include "loopcrystal/serialize.hpp"

using namespace loopcrystal;

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
}

CurveConfig load_config(const std::string& path, const std::string& weights) {
    if (!path.empty()) return parse_config(read_json(path));
    Json j{{"weights", Json::array()}};
    std::stringstream ss(weights);
    for (std::string w; std::getline(ss, w, ',');)
        if (!w.empty()) j["weights"].push_back(std::stoi(w));
    return parse_config(j);
}

// Splits at commas outside brackets, so "S(1,0,1),O" has two items.
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

ComponentLabel load_component(const Catalog& C, const std::string& arg) {
    if (arg == "empty" || arg.empty()) return {};
    return component_from_json(C, read_json(arg));
}

std::string regime(const Curve& X) {
    if (X.genus() < Q(1)) return "finite";
    if (X.genus() == Q(1)) return "tubular";
    return "wild";
}

std::string qstr(const Q& q) {
    return std::to_string(q.numerator()) + (q.denominator() == 1 ? "" : "/" + std::to_string(q.denominator()));
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv("LOOPCRYSTAL_SEED")) return std::strtoull(s, nullptr, 10);
    return 1;
}

Json report(const std::string& test, const Json& expected, const Json& observed) {
    return {{"test", test}, {"expected", expected}, {"observed", observed}, {"agree", expected == observed}};
}

Json cyclic_suite(std::uint64_t seed, int trials) {
    Json out = Json::array();
    for (int p = 2; p <= 3; ++p) {
        std::vector<int> dims(static_cast<std::size_t>(p), 0);
        while (true) {
            for (const auto& m : aperiodic_multisegments(0, p, dims)) {
                Json jm = Json::array();
                for (const auto& [s, c] : m.mult) jm.push_back({s.first, s.second, c});
                const std::string name = "p=" + std::to_string(p) + " " + jm.dump();
                const Json round = recover_type(cyclic::build_rep<Fp>(m, p), 0) == m;
                out.push_back(report("round trip " + name, true, round));
                for (int j = 0; j < p; ++j) {
                    const auto r = simple_color_rule(m, p, j);
                    const auto s = sample_operator<Fp>(m, p, j, 1, trials, seed + static_cast<std::uint64_t>(out.size()));
                    Json q1 = Json::array(), q2 = Json::array();
                    for (const auto& [sg, c] : r.fmax.mult) q1.push_back({sg.first, sg.second, c});
                    for (const auto& [sg, c] : s.fmax.mult) q2.push_back({sg.first, sg.second, c});
                    out.push_back(report("simple S_" + std::to_string(j) + " on " + name, Json{{"eps", r.eps}, {"fmax", q1}},
                                         Json{{"eps", s.eps}, {"fmax", q2}}));
                }
            }
            std::size_t k = 0;
            while (k < dims.size() && ++dims[k] > 2) dims[k++] = 0;
            if (k == dims.size()) break;
        }
    }
    return out;
}

Json p1_suite(std::uint64_t seed, int trials) {
    Json out = Json::array();
    for (int l = 0; l <= 5; ++l)
        for (int n = 0; l + n <= 5; ++n) {
            if (l + n == 0) continue;
            std::vector<int> degs(static_cast<std::size_t>(l), 1);
            degs.insert(degs.end(), static_cast<std::size_t>(n), 0);
            const std::string name = "O(1)^" + std::to_string(l) + "+O^" + std::to_string(n);
            const auto s = p1_sample_operator(degs, {}, -1, trials, seed + static_cast<std::uint64_t>(10 * l + n));
            out.push_back(report("eps O(-1) on " + name, n + l, s.eps));
            out.push_back(report("fmax O(-1) on " + name,
                                 Json{{"rank", 0}, {"torsion", Partition(static_cast<std::size_t>(n + 2 * l), 1)}},
                                 Json{{"rank", s.fmax.rank}, {"torsion", s.fmax.nu}}));
            const auto o = p1_sample_operator(degs, {}, 0, trials, seed + 100 + static_cast<std::uint64_t>(10 * l + n));
            out.push_back(report("eps O on " + name, n + l, o.eps));
        }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loop crystals of weighted projective lines"};
    app.require_subcommand(1);
    std::string config_path, weights;
    app.add_option("--config", config_path, "curve config JSON file");
    app.add_option("--weights", weights, "comma-separated weights (alternative to --config)");

    auto* curve = app.add_subcommand("curve", "curve data");
    auto* curve_info = curve->add_subcommand("info", "genus, dualizing element and regime");
    curve->require_subcommand(1);

    auto* cls = app.add_subcommand("class", "K-theory classes");
    cls->require_subcommand(1);
    std::string A, B;
    auto* cls_euler = cls->add_subcommand("euler", "Euler form <A,B>");
    cls_euler->add_option("A", A)->required();
    cls_euler->add_option("B", B)->required();
    auto* cls_slope = cls->add_subcommand("slope", "slope of A");
    cls_slope->add_option("A", A)->required();

    auto* sheaf = app.add_subcommand("sheaf", "indecomposable sheaves");
    sheaf->require_subcommand(1);
    auto* sheaf_hom = sheaf->add_subcommand("hom", "dim Hom and dim Ext between labels");
    sheaf_hom->add_option("A", A)->required();
    sheaf_hom->add_option("B", B)->required();
    auto* sheaf_rigid = sheaf->add_subcommand("rigid", "rigidity of a label");
    sheaf_rigid->add_option("A", A)->required();

    auto* comp = app.add_subcommand("components", "irreducible components");
    comp->require_subcommand(1);
    auto* comp_list = comp->add_subcommand("list", "enumerate components of a class");
    std::string class_arg;
    int max_parts = 3;
    comp_list->add_option("--class", class_arg)->required();
    comp_list->add_option("--max-parts", max_parts, "HN leaves (tubular regime)");

    auto* crys = app.add_subcommand("crystal", "crystal operators");
    crys->require_subcommand(1);
    auto* apply = crys->add_subcommand("apply", "apply one operator");
    std::string op = "f", color, component = "empty";
    int s_arg = 1;
    apply->add_option("--op", op, "f, e, fmax, es, eps or phi")->check(CLI::IsMember({"f", "e", "fmax", "es", "eps", "phi"}));
    apply->add_option("--color", color)->required();
    apply->add_option("--component", component, "component JSON file or 'empty'");
    apply->add_option("--s", s_arg, "power for es");
    auto* graph = crys->add_subcommand("graph", "BFS crystal graph");
    std::string seeds = "empty", colors, bound, verify;
    std::int64_t max_rank = -1, max_deg = -1;
    std::size_t max_nodes = 20000;
    bool dot = false;
    graph->add_option("--seeds", seeds, "'empty' or comma-separated component files");
    graph->add_option("--colors", colors, "comma-separated labels")->required();
    graph->add_option("--max-rank", max_rank);
    graph->add_option("--max-deg", max_deg);
    graph->add_option("--bound", bound, "class bound: weights stay below it");
    graph->add_option("--max-nodes", max_nodes);
    graph->add_option("--verify", verify, "check the axioms: literal or symmetrized")
        ->check(CLI::IsMember({"literal", "symmetrized"}));
    graph->add_flag("--dot", dot, "emit DOT instead of JSON");
    auto* path = crys->add_subcommand("path", "operator path to the empty component");
    path->add_option("--component", component)->required();

    auto* oracle = app.add_subcommand("oracle", "randomized exact checks");
    oracle->require_subcommand(1);
    auto* check = oracle->add_subcommand("check", "agreement report");
    std::string suite = "cyclic";
    std::uint64_t seed = default_seed();
    int trials = 8;
    check->add_option("--suite", suite)->check(CLI::IsMember({"cyclic", "p1"}));
    check->add_option("--seed", seed, "default from LOOPCRYSTAL_SEED");
    check->add_option("--trials", trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; usage errors exit 1.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const CurveConfig cfg = load_config(config_path, weights);
        const Curve X(cfg.data());
        const Catalog C(X);
        const Components K(C);
        const Crystal Kr(K, CrystalOptions{trials, seed});
        Json out;

        if (curve_info->parsed()) {
            std::int64_t krank = 2;
            for (int i = 0; i < X.n(); ++i) krank += X.p(i) - 1;
            Json lam = Json::array();
            for (const auto& p : cfg.data().lambda) lam.push_back(p.str());
            out = {{"weights", cfg.data().p},
                   {"lambda", lam},
                   {"genus", qstr(X.genus())},
                   {"omega", X.lattice().str(X.lattice().omega())},
                   {"p", X.lattice().p_lcm()},
                   {"regime", regime(X)},
                   {"k_rank", krank}};
        } else if (cls_euler->parsed()) {
            out = {{"euler", X.euler(parse_class(X, A), parse_class(X, B))}};
        } else if (cls_slope->parsed()) {
            out = {{"slope", X.slope(parse_class(X, A)).str()}};
        } else if (sheaf_hom->parsed()) {
            const auto a = parse_label(C, A), b = parse_label(C, B);
            out = {{"hom", C.hom_dim(a, b)}, {"ext", C.ext_dim(a, b)}};
        } else if (sheaf_rigid->parsed()) {
            out = {{"rigid", C.is_rigid(parse_label(C, A))}};
        } else if (comp_list->parsed()) {
            const KClass a = parse_class(X, class_arg);
            if (!X.is_positive(a)) throw ParseError("class is not positive");
            std::vector<ComponentLabel> labels;
            if (X.rank(a) == 0) labels = K.enumerate_torsion(a);
            else if (X.genus() < Q(1)) labels = K.enumerate_finite(a);
            else if (X.genus() == Q(1)) labels = K.enumerate_tubular(a, max_parts, HNBound{});
            else throw CrystalError("unsupported component family");
            out = Json::array();
            for (const auto& Z : labels) out.push_back({{"text", K.str(Z)}, {"label", to_json(X, Z)}});
        } else if (apply->parsed()) {
            const auto Z = load_component(C, component);
            const auto I = parse_label(C, color);
            auto emit = [&](const ComponentLabel& R) { return Json{{"text", K.str(R)}, {"label", to_json(X, R)}}; };
            if (op == "eps") out = {{"eps", Kr.epsilon(Z, I)}};
            else if (op == "phi") out = {{"phi", Kr.phi(Z, I)}};
            else if (op == "fmax") out = emit(Kr.f_max(Z, I));
            else if (op == "es") out = emit(Kr.e_s(Z, I, s_arg));
            else if (op == "e") out = emit(Kr.e(Z, I));
            else if (auto r = Kr.f(Z, I)) out = emit(*r);
            else out = {{"zero", true}};
        } else if (graph->parsed()) {
            std::vector<ComponentLabel> sd;
            for (const auto& s : split_top(seeds)) sd.push_back(load_component(C, s));
            std::vector<IndecLabel> cl;
            for (const auto& c : split_top(colors)) cl.push_back(parse_label(C, c));
            Budget b;
            if (max_rank >= 0) b.max_rank = max_rank;
            if (max_deg >= 0) b.max_abs_deg = max_deg;
            if (!bound.empty()) b.bound = parse_class(X, bound);
            b.max_nodes = max_nodes;
            const auto G = build_graph(Kr, sd, cl, b);
            std::vector<Violation> bad;
            if (!verify.empty())
                bad = verify_axioms(X, C, G, verify == "literal" ? PhiForm::literal : PhiForm::symmetrized);
            if (dot) {
                std::cout << to_dot(C, K, G);
            } else {
                out = to_json(K, G);
                if (!verify.empty()) {
                    out["violations"] = Json::array();
                    for (const auto& v : bad) out["violations"].push_back({{"axiom", v.axiom}, {"detail", v.detail}});
                }
                std::cout << out.dump(2) << '\n';
            }
            if (!bad.empty()) return 3;
            return 0;
        } else if (path->parsed()) {
            out = to_json(C, connectivity_path(Kr, load_component(C, component)));
        } else if (check->parsed()) {
            out = suite == "cyclic" ? cyclic_suite(seed, trials) : p1_suite(seed, trials);
            bool all = true;
            for (const auto& r : out) all = all && r["agree"].get<bool>();
            std::cout << out.dump(2) << '\n';
            return all ? 0 : 3;
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    } catch (const CrystalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return std::string(e.what()).find("unsupported") != std::string::npos ? 2 : 3;
    } catch (const CyclicSampleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const P1SampleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        const std::string w = e.what();
        std::cerr << "error: " << w << '\n';
        if (w.find("unsupported") != std::string::npos || w == "wrong regime" || w == "unbounded") return 2;
        std::cerr << app.help();
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
