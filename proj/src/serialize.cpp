#include "loopcrystal/serialize.hpp"

#include <cctype>
#include <regex>

namespace loopcrystal {

namespace {

std::string no_space(const std::string& s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    return out;
}

// Splits "a+b-c" into signed terms, ignoring separators inside brackets.
std::vector<std::pair<int, std::string>> signed_terms(const std::string& s) {
    std::vector<std::pair<int, std::string>> out;
    int depth = 0, sign = 1;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.emplace_back(sign, cur);
        else if (!out.empty() || sign < 0) throw ParseError("dangling sign in '" + s + "'");
        cur.clear();
    };
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth == 0 && (ch == '+' || ch == '-')) {
            if (!cur.empty() || !out.empty()) flush();
            sign = ch == '-' ? -1 : 1;
            continue;
        }
        cur += ch;
    }
    if (cur.empty()) throw ParseError("empty term in '" + s + "'");
    out.emplace_back(sign, cur);
    return out;
}

std::int64_t to_int(const std::string& s) {
    try {
        std::size_t used = 0;
        const auto v = std::stoll(s, &used);
        if (used != s.size()) throw ParseError("bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad integer '" + s + "'");
    }
}

}  // namespace

ProjPoint parse_point(const std::string& raw) {
    const std::string s = no_space(raw);
    if (s == "inf") return ProjPoint::inf();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return ProjPoint::finite(Q(to_int(s)));
    const auto den = to_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator");
    return ProjPoint::finite(Q(to_int(s.substr(0, slash)), den));
}

CurveConfig parse_config(const Json& j) {
    CurveConfig c;
    if (!j.contains("weights") || !j["weights"].is_array()) throw ParseError("config needs a weights array");
    for (const auto& w : j["weights"]) c.weights.push_back(w.get<int>());
    if (j.contains("lambda"))
        for (const auto& l : j["lambda"]) c.lambda.push_back(parse_point(l.is_string() ? l.get<std::string>() : l.dump()));
    if (j.contains("labels"))
        for (const auto& l : j["labels"]) c.labels.push_back(l.get<std::string>());
    c.data().validate();
    return c;
}

Json config_json(const CurveConfig& c) {
    Json j;
    j["weights"] = c.weights;
    Json lam = Json::array();
    for (const auto& p : c.data().lambda) lam.push_back(p.str());
    j["lambda"] = lam;
    if (!c.labels.empty()) j["labels"] = c.labels;
    return j;
}

Json to_json(const LElement& x) { return {{"l", x.l}, {"residues", x.residues}}; }

LElement lelement_from_json(const StarLattice& L, const Json& j) {
    std::vector<std::int64_t> coeffs;
    for (const auto& r : j.at("residues")) coeffs.push_back(r.get<std::int64_t>());
    if (static_cast<int>(coeffs.size()) != L.n()) throw ParseError("residue count mismatch");
    return L.normalize(coeffs, j.at("l").get<std::int64_t>());
}

LElement parse_lelement(const StarLattice& L, const std::string& raw) {
    const std::string s = no_space(raw);
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(L.n()), 0);
    std::int64_t cm = 0;
    static const std::regex term(R"((\d*)(c|x(\d+))?)");
    for (const auto& [sign, t] : signed_terms(s)) {
        std::smatch m;
        if (!std::regex_match(t, m, term) || (m[1].length() == 0 && !m[2].matched))
            throw ParseError("bad grading element '" + raw + "'");
        const std::int64_t k = sign * (m[1].length() ? to_int(m[1].str()) : 1);
        if (!m[2].matched) {
            cm += k;
        } else if (m[2].str() == "c") {
            cm += k;
        } else {
            const auto i = to_int(m[3].str());
            if (i < 1 || i > L.n()) throw ParseError("point index out of range in '" + raw + "'");
            coeffs[static_cast<std::size_t>(i - 1)] += k;
        }
    }
    return L.normalize(coeffs, cm);
}

Json to_json(const Curve& X, const KClass& a) {
    Json m = Json::object();
    for (int i = 0; i < X.n(); ++i)
        for (int j = 1; j < X.p(i); ++j)
            if (const auto v = a.v(X.m_index(i, j)); v != 0) m[std::to_string(i + 1) + "," + std::to_string(j)] = v;
    return {{"r", a.v(0)}, {"d", a.v(1)}, {"m", m}};
}

KClass kclass_from_json(const Curve& X, const Json& j) {
    KClass a = X.zero();
    a.v(0) = j.at("r").get<std::int64_t>();
    a.v(1) = j.at("d").get<std::int64_t>();
    if (j.contains("m"))
        for (const auto& [key, val] : j["m"].items()) {
            const auto comma = key.find(',');
            if (comma == std::string::npos) throw ParseError("bad torsion key '" + key + "'");
            const auto i = to_int(key.substr(0, comma)), jj = to_int(key.substr(comma + 1));
            if (i < 1 || i > X.n() || jj < 1 || jj >= X.p(static_cast<int>(i - 1)))
                throw ParseError("torsion key out of range '" + key + "'");
            a.v(X.m_index(static_cast<int>(i - 1), static_cast<int>(jj))) = val.get<std::int64_t>();
        }
    return a;
}

KClass parse_class(const Curve& X, const std::string& raw) {
    const std::string s = no_space(raw);
    KClass a = X.zero();
    if (s == "0") return a;
    static const std::regex term(R"((?:(\d+)\*?)?(O|delta|S\[(\d+),(\d+)\]))");
    for (const auto& [sign, t] : signed_terms(s)) {
        std::smatch m;
        if (!std::regex_match(t, m, term)) throw ParseError("bad class term '" + t + "'");
        const std::int64_t k = sign * (m[1].matched ? to_int(m[1].str()) : 1);
        const std::string atom = m[2].str();
        if (atom == "O") {
            a.v(0) += k;
        } else if (atom == "delta") {
            a.v(1) += k;
        } else {
            const auto i = to_int(m[3].str()), j = to_int(m[4].str());
            if (i < 1 || i > X.n() || j < 1 || j >= X.p(static_cast<int>(i - 1)))
                throw ParseError("torsion index out of range '" + t + "'");
            a.v(X.m_index(static_cast<int>(i - 1), static_cast<int>(j))) += k;
        }
    }
    return a;
}

Json to_json(const Curve& X, const IndecLabel& a) {
    return std::visit(
        [&](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LineBundle>) return {{"kind", "line"}, {"x", to_json(v.x)}};
            else if constexpr (std::is_same_v<T, ExcTorsion>)
                return {{"kind", "exceptional"}, {"i", v.i + 1}, {"j", v.j}, {"l", v.l}};
            else if constexpr (std::is_same_v<T, OrdTorsion>) return {{"kind", "ordinary"}, {"pt", v.pt}, {"len", v.len}};
            else return {{"kind", "bundle"}, {"class", to_json(X, v.a)}};
        },
        a);
}

IndecLabel label_from_json(const Catalog& C, const Json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "line") return C.line(lelement_from_json(C.curve().lattice(), j.at("x")));
    if (kind == "exceptional") {
        const int i = j.at("i").get<int>();
        if (i < 1 || i > C.curve().n()) throw ParseError("point index out of range");
        return C.exc(i - 1, j.at("j").get<int>(), j.at("l").get<int>());
    }
    if (kind == "ordinary") return OrdTorsion{j.at("pt").get<int>(), j.at("len").get<int>()};
    if (kind == "bundle") return RealBundle{kclass_from_json(C.curve(), j.at("class"))};
    throw ParseError("unknown label kind '" + kind + "'");
}

IndecLabel parse_label(const Catalog& C, const std::string& raw) {
    const std::string s = no_space(raw);
    std::smatch m;
    static const std::regex line(R"(O(?:\((.*)\))?)"), exc(R"(S\((\d+),(-?\d+),(\d+)\))"),
        ord(R"(Ox\((\d+),(\d+)\))"), bundle(R"(E\[(.*)\])");
    try {
        if (std::regex_match(s, m, ord)) return OrdTorsion{static_cast<int>(to_int(m[1])), static_cast<int>(to_int(m[2]))};
        if (std::regex_match(s, m, line))
            return m[1].matched ? C.line(parse_lelement(C.curve().lattice(), m[1].str())) : C.line(0);
        if (std::regex_match(s, m, exc))
            return C.exc(static_cast<int>(to_int(m[1]) - 1), static_cast<int>(to_int(m[2])), static_cast<int>(to_int(m[3])));
        if (std::regex_match(s, m, bundle)) return RealBundle{parse_class(C.curve(), m[1].str())};
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad label '") + raw + "': " + e.what());
    }
    throw ParseError("bad label '" + raw + "'");
}

Json to_json(const Curve& X, const ComponentLabel& Z) {
    Json bundle = Json::array(), hn = Json::array(), exc = Json::array();
    for (const auto& b : Z.bundle) bundle.push_back(to_json(X, b));
    for (const auto& h : Z.hn) hn.push_back(to_json(X, h));
    for (const auto& m : Z.exceptional) {
        Json segs = Json::array();
        for (const auto& [s, c] : m.mult) segs.push_back({s.first, s.second, c});
        exc.push_back({{"i", m.point + 1}, {"segs", segs}});
    }
    Json j{{"bundle", bundle}, {"ordinary", Z.ordinary}, {"exceptional", exc}};
    if (!Z.hn.empty()) j["hn"] = hn;
    return j;
}

ComponentLabel component_from_json(const Catalog& C, const Json& j) {
    const auto& X = C.curve();
    ComponentLabel Z;
    if (j.contains("bundle"))
        for (const auto& b : j["bundle"]) Z.bundle.push_back(label_from_json(C, b));
    if (j.contains("hn"))
        for (const auto& h : j["hn"]) Z.hn.push_back(kclass_from_json(X, h));
    if (j.contains("ordinary"))
        for (const auto& v : j["ordinary"]) {
            const int x = v.get<int>();
            if (x <= 0) throw ParseError("partition parts must be positive");
            Z.ordinary.push_back(x);
        }
    if (j.contains("exceptional"))
        for (const auto& e : j["exceptional"]) {
            const int i = e.at("i").get<int>();
            if (i < 1 || i > X.n()) throw ParseError("point index out of range");
            const int p = X.p(i - 1);
            auto& m = Z.at_point_mut(i - 1);
            for (const auto& s : e.at("segs")) {
                const int l = s.at(1).get<int>(), c = s.at(2).get<int>();
                if (l < 1 || c < 1) throw ParseError("segment length and multiplicity must be positive");
                m.add(((s.at(0).get<int>() % p) + p) % p, l, c);
            }
            if (!m.aperiodic(p)) throw ParseError("multisegment is not aperiodic");
        }
    Z.normalize();
    return Z;
}

Json to_json(const Components& K, const CrystalGraph& G) {
    const auto& X = K.curve();
    const auto& C = K.catalog();
    Json colors = Json::array(), nodes = Json::array(), edges = Json::array();
    for (const auto& c : G.colors) colors.push_back(C.str(c));
    for (std::size_t i = 0; i < G.nodes.size(); ++i)
        nodes.push_back({{"id", i}, {"text", K.str(G.nodes[i])}, {"label", to_json(X, G.nodes[i])},
                         {"weight", to_json(X, G.weights[i])}});
    for (const auto& e : G.edges)
        edges.push_back({{"src", e.src}, {"dst", e.dst}, {"op", "f[" + C.str(G.colors[e.color]) + "]"}});
    return {{"colors", colors}, {"nodes", nodes}, {"edges", edges}, {"truncated", G.truncated}};
}

Json to_json(const Catalog& C, const std::vector<PathStep>& path) {
    Json out = Json::array();
    for (const auto& s : path) out.push_back({{"op", std::string(1, s.op)}, {"color", C.str(s.color)}});
    return out;
}

}  // namespace loopcrystal
