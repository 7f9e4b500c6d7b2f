#pragma once
// JSON schemas and text grammars for curves, classes, labels and graphs.
// Point indices are 1-based everywhere outside the library.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "loopcrystal/crystal.hpp"

namespace loopcrystal {

using Json = nlohmann::json;

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// {"weights": [int], "lambda": ["0", "inf", "1/2", ...], "labels": [str]}
struct CurveConfig {
    std::vector<int> weights;
    std::vector<ProjPoint> lambda;
    std::vector<std::string> labels;
    WeightData data() const { return WeightData::make(weights, lambda); }
};
CurveConfig parse_config(const Json& j);
Json config_json(const CurveConfig& c);
ProjPoint parse_point(const std::string& s);

Json to_json(const LElement& x);
LElement lelement_from_json(const StarLattice& L, const Json& j);
LElement parse_lelement(const StarLattice& L, const std::string& s);  // "2c-x1", "-1", "0"

Json to_json(const Curve& X, const KClass& a);
KClass kclass_from_json(const Curve& X, const Json& j);
KClass parse_class(const Curve& X, const std::string& s);  // "2*O + delta - S[1,1]"

Json to_json(const Curve& X, const IndecLabel& a);
IndecLabel label_from_json(const Catalog& C, const Json& j);
IndecLabel parse_label(const Catalog& C, const std::string& s);  // "O", "O(-1)", "O(-c)", "S(1,0,2)", "Ox(0,3)"

Json to_json(const Curve& X, const ComponentLabel& Z);
ComponentLabel component_from_json(const Catalog& C, const Json& j);

Json to_json(const Components& K, const CrystalGraph& G);
Json to_json(const Catalog& C, const std::vector<PathStep>& path);

}  // namespace loopcrystal
