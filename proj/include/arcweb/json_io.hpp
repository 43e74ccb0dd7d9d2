#pragma once

// JSON round-trips for the combinatorial types and the report structures the
// command-line tool emits.  Compact text forms (weights, blocks, matchings,
// polynomials) serialise as strings; structured reports as objects.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "arcweb/bgg.hpp"
#include "arcweb/cupdiag.hpp"
#include "arcweb/functors.hpp"
#include "arcweb/laurent.hpp"
#include "arcweb/matching.hpp"
#include "arcweb/surgery.hpp"
#include "arcweb/weights.hpp"

namespace arcweb {

inline void to_json(nlohmann::json& j, const Weight& w) { j = w.str(); }
inline void from_json(const nlohmann::json& j, Weight& w) {
    w = Weight::parse(j.get<std::string>());
}

inline void to_json(nlohmann::json& j, const Block& b) { j = b.str(); }
inline void from_json(const nlohmann::json& j, Block& b) {
    b = Block::parse(j.get<std::string>());
}

inline void to_json(nlohmann::json& j, const Laurent& p) { j = p.to_string(); }
inline void from_json(const nlohmann::json& j, Laurent& p) {
    p = Laurent::parse(j.get<std::string>());
}

inline void to_json(nlohmann::json& j, const ArcSet& c) {
    j = nlohmann::json::object();
    j["arcs"] = nlohmann::json::array();
    for (auto& [i, k] : c.arcs) j["arcs"].push_back({i, k});
    j["rays"] = nlohmann::json::object();
    for (auto& [pos, tag] : c.rays)
        j["rays"][std::to_string(pos)] = std::string(1, lab_char(tag));
}
inline void from_json(const nlohmann::json& j, ArcSet& c) {
    c = ArcSet{};
    for (auto& a : j.at("arcs")) c.arcs.emplace_back(a.at(0).get<int>(), a.at(1).get<int>());
    for (auto& [key, val] : j.at("rays").items())
        c.rays[std::stoi(key)] = lab_of_char(val.get<std::string>().at(0));
    c.normalize();
}

inline void to_json(nlohmann::json& j, const Matching& m) {
    j = nlohmann::json{{"bottom", m.bottom}, {"top", m.top}, {"arcs", m.str()}};
}
inline void from_json(const nlohmann::json& j, Matching& m) {
    m = Matching::parse(j.at("arcs").get<std::string>(), j.at("bottom").get<Block>(),
                        j.at("top").get<Block>());
}

inline void to_json(nlohmann::json& j, const BasisElem& e) { j = e.str(); }
inline void from_json(const nlohmann::json& j, BasisElem& e) {
    e = BasisElem::parse(j.get<std::string>());
}

inline void to_json(nlohmann::json& j, const FiltrationLayer& l) {
    j = nlohmann::json{{"weight", l.mu}, {"shift", l.shift}};
}

inline void to_json(nlohmann::json& j, const ProjectiveImage& p) {
    j = nlohmann::json{{"head", p.head}, {"circles", p.circles}, {"shift", p.shift}};
}

inline void to_json(nlohmann::json& j, const BGGReport& r) {
    j = nlohmann::json{{"mu", r.mu},
                       {"kostant", r.kostant},
                       {"d_squared_zero", r.d_squared_zero},
                       {"exact_positions", r.exact_positions},
                       {"verdict", r.verdict}};
}

}  // namespace arcweb
