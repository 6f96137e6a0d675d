#pragma once

#include <twosq/criteria.hpp>

#include <json.hpp>

#include <fstream>
#include <map>
#include <string>

namespace twosq {

// File format, one descriptor object or an array of them:
// {"d": int, "h": [c0, c1, ...],
//  "classes": [{"name": "D1"|"D2", "symbols": [[base, 1|-1], ...],
//               "poly_insolvable": bool, "weight": "1"|"1/2"}],
//  "include_s1": bool, "accept": "not_equal_one"|"even_total"}

inline nlohmann::json descriptor_to_json(const CriterionDescriptor& desc) {
    nlohmann::json j;
    j["d"] = desc.d.convert_to<long long>();
    j["h"] = nlohmann::json::array();
    for (const Int& c : desc.h_coeffs) j["h"].push_back(c.convert_to<long long>());
    j["classes"] = nlohmann::json::array();
    for (const ClassRule& rule : desc.classes) {
        nlohmann::json r;
        r["name"] = render(rule.name);
        r["symbols"] = nlohmann::json::array();
        for (const auto& [base, required] : rule.symbol_conditions)
            r["symbols"].push_back({base.convert_to<long long>(), required});
        r["poly_insolvable"] = rule.require_poly_insolvable;
        r["weight"] = rule.weight_halves == 2 ? "1" : "1/2";
        j["classes"].push_back(r);
    }
    j["include_s1"] = desc.include_s1;
    j["accept"] = desc.accept == AcceptRule::not_equal_one ? "not_equal_one" : "even_total";
    return j;
}

inline CriterionDescriptor descriptor_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("descriptor: expected an object");
    CriterionDescriptor desc;
    try {
        desc.d = Int(j.at("d").get<long long>());
        for (const auto& c : j.at("h")) desc.h_coeffs.emplace_back(c.get<long long>());
        for (const auto& r : j.at("classes")) {
            ClassRule rule;
            std::string name = r.at("name").get<std::string>();
            if (name == "D1") {
                rule.name = PrimeClass::D1;
            } else if (name == "D2") {
                rule.name = PrimeClass::D2;
            } else {
                throw ParseError("descriptor: class name must be D1 or D2, got " + name);
            }
            for (const auto& s : r.at("symbols")) {
                if (!s.is_array() || s.size() != 2) throw ParseError("descriptor: symbol must be [base, required]");
                int required = s.at(1).get<int>();
                if (required != 1 && required != -1) throw ParseError("descriptor: required symbol value must be +-1");
                rule.symbol_conditions.emplace_back(Int(s.at(0).get<long long>()), required);
            }
            rule.require_poly_insolvable = r.at("poly_insolvable").get<bool>();
            std::string w = r.at("weight").get<std::string>();
            if (w == "1") {
                rule.weight_halves = 2;
            } else if (w == "1/2") {
                rule.weight_halves = 1;
            } else {
                throw ParseError("descriptor: weight must be \"1\" or \"1/2\", got " + w);
            }
            desc.classes.push_back(std::move(rule));
        }
        desc.include_s1 = j.at("include_s1").get<bool>();
        std::string accept = j.at("accept").get<std::string>();
        if (accept == "not_equal_one") {
            desc.accept = AcceptRule::not_equal_one;
        } else if (accept == "even_total") {
            desc.accept = AcceptRule::even_total;
        } else {
            throw ParseError("descriptor: accept must be not_equal_one or even_total, got " + accept);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("descriptor: ") + e.what());
    }
    bool any_poly = false;
    for (const ClassRule& rule : desc.classes) any_poly = any_poly || rule.require_poly_insolvable;
    if (any_poly && desc.h_coeffs.empty())
        throw ParseError("descriptor: poly_insolvable rule needs nonempty h");
    return desc;
}

inline std::map<Int, CriterionDescriptor> load_descriptor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open descriptor file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("descriptor file " + path + ": " + e.what());
    }
    std::map<Int, CriterionDescriptor> out;
    if (j.is_array()) {
        for (const auto& item : j) {
            CriterionDescriptor d = descriptor_from_json(item);
            out.emplace(d.d, std::move(d));
        }
    } else {
        CriterionDescriptor d = descriptor_from_json(j);
        out.emplace(d.d, std::move(d));
    }
    return out;
}

}  // namespace twosq
