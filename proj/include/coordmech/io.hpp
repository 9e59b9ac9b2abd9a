#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "coordmech/instance.hpp"

namespace coordmech {

// Instance file schema:
//   {"jobs": n, "machines": m, "loads": [[entry, ...], ...]}
// where entry is an integer, a decimal string (parsed exactly), a fraction
// string "a/b", or the string "inf". Row i = job i, column j = machine j.

inline LoadEntry parse_load_entry(const nlohmann::json& e) {
    if (e.is_string()) {
        std::string s = e.get<std::string>();
        if (s == "inf") return std::nullopt;
        return parse_rational(s);
    }
    if (e.is_number_integer()) return Rat(static_cast<long>(e.get<long long>()));
    throw ParseError("load entry must be an integer, a decimal/fraction string, or \"inf\"");
}

inline Instance instance_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("jobs") || !doc.contains("machines") ||
        !doc.contains("loads"))
        throw ParseError("instance document needs \"jobs\", \"machines\", and \"loads\"");
    Instance inst;
    inst.n = doc.at("jobs").get<int>();
    inst.m = doc.at("machines").get<int>();
    if (!doc.at("loads").is_array()) throw ParseError("\"loads\" must be an array of rows");
    for (const auto& row : doc.at("loads")) {
        std::vector<LoadEntry> r;
        if (!row.is_array()) throw ParseError("each loads row must be an array");
        for (const auto& e : row) r.push_back(parse_load_entry(e));
        inst.loads.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < inst.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < inst.m; ++j)
            row.push_back(inst.finite(i, j) ? to_exact_string(inst.load(i, j))
                                            : std::string("inf"));
        rows.push_back(std::move(row));
    }
    return {{"jobs", inst.n}, {"machines", inst.m}, {"loads", std::move(rows)}};
}

inline Instance parse_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed instance document: ") + e.what());
    }
    return instance_from_json(doc);
}

inline std::string serialize_instance(const Instance& inst) {
    return instance_to_json(inst).dump(2);
}

// Assignment file schema: {"machine_of": [j0, j1, ...]}.
inline Assignment assignment_from_json(const nlohmann::json& doc, const Instance& inst) {
    if (!doc.is_object() || !doc.contains("machine_of"))
        throw ParseError("assignment document needs \"machine_of\"");
    Assignment a;
    a.machine_of = doc.at("machine_of").get<std::vector<int>>();
    validate_assignment(inst, a);
    return a;
}

inline Assignment parse_assignment(const std::string& text, const Instance& inst) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed assignment document: ") + e.what());
    }
    return assignment_from_json(doc, inst);
}

inline nlohmann::json assignment_to_json(const Assignment& a) {
    return {{"machine_of", a.machine_of}};
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

} // namespace coordmech
