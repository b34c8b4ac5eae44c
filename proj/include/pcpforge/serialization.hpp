#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "boolean_fourier.hpp"
#include "label_cover.hpp"
#include "reductions.hpp"

// JSON schemas (labelcover.v1, labeling.v1, booltable.v1, proofs.v1)
// and DIMACS-like text exports. Vertices and labels are 1-based on the
// wire, 0-based in memory.

namespace pcpforge {

using Json = nlohmann::json;

inline Json to_json(const LabelCoverInstance& lc) {
    Json edges = Json::array();
    for (const auto& e : lc.edges) {
        Json pi = Json::array();
        for (int t : e.pi) pi.push_back(t + 1);
        edges.push_back({{"u", e.u + 1}, {"v", e.v + 1}, {"pi", pi}});
    }
    return {{"k", lc.k}, {"m", lc.m},          {"u_count", lc.u_count},
            {"v_count", lc.v_count}, {"edges", edges}};
}

inline LabelCoverInstance label_cover_from_json(const Json& j) {
    LabelCoverInstance lc;
    try {
        lc.k = j.at("k").get<int>();
        lc.m = j.at("m").get<int>();
        lc.u_count = j.at("u_count").get<int>();
        lc.v_count = j.at("v_count").get<int>();
        for (const auto& je : j.at("edges")) {
            LabelCoverInstance::Edge e;
            e.u = je.at("u").get<int>() - 1;
            e.v = je.at("v").get<int>() - 1;
            for (const auto& t : je.at("pi")) e.pi.push_back(t.get<int>() - 1);
            lc.edges.push_back(std::move(e));
        }
    } catch (const Json::exception& ex) {
        throw input_error(std::string("labelcover.v1: ") + ex.what());
    }
    lc.validate();
    return lc;
}

inline Json to_json(const Labeling& labeling) {
    Json left = Json::array(), right = Json::array();
    for (int l : labeling.left) left.push_back(l + 1);
    for (int l : labeling.right) right.push_back(l + 1);
    return {{"left", left}, {"right", right}};
}

inline Labeling labeling_from_json(const Json& j) {
    Labeling labeling;
    try {
        for (const auto& l : j.at("left")) labeling.left.push_back(l.get<int>() - 1);
        for (const auto& l : j.at("right")) labeling.right.push_back(l.get<int>() - 1);
    } catch (const Json::exception& ex) {
        throw input_error(std::string("labeling.v1: ") + ex.what());
    }
    return labeling;
}

inline Json to_json(const BooleanTable& table) {
    Json values = Json::array();
    for (int8_t v : table.values) values.push_back(static_cast<int>(v));
    return {{"dim", table.dim},
            {"mode", table.mode == BooleanTable::Mode::pm1 ? "pm1" : "indicator"},
            {"values", values}};
}

inline BooleanTable boolean_table_from_json(const Json& j) {
    BooleanTable t;
    try {
        t.dim = j.at("dim").get<int>();
        std::string mode = j.at("mode").get<std::string>();
        if (mode == "pm1")
            t.mode = BooleanTable::Mode::pm1;
        else if (mode == "indicator")
            t.mode = BooleanTable::Mode::indicator;
        else
            throw input_error("booltable.v1: unknown mode " + mode);
        for (const auto& v : j.at("values")) t.values.push_back(static_cast<int8_t>(v.get<int>()));
    } catch (const Json::exception& ex) {
        throw input_error(std::string("booltable.v1: ") + ex.what());
    }
    t.validate();
    return t;
}

// proofs.v1: tables keyed by 1-based vertex id, per side.
inline Json to_json(const ProofAssignment& proofs) {
    Json left = Json::object(), right = Json::object();
    for (std::size_t u = 0; u < proofs.left.size(); ++u)
        left[std::to_string(u + 1)] = to_json(proofs.left[u]);
    for (std::size_t v = 0; v < proofs.right.size(); ++v)
        right[std::to_string(v + 1)] = to_json(proofs.right[v]);
    return {{"folded", proofs.folded}, {"left", left}, {"right", right}};
}

inline ProofAssignment proofs_from_json(const Json& j) {
    ProofAssignment proofs;
    try {
        proofs.folded = j.at("folded").get<bool>();
        auto read_side = [](const Json& side, std::vector<BooleanTable>& out) {
            out.resize(side.size());
            for (const auto& [key, val] : side.items()) {
                std::size_t id = std::stoull(key);
                if (id < 1 || id > out.size())
                    throw input_error("proofs.v1: vertex id out of range: " + key);
                out[id - 1] = boolean_table_from_json(val);
            }
        };
        read_side(j.at("left"), proofs.left);
        read_side(j.at("right"), proofs.right);
    } catch (const Json::exception& ex) {
        throw input_error(std::string("proofs.v1: ") + ex.what());
    }
    return proofs;
}

// --- text exports ---------------------------------------------------------

inline void write_wcnf(std::ostream& os, const CnfInstance& cnf) {
    os << "p wcnf " << cnf.var_count << " " << cnf.clauses.size() << "\n";
    for (const auto& c : cnf.clauses) {
        os << numerator(c.weight) << " " << denominator(c.weight);
        for (int lit : c.literals) os << " " << lit;
        os << " 0\n";
    }
}

inline void write_setsplit(std::ostream& os, const SetSplitInstance& inst) {
    os << "p setsplit " << inst.element_count << " " << inst.sets.size() << "\n";
    for (const auto& s : inst.sets) {
        os << numerator(s.weight) << " " << denominator(s.weight);
        for (auto e : s.elements) os << " " << e + 1;
        os << "\n";
    }
}

inline void write_hypergraph(std::ostream& os, const HypergraphInstance& h,
                             std::size_t cap_states = std::size_t(1) << 20) {
    auto edges = enumerate_hyperedges(h, cap_states);
    os << "p hyper " << h.vertex_count() << " " << edges.size() << "\n";
    for (const auto& e : edges) {
        os << e.vertices[0] + 1 << " " << e.vertices[1] + 1 << " " << e.vertices[2] + 1 << " "
           << e.vertices[3] + 1 << "\n";
    }
}

}  // namespace pcpforge
