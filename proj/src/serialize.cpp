#include "oqsim/serialize.hpp"

#include <cstdio>

namespace oqsim {

ordered_json state_to_json(const PureState& state) {
    ordered_json j;
    j["layout"] = {{"spatial", state.layout().spatial}, {"polarized", state.layout().polarized}};
    ordered_json terms = ordered_json::array();
    for (const auto& [occ, amp] : state.terms()) {
        ordered_json t;
        t["occ"] = occ;
        t["re"] = amp.real();
        t["im"] = amp.imag();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

PureState state_from_json(const ordered_json& j) {
    ModeLayout layout{j.at("layout").at("spatial").get<int>(),
                      j.at("layout").at("polarized").get<bool>()};
    TruncationConfig trunc = TruncationConfig::with_photons(16);
    PureState s(layout, trunc);
    for (const auto& t : j.at("terms")) {
        Occupation occ = t.at("occ").get<Occupation>();
        s.set_term(std::move(occ), cd(t.at("re").get<double>(), t.at("im").get<double>()));
    }
    return s;
}

namespace {

std::string kind_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::phase: return "phase";
        case ElementKind::beam_splitter: return "bs";
        case ElementKind::polarization_rotation: return "polrot";
        case ElementKind::pbs: return "pbs";
        case ElementKind::mirror: return "mirror";
    }
    return "?";
}

ElementKind kind_from_name(const std::string& name) {
    if (name == "phase") return ElementKind::phase;
    if (name == "bs") return ElementKind::beam_splitter;
    if (name == "polrot") return ElementKind::polarization_rotation;
    if (name == "pbs") return ElementKind::pbs;
    if (name == "mirror") return ElementKind::mirror;
    throw InvalidSpec("unknown circuit element kind: " + name);
}

}  // namespace

ordered_json circuit_to_json(const std::vector<ElementSpec>& circuit) {
    ordered_json j = ordered_json::array();
    for (const ElementSpec& e : circuit) {
        ordered_json el;
        el["kind"] = kind_name(e.kind);
        if (e.kind == ElementKind::beam_splitter || e.kind == ElementKind::polarization_rotation)
            el["theta"] = e.theta;
        if (e.kind != ElementKind::pbs && e.kind != ElementKind::mirror) el["phi"] = e.phi;
        el["modes"] = e.modes;
        j.push_back(std::move(el));
    }
    return j;
}

std::vector<ElementSpec> circuit_from_json(const ordered_json& j) {
    std::vector<ElementSpec> out;
    for (const auto& el : j) {
        ElementSpec e;
        e.kind = kind_from_name(el.at("kind").get<std::string>());
        e.theta = el.value("theta", 0.0);
        e.phi = el.value("phi", 0.0);
        e.modes = el.at("modes").get<std::vector<ModeId>>();
        out.push_back(std::move(e));
    }
    return out;
}

ordered_json fusion_table_to_json(const std::vector<FusionOutcome>& outcomes) {
    ordered_json j = ordered_json::array();
    for (const auto& o : outcomes) {
        ordered_json row;
        row["signature"] = o.signature;
        row["probability"] = o.probability;
        row["state"] = state_to_json(o.conditional_state);
        j.push_back(std::move(row));
    }
    return j;
}

ordered_json graph_to_json(const ClusterGraph& graph) {
    ordered_json j;
    j["vertices"] = graph.vertices;
    ordered_json adjacency = ordered_json::array();
    for (int v : graph.vertices) adjacency.push_back(graph.neighbors(v));
    j["adjacency"] = std::move(adjacency);
    ordered_json corr = ordered_json::object();
    for (const auto& [id, frame] : graph.corrections) {
        std::string label;
        if (frame.x & 1) label += "X";
        if (frame.z & 1) label += "Z";
        if (!label.empty()) corr[std::to_string(id)] = label;
    }
    j["corrections"] = std::move(corr);
    return j;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ",";
        line += fields[i];
    }
    return line;
}

std::string csv_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

}  // namespace oqsim
