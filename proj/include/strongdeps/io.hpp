#pragma once

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "strongdeps/analysis.hpp"
#include "strongdeps/graph.hpp"
#include "strongdeps/graph_stats.hpp"

namespace strongdeps {

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Vertex display names: the bare package name when unique in the graph,
// name=version otherwise.
inline std::vector<std::string> display_names(const DepGraph& g) {
    std::map<std::string, int> name_count;
    for (const PackageId& id : g.vertices) ++name_count[id.name];
    std::vector<std::string> out;
    out.reserve(g.vertices.size());
    for (const PackageId& id : g.vertices)
        out.push_back(name_count[id.name] == 1 ? id.name
                                               : id.name + "=" + id.version);
    return out;
}

inline std::string format_ratio_pct(const Ratio& z) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << z.value();
    return os.str();
}

}  // namespace detail

inline void write_dot(const DepGraph& g, std::ostream& out) {
    auto names = detail::display_names(g);
    out << "digraph deps {\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.succ[v].empty() && g.pred[v].empty())
            out << "  " << detail::dot_quote(names[v]) << ";\n";
    for (int p = 0; p < g.vertex_count(); ++p)
        for (int q : g.succ[p])
            out << "  " << detail::dot_quote(names[p]) << " -> "
                << detail::dot_quote(names[q]) << ";\n";
    out << "}\n";
}

inline void write_edges_csv(const DepGraph& g, std::ostream& out) {
    auto names = detail::display_names(g);
    out << "source,target\r\n";
    for (int p = 0; p < g.vertex_count(); ++p)
        for (int q : g.succ[p])
            out << detail::csv_field(names[p]) << ','
                << detail::csv_field(names[q]) << "\r\n";
}

inline nlohmann::ordered_json graph_to_json(const DepGraph& g) {
    nlohmann::ordered_json j;
    j["kind"] = g.kind == GraphKind::Strong ? "strong" : "direct";
    auto& verts = j["vertices"] = nlohmann::ordered_json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        verts.push_back({{"name", g.vertices[v].name},
                         {"version", g.vertices[v].version},
                         {"installable", g.installable[v] != 0}});
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (int p = 0; p < g.vertex_count(); ++p)
        for (int q : g.succ[p]) edges.push_back({p, q});
    return j;
}

inline DepGraph graph_from_json(const nlohmann::json& j) {
    DepGraph g;
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "strong") g.kind = GraphKind::Strong;
        else if (kind == "direct") g.kind = GraphKind::Direct;
        else throw ParseError("unknown graph kind '" + kind + "'");
        for (const auto& v : j.at("vertices")) {
            g.vertices.push_back({v.at("name").get<std::string>(),
                                  v.at("version").get<std::string>()});
            g.installable.push_back(v.value("installable", true) ? 1 : 0);
        }
        g.succ.assign(g.vertices.size(), {});
        for (const auto& e : j.at("edges")) {
            int p = e.at(0).get<int>();
            int q = e.at(1).get<int>();
            if (p < 0 || q < 0 || p >= g.vertex_count() || q >= g.vertex_count())
                throw ParseError("edge endpoint out of range");
            if (p != q) g.succ[p].push_back(q);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad graph JSON: ") + e.what());
    }
    for (auto& s : g.succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    g.rebuild_pred();
    return g;
}

inline DepGraph graph_from_json_text(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("bad graph JSON: not valid JSON");
    return graph_from_json(j);
}

// Table-2-shaped sensitivity listing: package, direct, strong, delta.
inline void write_sensitivity_csv(const std::vector<SensitivityRecord>& records,
                                  std::ostream& out) {
    out << "package,direct,strong,delta\r\n";
    for (const auto& r : records)
        out << detail::csv_field(r.package.name) << ',' << r.direct << ','
            << r.strong << ',' << r.delta << "\r\n";
}

inline nlohmann::ordered_json sensitivity_to_json(
    const std::vector<SensitivityRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records)
        arr.push_back({{"package", r.package.name},
                       {"version", r.package.version},
                       {"direct", r.direct},
                       {"strong", r.strong},
                       {"delta", r.delta},
                       {"installable", r.installable}});
    return arr;
}

inline void write_sensitivity_table(const std::vector<SensitivityRecord>& records,
                                    std::ostream& out) {
    std::size_t name_width = 7;
    for (const auto& r : records) name_width = std::max(name_width, r.package.name.size());
    out << std::left << std::setw(static_cast<int>(name_width) + 2) << "package"
        << std::right << std::setw(8) << "direct" << std::setw(8) << "strong"
        << std::setw(8) << "delta" << '\n';
    for (const auto& r : records)
        out << std::left << std::setw(static_cast<int>(name_width) + 2)
            << r.package.name << std::right << std::setw(8) << r.direct
            << std::setw(8) << r.strong << std::setw(8) << r.delta << '\n';
}

// Dominance DOT: mutual-dominance classes collapse into one node listing
// all members; strict dominance (z = 0) edges are bold, fuzzy edges carry
// the percentage label.
inline void write_dominance_dot(const std::vector<DominanceEdge>& edges,
                                const DepGraph& g, std::ostream& out) {
    auto names = detail::display_names(g);
    int n = g.vertex_count();
    std::vector<std::vector<int>> succ(n);
    for (const auto& e : edges) succ[e.dominator].push_back(e.dominated);
    SccResult scc = strongly_connected_components(succ);

    std::vector<char> in_support(n, 0);
    for (const auto& e : edges) in_support[e.dominator] = in_support[e.dominated] = 1;

    out << "digraph dominance {\n  node [shape=box];\n";
    std::vector<std::string> class_name(scc.members.size());
    for (std::size_t c = 0; c < scc.members.size(); ++c) {
        if (!in_support[scc.members[c].front()]) continue;
        std::string label;
        for (int v : scc.members[c]) {
            if (!label.empty()) label += "\\n";
            label += names[v];
        }
        class_name[c] = "c" + std::to_string(c);
        out << "  " << class_name[c] << " [label=" << detail::dot_quote(label)
            << "];\n";
    }
    for (const auto& e : edges) {
        int a = scc.comp[e.dominator], b = scc.comp[e.dominated];
        if (a == b) continue;  // inside a collapsed class
        out << "  " << class_name[a] << " -> " << class_name[b];
        if (e.z.zero())
            out << " [style=bold]";
        else
            out << " [label=\"" << detail::format_ratio_pct(e.z) << "%\"]";
        out << ";\n";
    }
    out << "}\n";
}

struct RepositoryStats {
    CorrelationStats sensitivity;             // Table-1 shaped
    GraphStats direct;                        // Table-3, direct column
    GraphStats strong_detransitivised;        // Table-3, strong column
    std::size_t strong_closed_edges = 0;      // before detransitivisation
};

namespace detail {

inline nlohmann::ordered_json graph_stats_json(const GraphStats& s) {
    return {{"vertices", s.vertices},
            {"edges", s.edges},
            {"average_degree", s.average_degree},
            {"clustering_coefficient", s.clustering_coefficient},
            {"average_distance", s.average_distance},
            {"wcc_count", s.wcc_count},
            {"largest_wcc", s.largest_wcc},
            {"density", s.density}};
}

}  // namespace detail

inline nlohmann::ordered_json stats_to_json(const RepositoryStats& st) {
    nlohmann::ordered_json j;
    j["sensitivity"] = {
        {"spearman_rho", st.sensitivity.spearman_rho},
        {"pearson_r", st.sensitivity.pearson_r},
        {"direct", {{"mean", st.sensitivity.direct_mean}, {"sigma", st.sensitivity.direct_sigma}}},
        {"strong", {{"mean", st.sensitivity.strong_mean}, {"sigma", st.sensitivity.strong_sigma}}},
        {"delta",
         {{"mean", st.sensitivity.delta_mean},
          {"sigma", st.sensitivity.delta_sigma},
          {"within_1_sigma_pct", st.sensitivity.delta_within_sigma_pct[0]},
          {"within_2_sigma_pct", st.sensitivity.delta_within_sigma_pct[1]},
          {"within_3_sigma_pct", st.sensitivity.delta_within_sigma_pct[2]}}}};
    j["graphs"] = {{"direct", detail::graph_stats_json(st.direct)},
                   {"strong_detransitivised",
                    detail::graph_stats_json(st.strong_detransitivised)}};
    j["graphs"]["strong_closed_edges"] = st.strong_closed_edges;
    return j;
}

inline void write_stats_table(const RepositoryStats& st, std::ostream& out) {
    auto num = [](double v, int prec) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(prec) << v;
        return os.str();
    };
    auto gen = [](double v) {
        std::ostringstream os;
        os << std::setprecision(6) << v;
        return os.str();
    };
    const GraphStats& d = st.direct;
    const GraphStats& s = st.strong_detransitivised;
    struct Row {
        std::string label, direct, strong;
    };
    std::vector<Row> rows = {
        {"Vertices", std::to_string(d.vertices), std::to_string(s.vertices)},
        {"Edges", std::to_string(d.edges), std::to_string(s.edges)},
        {"Average degree", num(d.average_degree, 2), num(s.average_degree, 2)},
        {"Clustering coeff.", num(d.clustering_coefficient, 2),
         num(s.clustering_coefficient, 2)},
        {"Average distance", num(d.average_distance, 2), num(s.average_distance, 2)},
        {"Components (WCCs)", std::to_string(d.wcc_count), std::to_string(s.wcc_count)},
        {"Largest WCC", std::to_string(d.largest_wcc), std::to_string(s.largest_wcc)},
        {"Density", gen(d.density), gen(s.density)},
    };
    out << std::left << std::setw(20) << "" << std::right << std::setw(26)
        << "Direct dependency graph" << std::setw(26) << "Strong dependency graph"
        << '\n';
    for (const auto& r : rows)
        out << std::left << std::setw(20) << r.label << std::right << std::setw(26)
            << r.direct << std::setw(26) << r.strong << '\n';
    out << "(strong graph detransitivised for small-world measures; closed "
           "edge count: "
        << st.strong_closed_edges << ")\n";
    const CorrelationStats& c = st.sensitivity;
    out << '\n'
        << "Sensitivity: rho " << num(c.spearman_rho, 2) << ", r "
        << num(c.pearson_r, 2) << ", direct " << num(c.direct_mean, 2) << " (sigma "
        << num(c.direct_sigma, 2) << "), strong " << num(c.strong_mean, 2)
        << " (sigma " << num(c.strong_sigma, 2) << "), delta "
        << num(c.delta_mean, 2) << " (sigma " << num(c.delta_sigma, 2) << ")\n"
        << "Delta within 1/2/3 sigma: " << num(c.delta_within_sigma_pct[0], 1)
        << "% / " << num(c.delta_within_sigma_pct[1], 1) << "% / "
        << num(c.delta_within_sigma_pct[2], 1) << "%\n";
}

// Per-package installation impact sizes plus the total, as JSON.
inline nlohmann::ordered_json risk_report_json(
    const std::vector<std::pair<std::string, std::size_t>>& per_package,
    long long total) {
    nlohmann::ordered_json j;
    auto& pkgs = j["packages"] = nlohmann::ordered_json::array();
    for (const auto& [name, size] : per_package)
        pkgs.push_back({{"package", name}, {"installation_impact", size}});
    j["total"] = total;
    return j;
}

}  // namespace strongdeps
