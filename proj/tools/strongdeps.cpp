#include <algorithm>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <strongdeps/strongdeps.hpp>

namespace {

using namespace strongdeps;

int default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string read_input_bytes(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("cannot read " + path);
    return buf.str();
}

bool looks_like_graph_json(std::string_view bytes) {
    for (char c : bytes) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        return c == '{';
    }
    return false;
}

// Sends the payload to the output file or stdout.
void emit(const std::string& output_path,
          const std::function<void(std::ostream&)>& write) {
    if (output_path.empty() || output_path == "-") {
        write(std::cout);
        std::cout.flush();
        if (!std::cout) throw std::ios_base::failure("cannot write to stdout");
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + output_path);
    write(out);
    out.flush();
    if (!out) throw std::ios_base::failure("cannot write " + output_path);
}

std::vector<std::string> read_name_list(const std::string& path) {
    std::string bytes = read_input_bytes(path);
    std::vector<std::string> names;
    std::istringstream in(bytes);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::string name = line.substr(start);
        if (name[0] == '#') continue;
        names.push_back(name);
    }
    return names;
}

std::vector<int> resolve_names_in_graph(const DepGraph& g,
                                        const std::vector<std::string>& names) {
    std::vector<int> out;
    std::vector<std::string> unknown;
    for (const std::string& name : names) {
        int best = -1;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (g.vertices[v].name != name) continue;
            if (best == -1 || version_compare(g.vertices[v].version,
                                              g.vertices[best].version) ==
                                  Ordering::Greater)
                best = v;
        }
        if (best == -1) unknown.push_back(name);
        else out.push_back(best);
    }
    if (!unknown.empty()) {
        std::string msg = "unknown packages:";
        for (const std::string& u : unknown) msg += " " + u;
        throw InputError(msg);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct GraphSource {
    std::string packages_path;  // Packages input (computes graphs)
    std::string graph_path;     // precomputed strong graph (JSON)
    std::string direct_graph_path;
    int workers = default_workers();
};

Repository load_repo(const std::string& path) {
    LoadReport report;
    Repository repo = parse_repository(read_input_bytes(path), &report);
    if (report.skipped || report.duplicates)
        std::cerr << "note: " << report.skipped << " stanza(s) skipped, "
                  << report.duplicates << " duplicate(s) in " << path << "\n";
    return repo;
}

DepGraph load_graph_json(const std::string& path, GraphKind want) {
    DepGraph g = graph_from_json_text(read_input_bytes(path));
    if (g.kind != want)
        throw InputError(path + " holds a " +
                         (g.kind == GraphKind::Strong ? "strong" : "direct") +
                         " graph, expected " +
                         (want == GraphKind::Strong ? "strong" : "direct"));
    return g;
}

DepGraph obtain_strong_graph(const GraphSource& src) {
    if (!src.graph_path.empty())
        return load_graph_json(src.graph_path, GraphKind::Strong);
    Repository repo = load_repo(src.packages_path);
    return strong_dependencies(repo, {src.workers});
}

// Strong + direct graph for commands that need both.
std::pair<DepGraph, DepGraph> obtain_both_graphs(const GraphSource& src) {
    if (!src.graph_path.empty()) {
        if (src.direct_graph_path.empty())
            throw InputError("--direct-graph is required alongside --graph here");
        return {load_graph_json(src.graph_path, GraphKind::Strong),
                load_graph_json(src.direct_graph_path, GraphKind::Direct)};
    }
    Repository repo = load_repo(src.packages_path);
    return {strong_dependencies(repo, {src.workers}),
            direct_dependency_graph(repo)};
}

std::size_t count_uninstallable(const DepGraph& g) {
    std::size_t n = 0;
    for (char f : g.installable)
        if (!f) ++n;
    return n;
}

std::vector<SensitivityRecord> sorted_records(const DepGraph& strong_g,
                                              const DepGraph& direct_g,
                                              const std::string& sort_key,
                                              int top) {
    auto records = sensitivity_records(strong_g, direct_g);
    std::stable_sort(records.begin(), records.end(),
                     [&](const SensitivityRecord& a, const SensitivityRecord& b) {
                         int ka = sort_key == "strong" ? a.strong : a.delta;
                         int kb = sort_key == "strong" ? b.strong : b.delta;
                         if (ka != kb) return ka > kb;
                         return a.package < b.package;
                     });
    if (top > 0 && static_cast<std::size_t>(top) < records.size())
        records.resize(top);
    return records;
}

int run(int argc, char** argv) {
    CLI::App app{"strong dependency analysis for Debian-style repositories"};
    app.set_version_flag("--version", "strongdeps 0.1.0");
    app.require_subcommand(1);

    // ---- graph ----------------------------------------------------------
    std::string g_input, g_kind = "strong", g_format = "csv", g_output, g_dimacs;
    bool g_naive = false;
    int g_workers = default_workers();
    auto* graph_cmd =
        app.add_subcommand("graph", "compute the strong (or direct) dependency graph");
    graph_cmd->add_option("input", g_input, "Packages file (plain or gzip, '-' for stdin)")
        ->required();
    graph_cmd->add_option("--kind", g_kind, "graph to compute")
        ->check(CLI::IsMember({"strong", "direct"}));
    graph_cmd->add_flag("--naive", g_naive, "use the n^2 SAT algorithm (slow; testing)");
    graph_cmd->add_option("--workers,-j", g_workers, "worker threads")
        ->check(CLI::PositiveNumber);
    graph_cmd->add_option("--format,-f", g_format, "output format")
        ->check(CLI::IsMember({"csv", "dot", "json"}));
    graph_cmd->add_option("--output,-o", g_output, "output file (default stdout)");
    graph_cmd->add_option("--dimacs", g_dimacs, "also dump the SAT encoding (DIMACS CNF)");
    graph_cmd->callback([&] {
        if (!g_dimacs.empty()) {
            Repository repo = load_repo(g_input);
            RepositoryEncoding encoding(repo);
            emit(g_dimacs, [&](std::ostream& out) { encoding.write_dimacs(out); });
        }
        DepGraph g;
        if (g_kind == "direct") {
            g = direct_dependency_graph(load_repo(g_input));
        } else {
            Repository repo = load_repo(g_input);
            g = g_naive ? strong_dependencies_naive(repo)
                        : strong_dependencies(repo, {g_workers});
        }
        emit(g_output, [&](std::ostream& out) {
            if (g_format == "csv") write_edges_csv(g, out);
            else if (g_format == "dot") write_dot(g, out);
            else out << graph_to_json(g).dump(2) << '\n';
        });
        std::cerr << "vertices=" << g.vertex_count() << " edges=" << g.edge_count();
        if (g.kind == GraphKind::Strong)
            std::cerr << " uninstallable=" << count_uninstallable(g);
        std::cerr << "\n";
    });

    // ---- sensitivity ----------------------------------------------------
    GraphSource s_src;
    std::string s_format = "csv", s_output, s_sort = "delta";
    int s_top = 0;
    auto* sens_cmd = app.add_subcommand(
        "sensitivity", "rank packages by strong/direct sensitivity");
    sens_cmd->add_option("input", s_src.packages_path, "Packages file");
    sens_cmd->add_option("--graph", s_src.graph_path, "precomputed strong graph (JSON)");
    sens_cmd->add_option("--direct-graph", s_src.direct_graph_path,
                         "precomputed direct graph (JSON)");
    sens_cmd->add_option("--workers,-j", s_src.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    sens_cmd->add_option("--format,-f", s_format, "output format")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    sens_cmd->add_option("--sort", s_sort, "ranking key")
        ->check(CLI::IsMember({"delta", "strong"}));
    sens_cmd->add_option("--top", s_top, "keep only the N highest entries")
        ->check(CLI::NonNegativeNumber);
    sens_cmd->add_option("--output,-o", s_output, "output file (default stdout)");
    sens_cmd->callback([&] {
        if (s_src.packages_path.empty() && s_src.graph_path.empty())
            throw InputError("give a Packages file or --graph/--direct-graph");
        auto [strong_g, direct_g] = obtain_both_graphs(s_src);
        auto records = sorted_records(strong_g, direct_g, s_sort, s_top);
        emit(s_output, [&](std::ostream& out) {
            if (s_format == "csv") write_sensitivity_csv(records, out);
            else if (s_format == "table") write_sensitivity_table(records, out);
            else out << sensitivity_to_json(records).dump(2) << '\n';
        });
    });

    // ---- dominance ------------------------------------------------------
    GraphSource d_src;
    std::string d_format = "dot", d_output, d_fuzz = "5";
    int d_top = 0, d_min_cluster = 0;
    auto* dom_cmd = app.add_subcommand(
        "dominance", "emit the strong dominance graph (DOT)");
    dom_cmd->add_option("input", d_src.packages_path, "Packages file");
    dom_cmd->add_option("--graph", d_src.graph_path, "precomputed strong graph (JSON)");
    dom_cmd->add_option("--workers,-j", d_src.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    dom_cmd->add_option("--fuzz", d_fuzz, "relative dominance threshold, percent");
    dom_cmd->add_option("--top", d_top,
                        "restrict to the N most (strong-)sensitive packages")
        ->check(CLI::NonNegativeNumber);
    dom_cmd->add_option("--min-cluster-size", d_min_cluster,
                        "drop clusters with at most this many members")
        ->check(CLI::NonNegativeNumber);
    dom_cmd->add_option("--format,-f", d_format, "output format")
        ->check(CLI::IsMember({"dot", "json"}));
    dom_cmd->add_option("--output,-o", d_output, "output file (default stdout)");
    dom_cmd->callback([&] {
        if (d_src.packages_path.empty() && d_src.graph_path.empty())
            throw InputError("give a Packages file or --graph");
        Ratio fuzz = parse_percentage(d_fuzz);
        DepGraph g = obtain_strong_graph(d_src);

        std::vector<char> allowed;
        if (d_top > 0) {
            std::vector<int> order(g.vertex_count());
            for (int v = 0; v < g.vertex_count(); ++v) order[v] = v;
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                int sa = sensitivity(a, g), sb = sensitivity(b, g);
                if (sa != sb) return sa > sb;
                return g.vertices[a] < g.vertices[b];
            });
            allowed.assign(g.vertex_count(), 0);
            for (int i = 0; i < d_top && i < g.vertex_count(); ++i)
                allowed[order[i]] = 1;
        }
        auto edges = dominance_graph(g, fuzz, allowed);

        if (d_min_cluster > 0) {
            std::vector<char> keep(g.vertex_count(), 0);
            for (const auto& cluster : dominance_clusters(edges))
                if (cluster.members.size() > static_cast<std::size_t>(d_min_cluster))
                    for (int v : cluster.members) keep[v] = 1;
            std::erase_if(edges, [&](const DominanceEdge& e) {
                return !keep[e.dominator] || !keep[e.dominated];
            });
        }

        emit(d_output, [&](std::ostream& out) {
            if (d_format == "dot") {
                write_dominance_dot(edges, g, out);
            } else {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                auto names = detail::display_names(g);
                for (const auto& e : edges)
                    arr.push_back({{"dominator", names[e.dominator]},
                                   {"dominated", names[e.dominated]},
                                   {"z", e.z.value()}});
                out << arr.dump(2) << '\n';
            }
        });
        std::cerr << "dominance edges=" << edges.size() << "\n";
    });

    // ---- stats ----------------------------------------------------------
    GraphSource t_src;
    std::string t_format = "table", t_output;
    auto* stats_cmd = app.add_subcommand(
        "stats", "sensitivity statistics and small-world graph measures");
    stats_cmd->add_option("input", t_src.packages_path, "Packages file");
    stats_cmd->add_option("--graph", t_src.graph_path, "precomputed strong graph (JSON)");
    stats_cmd->add_option("--direct-graph", t_src.direct_graph_path,
                          "precomputed direct graph (JSON)");
    stats_cmd->add_option("--workers,-j", t_src.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    stats_cmd->add_option("--format,-f", t_format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    stats_cmd->add_option("--output,-o", t_output, "output file (default stdout)");
    stats_cmd->callback([&] {
        if (t_src.packages_path.empty() && t_src.graph_path.empty())
            throw InputError("give a Packages file or --graph/--direct-graph");
        auto [strong_g, direct_g] = obtain_both_graphs(t_src);
        RepositoryStats st;
        st.sensitivity = correlation_stats(sensitivity_records(strong_g, direct_g));
        st.direct = small_world_stats(direct_g);
        st.strong_closed_edges = strong_g.edge_count();
        st.strong_detransitivised = small_world_stats(detransitivise(strong_g));
        emit(t_output, [&](std::ostream& out) {
            if (t_format == "table") write_stats_table(st, out);
            else out << stats_to_json(st).dump(2) << '\n';
        });
    });

    // ---- risk -----------------------------------------------------------
    GraphSource r_src;
    std::string r_inst_path, r_plan_path, r_format = "json", r_output;
    auto* risk_cmd = app.add_subcommand(
        "risk", "score an upgrade plan against an installation");
    risk_cmd->add_option("input", r_src.packages_path,
                         "pre-upgrade Packages snapshot");
    risk_cmd->add_option("--graph", r_src.graph_path, "precomputed strong graph (JSON)");
    risk_cmd->add_option("--workers,-j", r_src.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    risk_cmd->add_option("--installation", r_inst_path,
                         "installed package names, one per line")
        ->required();
    risk_cmd->add_option("--plan", r_plan_path, "touched package names, one per line")
        ->required();
    risk_cmd->add_option("--format,-f", r_format, "output format")
        ->check(CLI::IsMember({"json"}));
    risk_cmd->add_option("--output,-o", r_output, "output file (default stdout)");
    risk_cmd->callback([&] {
        if (r_src.packages_path.empty() && r_src.graph_path.empty())
            throw InputError("give a Packages file or --graph");
        DepGraph g = obtain_strong_graph(r_src);
        Installation inst(resolve_names_in_graph(g, read_name_list(r_inst_path)));
        UpgradePlan plan{resolve_names_in_graph(g, read_name_list(r_plan_path))};
        for (int p : plan.touched)
            if (!inst.contains(p))
                throw InputError("plan touches a package outside the installation: " +
                                 g.vertices[p].name);
        std::vector<std::pair<std::string, std::size_t>> per_package;
        long long total = 0;
        for (int p : plan.touched) {
            std::size_t k = installation_impact_set(p, g, inst).size();
            per_package.emplace_back(g.vertices[p].name, k);
            total += static_cast<long long>(k);
        }
        std::sort(per_package.begin(), per_package.end());
        emit(r_output, [&](std::ostream& out) {
            out << risk_report_json(per_package, total).dump(2) << '\n';
        });
    });

    // ---- forced ---------------------------------------------------------
    std::string f_old, f_new, f_format = "list", f_output;
    std::vector<std::string> f_targets;
    int f_workers = default_workers();
    auto* forced_cmd = app.add_subcommand(
        "forced", "forced upgrades between two repository snapshots");
    forced_cmd->add_option("--old", f_old, "old snapshot (Packages or graph JSON)")
        ->required();
    forced_cmd->add_option("--new", f_new, "new snapshot (Packages or graph JSON)")
        ->required();
    forced_cmd->add_option("--target", f_targets, "package to switch to (repeatable)")
        ->required();
    forced_cmd->add_option("--workers,-j", f_workers, "worker threads")
        ->check(CLI::PositiveNumber);
    forced_cmd->add_option("--format,-f", f_format, "output format")
        ->check(CLI::IsMember({"list", "json"}));
    forced_cmd->add_option("--output,-o", f_output, "output file (default stdout)");
    forced_cmd->callback([&] {
        auto load_snapshot = [&](const std::string& path) {
            std::string bytes = read_input_bytes(path);
            if (looks_like_graph_json(bytes)) {
                DepGraph g = graph_from_json_text(bytes);
                if (g.kind != GraphKind::Strong)
                    throw InputError(path + " is not a strong graph");
                return g;
            }
            LoadReport report;
            Repository repo = parse_repository(bytes, &report);
            return strong_dependencies(repo, {f_workers});
        };
        DepGraph old_g = load_snapshot(f_old);
        DepGraph new_g = load_snapshot(f_new);
        auto forced = forced_upgrades(old_g, new_g, f_targets);
        emit(f_output, [&](std::ostream& out) {
            if (f_format == "list") {
                for (const std::string& name : forced) out << name << '\n';
            } else {
                nlohmann::ordered_json j;
                j["forced"] = forced;
                out << j.dump(2) << '\n';
            }
        });
        std::cerr << "forced upgrades=" << forced.size() << "\n";
    });

    // `strongdeps Packages.gz` with no subcommand behaves like `graph`
    std::vector<std::string> args(argv + 1, argv + argc);
    const std::vector<std::string> known = {"graph", "sensitivity", "dominance",
                                            "stats", "risk",        "forced"};
    if (!args.empty() && args[0][0] != '-' &&
        std::find(known.begin(), known.end(), args[0]) == known.end()) {
        args.insert(args.begin(), "graph");
    }
    std::vector<const char*> cargv;
    cargv.push_back(argv[0]);
    for (const auto& a : args) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotInstallable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
