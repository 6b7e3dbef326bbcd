// Command-line surface for the group-connectivity laboratory.
//
// Exit codes: 0 success / all claims pass, 1 claim failure, 2 usage error,
// 3 resource limit (memory budget or timeout).

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "groupconn/catalog.hpp"
#include "groupconn/certify.hpp"
#include "groupconn/connectivity.hpp"
#include "groupconn/shipped_certs.hpp"
#include "groupconn/verify.hpp"

using namespace groupconn;
using json = nlohmann::ordered_json;

namespace {

Multigraph load_graph(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::stringstream ss;
        ss << in.rdbuf();
        Multigraph g = parse_graph(ss.str());
        if (g.name.empty()) g.name = arg;
        return g;
    }
    // fall back to a catalog name
    return catalog::catalog_get(arg).graph;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_report(const json& j, const std::string& format) {
    if (format == "text") {
        for (const auto& [k, v] : j.items())
            std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                      << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct Cli {
    RunConfig cfg = config_from_env();
    int exit_code = 0;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"group connectivity verification laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    Cli cli;
    double budget_mb = 0, timeout_s = 0;
    int workers = 0;
    app.add_option("--budget-mb", budget_mb, "memory budget in MiB");
    app.add_option("--workers", workers, "worker threads");
    app.add_option("--timeout-s", timeout_s, "cooperative timeout in seconds");
    app.add_option("--format", cli.cfg.output_format, "output format: json|text");

    // check
    std::string g_arg, group_arg, boundary_file, algo_arg = "bitset";
    int witness_n = 0;
    auto* c_check = app.add_subcommand("check", "decide S-connectivity or realize one boundary")->fallthrough();
    c_check->add_option("graph", g_arg)->required();
    c_check->add_option("--group", group_arg)->required();
    c_check->add_option("--boundary", boundary_file, "boundary file to realize");
    c_check->add_option("--algo", algo_arg, "tree|frontier|bitset");
    c_check->add_option("--witness", witness_n, "list up to N failed boundaries");

    // nzf / knzf
    std::string nzf_graph, nzf_group;
    auto* c_nzf = app.add_subcommand("nzf", "nowhere-zero S-flow existence")->fallthrough();
    c_nzf->add_option("graph", nzf_graph)->required();
    c_nzf->add_option("--group", nzf_group)->required();

    std::string knzf_graph;
    int knzf_k = 0;
    auto* c_knzf = app.add_subcommand("knzf", "nowhere-zero k-flow existence")->fallthrough();
    c_knzf->add_option("graph", knzf_graph)->required();
    c_knzf->add_option("--k", knzf_k)->required();

    // catalog
    auto* c_catalog = app.add_subcommand("catalog", "named graphs")->fallthrough();
    auto* c_cat_list = c_catalog->add_subcommand("list", "list catalog names");
    std::string emit_name;
    auto* c_cat_emit = c_catalog->add_subcommand("emit", "emit a catalog graph file");
    c_cat_emit->add_option("name", emit_name)->required();

    // construct
    auto* c_construct = app.add_subcommand("construct", "graph transformations")->fallthrough();
    std::string ts_g1, ts_g2, out_file;
    int ts_edge = 0, ts_u2 = 0, ts_v2 = 0;
    auto* c_two_sum = c_construct->add_subcommand("two-sum", "2-sum of two graphs");
    c_two_sum->add_option("g1", ts_g1)->required();
    c_two_sum->add_option("edge", ts_edge)->required();
    c_two_sum->add_option("g2", ts_g2)->required();
    c_two_sum->add_option("u2", ts_u2)->required();
    c_two_sum->add_option("v2", ts_v2)->required();
    c_two_sum->add_option("-o,--output", out_file);

    std::string te_g;
    int te_vertex = 0;
    auto* c_tri = c_construct->add_subcommand("triangle-expand", "replace a 3-vertex by a triangle");
    c_tri->add_option("graph", te_g)->required();
    c_tri->add_option("vertex", te_vertex)->required();
    c_tri->add_option("-o,--output", out_file);

    std::string sub_host, sub_gadget;
    int sub_vertex = 0;
    std::vector<int> sub_attach;
    auto* c_sub = c_construct->add_subcommand("substitute", "replace a vertex by a gadget copy");
    c_sub->add_option("host", sub_host)->required();
    c_sub->add_option("vertex", sub_vertex)->required();
    c_sub->add_option("gadget", sub_gadget)->required();
    c_sub->add_option("attach", sub_attach, "gadget attach vertices, one per host edge slot")
        ->required();
    c_sub->add_option("-o,--output", out_file);

    // cuts / collapsible
    std::string cuts_graph;
    int cuts_size = 3;
    auto* c_cuts = app.add_subcommand("cuts", "minimal edge cuts of a given size")->fallthrough();
    c_cuts->add_option("graph", cuts_graph)->required();
    c_cuts->add_option("--size", cuts_size)->required();

    std::string col_graph;
    auto* c_col = app.add_subcommand("collapsible", "collapsibility by exhaustive search")->fallthrough();
    c_col->add_option("graph", col_graph)->required();

    // certify
    std::string cert_name, cert_group;
    auto* c_cert = app.add_subcommand("certify", "build and replay a shipped certificate")->fallthrough();
    c_cert->add_option("name", cert_name)->required();
    c_cert->add_option("--group", cert_group)->required();

    // verify-paper
    bool quick = false;
    auto* c_verify = app.add_subcommand("verify-paper", "run the full verification pipeline")->fallthrough();
    c_verify->add_flag("--quick", quick, "skip the two cubic single-boundary negatives");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (budget_mb > 0)
            cli.cfg.memory_budget_bytes = static_cast<std::uint64_t>(budget_mb * 1048576.0);
        if (workers > 0) cli.cfg.worker_count = workers;
        if (timeout_s > 0) cli.cfg.timeout_seconds = timeout_s;
        cli.cfg.validate();
        ExecPolicy pol = cli.cfg.policy(0);

        if (*c_check) {
            Multigraph g = load_graph(g_arg);
            AbelianGroup group = parse_group_spec(group_arg);
            auto t0 = std::chrono::steady_clock::now();
            int width = g.m() > 0 && g.connected() ? edge_order_heuristic(g).width : 0;
            if (!boundary_file.empty()) {
                Boundary beta = boundary_from_text(g, group, read_file(boundary_file));
                json j;
                j["graph_name"] = g.name;
                j["group"] = group.to_string();
                j["boundary"] = boundary_to_text(group, beta);
                j["algo"] = algo_arg;
                bool ok;
                std::optional<FlowAssignment> flow;
                if (algo_arg == "bitset") {
                    ok = achievable_boundaries(g, group, pol).contains(g, beta);
                } else {
                    flow = flow_with_boundary(g, group, beta, parse_flow_algo(algo_arg), pol);
                    ok = flow.has_value();
                }
                j["realizable"] = ok;
                if (flow) {
                    json vals = json::array();
                    for (const auto& v : flow->values)
                        vals.push_back(group.element_to_string(v));
                    j["flow"] = vals;
                }
                j["frontier_width"] = width;
                j["elapsed_ms"] = ms_since(t0);
                print_report(j, cli.cfg.output_format);
                return 0;
            }
            ConnectivityVerdict v;
            if (algo_arg == "bitset") {
                v = is_group_connected(g, group, pol);
            } else if (algo_arg == "frontier") {
                v = is_group_connected(g, group, pol, DecisionMethod::PerBoundary);
            } else if (algo_arg == "tree") {
                // per-boundary sweep through the tree oracle
                v.method = DecisionMethod::PerBoundary;
                std::size_t total = 1;
                for (int i = 0; i + 1 < g.n; ++i) total *= group.order();
                std::uint64_t failed = 0;
                for (std::size_t idx = 0; idx < total; ++idx) {
                    Boundary beta = boundary_from_index(g, group, idx);
                    if (!flow_with_boundary(g, group, beta, FlowAlgo::Tree, pol)) {
                        if (!v.witness) v.witness = beta;
                        ++failed;
                    }
                }
                v.failed_count = failed;
                v.connected = failed == 0;
            } else {
                throw UsageError("unknown algo '" + algo_arg + "'");
            }
            json j = verdict_report(g, group, v, width, ms_since(t0));
            if (witness_n > 0) {
                json ws = json::array();
                for (const auto& b : failed_boundaries(g, group, witness_n, pol))
                    ws.push_back(boundary_to_text(group, b));
                j["witnesses"] = ws;
            }
            print_report(j, cli.cfg.output_format);
            return 0;
        }

        if (*c_nzf) {
            Multigraph g = load_graph(nzf_graph);
            AbelianGroup group = parse_group_spec(nzf_group);
            json j;
            j["graph_name"] = g.name;
            j["group"] = group.to_string();
            j["has_nzf"] = has_nowhere_zero_flow(g, group, pol);
            print_report(j, cli.cfg.output_format);
            return 0;
        }
        if (*c_knzf) {
            Multigraph g = load_graph(knzf_graph);
            json j;
            j["graph_name"] = g.name;
            j["k"] = knzf_k;
            j["has_k_nzf"] = has_k_nzf(g, knzf_k, pol);
            print_report(j, cli.cfg.output_format);
            return 0;
        }

        if (*c_cat_list) {
            for (const auto& n : catalog::catalog_names()) std::cout << n << "\n";
            return 0;
        }
        if (*c_cat_emit) {
            std::cout << emit_graph(catalog::catalog_get(emit_name).graph);
            return 0;
        }

        if (*c_two_sum || *c_tri || *c_sub) {
            Multigraph result;
            if (*c_two_sum)
                result = two_sum(load_graph(ts_g1), ts_edge, load_graph(ts_g2), ts_u2,
                                 ts_v2)
                             .graph;
            else if (*c_tri)
                result = triangle_expand(load_graph(te_g), te_vertex);
            else
                result = substitute_vertex(load_graph(sub_host), sub_vertex,
                                           load_graph(sub_gadget), sub_attach)
                             .graph;
            std::string text = emit_graph(result);
            if (out_file.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_file);
                out << text;
            }
            return 0;
        }

        if (*c_cuts) {
            Multigraph g = load_graph(cuts_graph);
            auto cuts = enumerate_edge_cuts(g, cuts_size, pol.deadline);
            json j;
            j["graph_name"] = g.name;
            j["size"] = cuts_size;
            j["count"] = cuts.size();
            json arr = json::array();
            for (const auto& c : cuts)
                arr.push_back(json{{"edges", c.edges}, {"side", c.side}});
            j["cuts"] = arr;
            print_report(j, cli.cfg.output_format);
            return 0;
        }

        if (*c_col) {
            Multigraph g = load_graph(col_graph);
            json j;
            j["graph_name"] = g.name;
            j["collapsible"] = certify::is_collapsible(g, pol.deadline);
            print_report(j, cli.cfg.output_format);
            return 0;
        }

        if (*c_cert) {
            AbelianGroup group = parse_group_spec(cert_group);
            auto t0 = std::chrono::steady_clock::now();
            certify::CertifyCache cache;
            auto cert = certify::build_certificate(cert_name, group, pol, &cache);
            auto res = certify::check_certificate(cert, pol, &cache);
            json j;
            j["graph_name"] = cert_name;
            j["group"] = group.to_string();
            j["connected"] = cert.connected;
            j["method"] = to_string(DecisionMethod::Certificate);
            j["check_ok"] = res.ok;
            if (!res.ok) {
                j["fail_path"] = res.fail_path;
                j["fail_detail"] = res.detail;
            }
            j["elapsed_ms"] = ms_since(t0);
            j["certificate"] = cert.to_json();
            print_report(j, cli.cfg.output_format);
            return res.ok ? 0 : 1;
        }

        if (*c_verify) {
            auto rep = verify::run_verify_paper(cli.cfg, quick, &std::cerr);
            if (cli.cfg.output_format == "text") {
                for (const auto& item : rep.report["items"])
                    std::cout << "[" << item["status"].get<std::string>() << "] "
                              << item["id"] << ". " << item["name"].get<std::string>()
                              << "\n";
                std::cout << (rep.passed ? "PASS" : "FAIL") << "\n";
            } else {
                std::cout << rep.report.dump(2) << "\n";
            }
            if (rep.passed) return 0;
            return rep.resource_limited ? 3 : 1;
        }
    } catch (const TimeoutError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what()
                  << " (required bytes: " << e.required_bytes << ")\n";
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
