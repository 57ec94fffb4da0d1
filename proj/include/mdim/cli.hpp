#ifndef MDIM_CLI_HPP
#define MDIM_CLI_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdim/json_io.hpp"
#include "mdim/trees.hpp"

namespace mdim::cli {

// Exit codes: 0 ok, 1 refuted/FAIL verdict, 2 usage or input errors,
// 3 internal verification failure.

namespace detail {

inline json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return j;
}

inline json rayed_vertex_json(const RayedVertex& v) { return to_string(v); }
inline json tp_vertex_json(const TPVertex& v) { return to_string(v); }

inline json rayed_cert_json(const RayedCertificate& cert) {
    json r;
    r["verdict"] = cert.pass() ? "PASS" : "FAIL";
    r["window"] = cert.window;
    json bases = json::array();
    for (const auto& b : cert.ray_bases) bases.push_back(b);
    r["ray_bases"] = bases;
    r["stabilization"] = cert.stabilization;
    if (!cert.pass())
        r["witness"] = {rayed_vertex_json(cert.unresolved->first),
                        rayed_vertex_json(cert.unresolved->second)};
    return r;
}

inline json tail_cert_json(const TailCertificate& cert) {
    json r;
    r["verdict"] = cert.pass() ? "PASS" : "FAIL";
    r["window_lo"] = cert.window_lo;
    r["window_hi"] = cert.window_hi;
    r["plus_bases"] = cert.plus_bases;
    if (!cert.minus_bases.empty()) r["minus_bases"] = cert.minus_bases;
    if (!cert.pass())
        r["witness"] = {tp_vertex_json(cert.unresolved->first),
                        tp_vertex_json(cert.unresolved->second)};
    return r;
}

inline TreeView tree_from_input(const GraphInput& g) {
    if (const auto* fg = std::get_if<FiniteGraph>(&g)) return TreeView(*fg);
    if (const auto* rg = std::get_if<RayedGraph>(&g)) return TreeView(*rg);
    throw NotATree("tree commands accept finite or rayed graphs");
}

// Expected Table 2 values: beta and psi of P_n, C_n, K_n for n >= 3.
struct Table2Row {
    std::string family;
    int n;
    int beta_expected, beta_computed;
    int psi_expected, psi_computed;
    bool match() const {
        return beta_expected == beta_computed && psi_expected == psi_computed;
    }
};

inline std::vector<Table2Row> compute_table2(int max_n) {
    std::vector<Table2Row> rows;
    for (int n = 3; n <= max_n; ++n) {
        const FiniteGraph p = make_path(n), c = make_cycle(n), k = make_complete(n);
        rows.push_back({"path", n, 1, metric_dimension(p).beta, 2, psi(p).psi});
        rows.push_back({"cycle", n, 2, metric_dimension(c).beta, n % 2 == 0 ? 3 : 2,
                        psi(c).psi});
        rows.push_back({"complete", n, n - 1, metric_dimension(k).beta, n - 1, psi(k).psi});
    }
    return rows;
}

// Expected Table 3 values: beta of P_inf box H and P_2inf box H.
struct Table3Row {
    std::string base;
    std::string family;
    int n;
    int expected;
    int lower, upper;
    bool match() const { return lower == expected && upper == expected; }
};

inline std::vector<Table3Row> compute_table3(int max_n) {
    std::vector<Table3Row> rows;
    for (TailBase base : {TailBase::one_way, TailBase::two_way}) {
        const std::string bname = base == TailBase::one_way ? "one_way" : "two_way";
        const int add = base == TailBase::two_way ? 1 : 0;
        for (int n = 2; n <= max_n; ++n) {
            TailProduct tp(base, make_path(n));
            const auto b = product_dimension_bounds(tp);
            rows.push_back({bname, "path", n, 2 + add, b.lower, b.upper});
        }
        for (int n = 3; n <= max_n; ++n) {
            TailProduct tp(base, make_cycle(n));
            const auto b = product_dimension_bounds(tp);
            rows.push_back({bname, "cycle", n, (n % 2 == 0 ? 3 : 2) + add, b.lower, b.upper});
        }
        for (int n = 4; n <= max_n; ++n) {
            TailProduct tp(base, make_complete(n));
            const auto b = product_dimension_bounds(tp);
            rows.push_back({bname, "complete", n, n - 1, b.lower, b.upper});
        }
    }
    return rows;
}

} // namespace detail

/// Runs one CLI invocation; the report (JSON by default) goes to `out`.
inline int run(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"metric dimension toolkit"};
    app.require_subcommand(1);

    std::string file, set_spec;
    int max_n = 8;
    int window_override = -1;
    int threads = 1;
    bool json_output = true;

    app.add_flag("--json,!--no-json", json_output, "JSON output (default on)");
    app.add_option("--threads", threads, "worker threads for the exact solvers")
        ->check(CLI::PositiveNumber);

    auto* dim = app.add_subcommand("dim", "metric dimension and basis (finite graphs)");
    dim->add_option("file", file)->required();

    auto* psi_cmd = app.add_subcommand("psi", "minimum doubly resolving set (finite graphs)");
    psi_cmd->add_option("file", file)->required();

    auto* verify = app.add_subcommand("verify", "check a resolving set on a finite graph");
    verify->add_option("file", file)->required();
    verify->add_option("--set", set_spec)->required();

    auto* dbl = app.add_subcommand("double", "check a doubly resolving set on a finite graph");
    dbl->add_option("file", file)->required();
    dbl->add_option("--set", set_spec)->required();

    auto* certify = app.add_subcommand("certify", "certify a set on a rayed graph or tail product");
    certify->add_option("file", file)->required();
    certify->add_option("--set", set_spec)->required();
    certify->add_option("--window", window_override,
                        "override the certification window (must be >= the computed bound)");

    auto* refute = app.add_subcommand("refute", "construct an unresolved pair for a small set");
    refute->add_option("file", file)->required();
    refute->add_option("--set", set_spec)->required();

    auto* tree_dim = app.add_subcommand("tree-dim", "dimension of a finite or rayed tree");
    tree_dim->add_option("file", file)->required();

    auto* tree_basis_cmd = app.add_subcommand("tree-basis", "metric basis of a tree");
    tree_basis_cmd->add_option("file", file)->required();

    auto* bounds = app.add_subcommand("bounds", "dimension bounds for a tail product");
    bounds->add_option("file", file)->required();

    auto* tables = app.add_subcommand("tables", "recompute the dimension tables");
    tables->add_option("--max-n", max_n)->check(CLI::Range(3, 64));

    std::vector<const char*> argv;
    argv.push_back("mdim");
    for (const auto& a : args) argv.push_back(a.c_str());

    json report;
    int exit_code = 0;
    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) { // --help
                out << app.help();
                return 0;
            }
            throw InputError(std::string("usage: ") + e.what());
        }

        if (tables->parsed()) {
            report["command"] = "tables";
            bool all = true;
            json t2 = json::array();
            for (const auto& r : detail::compute_table2(max_n)) {
                t2.push_back({{"family", r.family},
                              {"n", r.n},
                              {"beta", r.beta_computed},
                              {"beta_expected", r.beta_expected},
                              {"psi", r.psi_computed},
                              {"psi_expected", r.psi_expected},
                              {"match", r.match()}});
                all = all && r.match();
            }
            json t3 = json::array();
            for (const auto& r : detail::compute_table3(max_n)) {
                t3.push_back({{"base", r.base},
                              {"family", r.family},
                              {"n", r.n},
                              {"beta", r.lower},
                              {"expected", r.expected},
                              {"match", r.match()}});
                all = all && r.match();
            }
            report["result"] = {{"table2", t2}, {"table3", t3}, {"all_match", all}};
            report["status"] = all ? "ok" : "refuted";
            exit_code = all ? 0 : 1;
        } else {
            const json input = detail::load_input(file);
            report["input"] = input_digest(input);
            const GraphInput graph = parse_graph(input);

            if (dim->parsed()) {
                report["command"] = "dim";
                if (std::holds_alternative<InfiniteProduct>(graph)) {
                    report["result"] = {{"beta", "infinite"},
                                        {"reason", "product of two infinite graphs"}};
                    report["status"] = "ok";
                } else if (const auto* g = std::get_if<FiniteGraph>(&graph)) {
                    const auto res = metric_dimension(*g, threads);
                    report["result"] = {{"beta", res.beta}, {"basis", res.basis}};
                    report["status"] = "ok";
                } else {
                    throw InputError("dim handles finite graphs; use certify/bounds for "
                                     "infinite inputs");
                }
            } else if (psi_cmd->parsed()) {
                report["command"] = "psi";
                const auto* g = std::get_if<FiniteGraph>(&graph);
                if (!g) throw InputError("psi handles finite graphs only");
                const auto res = psi(*g);
                report["result"] = {{"psi", res.psi}, {"dset", res.dset}};
                report["status"] = "ok";
            } else if (verify->parsed() || dbl->parsed()) {
                const bool doubly = dbl->parsed();
                report["command"] = doubly ? "double" : "verify";
                const auto* g = std::get_if<FiniteGraph>(&graph);
                if (!g) throw InputError("verify/double handle finite graphs only");
                const auto set = parse_finite_set(set_spec);
                std::vector<int> all_vertices(static_cast<size_t>(g->n()));
                for (int i = 0; i < g->n(); ++i) all_vertices[i] = i;
                const auto witness = doubly ? doubly_resolves(*g, set, all_vertices)
                                            : is_resolving(*g, set);
                if (witness) {
                    report["result"] = {{"verdict", "FAIL"},
                                        {"witness", {witness->u, witness->v}}};
                    report["status"] = "refuted";
                    exit_code = 1;
                } else {
                    report["result"] = {{"verdict", "PASS"}};
                    report["status"] = "ok";
                }
            } else if (certify->parsed()) {
                report["command"] = "certify";
                if (const auto* rg = std::get_if<RayedGraph>(&graph)) {
                    const auto set = parse_rayed_set(set_spec);
                    auto cert = certify_resolving_rayed(*rg, set);
                    if (window_override >= 0) {
                        if (window_override < cert.window)
                            throw InputError("window override " +
                                             std::to_string(window_override) +
                                             " is below the sound bound " +
                                             std::to_string(cert.window));
                        cert = certify_resolving_rayed(*rg, set, window_override);
                    }
                    report["result"] = detail::rayed_cert_json(cert);
                    report["status"] = cert.pass() ? "ok" : "refuted";
                    exit_code = cert.pass() ? 0 : 1;
                } else if (const auto* tp = std::get_if<TailProduct>(&graph)) {
                    const auto set = parse_tail_set(set_spec);
                    auto cert = certify_resolving_tail(*tp, set);
                    if (window_override >= 0) {
                        if (window_override < cert.window())
                            throw InputError("window override " +
                                             std::to_string(window_override) +
                                             " is below the sound bound " +
                                             std::to_string(cert.window()));
                        cert = certify_resolving_tail(*tp, set, window_override);
                    }
                    report["result"] = detail::tail_cert_json(cert);
                    report["status"] = cert.pass() ? "ok" : "refuted";
                    exit_code = cert.pass() ? 0 : 1;
                } else {
                    throw InputError("certify handles rayed graphs and tail products");
                }
            } else if (refute->parsed()) {
                report["command"] = "refute";
                if (std::holds_alternative<CombGraph>(graph)) {
                    const auto pair = comb_refute(parse_comb_set(set_spec));
                    report["result"] = {
                        {"witness", {to_string(pair.first), to_string(pair.second)}}};
                } else if (const auto* tp = std::get_if<TailProduct>(&graph)) {
                    const auto pair = refute_small_set(*tp, parse_tail_set(set_spec));
                    report["result"] = {
                        {"witness",
                         {detail::tp_vertex_json(pair.first), detail::tp_vertex_json(pair.second)}}};
                } else {
                    throw InputError("refute handles the comb and tail products");
                }
                report["status"] = "refuted";
                exit_code = 1;
            } else if (tree_dim->parsed() || tree_basis_cmd->parsed()) {
                const TreeView t = detail::tree_from_input(graph);
                if (tree_dim->parsed()) {
                    report["command"] = "tree-dim";
                    report["result"] = {{"dimension", tree_dimension(t)}};
                } else {
                    report["command"] = "tree-basis";
                    json basis = json::array();
                    for (const auto& v : tree_basis(t))
                        basis.push_back(t.is_infinite() ? json(to_string(v)) : json(v.id));
                    report["result"] = {{"dimension", tree_dimension(t)}, {"basis", basis}};
                }
                report["status"] = "ok";
            } else if (bounds->parsed()) {
                report["command"] = "bounds";
                const auto* tp = std::get_if<TailProduct>(&graph);
                if (!tp) throw InputError("bounds handles tail products only");
                if (tp->fiber().n() == 1) {
                    // H = K1: the product is the base path itself
                    const int beta = tp->two_way() ? 2 : 1;
                    report["result"] = {{"lower", beta}, {"upper", beta}, {"exact", true},
                                        {"beta", beta}};
                } else {
                    const auto b = product_dimension_bounds(*tp);
                    json r = {{"lower", b.lower}, {"upper", b.upper}, {"exact", b.exact()}};
                    if (b.exact()) r["beta"] = b.lower;
                    if (b.basis) {
                        json basis = json::array();
                        for (const auto& v : *b.basis) basis.push_back(to_string(v));
                        r["basis"] = basis;
                    }
                    report["result"] = r;
                }
                report["status"] = "ok";
            }
        }
    } catch (const InternalVerificationFailure& e) {
        report["error"] = std::string("internal verification failure: ") + e.what();
        report["status"] = "error";
        exit_code = 3;
    } catch (const InputError& e) {
        report["error"] = e.what();
        report["status"] = "error";
        exit_code = 2;
    } catch (const std::exception& e) {
        report["error"] = e.what();
        report["status"] = "error";
        exit_code = 2;
    }

    if (json_output) {
        out << report.dump() << "\n";
    } else {
        out << report["status"].get<std::string>();
        if (report.contains("result") && report["result"].contains("verdict"))
            out << " " << report["result"]["verdict"].get<std::string>();
        out << "\n";
    }
    return exit_code;
}

} // namespace mdim::cli

#endif
