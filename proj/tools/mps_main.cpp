#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mps/errors.hpp"
#include "mps/oracle.hpp"
#include "mps/pb_export.hpp"
#include "mps/pipeline.hpp"
#include "mpscli/bench.hpp"
#include "mpscli/generator.hpp"
#include "mpscli/io.hpp"

namespace {

mps::WeightedGraph load_instance(const std::string& path, const std::string& format) {
    mps::GraphFormat fmt;
    if (format == "auto") {
        fmt = mps::deduce_graph_format(path);
    } else {
        const auto parsed = mps::parse_graph_format(format);
        if (!parsed)
            throw mps::ParseError("unknown format '" + format + "'");
        fmt = *parsed;
    }
    return mps::ingest(path, fmt);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw mps::Error("cannot write '" + path + "'");
    out << content;
}

/// Model of the whole input graph (no reduction), as a portable artifact.
/// The facial-walk export profile switches the degree-3 specialization on;
/// the native solver keeps it off.
mps::PBModel export_model(const mps::WeightedGraph& g, const mps::PipelineConfig& cfg) {
    mps::PipelineConfig ec = cfg;
    ec.facialwalks.degree3_specialization = true;
    switch (ec.formulation) {
    case mps::Formulation::Kuratowski:
        return mps::build_kuratowski_model(g, ec.kuratowski);
    case mps::Formulation::FacialWalks:
        return mps::build_facialwalk_model(g, ec.facialwalks);
    case mps::Formulation::Schnyder:
        return mps::build_schnyder_model(g, ec.schnyder);
    case mps::Formulation::LeftRight:
        return mps::build_leftright_model(g, ec.leftright);
    }
    throw mps::Error("unknown formulation");
}

int run(int argc, char** argv) {
    CLI::App app{"Exact maximum planar subgraph solver"};
    app.require_subcommand(1);

    // --- solve ---
    std::string solve_file, solve_formulation = "kuratowski", solve_format = "auto";
    std::string export_opb, export_lp;
    double solve_time = 60.0;
    std::int64_t solve_nodes = std::numeric_limits<std::int64_t>::max();
    std::uint64_t solve_seed = 0;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance to optimality");
    solve_cmd->add_option("file", solve_file, "Instance file")->required();
    solve_cmd->add_option("--formulation", solve_formulation,
                          "kuratowski | facialwalks | schnyder | leftright");
    solve_cmd->add_option("--format", solve_format, "edgelist | gml | dimacs | auto");
    solve_cmd->add_option("--time-limit", solve_time, "Seconds before giving up");
    solve_cmd->add_option("--node-limit", solve_nodes, "Branch-and-bound node budget");
    solve_cmd->add_option("--seed", solve_seed, "Heuristic seed");
    solve_cmd->add_option("--export-opb", export_opb, "Also write the model in OPB format");
    solve_cmd->add_option("--export-lp", export_lp, "Also write the model in LP format");

    // --- bench ---
    std::string bench_dir, bench_config, bench_out;
    int bench_jobs = 0;
    auto* bench_cmd = app.add_subcommand("bench", "Run the suite over a corpus directory");
    bench_cmd->add_option("dir", bench_dir, "Directory of instance files")->required();
    bench_cmd->add_option("--config", bench_config, "key=value settings file");
    bench_cmd->add_option("--jobs", bench_jobs, "Parallel worker slots");
    bench_cmd->add_option("--out", bench_out, "Write the CSV here instead of stdout");

    // --- oracle ---
    std::string oracle_file, oracle_format = "auto";
    int oracle_max_edges = 30;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force ground truth for one instance");
    oracle_cmd->add_option("file", oracle_file, "Instance file")->required();
    oracle_cmd->add_option("--format", oracle_format, "edgelist | gml | dimacs | auto");
    oracle_cmd->add_option("--max-edges", oracle_max_edges, "Refuse larger instances");

    // --- gen ---
    int gen_n = 0, gen_d = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random regular graph (edgelist)");
    gen_cmd->add_option("--n", gen_n, "Number of nodes")->required();
    gen_cmd->add_option("--d", gen_d, "Degree")->required();
    gen_cmd->add_option("--seed", gen_seed, "Generator seed");
    gen_cmd->add_option("--out", gen_out, "Write here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (solve_cmd->parsed()) {
        const auto f = mps::parse_formulation(solve_formulation);
        if (!f)
            throw mps::ParseError("unknown formulation '" + solve_formulation + "'");
        const mps::WeightedGraph g = load_instance(solve_file, solve_format);
        mps::PipelineConfig cfg;
        cfg.formulation = *f;
        cfg.limits.time_sec = solve_time;
        cfg.limits.nodes = solve_nodes;
        cfg.heuristic_seed = solve_seed;
        if (!export_opb.empty() || !export_lp.empty()) {
            const mps::PBModel model = export_model(g, cfg);
            if (!export_opb.empty())
                write_file(export_opb, mps::export_opb(model));
            if (!export_lp.empty())
                write_file(export_lp, mps::export_lp(model));
        }
        const auto t0 = std::chrono::steady_clock::now();
        const mps::PipelineResult r = mps::solve_mps(g, cfg);
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        std::cout << "instance: " << solve_file << "\n"
                  << "nodes: " << g.node_count() << "\n"
                  << "edges: " << g.edge_count() << "\n"
                  << "total_weight: " << g.total_weight() << "\n"
                  << "formulation: " << mps::formulation_name(*f) << "\n"
                  << "status: " << mps::to_string(r.status) << "\n"
                  << "objective: " << r.objective << "\n"
                  << "dual_bound: " << r.dual_bound << "\n";
        if (r.status == mps::SolveStatus::Optimal)
            std::cout << "skewness: " << g.total_weight() - r.objective << "\n";
        else
            std::cout << "skewness_upper_bound: " << g.total_weight() - r.objective << "\n";
        std::cout << "bnb_nodes: " << r.stats.bnb_nodes << "\n"
                  << "lazy_constraints: " << r.stats.lazy_constraints_added << "\n"
                  << "wall_time_sec: " << secs << "\n"
                  << "deleted_edges:";
        for (mps::EdgeId e = 0; e < g.edge_count(); ++e)
            if (!r.selection.contains(e))
                std::cout << ' ' << g.edge(e).u << '-' << g.edge(e).v;
        std::cout << "\n";
        return 0;
    }

    if (bench_cmd->parsed()) {
        mps::BenchConfig cfg;
        if (!bench_config.empty())
            cfg = mps::load_bench_config(bench_config);
        if (bench_jobs > 0)
            cfg.jobs = bench_jobs;
        const mps::SuiteResult res = mps::run_suite(bench_dir, cfg);
        if (bench_out.empty()) {
            std::cout << res.csv;
            std::cerr << res.summary;
        } else {
            write_file(bench_out, res.csv);
            std::cout << res.summary;
        }
        return 0;
    }

    if (oracle_cmd->parsed()) {
        const mps::WeightedGraph g = load_instance(oracle_file, oracle_format);
        const mps::OracleResult r = mps::oracle_mps(g, oracle_max_edges);
        std::cout << "instance: " << oracle_file << "\n"
                  << "max_planar_weight: " << r.max_weight << "\n"
                  << "skewness: " << r.skewness << "\n"
                  << "deleted_edges:";
        for (mps::EdgeId e = 0; e < g.edge_count(); ++e)
            if (!r.selection.contains(e))
                std::cout << ' ' << g.edge(e).u << '-' << g.edge(e).v;
        std::cout << "\n";
        return 0;
    }

    // gen
    const mps::WeightedGraph g = mps::gen_random_regular(gen_n, gen_d, gen_seed);
    std::ostringstream out;
    out << "# random " << gen_d << "-regular graph, n=" << gen_n << ", seed=" << gen_seed
        << "\n";
    for (mps::EdgeId e = 0; e < g.edge_count(); ++e)
        out << g.edge(e).u << ' ' << g.edge(e).v << '\n';
    if (gen_out.empty())
        std::cout << out.str();
    else
        write_file(gen_out, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mps::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const mps::FormatMismatch& e) {
        std::cerr << "format mismatch: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
