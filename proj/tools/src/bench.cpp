#include "mpscli/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "mps/errors.hpp"
#include "mps/heuristics.hpp"
#include "mps/oracle.hpp"
#include "mps/planarity.hpp"
#include "mpscli/io.hpp"

namespace mps {

namespace {

bool parse_bool(const std::string& v, bool& out) {
    if (v == "true" || v == "1") {
        out = true;
        return true;
    }
    if (v == "false" || v == "0") {
        out = false;
        return true;
    }
    return false;
}

template <class T> bool parse_num(const std::string& v, T& out) {
    const char* last = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_double(const std::string& v, double& out) {
    try {
        size_t used = 0;
        out = std::stod(v, &used);
        return used == v.size();
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

BenchConfig parse_bench_config(const std::string& text) {
    BenchConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        // trim
        const auto is_ws = [](unsigned char c) { return std::isspace(c); };
        while (!line.empty() && is_ws(line.back()))
            line.pop_back();
        size_t start = 0;
        while (start < line.size() && is_ws(line[start]))
            ++start;
        line.erase(0, start);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value", line_no);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        const auto bad_value = [&]() -> ParseError {
            return ParseError("bad value '" + value + "' for " + key, line_no);
        };

        bool b = false;
        if (key == "formulations") {
            cfg.formulations.clear();
            std::istringstream fs(value);
            std::string item;
            while (std::getline(fs, item, ',')) {
                const auto f = parse_formulation(item);
                if (!f)
                    throw ParseError("unknown formulation '" + item + "'", line_no);
                cfg.formulations.push_back(*f);
            }
            if (cfg.formulations.empty())
                throw bad_value();
        } else if (key == "time_limit_sec") {
            if (!parse_double(value, cfg.time_limit_sec) || cfg.time_limit_sec < 0)
                throw bad_value();
        } else if (key == "node_limit") {
            if (!parse_num(value, cfg.node_limit) || cfg.node_limit < 0)
                throw bad_value();
        } else if (key == "memory_limit_mb") {
            if (!parse_num(value, cfg.memory_limit_mb) || cfg.memory_limit_mb <= 0)
                throw bad_value();
        } else if (key == "oracle_guard_edges") {
            if (!parse_num(value, cfg.oracle_guard_edges))
                throw bad_value();
        } else if (key == "seed") {
            if (!parse_num(value, cfg.seed))
                throw bad_value();
        } else if (key == "redact_timings") {
            if (!parse_bool(value, cfg.redact_timings))
                throw bad_value();
        } else if (key == "jobs") {
            if (!parse_num(value, cfg.jobs) || cfg.jobs < 1)
                throw bad_value();
        } else if (key == "kuratowski.max_constraints_per_round") {
            if (!parse_num(value, cfg.kuratowski.max_constraints_per_round))
                throw bad_value();
        } else if (key == "kuratowski.max_extractions_per_round") {
            if (!parse_num(value, cfg.kuratowski.max_extractions_per_round))
                throw bad_value();
        } else if (key == "kuratowski.keep_most_violated") {
            if (!parse_bool(value, cfg.kuratowski.keep_most_violated))
                throw bad_value();
        } else if (key == "facialwalks.force_first_three_faces") {
            if (!parse_bool(value, cfg.facialwalks.force_first_three_faces))
                throw bad_value();
        } else if (key == "facialwalks.symmetry_faces_descending") {
            if (!parse_bool(value, cfg.facialwalks.symmetry_faces_descending))
                throw bad_value();
        } else if (key == "facialwalks.degree3_specialization") {
            if (!parse_bool(value, cfg.facialwalks.degree3_specialization))
                throw bad_value();
        } else if (key == "schnyder.intersection_constraints") {
            if (!parse_bool(value, cfg.schnyder.intersection_constraints))
                throw bad_value();
        } else if (key == "schnyder.symmetry_breaking") {
            if (!parse_bool(value, cfg.schnyder.symmetry_breaking))
                throw bad_value();
        } else if (key == "schnyder.transitivity") {
            if (value == "explicit")
                cfg.schnyder.transitivity = SchnyderConfig::Transitivity::Explicit;
            else if (value == "lazy")
                cfg.schnyder.transitivity = SchnyderConfig::Transitivity::Lazy;
            else
                throw bad_value();
        } else if (key == "leftright.symmetry_blue") {
            if (!parse_bool(value, cfg.leftright.symmetry_blue))
                throw bad_value();
        } else if (key == "leftright.unique_tree") {
            if (!parse_bool(value, cfg.leftright.unique_tree))
                throw bad_value();
        } else if (key == "leftright.dfs_branching") {
            if (!parse_bool(value, cfg.leftright.dfs_branching))
                throw bad_value();
        } else if (key == "leftright.max_coloring_constraints_per_round") {
            if (!parse_num(value, cfg.leftright.max_coloring_constraints_per_round))
                throw bad_value();
        } else {
            throw ParseError("unknown key '" + key + "'", line_no);
        }
    }
    return cfg;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bench_config(buf.str());
}

std::string csv_header() {
    return "instance,formulation,status,objective,dual_bound,skewness_upper_bound,"
           "wall_time_ms,bnb_nodes,lazy_constraints,seed";
}

std::string to_csv_row(const RunRecord& r) {
    std::ostringstream out;
    out << r.instance << ',' << r.formulation << ',' << r.status << ',' << r.objective << ','
        << r.dual_bound << ',' << r.skewness_upper_bound << ',' << r.wall_time_ms << ','
        << r.bnb_nodes << ',' << r.lazy_constraints << ',' << r.seed;
    return out.str();
}

namespace {

PipelineConfig pipeline_config(const BenchConfig& cfg, Formulation f) {
    PipelineConfig pc;
    pc.formulation = f;
    pc.limits.time_sec = cfg.time_limit_sec;
    pc.limits.nodes = cfg.node_limit;
    pc.limits.memory_bytes = cfg.memory_limit_mb * 1024 * 1024;
    pc.heuristic_seed = cfg.seed;
    pc.kuratowski = cfg.kuratowski;
    pc.facialwalks = cfg.facialwalks;
    pc.schnyder = cfg.schnyder;
    pc.leftright = cfg.leftright;
    return pc;
}

RunRecord run_one(const std::string& instance, const WeightedGraph& g, const BenchConfig& cfg,
                  Formulation f, std::int64_t skew_ub) {
    RunRecord rec;
    rec.instance = instance;
    rec.formulation = formulation_name(f);
    rec.seed = cfg.seed;
    rec.skewness_upper_bound = skew_ub;
    const auto start = std::chrono::steady_clock::now();
    try {
        const PipelineResult r = solve_mps(g, pipeline_config(cfg, f));
        rec.status = to_string(r.status);
        rec.objective = r.objective;
        rec.dual_bound = r.dual_bound;
        rec.bnb_nodes = r.stats.bnb_nodes;
        rec.lazy_constraints = r.stats.lazy_constraints_added;
        if (!is_planar(g, r.selection))
            rec.status = "error"; // the pipeline verifies this; belt and braces
        if (r.status == SolveStatus::Optimal && cfg.oracle_guard_edges > 0 &&
            g.edge_count() <= cfg.oracle_guard_edges &&
            oracle_mps(g, cfg.oracle_guard_edges).max_weight != r.objective)
            rec.status = "error";
    } catch (const std::exception&) {
        rec.status = "error";
    }
    if (!cfg.redact_timings)
        rec.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return rec;
}

} // namespace

SuiteResult run_suite(const std::filesystem::path& corpus_dir, const BenchConfig& cfg) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::exists(corpus_dir))
        for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
            if (entry.is_regular_file() && entry.path().filename().string()[0] != '.')
                files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    struct Instance {
        std::string name;
        std::optional<WeightedGraph> graph;
        std::int64_t skew_ub = 0;
    };
    std::vector<Instance> instances;
    for (const auto& path : files) {
        Instance inst;
        inst.name = path.stem().string();
        try {
            WeightedGraph g = ingest(path, deduce_graph_format(path));
            inst.skew_ub =
                g.total_weight() - selection_weight(g, cactus_heuristic(g, cfg.seed));
            inst.graph = std::move(g);
        } catch (const std::exception&) {
            inst.graph = std::nullopt; // every record of this instance says error
        }
        instances.push_back(std::move(inst));
    }

    // one task per (instance, formulation); records land by task index so the
    // output order never depends on scheduling
    const size_t per = cfg.formulations.size();
    std::vector<RunRecord> records(instances.size() * per);
    std::atomic<size_t> cursor{0};
    const auto worker = [&] {
        while (true) {
            const size_t k = cursor.fetch_add(1);
            if (k >= records.size())
                return;
            const Instance& inst = instances[k / per];
            const Formulation f = cfg.formulations[k % per];
            if (inst.graph.has_value()) {
                records[k] = run_one(inst.name, *inst.graph, cfg, f, inst.skew_ub);
            } else {
                records[k].instance = inst.name;
                records[k].formulation = formulation_name(f);
                records[k].status = "error";
                records[k].seed = cfg.seed;
            }
        }
    };
    const int threads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(records.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    SuiteResult out;
    out.records = std::move(records);
    std::ostringstream csv;
    csv << csv_header() << '\n';
    for (const RunRecord& r : out.records)
        csv << to_csv_row(r) << '\n';
    out.csv = csv.str();

    std::ostringstream sum;
    sum << "formulation    optimal/runs\n";
    for (const Formulation f : cfg.formulations) {
        int solved = 0, total = 0;
        for (const RunRecord& r : out.records)
            if (r.formulation == formulation_name(f)) {
                ++total;
                solved += r.status == "optimal" ? 1 : 0;
            }
        sum << formulation_name(f);
        for (size_t pad = std::string(formulation_name(f)).size(); pad < 15; ++pad)
            sum << ' ';
        sum << solved << '/' << total << '\n';
    }
    out.summary = sum.str();
    return out;
}

} // namespace mps
