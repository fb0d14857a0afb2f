// Command-line front end: builds exposomes from record files and emits
// GraphML/DOT/Newick/report artifacts.

#include "exposome/exposome.hpp"
#include "exposome/synthetic.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace exposome;

namespace {

struct CommonOpts {
    std::string input;
    std::string tables_dir;
    std::string output;
    int min_shared = 1;
    int min_weight = 1;
    std::string key_mode = "cortege";
    std::optional<int> agg_exposure;
    std::string format = "report";
    std::uint64_t seed = 1;
    int synthetic_count = 0;

    KeyMode mode() const {
        if (key_mode == "cortege")
            return KeyMode::Cortege;
        if (key_mode == "strict")
            return KeyMode::Strict;
        throw Error("BadFlag", "key-mode must be cortege or strict");
    }
    ExposomeParams params() const { return {min_shared, min_weight}; }
};

void add_common(CLI::App *cmd, CommonOpts &opt) {
    cmd->add_option("--input,-i", opt.input, "record file (csv or jsonl)");
    cmd->add_option("--tables", opt.tables_dir,
                    "classification table directory (default $EXPOSOME_TABLES)");
    cmd->add_option("--out,-o", opt.output, "output file (default stdout)");
    cmd->add_option("--d", opt.min_shared, "minimum shared exposures per link")
        ->check(CLI::Range(1, 5));
    cmd->add_option("--eta", opt.min_weight, "minimum node weight")->check(CLI::PositiveNumber);
    cmd->add_option("--key-mode", opt.key_mode, "node identity: cortege|strict");
    cmd->add_option("--agg-exposure", opt.agg_exposure, "exposure aggregation level");
    cmd->add_option("--seed", opt.seed, "seed for synthetic fixture generation");
    cmd->add_option("--synthetic", opt.synthetic_count,
                    "generate this many synthetic records instead of reading --input");
}

std::map<Axis, ClassificationTable> load_tables(const CommonOpts &opt) {
    std::map<Axis, ClassificationTable> tables;
    std::string dir = opt.tables_dir;
    if (dir.empty())
        if (const char *env = std::getenv("EXPOSOME_TABLES"))
            dir = env;
    if (dir.empty())
        return tables;
    for (Axis axis : all_axes) {
        fs::path path = fs::path(dir) / (std::string(axis_name(axis)) + ".csv");
        if (fs::exists(path))
            tables[axis] = load_classification_table(path.string());
    }
    return tables;
}

struct LoadedData {
    std::vector<OhpRecord> records;
    std::vector<RejectedRow> rejected;
    std::map<Axis, ClassificationTable> tables;
};

LoadedData load(const CommonOpts &opt) {
    LoadedData data;
    data.tables = load_tables(opt);
    if (opt.synthetic_count > 0) {
        synthetic::Params p;
        p.record_count = opt.synthetic_count;
        p.exposure_codes = std::max(10, opt.synthetic_count / 4);
        data.records = synthetic::records(opt.seed, p);
        return data;
    }
    if (opt.input.empty())
        throw Error("MissingInput", "--input or --synthetic required");

    ParseOptions popt = ParseOptions::from_tables(data.tables);
    popt.agg_exposure = opt.agg_exposure;
    std::ifstream in(opt.input);
    if (!in)
        throw IoFailureError("cannot open " + opt.input);
    auto result = parse_records(in, popt);
    data.records = std::move(result.accepted);
    data.rejected = std::move(result.rejected);
    if (!data.rejected.empty()) {
        std::ofstream rej(opt.input + ".rejects");
        write_rejects(rej, data.rejected);
    }
    return data;
}

RunManifest manifest_for(const CommonOpts &opt) {
    std::vector<std::string> inputs;
    if (!opt.input.empty() && opt.synthetic_count == 0)
        inputs.push_back(opt.input);
    return make_manifest(inputs, opt.params(), opt.mode(), opt.agg_exposure);
}

void emit(const CommonOpts &opt, const std::string &content) {
    if (opt.output.empty())
        std::cout << content;
    else
        write_file(opt.output, content);
}

std::vector<CoverageRow> coverage_rows(const LoadedData &data) {
    std::map<Axis, std::set<Code>> used;
    for (const auto &r : data.records) {
        used[Axis::Disease].insert(r.disease);
        used[Axis::Exposure].insert(r.exposures.begin(), r.exposures.end());
        used[Axis::Occupation].insert(r.occupation);
        used[Axis::Sector].insert(r.sector);
    }
    std::vector<CoverageRow> rows;
    for (Axis axis : all_axes) {
        CoverageRow row;
        row.axis = axis;
        row.used = static_cast<long long>(used[axis].size());
        auto it = data.tables.find(axis);
        row.available =
            it != data.tables.end() ? it->second.declared_size : default_declared_size(axis);
        rows.push_back(row);
    }
    return rows;
}

std::string render(const CommonOpts &opt, const Exposome &g, const LoadedData &data,
                   const ProjectionOverlay *overlay = nullptr) {
    RunManifest manifest = manifest_for(opt);
    std::ostringstream out;
    if (opt.format == "graphml") {
        export_graphml(g, out, &manifest);
    } else if (opt.format == "dot") {
        export_dot(g, out, overlay, &manifest);
    } else if (opt.format == "newick") {
        auto tree = upgma(exposure_groups(g).groups);
        out << to_newick(tree) << '\n';
    } else if (opt.format == "report") {
        write_report(out, g, degrees(g), clustering(g), exposure_groups(g), maximal_cliques(g),
                     coverage_rows(data), manifest);
    } else {
        throw Error("BadFlag", "unknown format " + opt.format);
    }
    return out.str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exposome: co-occurrence networks of occupational health problems"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string axis_flag = "occupation";
    std::vector<std::string> code_flags;
    int t1 = 0, t2 = 0;
    std::size_t max_cliques_cap = 100000;

    auto *cmd_build = app.add_subcommand("build", "build the exposome graph");
    add_common(cmd_build, opt);
    auto *fmt_build = cmd_build->add_option("--format", opt.format, "graphml|dot|report|newick");

    auto *cmd_metrics = app.add_subcommand("metrics", "density, degrees, clustering");
    add_common(cmd_metrics, opt);

    auto *cmd_groups = app.add_subcommand("groups", "single exposure groups");
    add_common(cmd_groups, opt);

    auto *cmd_cliques = app.add_subcommand("cliques", "maximal cliques, single/hybrid");
    add_common(cmd_cliques, opt);
    cmd_cliques->add_option("--max-cliques", max_cliques_cap, "output cap");

    auto *cmd_dendro = app.add_subcommand("dendro", "exposure-group dendrogram");
    add_common(cmd_dendro, opt);
    auto *fmt_dendro = cmd_dendro->add_option("--format", opt.format, "newick|tree");

    auto *cmd_diff = app.add_subcommand("diff", "temporal snapshot diff");
    add_common(cmd_diff, opt);
    cmd_diff->add_option("--t1", t1, "baseline cutoff year")->required();
    cmd_diff->add_option("--t2", t2, "comparison cutoff year")->required();

    auto *cmd_project = app.add_subcommand("project", "occupation/sector overlay");
    add_common(cmd_project, opt);
    cmd_project->add_option("--axis", axis_flag, "occupation|sector");
    cmd_project->add_option("--codes", code_flags, "codes to mark")->required();
    auto *fmt_project = cmd_project->add_option("--format", opt.format, "dot|report");

    auto *cmd_coverage = app.add_subcommand("coverage", "code-space coverage table");
    add_common(cmd_coverage, opt);

    auto *cmd_export = app.add_subcommand("export", "full pipeline artifact");
    add_common(cmd_export, opt);
    cmd_export->add_option("--format", opt.format, "graphml|dot|report|newick");

    CLI11_PARSE(app, argc, argv);

    // per-subcommand default formats when --format is not given
    if (cmd_build->parsed() && fmt_build->count() == 0)
        opt.format = "graphml";
    if (cmd_dendro->parsed() && fmt_dendro->count() == 0)
        opt.format = "newick";
    if (cmd_project->parsed() && fmt_project->count() == 0)
        opt.format = "dot";

    try {
        if (cmd_build->parsed() || cmd_export->parsed()) {
            auto data = load(opt);
            auto g = build(dedupe(data.records, opt.mode()), opt.params());
            emit(opt, render(opt, g, data));
        } else if (cmd_metrics->parsed()) {
            auto data = load(opt);
            auto g = build(dedupe(data.records, opt.mode()), opt.params());
            auto deg = degrees(g);
            auto clus = clustering(g);
            std::ostringstream out;
            out << "W=" << g.total_ohp() << " V=" << g.node_count() << " L=" << g.edge_count()
                << " D=" << g.params.min_shared << " eta=" << g.params.min_weight << '\n';
            out << "density=" << std::fixed << std::setprecision(2) << density(g) << '\n';
            for (const auto &[k, count] : deg.histogram)
                out << "k=" << k << " nodes=" << count << '\n';
            out.unsetf(std::ios::fixed);
            for (std::size_t i = 0; i < clus.per_node.size(); ++i)
                out << "node=" << i << " k=" << deg.per_node[i] << " c=" << std::setprecision(4)
                    << clus.per_node[i] << '\n';
            emit(opt, out.str());
        } else if (cmd_groups->parsed()) {
            auto data = load(opt);
            auto g = build(dedupe(data.records, opt.mode()), opt.params());
            auto groups = exposure_groups(g);
            std::ostringstream out;
            for (const auto &grp : groups.groups)
                out << grp.exposure.raw << " members=" << grp.members.size() << " ("
                    << grp.ohp_count << ")\n";
            for (const auto &c : groups.unshared)
                out << "unshared " << c.raw << '\n';
            emit(opt, out.str());
        } else if (cmd_cliques->parsed()) {
            auto data = load(opt);
            auto g = build(dedupe(data.records, opt.mode()), opt.params());
            auto result = maximal_cliques(g, max_cliques_cap);
            std::ostringstream out;
            if (result.truncated)
                out << "truncated=true\n";
            for (const auto &c : result.cliques) {
                out << (c.kind == CliqueKind::Single ? "single" : "hybrid");
                for (int m : c.members)
                    out << ' ' << m;
                out << '\n';
            }
            emit(opt, out.str());
        } else if (cmd_dendro->parsed()) {
            auto data = load(opt);
            auto g = build(dedupe(data.records, opt.mode()), opt.params());
            auto tree = upgma(exposure_groups(g).groups);
            if (opt.format == "tree")
                emit(opt, dump_tree(tree));
            else
                emit(opt, to_newick(tree) + "\n");
        } else if (cmd_diff->parsed()) {
            auto data = load(opt);
            auto diff = snapshot_diff(data.records, t1, t2, opt.mode(), opt.params());
            std::ostringstream out;
            out << "new_nodes=" << diff.new_nodes.size()
                << " incremented=" << diff.incremented.size()
                << " new_edges=" << diff.new_edges.size() << '\n';
            for (const auto &d : diff.new_nodes)
                out << "new " << d.key.label() << " w=" << d.weight_t2 << '\n';
            for (const auto &d : diff.incremented)
                out << "inc " << d.key.label() << " w " << d.weight_t1 << "->" << d.weight_t2
                    << '\n';
            emit(opt, out.str());
        } else if (cmd_project->parsed()) {
            auto data = load(opt);
            auto g = build(dedupe(data.records, opt.mode()), opt.params());
            Axis axis = axis_from_name(axis_flag);
            std::vector<Code> codes;
            ParseOptions popt = ParseOptions::from_tables(data.tables);
            for (const auto &text : code_flags)
                codes.push_back(parse_code(axis, text, axis == Axis::Occupation
                                                           ? popt.occupation_sep
                                                           : popt.sector_sep));
            auto overlay = project(g, axis, codes);
            if (opt.format == "dot") {
                emit(opt, render(opt, g, data, &overlay));
            } else {
                std::ostringstream out;
                for (const auto &[node, hits] : overlay.per_node)
                    for (const auto &[c, count] : hits)
                        out << "node=" << node << " code=" << c.raw << " count=" << count
                            << '\n';
                emit(opt, out.str());
            }
        } else if (cmd_coverage->parsed()) {
            auto data = load(opt);
            std::ostringstream out;
            for (const auto &row : coverage_rows(data))
                out << axis_name(row.axis) << ',' << row.used << ',' << row.available << ','
                    << std::fixed << std::setprecision(2) << coverage(row.used, row.available)
                    << '\n';
            emit(opt, out.str());
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
