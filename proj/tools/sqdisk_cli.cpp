#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqdisk/io.hpp"
#include "sqdisk/packer.hpp"
#include "sqdisk/prover.hpp"

using namespace sqdisk;

namespace {

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return false;
    }
    out << text;
    return static_cast<bool>(out);
}

struct PackArgs {
    std::string input;
    std::string out;
    std::string svg;
    double tol = kDefaultTol;
};

int cmd_pack(const PackArgs& a) {
    Instance inst;
    try {
        inst = read_instance_file(a.input);
        check_instance(inst);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }
    const PackResult r = pack(inst, PackOptions{a.tol});
    const double area = inst.total_area();
    if (!r.packed()) {
        const Failure& f = *r.failure;
        std::cerr << "packing failed\n";
        std::cerr << "  reason: " << to_string(f.reason) << "\n";
        std::cerr << "  failed index: " << f.failed_index << " (rank " << f.failed_rank << ")\n";
        std::cerr << "  total area: " << format_double(area) << (area > DiskConstants::critical_area ? " > " : " <= ")
                  << "1.6\n";
        return 2;
    }
    const PackingDocument doc = make_document(r, inst, a.tol);
    if (a.out.empty()) {
        std::cout << to_json(doc);
    } else if (!write_file(a.out, to_json(doc))) {
        return 1;
    }
    if (!a.svg.empty()) {
        const std::size_t first = inst.sides.empty() ? 0 : sorted_order(inst.sides).front();
        if (!write_file(a.svg, to_svg(r.packing, first))) return 1;
    }
    return 0;
}

int cmd_verify(const std::string& path, double tol) {
    PackingDocument doc;
    try {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        doc = parse_document(ss.str());
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    }
    const ValidationReport rep = validate(doc.packing, tol);
    for (std::size_t i : rep.outside) std::cerr << "outside: square " << i << "\n";
    for (const auto& [i, j] : rep.overlaps) std::cerr << "overlap: squares " << i << " " << j << "\n";
    if (!rep.ok()) return 3;
    std::cout << "ok: " << doc.packing.placements.size() << " squares\n";
    return 0;
}

struct ProveArgs {
    std::string lemma = "all";
    int depth = -1;
    double min_width = -1.0;
    int workers = 1;
    std::string report;
};

std::string box_json(const Box& b) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < b.dims.size(); ++i) {
        if (i) os << ", ";
        os << "\"" << b.dims[i].first << "\": [" << format_double(b.dims[i].second.lo()) << ", "
           << format_double(b.dims[i].second.hi()) << "]";
    }
    os << "}";
    return os.str();
}

int cmd_prove(const ProveArgs& a) {
    std::vector<ConstraintSystem> systems;
    if (a.lemma == "all") {
        systems = lemma_catalog();
    } else if (auto s = find_lemma(a.lemma)) {
        systems.push_back(std::move(*s));
    } else {
        std::cerr << "unknown lemma " << a.lemma << "; known:";
        for (const auto& n : lemma_names()) std::cerr << " " << n;
        std::cerr << "\n";
        return 1;
    }

    bool all_proved = true;
    std::ostringstream rep;
    rep << "{\n  \"schema_version\": " << kDocumentSchemaVersion << ",\n  \"lemmas\": [";
    for (std::size_t k = 0; k < systems.size(); ++k) {
        const ConstraintSystem& sys = systems[k];
        ProverConfig cfg = default_config(sys);
        if (a.depth >= 0) cfg.max_depth = a.depth;
        if (a.min_width > 0.0) {
            cfg.default_min_width = a.min_width;
            cfg.min_width.assign(sys.variables.size(), a.min_width);
        }
        cfg.worker_count = a.workers;
        const ProofResult r = prove(sys, cfg);
        all_proved = all_proved && r.status == ProofStatus::Proved;

        std::printf("%-16s %-10s boxes=%llu depth=%d time=%.2fs\n", sys.name.c_str(), to_string(r.status),
                    static_cast<unsigned long long>(r.stats.boxes_explored), r.stats.max_depth, r.stats.wall_seconds);
        std::fflush(stdout);

        rep << (k ? ",\n" : "\n") << "    {\"name\": \"" << sys.name << "\", \"status\": \"" << to_string(r.status)
            << "\", \"boxes_explored\": " << r.stats.boxes_explored << ", \"max_depth\": " << r.stats.max_depth
            << ", \"wall_seconds\": " << format_double(r.stats.wall_seconds)
            << ", \"peak_memory_bytes\": " << r.stats.peak_memory_bytes;
        if (r.witness) rep << ", \"witness\": " << box_json(*r.witness);
        rep << ", \"undecided\": [";
        for (std::size_t i = 0; i < r.undecided.size(); ++i) rep << (i ? ", " : "") << box_json(r.undecided[i]);
        rep << "]}";
    }
    rep << "\n  ]\n}\n";
    if (!a.report.empty() && !write_file(a.report, rep.str())) return 1;
    return all_proved ? 0 : 4;
}

struct GenArgs {
    std::string kind;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double area = 0.0;
    std::string dist = "uniform";
    std::string out;
};

int cmd_gen(const GenArgs& a, const CLI::App& sub) {
    auto given = [&](const char* name) { return sub.get_option(name)->count() > 0; };
    Instance inst;
    try {
        if (a.kind == "worst") {
            if (given("--n") || given("--area") || given("--dist") || given("--seed")) {
                std::cerr << "--kind worst takes only --epsilon\n";
                return 1;
            }
            inst = gen_worst_case(a.epsilon);
        } else {
            if (given("--epsilon")) {
                std::cerr << "--kind random does not take --epsilon\n";
                return 1;
            }
            if (!given("--n") || !given("--area")) {
                std::cerr << "--kind random needs --n and --area\n";
                return 1;
            }
            const auto d = parse_distribution(a.dist);
            if (!d) {
                std::cerr << "unknown distribution " << a.dist << "\n";
                return 1;
            }
            inst = gen_random(a.seed, a.n, a.area, *d);
        }
        check_instance(inst);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::ostringstream os;
    write_instance(os, inst);
    if (a.out.empty()) {
        std::cout << os.str();
        return 0;
    }
    return write_file(a.out, os.str()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pack squares into the unit disk and check the supporting inequalities"};
    app.require_subcommand(1);

    PackArgs pa;
    auto* pack_cmd = app.add_subcommand("pack", "Pack an instance file");
    pack_cmd->add_option("input", pa.input, "Instance file, one side per line")->required();
    pack_cmd->add_option("--out", pa.out, "Packing document path (default stdout)");
    pack_cmd->add_option("--svg", pa.svg, "Optional SVG rendering");
    pack_cmd->add_option("--tol", pa.tol, "Validation tolerance")->capture_default_str();

    std::string verify_path;
    double verify_tol = kDefaultTol;
    auto* verify_cmd = app.add_subcommand("verify", "Validate a packing document");
    verify_cmd->add_option("packing", verify_path, "Packing document")->required();
    verify_cmd->add_option("--tol", verify_tol, "Validation tolerance")->capture_default_str();

    ProveArgs pr;
    auto* prove_cmd = app.add_subcommand("prove", "Run the interval prover on catalog systems");
    prove_cmd->add_option("--lemma", pr.lemma, "Lemma name or 'all'")->capture_default_str();
    prove_cmd->add_option("--depth", pr.depth, "Maximum subdivision depth");
    prove_cmd->add_option("--min-width", pr.min_width, "Minimum box width for every variable");
    prove_cmd->add_option("--workers", pr.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    prove_cmd->add_option("--report", pr.report, "Write a JSON report");

    GenArgs ga;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
    gen_cmd->add_option("--kind", ga.kind, "worst or random")->required()->check(CLI::IsMember({"worst", "random"}));
    gen_cmd->add_option("--epsilon", ga.epsilon, "Side enlargement for the worst case");
    gen_cmd->add_option("--seed", ga.seed, "Random seed");
    gen_cmd->add_option("--n", ga.n, "Number of squares");
    gen_cmd->add_option("--area", ga.area, "Total area");
    gen_cmd->add_option("--dist", ga.dist, "uniform, powerlaw, equal or adversarial_top4");
    gen_cmd->add_option("--out", ga.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (*pack_cmd) return cmd_pack(pa);
    if (*verify_cmd) return cmd_verify(verify_path, verify_tol);
    if (*prove_cmd) return cmd_prove(pr);
    if (*gen_cmd) return cmd_gen(ga, *gen_cmd);
    return 1;
}
