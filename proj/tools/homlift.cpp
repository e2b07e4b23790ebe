// Command-line front end: generation, validation, lifting, homology,
// distances, cycle bases, skeleton assembly, and the Monte Carlo projection
// check, over the line-based text formats.  All randomness derives from
// --seed; identical inputs and flags give byte-identical outputs.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "homlift/css.hpp"
#include "homlift/decongestion.hpp"
#include "homlift/distance.hpp"
#include "homlift/generators.hpp"
#include "homlift/io.hpp"
#include "homlift/lifting.hpp"
#include "homlift/skeleton.hpp"
#include "homlift/zhomology.hpp"

namespace {

using nlohmann::json;
using namespace homlift;

const char* report_schema_version() { return "1.0.0"; }

struct Out {
    std::string path;
    std::ofstream file;
    std::ostream& stream() {
        if (path.empty() || path == "-") return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output " + path);
        }
        return file;
    }
};

std::ifstream open_input(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return f;
}

template <typename Reader>
auto read_from(const std::string& path, Reader reader) {
    if (path.empty() || path == "-") return reader(std::cin);
    auto f = open_input(path);
    return reader(f);
}

json base_report(const std::string& command, std::uint64_t seed) {
    json j;
    j["schema_version"] = report_schema_version();
    j["command"] = command;
    j["seed"] = seed;
    return j;
}

json lift_report(const LiftResult& r, std::uint64_t seed) {
    json j = base_report("lift", seed);
    j["parity_ok"] = r.parity_ok;
    j["admissible"] = r.admissible;
    j["sparsity_in"] = r.sparsity_in.str();
    j["sparsity_out"] = r.sparsity_out.str();
    j["dims"] = r.lifted.dims;
    return j;
}

// Detects complex2 vs complexz by the header token.
std::string peek_header_word(std::istream& in, std::string& buffered) {
    std::ostringstream all;
    all << in.rdbuf();
    buffered = all.str();
    std::istringstream ss(buffered);
    std::string line, word;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (ls >> word) return word;
    }
    return "";
}

// Accepts either a complex2 file or a css code file (converted through the
// dictionary) wherever a binary complex is expected.
ChainComplex2 read_complex2_or_code(std::istream& in) {
    std::string buffered;
    std::string head = peek_header_word(in, buffered);
    std::istringstream again(buffered);
    if (head == "css") return css_to_complex(read_code(again));
    return read_complex2(again);
}

int run(int argc, char** argv) {
    CLI::App app{"sparse chain-complex lifting and handle-skeleton toolkit"};
    app.require_subcommand(1);
    // global flags (--seed, --out, budgets) may follow the subcommand
    app.fallthrough();

    std::uint64_t seed = 0;
    std::string out_path, format = "json";
    app.add_option("--seed", seed, "seed for all randomized steps")->capture_default_str();
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "json|text (skeleton also: dot)")->capture_default_str();

    long long budget_distance = -1;
    int budget_retries = 32;
    long long budget_fill = -1;
    long long budget_samples = 100000;
    app.add_option("--budget-distance", budget_distance, "distance weight budget (default: qubit count)");
    app.add_option("--budget-retries", budget_retries, "cycle-basis retry budget")->capture_default_str();
    app.add_option("--budget-fill", budget_fill, "LU fill budget (-1: unlimited)");
    app.add_option("--budget-samples", budget_samples, "Monte Carlo sample budget")->capture_default_str();

    // gen -------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a complex");
    gen->require_subcommand(1);
    auto* gen_toric_cmd = gen->add_subcommand("toric", "product of a cycle with itself");
    int toric_L = 3;
    gen_toric_cmd->add_option("--L", toric_L, "side length")->required();
    auto* gen_cycle_cmd = gen->add_subcommand("cycle", "cycle-graph 1-complex");
    int cycle_m = 3;
    gen_cycle_cmd->add_option("--m", cycle_m, "cycle length")->required();
    auto* gen_hgp_cmd = gen->add_subcommand("hgp", "hypergraph product of two 1-complexes");
    std::string hgp_a, hgp_b;
    gen_hgp_cmd->add_option("--a", hgp_a, "first factor (complex2 file)")->required();
    gen_hgp_cmd->add_option("--b", hgp_b, "second factor (complex2 file)")->required();
    auto* gen_bundle_cmd = gen->add_subcommand("bundle", "twisted product with a circle fiber");
    std::string bundle_base, bundle_twists;
    int bundle_m = 1;
    gen_bundle_cmd->add_option("--base", bundle_base, "base 1-complex file")->required();
    gen_bundle_cmd->add_option("--m", bundle_m, "fiber length")->required();
    gen_bundle_cmd->add_option("--twists", bundle_twists, "twist file: lines 'edge vertex shift'");

    // validate ----------------------------------------------------------
    auto* validate_cmd = app.add_subcommand("validate", "check the composition law of a complex");
    std::string validate_in;
    validate_cmd->add_option("--in", validate_in, "complex2/complexz file (default stdin)");

    // lift ---------------------------------------------------------------
    auto* lift_cmd = app.add_subcommand("lift", "lift a binary complex to the integers");
    std::string lift_method, lift_in, lift_d1, lift_a, lift_b, lift_base, lift_twists, lift_report_path;
    int lift_m = 1;
    lift_cmd->add_option("--method", lift_method, "naive|general|sparse|bundle|product")->required();
    lift_cmd->add_option("--in", lift_in, "complex2 input (naive/general/sparse; default stdin)");
    lift_cmd->add_option("--d1", lift_d1, "sparse: lift of the degree-1 boundary (int matrix file; default naive)");
    lift_cmd->add_option("--a", lift_a, "product: first factor file");
    lift_cmd->add_option("--b", lift_b, "product: second factor file");
    lift_cmd->add_option("--base", lift_base, "bundle: base 1-complex file");
    lift_cmd->add_option("--m", lift_m, "bundle: fiber length");
    lift_cmd->add_option("--twists", lift_twists, "bundle: twist file");
    lift_cmd->add_option("--report", lift_report_path, "write the JSON lift report here");

    // homology ------------------------------------------------------------
    auto* hom_cmd = app.add_subcommand("homology", "homology of a complex");
    std::string hom_ring = "z", hom_in;
    hom_cmd->add_option("--ring", hom_ring, "z|f2")->capture_default_str();
    hom_cmd->add_option("--in", hom_in, "complex file (default stdin)");

    // snf ----------------------------------------------------------------
    auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    std::string snf_in;
    snf_cmd->add_option("--in", snf_in, "int matrix file (default stdin)");

    // lu-probe --------------------------------------------------------------
    auto* lu_cmd = app.add_subcommand("lu-probe", "sparse PLUQ probe over F2");
    std::string lu_in;
    lu_cmd->add_option("--in", lu_in, "f2 matrix file (default stdin)");

    // minor-gcd ---------------------------------------------------------------
    auto* gcd_cmd = app.add_subcommand("minor-gcd", "gcd of sampled maximal minors");
    std::string gcd_in;
    int gcd_trials = 32;
    gcd_cmd->add_option("--in", gcd_in, "int matrix file (default stdin)");
    gcd_cmd->add_option("--trials", gcd_trials, "sample count")->capture_default_str();

    // distance ---------------------------------------------------------------
    auto* dist_cmd = app.add_subcommand("distance", "minimum logical weight");
    std::string dist_side = "hom", dist_in;
    dist_cmd->add_option("--side", dist_side, "hom|cohom")->capture_default_str();
    dist_cmd->add_option("--in", dist_in, "complex2 file (default stdin)");

    // sr -----------------------------------------------------------------
    auto* sr_cmd = app.add_subcommand("sr", "combinatorial systolic ratio");
    std::string sr_in;
    sr_cmd->add_option("--in", sr_in, "complex2 file (default stdin)");

    // cycle-basis ---------------------------------------------------------
    auto* cb_cmd = app.add_subcommand("cycle-basis", "weakly fundamental cycle basis");
    std::string cb_in;
    bool cb_verify = false, cb_stats = false;
    int cb_degree_cap = 16;
    cb_cmd->add_option("--in", cb_in, "graph file (default stdin)");
    cb_cmd->add_flag("--verify", cb_verify, "run the basis verifiers");
    cb_cmd->add_flag("--stats", cb_stats, "include multiplicity/weight/intersection stats");
    cb_cmd->add_option("--degree-cap", cb_degree_cap, "maximum vertex degree")->capture_default_str();

    // skeleton -------------------------------------------------------------
    auto* sk_cmd = app.add_subcommand("skeleton", "handle skeleton of a lifted complex");
    std::string sk_in, sk_stage = "zqx+", sk_report = "json";
    sk_cmd->add_option("--in", sk_in, "complexz file (default stdin)");
    sk_cmd->add_option("--stage", sk_stage, "x|qx|zqx|zqx+|double")->capture_default_str();
    sk_cmd->add_option("--report", sk_report, "json|dot")->capture_default_str();

    // mc-push ---------------------------------------------------------------
    auto* mc_cmd = app.add_subcommand("mc-push", "Monte Carlo radial projection ratio");
    int mc_k = 1, mc_n = 2;
    double mc_ceiling = 50.0;
    mc_cmd->add_option("--k", mc_k, "simplex dimension")->required();
    mc_cmd->add_option("--n", mc_n, "ambient dimension")->required();
    mc_cmd->add_option("--ceiling", mc_ceiling, "mean ratio ceiling")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // prints message or help text
        return code == 0 ? 0 : 2;
    }

    Out out;
    out.path = out_path;

    if (gen->parsed()) {
        ChainComplex2 c;
        if (gen_toric_cmd->parsed()) {
            c = gen_toric(toric_L);
        } else if (gen_cycle_cmd->parsed()) {
            c = gen_cycle(cycle_m);
        } else if (gen_hgp_cmd->parsed()) {
            auto a = read_from(hgp_a, [](std::istream& s) { return read_complex2(s); });
            auto b = read_from(hgp_b, [](std::istream& s) { return read_complex2(s); });
            c = gen_hypergraph_product(a, b);
        } else if (gen_bundle_cmd->parsed()) {
            auto base = read_from(bundle_base, [](std::istream& s) { return read_complex2(s); });
            std::vector<std::tuple<int, int, int>> tw;
            if (!bundle_twists.empty())
                tw = read_from(bundle_twists, [](std::istream& s) { return read_twists(s); });
            c = gen_fiber_bundle(FiberBundleSpec::make(std::move(base), bundle_m, tw));
        }
        write_complex(out.stream(), c);
        return 0;
    }

    if (validate_cmd->parsed()) {
        std::string buffered;
        std::string head;
        if (validate_in.empty() || validate_in == "-") head = peek_header_word(std::cin, buffered);
        else {
            auto f = open_input(validate_in);
            head = peek_header_word(f, buffered);
        }
        std::istringstream in(buffered);
        json j = base_report("validate", seed);
        ValidationReport rep;
        if (head == "complex2") rep = validate_complex(read_complex2(in));
        else if (head == "complexz") rep = validate_complex(read_complexz(in));
        else if (head == "css") rep = validate_complex(css_to_complex(read_code(in)));
        else throw std::runtime_error("validate: expected a complex2, complexz, or css file");
        j["ok"] = rep.ok;
        if (!rep.ok) {
            j["violation"] = {{"boundary", rep.j}, {"row", rep.row}, {"col", rep.col}};
        }
        if (format == "text") out.stream() << (rep.ok ? "ok" : "not a complex") << "\n";
        else out.stream() << j.dump(2) << "\n";
        return rep.ok ? 0 : 1;
    }

    if (lift_cmd->parsed()) {
        LiftResult result;
        if (lift_method == "naive") {
            auto c = read_from(lift_in, [](std::istream& s) { return read_complex2(s); });
            result = make_lift_result(c, naive_lift(c));
        } else if (lift_method == "general") {
            auto c = read_from(lift_in, [](std::istream& s) { return read_complex2(s); });
            result = general_lift(c);
        } else if (lift_method == "sparse") {
            auto c = read_from(lift_in, [](std::istream& s) { return read_complex2(s); });
            IntMatrix d1 = lift_d1.empty() ? naive_lift(c.boundaries[0])
                                           : read_from(lift_d1, [](std::istream& s) { return read_int_matrix(s); });
            result = sparse_lift(c, d1).result;
        } else if (lift_method == "product") {
            if (lift_a.empty() || lift_b.empty())
                throw std::runtime_error("lift --method product needs --a and --b factor files");
            auto a = read_from(lift_a, [](std::istream& s) { return read_complex2(s); });
            auto b = read_from(lift_b, [](std::istream& s) { return read_complex2(s); });
            result = make_lift_result(gen_hypergraph_product(a, b), product_lift(a, b));
        } else if (lift_method == "bundle") {
            if (lift_base.empty()) throw std::runtime_error("lift --method bundle needs --base");
            auto base = read_from(lift_base, [](std::istream& s) { return read_complex2(s); });
            std::vector<std::tuple<int, int, int>> tw;
            if (!lift_twists.empty())
                tw = read_from(lift_twists, [](std::istream& s) { return read_twists(s); });
            auto spec = FiberBundleSpec::make(std::move(base), lift_m, tw);
            result = make_lift_result(gen_fiber_bundle(spec), fiber_bundle_lift(spec));
        } else {
            throw CLI::ValidationError("--method", "unknown lift method '" + lift_method + "'");
        }
        write_complex(out.stream(), result.lifted);
        if (!lift_report_path.empty()) {
            std::ofstream rf(lift_report_path);
            if (!rf) throw std::runtime_error("cannot open " + lift_report_path);
            rf << lift_report(result, seed).dump(2) << "\n";
        }
        return 0;
    }

    if (hom_cmd->parsed()) {
        json j = base_report("homology", seed);
        j["ring"] = hom_ring;
        if (hom_ring == "z") {
            auto c = read_from(hom_in, [](std::istream& s) { return read_complexz(s); });
            HomologySummary h = homology_z(c);
            json degs = json::array();
            for (std::size_t d = 0; d < h.degrees.size(); ++d) {
                json jd;
                jd["degree"] = d;
                jd["free_rank"] = h.degrees[d].free_rank;
                json tor = json::array(), cot = json::array();
                for (const auto& t : h.degrees[d].torsion) tor.push_back(t.str());
                for (const auto& t : h.degrees[d].cotorsion) cot.push_back(t.str());
                jd["torsion"] = tor;
                jd["cohomology_torsion"] = cot;
                degs.push_back(jd);
            }
            j["degrees"] = degs;
            bool torsion_free = true;
            for (const auto& d : h.degrees) torsion_free = torsion_free && d.torsion.empty();
            j["torsion_free"] = torsion_free;
        } else if (hom_ring == "f2") {
            auto c = read_from(hom_in, [](std::istream& s) { return read_complex2(s); });
            json betti = json::array();
            for (int d = 0; d < static_cast<int>(c.dims.size()); ++d) betti.push_back(betti2(c, d));
            j["betti"] = betti;
        } else {
            throw CLI::ValidationError("--ring", "expected z or f2");
        }
        out.stream() << j.dump(2) << "\n";
        return 0;
    }

    if (snf_cmd->parsed()) {
        auto m = read_from(snf_in, [](std::istream& s) { return read_int_matrix(s); });
        SnfResult r = snf(m);
        json j = base_report("snf", seed);
        j["rank"] = r.rank;
        json f = json::array();
        for (const auto& v : r.invariant_factors) f.push_back(v.str());
        j["invariant_factors"] = f;
        out.stream() << j.dump(2) << "\n";
        return 0;
    }

    if (lu_cmd->parsed()) {
        auto m = read_from(lu_in, [](std::istream& s) { return read_bin_matrix(s); });
        SparseLuResult r = try_sparse_lu(m, budget_fill);
        json j = base_report("lu-probe", seed);
        j["completed"] = r.completed;
        j["rank"] = r.rank;
        j["rows"] = r.rows;
        j["cols"] = r.cols;
        j["fill"] = r.fill;
        j["full_rank"] = r.full_rank();
        j["certifies_unimodular_lift"] = r.certifies_unimodular_lift();
        out.stream() << j.dump(2) << "\n";
        return r.completed ? 0 : 1;
    }

    if (gcd_cmd->parsed()) {
        auto m = read_from(gcd_in, [](std::istream& s) { return read_int_matrix(s); });
        MinorGcdResult r = probe_minor_gcd(m, gcd_trials, seed);
        json j = base_report("minor-gcd", seed);
        j["gcd"] = r.gcd.str();
        j["trials_run"] = r.trials_run;
        j["early_exit"] = r.early_exit;
        out.stream() << j.dump(2) << "\n";
        return 0;
    }

    if (dist_cmd->parsed()) {
        auto c = read_from(dist_in, [](std::istream& s) { return read_complex2_or_code(s); });
        Side side;
        if (dist_side == "hom" || dist_side == "homology") side = Side::homology;
        else if (dist_side == "cohom" || dist_side == "cohomology") side = Side::cohomology;
        else throw CLI::ValidationError("--side", "expected hom or cohom");
        DistanceOutcome d = distance(c, side, static_cast<int>(budget_distance));
        json j = base_report("distance", seed);
        j["side"] = dist_side;
        j["status"] = d.kind == DistanceOutcome::Kind::found ? "found"
                      : d.kind == DistanceOutcome::Kind::no_logical ? "no_logical"
                                                                    : "exceeds_budget";
        if (d.found()) j["d"] = d.d;
        out.stream() << j.dump(2) << "\n";
        return 0;
    }

    if (sr_cmd->parsed()) {
        auto c = read_from(sr_in, [](std::istream& s) { return read_complex2_or_code(s); });
        SystolicReport r = systolic_ratio(c, static_cast<int>(budget_distance));
        json j = base_report("sr", seed);
        j["n"] = r.n;
        j["ok"] = r.ok;
        if (r.d_hom.found()) j["d_hom"] = r.d_hom.d;
        if (r.d_cohom.found()) j["d_cohom"] = r.d_cohom.d;
        if (!r.ok)
            j["status"] = (r.d_hom.kind == DistanceOutcome::Kind::no_logical ||
                           r.d_cohom.kind == DistanceOutcome::Kind::no_logical)
                              ? "no_logical"
                              : "exceeds_budget";
        else {
            j["sr"] = {{"num", r.sr.num}, {"den", r.sr.den}};
        }
        out.stream() << j.dump(2) << "\n";
        return 0;
    }

    if (cb_cmd->parsed()) {
        auto g = read_from(cb_in, [](std::istream& s) { return read_graph(s); });
        CycleBasisOptions opts;
        opts.degree_cap = cb_degree_cap;
        opts.max_retries = budget_retries;
        CycleBasisResult r = cycle_basis(g, seed, opts);
        json j = base_report("cycle-basis", seed);
        json cycles = json::array();
        for (const auto& cyc : r.basis.cycles) cycles.push_back(cyc);
        j["cycles"] = cycles;
        j["certificates"] = r.basis.certificates;
        json stats;
        stats["retries_used"] = r.retries_used;
        stats["max_multiplicity"] = r.max_multiplicity;
        if (cb_stats) {
            stats["total_weight"] = basis_weight(r.basis, g);
            stats["max_intersections"] = intersection_stats(g, r.basis).max;
        }
        j["stats"] = stats;
        if (cb_verify) {
            VerifyResult wf = verify_weakly_fundamental(g, r.basis);
            j["verified"] = {{"weakly_fundamental", wf.ok}, {"spanning", verify_spanning(g, r.basis)}};
            if (!wf.ok) j["verified"]["failing_index"] = wf.failing_index;
        }
        if (format == "text") {
            auto& os = out.stream();
            for (std::size_t i = 0; i < r.basis.cycles.size(); ++i) {
                for (std::size_t t = 0; t < r.basis.cycles[i].size(); ++t)
                    os << (t ? " " : "") << r.basis.cycles[i][t];
                os << " # cert " << r.basis.certificates[i] << "\n";
            }
            os << j["stats"].dump() << "\n";
        } else {
            out.stream() << j.dump(2) << "\n";
        }
        return 0;
    }

    if (sk_cmd->parsed()) {
        if (sk_stage != "x" && sk_stage != "qx" && sk_stage != "zqx" && sk_stage != "zqx+" &&
            sk_stage != "double")
            throw CLI::ValidationError("--stage", "expected x|qx|zqx|zqx+|double");
        auto c = read_from(sk_in, [](std::istream& s) { return read_complexz(s); });
        HandleSkeleton sk = build_X(c);
        if (sk_stage != "x") attach_qubit_handles(sk, c);
        if (sk_stage == "zqx" || sk_stage == "zqx+" || sk_stage == "double") attach_z_handles(sk, c);
        if (sk_stage == "zqx+" || sk_stage == "double") {
            kill_pi1(sk, seed);
            height_coloring(sk);
        }
        if (sk_stage == "double") double_skeleton(sk);

        if (sk_report == "dot") {
            auto& os = out.stream();
            os << "graph skeleton {\n";
            for (const auto& h : sk.handles)
                os << "  h" << h.id << " [label=\"" << h.index << ":" << handle_kind_name(h.kind)
                   << (h.origin >= 0 ? ("/" + std::to_string(h.origin)) : "") << "\"];\n";
            for (const auto& h : sk.handles)
                for (const auto& at : h.attachments)
                    if (h.id < at.other)
                        os << "  h" << h.id << " -- h" << at.other << " [label=\"" << at.degree << "\"];\n";
            os << "}\n";
        } else {
            CongestionAudit aud = congestion_audit(sk);
            VolumeReport vol = volume_report(sk);
            json j = base_report("skeleton", seed);
            j["stage"] = sk_stage;
            json counts;
            for (const auto& [idx, n] : vol.counts_by_index) counts[std::to_string(idx)] = n;
            j["counts_by_index"] = counts;
            j["max_contact"] = aud.max;
            j["raw_max_contact"] = aud.raw_max;
            j["congested"] = aud.congested;
            j["basis_size"] = sk.pi1_basis.cycles.size();
            j["colors"] = sk.pi1_colors;
            j["total_handles"] = vol.total_handles;
            j["dims_sum"] = vol.dims_sum;
            j["adjusted_volume"] = vol.adjusted_volume;
            j["volume_ratio"] = vol.ratio();
            out.stream() << j.dump(2) << "\n";
        }
        return 0;
    }

    if (mc_cmd->parsed()) {
        McPushResult r = mc_push(mc_k, mc_n, budget_samples, seed, mc_ceiling);
        json j = base_report("mc-push", seed);
        j["k"] = r.k;
        j["n"] = r.n;
        j["samples"] = r.samples;
        j["mean_ratio"] = r.mean_ratio;
        j["ceiling"] = r.ceiling;
        j["finite"] = r.finite;
        j["below_ceiling"] = r.below_ceiling;
        out.stream() << j.dump(2) << "\n";
        return r.below_ceiling ? 0 : 1;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
