#include "hypfill/bounds.hpp"
#include "hypfill/brooks_makover.hpp"
#include "hypfill/dual.hpp"
#include "hypfill/errors.hpp"
#include "hypfill/io.hpp"
#include "selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <memory>
#include <string>

using namespace hypfill;
using nlohmann::json;

namespace {

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

void emit_json(const std::string& path, const json& j) { emit(path, j.dump(2) + "\n"); }

// Graph files written by `shorten` carry their surface; a bare graph needs --surface.
EmbeddedGraph load_graph(const std::string& graph_path, const std::string& surface_path) {
    json j = read_json_file(graph_path);
    json sj;
    if (!surface_path.empty())
        sj = read_json_file(surface_path);
    else if (j.contains("surface"))
        sj = j["surface"];
    else
        throw InputError("graph file has no surface; pass --surface");
    auto s = std::make_shared<const TriangulatedSurface>(surface_from_json(sj));
    return graph_from_json(j.contains("graph") ? j["graph"] : j, s);
}

json sandwich_json(const Sandwich& s) {
    return {{"source_length", s.source_length}, {"dual_length", s.dual_length}, {"ratio", s.ratio}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Filling-length bounds and experiments on hyperbolic surfaces"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    // bm-sample
    auto* bm = app.add_subcommand("bm-sample", "Sample random ideal-triangle gluings and write per-sample statistics");
    int bm_n = 0, bm_samples = 0, bm_threads = 0, bm_threshold = 6;
    std::uint64_t bm_seed = 0;
    std::string bm_out, bm_summary;
    bool bm_no_geometry = false;
    bm->add_option("--n", bm_n, "Half the number of triangles")->required()->check(CLI::PositiveNumber);
    bm->add_option("--samples", bm_samples, "Number of samples")->required()->check(CLI::PositiveNumber);
    bm->add_option("--seed", bm_seed, "Master seed")->required();
    bm->add_option("--out", bm_out, "CSV output path (default stdout)");
    bm->add_option("--summary", bm_summary, "JSON summary path (default stdout when --out is given)");
    bm->add_option("--threads", bm_threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    bm->add_option("--degree-threshold", bm_threshold, "Cusp degree threshold for the reported fraction");
    bm->add_flag("--no-geometry", bm_no_geometry, "Skip building surfaces; witness lengths use the closed form");

    // shorten
    auto* sh = app.add_subcommand("shorten", "Shorten the skeleton graph of a closed surface to a local minimum");
    std::string sh_surface, sh_out, sh_log;
    double sh_c = 18.0;
    ShortenConfig sh_cfg;
    sh->add_option("--surface", sh_surface, "Surface JSON")->required()->check(CLI::ExistingFile);
    sh->add_option("--out", sh_out, "Graph JSON output path (default stdout)");
    sh->add_option("--log", sh_log, "Iteration log CSV path");
    sh->add_option("--C", sh_c, "Constant C for the count bound C*genus");
    sh->add_option("--max-iterations", sh_cfg.max_iterations);
    sh->add_option("--angle-tol", sh_cfg.angle_tol);
    sh->add_option("--converged-tol", sh_cfg.converged_tol);

    // dual
    auto* du = app.add_subcommand("dual", "Dual curve system of a filling graph and its length sandwich");
    std::string du_graph, du_surface, du_out;
    bool du_tighten = false;
    int du_depth = 4;
    du->add_option("--graph", du_graph, "Graph JSON (as written by shorten)")->required()->check(CLI::ExistingFile);
    du->add_option("--surface", du_surface, "Surface JSON, when the graph file does not embed one")->check(CLI::ExistingFile);
    du->add_option("--out", du_out, "JSON output path (default stdout)");
    du->add_flag("--tighten", du_tighten, "Certify and straighten the curves to geodesics");
    du->add_option("--depth", du_depth, "Oracle depth used with --tighten")->check(CLI::PositiveNumber);

    // certify
    auto* ce = app.add_subcommand("certify", "Minimal-position certificate for the dual curves");
    std::string ce_graph, ce_tri, ce_surface, ce_out;
    int ce_depth = 4;
    auto* ce_g = ce->add_option("--graph", ce_graph, "Graph JSON")->check(CLI::ExistingFile);
    auto* ce_t = ce->add_option("--triangulation", ce_tri, "Triangulation JSON; its skeleton is certified")->check(CLI::ExistingFile);
    ce_g->excludes(ce_t);
    ce->add_option("--surface", ce_surface, "Surface JSON for --graph")->check(CLI::ExistingFile);
    ce->add_option("--depth", ce_depth, "Oracle depth, 0 to skip the oracle")->check(CLI::NonNegativeNumber);
    ce->add_option("--out", ce_out, "JSON output path (default stdout)");

    // bounds
    auto* bo = app.add_subcommand("bounds", "Lower and upper bounds for the filling length");
    int bo_g = 0;
    std::vector<double> bo_lengths;
    std::string bo_out;
    bo->add_option("--g", bo_g, "Genus")->required();
    bo->add_option("--lengths", bo_lengths, "Comma-separated lengths of closed geodesics shorter than 1")->delimiter(',');
    bo->add_option("--out", bo_out, "JSON output path (default stdout)");

    // selftest
    auto* st = app.add_subcommand("selftest", "Run the built-in invariant checks");
    bool st_quick = false;
    st->add_flag("--quick", st_quick, "Skip the shortening run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (*ce && ce_graph.empty() && ce_tri.empty()) {
        std::cerr << "certify: one of --graph or --triangulation is required\n" << ce->help();
        return 2;
    }

    try {
        if (*bm) {
            StatisticsOptions opt;
            opt.threads = bm_threads;
            opt.degree_threshold = bm_threshold;
            opt.geometry = !bm_no_geometry;
            auto s = run_statistics(bm_n, bm_samples, bm_seed, opt);
            emit(bm_out, statistics_to_csv(s));
            if (!bm_summary.empty())
                emit_json(bm_summary, statistics_summary(s));
            else if (!bm_out.empty())
                emit_json("", statistics_summary(s));
        } else if (*sh) {
            auto s = std::make_shared<const TriangulatedSurface>(surface_from_json(read_json_file(sh_surface)));
            auto r = shorten_to_local_min(skeleton_graph(s), sh_cfg);
            auto c = tri_counts(r.graph);
            double bound = sh_c * s->genus();
            json out{{"surface", surface_to_json(*s)},
                     {"graph", graph_to_json(r.graph)},
                     {"converged", r.converged},
                     {"iterations", r.iterations},
                     {"residual", r.residual},
                     {"stop_reason", r.stop_reason},
                     {"length", r.graph.total_length()},
                     {"faces", r.graph.faces().size()},
                     {"counts", {{"v_tri", c.v_tri}, {"e_tri", c.e_tri}, {"f_tri", c.f_tri}}},
                     {"C", sh_c},
                     {"counts_within_C", c.v_tri <= bound && c.e_tri <= bound && c.f_tri <= bound}};
            emit_json(sh_out, out);
            if (!sh_log.empty()) write_text_file(sh_log, log_to_csv(r.log));
        } else if (*du) {
            auto g = load_graph(du_graph, du_surface);
            auto d = dual_graph(g);
            auto c = decompose_curves(d);
            json out = curves_to_json(c);
            out["sandwich"] = sandwich_json(length_sandwich(d, c));
            if (du_tighten) {
                auto cert = certify_minimal_position(d, SourceKind::Graph, du_depth);
                out["certificate"] = certificate_to_json(cert);
                if (cert.status == CertStatus::Certified) {
                    auto t = tighten_dual_to_geodesics(c, cert);
                    json lens = json::array();
                    for (const auto& x : t.curves) lens.push_back({{"length", x.length}, {"translation_length", x.translation_length}});
                    out["geodesics"] = {{"curves", lens}, {"total_length", t.total_length}};
                }
            }
            emit_json(du_out, out);
        } else if (*ce) {
            Certificate cert;
            if (!ce_graph.empty()) {
                cert = certify_minimal_position(dual_graph(load_graph(ce_graph, ce_surface)), SourceKind::Graph, ce_depth);
            } else {
                json tj = read_json_file(ce_tri);
                CombinatorialTriangulation tri;
                std::vector<TriangleShape> shapes;
                if (tj.value("kind", "") == "closed" && !tj.contains("angles")) {
                    // combinatorics only
                    std::vector<std::array<int, 2>> pairs;
                    for (const auto& p : tj.at("gluing")) pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
                    tri = CombinatorialTriangulation::from_pairs(tj.at("triangles").get<int>(), pairs);
                } else {
                    triangulation_from_json(tj, tri, shapes);
                }
                if (shapes.empty() || shapes.front().kind == TriangleShape::Kind::Ideal) {
                    cert = certify_triangulation(tri);
                } else {
                    auto s = std::make_shared<const TriangulatedSurface>(build_surface(tri, shapes));
                    cert = certify_minimal_position(dual_graph(skeleton_graph(s)), SourceKind::Triangulation, ce_depth);
                }
            }
            emit_json(ce_out, certificate_to_json(cert));
        } else if (*bo) {
            emit_json(bo_out, bound_report_to_json(genus_bounds({bo_g, bo_lengths})));
        } else if (*st) {
            return run_selftest(std::cout, !st_quick) ? 0 : 1;
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
