#include "selftest.hpp"

#include "hypfill/bounds.hpp"
#include "hypfill/brooks_makover.hpp"
#include "hypfill/dual.hpp"
#include "hypfill/errors.hpp"
#include "hypfill/generate.hpp"
#include "hypfill/hyperbolic.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>

using namespace hypfill;

namespace {

HTriangle random_triangle(std::mt19937_64& rng) {
    auto pt = [&] { return HPoint(std::polar(std::tanh(uniform_unit(rng) * 1.25), 2 * kPi * uniform_unit(rng))); };
    for (;;) {
        HTriangle t{pt(), pt(), pt()};
        try {
            require_nondegenerate(t);
        } catch (const Error&) {
            continue;
        }
        auto a = triangle_angles(t);
        if (a[0] > 1e-3 && a[1] > 1e-3 && a[2] > 1e-3) return t;
    }
}

bool fermat_angles() {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        auto t = random_triangle(rng);
        auto f = fermat_point(t);
        if (f.kind != FermatKind::Interior) continue;
        for (int k = 0; k < 3; ++k)
            if (std::abs(angle(f.point, t[k], t[(k + 1) % 3]) - 2 * kPi / 3) > 1e-9) return false;
    }
    return true;
}

bool collar_constants() {
    if (std::abs(collar_half_width(1.0) - 1.06) > 0.01 || std::abs(collar_half_width(0.5) - 1.73) > 0.01) return false;
    for (int i = 0; i <= 1000; ++i) f_bounds_check(1e-6 * std::pow(1e7, i / 1000.0));
    return true;
}

bool case_table() {
    const Rational expect[] = {Rational(-2), Rational(-5, 3), Rational(-4, 3), Rational(-4, 3), Rational(-1), Rational(-2, 3)};
    auto t = gauss_bonnet_case_areas();
    for (int i = 0; i < 6; ++i)
        if (!(t[i].area == expect[i])) return false;
    for (const auto& s : euler_degree_scenarios())
        if (!(s.bound < Rational(1))) return false;
    return true;
}

bool exact_minimum() {
    return exact_min_threshold(10000) == 70 && std::abs(exact_min(1e6) / 1e6 - 8 * std::acosh(std::sqrt(2.0))) < 1e-3 &&
           std::abs(exact_min(2) - 9.9773153463517) < 1e-9;
}

bool inscribed_anchors() {
    for (int n = 1; n <= 64; n *= 2) {
        auto s = build_cusped_surface(sample_pattern(n, n));
        auto c = inscribed_filling_geodesics(s);
        if (!c.fills || std::abs(c.arc_length - 2 * std::asinh(0.5)) > 1e-9) return false;
        auto b = filling_length_bounds(s, c);
        if (std::abs(b.witness - 5.7745419007 * n) > 1e-6 * n) return false;
    }
    return true;
}

bool small_enumeration() {
    auto exact = enumerate_patterns(1);
    StatisticsOptions opt;
    opt.geometry = false;
    auto s = run_statistics(1, 20000, 3, opt);
    long torus = 0;
    for (const auto& r : s.rows) torus += r.genus == 1;
    double p = exact[{1, 1}] / 15.0, mean = p * s.rows.size(), sd = std::sqrt(s.rows.size() * p * (1 - p));
    return std::abs(torus - mean) <= 3 * sd;
}

bool shortening_pipeline() {
    auto tri = regular_triangulation(2, 18, 1);
    auto s = std::make_shared<const TriangulatedSurface>(build_surface(tri, equilateral_shapes(tri, 18)));
    auto G = skeleton_graph(s);
    auto r = shorten_to_local_min(G);
    if (!r.converged || !(tri_counts(r.graph) == tri_counts(G))) return false;
    for (std::size_t i = 1; i < r.log.size(); ++i)
        if (!(r.log[i].length < r.log[i - 1].length)) return false;
    auto d = dual_graph(r.graph);
    auto c = decompose_curves(d);
    length_sandwich(d, c);
    auto cert = certify_minimal_position(d, SourceKind::Graph, 4);
    if (cert.status != CertStatus::Certified) return false;
    auto t = tighten_dual_to_geodesics(c, cert);
    return t.total_length <= c.total_length && t.total_length >= 2 * kPi;
}

} // namespace

bool run_selftest(std::ostream& out, bool with_shortening) {
    std::vector<std::pair<std::string, std::function<bool()>>> checks{
        {"fermat star angles", fermat_angles},
        {"collar constants", collar_constants},
        {"gauss-bonnet and euler tables", case_table},
        {"exact minimum", exact_minimum},
        {"inscribed system anchors", inscribed_anchors},
        {"N=1 sampling vs enumeration", small_enumeration},
    };
    if (with_shortening) checks.emplace_back("shorten, dual, certify, tighten (genus 2)", shortening_pipeline);
    bool all = true;
    for (const auto& [name, f] : checks) {
        bool ok = false;
        std::string why;
        try {
            ok = f();
        } catch (const std::exception& e) {
            why = std::string(" (") + e.what() + ")";
        }
        out << (ok ? "PASS " : "FAIL ") << name << why << "\n";
        all = all && ok;
    }
    return all;
}
