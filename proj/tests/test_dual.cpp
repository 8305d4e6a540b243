#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "hypfill/dual.hpp"
#include "hypfill/errors.hpp"

#include <algorithm>
#include <set>

using namespace hypfill;

namespace {

const EmbeddedGraph& converged2() {
    const auto& r = fixtures::converged(2);
    REQUIRE(r.converged);
    return r.graph;
}

EmbeddedGraph skeleton_of(const LabelledTriangulation& lt) { return skeleton_graph(fixtures::packed(lt)); }

std::set<std::set<int>> partition(const CurveSystem& c) {
    std::set<std::set<int>> out;
    for (const auto& x : c.curves) out.insert(std::set<int>(x.edges.begin(), x.edges.end()));
    return out;
}

void check_partition(const DualGraph& d, const CurveSystem& c) {
    std::vector<int> seen(d.edges.size(), 0);
    double total = 0.0;
    for (const auto& x : c.curves) {
        for (int e : x.edges) ++seen[e];
        total += x.length;
    }
    for (int s : seen) CHECK(s == 1);
    CHECK(c.total_length == doctest::Approx(total).epsilon(1e-12));
}

} // namespace

TEST_CASE("dual graph counts") {
    SUBCASE("converged trivalent graph") {
        const auto& G = converged2();
        auto d = dual_graph(G);
        CHECK(static_cast<int>(d.ends.size()) == G.edge_count());
        std::size_t corners = 0;
        for (const auto& f : G.faces()) corners += f.size();
        CHECK(d.edges.size() == corners);
        CHECK(d.metric_fallbacks == 0);
        for (const auto& de : d.edges) CHECK(de.length > 0);
    }
    SUBCASE("triangulation skeleton") {
        auto G = skeleton_of(fixtures::degree8_triangulation());
        auto d = dual_graph(G);
        CHECK(d.edges.size() == 3 * G.faces().size());
        // pairing: opposite ends sit in different faces and at different endpoints
        for (const auto& o : d.opposite)
            for (int sl = 0; sl < 4; ++sl) CHECK(o[sl] == 3 - sl);
    }
}

TEST_CASE("decompose curves") {
    const auto& G = converged2();
    auto d = dual_graph(G);
    auto c = decompose_curves(d);
    check_partition(d, c);
    auto r = decompose_curves(d, true);
    check_partition(d, r);
    CHECK(partition(c) == partition(r));
    // traversal closes up: the last step leads back to the first edge
    for (const auto& x : c.curves) CHECK(x.edges.size() == x.steps.size());
    // deterministic
    auto again = decompose_curves(d);
    REQUIRE(again.curves.size() == c.curves.size());
    for (std::size_t i = 0; i < c.curves.size(); ++i) CHECK(again.curves[i].edges == c.curves[i].edges);
}

TEST_CASE("gauss-bonnet case table") {
    auto t = gauss_bonnet_case_areas();
    REQUIRE(t.size() == 6);
    const std::vector<std::pair<std::string, Rational>> expect{
        {"disk", Rational(-2)},        {"monogon-1", Rational(-5, 3)}, {"monogon-2", Rational(-4, 3)},
        {"bigon-1", Rational(-4, 3)}, {"bigon-2", Rational(-1)},      {"bigon-3", Rational(-2, 3)}};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(t[i].name == expect[i].first);
        CHECK(t[i].area == expect[i].second);
        CHECK(t[i].area < Rational(0));
    }
    for (int n = 1; n <= 50; ++n)
        for (int m = 1; m <= 50; ++m) CHECK(gauss_bonnet_area(4, n, m) == Rational(-2, 3));
}

TEST_CASE("euler degree scenarios") {
    auto s = euler_degree_scenarios();
    REQUIRE(s.size() == 6);
    const std::vector<Rational> expect{Rational(0), Rational(1, 6), Rational(1, 3),
                                       Rational(1, 3), Rational(1, 2), Rational(2, 3)};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(s[i].bound == expect[i]);
        CHECK(s[i].bound < Rational(1));
    }
    CHECK(euler_degree_bound(10, std::vector<int>(8, 4)) == Rational(0));
}

TEST_CASE("euler degree check on triangulated disks") {
    // hexagon fan around vertex 0
    std::vector<std::array<int, 3>> fan;
    for (int i = 0; i < 6; ++i) fan.push_back({0, 1 + i, 1 + (i + 1) % 6});
    CHECK(euler_degree_check(fan) == Rational(1));
    // a strip of four triangles
    std::vector<std::array<int, 3>> strip{{0, 1, 2}, {1, 3, 2}, {2, 3, 4}, {3, 5, 4}};
    CHECK(euler_degree_check(strip) == Rational(1));
    CHECK(euler_degree_check({{0, 1, 2}}) == Rational(1));
    // two triangles sharing only a vertex
    CHECK_THROWS_AS(euler_degree_check({{0, 1, 2}, {0, 3, 4}}), InputError);
    // an annulus
    std::vector<std::array<int, 3>> ring;
    for (int i = 0; i < 3; ++i) {
        int a = i, b = (i + 1) % 3;
        ring.push_back({a, b, 3 + a});
        ring.push_back({b, 3 + b, 3 + a});
    }
    CHECK_THROWS_AS(euler_degree_check(ring), InputError);
    CHECK_THROWS_AS(euler_degree_check({}), InputError);
}

TEST_CASE("length sandwich") {
    const auto& G = converged2();
    auto d = dual_graph(G);
    auto c = decompose_curves(d);
    auto s = length_sandwich(d, c);
    CHECK(s.dual_length - s.source_length >= 1e-9);
    CHECK(2 * s.source_length - s.dual_length >= 1e-9);
    CHECK(s.ratio > 1);
    CHECK(s.ratio < 2);
    // regression
    CHECK(s.source_length == doctest::Approx(17.508520758613).epsilon(1e-9));
    CHECK(s.dual_length == doctest::Approx(30.987252762).epsilon(1e-9));
    // corner triangles at each vertex
    std::vector<std::vector<HPoint>> corners(G.vertex_count());
    for (const auto& de : d.edges) corners[de.vertex].push_back(de.points[0]);
    for (int w = 0; w < G.vertex_count(); ++w) {
        REQUIRE(corners[w].size() == 3);
        HTriangle t{corners[w][0], corners[w][1], corners[w][2]};
        double perim = dist(t.a, t.b) + dist(t.b, t.c) + dist(t.c, t.a);
        CHECK(perim < 2 * star_sum(t, G.vertex(w).z));
    }
}

TEST_CASE("certificates") {
    SUBCASE("converged graph") {
        auto d = dual_graph(converged2());
        auto c = certify_minimal_position(d, SourceKind::Graph, 4);
        CHECK(c.status == CertStatus::Certified);
        CHECK(c.grounds == "trivalent-2pi/3");
        CHECK(c.oracle_run);
        CHECK_FALSE(c.witness.has_value());
        CHECK_FALSE(c.oracle_inconclusive);
        auto j = certificate_to_json(c);
        CHECK(j["status"] == "certified-minimal-position");
        CHECK_FALSE(j.contains("witness"));
    }
    SUBCASE("triangulation with every degree 8") {
        auto lt = fixtures::degree8_triangulation();
        auto d = dual_graph(skeleton_of(lt));
        auto c = certify_minimal_position(d, SourceKind::Triangulation, 4);
        CHECK(c.status == CertStatus::Certified);
        CHECK(c.grounds == "min-degree-6");
        CHECK_FALSE(c.witness.has_value());
        CHECK(certify_triangulation(lt.tri).status == CertStatus::Certified);
    }
    SUBCASE("degree 5 counterexample") {
        auto lt = fixtures::degree5_triangulation();
        CHECK(certify_triangulation(lt.tri).status == CertStatus::NotApplicable);
        auto d = dual_graph(skeleton_of(lt));
        auto c = certify_minimal_position(d, SourceKind::Triangulation, 4);
        CHECK(c.status == CertStatus::CounterexampleFound);
        REQUIRE(c.witness.has_value());
        CHECK(certificate_to_json(c)["status"] == "counterexample-found");
        CHECK(certificate_to_json(c).contains("witness"));
    }
    SUBCASE("degree 3 vertex") {
        auto d = dual_graph(skeleton_of(fixtures::degree3_triangulation()));
        auto c = certify_minimal_position(d, SourceKind::Triangulation, 4);
        CHECK(c.status == CertStatus::CounterexampleFound);
        CHECK(c.witness.has_value());
    }
    SUBCASE("unshortened skeleton is not covered") {
        auto d = dual_graph(skeleton_graph(fixtures::equilateral(2, 18)));
        auto c = certify_minimal_position(d, SourceKind::Graph, 0);
        CHECK(c.status == CertStatus::NotApplicable);
        CHECK_FALSE(c.oracle_run);
    }
}

TEST_CASE("oracle") {
    auto d = dual_graph(skeleton_of(fixtures::degree5_triangulation()));
    auto c = decompose_curves(d);
    auto a = oracle_search_monogon_bigon(d, c, 4);
    auto b = oracle_search_monogon_bigon(d, c, 4);
    REQUIRE(a.witness.has_value());
    REQUIRE(b.witness.has_value());
    CHECK(a.witness->curve_a == b.witness->curve_a);
    CHECK(a.witness->index_a == b.witness->index_a);
    CHECK(a.witness->dual_vertex == b.witness->dual_vertex);
    CHECK_THROWS_AS(oracle_search_monogon_bigon(d, c, 0), PreconditionError);

    auto g = dual_graph(converged2());
    for (int depth = 1; depth <= 4; ++depth) CHECK_FALSE(oracle_search_monogon_bigon(g, decompose_curves(g), depth).witness);
}

TEST_CASE("tightening") {
    const auto& G = converged2();
    auto d = dual_graph(G);
    auto c = decompose_curves(d);
    auto cert = certify_minimal_position(d, SourceKind::Graph, 4);
    auto t = tighten_dual_to_geodesics(c, cert);
    REQUIRE(t.curves.size() == c.curves.size());
    CHECK(t.total_length <= c.total_length);
    CHECK(c.total_length <= 2 * G.total_length());
    CHECK(t.total_length >= 2 * kPi * (2 - 1));
    for (std::size_t i = 0; i < t.curves.size(); ++i) {
        const auto& x = t.curves[i];
        CHECK(x.max_bend < 1e-7);
        for (std::size_t k = 1; k < x.lengths.size(); ++k) CHECK(x.lengths[k] <= x.lengths[k - 1] + 1e-12);
        CHECK(x.length == doctest::Approx(x.translation_length).epsilon(1e-9));
        CHECK(x.length <= c.curves[i].length);
    }

    // a geodesic system is a fixed point
    CurveSystem again = c;
    for (std::size_t i = 0; i < again.curves.size(); ++i) again.curves[i].points = t.curves[i].points;
    auto t2 = tighten_dual_to_geodesics(again, cert);
    for (std::size_t i = 0; i < t2.curves.size(); ++i) {
        CHECK(t2.curves[i].lengths.size() == 1);
        CHECK(t2.curves[i].length == t.curves[i].length);
    }

    Certificate none;
    CHECK_THROWS_AS(tighten_dual_to_geodesics(c, none), PreconditionError);
}

TEST_CASE("curves json") {
    auto d = dual_graph(converged2());
    auto c = decompose_curves(d);
    auto j = curves_to_json(c);
    REQUIRE(j["curves"].size() == c.curves.size());
    CHECK(j["curves"][0]["darts"].size() == c.curves[0].edges.size());
    CHECK(j["total_length"].get<double>() == c.total_length);
}
