#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "hypfill/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace hypfill;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::path(HYPFILL_TEST_DIR) / "cli_work";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs the CLI with stdout to `out` (inside the work dir); returns the exit status.
int cli(const std::string& args, const std::string& out = "stdout.txt") {
    fs::create_directories(kDir);
    std::string cmd = std::string("\"") + HYPFILL_CLI + "\" " + args + " > \"" + (kDir / out).string() + "\" 2> \"" +
                      (kDir / "stderr.txt").string() + "\"";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string path(const std::string& name) { return "\"" + (kDir / name).string() + "\""; }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

void write_json(const std::string& name, const json& j) { write_text_file((kDir / name).string(), j.dump()); }

} // namespace

TEST_CASE("bounds golden file") {
    REQUIRE(cli("bounds --g 2", "bounds.json") == 0);
    CHECK(slurp(kDir / "bounds.json") == slurp(fs::path(HYPFILL_GOLDEN) / "bounds_g2.json"));
    auto j = json::parse(slurp(kDir / "bounds.json"));
    CHECK(j["lower"].get<double>() == doctest::Approx(3.14159265358979323846).epsilon(1e-15));
    CHECK(j["upper"].get<double>() == 600.0);
    CHECK(std::abs(j["exact_min"].get<double>() - 9.97731534635172645391) < 1e-12);
    CHECK(j["lower"].get<double>() < j["exact_min"].get<double>());
    CHECK(j["large_g_applicable"] == false);

    REQUIRE(cli("bounds --g 2 --lengths 0.5,0.25", "bounds2.json") == 0);
    auto k = json::parse(slurp(kDir / "bounds2.json"));
    CHECK(std::abs(k["R"].get<double>() - 2.07944154167983592825) < 1e-14);
}

TEST_CASE("exit codes") {
    CHECK(cli("bounds --g 1") == 2);
    CHECK(cli("bounds --g 2 --lengths 1.5") == 2);
    CHECK(cli("bounds --g 2 --frobnicate") == 2);
    CHECK(slurp(kDir / "stderr.txt").find("Usage") != std::string::npos);
    CHECK(cli("") == 2);
    CHECK(cli("bm-sample --n 1 --samples 10") == 2);
    CHECK(cli("shorten --surface /nonexistent/file.json") == 2);
    write_text_file((kDir / "broken.json").string(), "{\"kind\": ");
    CHECK(cli("certify --triangulation " + path("broken.json")) == 2);
    CHECK(cli("selftest --quick") == 0);
    CHECK(cli("--help") == 0);
}

TEST_CASE("bm-sample determinism and format") {
    REQUIRE(cli("bm-sample --n 1 --samples 100 --seed 7 --out " + path("a.csv") + " --summary " + path("a.json")) == 0);
    REQUIRE(cli("bm-sample --n 1 --samples 100 --seed 7 --out " + path("b.csv") + " --summary " + path("b.json")) == 0);
    REQUIRE(cli("bm-sample --n 1 --samples 100 --seed 7 --threads 3 --out " + path("c.csv")) == 0);
    auto a = slurp(kDir / "a.csv");
    CHECK(a == slurp(kDir / "b.csv"));
    CHECK(a == slurp(kDir / "c.csv"));
    CHECK(slurp(kDir / "a.json") == slurp(kDir / "b.json"));
    REQUIRE(cli("bm-sample --n 1 --samples 100 --seed 8 --out " + path("d.csv")) == 0);
    CHECK(a != slurp(kDir / "d.csv"));

    auto rows = parse_csv(a);
    REQUIRE(rows.size() == 101);
    CHECK(rows[0] == std::vector<std::string>{"seed", "sample_idx", "N", "cusps", "genus", "min_cusp_degree",
                                              "witness_length", "lower_bound", "upper_bound"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 9);
        CHECK(std::stoi(rows[i][1]) == static_cast<int>(i - 1));
        for (const auto& c : rows[i]) CHECK_NOTHROW(std::stod(c));
        // %.17g round-trips
        double w = std::stod(rows[i][6]);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", w);
        CHECK(rows[i][6] == buf);
    }
    auto s = json::parse(slurp(kDir / "a.json"));
    CHECK(s["samples"] == 100);
    CHECK(json::parse(s.dump()) == s);
}

TEST_CASE("shorten, dual and certify") {
    auto surf = fixtures::equilateral(2, 18);
    write_json("g2.json", surface_to_json(*surf));
    REQUIRE(cli("shorten --surface " + path("g2.json") + " --out " + path("g2_graph.json") + " --log " + path("g2_log.csv")) == 0);
    auto g = json::parse(slurp(kDir / "g2_graph.json"));
    CHECK(g["converged"] == true);
    CHECK(g["counts_within_C"] == true);
    CHECK(g["C"] == 18.0);
    CHECK(g["length"].get<double>() == doctest::Approx(17.508520758613).epsilon(1e-9));
    auto log = parse_csv(slurp(kDir / "g2_log.csv"));
    REQUIRE(log.size() >= 2);
    CHECK(log[0] == std::vector<std::string>{"iteration", "length", "violations", "action"});

    // the graph file reloads against its embedded surface
    auto reloaded = graph_from_json(g["graph"], std::make_shared<const TriangulatedSurface>(surface_from_json(g["surface"])));
    CHECK(reloaded.total_length() == doctest::Approx(g["length"].get<double>()).epsilon(1e-12));

    REQUIRE(cli("dual --graph " + path("g2_graph.json") + " --tighten", "dual.json") == 0);
    auto d = json::parse(slurp(kDir / "dual.json"));
    double ratio = d["sandwich"]["ratio"];
    CHECK(ratio > 1);
    CHECK(ratio < 2);
    CHECK(d["certificate"]["status"] == "certified-minimal-position");
    CHECK(d["geodesics"]["total_length"].get<double>() <= d["total_length"].get<double>());

    REQUIRE(cli("certify --graph " + path("g2_graph.json"), "cert.json") == 0);
    CHECK(json::parse(slurp(kDir / "cert.json"))["status"] == "certified-minimal-position");

    // a bare graph needs its surface
    write_json("bare.json", g["graph"]);
    CHECK(cli("certify --graph " + path("bare.json")) == 2);
    REQUIRE(cli("certify --graph " + path("bare.json") + " --surface " + path("g2.json") + " --depth 0", "bare_cert.json") == 0);
    CHECK(json::parse(slurp(kDir / "bare_cert.json"))["status"] == "certified-minimal-position");

    CHECK(cli("certify --graph " + path("g2_graph.json") + " --triangulation " + path("g2.json")) == 2);
    CHECK(cli("certify") == 2);
}

TEST_CASE("certify triangulations") {
    auto lt5 = fixtures::degree5_triangulation();
    auto s5 = fixtures::packed(lt5);
    write_json("deg5.json", triangulation_to_json(lt5.tri, s5->shapes()));
    REQUIRE(cli("certify --triangulation " + path("deg5.json"), "deg5_cert.json") == 0);
    auto c5 = json::parse(slurp(kDir / "deg5_cert.json"));
    CHECK(c5["status"] == "counterexample-found");
    CHECK(c5.contains("witness"));

    auto lt8 = fixtures::degree8_triangulation();
    auto j8 = triangulation_to_json(lt8.tri, fixtures::packed(lt8)->shapes());
    j8.erase("angles");
    write_json("deg8.json", j8);
    REQUIRE(cli("certify --triangulation " + path("deg8.json"), "deg8_cert.json") == 0);
    auto c8 = json::parse(slurp(kDir / "deg8_cert.json"));
    CHECK(c8["status"] == "certified-minimal-position");
    CHECK(c8["grounds"] == "min-degree-6");
}
