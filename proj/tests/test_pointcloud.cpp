#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "xsplane/pointcloud.hpp"

using namespace xsplane;

namespace {

const GeneratorSpec kXs{GeneratorSpec::Kind::xorshift, XsParams::preset(1)};
const GeneratorSpec kControl{GeneratorSpec::Kind::control, {}};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::filesystem::path scratch_dir(const char* leaf) {
    const auto dir = std::filesystem::temp_directory_path() / "xsplane_tests" / leaf;
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_SUITE_BEGIN("pointcloud");

TEST_CASE("unmagnified extraction keeps every triple") {
    const ExtractResult res = extract_magnified(kXs, 1, {0, Axis::x}, 10000);
    CHECK(res.points.size() == 10000);
    CHECK(res.triples_consumed == 10000);  // 3 * 10^4 outputs
    for (const Point3& pt : res.points) {
        CHECK(pt.x >= 0);
        CHECK(pt.y >= 0);
        CHECK(pt.z >= 0);
        CHECK(pt.x <= 1);
        CHECK(pt.y <= 1);
        CHECK(pt.z <= 1);
    }
}

TEST_CASE("keep rule is exact on the magnified axis") {
    // with k >= 11 the kept word is at most 2^53, so the magnified
    // double is exact and the word can be reconstructed from the CSV
    const int k = 12;
    const ExtractResult res = extract_magnified(kControl, 9, {k, Axis::x}, 1000);
    for (const Point3& pt : res.points) {
        CHECK(pt.x <= 1.0);
        const double word = std::ldexp(pt.x, 64 - k);
        CHECK(word == std::floor(word));
        CHECK(word <= std::ldexp(1.0, 64 - k));
    }
}

TEST_CASE("acceptance rate is unbiased for both generators") {
    const int k = 8;
    const std::uint64_t target = 4000;
    for (const GeneratorSpec& spec : {kControl, kXs}) {
        const ExtractResult res = extract_magnified(spec, 20260810, {k, Axis::x}, target);
        // consumed ~ NegativeBinomial(target, 2^-k):
        // mean target*2^k, sd ~ sqrt(target)*2^k
        const double expected = static_cast<double>(target) * std::ldexp(1.0, k);
        const double sigma = std::sqrt(static_cast<double>(target)) * std::ldexp(1.0, k);
        CHECK(std::fabs(static_cast<double>(res.triples_consumed) - expected) <=
              4 * sigma);
    }
}

TEST_CASE("other axes can be magnified") {
    const ExtractResult res = extract_magnified(kControl, 3, {10, Axis::y}, 200);
    for (const Point3& pt : res.points) CHECK(pt.y <= 1.0);
}

TEST_CASE("extraction is deterministic") {
    const ExtractResult a = extract_magnified(kXs, 77, {8, Axis::x}, 500);
    const ExtractResult b = extract_magnified(kXs, 77, {8, Axis::x}, 500);
    CHECK(a.triples_consumed == b.triples_consumed);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].y == b.points[i].y);
        CHECK(a.points[i].z == b.points[i].z);
    }
}

TEST_CASE("extraction argument errors") {
    CHECK_THROWS_AS(extract_magnified(kXs, 1, {64, Axis::x}, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(extract_magnified(kXs, 1, {0, Axis::x}, 0),
                    std::invalid_argument);
}

TEST_CASE("plane mesh values and wrap splitting") {
    const int grid = 65;
    const PlaneMesh mesh = plane_mesh(23, +1, +1, 23, grid);
    CHECK(mesh.name() == "pp");

    // z(0, 0) = 0 and the far corner wraps to 2^-23
    REQUIRE_FALSE(mesh.strips.empty());
    const Point3& origin = mesh.strips.front().vertices.front();
    CHECK(origin.x == 0.0);
    CHECK(origin.y == 0.0);
    CHECK(origin.z == 0.0);

    bool found_far_corner = false;
    for (const MeshStrip& strip : mesh.strips)
        for (const Point3& pt : strip.vertices)
            if (pt.x == 1.0 && pt.y == 0.0) {
                found_far_corner = true;
                CHECK(pt.z == doctest::Approx(std::ldexp(1.0, -23)).epsilon(1e-12));
            }
    CHECK(found_far_corner);

    std::size_t vertices = 0;
    for (const MeshStrip& strip : mesh.strips) {
        vertices += strip.vertices.size();
        for (std::size_t i = 1; i < strip.vertices.size(); ++i)
            CHECK(std::fabs(strip.vertices[i].z - strip.vertices[i - 1].z) <= 0.5);
        for (const Point3& pt : strip.vertices) {
            // recompute the defining equation from the emitted coords
            const double x = std::ldexp(pt.x, -23);
            const double value = (1.0 + std::ldexp(1.0, 23)) * x + pt.y;
            const double expect = value - std::floor(value);
            const double diff = std::fabs(pt.z - expect);
            CHECK(std::min(diff, std::fabs(1.0 - diff)) <= 1e-12);
        }
    }
    CHECK(vertices == static_cast<std::size_t>(grid) * grid);

    // the wrapped plane has two components over most of the x range
    CHECK(mesh.strips.size() > static_cast<std::size_t>(grid));
    CHECK(mesh.strips.size() <= static_cast<std::size_t>(2 * grid));
}

TEST_CASE("mesh argument errors") {
    CHECK_THROWS_AS(plane_mesh(0, +1, +1, 23, 8), std::invalid_argument);
    CHECK_THROWS_AS(plane_mesh(23, 0, +1, 23, 8), std::invalid_argument);
    CHECK_THROWS_AS(plane_mesh(23, +1, +1, 23, 1), std::invalid_argument);
}

TEST_CASE("artifact emission") {
    const auto dir = scratch_dir("emit");
    const std::vector<PlaneMesh> meshes = {
        plane_mesh(23, +1, +1, 23, 9), plane_mesh(23, +1, -1, 23, 9),
        plane_mesh(23, -1, +1, 23, 9), plane_mesh(23, -1, -1, 23, 9)};
    const ExtractResult pts = extract_magnified(kXs, 5, {8, Axis::x}, 200);

    const EmitResult emitted = emit_artifacts(pts.points, meshes, dir, true);
    CHECK(emitted.files.size() == 6);  // scatter + 4 meshes + script

    const std::string scatter = slurp(dir / "points.csv");
    CHECK(scatter.rfind("x,y,z\n", 0) == 0);
    CHECK(scatter.find("\r") == std::string::npos);

    // 17 significant digits round-trip doubles exactly
    std::istringstream lines(scatter.substr(6));
    std::string line;
    std::size_t row = 0;
    while (std::getline(lines, line)) {
        double x = 0, y = 0, z = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &z) == 3);
        CHECK(x == pts.points[row].x);
        CHECK(y == pts.points[row].y);
        CHECK(z == pts.points[row].z);
        ++row;
    }
    CHECK(row == pts.points.size());

    // deterministic bytes on re-emission
    const auto dir2 = scratch_dir("emit2");
    emit_artifacts(pts.points, meshes, dir2, true);
    CHECK(slurp(dir / "points.csv") == slurp(dir2 / "points.csv"));
    CHECK(slurp(dir / "plane_pp.csv") == slurp(dir2 / "plane_pp.csv"));
    CHECK(slurp(dir / "plot.gp") == slurp(dir2 / "plot.gp"));

    // empty point list still yields a valid header-only CSV
    const auto dir3 = scratch_dir("emit3");
    emit_artifacts({}, {}, dir3, false);
    CHECK(slurp(dir3 / "points.csv") == "x,y,z\n");
}

TEST_CASE("emission failures carry the path") {
    const auto dir = scratch_dir("emit_fail");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "blocker").put('x');
    CHECK_THROWS_AS(emit_artifacts({}, {}, dir / "blocker" / "sub", false),
                    std::exception);
}

TEST_SUITE_END();
