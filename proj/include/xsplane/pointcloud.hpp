#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "xsplane/generators.hpp"

namespace xsplane {

// Unit-cube point as emitted to files. Coordinates are produced from
// 64-bit words by dividing by 2^64 and rounding to nearest; all
// geometric decisions are made on the words, never on these doubles.
struct Point3 {
    double x = 0, y = 0, z = 0;
};

enum class Axis { x, y, z };

// Magnification filter: keep a triple when mu * coord <= 1 for the
// chosen axis (mu = 2^k) and plot (mu*coord, others unchanged).
struct MagnifySpec {
    int k = 0;  // mu = 2^k, k in [0, 63]
    Axis axis = Axis::x;
};

struct ExtractResult {
    std::vector<Point3> points;
    std::uint64_t triples_consumed = 0;
};

// Streams non-overlapping output triples from the generator and keeps
// the ones passing the magnification filter (inclusive comparison, so a
// magnified coordinate of exactly 1 is kept) until `target` points are
// collected. Gives up past 2^40 consumed triples.
ExtractResult extract_magnified(const GeneratorSpec& spec, std::uint64_t seed,
                                const MagnifySpec& magnify,
                                std::uint64_t target);

// Polyline strip of one connected component of a wrapped plane.
struct MeshStrip {
    std::vector<Point3> vertices;
};

struct PlaneMesh {
    int sign_x = +1;  // sign on (1+2^a)x
    int sign_y = +1;  // sign on y
    std::vector<MeshStrip> strips;
    std::string name() const;  // "pp", "pm", "mp", "mm"
};

// Samples z = sign_x*(1+2^a)*x + sign_y*y mod 1 on a grid over
// x in [0, 2^-xmax_log2], y in [0, 1], one polyline per grid column,
// split wherever the wrap jumps by more than 0.5. Emitted x coordinates
// are premultiplied by 2^xmax_log2 so they span [0, 1] like the
// magnified scatter plots.
PlaneMesh plane_mesh(int a, int sign_x, int sign_y, int xmax_log2, int grid);

struct EmitResult {
    std::vector<std::filesystem::path> files;
};

// Writes points.csv, one CSV per mesh and (optionally) a gnuplot script
// overlaying everything. CSV columns are x,y,z with 17 significant
// digits; mesh strips are separated by a blank line. Output is
// byte-identical for identical inputs.
EmitResult emit_artifacts(const std::vector<Point3>& points,
                          const std::vector<PlaneMesh>& meshes,
                          const std::filesystem::path& out_dir,
                          bool with_script = true);

}  // namespace xsplane
