#include "xsplane/pointcloud.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace xsplane {

namespace {

constexpr std::uint64_t kMaxTriples = std::uint64_t{1} << 40;

double unit_coord(Word64 w) { return std::ldexp(static_cast<double>(w), -64); }

template <class Gen>
ExtractResult extract_stream(Gen gen, const MagnifySpec& magnify,
                             std::uint64_t target) {
    const int axis = static_cast<int>(magnify.axis);
    const bool filtered = magnify.k > 0;
    const Word64 threshold =
        filtered ? Word64{1} << (kWordBits - magnify.k) : 0;

    ExtractResult result;
    result.points.reserve(target);
    while (result.points.size() < target) {
        if (result.triples_consumed >= kMaxTriples)
            throw std::length_error(
                "magnified extraction exceeded 2^40 consumed triples");
        Word64 w[3] = {gen.next(), gen.next(), gen.next()};
        ++result.triples_consumed;
        if (filtered && w[axis] > threshold) continue;
        Point3 pt{unit_coord(w[0]), unit_coord(w[1]), unit_coord(w[2])};
        const double magnified =
            std::ldexp(static_cast<double>(w[axis]), magnify.k - kWordBits);
        (axis == 0 ? pt.x : axis == 1 ? pt.y : pt.z) = magnified;
        result.points.push_back(pt);
    }
    return result;
}

}  // namespace

ExtractResult extract_magnified(const GeneratorSpec& spec, std::uint64_t seed,
                                const MagnifySpec& magnify,
                                std::uint64_t target) {
    if (magnify.k < 0 || magnify.k > 63)
        throw std::invalid_argument("magnify exponent must be in [0, 63]");
    if (target == 0) throw std::invalid_argument("need at least one point");
    if (spec.kind == GeneratorSpec::Kind::control)
        return extract_stream(SplitMix64(seed), magnify, target);
    spec.params.validate();
    return extract_stream(Xorshift128Plus(spec.params, seed), magnify, target);
}

std::string PlaneMesh::name() const {
    return std::string(sign_x == 1 ? "p" : "m") + (sign_y == 1 ? "p" : "m");
}

PlaneMesh plane_mesh(int a, int sign_x, int sign_y, int xmax_log2, int grid) {
    if (a < 1 || a > 63)
        throw std::invalid_argument("plane shift a must be in [1, 63]");
    if ((sign_x != 1 && sign_x != -1) || (sign_y != 1 && sign_y != -1))
        throw std::invalid_argument("mesh signs must be +1 or -1");
    if (xmax_log2 < 0 || xmax_log2 > 63)
        throw std::invalid_argument("xmax exponent must be in [0, 63]");
    if (grid < 2) throw std::invalid_argument("grid must be at least 2");

    const double coeff = 1.0 + std::ldexp(1.0, a);
    PlaneMesh mesh;
    mesh.sign_x = sign_x;
    mesh.sign_y = sign_y;

    for (int i = 0; i < grid; ++i) {
        const double x_plot = static_cast<double>(i) / (grid - 1);
        const double x = std::ldexp(x_plot, -xmax_log2);
        MeshStrip strip;
        double prev_z = 0;
        for (int j = 0; j < grid; ++j) {
            const double y = static_cast<double>(j) / (grid - 1);
            const double value = sign_x * coeff * x + sign_y * y;
            const double z = value - std::floor(value);
            if (j > 0 && std::fabs(z - prev_z) > 0.5) {
                mesh.strips.push_back(std::move(strip));
                strip = MeshStrip{};
            }
            strip.vertices.push_back({x_plot, y, z});
            prev_z = z;
        }
        mesh.strips.push_back(std::move(strip));
    }
    return mesh;
}

namespace {

void append_point(std::string& out, const Point3& pt) {
    char line[96];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", pt.x, pt.y, pt.z);
    out += line;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

EmitResult emit_artifacts(const std::vector<Point3>& points,
                          const std::vector<PlaneMesh>& meshes,
                          const std::filesystem::path& out_dir,
                          bool with_script) {
    std::filesystem::create_directories(out_dir);
    EmitResult result;

    std::string body = "x,y,z\n";
    for (const Point3& pt : points) append_point(body, pt);
    const auto points_path = out_dir / "points.csv";
    write_file(points_path, body);
    result.files.push_back(points_path);

    std::vector<std::string> mesh_names;
    for (const PlaneMesh& mesh : meshes) {
        body = "x,y,z\n";
        bool first = true;
        for (const MeshStrip& strip : mesh.strips) {
            if (!first) body += "\n";
            first = false;
            for (const Point3& pt : strip.vertices) append_point(body, pt);
        }
        const auto mesh_path = out_dir / ("plane_" + mesh.name() + ".csv");
        write_file(mesh_path, body);
        result.files.push_back(mesh_path);
        mesh_names.push_back("plane_" + mesh.name() + ".csv");
    }

    if (with_script && !(points.empty() && meshes.empty())) {
        std::vector<std::string> layers;
        for (const auto& name : mesh_names)
            layers.push_back("  \"" + name +
                             "\" skip 1 using 1:2:3 with lines lc rgb "
                             "\"#b0b0b0\" notitle");
        if (!points.empty())
            layers.push_back(
                "  \"points.csv\" skip 1 using 1:2:3 with points pt 7 ps 0.3 "
                "lc rgb \"#c02020\" notitle");
        std::string script =
            "# scatter + plane overlay; run: gnuplot -p plot.gp\n"
            "set datafile separator \",\"\n"
            "set xlabel \"x\"\nset ylabel \"y\"\nset zlabel \"z\"\n"
            "set xrange [0:1]\nset yrange [0:1]\nset zrange [0:1]\n"
            "set ticslevel 0\n"
            "splot \\\n";
        for (std::size_t i = 0; i < layers.size(); ++i)
            script += layers[i] + (i + 1 < layers.size() ? ", \\\n" : "\n");
        const auto script_path = out_dir / "plot.gp";
        write_file(script_path, script);
        result.files.push_back(script_path);
    }
    return result;
}

}  // namespace xsplane
