#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "xsplane/generators.hpp"
#include "xsplane/montecarlo.hpp"
#include "xsplane/plane_analysis.hpp"
#include "xsplane/pointcloud.hpp"
#include "xsplane/xor_arith.hpp"

namespace {

using namespace xsplane;

// ---------------------------------------------------------------------
// shared generator flags: --gen | --preset | --params
// ---------------------------------------------------------------------

struct GenOptions {
    std::string gen_text;
    int preset = 0;
    std::string params_text;

    void attach(CLI::App* cmd, bool allow_control) {
        auto* gen = cmd->add_option(
            "--gen", gen_text,
            allow_control ? "generator: xs:preset-K, xs:a,b,c or control"
                          : "generator: xs:preset-K or xs:a,b,c");
        auto* preset_opt = cmd->add_option("--preset", preset,
                                           "recommended parameter set, 1..8");
        auto* params_opt =
            cmd->add_option("--params", params_text, "explicit shifts a,b,c");
        gen->excludes(preset_opt)->excludes(params_opt);
        preset_opt->excludes(params_opt);
        allow_control_ = allow_control;
    }

    GeneratorSpec resolve() const {
        GeneratorSpec spec;
        if (!gen_text.empty())
            spec = GeneratorSpec::parse(gen_text);
        else if (!params_text.empty())
            spec = GeneratorSpec::parse("xs:" + params_text);
        else
            spec = {GeneratorSpec::Kind::xorshift,
                    XsParams::preset(preset == 0 ? 1 : preset)};
        if (!allow_control_ && spec.kind == GeneratorSpec::Kind::control)
            throw std::invalid_argument(
                "this subcommand needs an xorshift generator");
        return spec;
    }

  private:
    bool allow_control_ = false;
};

double to_unit(Word64 w) { return std::ldexp(static_cast<double>(w), -64); }

// ---------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------

int run_generate(const GeneratorSpec& spec, std::uint64_t seed,
                 std::uint64_t count, const std::string& format) {
    auto emit = [&](Word64 w) {
        if (format == "hex")
            std::printf("%016" PRIx64 "\n", w);
        else if (format == "dec")
            std::printf("%" PRIu64 "\n", w);
        else
            std::printf("%.17g\n", to_unit(w));
    };
    if (spec.kind == GeneratorSpec::Kind::control) {
        SplitMix64 gen(seed);
        for (std::uint64_t i = 0; i < count; ++i) emit(gen.next());
    } else {
        Xorshift128Plus gen(spec.params, seed);
        for (std::uint64_t i = 0; i < count; ++i) emit(gen.next());
    }
    return 0;
}

// ---------------------------------------------------------------------
// points / planes
// ---------------------------------------------------------------------

std::vector<PlaneMesh> build_meshes(int a, const std::string& signs,
                                    int xmax_log2, int grid) {
    std::vector<PlaneMesh> meshes;
    auto want = [&](const char* name) {
        return signs == "all" || signs == name;
    };
    if (want("pp")) meshes.push_back(plane_mesh(a, +1, +1, xmax_log2, grid));
    if (want("pm")) meshes.push_back(plane_mesh(a, +1, -1, xmax_log2, grid));
    if (want("mp")) meshes.push_back(plane_mesh(a, -1, +1, xmax_log2, grid));
    if (want("mm")) meshes.push_back(plane_mesh(a, -1, -1, xmax_log2, grid));
    return meshes;
}

int run_points(const GeneratorSpec& spec, std::uint64_t seed, int magnify,
               const std::string& axis, std::uint64_t count,
               const std::string& out, bool with_planes, int grid,
               bool script) {
    MagnifySpec mag{magnify,
                    axis == "y" ? Axis::y : axis == "z" ? Axis::z : Axis::x};
    const ExtractResult extracted = extract_magnified(spec, seed, mag, count);
    std::vector<PlaneMesh> meshes;
    if (with_planes && spec.kind == GeneratorSpec::Kind::xorshift)
        meshes = build_meshes(spec.params.a, "all", magnify, grid);
    const EmitResult emitted =
        emit_artifacts(extracted.points, meshes, out, script);
    std::printf("generator: %s\n", spec.label().c_str());
    std::printf("kept %zu points from %" PRIu64
                " triples (magnify 2^%d, %s axis)\n",
                extracted.points.size(), extracted.triples_consumed, magnify,
                axis.c_str());
    for (const auto& path : emitted.files)
        std::printf("wrote %s\n", path.string().c_str());
    return 0;
}

int run_planes(int a, const std::string& signs, int xmax_log2, int grid,
               const std::string& out, bool script) {
    const auto meshes = build_meshes(a, signs, xmax_log2, grid);
    if (meshes.empty())
        throw std::invalid_argument("--signs expects pp, pm, mp, mm or all");
    const EmitResult emitted = emit_artifacts({}, meshes, out, script);
    std::size_t strips = 0, vertices = 0;
    for (const auto& mesh : meshes) {
        strips += mesh.strips.size();
        for (const auto& strip : mesh.strips) vertices += strip.vertices.size();
    }
    std::printf("meshes: %zu (a=%d, x up to 2^-%d, grid %d); %zu strips, %zu "
                "vertices\n",
                meshes.size(), a, xmax_log2, grid, strips, vertices);
    for (const auto& path : emitted.files)
        std::printf("wrote %s\n", path.string().c_str());
    return 0;
}

// ---------------------------------------------------------------------
// concentrate
// ---------------------------------------------------------------------

std::string rational_maybe(const std::optional<Rational>& value) {
    return value ? rational_to_string(*value) : "-";
}

int run_concentrate(const GeneratorSpec& spec, std::uint64_t seed,
                    std::uint64_t samples, int n, bool overlapping,
                    int threads, const std::string& csv_path) {
    const ConcentrationReport report =
        scan_concentration(spec.params, seed, samples, n, overlapping, threads);

    std::printf("generator: %s  seed=%" PRIu64 "  samples=%" PRIu64
                "  n=%d  triples=%s\n",
                spec.label().c_str(), seed, samples, n,
                overlapping ? "overlapping" : "non-overlapping");
    std::printf("residual bound 4(2^%d-1), normalized %.6g\n", 64 - n,
                std::ldexp(1.0, 2 - n));
    std::printf("near any plane: %" PRIu64 " (%.6f)\n\n", report.near_any,
                static_cast<double>(report.near_any) /
                    static_cast<double>(samples));
    std::printf("%-12s %-20s %12s %14s %10s %12s %6s\n", "(p,q,r)", "plane",
                "cond-freq", "predicted", "near-frac", "max|res|/bd", "viol");
    const double bound_mag = std::ldexp(1.0, 66 - n);
    for (const auto& stats : report.planes) {
        const double cond = static_cast<double>(stats.conditions_met) /
                            static_cast<double>(samples);
        const double near = static_cast<double>(stats.near_plane) /
                            static_cast<double>(samples);
        const double ratio =
            static_cast<double>(stats.max_conditional_residual) / bound_mag;
        std::printf("%-12s %-20s %12.6f %14s %10.6f %12.4f %6" PRIu64 "\n",
                    stats.plane.signs.str().c_str(),
                    stats.plane.equation().c_str(), cond,
                    rational_maybe(stats.predicted).c_str(), near, ratio,
                    stats.bound_violations);
    }

    if (!csv_path.empty()) {
        std::string body =
            "p,q,r,equation,conditions_met,cond_freq,predicted,near_count,"
            "near_frac,max_residual,violations\n";
        for (const auto& stats : report.planes) {
            char line[256];
            std::snprintf(line, sizeof line,
                          "%d,%d,%d,\"%s\",%" PRIu64 ",%.10g,%s,%" PRIu64
                          ",%.10g,%" PRIu64 ",%" PRIu64 "\n",
                          stats.plane.signs.p, stats.plane.signs.q,
                          stats.plane.signs.r, stats.plane.equation().c_str(),
                          stats.conditions_met,
                          static_cast<double>(stats.conditions_met) /
                              static_cast<double>(samples),
                          rational_maybe(stats.predicted).c_str(),
                          stats.near_plane,
                          static_cast<double>(stats.near_plane) /
                              static_cast<double>(samples),
                          stats.max_conditional_residual,
                          stats.bound_violations);
            body += line;
        }
        std::FILE* out = std::fopen(csv_path.c_str(), "wb");
        if (!out) throw std::runtime_error("cannot open " + csv_path);
        std::fwrite(body.data(), 1, body.size(), out);
        std::fclose(out);
        std::printf("\nwrote %s\n", csv_path.c_str());
    }
    return 0;
}

// ---------------------------------------------------------------------
// count
// ---------------------------------------------------------------------

int run_count(int n, bool csv) {
    bool all_ok = true;
    auto flag = [&](bool ok) {
        all_ok = all_ok && ok;
        return ok ? "ok" : "MISMATCH";
    };

    if (csv) std::printf("kind,n,label,enumerated,closed_form,match\n");

    if (n <= 12) {
        const PairCountReport pairs = pair_counts(n);
        const PairCounts exact_cf = pair_counts_closed_form(n, false);
        const PairCounts mod_cf = pair_counts_closed_form(n, true);
        struct Row {
            const char* label;
            std::uint64_t got, want;
        };
        const Row rows[] = {
            {"A (xor=x+y)", pairs.exact.a, exact_cf.a},
            {"B (xor=x-y)", pairs.exact.b, exact_cf.b},
            {"C (xor=y-x)", pairs.exact.c, exact_cf.c},
            {"A&B", pairs.exact.ab, exact_cf.ab},
            {"B&C", pairs.exact.bc, exact_cf.bc},
            {"C&A", pairs.exact.ca, exact_cf.ca},
            {"A&B&C", pairs.exact.abc, exact_cf.abc},
            {"A|B|C", pairs.exact.any, exact_cf.any},
            {"A' (mod 2^n)", pairs.modular.a, mod_cf.a},
            {"B' (mod 2^n)", pairs.modular.b, mod_cf.b},
            {"C' (mod 2^n)", pairs.modular.c, mod_cf.c},
            {"A'&B'", pairs.modular.ab, mod_cf.ab},
            {"B'&C'", pairs.modular.bc, mod_cf.bc},
            {"C'&A'", pairs.modular.ca, mod_cf.ca},
            {"A'&B'&C'", pairs.modular.abc, mod_cf.abc},
            {"A'|B'|C'", pairs.modular.any, mod_cf.any},
        };
        if (!csv)
            std::printf("pair relations over 4^%d = %" PRIu64
                        " pairs\n%-16s %14s %14s\n",
                        n, std::uint64_t{1} << (2 * n), "set", "enumerated",
                        "closed-form");
        for (const Row& row : rows) {
            if (csv)
                std::printf("pair,%d,%s,%" PRIu64 ",%" PRIu64 ",%s\n", n,
                            row.label, row.got, row.want,
                            flag(row.got == row.want));
            else
                std::printf("%-16s %14" PRIu64 " %14" PRIu64 "   %s\n",
                            row.label, row.got, row.want,
                            flag(row.got == row.want));
        }
    } else if (!csv) {
        std::printf("pair enumeration skipped (needs n <= 12)\n");
    }

    if (n <= 8) {
        if (!csv)
            std::printf("\ntriple relations over 8^%d = %" PRIu64
                        " triples\n%-12s %12s %12s %4s %14s %14s %4s\n",
                        n, std::uint64_t{1} << (3 * n), "signs", "plain",
                        "closed", "", "mod 2^n", "closed", "");
        for (const SignTriple& signs : SignTriple::all()) {
            const std::uint64_t plain = triple_count(n, signs, false);
            const std::uint64_t plain_cf =
                triple_count_closed_form(n, signs, false);
            const std::uint64_t mod = triple_count(n, signs, true);
            // all-minus mod 2^n has no per-digit closed form
            const bool has_mod_cf =
                !(signs.p == -1 && signs.q == -1 && signs.r == -1);
            const std::uint64_t mod_cf =
                has_mod_cf ? triple_count_closed_form(n, signs, true) : 0;
            char mod_cf_text[24] = "-";
            if (has_mod_cf)
                std::snprintf(mod_cf_text, sizeof mod_cf_text, "%" PRIu64,
                              mod_cf);
            const char* mod_flag = has_mod_cf ? flag(mod == mod_cf) : "-";
            if (csv) {
                std::printf("triple,%d,%s plain,%" PRIu64 ",%" PRIu64 ",%s\n",
                            n, signs.str().c_str(), plain, plain_cf,
                            flag(plain == plain_cf));
                std::printf("triple,%d,%s mod,%" PRIu64 ",%s,%s\n", n,
                            signs.str().c_str(), mod, mod_cf_text, mod_flag);
            } else {
                std::printf("%-12s %12" PRIu64 " %12" PRIu64 " %4s %14" PRIu64
                            " %14s %4s\n",
                            signs.str().c_str(), plain, plain_cf,
                            flag(plain == plain_cf), mod, mod_cf_text,
                            mod_flag);
            }
        }
    } else if (!csv) {
        std::printf("\ntriple enumeration skipped (needs n <= 8)\n");
    }

    if (n <= 6) {
        if (!csv)
            std::printf("\njoint conditions over 16^%d = %" PRIu64
                        " quadruples\n%-12s %12s %16s %16s %4s\n",
                        n, std::uint64_t{1} << (4 * n), "signs", "count",
                        "probability", "closed-form", "");
        for (const SignTriple& signs : SignTriple::all()) {
            if (!signs.two_plus_one_minus()) continue;
            const JointConditionCount joint = joint_condition_count(n, signs);
            const Rational closed = joint_condition_closed_form(n, signs);
            const bool ok = joint.probability() == closed;
            if (csv)
                std::printf("joint,%d,%s,%" PRIu64 ",%s,%s\n", n,
                            signs.str().c_str(), joint.count,
                            rational_to_string(joint.probability()).c_str(),
                            flag(ok));
            else
                std::printf("%-12s %12" PRIu64 " %16s %16s %4s\n",
                            signs.str().c_str(), joint.count,
                            rational_to_string(joint.probability()).c_str(),
                            rational_to_string(closed).c_str(), flag(ok));
        }
    } else if (!csv) {
        std::printf("\njoint enumeration skipped (needs n <= 6)\n");
    }

    if (!csv)
        std::printf("\n%s\n", all_ok
                                  ? "all enumerated counts match closed forms"
                                  : "MISMATCH between enumeration and closed forms");
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------
// mc
// ---------------------------------------------------------------------

int run_mc(const GeneratorSpec& spec, const std::string& region_text,
           std::uint64_t points, int repeats, std::uint64_t seed, int threads,
           bool csv) {
    const BoxRegion region = (region_text.empty() || region_text == "default")
                                 ? BoxRegion::default_region()
                                 : BoxRegion::parse(region_text);
    const auto rows = mc_report(spec, region, points, repeats, seed, threads);

    if (csv) {
        std::printf("run,seed,points,hits,estimate,expected,p_value\n");
        for (std::size_t r = 0; r < rows.size(); ++r)
            std::printf("%zu,%" PRIu64 ",%" PRIu64 ",%" PRIu64
                        ",%.10e,%.10g,%.10g\n",
                        r + 1, rows[r].seed, rows[r].points, rows[r].hits,
                        rows[r].estimate, rows[r].expected, rows[r].p_value);
        return 0;
    }

    std::printf("generator: %s\n", spec.label().c_str());
    std::printf("region:    %s\n", region.str().c_str());
    std::printf("volume:    %s = %.16e\n",
                rational_to_string(region.volume()).c_str(),
                rational_to_double(region.volume()));
    std::printf("%-4s %-20s %-14s %6s %-14s %-10s %s\n", "run", "seed",
                "points", "hits", "estimate", "expected", "p-value");
    for (std::size_t r = 0; r < rows.size(); ++r)
        std::printf("%-4zu %-20" PRIu64 " %-14" PRIu64 " %6" PRIu64
                    " %-14.6e %-10.4f %.6g\n",
                    r + 1, rows[r].seed, rows[r].points, rows[r].hits,
                    rows[r].estimate, rows[r].expected, rows[r].p_value);
    return 0;
}

// ---------------------------------------------------------------------
// verify: quick tier of the invariant and oracle suite
// ---------------------------------------------------------------------

struct VerifyContext {
    int failures = 0;
    void check(const char* name, bool ok) {
        std::printf("%-58s %s\n", name, ok ? "ok" : "FAIL");
        if (!ok) ++failures;
    }
};

bool counts_match(const PairCounts& got, const PairCounts& want) {
    return got.a == want.a && got.b == want.b && got.c == want.c &&
           got.ab == want.ab && got.bc == want.bc && got.ca == want.ca &&
           got.abc == want.abc && got.any == want.any;
}

int run_verify(std::uint64_t samples, int threads) {
    VerifyContext v;

    {
        bool ok = true;
        for (int n = 1; n <= 8 && ok; ++n) {
            const PairCountReport report = pair_counts(n);
            ok = counts_match(report.exact, pair_counts_closed_form(n, false)) &&
                 counts_match(report.modular, pair_counts_closed_form(n, true));
        }
        v.check("pair counts match closed forms (n=1..8)", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 5 && ok; ++n)
            for (const SignTriple& signs : SignTriple::all()) {
                ok = ok && triple_count(n, signs, false) ==
                               triple_count_closed_form(n, signs, false);
                if (signs.p == -1 && signs.q == -1 && signs.r == -1)
                    continue;  // no per-digit closed form mod 2^n
                ok = ok && triple_count(n, signs, true) ==
                               triple_count_closed_form(n, signs, true);
            }
        v.check("triple counts match closed forms (n=1..5)", ok);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 4 && ok; ++n)
            for (const SignTriple& signs : SignTriple::all()) {
                if (!signs.two_plus_one_minus()) continue;
                ok = ok && joint_condition_count(n, signs).probability() ==
                               joint_condition_closed_form(n, signs);
            }
        v.check("joint condition probabilities match closed forms (n=1..4)", ok);
    }
    {
        bool ok = true;
        SplitMix64 rng(0xABCDEF);
        for (const XsParams& params : XsParams::recommended())
            for (int i = 0; i < 1000 && ok; ++i) {
                const XsState s{rng.next(), rng.next()};
                const XsState t{rng.next(), rng.next()};
                const XsState both{s.s0 ^ t.s0, s.s1 ^ t.s1};
                const XsState step_s = xs_transition(s, params);
                const XsState step_t = xs_transition(t, params);
                const XsState step_both = xs_transition(both, params);
                ok = step_both.s0 == (step_s.s0 ^ step_t.s0) &&
                     step_both.s1 == (step_s.s1 ^ step_t.s1);
            }
        v.check("state transition is F2-linear (8 presets x 1000 pairs)", ok);
    }
    {
        bool ok = true;
        for (const XsParams& params : XsParams::recommended()) {
            const int m = params.min_bc();
            LinearizedXorshift128Plus gen(params, 12345);
            Word64 o0 = gen.next();
            Word64 o1 = gen.next();
            for (int i = 0; i < 10000 && ok; ++i) {
                const Word64 o2 = gen.next();
                ok = msb_eq(o2, (o0 ^ (o0 << params.a)) ^ o1, m);
                o0 = o1;
                o1 = o2;
            }
        }
        v.check("linearized recursion holds on the top min{b,c} bits", ok);
    }
    {
        bool ok = true;
        Xorshift128Plus plain(XsParams::preset(1), 99);
        LinearizedXorshift128Plus lin(XsParams::preset(1), 99);
        for (int i = 0; i < 10000 && ok; ++i)
            ok = ((plain.next() ^ lin.next()) & 1) == 0;
        v.check("LSB of additive and xor outputs agree", ok);
    }
    {
        bool ok = true;
        for (std::uint64_t seed = 0; seed < 1000 && ok; ++seed) {
            const XsState st = seed_state(seed);
            ok = !(st.s0 == 0 && st.s1 == 0);
        }
        v.check("seed expansion never yields the zero state (1000 seeds)", ok);
    }
    {
        bool ok = true;
        const XsParams params = XsParams::preset(1);
        for (int n : {2, 5, params.min_bc()}) {
            const ConcentrationReport report =
                scan_concentration(params, 7, samples, n, false, threads);
            for (const auto& stats : report.planes)
                if (stats.plane.signs.two_plus_one_minus())
                    ok = ok && stats.bound_violations == 0;
        }
        v.check("conditional residual bound: zero violations", ok);
    }
    {
        bool ok = true;
        Xorshift128Plus gen(XsParams::preset(1), 31337);
        const XsParams params = XsParams::preset(1);
        for (int i = 0; i < 10000 && ok; ++i) {
            const XsState st = gen.state();
            for (const SignTriple& signs : SignTriple::all())
                if (signs.two_plus_one_minus())
                    ok = ok &&
                         residual_identity_holds(st.s0, st.s1, params, 5, signs);
            gen.next();
        }
        v.check("epsilon decomposition reproduces the residual", ok);
    }
    {
        const ConcentrationReport report = scan_concentration(
            XsParams::preset(1), 99, samples, 5, false, threads);
        bool ok = true;
        for (const auto& stats : report.planes) {
            if (!stats.predicted) continue;
            const double predicted = rational_to_double(*stats.predicted);
            const double sigma = std::sqrt(predicted * (1 - predicted) /
                                           static_cast<double>(samples));
            const double freq = static_cast<double>(stats.conditions_met) /
                                static_cast<double>(samples);
            ok = ok && std::fabs(freq - predicted) <= 4 * sigma;
        }
        v.check("condition frequencies match predictions within 4 sigma", ok);
    }
    {
        const NearPlaneReport control = scan_near_planes(
            {GeneratorSpec::Kind::control, {}}, 5, samples, 5, 23, threads);
        const double baseline = 0.25;  // 2B/2^64 at n=5
        const double sigma = std::sqrt(baseline * (1 - baseline) /
                                       static_cast<double>(samples));
        bool ok = true;
        for (const std::uint64_t count : control.near_per_plane) {
            const double frac =
                static_cast<double>(count) / static_cast<double>(samples);
            ok = ok && std::fabs(frac - baseline) <= 4 * sigma;
        }
        v.check("control near-plane fractions sit at the chance baseline", ok);
    }
    {
        const ConcentrationReport report = scan_concentration(
            XsParams::preset(1), 11, samples, 5, false, threads);
        bool ok = false;
        for (const auto& stats : report.planes) {
            if (stats.plane.signs != SignTriple{+1, -1, +1}) continue;
            const double baseline = 0.25;
            const double excess =
                rational_to_double(*stats.predicted) * (1 - baseline);
            const double sigma = std::sqrt(baseline * (1 - baseline) /
                                           static_cast<double>(samples));
            const double frac = static_cast<double>(stats.near_plane) /
                                static_cast<double>(samples);
            ok = frac >= baseline + excess - 4 * sigma;
        }
        v.check("xorshift exceeds the baseline on the (5/8)^(n-1) plane", ok);
    }
    {
        const BoxRegion region = BoxRegion::default_region();
        bool ok = region.volume() == Rational(1, 4194304000LL);
        ok = ok && lower_tail_pvalue(100, 100, Rational(1, 2)) == 1.0;
        double prev = 0;
        for (std::uint64_t h = 0; h <= 5 && ok; ++h) {
            const double pv =
                lower_tail_pvalue(2000000000ULL, h, region.volume());
            ok = pv >= prev;
            prev = pv;
        }
        for (std::uint64_t np : {1, 10, 100}) {
            const double exact =
                lower_tail_pvalue(1000000, np, Rational(np, 1000000));
            const double poisson =
                lower_tail_pvalue(1000001, np, Rational(np, 1000001));
            ok = ok && std::fabs(exact - poisson) <= 0.002 * exact;
        }
        v.check("p-value paths: volume, monotonicity, Poisson agreement", ok);
    }

    std::printf("\n%d check(s) failed\n", v.failures);
    return v.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"xorshift128+ plane-structure analysis toolkit"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "print a raw output stream");
    GenOptions generate_gen;
    generate_gen.attach(generate, true);
    std::uint64_t generate_seed = 1, generate_count = 10;
    std::string generate_format = "hex";
    generate->add_option("--seed", generate_seed, "stream seed");
    generate->add_option("--count", generate_count, "values to print");
    generate->add_option("--format", generate_format, "hex, dec or real")
        ->check(CLI::IsMember({"hex", "dec", "real"}));

    auto* points = app.add_subcommand(
        "points", "extract a magnified 3D scatter of output triples");
    GenOptions points_gen;
    points_gen.attach(points, true);
    std::uint64_t points_seed = 1, points_count = 10000;
    int points_magnify = 22, points_grid = 65;
    std::string points_axis = "x", points_out = "points_out";
    bool points_with_planes = false, points_no_script = false;
    points->add_option("--seed", points_seed, "stream seed");
    points->add_option("--magnify", points_magnify,
                       "magnification exponent k (mu = 2^k)");
    points->add_option("--axis", points_axis, "magnified axis")
        ->check(CLI::IsMember({"x", "y", "z"}));
    points->add_option("--count", points_count, "points to keep");
    points->add_option("--out", points_out, "output directory");
    points->add_flag("--with-planes", points_with_planes,
                     "also emit the four reference planes (overlay figure)");
    points->add_option("--grid", points_grid, "mesh grid for --with-planes");
    points->add_flag("--no-script", points_no_script, "skip the gnuplot script");

    auto* planes = app.add_subcommand("planes", "emit reference plane meshes");
    int planes_a = 23, planes_xmax = 23, planes_grid = 65;
    std::string planes_signs = "all", planes_out = "planes_out";
    bool planes_no_script = false;
    planes->add_option("--a", planes_a, "shift amount in the plane equation");
    planes->add_option("--signs", planes_signs, "pp, pm, mp, mm or all");
    planes->add_option("--xmax", planes_xmax, "x range exponent (x <= 2^-k)");
    planes->add_option("--grid", planes_grid, "grid resolution per axis");
    planes->add_option("--out", planes_out, "output directory");
    planes->add_flag("--no-script", planes_no_script, "skip the gnuplot script");

    auto* concentrate = app.add_subcommand(
        "concentrate", "measure plane concentration and condition frequencies");
    GenOptions concentrate_gen;
    concentrate_gen.attach(concentrate, false);
    std::uint64_t concentrate_seed = 1, concentrate_samples = 1000000;
    int concentrate_n = 5, concentrate_threads = 1;
    bool concentrate_overlapping = false;
    std::string concentrate_csv;
    concentrate->add_option("--seed", concentrate_seed, "scan seed");
    concentrate->add_option("--samples", concentrate_samples,
                            "output triples to scan");
    concentrate->add_option("--n", concentrate_n,
                            "MSB depth (1 <= n <= min{b,c})");
    concentrate->add_flag("--overlapping", concentrate_overlapping,
                          "slide by one output instead of three");
    concentrate->add_option("--threads", concentrate_threads, "worker threads");
    concentrate->add_option("--csv", concentrate_csv,
                            "also write per-plane rows to this file");

    auto* count = app.add_subcommand(
        "count", "exhaustive xor-vs-arithmetic counts against closed forms");
    int count_n = 3;
    bool count_csv = false;
    count->add_option("--n", count_n, "bit width to enumerate");
    count->add_flag("--csv", count_csv, "machine-readable output");

    auto* mc = app.add_subcommand("mc", "hit-or-miss volume estimate of a box");
    GenOptions mc_gen;
    mc_gen.attach(mc, true);
    std::string mc_region = "default";
    std::uint64_t mc_points = 20000000000ULL, mc_seed = 1;
    int mc_repeats = 3, mc_threads = 1;
    bool mc_csv = false;
    mc->add_option("--region", mc_region,
                   "x0,x1,y0,y1,z0,z1 as rationals, or 'default'");
    mc->add_option("--n", mc_points, "points per run (3 outputs each)");
    mc->add_option("--repeats", mc_repeats, "independent runs");
    mc->add_option("--seed", mc_seed, "base seed of the run schedule");
    mc->add_option("--threads", mc_threads, "worker threads");
    mc->add_flag("--csv", mc_csv, "machine-readable output");

    auto* verify = app.add_subcommand(
        "verify", "run the built-in invariant and oracle suite");
    std::uint64_t verify_samples = 200000;
    int verify_threads = 1;
    verify->add_option("--samples", verify_samples,
                       "triples per statistical check");
    verify->add_option("--threads", verify_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(generate))
            return run_generate(generate_gen.resolve(), generate_seed,
                                generate_count, generate_format);
        if (app.got_subcommand(points))
            return run_points(points_gen.resolve(), points_seed, points_magnify,
                              points_axis, points_count, points_out,
                              points_with_planes, points_grid,
                              !points_no_script);
        if (app.got_subcommand(planes))
            return run_planes(planes_a, planes_signs, planes_xmax, planes_grid,
                              planes_out, !planes_no_script);
        if (app.got_subcommand(concentrate))
            return run_concentrate(concentrate_gen.resolve(), concentrate_seed,
                                   concentrate_samples, concentrate_n,
                                   concentrate_overlapping, concentrate_threads,
                                   concentrate_csv);
        if (app.got_subcommand(count)) return run_count(count_n, count_csv);
        if (app.got_subcommand(mc))
            return run_mc(mc_gen.resolve(), mc_region, mc_points, mc_repeats,
                          mc_seed, mc_threads, mc_csv);
        if (app.got_subcommand(verify))
            return run_verify(verify_samples, verify_threads);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
