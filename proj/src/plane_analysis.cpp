#include "xsplane/plane_analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "partition.hpp"

namespace xsplane {

namespace {

inline Word64 signed_term(int sign, Word64 v) { return sign == 1 ? v : 0 - v; }

constexpr std::uint64_t kScanPartitionTriples = std::uint64_t{1} << 22;

}  // namespace

Word64 PlaneSpec::coeff_x() const {
    const Word64 pow_a = Word64{1} << a;
    return signed_term(signs.q, 1) + signed_term(signs.r, pow_a);
}

Word64 PlaneSpec::coeff_y() const { return signed_term(signs.p, 1); }

std::string PlaneSpec::equation() const {
    std::string eq = "z = (";
    eq += signs.q == 1 ? "1" : "-1";
    eq += signs.r == 1 ? "+2^" : "-2^";
    eq += std::to_string(a);
    eq += ")x ";
    eq += signs.p == 1 ? "+ y" : "- y";
    return eq;
}

std::array<PlaneSpec, 8> PlaneSpec::all_planes(int a) {
    if (a < 1 || a > 63)
        throw std::invalid_argument("plane shift a must be in [1, 63]");
    std::array<PlaneSpec, 8> planes;
    for (std::size_t k = 0; k < 8; ++k) planes[k] = {SignTriple::all()[k], a};
    return planes;
}

ConditionPair conditions_hold(Word64 s_i, Word64 s_i1, const XsParams& params,
                              int n, const SignTriple& signs) {
    params.validate();
    signs.validate();
    if (n < 1 || n > params.min_bc())
        throw std::invalid_argument(
            "condition depth requires 1 <= n <= min{b,c}");

    const Word64 keep = ~msb_rest_mask(n);
    const XsState st2 = xs_transition({s_i, s_i1}, params);

    const Word64 k_i = s_i & keep;
    const Word64 k_i1 = s_i1 & keep;
    const Word64 k_i2 = st2.s1 & keep;
    const Word64 kl_i = (s_i << params.a) & keep;
    const Word64 kl_i1 = (s_i1 << params.a) & keep;

    ConditionPair out;
    out.a1 = (k_i1 ^ k_i ^ kl_i) == signed_term(signs.p, k_i1) +
                                        signed_term(signs.q, k_i) +
                                        signed_term(signs.r, kl_i);
    out.a2 = (k_i2 ^ k_i1 ^ kl_i1) == signed_term(signs.p, k_i2) +
                                          signed_term(signs.q, k_i1) +
                                          signed_term(signs.r, kl_i1);
    return out;
}

EpsilonDecomposition epsilon_decomposition(Word64 s_i, Word64 s_i1,
                                           const XsParams& params, int n) {
    params.validate();
    detail::check_msb_depth(n);

    const XsState st2 = xs_transition({s_i, s_i1}, params);

    // The last two components are written out as the full shifted
    // expressions; they coincide with the next two state words.
    Word64 via_i = s_i ^ (s_i << params.a);
    via_i ^= via_i >> params.b;
    const Word64 expr7 = (s_i1 ^ (s_i1 >> params.c)) ^ via_i;
    Word64 via_i1 = s_i1 ^ (s_i1 << params.a);
    via_i1 ^= via_i1 >> params.b;
    const Word64 expr8 = (st2.s1 ^ (st2.s1 >> params.c)) ^ via_i1;

    EpsilonDecomposition d;
    d.n = n;
    d.eps = {
        msb_rest(s_i1, n),
        msb_rest(s_i, n),
        msb_rest(s_i << params.a, n),
        msb_rest(st2.s1, n),
        msb_rest(s_i1, n),
        msb_rest(s_i1 << params.a, n),
        msb_rest(expr7, n),
        msb_rest(expr8, n),
    };
    return d;
}

bool residual_identity_holds(Word64 s_i, Word64 s_i1, const XsParams& params,
                             int n, const SignTriple& signs) {
    if (!conditions_hold(s_i, s_i1, params, n, signs).both()) return true;

    const XsState st2 = xs_transition({s_i, s_i1}, params);
    const XsState st3 = xs_transition(st2, params);
    const Word64 x = s_i + s_i1;
    const Word64 y = s_i1 + st2.s1;
    const Word64 z = st2.s1 + st3.s1;

    const EpsilonDecomposition d = epsilon_decomposition(s_i, s_i1, params, n);
    const Word64 error = signed_term(-signs.p, d.eps[0] + d.eps[3]) +
                         signed_term(-signs.q, d.eps[1] + d.eps[4]) +
                         signed_term(-signs.r, d.eps[2] + d.eps[5]) +
                         d.eps[6] + d.eps[7];

    const PlaneSpec plane{signs, params.a};
    return static_cast<Word64>(plane_residual(x, y, z, plane)) == error;
}

std::optional<Rational> predicted_probability(int n, const SignTriple& signs) {
    signs.validate();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!signs.two_plus_one_minus()) return std::nullopt;
    // Cyclic slot translation; see the header note.
    return joint_condition_closed_form(n, SignTriple{signs.q, signs.r, signs.p});
}

namespace {

struct PlaneCtx {
    Word64 cx = 0, cy = 0;
    int p = 1, q = 1, r = 1;
};

std::array<PlaneCtx, 8> make_plane_ctx(int a) {
    std::array<PlaneCtx, 8> ctx;
    const auto planes = PlaneSpec::all_planes(a);
    for (std::size_t k = 0; k < 8; ++k)
        ctx[k] = {planes[k].coeff_x(), planes[k].coeff_y(), planes[k].signs.p,
                  planes[k].signs.q, planes[k].signs.r};
    return ctx;
}

// For n >= 2 the bound fits in 64 bits; for n = 1 it exceeds every
// representable distance, so every triple counts as near.
std::uint64_t bound_as_u64(int n) {
    return n == 1 ? ~std::uint64_t{0}
                  : static_cast<std::uint64_t>(residual_bound(n));
}

struct ScanTally {
    std::array<std::uint64_t, 8> conditions_met{};
    std::array<std::uint64_t, 8> near_plane{};
    std::array<std::uint64_t, 8> bound_violations{};
    std::array<std::uint64_t, 8> max_conditional_residual{};
    std::uint64_t near_any = 0;
};

void merge_scan(ScanTally& acc, const ScanTally& t) {
    for (std::size_t k = 0; k < 8; ++k) {
        acc.conditions_met[k] += t.conditions_met[k];
        acc.near_plane[k] += t.near_plane[k];
        acc.bound_violations[k] += t.bound_violations[k];
        acc.max_conditional_residual[k] = std::max(
            acc.max_conditional_residual[k], t.max_conditional_residual[k]);
    }
    acc.near_any += t.near_any;
}

ScanTally scan_partition(const XsParams& params, std::uint64_t part_seed,
                         std::uint64_t triples, int n, bool overlapping) {
    const int a = params.a;
    const Word64 keep = ~msb_rest_mask(n);
    const std::uint64_t bound = bound_as_u64(n);
    const auto ctx = make_plane_ctx(a);

    ScanTally tally;
    XsState st = seed_state(part_seed);
    for (std::uint64_t m = 0; m < triples; ++m) {
        const Word64 s_i = st.s0;
        const Word64 s_i1 = st.s1;
        const XsState st2 = xs_transition(st, params);
        const XsState st3 = xs_transition(st2, params);
        const Word64 s_i2 = st2.s1;
        const Word64 s_i3 = st3.s1;
        const Word64 x = s_i + s_i1;
        const Word64 y = s_i1 + s_i2;
        const Word64 z = s_i2 + s_i3;

        const Word64 k_i = s_i & keep;
        const Word64 k_i1 = s_i1 & keep;
        const Word64 k_i2 = s_i2 & keep;
        const Word64 kl_i = (s_i << a) & keep;
        const Word64 kl_i1 = (s_i1 << a) & keep;
        const Word64 lhs1 = k_i1 ^ k_i ^ kl_i;
        const Word64 lhs2 = k_i2 ^ k_i1 ^ kl_i1;

        bool any_near = false;
        for (std::size_t k = 0; k < 8; ++k) {
            const PlaneCtx& pc = ctx[k];
            const Word64 rhs1 = signed_term(pc.p, k_i1) +
                                signed_term(pc.q, k_i) +
                                signed_term(pc.r, kl_i);
            const Word64 rhs2 = signed_term(pc.p, k_i2) +
                                signed_term(pc.q, k_i1) +
                                signed_term(pc.r, kl_i1);
            const bool cond = (lhs1 == rhs1) && (lhs2 == rhs2);
            const std::uint64_t mag = residual_magnitude(
                static_cast<std::int64_t>(z - pc.cx * x - pc.cy * y));
            const bool near = mag <= bound;
            any_near |= near;
            tally.near_plane[k] += near;
            if (cond) {
                ++tally.conditions_met[k];
                tally.bound_violations[k] += !near;
                tally.max_conditional_residual[k] =
                    std::max(tally.max_conditional_residual[k], mag);
            }
        }
        tally.near_any += any_near;
        st = overlapping ? st2 : xs_transition(st3, params);
    }
    return tally;
}

}  // namespace

ConcentrationReport scan_concentration(const XsParams& params,
                                       std::uint64_t seed,
                                       std::uint64_t samples, int n,
                                       bool overlapping, int threads) {
    params.validate();
    if (n < 1 || n > params.min_bc())
        throw std::invalid_argument(
            "concentration scan requires 1 <= n <= min{b,c}");
    if (samples == 0) throw std::invalid_argument("need at least one sample");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");

    const ScanTally tally = detail::run_partitioned<ScanTally>(
        samples, kScanPartitionTriples, threads,
        [&](std::uint64_t part, std::uint64_t count) {
            return scan_partition(params, partition_seed(seed, part), count, n,
                                  overlapping);
        },
        merge_scan);

    ConcentrationReport report;
    report.params = params;
    report.seed = seed;
    report.samples = samples;
    report.n = n;
    report.overlapping = overlapping;
    report.bound = residual_bound(n);
    report.near_any = tally.near_any;
    const auto planes = PlaneSpec::all_planes(params.a);
    for (std::size_t k = 0; k < 8; ++k) {
        PlaneStats& stats = report.planes[k];
        stats.plane = planes[k];
        stats.conditions_met = tally.conditions_met[k];
        stats.near_plane = tally.near_plane[k];
        stats.bound_violations = tally.bound_violations[k];
        stats.max_conditional_residual = tally.max_conditional_residual[k];
        if (n <= params.a)
            stats.predicted = predicted_probability(n, planes[k].signs);
    }
    return report;
}

namespace {

struct NearTally {
    std::array<std::uint64_t, 8> per_plane{};
    std::uint64_t any = 0;
};

void merge_near(NearTally& acc, const NearTally& t) {
    for (std::size_t k = 0; k < 8; ++k) acc.per_plane[k] += t.per_plane[k];
    acc.any += t.any;
}

template <class Gen>
NearTally near_partition(Gen gen, std::uint64_t triples,
                         const std::array<PlaneCtx, 8>& ctx,
                         std::uint64_t bound) {
    NearTally tally;
    for (std::uint64_t m = 0; m < triples; ++m) {
        const Word64 x = gen.next();
        const Word64 y = gen.next();
        const Word64 z = gen.next();
        bool any_near = false;
        for (std::size_t k = 0; k < 8; ++k) {
            const std::uint64_t mag = residual_magnitude(
                static_cast<std::int64_t>(z - ctx[k].cx * x - ctx[k].cy * y));
            const bool near = mag <= bound;
            any_near |= near;
            tally.per_plane[k] += near;
        }
        tally.any += any_near;
    }
    return tally;
}

}  // namespace

NearPlaneReport scan_near_planes(const GeneratorSpec& spec, std::uint64_t seed,
                                 std::uint64_t samples, int n, int a,
                                 int threads) {
    detail::check_msb_depth(n);
    if (a < 1 || a > 63)
        throw std::invalid_argument("plane shift a must be in [1, 63]");
    if (samples == 0) throw std::invalid_argument("need at least one sample");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (spec.kind == GeneratorSpec::Kind::xorshift) spec.params.validate();

    const auto ctx = make_plane_ctx(a);
    const std::uint64_t bound = bound_as_u64(n);

    const NearTally tally = detail::run_partitioned<NearTally>(
        samples, kScanPartitionTriples, threads,
        [&](std::uint64_t part, std::uint64_t count) {
            const std::uint64_t ps = partition_seed(seed, part);
            if (spec.kind == GeneratorSpec::Kind::control)
                return near_partition(SplitMix64(ps), count, ctx, bound);
            return near_partition(Xorshift128Plus(spec.params, ps), count, ctx,
                                  bound);
        },
        merge_near);

    NearPlaneReport report;
    report.generator = spec.label();
    report.seed = seed;
    report.samples = samples;
    report.n = n;
    report.a = a;
    report.bound = residual_bound(n);
    report.near_per_plane = tally.per_plane;
    report.near_any = tally.any;
    return report;
}

}  // namespace xsplane
