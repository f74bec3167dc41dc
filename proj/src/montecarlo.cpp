#include "xsplane/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "partition.hpp"

namespace xsplane {

namespace {

BigInt ceil_div(const BigInt& num, const BigInt& den) {
    return (num + den - 1) / den;
}

// ceil(bound * 2^64) as a word; bounds are validated to lie in [0, 1].
BigInt scaled_threshold(const Rational& bound) {
    BigInt num = numerator(bound);
    num <<= 64;
    return ceil_div(num, denominator(bound));
}

constexpr std::uint64_t kMcPartitionPoints = std::uint64_t{1} << 30;

}  // namespace

BoxRegion BoxRegion::from_bounds(const Rational& x0, const Rational& x1,
                                 const Rational& y0, const Rational& y1,
                                 const Rational& z0, const Rational& z1) {
    BoxRegion region;
    region.bounds_ = {{{x0, x1}, {y0, y1}, {z0, z1}}};
    region.volume_ = 1;
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const Rational& lo = region.bounds_[axis][0];
        const Rational& hi = region.bounds_[axis][1];
        if (lo < 0 || lo > hi || hi > 1)
            throw std::invalid_argument("each axis needs 0 <= lo <= hi <= 1");
        const BigInt lo_t = scaled_threshold(lo);
        const BigInt hi_t = scaled_threshold(hi);
        if (hi_t <= lo_t) {
            // degenerate axis: [lo, hi) contains no representable word
            region.words_[axis] = {1, 0};
        } else {
            region.words_[axis].lo = lo_t.convert_to<Word64>();
            region.words_[axis].hi_incl = BigInt(hi_t - 1).convert_to<Word64>();
        }
        region.volume_ *= hi - lo;
    }
    return region;
}

BoxRegion BoxRegion::parse(const std::string& text) {
    std::array<Rational, 6> bounds;
    std::size_t start = 0;
    for (std::size_t k = 0; k < 6; ++k) {
        const bool last = k == 5;
        const auto comma = text.find(',', start);
        if (last != (comma == std::string::npos))
            throw std::invalid_argument(
                "region needs six comma-separated bounds x0,x1,y0,y1,z0,z1");
        bounds[k] = parse_rational(
            text.substr(start, last ? std::string::npos : comma - start));
        start = comma + 1;
    }
    return from_bounds(bounds[0], bounds[1], bounds[2], bounds[3], bounds[4],
                       bounds[5]);
}

BoxRegion BoxRegion::default_region() {
    const Rational tenth(1, 10);
    const Rational x_hi = tenth / (BigInt(1) << 22);
    return from_bounds(0, x_hi, 0, tenth, Rational(9, 20), Rational(11, 20));
}

std::string BoxRegion::str() const {
    std::string out;
    for (std::size_t axis = 0; axis < 3; ++axis) {
        if (axis) out += " x ";
        out += "[" + rational_to_string(bounds_[axis][0]) + "," +
               rational_to_string(bounds_[axis][1]) + ")";
    }
    return out;
}

namespace {

long double log_add_exp(long double a, long double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<long double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

double lower_tail_pvalue(std::uint64_t n, std::uint64_t h, const Rational& p) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    if (h > n) throw std::invalid_argument("h must be <= n");
    if (!(p > 0 && p < 1))
        throw std::invalid_argument("p must be in (0, 1)");
    if (h == n) return 1.0;

    constexpr std::uint64_t kExactLimit = 1'000'000;
    long double log_sum;
    if (n <= kExactLimit) {
        const long double pd = p.convert_to<long double>();
        const long double log_p = std::log(pd);
        const long double log_1mp = std::log1p(-pd);
        long double log_term = static_cast<long double>(n) * log_1mp;
        log_sum = log_term;
        for (std::uint64_t i = 0; i < h; ++i) {
            log_term += std::log(static_cast<long double>(n - i)) -
                        std::log(static_cast<long double>(i + 1)) + log_p -
                        log_1mp;
            log_sum = log_add_exp(log_sum, log_term);
        }
    } else {
        const Rational lambda_exact = p * n;
        const long double lambda = lambda_exact.convert_to<long double>();
        if (lambda > 1e6L)
            throw std::domain_error(
                "n*p too large for the Poisson tier (needs n*p <= 1e6)");
        const long double log_lambda = std::log(lambda);
        long double log_term = -lambda;
        log_sum = log_term;
        for (std::uint64_t i = 1; i <= h; ++i) {
            log_term += log_lambda - std::log(static_cast<long double>(i));
            log_sum = log_add_exp(log_sum, log_term);
            // Past 2*lambda the terms at least halve, so once a term sits
            // 70 e-folds under the running sum the remainder cannot move a
            // double-precision result.
            if (static_cast<long double>(i) > 2 * lambda + 4 &&
                log_term < log_sum - 70)
                break;
        }
    }
    const long double value = std::exp(log_sum);
    if (!(value > 0)) return 0.0;
    return value >= 1 ? 1.0 : static_cast<double>(value);
}

namespace {

template <class Gen>
std::uint64_t hits_partition(Gen gen, std::uint64_t points,
                             const BoxRegion& region) {
    const BoxRegion::WordBounds bx = region.word_bounds(0);
    const BoxRegion::WordBounds by = region.word_bounds(1);
    const BoxRegion::WordBounds bz = region.word_bounds(2);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < points; ++i) {
        const Word64 x = gen.next();
        const Word64 y = gen.next();
        const Word64 z = gen.next();
        if (x >= bx.lo && x <= bx.hi_incl && y >= by.lo && y <= by.hi_incl &&
            z >= bz.lo && z <= bz.hi_incl)
            ++hits;
    }
    return hits;
}

}  // namespace

McRunReport box_hits(const GeneratorSpec& spec, std::uint64_t seed,
                     const BoxRegion& region, std::uint64_t points,
                     int threads) {
    if (points == 0) throw std::invalid_argument("need at least one point");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (spec.kind == GeneratorSpec::Kind::xorshift) spec.params.validate();

    const std::uint64_t hits = detail::run_partitioned<std::uint64_t>(
        points, kMcPartitionPoints, threads,
        [&](std::uint64_t part, std::uint64_t count) {
            const std::uint64_t ps = partition_seed(seed, part);
            if (spec.kind == GeneratorSpec::Kind::control)
                return hits_partition(SplitMix64(ps), count, region);
            return hits_partition(Xorshift128Plus(spec.params, ps), count,
                                  region);
        },
        [](std::uint64_t& acc, const std::uint64_t& h) { acc += h; });

    McRunReport report;
    report.generator = spec.label();
    report.seed = seed;
    report.points = points;
    report.hits = hits;
    report.estimate = static_cast<double>(hits) / static_cast<double>(points);
    report.expected = rational_to_double(region.volume() * points);
    // volume 0 forces h = 0 and volume 1 forces h = N; P(X <= h) = 1 in
    // both degenerate cases
    report.p_value = (region.volume() == 0 || region.volume() == 1)
                         ? 1.0
                         : lower_tail_pvalue(points, hits, region.volume());
    return report;
}

std::vector<McRunReport> mc_report(const GeneratorSpec& spec,
                                   const BoxRegion& region,
                                   std::uint64_t points, int repeats,
                                   std::uint64_t base_seed, int threads) {
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    std::vector<McRunReport> rows;
    rows.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r)
        rows.push_back(box_hits(spec, run_seed(base_seed, static_cast<std::uint64_t>(r)),
                                region, points, threads));
    return rows;
}

}  // namespace xsplane
