#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "xsplane/generators.hpp"
#include "xsplane/rational.hpp"

namespace xsplane {

// Axis-aligned box in [0,1)^3 with exact rational bounds. Membership of
// a generator word o (representing o/2^64) is decided entirely in
// integer space: lo <= o/2^64 < hi is equivalent to
// ceil(lo*2^64) <= o <= ceil(hi*2^64) - 1, so no float rounding can
// misclassify a point.
class BoxRegion {
  public:
    struct WordBounds {
        Word64 lo = 0;
        Word64 hi_incl = 0;
    };

    static BoxRegion from_bounds(const Rational& x0, const Rational& x1,
                                 const Rational& y0, const Rational& y1,
                                 const Rational& z0, const Rational& z1);

    // Six comma-separated bound expressions "x0,x1,y0,y1,z0,z1", each in
    // the syntax of parse_rational (so "0.1/2^22" works verbatim).
    static BoxRegion parse(const std::string& text);

    // The box exercised throughout this project's failure demo:
    // [0, 0.1/2^22) x [0, 0.1) x [0.45, 0.55), volume 1/4194304000.
    static BoxRegion default_region();

    const Rational& volume() const { return volume_; }
    const Rational& bound(int axis, bool upper) const {
        return bounds_[static_cast<std::size_t>(axis)][upper ? 1 : 0];
    }
    const WordBounds& word_bounds(int axis) const {
        return words_[static_cast<std::size_t>(axis)];
    }

    bool contains_words(Word64 x, Word64 y, Word64 z) const {
        return x >= words_[0].lo && x <= words_[0].hi_incl &&
               y >= words_[1].lo && y <= words_[1].hi_incl &&
               z >= words_[2].lo && z <= words_[2].hi_incl;
    }

    std::string str() const;

  private:
    std::array<std::array<Rational, 2>, 3> bounds_;
    std::array<WordBounds, 3> words_;
    Rational volume_;
};

// P(X <= h) for X ~ Binomial(n, p). Exact term-by-term summation for
// n <= 10^6; for larger n a Poisson(n*p) approximation is used, valid
// for n*p <= 10^6 (total variation error at most n*p^2, Le Cam). The
// result underflows to 0 for very unlikely h, matching how such
// p-values are reported.
double lower_tail_pvalue(std::uint64_t n, std::uint64_t h, const Rational& p);

struct McRunReport {
    std::string generator;
    std::uint64_t seed = 0;
    std::uint64_t points = 0;
    std::uint64_t hits = 0;
    double estimate = 0;  // hits / points
    double expected = 0;  // points * volume
    double p_value = 0;
};

// Consumes 3N outputs as N non-overlapping triples and counts box hits.
// The stream is split into fixed-size partitions seeded from the seed
// schedule, so the count is identical for every thread count.
McRunReport box_hits(const GeneratorSpec& spec, std::uint64_t seed,
                     const BoxRegion& region, std::uint64_t points,
                     int threads = 1);

// `repeats` independent runs with seeds run_seed(base_seed, r).
std::vector<McRunReport> mc_report(const GeneratorSpec& spec,
                                   const BoxRegion& region,
                                   std::uint64_t points, int repeats,
                                   std::uint64_t base_seed, int threads = 1);

}  // namespace xsplane
