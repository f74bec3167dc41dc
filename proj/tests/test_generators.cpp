#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "xsplane/generators.hpp"

using namespace xsplane;

TEST_SUITE_BEGIN("generators");

TEST_CASE("recommended parameter sets") {
    CHECK(XsParams::recommended().size() == 8);
    CHECK(XsParams::preset(1) == XsParams{23, 17, 26});
    CHECK(XsParams::preset(6) == XsParams{21, 23, 28});
    CHECK(XsParams::preset(8) == XsParams{20, 21, 11});
    CHECK_THROWS_AS(XsParams::preset(0), std::invalid_argument);
    CHECK_THROWS_AS(XsParams::preset(9), std::invalid_argument);
    for (const XsParams& params : XsParams::recommended())
        CHECK_NOTHROW(params.validate());
    CHECK_THROWS_AS((XsParams{0, 17, 26}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((XsParams{23, 64, 26}).validate(), std::invalid_argument);
}

TEST_CASE("hand-evaluated first steps") {
    const XsParams params = XsParams::preset(1);

    const XsStep zero = xs_next({0, 0}, params);
    CHECK(zero.output == 0);
    CHECK(zero.next == XsState{0, 0});

    const XsStep first = xs_next({1, 0}, params);
    CHECK(first.output == 1);
    CHECK(first.next == XsState{0, 0x800041});

    const XsStep second = xs_next(first.next, params);
    CHECK(second.output == 0x800041);
    CHECK(second.next == XsState{0x800041, 0x800041});

    const XsStep third = xs_next(second.next, params);
    CHECK(third.output == 0x1000082);
}

TEST_CASE("linearized output map") {
    const XsParams params = XsParams::preset(1);
    const XsStep first = xs_linearized_next({1, 0}, params);
    CHECK(first.output == 1);
    const XsStep second = xs_linearized_next(first.next, params);
    CHECK(second.output == 0x800041);

    // the state transition is shared with the additive variant
    CHECK(first.next == xs_next({1, 0}, params).next);
}

TEST_CASE("LSB of additive and xor outputs always agree") {
    std::mt19937_64 rng(7);
    const XsParams params = XsParams::preset(2);
    for (int i = 0; i < 10000; ++i) {
        const XsState st{rng(), rng()};
        CHECK(((xs_next(st, params).output ^
                xs_linearized_next(st, params).output) & 1) == 0);
    }
}

TEST_CASE("state transition is F2-linear") {
    std::mt19937_64 rng(8);
    for (const XsParams& params : XsParams::recommended()) {
        for (int i = 0; i < 10000 / 8; ++i) {
            const XsState s{rng(), rng()};
            const XsState t{rng(), rng()};
            const XsState sum{s.s0 ^ t.s0, s.s1 ^ t.s1};
            const XsState step_s = xs_transition(s, params);
            const XsState step_t = xs_transition(t, params);
            const XsState step_sum = xs_transition(sum, params);
            CHECK(step_sum.s0 == (step_s.s0 ^ step_t.s0));
            CHECK(step_sum.s1 == (step_s.s1 ^ step_t.s1));
        }
    }
}

TEST_CASE("linearized recursion holds on the top min{b,c} bits") {
    for (const XsParams& params : XsParams::recommended()) {
        const int m = params.min_bc();
        LinearizedXorshift128Plus gen(params, 424242);
        Word64 o0 = gen.next();
        Word64 o1 = gen.next();
        for (int i = 0; i < 100000; ++i) {
            const Word64 o2 = gen.next();
            REQUIRE(msb_eq(o2, (o0 ^ (o0 << params.a)) ^ o1, m));
            o0 = o1;
            o1 = o2;
        }
    }
}

TEST_CASE("seeding") {
    CHECK(seed_state(12345) == seed_state(12345));
    const XsState zero_seeded = seed_state(0);
    CHECK(!(zero_seeded.s0 == 0 && zero_seeded.s1 == 0));

    std::set<std::pair<Word64, Word64>> seen;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const XsState st = seed_state(seed);
        CHECK(!(st.s0 == 0 && st.s1 == 0));
        seen.insert({st.s0, st.s1});
    }
    CHECK(seen.size() == 1000);

    CHECK_THROWS_AS(Xorshift128Plus(XsParams::preset(1), XsState{0, 0}),
                    std::invalid_argument);
}

TEST_CASE("streams are reproducible") {
    Xorshift128Plus a(XsParams::preset(4), 99);
    Xorshift128Plus b(XsParams::preset(4), 99);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next() == b.next());

    Xorshift128Plus c(XsParams::preset(4), 100);
    bool all_equal = true;
    Xorshift128Plus d(XsParams::preset(4), 99);
    for (int i = 0; i < 16; ++i) all_equal = all_equal && (c.next() == d.next());
    CHECK_FALSE(all_equal);
}

TEST_CASE("control generator basics") {
    SplitMix64 a(5);
    SplitMix64 b(5);
    CHECK(a.next() == b.next());

    SplitMix64 gen(20260810);
    double sum = 0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i)
        sum += std::ldexp(static_cast<double>(gen.next()), -64);
    const double mean = sum / n;
    CHECK(std::fabs(mean - 0.5) <= 0.002);
}

TEST_CASE("generator spec parsing") {
    const GeneratorSpec preset = GeneratorSpec::parse("xs:preset-3");
    CHECK(preset.kind == GeneratorSpec::Kind::xorshift);
    CHECK(preset.params == XsParams::preset(3));

    const GeneratorSpec custom = GeneratorSpec::parse("xs:23,17,26");
    CHECK(custom.params == XsParams{23, 17, 26});
    CHECK(custom.label() == "xorshift128+(23,17,26)");

    CHECK(GeneratorSpec::parse("control").kind == GeneratorSpec::Kind::control);

    CHECK_THROWS_AS(GeneratorSpec::parse("mt19937"), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::parse("xs:preset-9"), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::parse("xs:23,17"), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::parse("xs:0,17,26"), std::invalid_argument);
}

TEST_CASE("seed schedule strides are distinct") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t r = 0; r < 8; ++r)
        for (std::uint64_t j = 0; j < 8; ++j)
            seeds.insert(partition_seed(run_seed(1, r), j));
    CHECK(seeds.size() == 64);
}

TEST_SUITE_END();
