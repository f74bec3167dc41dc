#include <doctest.h>

#include <random>

#include "xsplane/f2word.hpp"

using namespace xsplane;

TEST_SUITE_BEGIN("f2word");

TEST_CASE("shift examples") {
    CHECK(apply_shift(1, ShiftKind::left, 23) == 0x800000);
    CHECK(apply_shift(1, ShiftKind::xor_left, 23) == 0x800001);
    CHECK(apply_shift(0x800001, ShiftKind::xor_right, 17) == 0x800041);
    CHECK(apply_shift(0xDEADBEEF, ShiftKind::left, 0) == 0xDEADBEEF);
    CHECK(apply_shift(0xDEADBEEF, ShiftKind::right, 0) == 0xDEADBEEF);
    // I+L^0 = I+R^0 is the zero matrix
    CHECK(apply_shift(0xDEADBEEF, ShiftKind::xor_left, 0) == 0);
    // full-width shifts annihilate, so the xor forms become the identity
    CHECK(apply_shift(0xDEADBEEF, ShiftKind::left, 64) == 0);
    CHECK(apply_shift(0xDEADBEEF, ShiftKind::xor_right, 64) == 0xDEADBEEF);
}

TEST_CASE("shift amount range errors") {
    CHECK_THROWS_AS(apply_shift(1, ShiftKind::left, -1), std::invalid_argument);
    CHECK_THROWS_AS(apply_shift(1, ShiftKind::xor_right, 65),
                    std::invalid_argument);
}

TEST_CASE("shift kinds are F2-linear") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Word64 u = rng();
        const Word64 v = rng();
        const int amount = static_cast<int>(rng() % 65);
        for (ShiftKind kind : {ShiftKind::left, ShiftKind::right,
                               ShiftKind::xor_left, ShiftKind::xor_right}) {
            CHECK(apply_shift(u ^ v, kind, amount) ==
                  (apply_shift(u, kind, amount) ^ apply_shift(v, kind, amount)));
        }
    }
}

TEST_CASE("msb decomposition examples") {
    const MsbDecomposition all_ones = msb_decompose(~Word64{0}, 4);
    CHECK(all_ones.kept == 0xF000000000000000ULL);
    CHECK(all_ones.top == 0xF);
    CHECK(all_ones.rest == 0x0FFFFFFFFFFFFFFFULL);

    const Word64 u = 0x123456789ABCDEF0ULL;
    const MsbDecomposition full = msb_decompose(u, 64);
    CHECK(full.kept == u);
    CHECK(full.top == u);
    CHECK(full.rest == 0);

    const MsbDecomposition top_bit = msb_decompose(Word64{1} << 63, 1);
    CHECK(top_bit.kept == Word64{1} << 63);
    CHECK(top_bit.top == 1);
    CHECK(top_bit.rest == 0);

    CHECK_THROWS_AS(msb_decompose(u, 0), std::invalid_argument);
    CHECK_THROWS_AS(msb_decompose(u, 65), std::invalid_argument);
}

TEST_CASE("decomposition identities over random words") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 2000; ++i) {
        const Word64 u = rng();
        const Word64 v = rng();
        for (int n = 1; n <= 64; ++n) {
            const MsbDecomposition d = msb_decompose(u, n);
            CHECK(d.kept + d.rest == u);
            if (n < 64) CHECK(d.rest < (Word64{1} << (64 - n)));
            CHECK(msb_rest(d.kept, n) == 0);
            CHECK(d.top == d.kept >> (64 - n));
            // [u^v]_n == [u]_n ^ [v]_n
            CHECK(msb_kept(u ^ v, n) == (msb_kept(u, n) ^ msb_kept(v, n)));
        }
    }
}

TEST_CASE("msb_eq basics") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 200; ++i) {
        const Word64 u = rng();
        for (int n = 1; n <= 64; ++n) CHECK(msb_eq(u, u, n));
        // flipping the LSB never disturbs the top 63 bits
        CHECK(msb_eq(u, u ^ 1, 63));
    }
    CHECK_FALSE(msb_eq(Word64{1} << 63, 0, 1));
    CHECK_THROWS_AS(msb_eq(1, 2, 0), std::invalid_argument);
}

TEST_CASE("right shifts by at least n keep the top n bits") {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 500; ++i) {
        const Word64 u = rng();
        for (int n = 1; n <= 16; ++n)
            for (int b = n; b <= 64; b += 7)
                CHECK(msb_eq(apply_shift(u, ShiftKind::xor_right, b), u, n));
    }
}

TEST_SUITE_END();
