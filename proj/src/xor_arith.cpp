#include "xsplane/xor_arith.hpp"

#include <stdexcept>

namespace xsplane {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

void check_bit_width(int n, int max_n) {
    if (n < 1 || n > max_n)
        throw std::invalid_argument("bit width n out of range");
}

std::uint64_t bit_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t result = 1;
    for (int i = 0; i < exp; ++i) result *= base;
    return result;
}

// Bit i of the result is set iff the digit pair (x_i, y_i) matches
// (xb, yb).
std::uint64_t pair_minterm(std::uint64_t x, std::uint64_t y, int xb, int yb) {
    return (xb ? x : ~x) & (yb ? y : ~y);
}

// Digit combos (u_i, v_i, w_i) violating p*u_i + q*v_i + r*w_i in {0,1},
// one bit per combo index ub + 2*vb + 4*wb.
std::uint8_t forbidden_combo_table(const SignTriple& s) {
    std::uint8_t table = 0;
    for (int combo = 0; combo < 8; ++combo) {
        const int value = s.p * (combo & 1) + s.q * ((combo >> 1) & 1) +
                          s.r * ((combo >> 2) & 1);
        if (value != 0 && value != 1) table |= static_cast<std::uint8_t>(1 << combo);
    }
    return table;
}

std::uint64_t forbidden_digit_positions(std::uint64_t u, std::uint64_t v,
                                        std::uint64_t w, std::uint8_t table) {
    std::uint64_t forbidden = 0;
    for (int combo = 0; combo < 8; ++combo) {
        if (!(table & (1 << combo))) continue;
        forbidden |= (combo & 1 ? u : ~u) & (combo & 2 ? v : ~v) &
                     (combo & 4 ? w : ~w);
    }
    return forbidden;
}

}  // namespace

void SignTriple::validate() const {
    auto ok = [](int s) { return s == 1 || s == -1; };
    if (!ok(p) || !ok(q) || !ok(r))
        throw std::invalid_argument("signs must be +1 or -1");
}

const std::array<SignTriple, 8>& SignTriple::all() {
    static const std::array<SignTriple, 8> triples = {{
        {+1, +1, +1},
        {-1, +1, +1},
        {+1, -1, +1},
        {+1, +1, -1},
        {-1, -1, +1},
        {-1, +1, -1},
        {+1, -1, -1},
        {-1, -1, -1},
    }};
    return triples;
}

std::string SignTriple::str() const {
    auto sgn = [](int s) { return s > 0 ? "+1" : "-1"; };
    return std::string("(") + sgn(p) + "," + sgn(q) + "," + sgn(r) + ")";
}

bool pair_relation(std::uint64_t x, std::uint64_t y, int n, PairRelation rel,
                   bool modular) {
    check_bit_width(n, 64);
    const std::uint64_t mask = bit_mask(n);
    if ((x & ~mask) || (y & ~mask))
        throw std::invalid_argument("inputs must be n-bit integers");

    const std::uint64_t xorv = x ^ y;

    bool arithmetic = false;
    if (modular) {
        std::uint64_t rhs = 0;
        switch (rel) {
            case PairRelation::sum: rhs = x + y; break;
            case PairRelation::sub: rhs = x - y; break;
            case PairRelation::rsub: rhs = y - x; break;
        }
        arithmetic = ((xorv - rhs) & mask) == 0;
    } else {
        switch (rel) {
            case PairRelation::sum:
                arithmetic = static_cast<u128>(xorv) ==
                             static_cast<u128>(x) + static_cast<u128>(y);
                break;
            case PairRelation::sub:
                arithmetic = static_cast<i128>(xorv) ==
                             static_cast<i128>(x) - static_cast<i128>(y);
                break;
            case PairRelation::rsub:
                arithmetic = static_cast<i128>(xorv) ==
                             static_cast<i128>(y) - static_cast<i128>(x);
                break;
        }
    }

    // Digitwise characterization: no carry (sum forbids (1,1)) and no
    // borrow (x-y forbids (0,1), y-x forbids (1,0)); the top digit is
    // unconstrained in modular mode.
    const std::uint64_t digit_mask = modular ? (mask >> 1) : mask;
    std::uint64_t violations = 0;
    switch (rel) {
        case PairRelation::sum: violations = pair_minterm(x, y, 1, 1); break;
        case PairRelation::sub: violations = pair_minterm(x, y, 0, 1); break;
        case PairRelation::rsub: violations = pair_minterm(x, y, 1, 0); break;
    }
    const bool digitwise = (violations & digit_mask) == 0;

    if (arithmetic != digitwise)
        throw std::logic_error("pair predicate routes disagree");
    return arithmetic;
}

PairCountReport pair_counts(int n) {
    check_bit_width(n, 12);
    const std::uint64_t limit = std::uint64_t{1} << n;

    PairCountReport report;
    report.n = n;
    for (std::uint64_t x = 0; x < limit; ++x) {
        for (std::uint64_t y = 0; y < limit; ++y) {
            for (bool modular : {false, true}) {
                PairCounts& counts = modular ? report.modular : report.exact;
                const bool in_a = pair_relation(x, y, n, PairRelation::sum, modular);
                const bool in_b = pair_relation(x, y, n, PairRelation::sub, modular);
                const bool in_c = pair_relation(x, y, n, PairRelation::rsub, modular);
                counts.a += in_a;
                counts.b += in_b;
                counts.c += in_c;
                counts.ab += in_a && in_b;
                counts.bc += in_b && in_c;
                counts.ca += in_c && in_a;
                counts.abc += in_a && in_b && in_c;
                counts.any += in_a || in_b || in_c;
            }
        }
    }
    return report;
}

PairCounts pair_counts_closed_form(int n, bool modular) {
    check_bit_width(n, 64);
    PairCounts counts;
    if (!modular) {
        counts.a = counts.b = counts.c = pow_u64(3, n);
        counts.ab = counts.bc = counts.ca = pow_u64(2, n);
        counts.abc = 1;
        counts.any = 3 * pow_u64(3, n) - 3 * pow_u64(2, n) + 1;
    } else {
        counts.a = counts.b = counts.c = 4 * pow_u64(3, n - 1);
        counts.ab = counts.bc = counts.ca = 4 * pow_u64(2, n - 1);
        counts.abc = 4;
        counts.any = 4 * (3 * pow_u64(3, n - 1) - 3 * pow_u64(2, n - 1) + 1);
    }
    return counts;
}

bool triple_relation(std::uint64_t u, std::uint64_t v, std::uint64_t w,
                     const SignTriple& signs, int n, bool modular) {
    signs.validate();
    check_bit_width(n, 64);
    const std::uint64_t mask = bit_mask(n);
    if ((u & ~mask) || (v & ~mask) || (w & ~mask))
        throw std::invalid_argument("inputs must be n-bit integers");

    const std::uint64_t xorv = u ^ v ^ w;

    bool arithmetic = false;
    if (modular) {
        std::uint64_t rhs = 0;
        rhs += signs.p == 1 ? u : 0 - u;
        rhs += signs.q == 1 ? v : 0 - v;
        rhs += signs.r == 1 ? w : 0 - w;
        arithmetic = ((xorv - rhs) & mask) == 0;
    } else {
        const i128 rhs = static_cast<i128>(signs.p) * static_cast<i128>(u) +
                         static_cast<i128>(signs.q) * static_cast<i128>(v) +
                         static_cast<i128>(signs.r) * static_cast<i128>(w);
        arithmetic = static_cast<i128>(xorv) == rhs;
    }

    // The digitwise carry/borrow rule characterizes the equality in every
    // case except all-minus signs mod 2^n, where borrows can chain deeper
    // than one digit (u=v=w=1, n=2: xor 1 == -3 mod 4, yet the digit value
    // -3 is outside {0,1}). Everywhere else the routes must agree.
    const bool all_minus = signs.p == -1 && signs.q == -1 && signs.r == -1;
    if (!(modular && all_minus)) {
        const std::uint64_t digit_mask = modular ? (mask >> 1) : mask;
        const std::uint8_t table = forbidden_combo_table(signs);
        const bool digitwise =
            (forbidden_digit_positions(u, v, w, table) & digit_mask) == 0;
        if (arithmetic != digitwise)
            throw std::logic_error("triple predicate routes disagree");
    }
    return arithmetic;
}

std::uint64_t triple_count(int n, const SignTriple& signs, bool modular) {
    signs.validate();
    check_bit_width(n, 8);
    const std::uint64_t limit = std::uint64_t{1} << n;

    std::uint64_t count = 0;
    for (std::uint64_t u = 0; u < limit; ++u)
        for (std::uint64_t v = 0; v < limit; ++v)
            for (std::uint64_t w = 0; w < limit; ++w)
                count += triple_relation(u, v, w, signs, n, modular);
    return count;
}

std::uint64_t triple_count_closed_form(int n, const SignTriple& signs,
                                       bool modular) {
    signs.validate();
    check_bit_width(n, 20);
    if (modular && signs.p == -1 && signs.q == -1 && signs.r == -1)
        throw std::domain_error(
            "no per-digit closed form for all-minus signs mod 2^n");
    int allowed = 0;
    const std::uint8_t table = forbidden_combo_table(signs);
    for (int combo = 0; combo < 8; ++combo)
        if (!(table & (1 << combo))) ++allowed;
    return modular ? 8 * pow_u64(static_cast<std::uint64_t>(allowed), n - 1)
                   : pow_u64(static_cast<std::uint64_t>(allowed), n);
}

JointConditionCount joint_condition_count(int n, const SignTriple& signs) {
    signs.validate();
    if (!signs.two_plus_one_minus())
        throw std::domain_error(
            "joint condition counts are only derived for sign patterns with "
            "two +1 and one -1");
    check_bit_width(n, 6);
    const std::uint64_t limit = std::uint64_t{1} << n;

    JointConditionCount result;
    result.total = pow_u64(16, n);
    for (std::uint64_t u = 0; u < limit; ++u) {
        for (std::uint64_t v = 0; v < limit; ++v) {
            for (std::uint64_t w = 0; w < limit; ++w) {
                if (!triple_relation(u, v, w, signs, n, true)) continue;
                const std::uint64_t t = u ^ v ^ w;
                for (std::uint64_t s = 0; s < limit; ++s)
                    result.count += triple_relation(w, s, t, signs, n, true);
            }
        }
    }
    return result;
}

Rational joint_condition_closed_form(int n, const SignTriple& signs) {
    signs.validate();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (signs == SignTriple{-1, +1, +1})
        return pow_rational(Rational(5, 8), static_cast<unsigned>(n - 1));
    if (signs == SignTriple{+1, -1, +1} || signs == SignTriple{+1, +1, -1})
        return pow_rational(Rational(1, 2), static_cast<unsigned>(n - 1));
    throw std::domain_error(
        "no closed form for this sign pattern; only two-plus-one-minus "
        "patterns are covered");
}

}  // namespace xsplane
