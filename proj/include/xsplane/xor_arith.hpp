#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "xsplane/rational.hpp"

namespace xsplane {

// Sign pattern (p, q, r), each +1 or -1, for xor-vs-signed-sum relations
// of the form u^v^w == p*u + q*v + r*w.
struct SignTriple {
    int p = 1, q = 1, r = 1;

    void validate() const;
    bool two_plus_one_minus() const { return p + q + r == 1; }
    static const std::array<SignTriple, 8>& all();
    std::string str() const;  // "(-1,+1,+1)"
    bool operator==(const SignTriple&) const = default;
};

enum class PairRelation { sum, sub, rsub };

// Whether x^y equals x+y, x-y or y-x for n-bit x, y. Non-modular mode
// compares unbounded integers (x-y may be negative); modular mode
// compares mod 2^n. Evaluated both arithmetically and through the
// digitwise carry/borrow characterization; the two must agree.
bool pair_relation(std::uint64_t x, std::uint64_t y, int n, PairRelation rel,
                   bool modular);

// Counts over all 4^n pairs for one comparison family.
//   a, b, c     : xor == sum / difference / reverse difference
//   ab, bc, ca  : pairwise intersections
//   abc         : triple intersection
//   any         : |A ∪ B ∪ C|
struct PairCounts {
    std::uint64_t a = 0, b = 0, c = 0;
    std::uint64_t ab = 0, bc = 0, ca = 0;
    std::uint64_t abc = 0;
    std::uint64_t any = 0;
};

struct PairCountReport {
    int n = 0;
    PairCounts exact;    // plain integer equality
    PairCounts modular;  // equality mod 2^n
};

// Exhaustive enumeration of all 4^n pairs; n in [1, 12].
PairCountReport pair_counts(int n);

// Closed forms: 3^n / 2^n / 1 / 3*3^n - 3*2^n + 1, and the mod-2^n
// family with the top digit unconstrained: 4*3^{n-1} / 4*2^{n-1} / 4 /
// 4*(3*3^{n-1} - 3*2^{n-1} + 1).
PairCounts pair_counts_closed_form(int n, bool modular);

// Whether u^v^w equals p*u + q*v + r*w for n-bit inputs, as unbounded
// integers or mod 2^n. Cross-checked against the digitwise condition
// p*u_i + q*v_i + r*w_i in {0,1} (digits 1..n, or 1..n-1 when modular).
bool triple_relation(std::uint64_t u, std::uint64_t v, std::uint64_t w,
                     const SignTriple& signs, int n, bool modular);

// Exhaustive count over all 8^n triples; n in [1, 8].
std::uint64_t triple_count(int n, const SignTriple& signs, bool modular);

// k^n where k is the per-digit count (4 for all-plus and one-plus, 6 for
// two-plus-one-minus, 1 for all-minus); modular counts are 8*k^{n-1}.
std::uint64_t triple_count_closed_form(int n, const SignTriple& signs,
                                       bool modular);

// Joint condition over quadruples (u, v, w, s) of n-bit integers with
// t := u^v^w:
//   A1: u^v^w == p*u + q*v + r*w  mod 2^n
//   A2: w^s^t == p*w + q*s + r*t  mod 2^n
struct JointConditionCount {
    std::uint64_t count = 0;  // quadruples satisfying A1 and A2
    std::uint64_t total = 0;  // 16^n
    Rational probability() const { return Rational(count, total); }
};

// Exhaustive enumeration over all 16^n quadruples; n in [1, 6]. Only the
// three two-plus-one-minus sign patterns are supported.
JointConditionCount joint_condition_count(int n, const SignTriple& signs);

// Closed form verified by exhaustive enumeration for every n in range:
// (5/8)^{n-1} for (-1,+1,+1); (1/2)^{n-1} for (+1,-1,+1) and (+1,+1,-1).
Rational joint_condition_closed_form(int n, const SignTriple& signs);

}  // namespace xsplane
