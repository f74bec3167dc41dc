#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "xsplane/generators.hpp"
#include "xsplane/rational.hpp"
#include "xsplane/xor_arith.hpp"

namespace xsplane {

// One of the eight planes z = (q + r*2^a)x + p*y mod 2^64 that
// consecutive output triples concentrate on.
struct PlaneSpec {
    SignTriple signs;
    int a = 23;

    Word64 coeff_x() const;  // (q + r*2^a) mod 2^64
    Word64 coeff_y() const;  // p mod 2^64
    std::string equation() const;

    static std::array<PlaneSpec, 8> all_planes(int a);
};

// (z - coeff_x*x - coeff_y*y) mod 2^64, mapped to the symmetric
// representative in [-2^63, 2^63). |residual| is the distance to the
// nearest multiple of 2^64.
inline std::int64_t plane_residual(Word64 x, Word64 y, Word64 z,
                                   const PlaneSpec& plane) {
    return static_cast<std::int64_t>(z - plane.coeff_x() * x -
                                     plane.coeff_y() * y);
}

inline std::uint64_t residual_magnitude(std::int64_t residual) {
    return residual < 0 ? 0 - static_cast<std::uint64_t>(residual)
                        : static_cast<std::uint64_t>(residual);
}

// The conditional error bound 4(2^{64-n} - 1). Wider than 64 bits for
// n = 1, where it exceeds every representable distance.
inline unsigned __int128 residual_bound(int n) {
    detail::check_msb_depth(n);
    return 4 * ((static_cast<unsigned __int128>(1) << (64 - n)) - 1);
}

struct ConditionPair {
    bool a1 = false, a2 = false;
    bool both() const { return a1 && a2; }
};

// The two MSB-level equalities under which the residual bound holds,
// evaluated in exact arithmetic mod 2^64:
//   A1: [s_{i+1}]_n ^ [s_i]_n ^ [s_i L^a]_n
//         == p[s_{i+1}]_n + q[s_i]_n + r[s_i L^a]_n
//   A2: the same with indices shifted by one.
// Requires 1 <= n <= min{b, c}.
ConditionPair conditions_hold(Word64 s_i, Word64 s_i1, const XsParams& params,
                              int n, const SignTriple& signs);

// The eight error components of the conditional residual identity, each
// in [0, 2^{64-n}). When A1 and A2 hold,
//   residual == -p(e1+e4) - q(e2+e5) - r(e3+e6) + e7 + e8  mod 2^64.
struct EpsilonDecomposition {
    std::array<std::uint64_t, 8> eps{};
    int n = 0;
};
EpsilonDecomposition epsilon_decomposition(Word64 s_i, Word64 s_i1,
                                           const XsParams& params, int n);

// Checks the identity above for one state pair. Vacuously true when the
// conditions do not both hold.
bool residual_identity_holds(Word64 s_i, Word64 s_i1, const XsParams& params,
                             int n, const SignTriple& signs);

// Probability that A1 and A2 both hold at depth n for uniform states,
// per sign pattern: (5/8)^{n-1} for (+1,-1,+1) and (1/2)^{n-1} for
// (-1,+1,+1) and (+1,+1,-1); nullopt for the five patterns with no
// derived closed form.
//
// The sign slots here follow the plane equation (p on y, q on x, r on
// 2^a x), so they attach to (s_{i+1}, s_i, s_i L^a). The quadruple
// formulation behind joint_condition_closed_form uses slot order
// (u, v, w) = (s_i, s_i L^a, s_{i+1}); translating is the cyclic map
// (p,q,r) -> (q,r,p). Both assignments are verified by exhaustive
// enumeration and by trajectory measurement in the test suite.
std::optional<Rational> predicted_probability(int n, const SignTriple& signs);

struct PlaneStats {
    PlaneSpec plane;
    std::uint64_t conditions_met = 0;    // triples with A1 and A2
    std::uint64_t near_plane = 0;        // |residual| <= bound, unconditional
    std::uint64_t bound_violations = 0;  // conditions met, bound exceeded
    std::uint64_t max_conditional_residual = 0;
    std::optional<Rational> predicted;   // closed form, where derived
};

struct ConcentrationReport {
    XsParams params;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    int n = 5;
    bool overlapping = false;
    unsigned __int128 bound = 0;
    std::uint64_t near_any = 0;  // triples near at least one plane
    std::array<PlaneStats, 8> planes{};
};

// Streams `samples` output triples (non-overlapping by default) and
// tallies condition frequency, bound compliance and near-plane counts
// for all eight planes. Requires 1 <= n <= min{b, c}. The predicted
// column is filled only where a closed form exists and n <= a.
ConcentrationReport scan_concentration(const XsParams& params,
                                       std::uint64_t seed,
                                       std::uint64_t samples, int n,
                                       bool overlapping = false,
                                       int threads = 1);

// Near-plane tallies for an arbitrary generator; the plane family needs
// a shift amount, which xorshift specs take from their own parameters.
struct NearPlaneReport {
    std::string generator;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    int n = 5;
    int a = 23;
    unsigned __int128 bound = 0;
    std::array<std::uint64_t, 8> near_per_plane{};
    std::uint64_t near_any = 0;
};
NearPlaneReport scan_near_planes(const GeneratorSpec& spec, std::uint64_t seed,
                                 std::uint64_t samples, int n, int a,
                                 int threads = 1);

}  // namespace xsplane
