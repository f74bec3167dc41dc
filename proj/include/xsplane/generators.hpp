#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "xsplane/f2word.hpp"

namespace xsplane {

// Shift triple (a, b, c) of the state recursion
//   s_{i+2} = s_i (I+L^a)(I+R^b)  xor  s_{i+1} (I+R^c).
struct XsParams {
    int a = 0, b = 0, c = 0;

    // The eight published parameter sets that survive BigCrush.
    static const std::array<XsParams, 8>& recommended();
    static XsParams preset(int k);  // k in [1, 8]

    void validate() const;  // each shift in [1, 63]
    int min_bc() const { return b < c ? b : c; }

    std::string str() const;  // "(23,17,26)"
    bool operator==(const XsParams&) const = default;
};

struct XsState {
    Word64 s0 = 0, s1 = 0;
    bool operator==(const XsState&) const = default;
};

// One application of the recursion. Shift amounts must be in [1, 63].
inline XsState xs_transition(XsState s, const XsParams& p) {
    Word64 t = s.s0 ^ (s.s0 << p.a);
    t ^= t >> p.b;
    t ^= s.s1 ^ (s.s1 >> p.c);
    return {s.s1, t};
}

struct XsStep {
    Word64 output;
    XsState next;
};

// Standard output map: o_i = s_i + s_{i+1} mod 2^64.
inline XsStep xs_next(XsState s, const XsParams& p) {
    return {s.s0 + s.s1, xs_transition(s, p)};
}

// Linearized variant: same transition, output o'_i = s_i xor s_{i+1}.
inline XsStep xs_linearized_next(XsState s, const XsParams& p) {
    return {s.s0 ^ s.s1, xs_transition(s, p)};
}

// SplitMix64: Weyl increment plus avalanche mix. Serves two roles here:
// deterministic seed expansion, and the control generator (its output
// map is not F2-linear, and it has no plane structure to speak of).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

using ControlGenerator = SplitMix64;

// Expands a 64-bit seed into a full state with two SplitMix64 draws
// (seed -> s0, next draw -> s1). The all-zero state is a fixed point of
// the recursion, so it is remapped to (0, 0x9E3779B97F4A7C15).
XsState seed_state(std::uint64_t seed);

class Xorshift128Plus {
  public:
    Xorshift128Plus(const XsParams& params, std::uint64_t seed);
    Xorshift128Plus(const XsParams& params, XsState state);

    std::uint64_t next() {
        Word64 out = state_.s0 + state_.s1;
        state_ = xs_transition(state_, params_);
        return out;
    }

    const XsParams& params() const { return params_; }
    const XsState& state() const { return state_; }

  private:
    XsParams params_;
    XsState state_;
};

class LinearizedXorshift128Plus {
  public:
    LinearizedXorshift128Plus(const XsParams& params, std::uint64_t seed);
    LinearizedXorshift128Plus(const XsParams& params, XsState state);

    std::uint64_t next() {
        Word64 out = state_.s0 ^ state_.s1;
        state_ = xs_transition(state_, params_);
        return out;
    }

    const XsParams& params() const { return params_; }
    const XsState& state() const { return state_; }

  private:
    XsParams params_;
    XsState state_;
};

// Which stream to run an experiment against.
struct GeneratorSpec {
    enum class Kind { xorshift, control };

    Kind kind = Kind::xorshift;
    XsParams params{23, 17, 26};

    std::string label() const;

    // Accepts "xs:preset-K" (K in 1..8), "xs:a,b,c", or "control".
    static GeneratorSpec parse(const std::string& text);
};

// Seed schedule for repeated runs and for partitioned scans: every run
// and every partition derives a distinct stream deterministically from
// the user seed. The strides are arbitrary odd constants.
inline std::uint64_t run_seed(std::uint64_t base, std::uint64_t run) {
    return base + run * 0xA0761D6478BD642FULL;
}
inline std::uint64_t partition_seed(std::uint64_t run, std::uint64_t part) {
    return run + part * 0xE7037ED1A0B428DBULL;
}

}  // namespace xsplane
