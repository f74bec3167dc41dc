#pragma once

#include <cstdint>
#include <stdexcept>

namespace xsplane {

// A 64-bit word, read both as an unsigned integer mod 2^64 and as a row
// vector over F2. Bit indexing convention everywhere in this project:
// bit 1 is the LSB (coefficient of 2^0), bit 64 is the MSB.
using Word64 = std::uint64_t;

inline constexpr int kWordBits = 64;

// Shift-matrix action on a word. `left`/`right` are the plain shift
// matrices L^k / R^k; `xor_left`/`xor_right` are I+L^k / I+R^k.
// Note that I+L^0 = I+R^0 is the zero matrix, not the identity.
enum class ShiftKind { left, right, xor_left, xor_right };

namespace detail {

inline void check_shift_amount(int amount) {
    if (amount < 0 || amount > kWordBits)
        throw std::invalid_argument("shift amount must be in [0, 64]");
}

inline void check_msb_depth(int n) {
    if (n < 1 || n > kWordBits)
        throw std::invalid_argument("MSB depth n must be in [1, 64]");
}

// Shifts by the full word width are well defined (zero) here.
inline Word64 shl(Word64 u, int k) { return k >= kWordBits ? 0 : u << k; }
inline Word64 shr(Word64 u, int k) { return k >= kWordBits ? 0 : u >> k; }

}  // namespace detail

inline Word64 apply_shift(Word64 u, ShiftKind kind, int amount) {
    detail::check_shift_amount(amount);
    switch (kind) {
        case ShiftKind::left: return detail::shl(u, amount);
        case ShiftKind::right: return detail::shr(u, amount);
        case ShiftKind::xor_left: return u ^ detail::shl(u, amount);
        case ShiftKind::xor_right: return u ^ detail::shr(u, amount);
    }
    throw std::invalid_argument("unknown shift kind");
}

// MSB truncation of a word at depth n:
//   kept = [u]_n  (top n bits in place, low 64-n bits zeroed)
//   top  = (u)_n  (the n-bit slice itself)
//   rest = u - [u]_n, always < 2^{64-n}
struct MsbDecomposition {
    Word64 kept = 0;
    std::uint64_t top = 0;
    std::uint64_t rest = 0;
    int n = 0;
};

// Unchecked mask helpers for hot loops; callers guarantee 1 <= n <= 64.
inline Word64 msb_rest_mask(int n) {
    return n == kWordBits ? 0 : (Word64{1} << (kWordBits - n)) - 1;
}
inline Word64 msb_kept(Word64 u, int n) { return u & ~msb_rest_mask(n); }
inline std::uint64_t msb_top(Word64 u, int n) { return u >> (kWordBits - n); }
inline std::uint64_t msb_rest(Word64 u, int n) { return u & msb_rest_mask(n); }

inline MsbDecomposition msb_decompose(Word64 u, int n) {
    detail::check_msb_depth(n);
    return {msb_kept(u, n), msb_top(u, n), msb_rest(u, n), n};
}

// True iff the n most significant bits of u and v coincide.
inline bool msb_eq(Word64 u, Word64 v, int n) {
    detail::check_msb_depth(n);
    return msb_top(u ^ v, n) == 0;
}

}  // namespace xsplane
