#include "xsplane/generators.hpp"

#include <charconv>
#include <stdexcept>

namespace xsplane {

const std::array<XsParams, 8>& XsParams::recommended() {
    static const std::array<XsParams, 8> sets = {{
        {23, 17, 26},
        {26, 19, 5},
        {23, 18, 5},
        {41, 11, 34},
        {23, 31, 18},
        {21, 23, 28},
        {21, 16, 37},
        {20, 21, 11},
    }};
    return sets;
}

XsParams XsParams::preset(int k) {
    if (k < 1 || k > 8)
        throw std::invalid_argument("preset index must be in [1, 8]");
    return recommended()[static_cast<std::size_t>(k - 1)];
}

void XsParams::validate() const {
    auto in_range = [](int v) { return v >= 1 && v <= 63; };
    if (!in_range(a) || !in_range(b) || !in_range(c))
        throw std::invalid_argument("shift amounts must be in [1, 63]");
}

std::string XsParams::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + ")";
}

XsState seed_state(std::uint64_t seed) {
    SplitMix64 mixer(seed);
    XsState state{mixer.next(), mixer.next()};
    if (state.s0 == 0 && state.s1 == 0) state.s1 = 0x9E3779B97F4A7C15ULL;
    return state;
}

Xorshift128Plus::Xorshift128Plus(const XsParams& params, std::uint64_t seed)
    : params_(params), state_(seed_state(seed)) {
    params_.validate();
}

Xorshift128Plus::Xorshift128Plus(const XsParams& params, XsState state)
    : params_(params), state_(state) {
    params_.validate();
    if (state_.s0 == 0 && state_.s1 == 0)
        throw std::invalid_argument("the all-zero state is a fixed point");
}

LinearizedXorshift128Plus::LinearizedXorshift128Plus(const XsParams& params,
                                                     std::uint64_t seed)
    : params_(params), state_(seed_state(seed)) {
    params_.validate();
}

LinearizedXorshift128Plus::LinearizedXorshift128Plus(const XsParams& params,
                                                     XsState state)
    : params_(params), state_(state) {
    params_.validate();
    if (state_.s0 == 0 && state_.s1 == 0)
        throw std::invalid_argument("the all-zero state is a fixed point");
}

std::string GeneratorSpec::label() const {
    if (kind == Kind::control) return "control";
    return "xorshift128+" + params.str();
}

namespace {

int parse_int(std::string_view text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("bad integer in generator spec: " +
                                    std::string(text));
    return value;
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
    if (text == "control") return {Kind::control, {}};
    if (text.rfind("xs:", 0) != 0)
        throw std::invalid_argument(
            "generator spec must be 'control', 'xs:preset-K' or 'xs:a,b,c'");
    std::string body = text.substr(3);
    if (body.rfind("preset-", 0) == 0)
        return {Kind::xorshift, XsParams::preset(parse_int(body.substr(7)))};
    auto first = body.find(',');
    auto second = body.find(',', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::invalid_argument("expected 'xs:a,b,c' in generator spec");
    XsParams params{parse_int(std::string_view(body).substr(0, first)),
                    parse_int(std::string_view(body).substr(first + 1, second - first - 1)),
                    parse_int(std::string_view(body).substr(second + 1))};
    params.validate();
    return {Kind::xorshift, params};
}

}  // namespace xsplane
