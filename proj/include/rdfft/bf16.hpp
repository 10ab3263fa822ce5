// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

namespace rdfft {

/// 16-bit brain float used as a storage format only. Arithmetic widens to
/// float; stores round to nearest even.
struct bf16 {
    std::uint16_t bits = 0;

    constexpr bf16() = default;
    explicit bf16(float f) noexcept : bits(round_bits(f)) {}

    explicit operator float() const noexcept {
        return std::bit_cast<float>(static_cast<std::uint32_t>(bits) << 16);
    }

    static constexpr bf16 from_bits(std::uint16_t b) noexcept {
        bf16 r;
        r.bits = b;
        return r;
    }

    friend constexpr bool operator==(bf16 a, bf16 b) noexcept { return a.bits == b.bits; }

private:
    static std::uint16_t round_bits(float f) noexcept {
        auto u = std::bit_cast<std::uint32_t>(f);
        if (std::isnan(f)) {
            return static_cast<std::uint16_t>((u >> 16) | 0x0040u); // keep it a quiet NaN
        }
        const std::uint32_t lsb = (u >> 16) & 1u;
        u += 0x7fffu + lsb;
        return static_cast<std::uint16_t>(u >> 16);
    }
};

} // namespace rdfft
