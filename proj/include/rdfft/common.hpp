// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdfft {

/// Length is not a power of two, or is below the minimum of 2.
class SizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two buffers that must agree in length do not.
class SizeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A complex spectrum handed to pack() is not conjugate-symmetric.
class HermitianViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An input scalar is NaN or infinite.
class NonFinite : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && std::has_single_bit(n); }

inline void require_transform_size(std::size_t n, const char* what) {
    if (n < 2 || !is_power_of_two(n)) {
        throw SizeError(std::string(what) + ": length " + std::to_string(n) +
                        " is not a power of two >= 2");
    }
}

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw SizeMismatch(std::string(what) + ": length " + std::to_string(a) + " vs " +
                           std::to_string(b));
    }
}

enum class Precision { f32, f64 };

inline const char* to_string(Precision p) noexcept { return p == Precision::f32 ? "f32" : "f64"; }

template <class T>
constexpr Precision precision_of() noexcept {
    static_assert(sizeof(T) == 4 || sizeof(T) == 8);
    return sizeof(T) == 4 ? Precision::f32 : Precision::f64;
}

} // namespace rdfft
