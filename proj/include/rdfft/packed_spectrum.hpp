// SPDX-License-Identifier: Apache-2.0
//
// Packed encoding of a Hermitian spectrum inside n real scalars:
//
//   slot 0          Re(y_0)
//   slot k          Re(y_k)      1 <= k < n/2
//   slot n/2        Re(y_{n/2})
//   slot n-k        Im(y_k)      1 <= k < n/2
//
// Every length-n real buffer is a valid encoding; bins above n/2 are implied
// by conjugation. All arithmetic here is closed over the encoding and writes
// only into its first argument.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rdfft/common.hpp"

namespace rdfft {

template <class T>
using ComplexSpectrum = std::vector<std::complex<T>>;

/// Relative tolerance used by pack() when checking conjugate symmetry.
template <class T>
constexpr T default_hermitian_tolerance() noexcept {
    return sizeof(T) == 4 ? T(1e-6) : T(1e-12);
}

/// Decode one bin (0 <= k < n) of a packed spectrum.
template <class T>
std::complex<T> bin_at(std::span<const T> packed, std::size_t k) noexcept {
    const std::size_t n = packed.size();
    const std::size_t h = n / 2;
    if (k == 0) return {packed[0], T(0)};
    if (k == h) return {packed[h], T(0)};
    if (k < h) return {packed[k], packed[n - k]};
    return {packed[n - k], -packed[k]};
}

/// Encode a full conjugate-symmetric spectrum. Throws HermitianViolation if
/// any conjugate pair (or the imaginary part of the DC / Nyquist bin) is off
/// by more than rel_tol * max|Y|.
std::vector<float> pack(std::span<const std::complex<float>> spectrum,
                        float rel_tol = default_hermitian_tolerance<float>());
std::vector<double> pack(std::span<const std::complex<double>> spectrum,
                         double rel_tol = default_hermitian_tolerance<double>());

void pack_into(std::span<const std::complex<float>> spectrum, std::span<float> out,
               float rel_tol = default_hermitian_tolerance<float>());
void pack_into(std::span<const std::complex<double>> spectrum, std::span<double> out,
               double rel_tol = default_hermitian_tolerance<double>());

/// Expand to all n bins; bins above n/2 are conjugates of their mirrors.
ComplexSpectrum<float> unpack(std::span<const float> packed);
ComplexSpectrum<double> unpack(std::span<const double> packed);

/// Conjugate every bin: negates slots n/2+1 .. n-1.
void conjugate_in_place(std::span<float> packed);
void conjugate_in_place(std::span<double> packed);

/// acc <- acc * other (or acc * conj(other)) bin by bin.
void multiply_in_place(std::span<float> acc, std::span<const float> other,
                       bool conjugate_other = false);
void multiply_in_place(std::span<double> acc, std::span<const double> other,
                       bool conjugate_other = false);

/// acc <- acc + scale * other, slotwise.
void axpy_in_place(std::span<float> acc, std::span<const float> other, float scale = 1.0f);
void axpy_in_place(std::span<double> acc, std::span<const double> other, double scale = 1.0);

/// acc <- acc + a * b (or a * conj(b)) bin by bin, with no product temporary.
void multiply_accumulate(std::span<float> acc, std::span<const float> a, std::span<const float> b,
                         bool conjugate_b = false);
void multiply_accumulate(std::span<double> acc, std::span<const double> a,
                         std::span<const double> b, bool conjugate_b = false);

} // namespace rdfft
