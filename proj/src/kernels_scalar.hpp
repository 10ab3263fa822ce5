// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels, templated on the storage type so the bf16 storage
// mode can share them (loads widen to float, stores round back).
#pragma once

#include <cstddef>
#include <type_traits>

#include "rdfft/bf16.hpp"

namespace rdfft::kernels::scalar {

template <class S>
using compute_t = std::conditional_t<std::is_same_v<S, bf16>, float, S>;

template <class S>
inline compute_t<S> ld(const S& s) noexcept {
    return static_cast<compute_t<S>>(s);
}

template <class S>
inline void st(S& s, compute_t<S> v) noexcept {
    s = S(v);
}

/// Four-slot groups k0 <= k < m/2 of one forward merge block.
template <class S>
void forward_groups(S* block, std::size_t m, const compute_t<S>* wr, const compute_t<S>* wi,
                    std::size_t k0 = 1) noexcept {
    using C = compute_t<S>;
    for (std::size_t k = k0; k < m / 2; ++k) {
        const C ar = ld(block[k]);
        const C ai = ld(block[m - k]);
        const C br = ld(block[m + k]);
        const C bi = ld(block[2 * m - k]);
        const C w_re = wr[k - 1];
        const C w_im = wi[k - 1];
        const C ur = w_re * br - w_im * bi;
        const C ui = w_re * bi + w_im * br;
        // y_k = A + u at (k, 2m-k); y_{m-k} = conj(A - u) at (m-k, m+k)
        st(block[k], ar + ur);
        st(block[2 * m - k], ai + ui);
        st(block[m - k], ar - ur);
        st(block[m + k], ui - ai);
    }
}

template <class S>
void inverse_groups(S* block, std::size_t m, const compute_t<S>* wr, const compute_t<S>* wi,
                    std::size_t k0 = 1) noexcept {
    using C = compute_t<S>;
    const C half = C(0.5);
    for (std::size_t k = k0; k < m / 2; ++k) {
        const C yr = ld(block[k]);
        const C yi = ld(block[2 * m - k]);
        const C zr = ld(block[m - k]);  // y_{m+k} = (zr, -zi)
        const C zi = ld(block[m + k]);
        const C tr = (yr - zr) * half;
        const C ti = (yi + zi) * half;
        const C w_re = wr[k - 1];
        const C w_im = wi[k - 1];
        st(block[k], (yr + zr) * half);
        st(block[m - k], (yi - zi) * half);
        // divide by W: multiply by conj(W)
        st(block[m + k], tr * w_re + ti * w_im);
        st(block[2 * m - k], ti * w_re - tr * w_im);
    }
}

/// Complex pairs k0 <= k < n/2 only.
template <class T>
void multiply_pairs(T* acc, const T* other, std::size_t n, bool conjugate_other,
                    std::size_t k0) noexcept {
    const std::size_t h = n / 2;
    const T sign = conjugate_other ? T(-1) : T(1);
    for (std::size_t k = k0; k < h; ++k) {
        const T ar = acc[k];
        const T ai = acc[n - k];
        const T br = other[k];
        const T bi = sign * other[n - k];
        acc[k] = ar * br - ai * bi;
        acc[n - k] = ar * bi + ai * br;
    }
}

template <class T>
void multiply(T* acc, const T* other, std::size_t n, bool conjugate_other) noexcept {
    const std::size_t h = n / 2;
    acc[0] *= other[0];
    acc[h] *= other[h];
    multiply_pairs(acc, other, n, conjugate_other, 1);
}

template <class T>
void multiply_accumulate_pairs(T* acc, const T* a, const T* b, std::size_t n, bool conjugate_b,
                               std::size_t k0) noexcept {
    const std::size_t h = n / 2;
    const T sign = conjugate_b ? T(-1) : T(1);
    for (std::size_t k = k0; k < h; ++k) {
        const T ar = a[k];
        const T ai = a[n - k];
        const T br = b[k];
        const T bi = sign * b[n - k];
        acc[k] += ar * br - ai * bi;
        acc[n - k] += ar * bi + ai * br;
    }
}

template <class T>
void multiply_accumulate(T* acc, const T* a, const T* b, std::size_t n, bool conjugate_b) noexcept {
    const std::size_t h = n / 2;
    acc[0] += a[0] * b[0];
    acc[h] += a[h] * b[h];
    multiply_accumulate_pairs(acc, a, b, n, conjugate_b, 1);
}

template <class T>
void axpy(T* acc, const T* other, T scale, std::size_t n, std::size_t i0 = 0) noexcept {
    for (std::size_t i = i0; i < n; ++i) acc[i] += scale * other[i];
}

} // namespace rdfft::kernels::scalar
