// SPDX-License-Identifier: Apache-2.0
//
// AVX2 variants. Built with -mavx2 only (no FMA), so every lane performs the
// same IEEE operations in the same order as the scalar reference and results
// are bit-identical to it.

#include <immintrin.h>

#include "kernels_avx2.hpp"
#include "kernels_scalar.hpp"

namespace rdfft::kernels::avx2 {
namespace {

struct F32 {
    using T = float;
    using V = __m256;
    static constexpr std::size_t width = 8;
    static V load(const T* p) noexcept { return _mm256_loadu_ps(p); }
    static void store(T* p, V v) noexcept { _mm256_storeu_ps(p, v); }
    static V set1(T x) noexcept { return _mm256_set1_ps(x); }
    static V add(V a, V b) noexcept { return _mm256_add_ps(a, b); }
    static V sub(V a, V b) noexcept { return _mm256_sub_ps(a, b); }
    static V mul(V a, V b) noexcept { return _mm256_mul_ps(a, b); }
    static V reverse(V v) noexcept {
        return _mm256_permutevar8x32_ps(v, _mm256_set_epi32(0, 1, 2, 3, 4, 5, 6, 7));
    }
};

struct F64 {
    using T = double;
    using V = __m256d;
    static constexpr std::size_t width = 4;
    static V load(const T* p) noexcept { return _mm256_loadu_pd(p); }
    static void store(T* p, V v) noexcept { _mm256_storeu_pd(p, v); }
    static V set1(T x) noexcept { return _mm256_set1_pd(x); }
    static V add(V a, V b) noexcept { return _mm256_add_pd(a, b); }
    static V sub(V a, V b) noexcept { return _mm256_sub_pd(a, b); }
    static V mul(V a, V b) noexcept { return _mm256_mul_pd(a, b); }
    static V reverse(V v) noexcept { return _mm256_permute4x64_pd(v, 0x1B); }
};

// Descending lanes p[0], p[-1], ..., p[-(W-1)].
template <class A>
typename A::V load_desc(const typename A::T* p) noexcept {
    return A::reverse(A::load(p - (A::width - 1)));
}

template <class A>
void store_desc(typename A::T* p, typename A::V v) noexcept {
    A::store(p - (A::width - 1), A::reverse(v));
}

template <class A>
void forward_groups(typename A::T* block, std::size_t m, const typename A::T* wr,
                    const typename A::T* wi) noexcept {
    constexpr std::size_t W = A::width;
    const std::size_t h = m / 2;
    std::size_t k = 1;
    for (; k + W <= h; k += W) {
        const auto ar = A::load(block + k);
        const auto ai = load_desc<A>(block + m - k);
        const auto br = A::load(block + m + k);
        const auto bi = load_desc<A>(block + 2 * m - k);
        const auto w_re = A::load(wr + k - 1);
        const auto w_im = A::load(wi + k - 1);
        const auto ur = A::sub(A::mul(w_re, br), A::mul(w_im, bi));
        const auto ui = A::add(A::mul(w_re, bi), A::mul(w_im, br));
        A::store(block + k, A::add(ar, ur));
        store_desc<A>(block + 2 * m - k, A::add(ai, ui));
        store_desc<A>(block + m - k, A::sub(ar, ur));
        A::store(block + m + k, A::sub(ui, ai));
    }
    scalar::forward_groups(block, m, wr, wi, k);
}

template <class A>
void inverse_groups(typename A::T* block, std::size_t m, const typename A::T* wr,
                    const typename A::T* wi) noexcept {
    constexpr std::size_t W = A::width;
    const std::size_t h = m / 2;
    const auto half = A::set1(typename A::T(0.5));
    std::size_t k = 1;
    for (; k + W <= h; k += W) {
        const auto yr = A::load(block + k);
        const auto yi = load_desc<A>(block + 2 * m - k);
        const auto zr = load_desc<A>(block + m - k);
        const auto zi = A::load(block + m + k);
        const auto tr = A::mul(A::sub(yr, zr), half);
        const auto ti = A::mul(A::add(yi, zi), half);
        const auto w_re = A::load(wr + k - 1);
        const auto w_im = A::load(wi + k - 1);
        A::store(block + k, A::mul(A::add(yr, zr), half));
        store_desc<A>(block + m - k, A::mul(A::sub(yi, zi), half));
        A::store(block + m + k, A::add(A::mul(tr, w_re), A::mul(ti, w_im)));
        store_desc<A>(block + 2 * m - k, A::sub(A::mul(ti, w_re), A::mul(tr, w_im)));
    }
    scalar::inverse_groups(block, m, wr, wi, k);
}

template <class A>
void multiply(typename A::T* acc, const typename A::T* other, std::size_t n,
              bool conjugate_other) noexcept {
    using T = typename A::T;
    constexpr std::size_t W = A::width;
    const std::size_t h = n / 2;
    acc[0] *= other[0];
    acc[h] *= other[h];
    const auto sign = A::set1(conjugate_other ? T(-1) : T(1));
    std::size_t k = 1;
    for (; k + W <= h; k += W) {
        const auto ar = A::load(acc + k);
        const auto ai = load_desc<A>(acc + n - k);
        const auto br = A::load(other + k);
        const auto bi = A::mul(sign, load_desc<A>(other + n - k));
        A::store(acc + k, A::sub(A::mul(ar, br), A::mul(ai, bi)));
        store_desc<A>(acc + n - k, A::add(A::mul(ar, bi), A::mul(ai, br)));
    }
    scalar::multiply_pairs(acc, other, n, conjugate_other, k);
}

template <class A>
void multiply_accumulate(typename A::T* acc, const typename A::T* a, const typename A::T* b,
                         std::size_t n, bool conjugate_b) noexcept {
    using T = typename A::T;
    constexpr std::size_t W = A::width;
    const std::size_t h = n / 2;
    acc[0] += a[0] * b[0];
    acc[h] += a[h] * b[h];
    const auto sign = A::set1(conjugate_b ? T(-1) : T(1));
    std::size_t k = 1;
    for (; k + W <= h; k += W) {
        const auto ar = A::load(a + k);
        const auto ai = load_desc<A>(a + n - k);
        const auto br = A::load(b + k);
        const auto bi = A::mul(sign, load_desc<A>(b + n - k));
        A::store(acc + k, A::add(A::load(acc + k), A::sub(A::mul(ar, br), A::mul(ai, bi))));
        store_desc<A>(acc + n - k,
                      A::add(load_desc<A>(acc + n - k), A::add(A::mul(ar, bi), A::mul(ai, br))));
    }
    scalar::multiply_accumulate_pairs(acc, a, b, n, conjugate_b, k);
}

template <class A>
void axpy(typename A::T* acc, const typename A::T* other, typename A::T scale,
          std::size_t n) noexcept {
    constexpr std::size_t W = A::width;
    const auto s = A::set1(scale);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        A::store(acc + i, A::add(A::load(acc + i), A::mul(s, A::load(other + i))));
    }
    scalar::axpy(acc, other, scale, n, i);
}

template <class A>
constexpr KernelTable<typename A::T> make_table() noexcept {
    return {Isa::avx2,       &forward_groups<A>,      &inverse_groups<A>,
            &multiply<A>,    &multiply_accumulate<A>, &axpy<A>};
}

constexpr KernelTable<float> table_f32 = make_table<F32>();
constexpr KernelTable<double> table_f64 = make_table<F64>();

} // namespace

template <>
const KernelTable<float>& table<float>() noexcept {
    return table_f32;
}

template <>
const KernelTable<double>& table<double>() noexcept {
    return table_f64;
}

} // namespace rdfft::kernels::avx2
