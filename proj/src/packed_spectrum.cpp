// SPDX-License-Identifier: Apache-2.0

#include "rdfft/packed_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdfft/kernels.hpp"

namespace rdfft {
namespace {

template <class T>
void check_hermitian(std::span<const std::complex<T>> y, T rel_tol) {
    const std::size_t n = y.size();
    const std::size_t h = n / 2;
    T peak = 0;
    for (const auto& v : y) peak = std::max(peak, std::abs(v));
    const T tol = rel_tol * peak;

    auto fail = [](const std::string& what) { throw HermitianViolation("pack: " + what); };
    if (!(std::abs(y[0].imag()) <= tol)) fail("Im(y_0) is not zero");
    if (!(std::abs(y[h].imag()) <= tol)) fail("Im(y_{n/2}) is not zero");
    for (std::size_t k = 1; k < h; ++k) {
        if (!(std::abs(y[n - k] - std::conj(y[k])) <= tol)) {
            fail("bin " + std::to_string(n - k) + " is not the conjugate of bin " +
                 std::to_string(k));
        }
    }
}

template <class T>
void pack_impl(std::span<const std::complex<T>> y, std::span<T> out, T rel_tol) {
    const std::size_t n = y.size();
    require_transform_size(n, "pack");
    require_same_size(out.size(), n, "pack");
    check_hermitian(y, rel_tol);
    const std::size_t h = n / 2;
    out[0] = y[0].real();
    out[h] = y[h].real();
    for (std::size_t k = 1; k < h; ++k) {
        out[k] = y[k].real();
        out[n - k] = y[k].imag();
    }
}

template <class T>
ComplexSpectrum<T> unpack_impl(std::span<const T> packed) {
    const std::size_t n = packed.size();
    require_transform_size(n, "unpack");
    ComplexSpectrum<T> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = bin_at(packed, k);
    return y;
}

template <class T>
void conjugate_impl(std::span<T> packed) {
    const std::size_t n = packed.size();
    require_transform_size(n, "conjugate_in_place");
    for (std::size_t k = n / 2 + 1; k < n; ++k) packed[k] = -packed[k];
}

template <class T>
void multiply_impl(std::span<T> acc, std::span<const T> other, bool conj) {
    require_transform_size(acc.size(), "multiply_in_place");
    require_same_size(acc.size(), other.size(), "multiply_in_place");
    kernels::active<T>().multiply(acc.data(), other.data(), acc.size(), conj);
}

template <class T>
void axpy_impl(std::span<T> acc, std::span<const T> other, T scale) {
    require_transform_size(acc.size(), "axpy_in_place");
    require_same_size(acc.size(), other.size(), "axpy_in_place");
    kernels::active<T>().axpy(acc.data(), other.data(), scale, acc.size());
}

template <class T>
void multiply_accumulate_impl(std::span<T> acc, std::span<const T> a, std::span<const T> b,
                              bool conj) {
    require_transform_size(acc.size(), "multiply_accumulate");
    require_same_size(acc.size(), a.size(), "multiply_accumulate");
    require_same_size(acc.size(), b.size(), "multiply_accumulate");
    kernels::active<T>().multiply_accumulate(acc.data(), a.data(), b.data(), acc.size(), conj);
}

} // namespace

std::vector<float> pack(std::span<const std::complex<float>> spectrum, float rel_tol) {
    std::vector<float> out(spectrum.size());
    pack_impl(spectrum, std::span<float>(out), rel_tol);
    return out;
}

std::vector<double> pack(std::span<const std::complex<double>> spectrum, double rel_tol) {
    std::vector<double> out(spectrum.size());
    pack_impl(spectrum, std::span<double>(out), rel_tol);
    return out;
}

void pack_into(std::span<const std::complex<float>> spectrum, std::span<float> out,
               float rel_tol) {
    pack_impl(spectrum, out, rel_tol);
}

void pack_into(std::span<const std::complex<double>> spectrum, std::span<double> out,
               double rel_tol) {
    pack_impl(spectrum, out, rel_tol);
}

ComplexSpectrum<float> unpack(std::span<const float> packed) { return unpack_impl(packed); }
ComplexSpectrum<double> unpack(std::span<const double> packed) { return unpack_impl(packed); }

void conjugate_in_place(std::span<float> packed) { conjugate_impl(packed); }
void conjugate_in_place(std::span<double> packed) { conjugate_impl(packed); }

void multiply_in_place(std::span<float> acc, std::span<const float> other, bool conjugate_other) {
    multiply_impl(acc, other, conjugate_other);
}
void multiply_in_place(std::span<double> acc, std::span<const double> other,
                       bool conjugate_other) {
    multiply_impl(acc, other, conjugate_other);
}

void axpy_in_place(std::span<float> acc, std::span<const float> other, float scale) {
    axpy_impl(acc, other, scale);
}
void axpy_in_place(std::span<double> acc, std::span<const double> other, double scale) {
    axpy_impl(acc, other, scale);
}

void multiply_accumulate(std::span<float> acc, std::span<const float> a, std::span<const float> b,
                         bool conjugate_b) {
    multiply_accumulate_impl(acc, a, b, conjugate_b);
}
void multiply_accumulate(std::span<double> acc, std::span<const double> a,
                         std::span<const double> b, bool conjugate_b) {
    multiply_accumulate_impl(acc, a, b, conjugate_b);
}

} // namespace rdfft
