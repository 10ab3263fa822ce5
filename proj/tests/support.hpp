// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the unit tests and the acceptance runner.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rdfft::testing {

inline std::vector<double> normal(std::size_t n, std::mt19937_64& rng, double sigma = 1.0) {
    std::normal_distribution<double> dist(0.0, sigma);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

template <class T>
std::vector<T> normal_as(std::size_t n, std::mt19937_64& rng, double sigma = 1.0) {
    std::vector<T> v(n);
    std::normal_distribution<double> dist(0.0, sigma);
    for (auto& x : v) x = static_cast<T>(dist(rng));
    return v;
}

template <class T>
std::vector<double> widen(std::span<const T> v) {
    return std::vector<double>(v.begin(), v.end());
}

template <class T>
std::vector<T> narrow(std::span<const double> v) {
    std::vector<T> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return static_cast<T>(x); });
    return out;
}

template <class A, class B>
double max_abs_diff(const A& a, const B& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])));
    }
    return m;
}

template <class A, class B>
double rel_norm_diff(const A& a, const B& b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        num += d * d;
        den += static_cast<double>(b[i]) * static_cast<double>(b[i]);
    }
    return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

/// Random conjugate-symmetric spectrum of length n (n >= 2, even).
inline std::vector<std::complex<double>> random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    std::vector<std::complex<double>> y(n);
    y[0] = dist(rng);
    y[n / 2] = dist(rng);
    for (std::size_t k = 1; k < n / 2; ++k) {
        y[k] = {dist(rng), dist(rng)};
        y[n - k] = std::conj(y[k]);
    }
    return y;
}

/// After the up-front bit reversal of a length-n buffer, the aligned block
/// [base, base + m) holds the input subsequence that the block's sub-spectrum
/// is the DFT of, in m-point bit-reversed order. Returns it in natural order.
template <class T>
std::vector<double> block_signal(std::span<const T> reversed, std::size_t base, std::size_t m) {
    const int bits = std::countr_zero(m);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
        out[i] = static_cast<double>(reversed[base + r]);
    }
    return out;
}

inline std::vector<std::size_t> powers_of_two(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
}

} // namespace rdfft::testing
