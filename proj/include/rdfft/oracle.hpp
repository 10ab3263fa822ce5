// SPDX-License-Identifier: Apache-2.0
//
// Slow reference implementations in double precision. Nothing here shares
// code with the fast path; they are the ground truth for tests and for the
// benchmark's verification mode.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rdfft::oracle {

/// Direct O(N^2) sum y_k = sum_n x_n exp(-2*pi*i*k*n/N). Any N >= 1.
std::vector<std::complex<double>> naive_dft(std::span<const double> x);
std::vector<std::complex<double>> naive_dft(std::span<const std::complex<double>> x);

/// Direct O(N^2) sum x_n = (1/N) sum_k y_k exp(+2*pi*i*k*n/N).
std::vector<std::complex<double>> naive_idft(std::span<const std::complex<double>> y);

/// Materialized block-circulant matrix, row-major m x n. Block (i, j) is the
/// p x p circulant whose first column is c_ij: B[r][s] = c_ij[(r - s) mod p].
struct DenseCirculant {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> matrix;

    double at(std::size_t r, std::size_t c) const noexcept { return matrix[r * cols + c]; }
};

/// `first_columns` holds q_out * q_in vectors of length p, row-major over
/// (i, j). Throws std::invalid_argument on shape errors.
DenseCirculant dense_block_circulant(std::size_t p, std::size_t q_out, std::size_t q_in,
                                     std::span<const double> first_columns);

std::vector<double> matvec(const DenseCirculant& a, std::span<const double> x);
std::vector<double> matvec_transposed(const DenseCirculant& a, std::span<const double> y);

/// y = C x with C built from `first_columns` as above.
std::vector<double> naive_circulant_matvec(std::size_t p, std::size_t q_out, std::size_t q_in,
                                           std::span<const double> first_columns,
                                           std::span<const double> x);

/// Gradient of L = <g, C x> with respect to every c_ij[s], by direct
/// summation: sum_t g_i[t] * x_j[(t - s) mod p]. Same layout as
/// `first_columns`.
std::vector<double> circulant_weight_gradient(std::size_t p, std::size_t q_out, std::size_t q_in,
                                              std::span<const double> x,
                                              std::span<const double> g);

/// Central differences (L(t + h e_i) - L(t - h e_i)) / 2h for every i.
std::vector<double> finite_difference_grad(
    const std::function<double(std::span<const double>)>& loss, std::span<const double> params,
    double step);

} // namespace rdfft::oracle
