// SPDX-License-Identifier: Apache-2.0

#include "rdfft/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rdfft::oracle {
namespace {

// exp(sign * 2*pi*i*j/N) for j = 0 .. N-1. Products k*n are reduced mod N
// before lookup so the angle never loses precision.
std::vector<std::complex<double>> unit_roots(std::size_t n, double sign) {
    std::vector<std::complex<double>> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        const long double angle = 2.0L * std::numbers::pi_v<long double> *
                                  static_cast<long double>(j) / static_cast<long double>(n);
        w[j] = {static_cast<double>(std::cos(angle)),
                static_cast<double>(sign * static_cast<double>(std::sin(angle)))};
    }
    return w;
}

std::vector<std::complex<double>> direct_sum(std::span<const std::complex<double>> in,
                                             double sign, double scale) {
    const std::size_t n = in.size();
    const auto w = unit_roots(n, sign);
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0;
        for (std::size_t t = 0; t < n; ++t) acc += in[t] * w[(k * t) % n];
        out[k] = acc * scale;
    }
    return out;
}

void check_shape(std::size_t p, std::size_t q_out, std::size_t q_in, std::size_t have) {
    if (p == 0 || q_out == 0 || q_in == 0) throw std::invalid_argument("oracle: empty shape");
    if (have != p * q_out * q_in) {
        throw std::invalid_argument("oracle: expected " + std::to_string(p * q_out * q_in) +
                                    " weights, got " + std::to_string(have));
    }
}

} // namespace

std::vector<std::complex<double>> naive_dft(std::span<const double> x) {
    std::vector<std::complex<double>> c(x.begin(), x.end());
    return direct_sum(c, -1.0, 1.0);
}

std::vector<std::complex<double>> naive_dft(std::span<const std::complex<double>> x) {
    return direct_sum(x, -1.0, 1.0);
}

std::vector<std::complex<double>> naive_idft(std::span<const std::complex<double>> y) {
    if (y.empty()) return {};
    return direct_sum(y, 1.0, 1.0 / static_cast<double>(y.size()));
}

DenseCirculant dense_block_circulant(std::size_t p, std::size_t q_out, std::size_t q_in,
                                     std::span<const double> first_columns) {
    check_shape(p, q_out, q_in, first_columns.size());
    DenseCirculant d;
    d.rows = q_out * p;
    d.cols = q_in * p;
    d.matrix.assign(d.rows * d.cols, 0.0);
    for (std::size_t i = 0; i < q_out; ++i) {
        for (std::size_t j = 0; j < q_in; ++j) {
            const double* c = first_columns.data() + (i * q_in + j) * p;
            for (std::size_t r = 0; r < p; ++r) {
                for (std::size_t s = 0; s < p; ++s) {
                    d.matrix[(i * p + r) * d.cols + j * p + s] = c[(r + p - s) % p];
                }
            }
        }
    }
    return d;
}

std::vector<double> matvec(const DenseCirculant& a, std::span<const double> x) {
    if (x.size() != a.cols) throw std::invalid_argument("oracle::matvec: size mismatch");
    std::vector<double> y(a.rows, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) {
        double acc = 0;
        for (std::size_t c = 0; c < a.cols; ++c) acc += a.at(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

std::vector<double> matvec_transposed(const DenseCirculant& a, std::span<const double> y) {
    if (y.size() != a.rows) throw std::invalid_argument("oracle::matvec_transposed: size mismatch");
    std::vector<double> x(a.cols, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) x[c] += a.at(r, c) * y[r];
    }
    return x;
}

std::vector<double> naive_circulant_matvec(std::size_t p, std::size_t q_out, std::size_t q_in,
                                           std::span<const double> first_columns,
                                           std::span<const double> x) {
    return matvec(dense_block_circulant(p, q_out, q_in, first_columns), x);
}

std::vector<double> circulant_weight_gradient(std::size_t p, std::size_t q_out, std::size_t q_in,
                                              std::span<const double> x,
                                              std::span<const double> g) {
    if (x.size() != q_in * p || g.size() != q_out * p) {
        throw std::invalid_argument("oracle::circulant_weight_gradient: size mismatch");
    }
    std::vector<double> grad(q_out * q_in * p, 0.0);
    for (std::size_t i = 0; i < q_out; ++i) {
        for (std::size_t j = 0; j < q_in; ++j) {
            double* out = grad.data() + (i * q_in + j) * p;
            for (std::size_t s = 0; s < p; ++s) {
                double acc = 0;
                for (std::size_t t = 0; t < p; ++t) acc += g[i * p + t] * x[j * p + (t + p - s) % p];
                out[s] = acc;
            }
        }
    }
    return grad;
}

std::vector<double> finite_difference_grad(
    const std::function<double(std::span<const double>)>& loss, std::span<const double> params,
    double step) {
    if (!(step > 0)) throw std::invalid_argument("finite_difference_grad: step must be > 0");
    std::vector<double> theta(params.begin(), params.end());
    std::vector<double> grad(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double saved = theta[i];
        theta[i] = saved + step;
        const double up = loss(theta);
        theta[i] = saved - step;
        const double down = loss(theta);
        theta[i] = saved;
        grad[i] = (up - down) / (2 * step);
    }
    return grad;
}

} // namespace rdfft::oracle
