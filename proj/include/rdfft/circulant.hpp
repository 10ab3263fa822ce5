// SPDX-License-Identifier: Apache-2.0
//
// Block-circulant linear layer y = C x, C made of q_out x q_in circulant
// p x p blocks. Block (i, j) is defined by its first column c_ij,
// C_ij[r][s] = c_ij[(r - s) mod p], and is stored only as its packed
// spectrum. Every pass runs through the in-place transforms and writes
// nothing beyond the caller's buffers.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rdfft/transform.hpp"

namespace rdfft {

template <class T>
class CirculantLayer;

/// Gradients for one backward pass. grad_weights is row-major over (i, j),
/// p scalars per block, time domain.
template <class T>
struct GradientSet {
    std::vector<T> grad_input;
    std::vector<T> grad_weights;

    explicit GradientSet(const CirculantLayer<T>& layer);

    std::span<T> grad_weight(std::size_t i, std::size_t j) noexcept;
    std::span<const T> grad_weight(std::size_t i, std::size_t j) const noexcept;

private:
    std::size_t p_;
    std::size_t q_in_;
};

template <class T>
class CirculantLayer {
public:
    /// `first_columns`: q_out * q_in time-domain vectors of length p,
    /// row-major over (i, j). Throws SizeError on a bad shape.
    CirculantLayer(std::size_t p, std::size_t q_out, std::size_t q_in,
                   std::span<const T> first_columns);

    /// Adopt already-transformed weights (see load_layer).
    static CirculantLayer from_spectra(std::size_t p, std::size_t q_out, std::size_t q_in,
                                       std::span<const T> spectra);

    std::size_t block_size() const noexcept { return p_; }
    std::size_t q_out() const noexcept { return q_out_; }
    std::size_t q_in() const noexcept { return q_in_; }
    std::size_t rows() const noexcept { return q_out_ * p_; }
    std::size_t cols() const noexcept { return q_in_ * p_; }
    /// Equals rows() * cols() / block_size().
    std::size_t parameter_count() const noexcept { return spectra_.size(); }

    const Plan<T>& plan() const noexcept { return plan_; }
    std::span<const T> weight_spectra() const noexcept { return spectra_; }
    std::span<const T> weight_spectrum(std::size_t i, std::size_t j) const noexcept;

    /// Time-domain copy of the weights (allocates).
    std::vector<T> first_columns() const;

    /// y = C x. x is overwritten with the packed spectra of its blocks, which
    /// is what backward() expects as x_spec.
    void forward(std::span<T> x, std::span<T> y) const;

    /// y = C x leaving x intact; the input spectra land in x_spec_cache.
    void forward(std::span<const T> x, std::span<T> y, std::span<T> x_spec_cache) const;

    /// g holds dL/dy on entry and its block spectra on exit. x_spec is the
    /// spectra left by forward().
    void backward(std::span<const T> x_spec, std::span<T> g, GradientSet<T>& grads) const;

    /// SGD step c_ij -= lr * grad_ij, applied to the stored spectra.
    /// grad_weights is overwritten with its block spectra.
    void apply_gradients(std::span<T> grad_weights, T learning_rate);

private:
    CirculantLayer(std::size_t p, std::size_t q_out, std::size_t q_in);
    void forward_from_spectra(std::span<const T> x_spec, std::span<T> y) const;

    std::size_t p_;
    std::size_t q_out_;
    std::size_t q_in_;
    Plan<T> plan_;
    std::vector<T> spectra_;
};

extern template class CirculantLayer<float>;
extern template class CirculantLayer<double>;
extern template struct GradientSet<float>;
extern template struct GradientSet<double>;

template <class T>
CirculantLayer<T> layer_create(std::size_t p, std::size_t q_out, std::size_t q_in,
                               std::span<const T> first_columns) {
    return CirculantLayer<T>(p, q_out, q_in, first_columns);
}

} // namespace rdfft
