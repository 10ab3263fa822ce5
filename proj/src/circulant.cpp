// SPDX-License-Identifier: Apache-2.0

#include "rdfft/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdfft/packed_spectrum.hpp"

namespace rdfft {
namespace {

void check_shape(std::size_t p, std::size_t q_out, std::size_t q_in) {
    require_transform_size(p, "CirculantLayer block size");
    if (q_out == 0 || q_in == 0) throw SizeError("CirculantLayer: block counts must be >= 1");
}

template <class T>
void require_finite(std::span<const T> x, const char* what) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw NonFinite(std::string(what) + ": non-finite value at index " + std::to_string(i));
        }
    }
}

} // namespace

template <class T>
GradientSet<T>::GradientSet(const CirculantLayer<T>& layer)
    : grad_input(layer.cols(), T(0)),
      grad_weights(layer.parameter_count(), T(0)),
      p_(layer.block_size()),
      q_in_(layer.q_in()) {}

template <class T>
std::span<T> GradientSet<T>::grad_weight(std::size_t i, std::size_t j) noexcept {
    return std::span<T>(grad_weights).subspan((i * q_in_ + j) * p_, p_);
}

template <class T>
std::span<const T> GradientSet<T>::grad_weight(std::size_t i, std::size_t j) const noexcept {
    return std::span<const T>(grad_weights).subspan((i * q_in_ + j) * p_, p_);
}

template <class T>
CirculantLayer<T>::CirculantLayer(std::size_t p, std::size_t q_out, std::size_t q_in)
    : p_((check_shape(p, q_out, q_in), p)), q_out_(q_out), q_in_(q_in), plan_(p) {}

template <class T>
CirculantLayer<T>::CirculantLayer(std::size_t p, std::size_t q_out, std::size_t q_in,
                                  std::span<const T> first_columns)
    : CirculantLayer(p, q_out, q_in) {
    require_same_size(first_columns.size(), p * q_out * q_in, "CirculantLayer weights");
    spectra_.assign(first_columns.begin(), first_columns.end());
    for (std::size_t b = 0; b < q_out * q_in; ++b) {
        forward_in_place(plan_, std::span<T>(spectra_).subspan(b * p, p));
    }
}

template <class T>
CirculantLayer<T> CirculantLayer<T>::from_spectra(std::size_t p, std::size_t q_out,
                                                  std::size_t q_in, std::span<const T> spectra) {
    CirculantLayer layer(p, q_out, q_in);
    require_same_size(spectra.size(), p * q_out * q_in, "CirculantLayer spectra");
    layer.spectra_.assign(spectra.begin(), spectra.end());
    return layer;
}

template <class T>
std::span<const T> CirculantLayer<T>::weight_spectrum(std::size_t i, std::size_t j) const noexcept {
    return std::span<const T>(spectra_).subspan((i * q_in_ + j) * p_, p_);
}

template <class T>
std::vector<T> CirculantLayer<T>::first_columns() const {
    std::vector<T> out(spectra_);
    for (std::size_t b = 0; b < q_out_ * q_in_; ++b) {
        inverse_in_place(plan_, std::span<T>(out).subspan(b * p_, p_));
    }
    return out;
}

template <class T>
void CirculantLayer<T>::forward_from_spectra(std::span<const T> x_spec, std::span<T> y) const {
    for (std::size_t i = 0; i < q_out_; ++i) {
        auto yi = y.subspan(i * p_, p_);
        std::fill(yi.begin(), yi.end(), T(0));
        for (std::size_t j = 0; j < q_in_; ++j) {
            multiply_accumulate(yi, weight_spectrum(i, j), x_spec.subspan(j * p_, p_));
        }
        inverse_in_place(plan_, yi);
    }
}

template <class T>
void CirculantLayer<T>::forward(std::span<T> x, std::span<T> y) const {
    require_same_size(x.size(), cols(), "CirculantLayer::forward input");
    require_same_size(y.size(), rows(), "CirculantLayer::forward output");
    require_finite<T>(x, "CirculantLayer::forward");
    for (std::size_t j = 0; j < q_in_; ++j) forward_in_place(plan_, x.subspan(j * p_, p_));
    forward_from_spectra(x, y);
}

template <class T>
void CirculantLayer<T>::forward(std::span<const T> x, std::span<T> y,
                                std::span<T> x_spec_cache) const {
    require_same_size(x.size(), cols(), "CirculantLayer::forward input");
    require_same_size(x_spec_cache.size(), cols(), "CirculantLayer::forward cache");
    require_same_size(y.size(), rows(), "CirculantLayer::forward output");
    require_finite(x, "CirculantLayer::forward");
    std::copy(x.begin(), x.end(), x_spec_cache.begin());
    for (std::size_t j = 0; j < q_in_; ++j) {
        forward_in_place(plan_, x_spec_cache.subspan(j * p_, p_));
    }
    forward_from_spectra(x_spec_cache, y);
}

template <class T>
void CirculantLayer<T>::backward(std::span<const T> x_spec, std::span<T> g,
                                 GradientSet<T>& grads) const {
    require_same_size(x_spec.size(), cols(), "CirculantLayer::backward input spectra");
    require_same_size(g.size(), rows(), "CirculantLayer::backward grad_output");
    require_same_size(grads.grad_input.size(), cols(), "CirculantLayer::backward grad_input");
    require_same_size(grads.grad_weights.size(), parameter_count(),
                      "CirculantLayer::backward grad_weights");

    for (std::size_t i = 0; i < q_out_; ++i) forward_in_place(plan_, g.subspan(i * p_, p_));

    // dL/dx_j = IFFT(sum_i conj(Fc_ij) * Fg_i)
    std::span<T> gx(grads.grad_input);
    for (std::size_t j = 0; j < q_in_; ++j) {
        auto gj = gx.subspan(j * p_, p_);
        std::fill(gj.begin(), gj.end(), T(0));
        for (std::size_t i = 0; i < q_out_; ++i) {
            multiply_accumulate(gj, g.subspan(i * p_, p_), weight_spectrum(i, j), true);
        }
        inverse_in_place(plan_, gj);
    }

    // dL/dc_ij = IFFT(conj(Fx_j) * Fg_i), built inside the gradient buffer
    for (std::size_t i = 0; i < q_out_; ++i) {
        const auto gi = g.subspan(i * p_, p_);
        for (std::size_t j = 0; j < q_in_; ++j) {
            auto w = grads.grad_weight(i, j);
            std::copy(gi.begin(), gi.end(), w.begin());
            multiply_in_place(w, x_spec.subspan(j * p_, p_), true);
            inverse_in_place(plan_, w);
        }
    }
}

template <class T>
void CirculantLayer<T>::apply_gradients(std::span<T> grad_weights, T learning_rate) {
    require_same_size(grad_weights.size(), parameter_count(), "CirculantLayer::apply_gradients");
    for (std::size_t b = 0; b < q_out_ * q_in_; ++b) {
        auto grad = grad_weights.subspan(b * p_, p_);
        forward_in_place(plan_, grad);
        axpy_in_place(std::span<T>(spectra_).subspan(b * p_, p_), grad, -learning_rate);
    }
}

template class CirculantLayer<float>;
template class CirculantLayer<double>;
template struct GradientSet<float>;
template struct GradientSet<double>;

} // namespace rdfft
