// SPDX-License-Identifier: Apache-2.0

#include "rdfft/transform.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

#include "kernels_scalar.hpp"
#include "rdfft/kernels.hpp"

namespace rdfft {

template <class T>
Plan<T>::Plan(std::size_t n) : n_(n), stages_(0) {
    require_transform_size(n, "plan_create");
    stages_ = static_cast<std::size_t>(std::countr_zero(n));

    bitrev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < stages_; ++b) r |= ((i >> b) & 1u) << (stages_ - 1 - b);
        bitrev_[i] = static_cast<std::uint32_t>(r);
    }

    tw_offset_.assign(stages_ + 1, 0);
    std::size_t total = 0;
    for (std::size_t m = 4; m < n; m *= 2) {
        tw_offset_[static_cast<std::size_t>(std::countr_zero(m))] = total;
        total += m / 2 - 1;
    }
    tw_re_.resize(total);
    tw_im_.resize(total);
    for (std::size_t m = 4; m < n; m *= 2) {
        const std::size_t off = tw_offset_[static_cast<std::size_t>(std::countr_zero(m))];
        for (std::size_t k = 1; k < m / 2; ++k) {
            const long double angle =
                std::numbers::pi_v<long double> * static_cast<long double>(k) /
                static_cast<long double>(m);
            tw_re_[off + k - 1] = static_cast<T>(std::cos(angle));
            tw_im_[off + k - 1] = static_cast<T>(-std::sin(angle));
        }
    }
}

template <class T>
std::span<const T> Plan<T>::twiddle_re(std::size_t m) const noexcept {
    if (m < 4 || m >= n_) return {};
    return std::span<const T>(tw_re_).subspan(tw_offset_[std::countr_zero(m)], m / 2 - 1);
}

template <class T>
std::span<const T> Plan<T>::twiddle_im(std::size_t m) const noexcept {
    if (m < 4 || m >= n_) return {};
    return std::span<const T>(tw_im_).subspan(tw_offset_[std::countr_zero(m)], m / 2 - 1);
}

template class Plan<float>;
template class Plan<double>;

namespace {

using kernels::scalar::compute_t;
using kernels::scalar::ld;
using kernels::scalar::st;

template <class S>
void bit_reverse_impl(const Plan<compute_t<S>>& plan, std::span<S> buf) {
    require_same_size(buf.size(), plan.size(), "bit_reverse_in_place");
    const auto rev = plan.bitrev();
    for (std::size_t i = 0; i < rev.size(); ++i) {
        if (i < rev[i]) std::swap(buf[i], buf[rev[i]]);
    }
}

template <class S, class Groups>
void forward_stage(const Plan<compute_t<S>>& plan, S* buf, std::size_t m, Groups groups) noexcept {
    using C = compute_t<S>;
    const std::size_t n = plan.size();
    const C* wr = plan.twiddle_re(m).data();
    const C* wi = plan.twiddle_im(m).data();
    for (std::size_t base = 0; base < n; base += 2 * m) {
        S* b = buf + base;
        const C a0 = ld(b[0]);
        const C b0 = ld(b[m]);
        st(b[0], a0 + b0);
        st(b[m], a0 - b0);
        if (m >= 2) {
            // k = m/2: twiddle is -i, so y_{m/2} = A - iB with A, B real.
            st(b[m + m / 2], -ld(b[m + m / 2]));
        }
        if (m >= 4) groups(b, m, wr, wi);
    }
}

template <class S, class Groups>
void inverse_stage(const Plan<compute_t<S>>& plan, S* buf, std::size_t m, Groups groups) noexcept {
    using C = compute_t<S>;
    const std::size_t n = plan.size();
    const C* wr = plan.twiddle_re(m).data();
    const C* wi = plan.twiddle_im(m).data();
    const C half = C(0.5);
    for (std::size_t base = 0; base < n; base += 2 * m) {
        S* b = buf + base;
        const C y0 = ld(b[0]);
        const C ym = ld(b[m]);
        st(b[0], (y0 + ym) * half);
        st(b[m], (y0 - ym) * half);
        if (m >= 2) st(b[m + m / 2], -ld(b[m + m / 2]));
        if (m >= 4) groups(b, m, wr, wi);
    }
}

template <class S, class Groups>
void forward_impl(const Plan<compute_t<S>>& plan, std::span<S> buf, Groups groups) {
    bit_reverse_impl(plan, buf);
    for (std::size_t m = 1; m < plan.size(); m *= 2) forward_stage(plan, buf.data(), m, groups);
}

template <class S, class Groups>
void inverse_impl(const Plan<compute_t<S>>& plan, std::span<S> buf, Groups groups) {
    require_same_size(buf.size(), plan.size(), "inverse_in_place");
    for (std::size_t m = plan.size() / 2; m >= 1; m /= 2) inverse_stage(plan, buf.data(), m, groups);
    bit_reverse_impl(plan, buf);
}

template <class T>
void forward_native(const Plan<T>& plan, std::span<T> buf) {
    forward_impl(plan, buf, kernels::active<T>().forward_groups);
}

template <class T>
void inverse_native(const Plan<T>& plan, std::span<T> buf) {
    inverse_impl(plan, buf, kernels::active<T>().inverse_groups);
}

constexpr auto bf16_forward_groups = [](bf16* b, std::size_t m, const float* wr,
                                        const float* wi) noexcept {
    kernels::scalar::forward_groups(b, m, wr, wi);
};

constexpr auto bf16_inverse_groups = [](bf16* b, std::size_t m, const float* wr,
                                        const float* wi) noexcept {
    kernels::scalar::inverse_groups(b, m, wr, wi);
};

template <class T>
std::vector<StageView<T>> forward_staged_impl(const Plan<T>& plan, std::span<T> buf) {
    bit_reverse_impl(plan, buf);
    std::vector<StageView<T>> views;
    views.reserve(plan.stages());
    const auto groups = kernels::active<T>().forward_groups;
    std::size_t stage = 1;
    for (std::size_t m = 1; m < plan.size(); m *= 2, ++stage) {
        forward_stage(plan, buf.data(), m, groups);
        views.push_back({stage, 2 * m, std::vector<T>(buf.begin(), buf.end())});
    }
    return views;
}

} // namespace

void bit_reverse_in_place(const Plan<float>& plan, std::span<float> buf) {
    bit_reverse_impl(plan, buf);
}
void bit_reverse_in_place(const Plan<double>& plan, std::span<double> buf) {
    bit_reverse_impl(plan, buf);
}
void bit_reverse_in_place(const Plan<float>& plan, std::span<bf16> buf) {
    bit_reverse_impl(plan, buf);
}

void forward_in_place(const Plan<float>& plan, std::span<float> buf) { forward_native(plan, buf); }
void forward_in_place(const Plan<double>& plan, std::span<double> buf) {
    forward_native(plan, buf);
}
void forward_in_place(const Plan<float>& plan, std::span<bf16> buf) {
    forward_impl(plan, buf, bf16_forward_groups);
}

void inverse_in_place(const Plan<float>& plan, std::span<float> buf) { inverse_native(plan, buf); }
void inverse_in_place(const Plan<double>& plan, std::span<double> buf) {
    inverse_native(plan, buf);
}
void inverse_in_place(const Plan<float>& plan, std::span<bf16> buf) {
    inverse_impl(plan, buf, bf16_inverse_groups);
}

std::vector<StageView<float>> forward_staged(const Plan<float>& plan, std::span<float> buf) {
    return forward_staged_impl(plan, buf);
}
std::vector<StageView<double>> forward_staged(const Plan<double>& plan, std::span<double> buf) {
    return forward_staged_impl(plan, buf);
}

} // namespace rdfft
