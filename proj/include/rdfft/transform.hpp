// SPDX-License-Identifier: Apache-2.0
//
// In-place real-domain radix-2 FFT. The forward transform turns n real
// samples into the packed spectrum of packed_spectrum.hpp inside the same n
// scalars; the inverse runs the butterfly graph backwards. Decimation in time:
// an up-front bit reversal, then log2(n) merge stages. Stage merging two
// packed m-point sub-spectra A (slots [b, b+m)) and B (slots [b+m, b+2m))
// touches, for each 1 <= k < m/2, only the four slots {b+k, b+m-k, b+m+k,
// b+2m-k}: they hold A_k and B_k on entry and y_k, y_{m-k} on exit.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rdfft/bf16.hpp"
#include "rdfft/common.hpp"

namespace rdfft {

/// Slots touched by the k-th four-slot group of a merge of m-point blocks at
/// `base`, in the order (Re A_k, Im A_k, Re B_k, Im B_k) on entry.
constexpr std::array<std::size_t, 4> butterfly_group(std::size_t base, std::size_t m,
                                                     std::size_t k) noexcept {
    return {base + k, base + m - k, base + m + k, base + 2 * m - k};
}

/// Immutable tables for one transform length. Construction is the only step
/// that allocates; transforms borrow the plan read-only and may share it
/// across threads.
template <class T>
class Plan {
public:
    /// Throws SizeError unless n is a power of two >= 2.
    explicit Plan(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::size_t stages() const noexcept { return stages_; }
    std::span<const std::uint32_t> bitrev() const noexcept { return bitrev_; }

    /// Twiddles exp(-i*pi*k/m), k = 1 .. m/2-1, for the merge of m-point
    /// blocks. Empty for m < 4.
    std::span<const T> twiddle_re(std::size_t m) const noexcept;
    std::span<const T> twiddle_im(std::size_t m) const noexcept;

private:
    std::size_t n_;
    std::size_t stages_;
    std::vector<std::uint32_t> bitrev_;
    std::vector<T> tw_re_;
    std::vector<T> tw_im_;
    std::vector<std::size_t> tw_offset_; // indexed by log2(m)
};

extern template class Plan<float>;
extern template class Plan<double>;

template <class T>
Plan<T> plan_create(std::size_t n) {
    return Plan<T>(n);
}

void bit_reverse_in_place(const Plan<float>& plan, std::span<float> buf);
void bit_reverse_in_place(const Plan<double>& plan, std::span<double> buf);
void bit_reverse_in_place(const Plan<float>& plan, std::span<bf16> buf);

/// Real signal -> packed spectrum, unnormalized, exp(-i...) convention.
void forward_in_place(const Plan<float>& plan, std::span<float> buf);
void forward_in_place(const Plan<double>& plan, std::span<double> buf);
/// bf16 storage: every butterfly widens to float and rounds on store.
void forward_in_place(const Plan<float>& plan, std::span<bf16> buf);

/// Packed spectrum -> real signal, including the 1/n factor (applied as 1/2
/// per stage).
void inverse_in_place(const Plan<float>& plan, std::span<float> buf);
void inverse_in_place(const Plan<double>& plan, std::span<double> buf);
void inverse_in_place(const Plan<float>& plan, std::span<bf16> buf);

/// Buffer contents after one forward merge stage.
template <class T>
struct StageView {
    std::size_t stage_index; ///< 1-based
    std::size_t block_size;  ///< every aligned window of this size is a packed sub-spectrum
    std::vector<T> snapshot;
};

/// forward_in_place with a snapshot after every stage. Diagnostic only: it
/// allocates the snapshots.
std::vector<StageView<float>> forward_staged(const Plan<float>& plan, std::span<float> buf);
std::vector<StageView<double>> forward_staged(const Plan<double>& plan, std::span<double> buf);

} // namespace rdfft
