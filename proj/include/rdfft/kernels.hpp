// SPDX-License-Identifier: Apache-2.0
//
// Inner loops behind the transforms and packed arithmetic. A scalar reference
// table always exists; vector tables are compiled per ISA and picked at
// runtime from CPU feature detection.
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace rdfft::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;

/// Function table for one scalar type.
///
/// `forward_groups` / `inverse_groups` act on one merge block of 2m slots
/// starting at `block` and cover the four-slot groups
/// {k, m-k, m+k, 2m-k} for 1 <= k < m/2. `wr[k-1] + i*wi[k-1]` is
/// exp(-i*pi*k/m). The k = 0 and k = m/2 slots are left to the caller.
///
/// `multiply`, `multiply_accumulate` and `axpy` run over whole packed
/// spectra of length n (n >= 2, power of two).
template <class T>
struct KernelTable {
    Isa isa;
    void (*forward_groups)(T* block, std::size_t m, const T* wr, const T* wi) noexcept;
    void (*inverse_groups)(T* block, std::size_t m, const T* wr, const T* wi) noexcept;
    void (*multiply)(T* acc, const T* other, std::size_t n, bool conjugate_other) noexcept;
    void (*multiply_accumulate)(T* acc, const T* a, const T* b, std::size_t n,
                                bool conjugate_b) noexcept;
    void (*axpy)(T* acc, const T* other, T scale, std::size_t n) noexcept;
};

/// Best ISA this CPU supports among those compiled in.
Isa detect_isa() noexcept;

/// Whether `isa` was compiled in and the CPU can run it.
bool isa_available(Isa isa) noexcept;

/// ISA used by the transforms. Starts as detect_isa(), or RDFFT_ISA from the
/// environment when that names an available ISA.
Isa active_isa() noexcept;

/// Returns false (and changes nothing) if `isa` is unavailable.
bool set_active_isa(Isa isa) noexcept;

/// Table for a specific ISA; `isa` must be available.
template <class T>
const KernelTable<T>& table_for(Isa isa) noexcept;

template <class T>
const KernelTable<T>& active() noexcept {
    return table_for<T>(active_isa());
}

/// Restores the previously active ISA on scope exit.
class ScopedIsa {
public:
    explicit ScopedIsa(Isa isa) noexcept : previous_(active_isa()) { set_active_isa(isa); }
    ~ScopedIsa() { set_active_isa(previous_); }
    ScopedIsa(const ScopedIsa&) = delete;
    ScopedIsa& operator=(const ScopedIsa&) = delete;

private:
    Isa previous_;
};

} // namespace rdfft::kernels
