// SPDX-License-Identifier: Apache-2.0

#include "rdfft/kernels.hpp"

#include <atomic>
#include <cstdlib>

#include "kernels_scalar.hpp"
#ifdef RDFFT_HAVE_AVX2
#include "kernels_avx2.hpp"
#endif

namespace rdfft::kernels {
namespace {

template <class T>
constexpr KernelTable<T> scalar_table{
    Isa::scalar,
    [](T* block, std::size_t m, const T* wr, const T* wi) noexcept {
        scalar::forward_groups(block, m, wr, wi);
    },
    [](T* block, std::size_t m, const T* wr, const T* wi) noexcept {
        scalar::inverse_groups(block, m, wr, wi);
    },
    &scalar::multiply<T>,
    &scalar::multiply_accumulate<T>,
    [](T* acc, const T* other, T scale, std::size_t n) noexcept {
        scalar::axpy(acc, other, scale, n);
    },
};

bool cpu_has_avx2() noexcept {
#if defined(RDFFT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() noexcept {
    if (const char* env = std::getenv("RDFFT_ISA")) {
        if (auto isa = parse_isa(env); isa && isa_available(*isa)) return *isa;
    }
    return detect_isa();
}

std::atomic<Isa>& active_slot() noexcept {
    static std::atomic<Isa> slot{initial_isa()};
    return slot;
}

} // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    return std::nullopt;
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    }
    return false;
}

Isa detect_isa() noexcept { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
    if (!isa_available(isa)) return false;
    active_slot().store(isa, std::memory_order_relaxed);
    return true;
}

template <class T>
const KernelTable<T>& table_for(Isa isa) noexcept {
#ifdef RDFFT_HAVE_AVX2
    if (isa == Isa::avx2) return avx2::table<T>();
#endif
    (void)isa;
    return scalar_table<T>;
}

template const KernelTable<float>& table_for<float>(Isa) noexcept;
template const KernelTable<double>& table_for<double>(Isa) noexcept;

} // namespace rdfft::kernels
