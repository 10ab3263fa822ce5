// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rdfft/kernels.hpp"

namespace rdfft::kernels::avx2 {

// Defined only when the AVX2 translation unit is built.
template <class T>
const KernelTable<T>& table() noexcept;

} // namespace rdfft::kernels::avx2
