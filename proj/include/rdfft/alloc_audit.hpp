// SPDX-License-Identifier: Apache-2.0
//
// Allocation counter backed by replacement global operator new/delete.
// Linking the rdfft_audit library into an executable installs the counting
// operators for the whole process.
#pragma once

#include <cstddef>

namespace rdfft::audit {

struct AllocStats {
    std::size_t count = 0;
    std::size_t bytes = 0;
};

/// Totals since process start, across all threads.
AllocStats totals() noexcept;

/// Counts acquisitions made between construction and delta().
class AllocScope {
public:
    AllocScope() noexcept : start_(totals()) {}

    AllocStats delta() const noexcept {
        const AllocStats now = totals();
        return {now.count - start_.count, now.bytes - start_.bytes};
    }

private:
    AllocStats start_;
};

} // namespace rdfft::audit
