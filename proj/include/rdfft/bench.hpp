// SPDX-License-Identifier: Apache-2.0
//
// Timing, oracle verification and allocation audit over a matrix of
// (operation, size, precision) cells.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rdfft/common.hpp"

namespace rdfft::bench {

enum class Op { fft, ifft, roundtrip, circulant_fwd, circulant_bwd };
enum class Format { human, json, csv };

std::string_view to_string(Op op) noexcept;
std::string_view to_string(Format f) noexcept;
std::optional<Op> parse_op(std::string_view s) noexcept;
std::optional<Format> parse_format(std::string_view s) noexcept;
std::optional<Precision> parse_precision(std::string_view s) noexcept;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BenchConfig {
    std::vector<Op> ops{Op::fft, Op::ifft, Op::roundtrip, Op::circulant_fwd, Op::circulant_bwd};
    std::vector<std::size_t> sizes{256, 512, 1024, 2048, 4096};
    std::vector<Precision> precisions{Precision::f32, Precision::f64};
    std::size_t reps = 1000;
    std::size_t warmup = 10;
    std::uint64_t seed = 42;
    Format format = Format::human;
    bool verify = false;
    bool strict = false;
    /// Block grid for the circulant ops; each size is used as the block size p.
    std::size_t q_out = 2;
    std::size_t q_in = 2;
};

/// Throws ConfigError.
void validate(const BenchConfig& config);

/// RDFFT_BENCH_SEED, when set to an unsigned integer, replaces config.seed.
/// Throws ConfigError when it is set but unparsable.
void apply_environment(BenchConfig& config);

/// Accuracy gates. abs_err is max over slots; rel_err is ||err|| / ||ref||.
struct Thresholds {
    std::optional<double> abs_err;
    double rel_err;
};

Thresholds thresholds(Op op, Precision precision) noexcept;

/// Seed of the mt19937_64 that draws a cell's inputs (unit normal via
/// std::normal_distribution, rounded to the cell precision).
std::uint64_t cell_seed(std::uint64_t seed, Op op, std::size_t n, Precision precision) noexcept;

struct BenchCell {
    Op op = Op::fft;
    std::size_t n = 0;
    Precision precision = Precision::f32;
    double mean_ns = 0;
    double median_ns = 0;
    double min_ns = 0;
    bool verified = false;
    double abs_err = 0;       ///< max |kernel - oracle|
    double abs_err_mean = 0;  ///< mean |kernel - oracle|
    double rel_err = 0;       ///< ||kernel - oracle||_2 / ||oracle||_2
    std::size_t alloc_count = 0;
    std::size_t scratch_bytes = 0;
    bool passed = true;
};

struct BenchReport {
    std::string isa;
    std::vector<BenchCell> cells;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
};

/// Re-evaluates cell.passed and appends any violations (allocation always,
/// accuracy only when the cell was verified).
void evaluate(BenchCell& cell, std::vector<std::string>& violations);

BenchReport run_bench(const BenchConfig& config);

/// json: array of cell objects with keys op, n, precision, isa, mean_ns,
/// median_ns, min_ns, abs_err, abs_err_mean, rel_err, alloc_count,
/// scratch_bytes, passed (error fields are null when not verified).
/// csv: header line plus one row per cell.
std::string emit_report(const BenchReport& report, Format format);

/// 0 when ok; 2 when strict and any cell failed.
int exit_code(const BenchReport& report, bool strict) noexcept;

} // namespace rdfft::bench
