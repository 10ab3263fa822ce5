// SPDX-License-Identifier: Apache-2.0

#include "rdfft/bench.hpp"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rdfft/alloc_audit.hpp"
#include "rdfft/circulant.hpp"
#include "rdfft/kernels.hpp"
#include "rdfft/oracle.hpp"
#include "rdfft/packed_spectrum.hpp"
#include "rdfft/transform.hpp"

namespace rdfft::bench {
namespace {

struct ErrorStats {
    double max_abs = 0;
    double mean_abs = 0;
    double rel = 0;
};

template <class T>
ErrorStats compare(std::span<const T> got, std::span<const double> ref) {
    ErrorStats e;
    double err_sq = 0;
    double ref_sq = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double d = static_cast<double>(got[i]) - ref[i];
        e.max_abs = std::max(e.max_abs, std::abs(d));
        e.mean_abs += std::abs(d);
        err_sq += d * d;
        ref_sq += ref[i] * ref[i];
    }
    if (!ref.empty()) e.mean_abs /= static_cast<double>(ref.size());
    e.rel = ref_sq > 0 ? std::sqrt(err_sq / ref_sq) : std::sqrt(err_sq);
    return e;
}

ErrorStats worst(const ErrorStats& a, const ErrorStats& b) {
    return {std::max(a.max_abs, b.max_abs), std::max(a.mean_abs, b.mean_abs), std::max(a.rel, b.rel)};
}

std::vector<double> unit_normal(std::size_t count, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(count);
    for (auto& x : v) x = dist(rng) * scale;
    return v;
}

template <class T>
std::vector<T> narrow(const std::vector<double>& v) {
    return std::vector<T>(v.begin(), v.end());
}

template <class T>
std::vector<double> widen(std::span<const T> v) {
    return std::vector<double>(v.begin(), v.end());
}

struct Timing {
    double mean_ns = 0;
    double median_ns = 0;
    double min_ns = 0;
};

// Runs `call` warmup times, then reps times in batches, recording per-call
// time for each batch. `samples` must be preallocated by the caller so the
// loop itself does not allocate.
template <class Call>
Timing time_calls(std::size_t reps, std::size_t warmup, std::vector<double>& samples, Call&& call) {
    using clock = std::chrono::steady_clock;
    for (std::size_t i = 0; i < warmup; ++i) call();
    const std::size_t batch = std::max<std::size_t>(1, reps / 20);
    samples.clear();
    std::size_t done = 0;
    double total_ns = 0;
    while (done < reps) {
        const std::size_t count = std::min(batch, reps - done);
        const auto t0 = clock::now();
        for (std::size_t i = 0; i < count; ++i) call();
        const auto t1 = clock::now();
        const double ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
        total_ns += ns;
        samples.push_back(ns / static_cast<double>(count));
        done += count;
    }
    Timing t;
    t.mean_ns = total_ns / static_cast<double>(reps);
    std::sort(samples.begin(), samples.end());
    t.min_ns = samples.front();
    const std::size_t s = samples.size();
    t.median_ns = s % 2 ? samples[s / 2] : 0.5 * (samples[s / 2 - 1] + samples[s / 2]);
    return t;
}

std::size_t sample_capacity(std::size_t reps) {
    const std::size_t batch = std::max<std::size_t>(1, reps / 20);
    return reps / batch + 1;
}

template <class T>
BenchCell run_transform_cell(Op op, std::size_t n, const BenchConfig& cfg) {
    std::mt19937_64 rng(cell_seed(cfg.seed, op, n, precision_of<T>()));
    // The oracle sees x after rounding to T, exactly what the kernel sees.
    const std::vector<T> x = narrow<T>(unit_normal(n, rng));
    const std::vector<double> xd = widen<T>(x);
    const Plan<T> plan(n);

    std::vector<double> spectrum_ref;  // oracle packed spectrum of x
    if (cfg.verify || op == Op::ifft) {
        spectrum_ref = pack(std::span<const std::complex<double>>(oracle::naive_dft(xd)));
    }
    const std::vector<T> source = op == Op::ifft ? narrow<T>(spectrum_ref) : x;
    std::vector<T> work(n);
    std::vector<double> samples;
    samples.reserve(sample_capacity(cfg.reps));

    auto call = [&] {
        std::copy(source.begin(), source.end(), work.begin());
        switch (op) {
        case Op::fft: forward_in_place(plan, std::span<T>(work)); break;
        case Op::ifft: inverse_in_place(plan, std::span<T>(work)); break;
        default:
            forward_in_place(plan, std::span<T>(work));
            inverse_in_place(plan, std::span<T>(work));
            break;
        }
    };

    BenchCell cell;
    cell.op = op;
    cell.n = n;
    cell.precision = precision_of<T>();

    audit::AllocScope scope;
    call();
    // compare() only reads and accumulates scalars, so it can run inside the
    // audited region on the first result.
    ErrorStats err;
    const bool have_err = cfg.verify;
    if (have_err) {
        const std::span<const double> ref =
            op == Op::fft ? std::span<const double>(spectrum_ref) : std::span<const double>(xd);
        err = compare<T>(work, ref);
    }
    const Timing t = time_calls(cfg.reps, cfg.warmup, samples, call);
    const audit::AllocStats allocs = scope.delta();

    cell.mean_ns = t.mean_ns;
    cell.median_ns = t.median_ns;
    cell.min_ns = t.min_ns;
    cell.alloc_count = allocs.count;
    cell.scratch_bytes = allocs.bytes;
    if (have_err) {
        cell.verified = true;
        cell.abs_err = err.max_abs;
        cell.abs_err_mean = err.mean_abs;
        cell.rel_err = err.rel;
    }
    return cell;
}

template <class T>
BenchCell run_circulant_cell(Op op, std::size_t p, const BenchConfig& cfg) {
    std::mt19937_64 rng(cell_seed(cfg.seed, op, p, precision_of<T>()));
    const std::size_t q_out = cfg.q_out;
    const std::size_t q_in = cfg.q_in;
    const double scale = 1.0 / std::sqrt(static_cast<double>(p * q_in));
    const std::vector<double> cd = unit_normal(q_out * q_in * p, rng, scale);
    const std::vector<double> xd = unit_normal(q_in * p, rng);
    const std::vector<double> gd = unit_normal(q_out * p, rng);

    const std::vector<T> c = narrow<T>(cd);
    const CirculantLayer<T> layer(p, q_out, q_in, c);
    const std::vector<T> x = narrow<T>(xd);
    const std::vector<T> g_source = narrow<T>(gd);
    std::vector<T> y(layer.rows());
    std::vector<T> x_spec(layer.cols());
    std::vector<T> g(layer.rows());
    GradientSet<T> grads(layer);
    std::vector<double> samples;
    samples.reserve(sample_capacity(cfg.reps));

    if (op == Op::circulant_bwd) layer.forward(x, y, x_spec);

    auto call = [&] {
        if (op == Op::circulant_fwd) {
            layer.forward(x, y, x_spec);
        } else {
            std::copy(g_source.begin(), g_source.end(), g.begin());
            layer.backward(x_spec, g, grads);
        }
    };

    BenchCell cell;
    cell.op = op;
    cell.n = p;
    cell.precision = precision_of<T>();

    audit::AllocScope scope;
    call();
    const Timing t = time_calls(cfg.reps, cfg.warmup, samples, call);
    const audit::AllocStats allocs = scope.delta();

    cell.mean_ns = t.mean_ns;
    cell.median_ns = t.median_ns;
    cell.min_ns = t.min_ns;
    cell.alloc_count = allocs.count;
    cell.scratch_bytes = allocs.bytes;

    if (cfg.verify) {
        // Inputs are rounded to T first so the oracle sees exactly what the
        // kernel saw.
        const auto c_used = widen<T>(c);
        const auto x_used = widen<T>(x);
        const auto g_used = widen<T>(g_source);
        ErrorStats err;
        if (op == Op::circulant_fwd) {
            const auto ref = oracle::naive_circulant_matvec(p, q_out, q_in, c_used, x_used);
            err = compare<T>(y, ref);
        } else {
            const auto dense = oracle::dense_block_circulant(p, q_out, q_in, c_used);
            const auto ref_x = oracle::matvec_transposed(dense, g_used);
            const auto ref_c = oracle::circulant_weight_gradient(p, q_out, q_in, x_used, g_used);
            err = worst(compare<T>(grads.grad_input, ref_x), compare<T>(grads.grad_weights, ref_c));
        }
        cell.verified = true;
        cell.abs_err = err.max_abs;
        cell.abs_err_mean = err.mean_abs;
        cell.rel_err = err.rel;
    }
    return cell;
}

template <class T>
BenchCell run_cell(Op op, std::size_t n, const BenchConfig& cfg) {
    if (op == Op::circulant_fwd || op == Op::circulant_bwd) return run_circulant_cell<T>(op, n, cfg);
    return run_transform_cell<T>(op, n, cfg);
}

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void check_scaling(BenchReport& report) {
    for (Precision prec : {Precision::f32, Precision::f64}) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0;
        int count = 0;
        for (const auto& c : report.cells) {
            if (c.op != Op::fft || c.precision != prec || c.n < 256 || c.n > 4096) continue;
            const double r =
                c.median_ns / (static_cast<double>(c.n) * static_cast<double>(std::bit_width(c.n) - 1));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            ++count;
        }
        if (count >= 2 && lo > 0 && hi / lo > 4.0) {
            report.warnings.push_back(std::string("fft ") + rdfft::to_string(prec) +
                                      ": median time per n*log2(n) varies by a factor of " +
                                      format_sci(hi / lo) + " across sizes (soft limit 4)");
        }
    }
}

} // namespace

std::uint64_t cell_seed(std::uint64_t seed, Op op, std::size_t n, Precision prec) noexcept {
    // splitmix64 over the cell coordinates
    std::uint64_t z = seed ^ (static_cast<std::uint64_t>(op) << 56) ^
                      (static_cast<std::uint64_t>(prec) << 48) ^ static_cast<std::uint64_t>(n);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string_view to_string(Op op) noexcept {
    switch (op) {
    case Op::fft: return "fft";
    case Op::ifft: return "ifft";
    case Op::roundtrip: return "roundtrip";
    case Op::circulant_fwd: return "circulant-fwd";
    case Op::circulant_bwd: return "circulant-bwd";
    }
    return "unknown";
}

std::string_view to_string(Format f) noexcept {
    switch (f) {
    case Format::human: return "human";
    case Format::json: return "json";
    case Format::csv: return "csv";
    }
    return "unknown";
}

std::optional<Op> parse_op(std::string_view s) noexcept {
    for (Op op : {Op::fft, Op::ifft, Op::roundtrip, Op::circulant_fwd, Op::circulant_bwd}) {
        if (s == to_string(op)) return op;
    }
    return std::nullopt;
}

std::optional<Format> parse_format(std::string_view s) noexcept {
    for (Format f : {Format::human, Format::json, Format::csv}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

std::optional<Precision> parse_precision(std::string_view s) noexcept {
    if (s == "f32") return Precision::f32;
    if (s == "f64") return Precision::f64;
    return std::nullopt;
}

void validate(const BenchConfig& config) {
    if (config.ops.empty()) throw ConfigError("no operations selected");
    if (config.sizes.empty()) throw ConfigError("no sizes selected");
    if (config.precisions.empty()) throw ConfigError("no precisions selected");
    for (std::size_t n : config.sizes) {
        if (n < 2 || !is_power_of_two(n)) {
            throw ConfigError("size " + std::to_string(n) + " is not a power of two >= 2");
        }
        if (n > (std::size_t{1} << 30)) throw ConfigError("size " + std::to_string(n) + " too large");
    }
    if (config.reps < 1) throw ConfigError("reps must be >= 1");
    if (config.q_out < 1 || config.q_in < 1) throw ConfigError("block counts must be >= 1");
}

void apply_environment(BenchConfig& config) {
    const char* env = std::getenv("RDFFT_BENCH_SEED");
    if (!env || !*env) return;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0' || *env == '-') {
        throw ConfigError(std::string("RDFFT_BENCH_SEED is not an unsigned integer: ") + env);
    }
    config.seed = v;
}

Thresholds thresholds(Op op, Precision precision) noexcept {
    const bool f32 = precision == Precision::f32;
    switch (op) {
    case Op::fft: return f32 ? Thresholds{5e-6, 5e-3} : Thresholds{1e-12, 1e-10};
    case Op::ifft:
    case Op::roundtrip: return f32 ? Thresholds{1e-5, 1e-5} : Thresholds{1e-11, 1e-11};
    case Op::circulant_fwd: return f32 ? Thresholds{1e-4, 1e-4} : Thresholds{1e-10, 1e-10};
    case Op::circulant_bwd: return f32 ? Thresholds{std::nullopt, 1e-3} : Thresholds{std::nullopt, 1e-7};
    }
    return {std::nullopt, 0};
}

void evaluate(BenchCell& cell, std::vector<std::string>& violations) {
    const std::string where = std::string(to_string(cell.op)) + " n=" + std::to_string(cell.n) +
                              " " + rdfft::to_string(cell.precision) + ": ";
    cell.passed = true;
    if (cell.alloc_count != 0 || cell.scratch_bytes != 0) {
        cell.passed = false;
        violations.push_back(where + std::to_string(cell.alloc_count) + " allocations, " +
                             std::to_string(cell.scratch_bytes) + " scratch bytes (limit 0)");
    }
    if (!cell.verified) return;
    const Thresholds th = thresholds(cell.op, cell.precision);
    if (th.abs_err && !(cell.abs_err <= *th.abs_err)) {
        cell.passed = false;
        violations.push_back(where + "abs_err " + format_sci(cell.abs_err) + " > " +
                             format_sci(*th.abs_err));
    }
    if (!(cell.rel_err <= th.rel_err)) {
        cell.passed = false;
        violations.push_back(where + "rel_err " + format_sci(cell.rel_err) + " > " +
                             format_sci(th.rel_err));
    }
}

BenchReport run_bench(const BenchConfig& config) {
    validate(config);
    BenchReport report;
    report.isa = std::string(kernels::to_string(kernels::active_isa()));
    for (Op op : config.ops) {
        for (Precision prec : config.precisions) {
            for (std::size_t n : config.sizes) {
                BenchCell cell = prec == Precision::f32 ? run_cell<float>(op, n, config)
                                                        : run_cell<double>(op, n, config);
                evaluate(cell, report.violations);
                report.cells.push_back(cell);
            }
        }
    }
    check_scaling(report);
    return report;
}

std::string emit_report(const BenchReport& report, Format format) {
    std::ostringstream out;
    switch (format) {
    case Format::json: {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& c : report.cells) {
            nlohmann::json j;
            j["op"] = std::string(to_string(c.op));
            j["n"] = c.n;
            j["precision"] = rdfft::to_string(c.precision);
            j["isa"] = report.isa;
            j["mean_ns"] = c.mean_ns;
            j["median_ns"] = c.median_ns;
            j["min_ns"] = c.min_ns;
            if (c.verified) {
                j["abs_err"] = c.abs_err;
                j["abs_err_mean"] = c.abs_err_mean;
                j["rel_err"] = c.rel_err;
            } else {
                j["abs_err"] = nullptr;
                j["abs_err_mean"] = nullptr;
                j["rel_err"] = nullptr;
            }
            j["alloc_count"] = c.alloc_count;
            j["scratch_bytes"] = c.scratch_bytes;
            j["passed"] = c.passed;
            cells.push_back(std::move(j));
        }
        out << cells.dump(2) << '\n';
        break;
    }
    case Format::csv: {
        out << "op,n,precision,isa,mean_ns,median_ns,min_ns,abs_err,abs_err_mean,rel_err,"
               "alloc_count,scratch_bytes,passed\n";
        for (const auto& c : report.cells) {
            out << to_string(c.op) << ',' << c.n << ',' << rdfft::to_string(c.precision) << ','
                << report.isa << ',' << c.mean_ns << ',' << c.median_ns << ',' << c.min_ns << ',';
            if (c.verified) {
                out << format_sci(c.abs_err) << ',' << format_sci(c.abs_err_mean) << ','
                    << format_sci(c.rel_err);
            } else {
                out << ",,";
            }
            out << ',' << c.alloc_count << ',' << c.scratch_bytes << ','
                << (c.passed ? "true" : "false") << '\n';
        }
        break;
    }
    case Format::human: {
        char line[256];
        std::snprintf(line, sizeof line, "%-14s %6s %4s %12s %12s %10s %10s %6s %8s %s\n", "op", "n",
                      "prec", "mean_ns", "median_ns", "abs_err", "rel_err", "allocs", "scratch",
                      "status");
        out << "isa: " << report.isa << '\n' << line;
        for (const auto& c : report.cells) {
            const std::string abs = c.verified ? format_sci(c.abs_err) : "-";
            const std::string rel = c.verified ? format_sci(c.rel_err) : "-";
            std::snprintf(line, sizeof line, "%-14s %6zu %4s %12.1f %12.1f %10s %10s %6zu %8zu %s\n",
                          std::string(to_string(c.op)).c_str(), c.n, rdfft::to_string(c.precision),
                          c.mean_ns, c.median_ns, abs.c_str(), rel.c_str(), c.alloc_count,
                          c.scratch_bytes, c.passed ? "ok" : "FAIL");
            out << line;
        }
        for (const auto& w : report.warnings) out << "warning: " << w << '\n';
        for (const auto& v : report.violations) out << "violation: " << v << '\n';
        break;
    }
    }
    return out.str();
}

int exit_code(const BenchReport& report, bool strict) noexcept {
    if (!strict) return 0;
    for (const auto& c : report.cells) {
        if (!c.passed) return 2;
    }
    return 0;
}

} // namespace rdfft::bench
