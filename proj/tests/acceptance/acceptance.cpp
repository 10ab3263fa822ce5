// SPDX-License-Identifier: Apache-2.0
//
// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: rdfft_acceptance [path/to/rdfft_bench]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "../gradcheck.hpp"
#include "../support.hpp"
#include "rdfft/alloc_audit.hpp"
#include "rdfft/circulant.hpp"
#include "rdfft/oracle.hpp"
#include "rdfft/packed_spectrum.hpp"
#include "rdfft/transform.hpp"

#ifndef RDFFT_BENCH_PATH
#define RDFFT_BENCH_PATH "rdfft_bench"
#endif

using namespace rdfft;
using namespace rdfft::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. f32 forward accuracy against the 64-bit oracle.
Outcome operator_accuracy() {
    const auto t0 = Clock::now();
    Outcome out;
    std::mt19937_64 rng(1);
    const int trials = 10;
    for (std::size_t n : {512u, 1024u, 4096u}) {
        const Plan<float> plan(n);
        double worst_abs = 0, worst_rel = 0, mean_abs = 0;
        for (int t = 0; t < trials; ++t) {
            auto x = normal_as<float>(n, rng);
            const auto ref = pack(oracle::naive_dft(std::span<const double>(widen<float>(x))), 1e-9);
            forward_in_place(plan, std::span<float>(x));
            worst_abs = std::max(worst_abs, max_abs_diff(x, ref));
            worst_rel = std::max(worst_rel, rel_norm_diff(x, ref));
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += std::abs(double(x[i]) - ref[i]);
            mean_abs += s / double(n) / trials;
        }
        const bool ok = worst_abs <= 5e-6 && worst_rel <= 5e-3;
        out.pass = out.pass && ok;
        out.detail += "n=" + std::to_string(n) + " max_abs " + sci(worst_abs) + " rel " + sci(worst_rel) +
                      " (mean_abs " + sci(mean_abs) + ")" + (ok ? "" : " over limit") + "; ";
    }
    const double secs = seconds_since(t0);
    out.pass = out.pass && secs < 10;
    out.detail += "limits 5e-6 / 5e-3, " + sci(secs) + " s";
    return out;
}

// 2. inverse(forward(x)) = x.
Outcome round_trip() {
    Outcome out;
    std::mt19937_64 rng(2);
    double worst_f = 0, worst_d = 0;
    for (std::size_t n : powers_of_two(2, 4096)) {
        const Plan<float> pf(n);
        const Plan<double> pd(n);
        for (int t = 0; t < 100; ++t) {
            const auto xf = normal_as<float>(n, rng);
            auto bf = xf;
            forward_in_place(pf, std::span<float>(bf));
            inverse_in_place(pf, std::span<float>(bf));
            worst_f = std::max(worst_f, max_abs_diff(bf, xf));

            const auto xd = normal(n, rng);
            auto bd = xd;
            forward_in_place(pd, std::span<double>(bd));
            inverse_in_place(pd, std::span<double>(bd));
            worst_d = std::max(worst_d, max_abs_diff(bd, xd));
        }
    }
    out.pass = worst_f <= 1e-5 && worst_d <= 1e-11;
    out.detail = "n=2..4096 x100: f32 max " + sci(worst_f) + " (<= 1e-5), f64 max " + sci(worst_d) +
                 " (<= 1e-11)";
    return out;
}

// 3. pack/unpack bijection and forward = pack(naive_dft(x)).
Outcome layout() {
    Outcome out;
    std::mt19937_64 rng(3);
    std::size_t bijection_failures = 0, bijection_checks = 0;
    for (std::size_t n : powers_of_two(2, 4096)) {
        for (int t = 0; t < 1000; ++t) {
            const auto y = random_hermitian(n, rng);
            const auto packed = pack(std::span<const std::complex<double>>(y));
            bijection_checks += 2;
            if (unpack(std::span<const double>(packed)) != y) ++bijection_failures;
            const auto s = normal(n, rng);
            const auto again = pack(unpack(std::span<const double>(s)), 0.0);
            if (std::memcmp(again.data(), s.data(), n * sizeof(double)) != 0) ++bijection_failures;
        }
    }
    double worst_d = 0, worst_f = 0;
    for (std::size_t n : powers_of_two(2, 4096)) {
        auto x = normal(n, rng);
        const auto ref = pack(oracle::naive_dft(std::span<const double>(x)), 1e-9);
        forward_in_place(Plan<double>(n), std::span<double>(x));
        worst_d = std::max(worst_d, max_abs_diff(x, ref));
        if (n <= 256) {
            auto xf = normal_as<float>(n, rng);
            const auto rf = pack(oracle::naive_dft(std::span<const double>(widen<float>(xf))), 1e-9);
            forward_in_place(Plan<float>(n), std::span<float>(xf));
            worst_f = std::max(worst_f, max_abs_diff(xf, rf));
        }
    }
    out.pass = bijection_failures == 0 && worst_d <= 1e-12 && worst_f <= 5e-6;
    out.detail = "bijection mismatches " + std::to_string(bijection_failures) +
                 " of " + std::to_string(bijection_checks) + "; forward vs pack(naive_dft) f64 n<=4096 max " + sci(worst_d) +
                 " (<= 1e-12), f32 n<=256 max " + sci(worst_f) + " (<= 5e-6)";
    return out;
}

// 4. After every stage each aligned block is the DFT of the input samples it
// was built from. Gate: per-block norm-relative error (f32 1e-5, f64 1e-12).
struct StagedError {
    double max_abs = 0;
    double max_rel = 0;
};

template <class T>
StagedError staged_error(std::size_t n, std::mt19937_64& rng) {
    const Plan<T> plan(n);
    const auto x = normal_as<T>(n, rng);
    auto buf = x;
    const auto stages = forward_staged(plan, std::span<T>(buf));
    auto reversed = x;
    bit_reverse_in_place(plan, std::span<T>(reversed));
    StagedError e;
    for (const auto& s : stages) {
        for (std::size_t base = 0; base < n; base += s.block_size) {
            const auto seg = block_signal<T>(reversed, base, s.block_size);
            const auto ref = oracle::naive_dft(std::span<const double>(seg));
            const auto got = unpack(std::span<const T>(s.snapshot.data() + base, s.block_size));
            double num = 0, den = 0;
            for (std::size_t k = 0; k < s.block_size; ++k) {
                const std::complex<double> g(got[k].real(), got[k].imag());
                e.max_abs = std::max(e.max_abs, std::abs(g - ref[k]));
                num += std::norm(g - ref[k]);
                den += std::norm(ref[k]);
            }
            e.max_rel = std::max(e.max_rel, std::sqrt(num / den));
        }
    }
    return e;
}

Outcome staged() {
    Outcome out;
    std::mt19937_64 rng(4);
    StagedError f, d;
    for (std::size_t n : {16u, 64u, 256u}) {
        for (int t = 0; t < 20; ++t) {
            const auto ef = staged_error<float>(n, rng);
            const auto ed = staged_error<double>(n, rng);
            f = {std::max(f.max_abs, ef.max_abs), std::max(f.max_rel, ef.max_rel)};
            d = {std::max(d.max_abs, ed.max_abs), std::max(d.max_rel, ed.max_rel)};
        }
    }
    out.pass = f.max_rel <= 1e-5 && d.max_rel <= 1e-12;
    out.detail = "n in {16,64,256}, every stage and block: f32 rel " + sci(f.max_rel) + " (<= 1e-5, max abs " +
                 sci(f.max_abs) + "), f64 rel " + sci(d.max_rel) + " (<= 1e-12, max abs " + sci(d.max_abs) + ")";
    return out;
}

const std::vector<std::pair<std::size_t, std::size_t>> kShapes{{1, 1}, {2, 3}, {4, 2}};
const std::vector<std::size_t> kBlockSizes{2, 4, 8, 16};

// 5. Circulant forward against the dense oracle.
Outcome circulant_equivalence() {
    Outcome out;
    std::mt19937_64 rng(5);
    double worst = 0;
    for (std::size_t p : kBlockSizes) {
        for (auto [q_out, q_in] : kShapes) {
            for (int t = 0; t < 10; ++t) {
                const auto w = normal_as<float>(p * q_out * q_in, rng, 1.0 / std::sqrt(double(p * q_in)));
                const auto x = normal_as<float>(p * q_in, rng);
                const CirculantLayer<float> layer(p, q_out, q_in, std::span<const float>(w));
                auto xs = x;
                std::vector<float> y(layer.rows());
                layer.forward(std::span<float>(xs), std::span<float>(y));
                const auto ref = oracle::naive_circulant_matvec(p, q_out, q_in, widen<float>(w), widen<float>(x));
                worst = std::max(worst, max_abs_diff(y, ref));
            }
        }
    }
    out.pass = worst <= 1e-4;
    out.detail = "p in {2,4,8,16}, 1x1 2x3 4x2, f32: max abs " + sci(worst) + " (<= 1e-4)";
    return out;
}

// 6. Analytic gradients against central differences.
Outcome gradients() {
    const auto t0 = Clock::now();
    Outcome out;
    double f_in = 0, f_w = 0, d_in = 0, d_w = 0;
    std::uint64_t seed = 600;
    for (std::size_t p : kBlockSizes) {
        for (auto [q_out, q_in] : kShapes) {
            for (int t = 0; t < 3; ++t) {
                const auto f = check_gradients<float>(p, q_out, q_in, seed++);
                f_in = std::max(f_in, f.input_rel);
                f_w = std::max(f_w, f.weight_rel);
                const auto d = check_gradients<double>(p, q_out, q_in, seed++);
                d_in = std::max({d_in, d.input_rel, d.input_rel_kernel});
                d_w = std::max({d_w, d.weight_rel, d.weight_rel_kernel});
            }
        }
    }
    const double secs = seconds_since(t0);
    out.pass = f_in <= 1e-3 && f_w <= 1e-3 && d_in <= 1e-7 && d_w <= 1e-7 && secs < 60;
    out.detail = "f32 rel input " + sci(f_in) + " weights " + sci(f_w) + " (<= 1e-3); f64 rel input " +
                 sci(d_in) + " weights " + sci(d_w) + " (<= 1e-7); " + sci(secs) + " s";
    return out;
}

// 7. No heap acquisitions after setup; canaries around buffers intact.
template <class T>
bool canary_ok(const std::vector<T>& storage, std::size_t guard, std::size_t n, T sentinel) {
    for (std::size_t i = 0; i < guard; ++i) {
        if (std::memcmp(&storage[i], &sentinel, sizeof(T)) != 0) return false;
        if (std::memcmp(&storage[guard + n + i], &sentinel, sizeof(T)) != 0) return false;
    }
    return true;
}

template <class T>
void audit_sizes(std::size_t& allocs, std::size_t& bytes, bool& canaries) {
    constexpr std::size_t guard = 32;
    const T sentinel = T(-31.5);
    std::mt19937_64 rng(7);
    for (std::size_t n : powers_of_two(2, 4096)) {
        const Plan<T> plan(n);
        std::vector<T> storage(n + 2 * guard, sentinel);
        const auto x = normal_as<T>(n, rng);
        std::copy(x.begin(), x.end(), storage.begin() + guard);
        const std::span<T> buf(storage.data() + guard, n);
        audit::AllocScope scope;
        forward_in_place(plan, buf);
        inverse_in_place(plan, buf);
        const auto d = scope.delta();
        allocs += d.count;
        bytes += d.bytes;
        canaries = canaries && canary_ok(storage, guard, n, sentinel);
    }
    for (std::size_t p : {2u, 16u, 256u, 1024u}) {
        for (auto [q_out, q_in] : kShapes) {
            const auto w = normal_as<T>(p * q_out * q_in, rng);
            const CirculantLayer<T> layer(p, q_out, q_in, std::span<const T>(w));
            GradientSet<T> grads(layer);
            std::vector<T> xs(layer.cols() + 2 * guard, sentinel);
            std::vector<T> ys(layer.rows() + 2 * guard, sentinel);
            std::vector<T> gs(layer.rows() + 2 * guard, sentinel);
            const auto x = normal_as<T>(layer.cols(), rng);
            const auto g = normal_as<T>(layer.rows(), rng);
            std::copy(x.begin(), x.end(), xs.begin() + guard);
            std::copy(g.begin(), g.end(), gs.begin() + guard);
            const std::span<T> xb(xs.data() + guard, layer.cols());
            const std::span<T> yb(ys.data() + guard, layer.rows());
            const std::span<T> gb(gs.data() + guard, layer.rows());
            audit::AllocScope scope;
            layer.forward(xb, yb);
            layer.backward(std::span<const T>(xb), gb, grads);
            const auto d = scope.delta();
            allocs += d.count;
            bytes += d.bytes;
            canaries = canaries && canary_ok(xs, guard, layer.cols(), sentinel) &&
                       canary_ok(ys, guard, layer.rows(), sentinel) &&
                       canary_ok(gs, guard, layer.rows(), sentinel);
        }
    }
}

Outcome zero_allocation() {
    Outcome out;
    std::size_t allocs = 0, bytes = 0;
    bool canaries = true;
    audit_sizes<float>(allocs, bytes, canaries);
    audit_sizes<double>(allocs, bytes, canaries);
    bool params_ok = true;
    for (std::size_t p : {2u, 16u, 256u}) {
        for (auto [q_out, q_in] : kShapes) {
            const std::vector<float> w(p * q_out * q_in, 0.0f);
            const CirculantLayer<float> layer(p, q_out, q_in, std::span<const float>(w));
            params_ok = params_ok && layer.parameter_count() == layer.rows() * layer.cols() / p;
        }
    }
    out.pass = allocs == 0 && bytes == 0 && canaries && params_ok;
    out.detail = "forward/inverse n=2..4096, circulant fwd/bwd p<=1024, f32+f64: " + std::to_string(allocs) +
                 " allocations, " + std::to_string(bytes) + " bytes; canaries " +
                 (canaries ? "intact" : "DAMAGED") + "; parameter count m*n/p " + (params_ok ? "holds" : "WRONG");
    return out;
}

// 8. Parseval and linearity.
Outcome parseval_linearity() {
    Outcome out;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<float> coef(-2.0f, 2.0f);
    double worst_parseval = 0, worst_linear = 0;
    for (std::size_t n : powers_of_two(2, 4096)) {
        const Plan<float> plan(n);
        for (int t = 0; t < 1000; ++t) {
            const auto x = normal_as<float>(n, rng);
            auto y = x;
            forward_in_place(plan, std::span<float>(y));
            double time_energy = 0, freq_energy = 0;
            for (float v : x) time_energy += double(v) * v;
            for (std::size_t k = 0; k < n; ++k) {
                freq_energy += std::norm(std::complex<double>(bin_at<float>(y, k)));
            }
            worst_parseval = std::max(worst_parseval, std::abs(freq_energy / double(n) - time_energy) / time_energy);

            const auto z = normal_as<float>(n, rng);
            const float a = coef(rng), b = coef(rng);
            std::vector<float> mix(n);
            for (std::size_t i = 0; i < n; ++i) mix[i] = a * x[i] + b * z[i];
            auto fz = z;
            forward_in_place(plan, std::span<float>(fz));
            forward_in_place(plan, std::span<float>(mix));
            std::vector<double> rhs(n);
            for (std::size_t i = 0; i < n; ++i) rhs[i] = double(a) * y[i] + double(b) * fz[i];
            worst_linear = std::max(worst_linear, rel_norm_diff(mix, rhs));
        }
    }
    out.pass = worst_parseval <= 1e-5 && worst_linear <= 1e-5;
    out.detail = "n=2..4096 x1000, f32: Parseval rel " + sci(worst_parseval) + " (<= 1e-5), linearity rel " +
                 sci(worst_linear) + " (<= 1e-5)";
    return out;
}

// 9. rdfft_bench --verify --strict on the default matrix.
Outcome bench_cli(const std::string& bench) {
    Outcome out;
    const auto report = std::filesystem::temp_directory_path() / "rdfft_acceptance_report.json";
    std::filesystem::remove(report);
    const std::string cmd = "\"" + bench + "\" --verify --strict --format json --out \"" + report.string() +
                            "\" 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    const int status = raw != -1 && WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;

    std::string schema = "ok";
    std::size_t failed = 0;
    std::set<std::string> failed_what;
    try {
        std::ifstream in(report);
        const auto j = nlohmann::json::parse(in);
        if (!j.is_array()) throw std::runtime_error("not an array");
        if (j.size() != 5 * 5 * 2) throw std::runtime_error(std::to_string(j.size()) + " cells, expected 50");
        const std::set<std::string> ops{"fft", "ifft", "roundtrip", "circulant-fwd", "circulant-bwd"};
        for (const auto& c : j) {
            if (!c.at("op").is_string() || !ops.count(c.at("op").get<std::string>())) throw std::runtime_error("op");
            if (!c.at("n").is_number_unsigned()) throw std::runtime_error("n");
            const auto prec = c.at("precision").get<std::string>();
            if (prec != "f32" && prec != "f64") throw std::runtime_error("precision");
            for (const char* k : {"mean_ns", "median_ns", "min_ns", "abs_err", "abs_err_mean", "rel_err"}) {
                if (!c.at(k).is_number()) throw std::runtime_error(k);
            }
            for (const char* k : {"alloc_count", "scratch_bytes"}) {
                if (!c.at(k).is_number_unsigned()) throw std::runtime_error(k);
            }
            if (!c.at("isa").is_string() || !c.at("passed").is_boolean()) throw std::runtime_error("isa/passed");
            if (!c.at("passed").get<bool>()) {
                ++failed;
                failed_what.insert(c.at("op").get<std::string>() + " " + prec);
            }
        }
    } catch (const std::exception& e) {
        schema = std::string("invalid (") + e.what() + ")";
    }
    std::filesystem::remove(report);

    out.pass = status == 0 && schema == "ok";
    out.detail = "exit " + std::to_string(status) + ", schema " + schema + ", failed cells " + std::to_string(failed);
    if (!failed_what.empty()) {
        out.detail += " (";
        for (auto it = failed_what.begin(); it != failed_what.end(); ++it) {
            out.detail += (it == failed_what.begin() ? "" : ", ") + *it;
        }
        out.detail += ")";
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const std::string bench = argc > 1 ? argv[1] : RDFFT_BENCH_PATH;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 operator accuracy (f32 forward vs oracle)", operator_accuracy},
        {"2 round trip", round_trip},
        {"3 layout correctness", layout},
        {"4 staged four-slot schedule", staged},
        {"5 circulant equivalence", circulant_equivalence},
        {"6 gradient correctness", gradients},
        {"7 zero-allocation contract", zero_allocation},
        {"8 Parseval and linearity", parseval_linearity},
        {"9 bench --verify --strict", [&] { return bench_cli(bench); }},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
