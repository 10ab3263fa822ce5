// SPDX-License-Identifier: Apache-2.0

#include "rdfft/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <type_traits>

namespace rdfft::io {
namespace {

template <class U>
U to_little(U v) noexcept {
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(U)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<U>(bytes);
    } else {
        return v;
    }
}

template <class T>
using bits_t = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;

template <class T>
void put(std::ostream& out, T value) {
    const auto le = to_little(std::bit_cast<bits_t<T>>(value));
    out.write(reinterpret_cast<const char*>(&le), sizeof(le));
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const auto le = to_little(v);
    out.write(reinterpret_cast<const char*>(&le), sizeof(le));
}

std::uint32_t get_u32(std::istream& in) {
    std::uint32_t le = 0;
    if (!in.read(reinterpret_cast<char*>(&le), sizeof(le))) {
        throw FormatError("layer file: truncated header");
    }
    return to_little(le);
}

template <class T>
std::vector<T> decode(const std::string& bytes) {
    if (bytes.size() % sizeof(T) != 0) {
        throw FormatError("raw dump: " + std::to_string(bytes.size()) +
                          " bytes is not a multiple of " + std::to_string(sizeof(T)));
    }
    std::vector<T> values(bytes.size() / sizeof(T));
    for (std::size_t i = 0; i < values.size(); ++i) {
        bits_t<T> le;
        std::memcpy(&le, bytes.data() + i * sizeof(T), sizeof(T));
        values[i] = std::bit_cast<T>(to_little(le));
    }
    return values;
}

} // namespace

template <class T>
void write_raw(std::ostream& out, std::span<const T> values) {
    for (T v : values) put(out, v);
    if (!out) throw std::runtime_error("raw dump: write failed");
}

template <class T>
std::vector<T> read_raw(std::istream& in) {
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return decode<T>(bytes);
}

template <class T>
void write_raw_file(const std::filesystem::path& path, std::span<const T> values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("raw dump: cannot open " + path.string());
    write_raw(out, values);
}

template <class T>
std::vector<T> read_raw_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("raw dump: cannot open " + path.string());
    return read_raw<T>(in);
}

template <class T>
void save_layer(std::ostream& out, const CirculantLayer<T>& layer) {
    put_u32(out, static_cast<std::uint32_t>(layer.block_size()));
    put_u32(out, static_cast<std::uint32_t>(layer.q_out()));
    put_u32(out, static_cast<std::uint32_t>(layer.q_in()));
    put_u32(out, static_cast<std::uint32_t>(sizeof(T)));
    write_raw(out, layer.weight_spectra());
}

template <class T>
CirculantLayer<T> load_layer(std::istream& in) {
    const std::uint32_t p = get_u32(in);
    const std::uint32_t q_out = get_u32(in);
    const std::uint32_t q_in = get_u32(in);
    const std::uint32_t tag = get_u32(in);
    if (tag != sizeof(T)) {
        throw FormatError("layer file: precision tag " + std::to_string(tag) + " does not match " +
                          std::to_string(sizeof(T)) + "-byte scalars");
    }
    if (p < 2 || !is_power_of_two(p) || q_out == 0 || q_in == 0) {
        throw FormatError("layer file: invalid shape");
    }
    const std::size_t count = std::size_t{p} * q_out * q_in;
    std::string bytes(count * sizeof(T), '\0');
    if (!in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw FormatError("layer file: truncated weight spectra");
    }
    const auto spectra = decode<T>(bytes);
    return CirculantLayer<T>::from_spectra(p, q_out, q_in, spectra);
}

template void write_raw<float>(std::ostream&, std::span<const float>);
template void write_raw<double>(std::ostream&, std::span<const double>);
template std::vector<float> read_raw<float>(std::istream&);
template std::vector<double> read_raw<double>(std::istream&);
template void write_raw_file<float>(const std::filesystem::path&, std::span<const float>);
template void write_raw_file<double>(const std::filesystem::path&, std::span<const double>);
template std::vector<float> read_raw_file<float>(const std::filesystem::path&);
template std::vector<double> read_raw_file<double>(const std::filesystem::path&);
template void save_layer<float>(std::ostream&, const CirculantLayer<float>&);
template void save_layer<double>(std::ostream&, const CirculantLayer<double>&);
template CirculantLayer<float> load_layer<float>(std::istream&);
template CirculantLayer<double> load_layer<double>(std::istream&);

} // namespace rdfft::io
