// SPDX-License-Identifier: Apache-2.0
//
// Flat little-endian files.
//
// Raw dump: IEEE-754 scalars of one precision back to back, no header; the
// element count is the byte count divided by the scalar size.
//
// Layer file: four uint32 fields (p, q_out, q_in, scalar size in bytes: 4 or
// 8) followed by q_out * q_in packed weight spectra of p scalars each,
// row-major over (i, j).
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "rdfft/circulant.hpp"

namespace rdfft::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
void write_raw(std::ostream& out, std::span<const T> values);

/// Throws FormatError if the stream length is not a multiple of sizeof(T).
template <class T>
std::vector<T> read_raw(std::istream& in);

template <class T>
void write_raw_file(const std::filesystem::path& path, std::span<const T> values);

template <class T>
std::vector<T> read_raw_file(const std::filesystem::path& path);

template <class T>
void save_layer(std::ostream& out, const CirculantLayer<T>& layer);

/// Throws FormatError on a truncated stream, a precision tag that does not
/// match T, or an invalid shape.
template <class T>
CirculantLayer<T> load_layer(std::istream& in);

} // namespace rdfft::io
