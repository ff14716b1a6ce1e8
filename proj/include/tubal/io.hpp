#pragma once

#include "tubal/mask.hpp"
#include "tubal/tensor3.hpp"

#include <filesystem>
#include <iosfwd>

namespace tubal::io {

// Netpbm images: binary PGM (P5, one channel) and PPM (P6, three channels),
// maxval 1..65535 with two big-endian bytes per sample above 255. Pixel
// (row, col, channel) maps to tensor entry (row, col, channel) scaled to
// [0, 1] by maxval. Header comments are accepted on read and never written.
Tensor3 read_image(std::istream& in);
Tensor3 load_image(const std::filesystem::path& path);

/// Writes P5 for one slice and P6 for three; samples are clamped to [0, 1]
/// and quantized with round-half-up.
void write_image(std::ostream& out, const Tensor3& image, int maxval = 255);
void save_image(const std::filesystem::path& path, const Tensor3& image, int maxval = 255);

// ".t3": "T3F1", three little-endian u64 dims, then n1*n2*n3 little-endian
// IEEE doubles in Tensor3 order.
Tensor3 read_tensor(std::istream& in);
Tensor3 load_tensor(const std::filesystem::path& path);
void write_tensor(std::ostream& out, const Tensor3& t);
void save_tensor(const std::filesystem::path& path, const Tensor3& t);

// ".msk": "T3M1", the same dims header, one 0/1 byte per entry in Tensor3
// order, then one pad_observed_zero byte.
ObservationMask read_mask(std::istream& in);
ObservationMask load_mask(const std::filesystem::path& path);
void write_mask(std::ostream& out, const ObservationMask& mask);
void save_mask(const std::filesystem::path& path, const ObservationMask& mask);

/// True for .pgm, .ppm and .pnm paths.
bool is_image_path(const std::filesystem::path& path);

/// Dispatches on extension: images through load_image, anything else as .t3.
Tensor3 load_any(const std::filesystem::path& path);
void save_any(const std::filesystem::path& path, const Tensor3& t);

}  // namespace tubal::io
