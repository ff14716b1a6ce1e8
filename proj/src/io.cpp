#include "tubal/io.hpp"

#include "tubal/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace tubal::io {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string() + " for reading");
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish(std::ostream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw FormatError("failed writing " + path.string());
    }
}

// ---- netpbm ------------------------------------------------------------

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string ignored;
            std::getline(in, ignored);
        } else if (c != EOF && std::isspace(c)) {
            in.get();
        } else {
            return;
        }
    }
}

long read_header_number(std::istream& in, const char* what) {
    skip_separators(in);
    long value = 0;
    int digits = 0;
    while (std::isdigit(in.peek())) {
        value = value * 10 + (in.get() - '0');
        if (value > 1'000'000'000) {
            throw FormatError(std::string("netpbm ") + what + " is too large");
        }
        ++digits;
    }
    if (digits == 0) {
        throw FormatError(std::string("netpbm header: missing ") + what);
    }
    return value;
}

// ---- little-endian binary helpers ---------------------------------------

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> bytes{};
    for (int i = 0; i < 8; ++i) {
        bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in, const char* what) {
    std::array<unsigned char, 8> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
        throw FormatError(std::string("truncated ") + what);
    }
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | bytes[static_cast<std::size_t>(i)];
    }
    return v;
}

void expect_magic(std::istream& in, const char* magic, const char* what) {
    std::array<char, 4> got{};
    if (!in.read(got.data(), got.size()) || !std::equal(got.begin(), got.end(), magic)) {
        throw FormatError(std::string("bad magic for ") + what);
    }
}

Dims3 read_dims(std::istream& in, const char* what) {
    const std::uint64_t n1 = get_u64(in, what);
    const std::uint64_t n2 = get_u64(in, what);
    const std::uint64_t n3 = get_u64(in, what);
    constexpr std::uint64_t limit = std::uint64_t{1} << 40;
    if (n1 > limit || n2 > limit || n3 > limit || (n1 && n2 && n3 && n1 * n2 > limit / n3)) {
        throw FormatError(std::string("implausible dimensions in ") + what);
    }
    return Dims3{static_cast<Index>(n1), static_cast<Index>(n2), static_cast<Index>(n3)};
}

void write_dims(std::ostream& out, const Dims3& d) {
    put_u64(out, static_cast<std::uint64_t>(d.n1));
    put_u64(out, static_cast<std::uint64_t>(d.n2));
    put_u64(out, static_cast<std::uint64_t>(d.n3));
}

}  // namespace

Tensor3 read_image(std::istream& in) {
    char magic[2] = {0, 0};
    if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6')) {
        throw FormatError("not a binary PGM/PPM file (expected P5 or P6)");
    }
    const Index channels = magic[1] == '5' ? 1 : 3;
    const long width = read_header_number(in, "width");
    const long height = read_header_number(in, "height");
    const long maxval = read_header_number(in, "maxval");
    if (width < 1 || height < 1) {
        throw FormatError("netpbm image has an empty dimension");
    }
    if (maxval < 1 || maxval > 65535) {
        throw FormatError("unsupported netpbm maxval " + std::to_string(maxval));
    }
    if (!std::isspace(in.get())) {
        throw FormatError("netpbm header must end with a single whitespace character");
    }

    const int bytes_per_sample = maxval > 255 ? 2 : 1;
    const auto samples = static_cast<std::size_t>(width * height * channels);
    std::string raster(samples * static_cast<std::size_t>(bytes_per_sample), '\0');
    if (!in.read(raster.data(), static_cast<std::streamsize>(raster.size()))) {
        throw FormatError("truncated netpbm raster");
    }

    Tensor3 image(height, width, channels);
    const auto levels = static_cast<double>(maxval);
    std::size_t pos = 0;
    for (Index r = 0; r < height; ++r) {
        for (Index c = 0; c < width; ++c) {
            for (Index ch = 0; ch < channels; ++ch) {
                unsigned value = static_cast<unsigned char>(raster[pos++]);
                if (bytes_per_sample == 2) {
                    value = (value << 8) | static_cast<unsigned char>(raster[pos++]);
                }
                if (value > static_cast<unsigned>(maxval)) {
                    throw FormatError("netpbm sample exceeds maxval");
                }
                image(r, c, ch) = static_cast<double>(value) / levels;
            }
        }
    }
    return image;
}

Tensor3 load_image(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_image(in);
}

void write_image(std::ostream& out, const Tensor3& image, int maxval) {
    if (image.n3() != 1 && image.n3() != 3) {
        throw DimensionError("images need 1 or 3 channels, got " + std::to_string(image.n3()));
    }
    if (maxval < 1 || maxval > 65535) {
        throw ConfigError("unsupported netpbm maxval " + std::to_string(maxval));
    }
    out << (image.n3() == 1 ? "P5" : "P6") << '\n'
        << image.n2() << ' ' << image.n1() << '\n'
        << maxval << '\n';
    const bool wide = maxval > 255;
    std::string raster;
    raster.reserve(static_cast<std::size_t>(image.size()) * (wide ? 2 : 1));
    for (Index r = 0; r < image.n1(); ++r) {
        for (Index c = 0; c < image.n2(); ++c) {
            for (Index ch = 0; ch < image.n3(); ++ch) {
                const double v = std::clamp(image(r, c, ch), 0.0, 1.0);
                const auto q = static_cast<unsigned>(std::floor(v * maxval + 0.5));
                if (wide) {
                    raster.push_back(static_cast<char>(q >> 8));
                }
                raster.push_back(static_cast<char>(q & 0xFF));
            }
        }
    }
    out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
}

void save_image(const std::filesystem::path& path, const Tensor3& image, int maxval) {
    auto out = open_out(path);
    write_image(out, image, maxval);
    finish(out, path);
}

Tensor3 read_tensor(std::istream& in) {
    expect_magic(in, "T3F1", "tensor file");
    const Dims3 d = read_dims(in, "tensor header");
    std::vector<double> data(static_cast<std::size_t>(d.count()));
    for (double& v : data) {
        v = std::bit_cast<double>(get_u64(in, "tensor payload"));
    }
    return Tensor3(d, std::move(data));
}

Tensor3 load_tensor(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_tensor(in);
}

void write_tensor(std::ostream& out, const Tensor3& t) {
    out.write("T3F1", 4);
    write_dims(out, t.dims());
    for (double v : t.data()) {
        put_u64(out, std::bit_cast<std::uint64_t>(v));
    }
}

void save_tensor(const std::filesystem::path& path, const Tensor3& t) {
    auto out = open_out(path);
    write_tensor(out, t);
    finish(out, path);
}

ObservationMask read_mask(std::istream& in) {
    expect_magic(in, "T3M1", "mask file");
    ObservationMask mask(read_dims(in, "mask header"));
    std::string bytes(mask.observed.size() + 1, '\0');
    if (!in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw FormatError("truncated mask payload");
    }
    for (std::size_t i = 0; i <= mask.observed.size(); ++i) {
        const auto b = static_cast<unsigned char>(bytes[i]);
        if (b > 1) {
            throw FormatError("mask bytes must be 0 or 1");
        }
        if (i < mask.observed.size()) {
            mask.observed[i] = b;
        } else {
            mask.pad_observed_zero = b == 1;
        }
    }
    return mask;
}

ObservationMask load_mask(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_mask(in);
}

void write_mask(std::ostream& out, const ObservationMask& mask) {
    out.write("T3M1", 4);
    write_dims(out, mask.dims);
    out.write(reinterpret_cast<const char*>(mask.observed.data()),
              static_cast<std::streamsize>(mask.observed.size()));
    out.put(mask.pad_observed_zero ? 1 : 0);
}

void save_mask(const std::filesystem::path& path, const ObservationMask& mask) {
    auto out = open_out(path);
    write_mask(out, mask);
    finish(out, path);
}

bool is_image_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

Tensor3 load_any(const std::filesystem::path& path) {
    return is_image_path(path) ? load_image(path) : load_tensor(path);
}

void save_any(const std::filesystem::path& path, const Tensor3& t) {
    if (is_image_path(path)) {
        save_image(path, t);
    } else {
        save_tensor(path, t);
    }
}

}  // namespace tubal::io
