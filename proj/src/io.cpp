#include "destripe/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "destripe/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "raw64 payloads are little-endian; add byte swapping for this platform");

namespace destripe {

namespace {

std::string lower_extension(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

/// Rescale to [0, maxval] and quantize; ties round to even (std::nearbyint
/// under the default FE_TONEAREST mode).
std::uint16_t quantize(double value, double range, double maxval) {
  const double scaled = value * (maxval / range);
  const double clamped = std::clamp(scaled, 0.0, maxval);
  return static_cast<std::uint16_t>(std::nearbyint(clamped));
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

ImageMatrix read_image(const std::string& path) {
  const std::string ext = lower_extension(path);
  if (ext == "png") return read_png(path);
  if (ext == "pgm") return read_pgm(path);
  if (ext == "f64") return read_raw64(path);
  if (ext == "csv") return read_csv_matrix(path);
  throw IoError("unsupported image extension: " + path);
}

void write_image(const std::string& path, const ImageMatrix& image) {
  const std::string ext = lower_extension(path);
  if (ext == "png") return write_png(path, image);
  if (ext == "pgm") return write_pgm(path, image);
  if (ext == "f64") return write_raw64(path, image);
  if (ext == "csv") return write_csv_matrix(path, image);
  throw IoError("unsupported image extension: " + path);
}

ImageMatrix read_png(const std::string& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open for reading: " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng: failed to allocate read struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng: failed to allocate info struct");
  }

  // All C++ objects are constructed before the setjmp point so the longjmp
  // taken by libpng's error handler never skips a constructor.
  std::vector<png_byte> raster;
  std::vector<png_bytep> row_ptrs;
  // volatile: mutated between setjmp and a potential longjmp, read afterwards.
  volatile std::size_t rows = 0, cols = 0;
  volatile bool failed = false;

  if (setjmp(png_jmpbuf(png))) {
    failed = true;
  } else {
    png_init_io(png, file.get());
    png_read_info(png, info);

    // Normalize every input to 8-bit single-channel grayscale; transparency
    // is discarded.
    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
        color_type == PNG_COLOR_TYPE_PALETTE)
      png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    rows = png_get_image_height(png, info);
    cols = png_get_image_width(png, info);
    raster.resize(rows * cols);
    row_ptrs.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) row_ptrs[i] = raster.data() + i * cols;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (failed) throw IoError("libpng: failed to decode " + path);

  ImageMatrix out(rows, cols, 0.0, 255.0);
  for (std::size_t k = 0; k < raster.size(); ++k) out.data()[k] = raster[k];
  return out;
}

void write_png(const std::string& path, const ImageMatrix& image) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot open for writing: " + path);

  const std::size_t rows = image.rows(), cols = image.cols();
  std::vector<png_byte> raster(rows * cols);
  for (std::size_t k = 0; k < raster.size(); ++k)
    raster[k] = static_cast<png_byte>(quantize(image.data()[k], image.intensity_range(), 255.0));
  std::vector<png_bytep> row_ptrs(rows);
  for (std::size_t i = 0; i < rows; ++i) row_ptrs[i] = raster.data() + i * cols;

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng: failed to allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: failed to allocate info struct");
  }
  volatile bool failed = false;  // mutated between setjmp and longjmp
  if (setjmp(png_jmpbuf(png))) {
    failed = true;
  } else {
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
  }
  png_destroy_write_struct(&png, &info);
  if (failed) throw IoError("libpng: failed to encode " + path);
}

namespace {

/// Read one whitespace-delimited token, skipping '#' comments (PGM headers).
std::string next_pnm_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      token.push_back(static_cast<char>(c));
      while ((c = in.get()) != EOF && !std::isspace(c)) token.push_back(static_cast<char>(c));
      return token;
    }
  }
  throw IoError("truncated PGM header");
}

}  // namespace

ImageMatrix read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  if (next_pnm_token(in) != "P5") throw IoError("not a binary PGM (P5) file: " + path);
  const std::size_t cols = std::stoul(next_pnm_token(in));
  const std::size_t rows = std::stoul(next_pnm_token(in));
  const unsigned long maxval = std::stoul(next_pnm_token(in));
  if (maxval == 0 || maxval > 65535) throw IoError("PGM maxval out of range: " + path);
  // The token reader consumed exactly one whitespace byte after maxval, which
  // is the single separator the format mandates before the raster.

  ImageMatrix out(rows, cols, 0.0, static_cast<double>(maxval));
  const std::size_t count = rows * cols;
  if (maxval < 256) {
    std::vector<unsigned char> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) throw IoError("truncated PGM raster: " + path);
    for (std::size_t k = 0; k < count; ++k) out.data()[k] = buf[k];
  } else {
    std::vector<unsigned char> buf(count * 2);  // big-endian 16-bit samples
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
      throw IoError("truncated PGM raster: " + path);
    for (std::size_t k = 0; k < count; ++k)
      out.data()[k] = static_cast<double>((buf[2 * k] << 8) | buf[2 * k + 1]);
  }
  return out;
}

void write_pgm(const std::string& path, const ImageMatrix& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "P5\n" << image.cols() << " " << image.rows() << "\n255\n";
  std::vector<unsigned char> buf(image.size());
  for (std::size_t k = 0; k < buf.size(); ++k)
    buf[k] = static_cast<unsigned char>(quantize(image.data()[k], image.intensity_range(), 255.0));
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing PGM raster: " + path);
}

ImageMatrix read_raw64(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string magic;
  std::getline(in, magic);
  if (magic != "DSTRF64") throw IoError("bad raw64 magic in " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream fields(header);
  std::size_t rows = 0, cols = 0;
  double peak = 0.0;
  if (!(fields >> rows >> cols >> peak) || rows == 0 || cols == 0 || !(peak > 0.0))
    throw IoError("bad raw64 header in " + path);
  ImageMatrix out(rows, cols, 0.0, peak);
  in.read(reinterpret_cast<char*>(out.data()),
          static_cast<std::streamsize>(out.size() * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != out.size() * sizeof(double))
    throw IoError("truncated raw64 payload in " + path);
  return out;
}

void write_raw64(const std::string& path, const ImageMatrix& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "DSTRF64\n" << image.rows() << " " << image.cols() << " ";
  char peak[64];
  std::snprintf(peak, sizeof(peak), "%.17g", image.intensity_range());
  out << peak << "\n";
  out.write(reinterpret_cast<const char*>(image.data()),
            static_cast<std::streamsize>(image.size() * sizeof(double)));
  if (!out) throw IoError("failed writing raw64 payload: " + path);
}

ImageMatrix read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::vector<double> data;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    std::size_t this_cols = 0;
    while (std::getline(cells, cell, ',')) {
      data.push_back(std::stod(cell));
      ++this_cols;
    }
    if (rows == 0)
      cols = this_cols;
    else if (this_cols != cols)
      throw IoError("ragged CSV matrix in " + path);
    ++rows;
  }
  if (rows == 0) throw IoError("empty CSV matrix in " + path);
  return ImageMatrix(rows, cols, std::move(data));
}

void write_csv_matrix(const std::string& path, const ImageMatrix& image) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  char cell[64];
  for (std::size_t i = 0; i < image.rows(); ++i) {
    for (std::size_t j = 0; j < image.cols(); ++j) {
      std::snprintf(cell, sizeof(cell), "%.17g", image(i, j));
      out << cell << (j + 1 < image.cols() ? "," : "");
    }
    out << "\n";
  }
  if (!out) throw IoError("failed writing CSV matrix: " + path);
}

}  // namespace destripe
