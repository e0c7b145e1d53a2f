#pragma once

#include <string>

#include "destripe/image.hpp"

namespace destripe {

/*
 * Image formats, selected by file extension in read_image / write_image:
 *   .png  8-bit grayscale PNG (color inputs are converted to luminance);
 *         read gives values in [0, 255] with intensity range 255.
 *   .pgm  binary PGM (P5), 8- or 16-bit read, 8-bit write; range = maxval.
 *   .f64  lossless native format: text header "DSTRF64", "<rows> <cols>
 *         <peak>", then row-major little-endian IEEE doubles.
 *   .csv  comma-separated doubles, one row per line (debugging format,
 *         round-trips through 17 significant digits).
 * 8-bit exports rescale by 255/range and quantize with round-half-even.
 */

ImageMatrix read_image(const std::string& path);
void write_image(const std::string& path, const ImageMatrix& image);

ImageMatrix read_png(const std::string& path);
void write_png(const std::string& path, const ImageMatrix& image);

ImageMatrix read_pgm(const std::string& path);
void write_pgm(const std::string& path, const ImageMatrix& image);

ImageMatrix read_raw64(const std::string& path);
void write_raw64(const std::string& path, const ImageMatrix& image);

ImageMatrix read_csv_matrix(const std::string& path);
void write_csv_matrix(const std::string& path, const ImageMatrix& image);

}  // namespace destripe
