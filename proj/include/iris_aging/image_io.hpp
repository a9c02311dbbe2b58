#ifndef IRIS_AGING_IMAGE_IO_HPP
#define IRIS_AGING_IMAGE_IO_HPP

#include <string>

#include "iris_aging/image.hpp"

namespace iris_aging {

GrayImage readPgm(const std::string& path);
void writePgm(const GrayImage& img, const std::string& path);

/// 8-bit grayscale PNG (lower bit depths are expanded; color input is rejected).
GrayImage readPng(const std::string& path);
void writePng(const GrayImage& img, const std::string& path);

/// Dispatch on file extension: .pgm or .png.
GrayImage loadGrayImage(const std::string& path);

/// Mask rasters are PGM with 0 = occluded; values >= 128 count as valid.
BitMask readMaskPgm(const std::string& path);
void writeMaskPgm(const BitMask& mask, const std::string& path);

}  // namespace iris_aging

#endif
