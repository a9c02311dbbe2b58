#include "iris_aging/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

namespace iris_aging {

namespace {

int nextPnmToken(std::istream& in) {
  // skips whitespace and '#' comments, returns a nonnegative integer
  while (in) {
    int ch = in.peek();
    if (ch == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(ch)) {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  in >> value;
  return value;
}

std::string lowerExt(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(c));
  return ext;
}

}  // namespace

GrayImage readPgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || m1 != '5') fail(Errc::ParseError, path + ": not a binary PGM (P5)");
  const int w = nextPnmToken(in);
  const int h = nextPnmToken(in);
  const int maxval = nextPnmToken(in);
  if (w <= 0 || h <= 0) fail(Errc::ParseError, path + ": bad PGM dimensions");
  if (maxval != 255) fail(Errc::ParseError, path + ": only maxval 255 PGM is supported");
  in.get();  // single whitespace after header

  GrayImage img(h, w);
  in.read(reinterpret_cast<char*>(img.data()), static_cast<std::streamsize>(img.size()));
  if (!in) fail(Errc::ParseError, path + ": truncated PGM payload");
  return img;
}

void writePgm(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()), static_cast<std::streamsize>(img.size()));
  if (!out) fail(Errc::IoError, "short write to " + path);
}

GrayImage readPng(const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!fp) fail(Errc::IoError, "cannot open " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(Errc::IoError, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(Errc::IoError, "libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Errc::ParseError, path + ": libpng decode error");
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Errc::ParseError, path + ": expected 8-bit grayscale PNG");
  }
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (depth == 16) png_set_strip_16(png);
  png_read_update_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  GrayImage img(h, w);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 r = 0; r < h; ++r) rows[r] = img.data() + std::size_t(r) * w;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void writePng(const GrayImage& img, const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) fail(Errc::IoError, "cannot write " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(Errc::IoError, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(Errc::IoError, "libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(Errc::IoError, path + ": libpng encode error");
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, png_uint_32(img.cols()), png_uint_32(img.rows()), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(std::size_t(img.rows()));
  for (Eigen::Index r = 0; r < img.rows(); ++r)
    rows[std::size_t(r)] = const_cast<png_bytep>(img.data() + std::size_t(r) * img.cols());
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

GrayImage loadGrayImage(const std::string& path) {
  const std::string ext = lowerExt(path);
  if (ext == "pgm") return readPgm(path);
  if (ext == "png") return readPng(path);
  fail(Errc::BadConfig, path + ": unsupported image extension (use .pgm or .png)");
}

BitMask readMaskPgm(const std::string& path) {
  const GrayImage raw = readPgm(path);
  return raw >= std::uint8_t{128};
}

void writeMaskPgm(const BitMask& mask, const std::string& path) {
  GrayImage raw = mask.cast<std::uint8_t>() * std::uint8_t{255};
  writePgm(raw, path);
}

}  // namespace iris_aging
