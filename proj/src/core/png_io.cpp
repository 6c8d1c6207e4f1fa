#include "png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

namespace salvis {

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode, Errc code) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw Error(code, "cannot open " + path.string());
  return f;
}

void write_png(const std::filesystem::path& path, int width, int height, int bit_depth,
               int color_type, const std::vector<png_bytep>& rows) {
  FilePtr f = open_file(path, "wb", Errc::io);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(Errc::io, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(Errc::io, "png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(Errc::io, "png write failed for " + path.string());
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);  // host is little-endian
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;

  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

}  // namespace

void write_png_gray8(const std::filesystem::path& path, int width, int height,
                     const std::vector<uint8_t>& pixels) {
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(pixels.data() + static_cast<size_t>(y) * width);
  write_png(path, width, height, 8, PNG_COLOR_TYPE_GRAY, rows);
}

void write_png_gray16(const std::filesystem::path& path, int width, int height,
                      const std::vector<uint16_t>& pixels) {
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(
        reinterpret_cast<const png_byte*>(pixels.data() + static_cast<size_t>(y) * width));
  write_png(path, width, height, 16, PNG_COLOR_TYPE_GRAY, rows);
}

void write_png_rgb8(const std::filesystem::path& path, int width, int height,
                    const std::vector<uint8_t>& interleaved) {
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(interleaved.data() + static_cast<size_t>(y) * width * 3);
  write_png(path, width, height, 8, PNG_COLOR_TYPE_RGB, rows);
}

RgbImage read_png_rgb8(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb", Errc::missing_file);
  PngReader rd;
  rd.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!rd.png) throw Error(Errc::io, "png_create_read_struct failed");
  rd.info = png_create_info_struct(rd.png);
  if (!rd.info) throw Error(Errc::io, "png_create_info_struct failed");
  if (setjmp(png_jmpbuf(rd.png))) throw Error(Errc::io, "png read failed for " + path.string());

  png_init_io(rd.png, f.get());
  png_read_info(rd.png, rd.info);

  png_set_palette_to_rgb(rd.png);
  png_set_expand_gray_1_2_4_to_8(rd.png);
  if (png_get_valid(rd.png, rd.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(rd.png);
  png_set_strip_16(rd.png);
  png_set_strip_alpha(rd.png);
  png_set_gray_to_rgb(rd.png);
  png_read_update_info(rd.png, rd.info);

  const int width = png_get_image_width(rd.png, rd.info);
  const int height = png_get_image_height(rd.png, rd.info);
  std::vector<uint8_t> bytes(static_cast<size_t>(width) * height * 3);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = bytes.data() + static_cast<size_t>(y) * width * 3;
  png_read_image(rd.png, rows.data());
  png_read_end(rd.png, nullptr);

  RgbImage img(width, height);
  for (size_t i = 0; i < static_cast<size_t>(width) * height; ++i) {
    img.r.data[i] = bytes[i * 3 + 0] / 255.0f;
    img.g.data[i] = bytes[i * 3 + 1] / 255.0f;
    img.b.data[i] = bytes[i * 3 + 2] / 255.0f;
  }
  return img;
}

LabelMask read_png_gray16(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb", Errc::missing_file);
  PngReader rd;
  rd.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!rd.png) throw Error(Errc::io, "png_create_read_struct failed");
  rd.info = png_create_info_struct(rd.png);
  if (!rd.info) throw Error(Errc::io, "png_create_info_struct failed");
  if (setjmp(png_jmpbuf(rd.png))) throw Error(Errc::io, "png read failed for " + path.string());

  png_init_io(rd.png, f.get());
  png_read_info(rd.png, rd.info);

  if (png_get_color_type(rd.png, rd.info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(rd.png, rd.info) != 16)
    throw Error(Errc::io, path.string() + " must be 16-bit grayscale");
  png_set_swap(rd.png);
  png_read_update_info(rd.png, rd.info);

  const int width = png_get_image_width(rd.png, rd.info);
  const int height = png_get_image_height(rd.png, rd.info);
  LabelMask mask(width, height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y)
    rows[y] = reinterpret_cast<png_byte*>(mask.ids.data() + static_cast<size_t>(y) * width);
  png_read_image(rd.png, rows.data());
  png_read_end(rd.png, nullptr);
  return mask;
}

ScenePlane read_png_gray8(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb", Errc::missing_file);
  PngReader rd;
  rd.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!rd.png) throw Error(Errc::io, "png_create_read_struct failed");
  rd.info = png_create_info_struct(rd.png);
  if (!rd.info) throw Error(Errc::io, "png_create_info_struct failed");
  if (setjmp(png_jmpbuf(rd.png))) throw Error(Errc::io, "png read failed for " + path.string());

  png_init_io(rd.png, f.get());
  png_read_info(rd.png, rd.info);

  if (png_get_color_type(rd.png, rd.info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(rd.png, rd.info) != 8)
    throw Error(Errc::io, path.string() + " must be 8-bit grayscale");
  png_read_update_info(rd.png, rd.info);

  const int width = png_get_image_width(rd.png, rd.info);
  const int height = png_get_image_height(rd.png, rd.info);
  std::vector<uint8_t> bytes(static_cast<size_t>(width) * height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = bytes.data() + static_cast<size_t>(y) * width;
  png_read_image(rd.png, rows.data());
  png_read_end(rd.png, nullptr);

  ScenePlane out(width, height);
  for (size_t i = 0; i < bytes.size(); ++i) out.data[i] = bytes[i] / 255.0f;
  return out;
}

}  // namespace salvis
