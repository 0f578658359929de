#include "maskresize/image_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <utility>
#include <vector>

namespace maskresize::io {
namespace {

using Bytes = std::vector<unsigned char>;

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path);
  return data;
}

void write_file(const std::string& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failure on " + path);
}

std::uint32_t be32(const unsigned char* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

void put_be32(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>(v & 0xff));
}

constexpr unsigned char kPngSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};

bool has_png_signature(const Bytes& data) {
  return data.size() >= 8 && std::equal(kPngSignature, kPngSignature + 8, data.begin());
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

Image decode_png(const Bytes& data, const std::string& path) {
  if (!has_png_signature(data)) throw IoError(path + ": not a PNG file");

  std::size_t pos = 8;
  bool seen_ihdr = false;
  bool seen_iend = false;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Bytes idat;

  while (pos < data.size()) {
    if (data.size() - pos < 12) throw IoError(path + ": truncated PNG chunk");
    const std::uint32_t len = be32(&data[pos]);
    if (data.size() - pos - 12 < len) throw IoError(path + ": truncated PNG chunk");
    const unsigned char* type = &data[pos + 4];
    const unsigned char* body = &data[pos + 8];
    const std::uint32_t stored_crc = be32(body + len);

    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, type, 4 + len);
    if (static_cast<std::uint32_t>(crc) != stored_crc) {
      throw IoError(path + ": PNG chunk CRC mismatch");
    }

    const std::string name(reinterpret_cast<const char*>(type), 4);
    if (name == "IHDR") {
      if (seen_ihdr || len != 13) throw IoError(path + ": malformed IHDR");
      seen_ihdr = true;
      width = be32(body);
      height = be32(body + 4);
      const int bit_depth = body[8];
      const int color_type = body[9];
      const int compression = body[10];
      const int filter = body[11];
      const int interlace = body[12];
      if (width == 0 || height == 0) throw IoError(path + ": zero PNG dimension");
      if (width > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
          height > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
        throw IoError(path + ": PNG dimensions out of range");
      }
      if (bit_depth != 8 || color_type != 0) {
        throw IoError(path + ": only 8-bit grayscale PNG is supported (bit depth " +
                      std::to_string(bit_depth) + ", color type " +
                      std::to_string(color_type) + ")");
      }
      if (compression != 0 || filter != 0) throw IoError(path + ": malformed IHDR");
      if (interlace != 0) throw IoError(path + ": interlaced PNG is not supported");
    } else if (name == "IDAT") {
      if (!seen_ihdr) throw IoError(path + ": IDAT before IHDR");
      idat.insert(idat.end(), body, body + len);
    } else if (name == "IEND") {
      seen_iend = true;
      break;
    }
    // Ancillary chunks are skipped.
    pos += 12 + static_cast<std::size_t>(len);
  }
  if (!seen_ihdr) throw IoError(path + ": missing IHDR");
  if (!seen_iend) throw IoError(path + ": missing IEND");
  if (idat.empty()) throw IoError(path + ": missing IDAT");

  const std::size_t stride = static_cast<std::size_t>(width) + 1;  // filter byte + row
  const std::size_t raw_len = stride * height;
  Bytes raw(raw_len);
  uLongf dest_len = raw_len;
  const int rc = uncompress(raw.data(), &dest_len, idat.data(), idat.size());
  if (rc != Z_OK || dest_len != raw_len) {
    throw IoError(path + ": PNG inflate failed");
  }

  // Reconstruct with bytes-per-pixel 1: left/up/corner neighbors are single bytes.
  const int w = static_cast<int>(width);
  const int h = static_cast<int>(height);
  Bytes recon(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    const unsigned char* row = &raw[static_cast<std::size_t>(y) * stride];
    unsigned char* cur = &recon[static_cast<std::size_t>(y) * w];
    const unsigned char* prev = y > 0 ? &recon[static_cast<std::size_t>(y - 1) * w] : nullptr;
    const int f = row[0];
    for (int x = 0; x < w; ++x) {
      const int a = x > 0 ? cur[x - 1] : 0;
      const int b = prev ? prev[x] : 0;
      const int c = (x > 0 && prev) ? prev[x - 1] : 0;
      int v = row[1 + x];
      switch (f) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += paeth(a, b, c); break;
        default: throw IoError(path + ": invalid PNG filter type " + std::to_string(f));
      }
      cur[x] = static_cast<unsigned char>(v & 0xff);
    }
  }

  Image img(Size{w, h}, 0.0, 0.0, 255.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.at(x, y) = static_cast<double>(recon[static_cast<std::size_t>(y) * w + x]);
    }
  }
  return img;
}

void append_chunk(Bytes& out, const char* type, const Bytes& body) {
  put_be32(out, static_cast<std::uint32_t>(body.size()));
  const std::size_t type_pos = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), body.begin(), body.end());
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, &out[type_pos], 4 + body.size());
  put_be32(out, static_cast<std::uint32_t>(crc));
}

unsigned char quantize(double v) {
  const long long r = std::llround(v);
  return static_cast<unsigned char>(std::clamp(r, 0LL, 255LL));
}

Bytes encode_png(const Image& img) {
  const int w = img.width();
  const int h = img.height();
  const std::size_t stride = static_cast<std::size_t>(w) + 1;
  Bytes raw(stride * h);
  for (int y = 0; y < h; ++y) {
    unsigned char* row = &raw[static_cast<std::size_t>(y) * stride];
    row[0] = 0;  // filter: None
    for (int x = 0; x < w; ++x) {
      row[1 + x] = quantize(img.at(x, y));
    }
  }

  uLongf bound = compressBound(raw.size());
  Bytes compressed(bound);
  const int rc = compress2(compressed.data(), &bound, raw.data(), raw.size(),
                           Z_DEFAULT_COMPRESSION);
  if (rc != Z_OK) throw IoError("PNG deflate failed");
  compressed.resize(bound);

  Bytes out(kPngSignature, kPngSignature + 8);
  Bytes ihdr;
  put_be32(ihdr, static_cast<std::uint32_t>(w));
  put_be32(ihdr, static_cast<std::uint32_t>(h));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // color type: grayscale
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // interlace
  append_chunk(out, "IHDR", ihdr);
  append_chunk(out, "IDAT", compressed);
  append_chunk(out, "IEND", Bytes{});
  return out;
}

// PGM token scanner: whitespace-separated decimal fields, '#' starts a
// comment running to end of line.
struct PgmScanner {
  const Bytes& data;
  const std::string& path;
  std::size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < data.size()) {
      const unsigned char c = data[pos];
      if (c == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(c)) {
        ++pos;
      } else {
        break;
      }
    }
  }

  long next_int() {
    skip_space_and_comments();
    if (pos >= data.size() || !std::isdigit(data[pos])) {
      throw IoError(path + ": malformed PGM header");
    }
    long v = 0;
    while (pos < data.size() && std::isdigit(data[pos])) {
      v = v * 10 + (data[pos] - '0');
      if (v > std::numeric_limits<int>::max()) {
        throw IoError(path + ": PGM header value out of range");
      }
      ++pos;
    }
    return v;
  }
};

Image decode_pgm(const Bytes& data, const std::string& path) {
  if (data.size() < 2 || data[0] != 'P' || data[1] != '5') {
    throw IoError(path + ": not a binary PGM (P5) file");
  }
  PgmScanner scan{data, path, 2};
  const long w = scan.next_int();
  const long h = scan.next_int();
  const long maxval = scan.next_int();
  if (w < 1 || h < 1) throw IoError(path + ": invalid PGM dimensions");
  if (maxval != 255) {
    throw IoError(path + ": unsupported PGM maxval " + std::to_string(maxval) +
                  " (expected 255)");
  }
  // Single whitespace separator before the raster.
  if (scan.pos >= data.size() || !std::isspace(data[scan.pos])) {
    throw IoError(path + ": malformed PGM header");
  }
  ++scan.pos;
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (data.size() - scan.pos < need) throw IoError(path + ": truncated PGM raster");

  Image img(Size{static_cast<int>(w), static_cast<int>(h)}, 0.0, 0.0, 255.0);
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      img.at(static_cast<int>(x), static_cast<int>(y)) =
          static_cast<double>(data[scan.pos + static_cast<std::size_t>(y) * w + x]);
    }
  }
  return img;
}

Bytes encode_pgm(const Image& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.reserve(out.size() + img.size().pixel_count());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      out.push_back(quantize(img.at(x, y)));
    }
  }
  return out;
}

std::string lower_ext(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace

Image load_png(const std::string& path) { return decode_png(read_file(path), path); }

void save_png(const Image& img, const std::string& path) {
  write_file(path, encode_png(img));
}

Image load_pgm(const std::string& path) { return decode_pgm(read_file(path), path); }

void save_pgm(const Image& img, const std::string& path) {
  write_file(path, encode_pgm(img));
}

Image load_image(const std::string& path) {
  const Bytes data = read_file(path);
  if (has_png_signature(data)) return decode_png(data, path);
  if (data.size() >= 2 && data[0] == 'P' && data[1] == '5') return decode_pgm(data, path);
  throw IoError(path + ": unrecognized image format (expected PNG or P5 PGM)");
}

void save_image(const Image& img, const std::string& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".png") {
    save_png(img, path);
  } else if (ext == ".pgm") {
    save_pgm(img, path);
  } else {
    throw IoError(path + ": unsupported output extension (expected .png or .pgm)");
  }
}

LabelMask load_mask(const std::string& path, const LabelSet& labels) {
  const Image img = load_image(path);
  std::vector<int> values(img.size().pixel_count());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      values[static_cast<std::size_t>(y) * img.width() + x] =
          static_cast<int>(std::llround(img.at(x, y)));
    }
  }
  try {
    return LabelMask(img.size(), std::move(values), labels);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_mask(const LabelMask& mask, const std::string& path) {
  save_image(labels_to_image(mask), path);
}

}  // namespace maskresize::io
