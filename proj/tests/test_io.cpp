#include <doctest.h>

#include <unistd.h>
#include <zlib.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "maskresize/image_io.hpp"
#include "maskresize/rng.hpp"

#include "generators.hpp"

using namespace maskresize;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test binary run.
struct ScratchDir {
  fs::path path;
  ScratchDir() {
    path = fs::temp_directory_path() /
           ("maskresize_io_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

ScratchDir& scratch() {
  static ScratchDir dir;
  return dir;
}

std::vector<unsigned char> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

// True when loading raises IoError whose message carries the fragment.
bool load_fails_with(const std::string& path, const std::string& fragment) {
  try {
    (void)io::load_png(path);
    return false;
  } catch (const io::IoError& e) {
    return std::string(e.what()).find(fragment) != std::string::npos;
  }
}

void append_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v >> 24));
  out.push_back(static_cast<unsigned char>(v >> 16));
  out.push_back(static_cast<unsigned char>(v >> 8));
  out.push_back(static_cast<unsigned char>(v));
}

void append_chunk(std::vector<unsigned char>& out, const char type[4],
                  const std::vector<unsigned char>& data) {
  append_u32(out, static_cast<std::uint32_t>(data.size()));
  std::vector<unsigned char> checked(type, type + 4);
  checked.insert(checked.end(), data.begin(), data.end());
  out.insert(out.end(), checked.begin(), checked.end());
  append_u32(out, static_cast<std::uint32_t>(
                      crc32(0, checked.data(), static_cast<uInt>(checked.size()))));
}

// Minimal PNG with an arbitrary IHDR layout; used to probe decoder rejects.
std::vector<unsigned char> craft_png(int bit_depth, int color_type, int interlace) {
  std::vector<unsigned char> out{137, 80, 78, 71, 13, 10, 26, 10};
  std::vector<unsigned char> ihdr;
  append_u32(ihdr, 2);  // width
  append_u32(ihdr, 1);  // height
  ihdr.push_back(static_cast<unsigned char>(bit_depth));
  ihdr.push_back(static_cast<unsigned char>(color_type));
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter method
  ihdr.push_back(static_cast<unsigned char>(interlace));
  append_chunk(out, "IHDR", ihdr);

  const unsigned char raw[] = {0, 7, 9};  // filter byte + 2 pixels
  std::vector<unsigned char> idat(compressBound(sizeof raw));
  uLongf len = static_cast<uLongf>(idat.size());
  REQUIRE(compress(idat.data(), &len, raw, sizeof raw) == Z_OK);
  idat.resize(len);
  append_chunk(out, "IDAT", idat);
  append_chunk(out, "IEND", {});
  return out;
}

}  // namespace

TEST_CASE("png round trip preserves quantized pixels") {
  Rng rng(103);
  for (Size size : {Size{1, 1}, Size{3, 2}, Size{17, 9}}) {
    const Image img = generators::random_quantized_image(rng, size);
    const std::string path = scratch().file("roundtrip.png");
    io::save_png(img, path);
    CHECK(io::load_png(path) == img);
    CHECK(io::load_image(path) == img);  // magic dispatch
  }
}

TEST_CASE("pgm round trip preserves quantized pixels") {
  Rng rng(107);
  const Image img = generators::random_quantized_image(rng, {5, 4});
  const std::string path = scratch().file("roundtrip.pgm");
  io::save_pgm(img, path);
  CHECK(io::load_pgm(path) == img);
  CHECK(io::load_image(path) == img);
}

TEST_CASE("save quantizes real intensities to the nearest 8-bit value") {
  const Image img({3, 1}, {1.4, 1.6, 300.0});
  const std::string path = scratch().file("quantize.pgm");
  io::save_image(img, path);
  const Image back = io::load_image(path);
  CHECK(back.at(0, 0) == 1.0);
  CHECK(back.at(1, 0) == 2.0);
  CHECK(back.at(2, 0) == 255.0);  // clamped into the 8-bit range
}

TEST_CASE("pgm comments and whitespace parse") {
  const std::string path = scratch().file("commented.pgm");
  const std::string text = "P5 # magic\n# full line comment\n 3\t2 # dims\n255\n";
  std::vector<unsigned char> bytes(text.begin(), text.end());
  for (int i = 0; i < 6; ++i) bytes.push_back(static_cast<unsigned char>(10 * i));
  write_bytes(path, bytes);
  const Image img = io::load_pgm(path);
  CHECK(img.size() == Size{3, 2});
  CHECK(img.at(2, 1) == 50.0);
}

TEST_CASE("pgm rejects non-255 maxval and truncated rasters") {
  const std::string path = scratch().file("bad.pgm");
  write_bytes(path, {'P', '5', '\n', '2', ' ', '1', '\n', '6', '5', '5', '3', '5',
                     '\n', 0, 0, 0, 0});
  CHECK_THROWS_AS(io::load_pgm(path), io::IoError);

  write_bytes(path, {'P', '5', '\n', '4', ' ', '4', '\n', '2', '5', '5', '\n', 1, 2});
  CHECK_THROWS_AS(io::load_pgm(path), io::IoError);
}

TEST_CASE("png decoder verifies chunk CRCs") {
  const std::string path = scratch().file("crc.png");
  io::save_png(Image({4, 4}, 128.0), path);
  std::vector<unsigned char> bytes = read_bytes(path);
  bytes[16] ^= 0x01;  // first IHDR payload byte; the chunk CRC no longer matches
  write_bytes(path, bytes);
  CHECK(load_fails_with(path, "CRC"));
}

TEST_CASE("png decoder rejects unsupported layouts") {
  const std::string path = scratch().file("layout.png");

  write_bytes(path, craft_png(16, 0, 0));
  CHECK(load_fails_with(path, "8-bit grayscale"));

  write_bytes(path, craft_png(8, 2, 0));  // truecolor
  CHECK(load_fails_with(path, "8-bit grayscale"));

  write_bytes(path, craft_png(8, 0, 1));  // Adam7
  CHECK(load_fails_with(path, "interlaced"));

  write_bytes(path, {1, 2, 3, 4});
  CHECK_THROWS_AS(io::load_image(path), io::IoError);
  CHECK_THROWS_AS(io::load_png(path), io::IoError);
}

TEST_CASE("truncated png fails cleanly") {
  const std::string path = scratch().file("truncated.png");
  io::save_png(Image({8, 8}, 10.0), path);
  std::vector<unsigned char> bytes = read_bytes(path);
  bytes.resize(bytes.size() / 2);
  write_bytes(path, bytes);
  CHECK_THROWS_AS(io::load_png(path), io::IoError);
}

TEST_CASE("missing files and bad destinations raise io errors") {
  CHECK_THROWS_AS(io::load_image(scratch().file("nope.png")), io::IoError);
  CHECK_THROWS_AS(io::save_png(Image({2, 2}, 0.0), "/nonexistent-dir/x.png"),
                  io::IoError);
  CHECK_THROWS_AS(io::save_image(Image({2, 2}, 0.0), scratch().file("image.bmp")),
                  io::IoError);
}

TEST_CASE("mask io validates against the label set") {
  const LabelSet set = LabelSet::default_three_class();
  Rng rng(109);
  const LabelMask mask = generators::random_mask(rng, {6, 5}, set);

  for (const char* name : {"mask.png", "mask.pgm"}) {
    const std::string path = scratch().file(name);
    io::save_mask(mask, path);
    CHECK(io::load_mask(path, set) == mask);
  }

  // A pixel value outside the set is a data error, not an io error, and the
  // diagnostic names both the file and the pixel.
  const std::string bad_path = scratch().file("bad_mask.pgm");
  write_bytes(bad_path,
              {'P', '5', '\n', '2', ' ', '2', '\n', '2', '5', '5', '\n', 255, 7, 0, 128});
  try {
    io::load_mask(bad_path, set);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad_mask.pgm") != std::string::npos);
    CHECK(msg.find("label 7") != std::string::npos);
    CHECK(msg.find("(1,0)") != std::string::npos);
  }
}
