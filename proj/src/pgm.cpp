#include "fpe/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

#include <unistd.h>

namespace fpe {

namespace {

constexpr std::uint64_t kMaxDimension = 1u << 20;

class HeaderReader {
public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const { return bytes_[pos_]; }
  void advance() { ++pos_; }

  // Skips whitespace and '#' comments (which run to end of line).
  void skip_separators() {
    while (!at_end()) {
      const auto c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n' && peek() != '\r') advance();
      } else if (std::isspace(c)) {
        advance();
      } else {
        break;
      }
    }
  }

  // Reads an unsigned decimal; returns false if no digit is present.
  bool read_unsigned(std::uint64_t& value) {
    skip_separators();
    if (at_end() || !std::isdigit(peek())) return false;
    value = 0;
    while (!at_end() && std::isdigit(peek())) {
      value = value * 10 + (peek() - '0');
      if (value > (1ull << 40)) return false;
      advance();
    }
    return true;
  }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint64_t read_header_field(HeaderReader& reader, const char* name) {
  std::uint64_t v = 0;
  if (!reader.read_unsigned(v)) {
    throw PgmError(reader.at_end() ? PgmError::Kind::truncated : PgmError::Kind::bad_header,
                   std::string("pgm: missing or malformed ") + name);
  }
  return v;
}

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw PgmError(PgmError::Kind::bad_magic, "pgm: missing 'P' magic number");
  }
  const char variant = static_cast<char>(bytes[1]);
  switch (variant) {
    case '2':
    case '5':
      break;
    case '3':
    case '6':
    case '7':
      throw PgmError(PgmError::Kind::color_unsupported,
                     std::string("pgm: P") + variant + " color/arbitrary maps are not supported");
    default:
      throw PgmError(PgmError::Kind::bad_magic, "pgm: unsupported magic number");
  }

  HeaderReader reader(bytes);
  reader.advance();
  reader.advance();
  if (!reader.at_end() && !std::isspace(reader.peek()) && reader.peek() != '#') {
    throw PgmError(PgmError::Kind::bad_magic, "pgm: magic number not followed by whitespace");
  }

  const auto width = read_header_field(reader, "width");
  const auto height = read_header_field(reader, "height");
  const auto maxval = read_header_field(reader, "maxval");

  if (width == 0 || height == 0) {
    throw PgmError(PgmError::Kind::zero_dimension, "pgm: zero width or height");
  }
  if (width > kMaxDimension || height > kMaxDimension) {
    throw PgmError(PgmError::Kind::bad_header, "pgm: dimensions exceed supported size");
  }
  if (maxval == 0 || maxval > 255) {
    throw PgmError(PgmError::Kind::bad_maxval,
                   "pgm: maxval " + std::to_string(maxval) + " outside [1,255]");
  }

  const std::size_t count = width * height;
  std::vector<std::uint8_t> pixels(count);

  if (variant == '5') {
    if (reader.at_end() || !std::isspace(reader.peek())) {
      throw PgmError(PgmError::Kind::truncated, "pgm: header not terminated before pixel data");
    }
    reader.advance();  // exactly one whitespace byte
    const std::size_t start = reader.pos();
    if (bytes.size() - start < count) {
      throw PgmError(PgmError::Kind::truncated,
                     "pgm: expected " + std::to_string(count) + " pixel bytes, found " +
                         std::to_string(bytes.size() - start));
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = bytes[start + i];
      if (v > maxval) {
        throw PgmError(PgmError::Kind::bad_sample, "pgm: sample exceeds maxval");
      }
      pixels[i] = v;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t v = 0;
      if (!reader.read_unsigned(v)) {
        if (reader.at_end()) {
          throw PgmError(PgmError::Kind::truncated,
                         "pgm: expected " + std::to_string(count) + " samples, found " +
                             std::to_string(i));
        }
        throw PgmError(PgmError::Kind::bad_sample, "pgm: non-numeric sample");
      }
      if (v > maxval) {
        throw PgmError(PgmError::Kind::bad_sample, "pgm: sample exceeds maxval");
      }
      pixels[i] = static_cast<std::uint8_t>(v);
    }
  }
  return GrayImage(width, height, std::move(pixels));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
  const std::string header =
      "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + image.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error("read failed: " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("write failed: " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

GrayImage load_pgm(const std::filesystem::path& path) { return read_pgm(read_file(path)); }

void save_pgm(const std::filesystem::path& path, const GrayImage& image) {
  write_file_atomic(path, write_pgm(image));
}

}  // namespace fpe
