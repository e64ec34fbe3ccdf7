#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fpe/error.hpp"
#include "fpe/image.hpp"

namespace fpe {

class PgmError : public Error {
public:
  enum class Kind {
    bad_magic,        // not P2/P5
    color_unsupported,  // P3/P6 and friends are rejected, not converted
    bad_header,       // non-numeric or missing header field
    zero_dimension,
    bad_maxval,       // maxval of 0 or above 255
    truncated,        // fewer pixel samples than width * height
    bad_sample,       // ASCII sample above maxval or non-numeric
  };

  PgmError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Parses a P5 (binary) or P2 (ASCII) graymap with maxval <= 255. Samples are
/// taken as-is; maxval only bounds them.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

/// Canonical P5: "P5\n<w> <h>\n255\n" followed by raw bytes.
std::vector<std::uint8_t> write_pgm(const GrayImage& image);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames on success, so a failed write never
/// leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace fpe
