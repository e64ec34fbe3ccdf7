#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpe/equalize.hpp"
#include "fpe/image.hpp"
#include "fpe/pipeline.hpp"

namespace fpe {

enum class Method { otsu_binarize, ghe, lhe, proposed };

inline constexpr std::array<Method, 4> kMethods = {Method::otsu_binarize, Method::ghe,
                                                   Method::lhe, Method::proposed};

std::string_view method_name(Method method) noexcept;

struct ComparisonRow {
  std::string image_id;
  Method method = Method::ghe;
  ImageMetrics metrics;
  std::optional<int> threshold;
  /// Set when the method failed on this image; metrics are then meaningless.
  std::optional<std::string> failure;
};

struct CompareConfig {
  EnhanceOptions enhance;
  std::size_t tile = kDefaultTile;
};

/// One row per method in kMethods order. A method that fails is reported in its
/// row instead of aborting the table.
std::vector<ComparisonRow> compare(std::string_view image_id, const GrayImage& image,
                                   const CompareConfig& config = {});

inline constexpr std::string_view kCsvHeader =
    "image_id,method,threshold,mean,rms_contrast,dynamic_range,entropy";

/// Header plus one LF-terminated line per row. Reals use 6 decimals, an absent
/// threshold is "-", and failed rows carry "failed" with "-" metrics.
void write_csv(std::ostream& out, std::span<const ComparisonRow> rows);

}  // namespace fpe
