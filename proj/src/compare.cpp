#include "fpe/compare.hpp"

#include <cstdio>

#include "fpe/error.hpp"
#include "fpe/threshold.hpp"

namespace fpe {

std::string_view method_name(Method method) noexcept {
  switch (method) {
    case Method::otsu_binarize:
      return "otsu-binarize";
    case Method::ghe:
      return "ghe";
    case Method::lhe:
      return "lhe";
    case Method::proposed:
      break;
  }
  return "proposed";
}

namespace {

ComparisonRow run_method(Method method, const GrayImage& image, const CompareConfig& config) {
  ComparisonRow row;
  row.method = method;
  switch (method) {
    case Method::otsu_binarize: {
      const int level = otsu(histogram(image)).level;
      row.metrics = metrics(binarize(image, level));
      row.threshold = level;
      break;
    }
    case Method::ghe:
      row.metrics = metrics(ghe(image));
      break;
    case Method::lhe:
      row.metrics = metrics(lhe(image, config.tile));
      break;
    case Method::proposed: {
      const EnhanceResult r = enhance(image, config.enhance);
      row.metrics = r.output_metrics;
      row.threshold = r.threshold;
      break;
    }
  }
  return row;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<ComparisonRow> compare(std::string_view image_id, const GrayImage& image,
                                   const CompareConfig& config) {
  std::vector<ComparisonRow> rows;
  rows.reserve(kMethods.size());
  for (const Method method : kMethods) {
    ComparisonRow row;
    try {
      row = run_method(method, image, config);
    } catch (const Error& e) {
      row = ComparisonRow{};
      row.method = method;
      row.failure = e.what();
    }
    row.image_id = std::string(image_id);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.image_id << ',' << method_name(row.method) << ',';
    if (row.failure) {
      out << "failed,-,-,-,-\n";
      continue;
    }
    out << (row.threshold ? std::to_string(*row.threshold) : std::string("-")) << ','
        << fixed6(row.metrics.mean) << ',' << fixed6(row.metrics.rms_contrast) << ','
        << row.metrics.dynamic_range << ',' << fixed6(row.metrics.entropy) << '\n';
  }
}

}  // namespace fpe
