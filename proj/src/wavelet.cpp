#include "fpe/wavelet.hpp"

#include <cmath>
#include <numeric>

#include "fpe/error.hpp"

namespace fpe {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t half_up(std::size_t n) { return (n + 1) / 2; }

// Haar analysis along x: (w x h) -> two (ceil(w/2) x h) planes.
void analyze_rows(const RealPlane& in, RealPlane& lo, RealPlane& hi) {
  const std::size_t w = in.width();
  for (std::size_t y = 0; y < in.height(); ++y) {
    for (std::size_t j = 0; j < lo.width(); ++j) {
      const double a = in.at(2 * j, y);
      const double b = 2 * j + 1 < w ? in.at(2 * j + 1, y) : in.at(w - 2, y);
      lo.at(j, y) = (a + b) * kInvSqrt2;
      hi.at(j, y) = (a - b) * kInvSqrt2;
    }
  }
}

// Haar analysis along y: (w x h) -> two (w x ceil(h/2)) planes.
void analyze_columns(const RealPlane& in, RealPlane& lo, RealPlane& hi) {
  const std::size_t h = in.height();
  for (std::size_t i = 0; i < lo.height(); ++i) {
    const std::size_t yb = 2 * i + 1 < h ? 2 * i + 1 : h - 2;
    for (std::size_t x = 0; x < in.width(); ++x) {
      const double a = in.at(x, 2 * i);
      const double b = in.at(x, yb);
      lo.at(x, i) = (a + b) * kInvSqrt2;
      hi.at(x, i) = (a - b) * kInvSqrt2;
    }
  }
}

void synthesize_columns(const RealPlane& lo, const RealPlane& hi, RealPlane& out) {
  const std::size_t h = out.height();
  for (std::size_t i = 0; i < lo.height(); ++i) {
    for (std::size_t x = 0; x < out.width(); ++x) {
      const double l = lo.at(x, i);
      const double d = hi.at(x, i);
      out.at(x, 2 * i) = (l + d) * kInvSqrt2;
      if (2 * i + 1 < h) out.at(x, 2 * i + 1) = (l - d) * kInvSqrt2;
    }
  }
}

void synthesize_rows(const RealPlane& lo, const RealPlane& hi, RealPlane& out) {
  const std::size_t w = out.width();
  for (std::size_t y = 0; y < out.height(); ++y) {
    for (std::size_t j = 0; j < lo.width(); ++j) {
      const double l = lo.at(j, y);
      const double d = hi.at(j, y);
      out.at(2 * j, y) = (l + d) * kInvSqrt2;
      if (2 * j + 1 < w) out.at(2 * j + 1, y) = (l - d) * kInvSqrt2;
    }
  }
}

bool same_shape(const RealPlane& a, const RealPlane& b) {
  return a.width() == b.width() && a.height() == b.height();
}

}  // namespace

SubbandSet dwt2(const RealPlane& plane) {
  const std::size_t w = plane.width();
  const std::size_t h = plane.height();
  if (w < 2 || h < 2) throw InvalidArgument("dwt2: both dimensions must be at least 2");

  const std::size_t bw = half_up(w);
  const std::size_t bh = half_up(h);

  RealPlane row_lo(bw, h), row_hi(bw, h);
  analyze_rows(plane, row_lo, row_hi);

  SubbandSet bands{RealPlane(bw, bh), RealPlane(bw, bh), RealPlane(bw, bh), RealPlane(bw, bh),
                   w, h};
  analyze_columns(row_lo, bands.ll, bands.lh);
  analyze_columns(row_hi, bands.hl, bands.hh);
  return bands;
}

RealPlane idwt2(const SubbandSet& bands) {
  if (!same_shape(bands.ll, bands.lh) || !same_shape(bands.ll, bands.hl) ||
      !same_shape(bands.ll, bands.hh)) {
    throw InvalidArgument("idwt2: subbands have mismatched dimensions");
  }
  const std::size_t w = bands.source_width;
  const std::size_t h = bands.source_height;
  if (w < 2 || h < 2 || bands.ll.width() != half_up(w) || bands.ll.height() != half_up(h)) {
    throw InvalidArgument("idwt2: subband dimensions do not match the source size");
  }

  RealPlane row_lo(bands.ll.width(), h), row_hi(bands.ll.width(), h);
  synthesize_columns(bands.ll, bands.lh, row_lo);
  synthesize_columns(bands.hl, bands.hh, row_hi);

  RealPlane out(w, h);
  synthesize_rows(row_lo, row_hi, out);
  return out;
}

double energy(const RealPlane& plane) noexcept {
  const auto v = plane.values();
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

}  // namespace fpe
