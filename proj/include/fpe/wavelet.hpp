#pragma once

#include <cstddef>

#include "fpe/image.hpp"

namespace fpe {

/// Single-level orthonormal Haar subbands.
///
/// Naming: the first letter is the horizontal filter, the second the vertical one.
/// LL is the approximation, HL differences horizontally adjacent pixels (and so
/// responds to vertical edges), LH differences vertically adjacent pixels and HH
/// is the diagonal detail. For [[1,2],[3,4]]: LL=5, HL=-1, LH=-2, HH=0.
///
/// Every band is ceil(width/2) x ceil(height/2). Odd axes are extended by
/// whole-point symmetry (the missing sample mirrors index n-2).
struct SubbandSet {
  RealPlane ll;
  RealPlane lh;
  RealPlane hl;
  RealPlane hh;
  std::size_t source_width = 0;
  std::size_t source_height = 0;
};

/// Throws InvalidArgument when either dimension is below 2.
SubbandSet dwt2(const RealPlane& plane);

/// Exact inverse of dwt2, truncated back to the source dimensions. Throws
/// InvalidArgument when band sizes disagree with each other or the source size.
RealPlane idwt2(const SubbandSet& bands);

/// Sum of squares of all entries.
double energy(const RealPlane& plane) noexcept;

}  // namespace fpe
