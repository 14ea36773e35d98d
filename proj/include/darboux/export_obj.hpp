#pragma once

#include <string>

#include "darboux/surfaces.hpp"

namespace darboux {

/// Wavefront OBJ mesh of one surface from the twelve-surface orbit of a
/// deformation pair, selected by word or classical label. Vertices are the
/// surface values over the unfiltered row-major n x n grid of the pair's
/// rectangle; each grid quad is split into two triangles. The comment
/// header records pair, surface, grid and library version. Throws
/// UnknownSurface for a bad selector and DegeneratePoint, listing the
/// offending grid indices, when the surface fails to evaluate somewhere.
std::string export_obj(const DeformationPair& p,
                       const std::string& word_or_label, int grid_n);

}  // namespace darboux
