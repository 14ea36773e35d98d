#include "darboux/export_obj.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "darboux/error.hpp"
#include "darboux/triplet.hpp"
#include "darboux/version.hpp"

namespace darboux {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string export_obj(const DeformationPair& p,
                       const std::string& word_or_label, int grid_n) {
  if (grid_n < 2)
    throw IncompatibleArguments("mesh grid must be at least 2x2, got " +
                                std::to_string(grid_n));

  const auto orbit = twelve_surfaces(make_triplet(p));
  const OrbitEntry& entry = find_surface(orbit, word_or_label);

  const auto grid = raw_grid(p.domain, grid_n);
  std::vector<V3> vertices(grid.size());
  std::string failures;
  int failure_count = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const int row = static_cast<int>(k) / grid_n;
    const int col = static_cast<int>(k) % grid_n;
    try {
      vertices[k] = entry.surface.at(grid[k].u, grid[k].v);
    } catch (const Error& e) {
      if (++failure_count <= 8) {
        if (!failures.empty()) failures += ", ";
        failures +=
            "(" + std::to_string(row) + "," + std::to_string(col) + ")";
      }
    }
  }
  if (failure_count > 0) {
    if (failure_count > 8)
      failures += ", and " + std::to_string(failure_count - 8) + " more";
    throw DegeneratePoint("surface '" + entry.label +
                          "' of pair '" + p.name +
                          "' is undefined at grid indices " + failures);
  }

  std::ostringstream out;
  out << "# pair: " << p.name << "\n";
  out << "# surface: " << entry.label << " (word \""
      << (entry.word.empty() ? "id" : entry.word) << "\")\n";
  out << "# grid: " << grid_n << "x" << grid_n << "\n";
  out << "# generator: darboux " << version_string << "\n";
  for (const V3& v : vertices)
    out << "v " << fmt_double(v.x) << " " << fmt_double(v.y) << " "
        << fmt_double(v.z) << "\n";
  // Each grid quad (row, col) splits along its diagonal into two triangles;
  // OBJ indices are 1-based.
  for (int row = 0; row + 1 < grid_n; ++row)
    for (int col = 0; col + 1 < grid_n; ++col) {
      const int a = row * grid_n + col + 1;
      const int b = row * grid_n + col + 2;
      const int c = (row + 1) * grid_n + col + 2;
      const int d = (row + 1) * grid_n + col + 1;
      out << "f " << a << " " << b << " " << c << "\n";
      out << "f " << a << " " << c << " " << d << "\n";
    }
  return out.str();
}

}  // namespace darboux
