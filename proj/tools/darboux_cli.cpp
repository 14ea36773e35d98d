#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "darboux/error.hpp"
#include "darboux/export_obj.hpp"
#include "darboux/suites.hpp"
#include "darboux/surfaces.hpp"
#include "darboux/triplet.hpp"
#include "darboux/version.hpp"

namespace {

using namespace darboux;

int write_out(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 1;
  }
  out << content;
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& pair, int grid,
               std::uint64_t seed, const std::string& out_path) {
  VerificationReport rep = run_suite(suite, pair, grid, seed);
  int rc = write_out(rep.to_json(), out_path);
  if (rc != 0) return rc;
  return rep.all_pass() ? 0 : 1;
}

std::string fmt3(const V3& v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(% .6g, % .6g, % .6g)", v.x, v.y, v.z);
  return buf;
}

int cmd_orbit(const std::string& pair_name, std::vector<double> point) {
  const DeformationPair& p = find_pair(pair_name);
  double u, v;
  if (point.empty()) {
    u = 0.5 * (p.domain.u0 + p.domain.u1);
    v = 0.5 * (p.domain.v0 + p.domain.v1);
  } else {
    u = point[0];
    v = point[1];
  }
  if (!p.domain.contains(u, v))
    throw DegeneratePoint("point (" + std::to_string(u) + ", " +
                          std::to_string(v) + ") is not generic for pair '" +
                          p.name + "' (" + p.domain.description + ")");

  const auto orbit = twelve_surfaces(make_triplet(p));
  std::vector<V3> values(orbit.size());
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    try {
      values[i] = orbit[i].surface.at(u, v);
    } catch (const Error& e) {
      throw DegeneratePoint("surface '" + orbit[i].label +
                            "' (word \"" + orbit[i].word +
                            "\") is undefined here: " + e.what());
    }
  }

  std::printf("orbit of pair '%s' at (%g, %g):\n\n", p.name.c_str(), u, v);
  std::printf("  %-8s %-12s %-6s %s\n", "word", "label", "class",
              "first component");
  for (std::size_t i = 0; i < orbit.size(); ++i)
    std::printf("  %-8s %-12s %-6s %s\n",
                orbit[i].word.empty() ? "(id)" : orbit[i].word.c_str(),
                orbit[i].label.c_str(), orbit[i].family.c_str(),
                fmt3(values[i]).c_str());

  std::printf("\nasymptotic classes:\n");
  for (const char* fam : {"f", "g", "h"}) {
    std::string members;
    for (const auto& e : orbit)
      if (e.family == fam) members += (members.empty() ? "" : ", ") + e.label;
    std::printf("  %s: %s\n", fam, members.c_str());
  }

  double scale = 1.0;
  for (const V3& w : values) scale = std::max(scale, norm(w));
  int distinct = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool fresh = true;
    for (std::size_t j = 0; j < i; ++j)
      if (norm(values[i] - values[j]) <= 1e-6 * scale) fresh = false;
    if (fresh) ++distinct;
  }
  if (distinct < 12)
    std::printf("\nnote: the orbit collapses to %d distinct point%s at this "
                "position\n",
                distinct, distinct == 1 ? "" : "s");

  std::string constant_labels;
  for (const auto& e : orbit) {
    try {
      JV3 jet = e.surface.eval(u, v, 1);
      double d = std::max(norm(partial(jet, 1, 0)), norm(partial(jet, 0, 1)));
      if (d <= 1e-9 * std::max(1.0, norm(value(jet))))
        constant_labels += (constant_labels.empty() ? "" : ", ") + e.label;
    } catch (const Error&) {
      // a surface whose derivative jet degenerates here is not constant
    }
  }
  if (!constant_labels.empty())
    std::printf("\nnote: constant component maps (the deformation is rigid "
                "along them): %s\n",
                constant_labels.c_str());

  TripletJets base = eval_word_jets(p, "", u, v, 0);
  TripletJets full =
      eval_word_jets(p, "DADADADADADA", u, v, 0, /*reduce=*/false);
  double base_scale = std::max({norm(value(base.f)), norm(value(base.g)),
                                norm(value(base.h)), 1.0});
  double gap = std::max({norm(value(full.f) - value(base.f)),
                         norm(value(full.g) - value(base.g)),
                         norm(value(full.h) - value(base.h))});
  std::printf("\ntwelve-step closure residual: %.3e\n", gap / base_scale);
  return 0;
}

int cmd_export(const std::string& pair_name, const std::string& surface,
               int grid, const std::string& out_path) {
  const DeformationPair& p = find_pair(pair_name);
  return write_out(export_obj(p, surface, grid), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Isometric-deformation triplets over the split octonions: "
      "verification suites, orbit tables and mesh export"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  std::string suite = "all";
  std::string pair = "paraboloid";
  std::string surface = "f";
  std::string format = "obj";
  std::string out_path;
  int grid = 8;
  std::uint64_t seed = 1;
  std::vector<double> point;

  std::string pair_help = "catalog pair name (";
  for (const auto& n : pair_names()) pair_help += n + ", ";
  pair_help.resize(pair_help.size() - 2);
  pair_help += ")";

  CLI::App* verify =
      app.add_subcommand("verify", "Run a verification suite, print JSON");
  verify->add_option("suite", suite,
                     "suite name (algebra, triplets, gauss, forms, incidence, "
                     "all)");
  verify->add_option("--pair", pair, pair_help);
  verify->add_option("--grid", grid, "sample grid is NxN")
      ->check(CLI::Range(2, 1000));
  verify->add_option("--seed", seed, "seed for the random-sample checks");
  verify->add_option("--out", out_path, "write the JSON report to this file");

  CLI::App* orbit = app.add_subcommand(
      "orbit", "Print the twelve-surface orbit table at one point");
  orbit->add_option("--pair", pair, pair_help);
  orbit
      ->add_option("--point", point,
                   "evaluation point u v (default: domain midpoint)")
      ->expected(2);

  CLI::App* exp =
      app.add_subcommand("export", "Sample one orbit surface as a mesh");
  exp->add_option("--pair", pair, pair_help);
  exp->add_option("--surface", surface,
                  "orbit surface, by label (f, gtilde, hstar, ...) or by "
                  "word over {A, D}");
  exp->add_option("--grid", grid, "mesh grid is NxN")
      ->check(CLI::Range(2, 1000));
  exp->add_option("--format", format, "mesh format")
      ->check(CLI::IsMember({"obj"}));
  exp->add_option("--out", out_path, "write the mesh to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed())
      return cmd_verify(suite, pair, grid, seed, out_path);
    if (orbit->parsed()) return cmd_orbit(pair, point);
    return cmd_export(pair, surface, grid, out_path);
  } catch (const darboux::UnknownPair& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const darboux::UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const darboux::UnknownSurface& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const darboux::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
