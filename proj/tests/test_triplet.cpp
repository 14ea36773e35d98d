#include <cmath>
#include <string>

#include "darboux/rng.hpp"
#include "darboux/triplet.hpp"
#include "doctest.h"

using namespace darboux;

namespace {

std::vector<GridPoint> grid50(const DeformationPair& p) {
  auto g = pair_grid(p, 8);  // 64 points; the involution specs ask for 50
  g.resize(50);
  return g;
}

double vdist(const V3& a, const V3& b) { return norm(a - b); }

double jet_dist(const JV3& a, const JV3& b) {
  JV3 d = a - b;
  return std::max({d.x.max_abs_coeff(), d.y.max_abs_coeff(), d.z.max_abs_coeff()});
}

}  // namespace

TEST_CASE("rotation field of the trivial pair is the constant vector") {
  const auto& p = find_pair("trivial");
  SurfaceMap h = compute_h(p.f, p.g);
  for (const auto& pt : pair_grid(p, 4)) {
    JV3 hj = h.eval(pt.u, pt.v, 1);
    CHECK(vdist(value(hj), {1, 2, 3}) < 1e-10);
    // Constant: first-order coefficients vanish.
    CHECK(norm(partial(hj, 1, 0)) < 1e-9);
    CHECK(norm(partial(hj, 0, 1)) < 1e-9);
  }
}

TEST_CASE("frozen rotation values") {
  const auto& parab = find_pair("paraboloid");
  V3 h11 = value(compute_h(parab.f, parab.g).eval(1.0, 1.0, 0));
  CHECK(vdist(h11, {1, -1, 0}) < 1e-10);

  const auto& cyl = find_pair("cylinder");
  SurfaceMap h = compute_h(cyl.f, cyl.g);
  for (const auto& pt : pair_grid(cyl, 4))
    CHECK(vdist(value(h.eval(pt.u, pt.v, 0)), {0, 0, -std::cos(pt.u)}) < 1e-10);
}

TEST_CASE("solved rotation field matches each pair's closed form with jets") {
  for (const auto& p : catalog()) {
    SurfaceMap h = compute_h(p.f, p.g);
    for (const auto& pt : pair_grid(p, 4)) {
      JV3 solved = h.eval(pt.u, pt.v, 2);
      JV3 closed = p.h_closed->eval(pt.u, pt.v, 2);
      INFO(p.name, " at (", pt.u, ",", pt.v, ")");
      CHECK(jet_dist(solved, closed) < 1e-9);
    }
  }
}

TEST_CASE("rotation solve rejects bad input") {
  const auto& p = find_pair("paraboloid");
  SurfaceMap self = compute_h(p.f, p.f);  // df.df != 0: inconsistent
  CHECK_THROWS_AS(self.eval(1.0, 2.0, 0), InconsistentSystem);

  SurfaceMap line{[](double u, double, int k) {
                    Jet2 uu = Jet2::variable(0, u, k);
                    return JV3{uu, uu, Jet2::constant(1.0, k)};
                  },
                  p.domain};
  SurfaceMap rot = compute_h(line, p.g);
  CHECK_THROWS_AS(rot.eval(1.0, 2.0, 0), NotImmersion);
}

TEST_CASE("A step is an exact involution and keeps the triplet relation") {
  const auto& p = find_pair("paraboloid");
  for (const auto& pt : grid50(p)) {
    TripletJets base = eval_word_jets(p, "", pt.u, pt.v, 2);
    TripletJets once = step_A(base);
    // New triplet (h, g - h x f, f) still satisfies d(slot2) = slot3 x d(slot1).
    CHECK(rotation_residual(once.f, once.g, once.h) < 1e-8);
    TripletJets twice = step_A(once);
    CHECK(jet_dist(twice.f, base.f) < 1e-12);
    CHECK(jet_dist(twice.g, base.g) < 1e-12);
    CHECK(jet_dist(twice.h, base.h) < 1e-12);
  }
}

TEST_CASE("A on the trivial pair gives constant first components") {
  const auto& p = find_pair("trivial");
  for (const auto& pt : pair_grid(p, 3)) {
    TripletJets t = step_A(eval_word_jets(p, "", pt.u, pt.v, 1));
    CHECK(vdist(value(t.f), {1, 2, 3}) < 1e-9);
    CHECK(vdist(value(t.g), {4, 5, 6}) < 1e-9);
    CHECK(norm(partial(t.g, 1, 0)) < 1e-8);
    CHECK(norm(partial(t.g, 0, 1)) < 1e-8);
  }
}

TEST_CASE("D step is an involution where defined") {
  const auto& p = find_pair("paraboloid");
  for (const auto& pt : grid50(p)) {
    TripletJets base = eval_word_jets(p, "", pt.u, pt.v, 3);
    TripletJets twice = step_D(step_D(base));
    int k = twice.order();
    CHECK(jet_dist(twice.f, truncated(base.f, k)) < 1e-8);
    CHECK(jet_dist(twice.g, truncated(base.g, k)) < 1e-8);
    CHECK(jet_dist(twice.h, truncated(base.h, k)) < 1e-8);
  }
}

TEST_CASE("D step output satisfies the polar identities") {
  const auto& p = find_pair("paraboloid");
  for (const auto& pt : grid50(p)) {
    TripletJets base = eval_word_jets(p, "", pt.u, pt.v, 2);
    TripletJets d = step_D(base);
    // h* . h = -1 and h* . df = 0.
    double hh = dot(value(d.h), value(base.h));
    CHECK(hh == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(std::abs(dot(value(d.h), partial(base.f, 1, 0))) < 1e-8);
    CHECK(std::abs(dot(value(d.h), partial(base.f, 0, 1))) < 1e-8);
    CHECK(rotation_residual(d.f, d.g, d.h) < 1e-8);
  }
}

TEST_CASE("both D routes agree on generic points") {
  const auto& p = find_pair("paraboloid");
  for (const auto& pt : grid50(p)) {
    TripletJets base = eval_word_jets(p, "", pt.u, pt.v, 2);
    CHECK_NOTHROW(step_D(base, DRoute::cross_check));
  }
}

TEST_CASE("both D routes fail on the planar pair") {
  const auto& p = find_pair("planar");
  TripletJets base = eval_word_jets(p, "", 0.5, 1.1, 2);
  // Route 1: the deformation field is not an immersion. Route 2: the rotation
  // field is horizontal, so its tangent planes pass through the origin.
  CHECK_THROWS_AS(step_D(base, DRoute::rotation_solve), NotImmersion);
  CHECK_THROWS_AS(step_D(base, DRoute::polar_of_h), TangentPlaneThroughOrigin);
  CHECK_THROWS_AS(step_D(base), BothRoutesUnavailable);
}

TEST_CASE("polar of a sphere patch is its antipode") {
  Domain d;
  d.u0 = 0.1;
  d.u1 = 0.6;
  d.v0 = 0.2;
  d.v1 = 0.7;
  SurfaceMap sphere{[](double u, double v, int k) {
                      Jet2 uu = Jet2::variable(0, u, k);
                      Jet2 vv = Jet2::variable(1, v, k);
                      return JV3{cos(uu) * cos(vv), sin(uu) * cos(vv), sin(vv)};
                    },
                    d};
  SurfaceMap star = polar(sphere);
  for (double u : {0.15, 0.4})
    for (double v : {0.3, 0.6}) {
      JV3 m = sphere.eval(u, v, 1);
      JV3 ms = star.eval(u, v, 1);
      CHECK(vdist(value(ms), -value(m)) < 1e-12);
      CHECK(dot(value(ms), value(m)) == doctest::Approx(-1.0));
      CHECK(std::abs(dot(value(ms), partial(m, 1, 0))) < 1e-12);
      CHECK(std::abs(dot(value(ms), partial(m, 0, 1))) < 1e-12);
    }
}

TEST_CASE("polar of the flat plane is the frozen constant") {
  const auto& p = find_pair("planar");
  SurfaceMap star = polar(p.f);
  JV3 s = star.eval(0.5, 1.0, 1);
  CHECK(vdist(value(s), {0, 0, -1}) < 1e-14);
  CHECK(norm(partial(s, 1, 0)) < 1e-14);
}

TEST_CASE("word reduction cancels adjacent repeats") {
  CHECK(reduce_word("") == "");
  CHECK(reduce_word("AA") == "");
  CHECK(reduce_word("ADDA") == "");
  CHECK(reduce_word("AADDA") == "A");
  CHECK(reduce_word("DADAD") == "DADAD");
  CHECK(reduce_word("ADDDA") == "ADA");
  CHECK_THROWS_AS(reduce_word("AXB"), BadWord);
}

TEST_CASE("worded transforms match direct step folds") {
  const auto& p = find_pair("paraboloid");
  DarbouxTriplet base = make_triplet(p);
  DarbouxTriplet ada = apply_word(base, "ADA");
  CHECK(ada.provenance == "ADA");
  GridPoint pt{0.8, 2.1};
  TripletJets via_fold = eval_word_jets(p, "ADA", pt.u, pt.v, 1);
  TripletJets via_lazy = ada.jets(pt.u, pt.v, 1);
  CHECK(jet_dist(via_fold.f, via_lazy.f) < 1e-13);
  CHECK(jet_dist(via_fold.g, via_lazy.g) < 1e-13);
  CHECK(jet_dist(via_fold.h, via_lazy.h) < 1e-13);
  // Reduction happens before composing.
  CHECK(apply_word(base, "AADDA").provenance == "A");
}

TEST_CASE("first components follow the classical labels") {
  const auto& p = find_pair("paraboloid");
  DarbouxTriplet base = make_triplet(p);
  GridPoint pt{1.2, 2.4};

  // "A" -> h, "D" -> g.
  CHECK(vdist(apply_word(base, "A").f.at(pt.u, pt.v),
              value(base.jets(pt.u, pt.v, 0).h)) < 1e-12);
  CHECK(vdist(apply_word(base, "D").f.at(pt.u, pt.v), p.g.at(pt.u, pt.v)) < 1e-12);

  // "AD" -> gtilde = g - h x f.
  TripletJets t = base.jets(pt.u, pt.v, 0);
  V3 gtilde = value(t.g) - cross(value(t.h), value(t.f));
  CHECK(vdist(apply_word(base, "AD").f.at(pt.u, pt.v), gtilde) < 1e-11);

  // "ADA" -> f*, the polar of f.
  V3 fstar = value(polar(p.f).eval(pt.u, pt.v, 0));
  CHECK(vdist(apply_word(base, "ADA").f.at(pt.u, pt.v), fstar) < 1e-9);
}

TEST_CASE("twelve surfaces orbit") {
  const auto& p = find_pair("paraboloid");
  DarbouxTriplet base = make_triplet(p);
  auto orbit = twelve_surfaces(base);
  REQUIRE(orbit.size() == 12);

  int nf = 0, ng = 0, nh = 0;
  for (const auto& e : orbit) {
    if (e.family == "f") ++nf;
    if (e.family == "g") ++ng;
    if (e.family == "h") ++nh;
  }
  CHECK(nf == 4);
  CHECK(ng == 4);
  CHECK(nh == 4);

  CHECK(find_surface(orbit, "gtilde").word == "AD");
  CHECK(find_surface(orbit, "AD").label == "gtilde");
  CHECK(find_surface(orbit, "").label == "f");
  CHECK(find_surface(orbit, "ftildestar").word == "ADADAD");
  CHECK_THROWS_AS(find_surface(orbit, "nope"), UnknownSurface);

  // The f-class is the orbit of f under the subgroup generated by ADA, DAD.
  for (const char* w : {"", "ADA", "DAD", "ADADAD"})
    CHECK(find_surface(orbit, w).family == "f");

  // All twelve are genuinely distinct surfaces at a sample point.
  GridPoint pt{0.9, 2.2};
  for (size_t i = 0; i < orbit.size(); ++i)
    for (size_t j = i + 1; j < orbit.size(); ++j) {
      V3 a = orbit[i].surface.at(pt.u, pt.v);
      V3 b = orbit[j].surface.at(pt.u, pt.v);
      CHECK(vdist(a, b) > 1e-6);
    }
}

TEST_CASE("twelve-letter closure reproduces the base triplet") {
  const auto& p = find_pair("paraboloid");
  for (const auto& pt : pair_grid(p, 4)) {
    TripletJets base = eval_word_jets(p, "", pt.u, pt.v, 0);
    TripletJets full =
        eval_word_jets(p, "DADADADADADA", pt.u, pt.v, 0, /*reduce=*/false);
    double scale = std::max({norm(value(base.f)), norm(value(base.g)),
                             norm(value(base.h)), 1.0});
    CHECK(vdist(value(full.f), value(base.f)) < 1e-7 * scale);
    CHECK(vdist(value(full.g), value(base.g)) < 1e-7 * scale);
    CHECK(vdist(value(full.h), value(base.h)) < 1e-7 * scale);
  }
}

TEST_CASE("rotation derivatives stay inside the immersion's tangent image") {
  const auto& p = find_pair("paraboloid");
  for (const auto& pt : pair_grid(p, 5)) {
    TripletJets t = eval_word_jets(p, "", pt.u, pt.v, 1);
    V3 f1 = partial(t.f, 1, 0), f2 = partial(t.f, 0, 1);
    V3 nu = cross(f1, f2);
    V3 nuh = scale(nu, 1.0 / norm(nu));
    for (auto dh : {partial(t.h, 1, 0), partial(t.h, 0, 1)})
      CHECK(std::abs(dot(dh, nuh)) < 1e-7 * std::max(norm(dh), 1e-300));
  }
}

TEST_CASE("shifted triplets keep the relation and shift h by a") {
  const auto& p = find_pair("paraboloid");
  DarbouxTriplet base = make_triplet(p);
  V3 v{0.1, 0.2, 0.3}, a{0.07, -0.05, 0.11};
  DarbouxTriplet moved = triplet_shift(base);
  GridPoint pt{1.1, 1.9};
  TripletJets t0 = base.jets(pt.u, pt.v, 1);
  TripletJets t1 = moved.jets(pt.u, pt.v, 1);
  CHECK(rotation_residual(t1.f, t1.g, t1.h) < 1e-12);
  CHECK(vdist(value(t1.f), value(t0.f) + v) < 1e-13);
  CHECK(vdist(value(t1.h), value(t0.h) + a) < 1e-13);
  // The shifted triplet is still transformable.
  CHECK_NOTHROW(apply_word(moved, "AD").f.at(pt.u, pt.v));
}

TEST_CASE("apply_word reports the failing prefix") {
  const auto& p = find_pair("planar");
  DarbouxTriplet base = make_triplet(p);
  DarbouxTriplet bad = apply_word(base, "D");  // no D route exists here
  try {
    bad.f.at(0.5, 1.1);
    FAIL("expected an error");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("word prefix \"D\"") != std::string::npos);
  }
}

TEST_CASE("transform provenance accumulates letter by letter") {
  const auto& p = find_pair("paraboloid");
  DarbouxTriplet base = make_triplet(p);
  CHECK(base.provenance == "");
  CHECK(transform_A(base).provenance == "A");
  CHECK(transform_D(transform_A(base)).provenance == "AD");
}
