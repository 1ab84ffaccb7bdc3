#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "pwilab/embedding.hpp"
#include "pwilab/experiments.hpp"
#include "pwilab/pwi.hpp"

using namespace pwilab;

namespace {

Complex random_point(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return Complex(u(rng), u(rng));
}

Iet golden_iet() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  return Iet({phi - 1.0, 2.0 - phi}, Permutation({2, 1}));
}

}  // namespace

TEST_CASE("isometry algebra") {
  const Isometry id;
  CHECK(id(Complex(0.3, -0.2)) == Complex(0.3, -0.2));

  const Isometry a(std::numbers::pi / 2.0, Complex(1.0, 0.0));
  const Complex img = a(Complex(1.0, 0.0));
  CHECK(img.real() == Catch::Approx(1.0).margin(1e-15));
  CHECK(img.imag() == Catch::Approx(1.0).margin(1e-15));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int i = 0; i < 50; ++i) {
    const Isometry t(angle(rng), random_point(rng));
    CHECK(t.compose(t.inverse()).near_identity());
    CHECK(t.inverse().compose(t).near_identity());
    const Complex z = random_point(rng);
    CHECK(std::abs(t.apply_inverse(t(z)) - z) < 1e-13);

    const Isometry u(angle(rng), random_point(rng));
    const Isometry v(angle(rng), random_point(rng));
    const Complex lhs = t.compose(u).compose(v)(z);
    const Complex rhs = t.compose(u.compose(v))(z);
    CHECK(std::abs(lhs - rhs) < 1e-13);

    const Complex w = random_point(rng);
    CHECK(std::abs(std::abs(t(z) - t(w)) - std::abs(z - w)) < 1e-13);
  }
}

TEST_CASE("half-plane and region membership") {
  const PaperSystem cones = build_cone_family(0.5, 1.0, 0.7);
  CHECK(cones.pwi.atom(1).contains(Complex(0.0, 0.0)));  // special point
  CHECK(cones.pwi.atom(1).contains(Complex(0.3, 0.0)));

  // strict sense excludes the boundary
  const HalfPlane h{0.0, Complex(0.0, 0.0), Sense::gt};
  CHECK_FALSE(h.contains(Complex(0.5, 0.0)));
  CHECK(h.complemented().contains(Complex(0.5, 0.0)));
  CHECK(h.near_boundary(Complex(0.5, 1e-13)));
}

TEST_CASE("region algebra") {
  std::mt19937_64 rng(2);
  const ConvexRegion r({HalfPlane{0.4, Complex(0.1, 0.2), Sense::ge},
                        HalfPlane{-1.1, Complex(-0.3, 0.0), Sense::lt}});
  const ConvexRegion full{std::vector<HalfPlane>{}};
  const ConvexRegion both = region_intersect(r, full);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = random_point(rng);
    CHECK(both.contains(z) == r.contains(z));
  }
  const ConvexRegion under_id = r.transformed(Isometry::identity());
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = random_point(rng);
    CHECK(under_id.contains(z) == r.contains(z));
    const Isometry t(angle(rng), random_point(rng));
    CHECK(r.transformed(t).contains(t(z)) == r.contains(z));
  }
}

TEST_CASE("pwi_apply uses first-match declaration order") {
  const PaperSystem cones =
      build_cone_family(0.5, 1.0, constants::kGoldenRatioConjugate);
  const auto [img0, j0] = cones.pwi.apply(Complex(0.3, 0.0));
  CHECK(j0 == 1);  // P_0
  CHECK(img0.real() == Catch::Approx(-0.7).margin(1e-15));
  const auto [img3, j3] = cones.pwi.apply(Complex(-0.5, 0.0));
  CHECK(j3 == 4);  // P_3
  CHECK(img3.real() ==
        Catch::Approx(-0.5 + constants::kGoldenRatioConjugate).margin(1e-15));

  // a fan covering only the upper half-plane loses the lower one
  const Pwi fan({ConvexRegion({HalfPlane{0.0, Complex(0, 0), Sense::gt}})},
                {Isometry::identity()}, "fan");
  CHECK_THROWS_AS(fan.apply(Complex(0.0, -1.0)), NoAtomError);
}

TEST_CASE("atoms pairwise disjoint on sampled boxes") {
  std::mt19937_64 rng(3);
  const PaperSystem tp = build_paper_3pwi();
  const PaperSystem cones =
      build_cone_family(0.5, 1.0, constants::kGoldenRatioConjugate);
  for (const PaperSystem* sys : {&tp, &cones}) {
    std::uniform_real_distribution<double> ux(sys->pwi.box().xmin,
                                              sys->pwi.box().xmax);
    std::uniform_real_distribution<double> uy(sys->pwi.box().ymin,
                                              sys->pwi.box().ymax);
    int doubles = 0;
    for (int i = 0; i < 10000; ++i) {
      const Complex z(ux(rng), uy(rng));
      int members = 0;
      for (int j = 1; j <= sys->pwi.atom_count(); ++j)
        if (sys->pwi.atom(j).contains(z)) ++members;
      if (members > 1) ++doubles;
    }
    CHECK(doubles == 0);
  }
}

TEST_CASE("pwi_orbit basics") {
  const PaperSystem cones =
      build_cone_family(0.5, 1.0, constants::kGoldenRatioConjugate);

  const OrbitRecord seed_only = pwi_orbit(cones.pwi, Complex(0.2, 0.1), 0);
  CHECK(seed_only.points.size() == 1);
  CHECK(seed_only.atom_trace.symbols.size() == 1);
  CHECK_FALSE(seed_only.escaped_at.has_value());

  // the baseline stays real
  const OrbitRecord base = pwi_orbit(cones.pwi, Complex(-0.5, 0.0), 5000);
  REQUIRE_FALSE(base.escaped_at.has_value());
  for (Complex p : base.points) CHECK(p.imag() == 0.0);

  // escape is recorded, not thrown
  const Pwi fan({ConvexRegion({HalfPlane{0.0, Complex(0, 0), Sense::gt}})},
                {Isometry(0.0, Complex(0.0, -1.0))}, "drop");
  const OrbitRecord esc = pwi_orbit(fan, Complex(0.0, 1.5), 10);
  REQUIRE(esc.escaped_at.has_value());
  CHECK(*esc.escaped_at == 2);
  CHECK(esc.points.size() == esc.atom_trace.symbols.size() + 1);
}

TEST_CASE("orbit tails re-simulate exactly") {
  const PaperSystem strip = build_return_strip();
  const OrbitRecord rec = pwi_orbit(strip.pwi, *strip.anchor, 500);
  REQUIRE_FALSE(rec.escaped_at.has_value());
  const OrbitRecord tail = pwi_orbit(strip.pwi, rec.points[100], 400);
  for (std::size_t k = 0; k < tail.points.size(); ++k) {
    CHECK(tail.points[k] == rec.points[100 + k]);
    CHECK(tail.atom_trace.symbols[k] == rec.atom_trace.symbols[100 + k]);
  }
}

TEST_CASE("first_return equals the naive loop") {
  const PaperSystem cones =
      build_cone_family(0.5, 1.0, constants::kGoldenRatioConjugate);
  // no constraints: everything returns in one step
  const std::vector<ConvexRegion> whole = {
      ConvexRegion{std::vector<HalfPlane>{}}};
  const PwiReturnResult one =
      pwi_first_return(cones.pwi, whole, Complex(0.3, 0.1));
  CHECK(one.steps == 1);
  CHECK(one.point == cones.pwi.apply(Complex(0.3, 0.1)).first);

  const std::vector<ConvexRegion> section = {cones.pwi.atom(2),
                                             cones.pwi.atom(3)};
  auto in_section = [&](Complex z) {
    return section[0].contains(z) || section[1].contains(z);
  };
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ur(0.40, 0.52);
  std::uniform_real_distribution<double> ut(1.0, std::numbers::pi - 1.0);
  int tested = 0;
  for (int i = 0; tested < 100 && i < 1000; ++i) {
    const Complex z = std::polar(ur(rng), ut(rng));
    if (!in_section(z)) continue;
    ++tested;
    Complex w = z;
    std::int64_t k = 0;
    do {
      w = cones.pwi.apply(w).first;
      ++k;
    } while (!in_section(w));
    const PwiReturnResult r = pwi_first_return(cones.pwi, section, z);
    CHECK(r.steps == k);
    CHECK(r.point == w);
  }
  CHECK(tested == 100);
}

TEST_CASE("induced_pwi realizes the Rauzy step of a trivial embedding") {
  const Iet g = golden_iet();
  const TrivialEmbedding emb = trivial_linear_embedding(g, 0.25);
  const RauzyResult rr = rauzy_step(g);
  const Pwi induced = induced_pwi(emb.companion, g, 2);

  CHECK(rr.type == 1);  // golden lengths have mu_1 > mu_2
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, rr.induced.total_length());
  for (int s = 0; s < 50; ++s) {
    const double x = u(rng);
    Complex z = Complex(x, 0.125);
    double y = x;
    for (int k = 0; k < 1000; ++k) {
      const auto [zn, atom] = induced.apply(z);
      CHECK(atom == rr.induced.atom_of(y));
      z = zn;
      y = rr.induced.apply(y);
      CHECK(std::abs(z.real() - y) < 1e-10);
      CHECK(z.imag() == 0.125);
    }
  }

  // first-return closure: the induced domain maps into itself
  std::uniform_real_distribution<double> uy(0.0, 0.25);
  auto in_domain = [&](Complex z) {
    for (int j = 1; j <= induced.atom_count(); ++j)
      if (induced.atom(j).contains(z)) return true;
    return false;
  };
  for (int s = 0; s < 1000; ++s) {
    const Complex z(u(rng), uy(rng));
    if (!in_domain(z)) continue;
    CHECK(in_domain(induced.apply(z).first));
  }
}

TEST_CASE("induced_pwi type 0 composes the double branch") {
  const Iet m({0.4, 0.6}, Permutation({2, 1}));
  const TrivialEmbedding emb = trivial_linear_embedding(m, 0.5);
  const RauzyResult rr = rauzy_step(m);
  REQUIRE(rr.type == 0);
  const Pwi induced = induced_pwi(emb.companion, m, 2);
  REQUIRE(induced.atom_count() == 2);
  // branch on the winner's preimage is T^2: theta stays 0, translation
  // tau_1 + tau_2
  CHECK(induced.map(1).lambda().real() ==
        Catch::Approx(m.translations()[0] + m.translations()[1])
            .margin(1e-15));
  CHECK(induced.map(2).lambda().real() ==
        Catch::Approx(m.translations()[1]).margin(1e-15));
}

TEST_CASE("cone family baseline carries the 2-IET") {
  const double ratio = constants::kGoldenRatioConjugate;
  const PaperSystem cones = build_cone_family(0.5, 1.0, ratio);
  const Iet& base = *cones.iet;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, base.total_length());
  for (int s = 0; s < 20; ++s) {
    const double x = u(rng);
    Complex z(x - 1.0, 0.0);  // h(x) = x - 1 onto the baseline
    double y = x;
    for (int k = 0; k < 10000; ++k) {
      const auto [zn, atom] = cones.pwi.apply(z);
      CHECK(atom == cones.alignment[base.atom_of(y) - 1]);
      z = zn;
      y = base.apply(y);
    }
    CHECK(std::abs(z.real() - (y - 1.0)) < 1e-9);
    CHECK(z.imag() == 0.0);
  }
}
