#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "pwilab/iet.hpp"

using namespace pwilab;

namespace {

Iet golden_iet() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  return Iet({phi - 1.0, 2.0 - phi}, Permutation({2, 1}));
}

Permutation random_irreducible(int d, std::mt19937_64& rng) {
  std::vector<int> p(d);
  for (int j = 0; j < d; ++j) p[j] = j + 1;
  while (true) {
    std::shuffle(p.begin(), p.end(), rng);
    Permutation perm(p);
    if (perm.irreducible()) return perm;
  }
}

Iet random_iet(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> mu(d);
  for (double& m : mu) m = u(rng);
  return Iet(std::move(mu), random_irreducible(d, rng));
}

}  // namespace

TEST_CASE("permutation validation and helpers") {
  CHECK_THROWS_AS(Permutation({1, 1}), NonBijectiveError);
  CHECK_THROWS_AS(Permutation({1, 3}), NonBijectiveError);
  const Permutation p({4, 2, 1, 3});
  CHECK(p.of(0) == 0);
  CHECK(p.of(1) == 4);
  CHECK(p.inverse_of(4) == 1);
  CHECK(p.bracket(5) == 0);
  CHECK(p.bracket(-1) == 4);
  CHECK(p.irreducible());
  CHECK_FALSE(Permutation::identity(3).irreducible());
  CHECK_FALSE(Permutation({2, 1, 3}).irreducible());
}

TEST_CASE("make_iet computes breakpoints and translations") {
  const Iet m({0.6, 0.4}, Permutation({2, 1}));
  CHECK(m.breakpoints() == std::vector<double>{0.0, 0.6, 1.0});
  CHECK(m.translations()[0] == Catch::Approx(0.4).margin(1e-15));
  CHECK(m.translations()[1] == Catch::Approx(-0.6).margin(1e-15));

  CHECK_THROWS_AS(Iet({0.5, 0.5}, Permutation::identity(2)), ReducibleError);
  CHECK_THROWS_AS(Iet({0.5, -0.5}, Permutation({2, 1})),
                  NonPositiveLengthError);

  const Iet strip({0.1217970148, 0.1329352086, 0.2008884081, 0.3550989199},
                  Permutation({4, 2, 1, 3}));
  CHECK(strip.total_length() == Catch::Approx(0.8107195496).margin(1e-12));
}

TEST_CASE("iet_apply forward, inverse, domain") {
  const Iet m({0.6, 0.4}, Permutation({2, 1}));
  CHECK(m.apply(0.1) == Catch::Approx(0.5).margin(1e-15));
  CHECK_THROWS_AS(m.apply(1.0), OutOfDomainError);
  CHECK_THROWS_AS(m.apply(-0.1), OutOfDomainError);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng) * m.total_length();
    CHECK(m.apply_inverse(m.apply(x)) == Catch::Approx(x).margin(1e-14));
  }
}

TEST_CASE("itinerary basics and shift property") {
  const Iet m({0.6, 0.4}, Permutation({2, 1}));
  CHECK(m.itinerary(0.1, 0).symbols.empty());
  CHECK(m.itinerary(0.1, 3).symbols == std::vector<int>{1, 1, 2});

  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const Iet r = random_iet(3, rng);
    std::uniform_real_distribution<double> u(0.0, r.total_length());
    const double x = u(rng);
    const auto full = r.itinerary(x, 50).symbols;
    const auto shifted = r.itinerary(r.apply(x), 49).symbols;
    CHECK(std::vector<int>(full.begin() + 1, full.end()) == shifted);
  }
}

TEST_CASE("near_breakpoint proximity flag") {
  const Iet m({0.6, 0.4}, Permutation({2, 1}));
  CHECK(m.near_breakpoint(0.6 + 1e-13));
  CHECK_FALSE(m.near_breakpoint(0.5));
}

TEST_CASE("rauzy_step on the spec examples") {
  const RauzyResult r0 = rauzy_step(Iet({0.4, 0.6}, Permutation({2, 1})));
  CHECK(r0.type == 0);
  CHECK(r0.induced.lengths()[0] == Catch::Approx(0.4).margin(1e-15));
  CHECK(r0.induced.lengths()[1] == Catch::Approx(0.2).margin(1e-15));
  CHECK(r0.induced.perm() == Permutation({2, 1}));

  const RauzyResult r1 = rauzy_step(Iet({0.6, 0.4}, Permutation({2, 1})));
  CHECK(r1.type == 1);
  CHECK(r1.induced.lengths()[0] == Catch::Approx(0.2).margin(1e-15));
  CHECK(r1.induced.lengths()[1] == Catch::Approx(0.4).margin(1e-15));

  CHECK_THROWS_AS(rauzy_step(Iet({0.5, 0.5}, Permutation({2, 1}))),
                  DegenerateStepError);
}

TEST_CASE("rauzy_step equals brute-force first return") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const Iet m = random_iet(d, rng);
    RauzyResult r{Iet({1.0, 1.0}, Permutation({2, 1})), 0, 0, 0};
    try {
      r = rauzy_step(m);
    } catch (const DegenerateStepError&) {
      continue;
    }
    const double L = r.induced.total_length();
    std::uniform_real_distribution<double> u(0.0, L);
    for (int s = 0; s < 200; ++s) {
      const double x = u(rng);
      double y = m.apply(x);
      while (y >= L) y = m.apply(y);
      CHECK(std::abs(r.induced.apply(x) - y) < 1e-12);
    }
  }
}

TEST_CASE("first_return on rational and golden examples") {
  const Iet m({0.4, 0.6}, Permutation({2, 1}));
  const ReturnResult r = first_return(m, 1, 0.0);
  CHECK(r.steps == 2);
  CHECK(r.point == Catch::Approx(0.2).margin(1e-15));

  const Iet g = golden_iet();
  // brute-force oracle with the strict k > 1 convention
  double y = g.apply(0.1);
  std::int64_t n = 1;
  while (n < 2 || g.atom_of(y) != 1) {
    y = g.apply(y);
    ++n;
  }
  const ReturnResult rg = first_return(g, 1, 0.1);
  CHECK(rg.steps == n);
  CHECK(rg.point == Catch::Approx(y).margin(0.0));

  // standard convention can return earlier
  const ReturnResult rs =
      first_return(g, 1, 0.1, 10000, ReturnConvention::standard);
  CHECK(rs.steps <= rg.steps);
}

TEST_CASE("return time additivity") {
  const Iet g = golden_iet();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, g.lengths()[0]);
  auto N = [&](double x, int k) {
    std::int64_t total = 0;
    for (int i = 0; i < k; ++i) {
      const ReturnResult r =
          first_return(g, 1, x, 100000, ReturnConvention::standard);
      total += r.steps;
      x = r.point;
    }
    return total;
  };
  auto advance = [&](double x, int k) {
    for (int i = 0; i < k; ++i)
      x = first_return(g, 1, x, 100000, ReturnConvention::standard).point;
    return x;
  };
  for (int i = 0; i < 10; ++i) {
    const double x = u(rng);
    for (int a = 0; a <= 5; ++a)
      for (int b = 0; b <= 5; ++b)
        CHECK(N(x, a + b) == N(x, a) + N(advance(x, a), b));
  }
}

TEST_CASE("zero_orbit_statistics") {
  const Iet m({0.4, 0.6}, Permutation({2, 1}));
  const ZeroOrbitStats st = zero_orbit_statistics(m, 100);
  REQUIRE_FALSE(st.p.empty());
  CHECK(st.p[0] == 2);  // 0 -> 0.6 -> 0.2, first entry into I_1
  CHECK(st.first_hit_time[0] == 0);
  CHECK(st.first_hit_point[0] == 0.0);
  std::int64_t total = 0;
  for (std::int64_t c : st.visit_counts) total += c;
  CHECK(total == 100);  // k counted in 1..n_max

  const Iet g = golden_iet();
  const ZeroOrbitStats sg = zero_orbit_statistics(g, 100000);
  const std::int64_t n = 100000;
  for (int j = 0; j < 2; ++j) {
    const double freq =
        static_cast<double>(sg.visit_counts[j]) / static_cast<double>(n);
    CHECK(std::abs(freq - g.lengths()[j] / g.total_length()) < 5.0 / n);
  }
}

TEST_CASE("idoc_check") {
  CHECK(idoc_check(golden_iet(), 10000));
  CHECK_FALSE(idoc_check(Iet({0.4, 0.6}, Permutation({2, 1})), 10));
  CHECK_FALSE(idoc_check(Iet({0.3, 0.4, 0.3}, Permutation({3, 2, 1})), 100));
}

TEST_CASE("discontinuous_embedding_predicate") {
  CHECK(discontinuous_embedding_predicate(
      Iet({0.3, 0.4, 0.3}, Permutation({3, 2, 1}))));
  CHECK_FALSE(discontinuous_embedding_predicate(golden_iet()));
  // d=2 equal lengths: f^{-1}(x_1) = 0, never an interior breakpoint
  CHECK_FALSE(discontinuous_embedding_predicate(
      Iet({0.5, 0.5}, Permutation({2, 1}))));
}

TEST_CASE("image intervals tile the domain") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 5);
    const Iet m = random_iet(d, rng);
    std::vector<std::pair<double, double>> images;
    for (int j = 1; j <= d; ++j)
      images.emplace_back(m.breakpoints()[j - 1] + m.translations()[j - 1],
                          m.breakpoints()[j] + m.translations()[j - 1]);
    std::sort(images.begin(), images.end());
    CHECK(std::abs(images.front().first) < 1e-12);
    for (std::size_t i = 1; i < images.size(); ++i)
      CHECK(std::abs(images[i].first - images[i - 1].second) < 1e-12);
    CHECK(std::abs(images.back().second - m.total_length()) < 1e-12);
  }
}

TEST_CASE("itineraries are invariant under rescaling") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Iet m = random_iet(3, rng);
    std::vector<double> scaled = m.lengths();
    for (double& v : scaled) v *= 7.5;
    const Iet s(scaled, m.perm());
    std::uniform_real_distribution<double> u(0.0, m.total_length());
    const double x = u(rng);
    CHECK(m.itinerary(x, 200) == s.itinerary(x * 7.5, 200));
  }
}
