#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ecta;
using namespace ecta::testing;

namespace {

const RegionVariant kVariants[] = {RegionVariant::Classic, RegionVariant::Refined};

bool listed(const std::vector<Region>& regions, const Region& r) {
  return std::find(regions.begin(), regions.end(), r) != regions.end();
}

}  // namespace

TEST_CASE("region of a valuation matches the clause-wise equivalence") {
  auto c = clocks_ab();
  std::mt19937_64 rng(23);
  for (RegionVariant variant : kVariants)
    for (long cmax : {0L, 1L, 2L})
      for (int i = 0; i < 1500; ++i) {
        const Valuation v = random_grid_valuation(c, rng, 6, 4);
        const Valuation w = random_grid_valuation(c, rng, 6, 4);
        CAPTURE(v.to_string());
        CAPTURE(w.to_string());
        CHECK((region_of(v, cmax, variant) == region_of(w, cmax, variant)) == equivalent(v, w, cmax, variant));
      }
}

TEST_CASE("refined regions split classic ones") {
  auto c = clocks_ab();
  std::mt19937_64 rng(29);
  for (int i = 0; i < 2000; ++i) {
    const Valuation v = random_grid_valuation(c, rng, 6, 4);
    const Valuation w = random_grid_valuation(c, rng, 6, 4);
    if (equivalent(v, w, 1, RegionVariant::Refined)) CHECK(equivalent(v, w, 1, RegionVariant::Classic));
  }
  // p.a and p.b both above cmax = 1 but 3 units apart versus 0 units apart.
  const Valuation near = Valuation::of(c, {{"p.a", "5"}, {"p.b", "5"}});
  const Valuation far = Valuation::of(c, {{"p.a", "2"}, {"p.b", "5"}});
  CHECK(equivalent(near, far, 1, RegionVariant::Classic));
  CHECK_FALSE(equivalent(near, far, 1, RegionVariant::Refined));
}

TEST_CASE("region zones hold exactly their region") {
  auto c = clocks_ab();
  std::mt19937_64 rng(31);
  for (RegionVariant variant : kVariants)
    for (int i = 0; i < 150; ++i) {
      const Valuation v = random_grid_valuation(c, rng, 4, 4);
      const Region r = region_of(v, 1, variant);
      const Edbm z = region_to_zone(r, c);
      CHECK(cellwise_member(z, v));
      CHECK(region_of(sample(z), 1, variant) == r);
      for (int k = 0; k < 40; ++k) {
        const Valuation u = random_grid_valuation(c, rng, 4, 4);
        CHECK(cellwise_member(z, u) == (region_of(u, 1, variant) == r));
      }
    }
}

TEST_CASE("decomposition lists exactly the regions a zone meets") {
  auto c = clocks_ab();
  std::mt19937_64 rng(37);
  for (RegionVariant variant : kVariants)
    for (int i = 0; i < 40; ++i) {
      const Edbm z = random_zone(c, rng, 2);
      const auto regions = decompose(z, 2, variant);
      if (z.is_empty()) {
        CHECK(regions.empty());
        continue;
      }
      for (const auto& r : regions) CHECK_FALSE(intersect(region_to_zone(r, c), z).is_empty());
      for (const auto& v : probe_points(c, {z}, rng, 100, 20))
        if (cellwise_member(z, v)) CHECK(listed(regions, region_of(v, 2, variant)));
    }
}

TEST_CASE("initial and final regions") {
  auto c = clocks_a();
  for (RegionVariant variant : kVariants) {
    const auto init = initial_regions(c, 1, variant);
    CHECK_FALSE(init.empty());
    for (const auto& r : init) CHECK(is_initial(r, *c));
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
      const Valuation v = random_grid_valuation(c, rng, 4, 4);
      const Region r = region_of(v, 1, variant);
      CHECK(is_initial(r, *c) == is_initial(v));
      CHECK(is_final(r, *c) == is_final(v));
      if (is_initial(v)) CHECK(listed(init, r));
    }
  }
  // h.a undefined; p.a undefined, zero, in (0,1), one, above one.
  CHECK(initial_regions(c, 1, RegionVariant::Classic).size() == 5);
}

TEST_CASE("weak successor witnesses on worked cases") {
  auto c = clocks_a();
  {
    const Valuation v1 = Valuation::of(c, {{"p.a", "1/2"}});
    const Valuation v2 = Valuation::of(c, {{"p.a", "3/4"}});
    const WeakWitness w = weak_successor_witness(v1, v2, q("1/2"), 1);
    CHECK(w.delay == q("3/4"));
    CHECK(w.valuation == Valuation::of(c, {{"p.a", "0"}}));
  }
  auto cab = clocks_ab();
  {
    const Valuation v1 = Valuation::of(cab, {{"p.a", "5"}, {"p.b", "1"}});
    const Valuation v2 = Valuation::of(cab, {{"p.a", "9"}, {"p.b", "1"}});
    const WeakWitness w = weak_successor_witness(v1, v2, 1, 1);
    CHECK(w.delay == 1);
    CHECK(equivalent(elapse(v1, 1), w.valuation, 1, RegionVariant::Classic));
    CHECK(weak_successor_contains(v2, w.delay, w.valuation, 1));
  }
  CHECK_THROWS_AS(weak_successor_witness(Valuation::of(c, {{"p.a", "0"}}), Valuation::of(c, {{"p.a", "1"}}), 0, 1),
                  Error);
}

TEST_CASE("regions print") {
  auto c = clocks_a();
  const Region r = region_of(Valuation::of(c, {{"p.a", "1/2"}}), 1, RegionVariant::Classic);
  const std::string text = to_string(r, *c);
  CHECK(text.find("h.a=bot") != std::string::npos);
  CHECK(text.find("p.a in (0,1)") != std::string::npos);
}
