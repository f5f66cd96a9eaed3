#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "hyperarr/analysis.hpp"
#include "hyperarr/error.hpp"
#include "hyperarr/parse.hpp"
#include "hyperarr/reflection.hpp"
#include "support.hpp"

using namespace hyperarr;

namespace {

Arrangement named(const std::string& name) { return *named_arrangement(name); }

Subspace meet_of(const Arrangement& a, std::initializer_list<const char*> forms) {
  std::vector<LinearForm> fs;
  for (const char* f : forms) fs.push_back(parse_form(f, a.ambient(), a.field_order()));
  return Subspace::from_forms(a.ambient(), a.field_order(), fs);
}

FlatId flat_of(const Arrangement& a, const IntersectionLattice& lat,
               std::initializer_list<const char*> forms) {
  const auto id = lat.find(meet_of(a, forms), a);
  REQUIRE(id.has_value());
  return *id;
}

// Subarrangements of structured bases, with occasional random extra forms,
// so that modular flats and supersolvable cases actually occur.
Arrangement structured(testing::Gen& g, std::size_t max_size = 9) {
  static const std::vector<std::string> bases{"A(3)", "B(3)",     "D4",  "G(3,1,3)",
                                              "A(4)", "G(3,3,3)", "B(2)", "G(4,1,2)"};
  const auto base = named(g.pick(bases));
  std::vector<std::size_t> idx(base.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::shuffle(idx.begin(), idx.end(), g.engine());
  const auto keep = static_cast<std::size_t>(
      g.range(1, static_cast<long>(std::min(base.size(), max_size))));
  std::vector<LinearForm> forms;
  for (std::size_t k = 0; k < keep; ++k) forms.push_back(base[idx[k]]);
  if (forms.size() < max_size && g.coin(0.25)) forms.push_back(g.form(base.ambient(), base.field_order()));
  return Arrangement(base.ambient(), base.field_order(), std::move(forms));
}

Arrangement random_case(testing::Gen& g) {
  if (g.coin(0.7)) return structured(g);
  static const std::vector<unsigned> orders{1, 3, 4};
  return g.arrangement(static_cast<std::size_t>(g.range(1, 4)), g.pick(orders), 7);
}

std::size_t oracle_index(const std::vector<testing::OracleFlat>& flats, const Subspace& x) {
  for (std::size_t k = 0; k < flats.size(); ++k)
    if (flats[k].subspace == x) return k;
  return flats.size();
}

std::vector<bool> oracle_modular(const std::vector<testing::OracleFlat>& flats) {
  std::vector<bool> out(flats.size(), true);
  for (std::size_t x = 0; x < flats.size(); ++x)
    for (const auto& y : flats)
      if (oracle_index(flats, subspace_sum(flats[x].subspace, y.subspace)) == flats.size()) {
        out[x] = false;
        break;
      }
  return out;
}

bool oracle_supersolvable(const std::vector<testing::OracleFlat>& flats) {
  const auto modular = oracle_modular(flats);
  const std::size_t r = flats.back().rank;
  std::function<bool(std::size_t)> extend = [&](std::size_t x) {
    if (flats[x].rank == r) return true;
    for (std::size_t y = 0; y < flats.size(); ++y)
      if (modular[y] && flats[y].rank == flats[x].rank + 1 &&
          contains(flats[x].subspace, flats[y].subspace) && extend(y))
        return true;
    return false;
  };
  return extend(0);
}

std::vector<std::int64_t> expand(const std::vector<std::int64_t>& roots) {
  std::vector<std::int64_t> p{1};
  for (auto b : roots) {
    std::vector<std::int64_t> q(p.size() + 1, 0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k] += p[k];
      q[k + 1] += b * p[k];
    }
    p = std::move(q);
  }
  return p;
}

}  // namespace

TEST_CASE("modularity examples") {
  const auto d4 = named("D4");
  const auto lat = build_lattice(d4);
  const auto x = flat_of(d4, lat, {"a + b", "a - b"});
  const auto v1 = is_modular(d4, lat, x);
  const auto v2 = is_modular(d4, lat, x, ModularityMethod::SubspaceSum);
  CHECK_FALSE(v1.modular);
  CHECK_FALSE(v2.modular);
  REQUIRE(v1.witness.has_value());
  CHECK(v1.witness == v2.witness);
  CHECK(*v1.sum == *v2.sum);
  CHECK_FALSE(closure(d4, *v1.sum).subspace == *v1.sum);

  CHECK(is_modular(d4, lat, 0).modular);
  CHECK(is_modular(d4, lat, lat.top()).modular);
  for (FlatId h = lat.level_begin(1); h < lat.level_end(1); ++h) CHECK(is_modular(d4, lat, h).modular);
  CHECK_THROWS_AS(is_modular(d4, lat, static_cast<FlatId>(lat.size())), DomainError);

  const auto g = named("G(3,1,3)");
  const auto gl = build_lattice(g);
  CHECK(is_modular(g, gl, flat_of(g, gl, {"a", "b"})).modular);
  CHECK_FALSE(is_modular(g, gl, flat_of(g, gl, {"a - b", "b - c"})).modular);
}

TEST_CASE("modular flats of a rank") {
  const auto d4 = named("D4");
  const auto lat = build_lattice(d4);
  const auto r0 = modular_flats_of_rank(d4, lat, 0);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].modular);
  CHECK_THROWS_AS(modular_flats_of_rank(d4, lat, 5), DomainError);
  for (const char* name : {"F4", "G(4,4,4)", "D4"}) {
    CAPTURE(name);
    const auto a = named(name);
    const auto l = build_lattice(a);
    for (const auto& v : modular_flats_of_rank(a, l, 2, ModularityMethod::RankIdentity, 4))
      CHECK_FALSE(v.modular);
  }
  const auto a3 = named("A(3)");
  const auto ess = essentialize(a3);
  const auto l = build_lattice(ess);
  std::size_t count = 0;
  for (const auto& v : modular_flats_of_rank(ess, l, 2)) count += v.modular;
  CHECK(count == 4);  // the four triple points
}

TEST_CASE("supersolvability examples") {
  const auto b2 = named("B(2)");
  auto c = is_supersolvable(b2);
  CHECK(c.supersolvable);
  CHECK(c.chain.size() == 3);
  CHECK(c.modular_by_rank.empty());

  const auto g = named("G(3,1,3)");
  c = is_supersolvable(g);
  REQUIRE(c.supersolvable);
  REQUIRE(c.chain.size() == 4);
  CHECK(c.lattice->flat(c.chain[1]).subspace == meet_of(g, {"a"}));
  CHECK(c.lattice->flat(c.chain[2]).subspace == meet_of(g, {"a", "b"}));
  CHECK(recheck_certificate(c).empty());

  c = is_supersolvable(named("D4"));
  CHECK_FALSE(c.supersolvable);
  CHECK(c.refutation == SupersolvabilityCertificate::Refutation::EmptyRank);
  CHECK(c.refuted_rank == 2);
  CHECK(c.witnesses.size() == c.lattice->level(2).size());
  CHECK(recheck_certificate(c).empty());

  c = is_supersolvable(named("A(3)"));
  CHECK(c.essentialized);
  CHECK(c.arrangement.ambient() == 3);
  CHECK(c.supersolvable);

  c = is_supersolvable(product(named("B(3)"), named("G(3,3,3)")));
  CHECK_FALSE(c.supersolvable);
  CHECK(c.refutation == SupersolvabilityCertificate::Refutation::NoChain);
  for (const auto& level : c.modular_by_rank) CHECK_FALSE(level.empty());
  CHECK(recheck_certificate(c).empty());

  c = is_supersolvable(Arrangement(3, 1));
  CHECK(c.supersolvable);
}

TEST_CASE("a tampered certificate is rejected") {
  auto c = is_supersolvable(named("G(3,1,3)"));
  REQUIRE(c.supersolvable);
  const auto lat = c.lattice;
  for (FlatId x = lat->level_begin(2); x < lat->level_end(2); ++x)
    if (!is_modular(c.arrangement, *lat, x).modular && lat->below(c.chain[1], x)) {
      c.chain[2] = x;
      break;
    }
  CHECK_FALSE(recheck_certificate(c).empty());
}

TEST_CASE("mobius and poincare examples") {
  const auto boolean = named("Boolean(4)");
  const auto bl = build_lattice(boolean);
  const auto mu = mobius(bl);
  for (FlatId x = 0; x < bl.size(); ++x) CHECK(mu[x] == ((bl.flat(x).rank % 2) ? -1 : 1));

  const auto a3 = named("G(1,1,4)");
  const auto al = build_lattice(a3);
  std::int64_t total = 0;
  for (auto m : mobius(al)) total += m < 0 ? -m : m;
  CHECK(total == 24);
  CHECK(poincare(al) == std::vector<std::int64_t>{1, 6, 11, 6});

  CHECK(poincare(build_lattice(Arrangement(2, 1))) == std::vector<std::int64_t>{1});
  CHECK(poincare(build_lattice(Arrangement(2, 1, {parse_form("a", 2, 1)}))) ==
        std::vector<std::int64_t>{1, 1});
  CHECK(poincare(build_lattice(named("B(3)"))) == std::vector<std::int64_t>{1, 9, 23, 15});
  CHECK(exponents_if_supersolvable(named("B(3)")) == std::vector<std::int64_t>{1, 3, 5});
  CHECK(exponents_if_supersolvable(named("G(3,1,3)")) == std::vector<std::int64_t>{1, 4, 7});
  CHECK_THROWS_AS(exponents_if_supersolvable(named("D4")), RefusalError);
}

TEST_CASE("factor_poincare") {
  CHECK(factor_poincare({1}) == std::vector<std::int64_t>{});
  CHECK(factor_poincare({1, 6, 11, 6}) == std::vector<std::int64_t>{1, 2, 3});
  CHECK(factor_poincare({1, 4, 4}) == std::vector<std::int64_t>{2, 2});
  CHECK_FALSE(factor_poincare({1, 1, 1}).has_value());
  CHECK(factor_poincare({1, 12, 50, 84, 45}) == std::vector<std::int64_t>{1, 3, 3, 5});
  CHECK_FALSE(factor_poincare({1, 12, 46, 60}).has_value());
  CHECK_FALSE(factor_poincare({2, 1}).has_value());
}

TEST_CASE("rank-2 criterion") {
  for (const char* name : {"G(3,1,3)", "G29", "H3", "F4", "A(4)"}) {
    CAPTURE(name);
    const auto r = check_rank2_criterion(named(name));
    CHECK(r.agree());
  }
  const auto r = check_rank2_criterion(named("G(3,1,3)"));
  CHECK(r.supersolvable);
  CHECK(r.has_modular_rank2);
  CHECK_FALSE(check_rank2_criterion(named("H3")).supersolvable);
  CHECK_THROWS_AS(check_rank2_criterion(product(named("B(2)"), named("B(2)"))), RefusalError);
  CHECK_THROWS_AS(check_rank2_criterion(named("Boolean(1)")), RefusalError);
}

TEST_CASE("witness replay") {
  const auto d4 = named("D4");
  const auto ok = replay_witness(d4, std::vector<std::string>{"a + b", "a - b"},
                                 std::vector<std::string>{"b + d", "b - d"}, std::string("b"));
  CHECK(ok.passed());
  const auto wrong = replay_witness(d4, std::vector<std::string>{"a + b", "a - b"},
                                    std::vector<std::string>{"b + d", "b - d"}, std::string("c"));
  CHECK_FALSE(wrong.sum_matches_expected);
  CHECK_FALSE(wrong.passed());
  const auto outside = replay_witness(d4, std::vector<std::string>{"a", "b"},
                                      std::vector<std::string>{"c + d"}, std::nullopt);
  CHECK_FALSE(outside.forms_in_arrangement);
  const auto inside = replay_witness(d4, std::vector<std::string>{"a - b"},
                                     std::vector<std::string>{"c - d"}, std::nullopt);
  CHECK_FALSE(inside.sum_outside_lattice);
  CHECK_THROWS_AS(replay_witness(d4, std::vector<std::string>{"a +"}, std::vector<std::string>{"b"},
                                 std::nullopt),
                  ParseError);
}

TEST_CASE("property: poincare and mobius match the oracles [1000 cases]") {
  testing::Gen g(0x90A1);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto a = random_case(g);
    CAPTURE(write_arrangement(a));
    const auto lat = build_lattice(a);
    auto p = poincare(lat);
    CHECK(p == testing::whitney_poincare(a));
    CHECK(p.at(0) == 1);
    if (p.size() > 1) CHECK(p[1] == static_cast<std::int64_t>(a.size()));

    const auto flats = testing::brute_force_flats(a);
    const auto om = testing::oracle_mobius(flats);
    const auto mu = mobius(lat);
    for (std::size_t k = 0; k < flats.size(); ++k) {
      const auto id = lat.find(flats[k].support);
      REQUIRE(id.has_value());
      CHECK(mu[*id] == om[k]);
    }
  }
}

TEST_CASE("property: modularity and supersolvability match the oracle [1000 cases]") {
  testing::Gen g(0x55A0);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto a = random_case(g);
    CAPTURE(write_arrangement(a));
    const auto flats = testing::brute_force_flats(a);
    const auto om = oracle_modular(flats);
    const auto lat = build_lattice(a);
    for (std::size_t k = 0; k < flats.size(); ++k) {
      const auto id = *lat.find(flats[k].support);
      const auto v1 = is_modular(a, lat, id);
      const auto v2 = is_modular(a, lat, id, ModularityMethod::SubspaceSum);
      CHECK(v1.modular == om[k]);
      CHECK(v2.modular == om[k]);
      CHECK(v1.witness == v2.witness);
    }

    const auto c = is_supersolvable(a);
    CHECK(c.supersolvable == oracle_supersolvable(flats));
    CHECK(recheck_certificate(c).empty());
    if (c.supersolvable) {
      const auto p = poincare(*c.lattice);
      const auto roots = factor_poincare(p);
      REQUIRE(roots.has_value());
      CHECK(expand(*roots) == p);
      for (auto b : *roots) CHECK(b > 0);
    }
  }
}

TEST_CASE("property: rank 3 supersolvable iff a modular rank-2 flat exists [1000 cases]") {
  testing::Gen g(0x3A2C);
  int seen = 0;
  while (seen < 1000) {
    const auto a = essentialize(random_case(g));
    if (a.rank() != 3) continue;
    ++seen;
    const auto lat = build_lattice(a);
    bool any = false;
    for (const auto& v : modular_flats_of_rank(a, lat, 2)) any = any || v.modular;
    CHECK(is_supersolvable(a).supersolvable == any);
  }
}

TEST_CASE("property: thread count does not change verdicts [1000 cases]") {
  testing::Gen g(0x7D11);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto a = random_case(g);
    AnalysisOptions one, many;
    many.lattice.threads = 4;
    const auto c1 = is_supersolvable(a, one), c4 = is_supersolvable(a, many);
    CHECK(c1.supersolvable == c4.supersolvable);
    CHECK(c1.chain == c4.chain);
    CHECK(c1.modular_by_rank == c4.modular_by_rank);
  }
}
