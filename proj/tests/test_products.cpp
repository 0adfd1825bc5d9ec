#include <catch2/catch_amalgamated.hpp>

#include "cd_factors.hpp"
#include "metaloop/catalog.hpp"
#include "metaloop/products.hpp"
#include "oracles.hpp"

using namespace metaloop;

namespace {

BinarySystem opposite(const BinarySystem& T) {
  auto rows = T.rows();
  std::vector<std::vector<elem>> out(rows.size(), std::vector<elem>(rows.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < rows.size(); ++b) out[a][b] = rows[b][a];
  return BinarySystem(std::move(out));
}

SmashingFactors z2_z4_factors() {
  FactorMaps maps;
  maps.c = std::vector<elem>{0, 2};
  maps.xi.assign(2, std::vector<std::vector<std::vector<elem>>>(
                        4, std::vector<std::vector<elem>>(2, std::vector<elem>(4, 0))));
  for (elem b1 = 0; b1 < 4; ++b1)
    for (elem b2 = 0; b2 < 4; ++b2) maps.xi[1][static_cast<std::size_t>(b1)][1][static_cast<std::size_t>(b2)] = 2;
  return make_smashing_factors(catalog::cyclic(2), catalog::cyclic(4), std::move(maps));
}

}  // namespace

TEST_CASE("direct products") {
  auto p = direct_product(catalog::cyclic(2), catalog::cyclic(2));
  REQUIRE(p.same_table(catalog::klein()));
  REQUIRE(p.order() == 4);

  auto m16xz2 = direct_product(catalog::cd_basis(3), catalog::cyclic(2));
  REQUIRE(m16xz2.order() == 32);
  REQUIRE(m16xz2.is_metagroup_tag());
  REQUIRE_FALSE(m16xz2.is_associative());

  for (const auto& [a, b] : {std::pair{3, 5}, {4, 4}}) {
    REQUIRE(direct_product(catalog::cyclic(a), catalog::cyclic(b)).order() == a * b);
  }
}

TEST_CASE("trivial factors reproduce the direct product for abelian B") {
  for (auto [A, B] : {std::pair{catalog::cyclic(4), catalog::klein()},
                      std::pair{catalog::s3(), catalog::cyclic(3)},
                      std::pair{catalog::cd_basis(3), catalog::cyclic(2)}}) {
    auto F = trivial_factors(A, B);
    REQUIRE(smashed_twisted_product(F).same_table(direct_product(A, B)));
  }
}

TEST_CASE("trivial factors on nonabelian B give the B-opposite product") {
  // The general form multiplies the right operand's B-part from the left,
  // so with all twists trivial the B factor appears reversed.
  auto A = catalog::cyclic(2);
  auto B = catalog::s3();
  auto F = trivial_factors(A, B);
  auto G = smashed_twisted_product(F);
  REQUIRE(G.same_table(direct_product(A, opposite(B))));
  REQUIRE_FALSE(G.same_table(direct_product(A, B)));
  auto rep = embeddings_and_invariance(G, F);
  REQUIRE_FALSE(rep.find("theta_B-homomorphism")->pass);
}

TEST_CASE("Z2/Z4 twisted product is an order-8 loop") {
  auto F = z2_z4_factors();
  auto G = smashed_twisted_product(F);
  REQUIRE(G.order() == 8);
  REQUIRE(G.is_loop());
  REQUIRE(G.is_associative() == oracles::brute_associative(G.rows()));
  auto rep = validate_factors(F);
  for (const auto& item : rep.items) {
    INFO(item.name);
    REQUIRE(item.pass);
  }
}

TEST_CASE("validate_factors flags values outside C") {
  FactorMaps maps;
  maps.c = std::vector<elem>{0};  // trivial C, but xi takes value 2
  maps.xi.assign(2, std::vector<std::vector<std::vector<elem>>>(
                        4, std::vector<std::vector<elem>>(2, std::vector<elem>(4, 0))));
  maps.xi[1][0][1][0] = 2;
  auto F = make_smashing_factors(catalog::cyclic(2), catalog::cyclic(4), std::move(maps));
  auto rep = validate_factors(F);
  REQUIRE_FALSE(rep.find("twist-values-in-C")->pass);
  REQUIRE(rep.find("twist-values-in-C")->witness.has_value());
}

TEST_CASE("validate_factors passes on trivial systems") {
  auto F = trivial_factors(catalog::cyclic(3), catalog::klein());
  auto rep = validate_factors(F);
  REQUIRE(rep.all_pass);
}

TEST_CASE("default C is the smallest central closure of the used values") {
  FactorMaps maps;
  maps.xi.assign(2, std::vector<std::vector<std::vector<elem>>>(
                        4, std::vector<std::vector<elem>>(2, std::vector<elem>(4, 0))));
  maps.xi[1][0][1][0] = 2;
  auto F = make_smashing_factors(catalog::cyclic(2), catalog::cyclic(4), std::move(maps));
  REQUIRE(F.C == Subset::of(4, {0, 2}));
  auto G = trivial_factors(catalog::cyclic(2), catalog::cd_basis(3));
  REQUIRE(G.C == Subset::of(16, {0, 8}));  // C_m of the octonion basis loop
}

TEST_CASE("factor systems that break the Latin property are rejected") {
  FactorMaps maps;
  maps.c = std::vector<elem>{0, 1};
  maps.xi.assign(2, std::vector<std::vector<std::vector<elem>>>(
                        2, std::vector<std::vector<elem>>(2, std::vector<elem>(2, 0))));
  for (elem a1 = 0; a1 < 2; ++a1)
    for (elem b1 = 0; b1 < 2; ++b1)
      for (elem a2 = 0; a2 < 2; ++a2)
        for (elem b2 = 0; b2 < 2; ++b2) maps.xi[a1][b1][a2][b2] = b2;
  auto F = make_smashing_factors(catalog::cyclic(2), catalog::cyclic(2), std::move(maps));
  REQUIRE_THROWS_AS(smashed_twisted_product(F), StructureError);
  auto rep = validate_factors(F);
  REQUIRE_FALSE(rep.find("product-classifies-as-loop")->pass);
}

TEST_CASE("Cayley-Dickson factor system reproduces the octonion basis loop") {
  auto F = cdfactors::cd_factor_system();
  // All extracted twist values are signs.
  REQUIRE(F.C == Subset::of(8, {0, 4}));
  auto rep = validate_factors(F);
  for (const auto& item : rep.items) {
    INFO(item.name);
    REQUIRE(item.pass);
  }
  auto G = smashed_twisted_product(F);
  auto m16 = catalog::cd_basis(3);
  auto map = cdfactors::relabeling();
  for (elem g = 0; g < 16; ++g)
    for (elem h = 0; h < 16; ++h)
      REQUIRE(map[static_cast<std::size_t>(G.mul(g, h))] ==
              m16.mul(map[static_cast<std::size_t>(g)], map[static_cast<std::size_t>(h)]));
  REQUIRE(G.class_tag() == ClassTag::central_metagroup);
}

TEST_CASE("embeddings and invariance") {
  SECTION("direct product case") {
    auto F = trivial_factors(catalog::cyclic(3), catalog::cyclic(4));
    auto G = smashed_twisted_product(F);
    auto rep = embeddings_and_invariance(G, F);
    for (const auto& item : rep.items) {
      INFO(item.name);
      REQUIRE(item.pass);
    }
  }
  SECTION("Z2/Z4 twisted example") {
    auto F = z2_z4_factors();
    auto G = smashed_twisted_product(F);
    auto rep = embeddings_and_invariance(G, F);
    REQUIRE(rep.find("(3.20.5)")->pass);
    REQUIRE(rep.find("(3.20.6)")->pass);
    REQUIRE(rep.find("(3.2.1)-for-theta_B")->pass);
    REQUIRE(rep.find("transversal-V_GB-is-theta_A")->pass);
    REQUIRE(rep.find("psi-tau-partition-matches-cosets")->pass);
    REQUIRE(rep.find("theta_B-homomorphism")->pass);
    REQUIRE(rep.find("theta_B-image-submetagroup")->pass);
    // xi((a,.),(a,.)) = i^2 on every b-part, so theta_A(a)^2 = (e, i^2).
    REQUIRE_FALSE(rep.find("theta_A-homomorphism")->pass);
  }
  SECTION("Cayley-Dickson system: Prop 3.20 items hold") {
    auto F = cdfactors::cd_factor_system();
    auto G = smashed_twisted_product(F);
    auto rep = embeddings_and_invariance(G, F);
    REQUIRE(rep.find("(3.20.5)")->pass);
    REQUIRE(rep.find("(3.20.6)")->pass);
    REQUIRE(rep.find("(3.2.1)-for-theta_B")->pass);
    REQUIRE(rep.find("transversal-V_GB-is-theta_A")->pass);
    REQUIRE(rep.find("psi-tau-partition-matches-cosets")->pass);
    REQUIRE(rep.find("theta_B-homomorphism")->pass);
    // theta_A is not a homomorphism here: the doubled unit squares to -e0.
    REQUIRE_FALSE(rep.find("theta_A-homomorphism")->pass);
  }
}

TEST_CASE("psi/tau factorization per (3.20.2)-(3.20.4)") {
  auto F = z2_z4_factors();
  auto G = smashed_twisted_product(F);
  for (elem b1 = 0; b1 < 4; ++b1) {
    auto [psi, tau] = psi_tau_product(G, F, F.pair_index(0, b1));
    REQUIRE(psi == F.pair_index(0, b1));
    REQUIRE(tau == F.pair_index(0, 0));
  }
  for (elem a1 = 0; a1 < 2; ++a1) {
    auto [psi, tau] = psi_tau_product(G, F, F.pair_index(a1, 0));
    REQUIRE(tau == F.pair_index(a1, 0));
    if (a1 == 0) REQUIRE(psi == 0);
  }
  // Every g factors; the assertion g = g^psi g^tau is built in.
  for (elem g = 0; g < G.order(); ++g) (void)psi_tau_product(G, F, g);
  auto Ft = trivial_factors(catalog::cyclic(2), catalog::cyclic(3));
  auto Gt = smashed_twisted_product(Ft);
  for (elem a1 = 0; a1 < 2; ++a1) {
    auto [psi, tau] = psi_tau_product(Gt, Ft, Ft.pair_index(a1, 0));
    REQUIRE(psi == 0);  // trivial xi: psi part is (e,e)
    REQUIRE(tau == Ft.pair_index(a1, 0));
  }
}

TEST_CASE("size law |G| = |A||B|") {
  for (auto [A, B] : {std::pair{catalog::cyclic(5), catalog::klein()},
                      std::pair{catalog::s3(), catalog::cyclic(2)}}) {
    auto F = trivial_factors(A, B);
    REQUIRE(smashed_twisted_product(F).order() == A.order() * B.order());
  }
}

TEST_CASE("compose_smashed with all-trivial factors is the double direct product") {
  ComposeSpec spec{trivial_factors(catalog::cyclic(2), catalog::cyclic(2)),
                   trivial_factors(catalog::cyclic(2), catalog::cyclic(2)), FactorMaps{},
                   std::nullopt};
  auto res = compose_smashed(spec);
  REQUIRE(res.d.order() == 16);
  auto z2z2 = direct_product(catalog::cyclic(2), catalog::cyclic(2));
  REQUIRE(res.d.same_table(direct_product(z2z2, z2z2)));
  for (const auto& item : res.report.items) {
    INFO(item.name);
    REQUIRE(item.pass);
  }
}

TEST_CASE("compose_smashed with one nontrivial xi3 yields an order-16 loop") {
  ComposeSpec spec{trivial_factors(catalog::cyclic(2), catalog::cyclic(2)),
                   trivial_factors(catalog::cyclic(2), catalog::cyclic(2)), FactorMaps{},
                   std::nullopt};
  // One nontrivial twist on the (A', B) pair, constant on the b-arguments.
  spec.f3.c = std::vector<elem>{0, 1};
  spec.f3.xi.assign(4, std::vector<std::vector<std::vector<elem>>>(
                           4, std::vector<std::vector<elem>>(4, std::vector<elem>(4, 0))));
  for (elem b1 = 0; b1 < 4; ++b1)
    for (elem b2 = 0; b2 < 4; ++b2) spec.f3.xi[3][static_cast<std::size_t>(b1)][3][static_cast<std::size_t>(b2)] = 1;
  auto res = compose_smashed(spec);
  REQUIRE(res.d.order() == 16);
  REQUIRE(res.d.is_loop());
  for (const auto& item : res.report.items) {
    INFO(item.name);
    REQUIRE(item.pass);
  }
  REQUIRE(res.c1_image == Subset::of(16, {0, 1}));
}

TEST_CASE("compose_smashed checks the Corollary 3.22 hypotheses") {
  // B1 != B2.
  ComposeSpec bad{trivial_factors(catalog::cyclic(2), catalog::cyclic(2)),
                  trivial_factors(catalog::cyclic(2), catalog::cyclic(4)), FactorMaps{},
                  std::nullopt};
  REQUIRE_THROWS_AS(compose_smashed(bad), PreconditionError);

  // phi_2 not trivial on the designated arguments.
  FactorMaps f2maps;
  f2maps.phi = {{0, 1}, {1, 0}};  // phi(1) swaps
  ComposeSpec bad2{trivial_factors(catalog::cyclic(2), catalog::cyclic(2)),
                   make_smashing_factors(catalog::cyclic(2), catalog::cyclic(2), std::move(f2maps)),
                   FactorMaps{}, std::nullopt};
  REQUIRE_THROWS_AS(compose_smashed(bad2), PreconditionError);
}
