#include <catch2/catch_amalgamated.hpp>

#include "metaloop/catalog.hpp"
#include "metaloop/products.hpp"
#include "metaloop/wreath.hpp"

using namespace metaloop;

namespace {

WreathSpec z2_over_trivial_z2() {
  WreathSpec spec;
  spec.d = catalog::cyclic(2);
  spec.a_members = {0};
  spec.b = catalog::cyclic(2);
  spec.c1_members = {0};
  return spec;
}

// D = Z2, A = {e}, B = Z4, C1 = {0,2}, xi(c,b) = 2 when both args are odd.
// The only nontrivial pointwise xi on B = Z2 breaks the Latin property, so
// this is the smallest loop-yielding twisted variant.
WreathSpec z4_twisted() {
  WreathSpec spec;
  spec.d = catalog::cyclic(2);
  spec.a_members = {0};
  spec.b = catalog::cyclic(4);
  spec.c1_members = {0, 2};
  spec.xi.assign(1, std::vector<std::vector<std::vector<elem>>>(
                        4, std::vector<std::vector<elem>>(1, std::vector<elem>(4, 0))));
  for (elem b1 = 1; b1 < 4; b1 += 2)
    for (elem b2 = 1; b2 < 4; b2 += 2) spec.xi[0][static_cast<std::size_t>(b1)][0][static_cast<std::size_t>(b2)] = 2;
  return spec;
}

}  // namespace

TEST_CASE("f_action at the identity is the identity") {
  auto w = wreath_product(z2_over_trivial_z2());
  for (std::int64_t f = 0; f < w.function_count(); ++f) REQUIRE(f_action(w, 0, f) == f);
  auto w4 = wreath_product(z4_twisted());
  for (std::int64_t f = 0; f < w4.function_count(); ++f) REQUIRE(f_action(w4, 0, f) == f);
}

TEST_CASE("f_action fixes the constant-e function") {
  auto w = wreath_product(z2_over_trivial_z2());
  for (elem d = 0; d < 2; ++d) REQUIRE(f_action(w, d, 0) == 0);
}

TEST_CASE("f_action on a 2-point V matches direct evaluation") {
  auto w = wreath_product(z2_over_trivial_z2());
  REQUIRE(w.tr.reps == std::vector<elem>{0, 1});
  // A = {e}: s(d,v) = e, v^{[d\e]} = tau(v (d\e)) = v + d in Z2.
  for (elem d = 0; d < 2; ++d)
    for (std::int64_t f = 0; f < 4; ++f) {
      std::int64_t g = f_action(w, d, f);
      for (int p = 0; p < 2; ++p) {
        elem expected = w.f.value(f, (p + d) % 2);
        REQUIRE(w.f.value(g, p) == expected);
      }
    }
  // d = 1 swaps the two digits: indices 1 <-> 2 swap, 0 and 3 fixed.
  REQUIRE(f_action(w, 1, 1) == 2);
  REQUIRE(f_action(w, 1, 2) == 1);
  REQUIRE(f_action(w, 1, 0) == 0);
  REQUIRE(f_action(w, 1, 3) == 3);
}

TEST_CASE("wreath with D = A collapses to the direct product") {
  WreathSpec spec;
  spec.d = catalog::cyclic(3);
  spec.a_members = {0, 1, 2};
  spec.b = catalog::klein();
  spec.c1_members = {0};
  auto w = wreath_product(spec);
  REQUIRE(w.tr.reps == std::vector<elem>{0});
  REQUIRE(w.order() == 12);
  REQUIRE(w.product.same_table(direct_product(catalog::cyclic(3), catalog::klein())));
}

TEST_CASE("untwisted Z2 wreath of Z2 is a group of order 8") {
  auto w = wreath_product(z2_over_trivial_z2());
  REQUIRE(w.order() == 8);
  REQUIRE(w.product.class_tag() == ClassTag::group);
  REQUIRE(w.product.identity() == elem{0});
  REQUIRE(w.order() == w.d.order() * static_cast<int>(w.function_count()));
}

TEST_CASE("the only nontrivial pointwise xi on B = Z2 is rejected") {
  auto spec = z2_over_trivial_z2();
  spec.c1_members = {0, 1};
  spec.xi.assign(1, std::vector<std::vector<std::vector<elem>>>(
                        2, std::vector<std::vector<elem>>(1, std::vector<elem>(2, 0))));
  // Identity forces xi(e,.) = xi(.,e) = e, leaving a single candidate.
  spec.xi[0][1][0][1] = 1;
  REQUIRE_THROWS_AS(wreath_product(spec), StructureError);
  // A fully constant twist kills the identity instead.
  for (elem b1 = 0; b1 < 2; ++b1)
    for (elem b2 = 0; b2 < 2; ++b2) spec.xi[0][static_cast<std::size_t>(b1)][0][static_cast<std::size_t>(b2)] = 1;
  REQUIRE_THROWS_AS(wreath_product(spec), StructureError);
}

TEST_CASE("twisted Z4 wreath is an order-32 loop with the right identity") {
  auto w = wreath_product(z4_twisted());
  REQUIRE(w.order() == 32);
  REQUIRE(w.product.is_loop());
  REQUIRE(w.product.identity() == elem{0});
  REQUIRE(w.index_of(0, 0) == 0);
  // Associator pattern: the table is nonassociative or associative as the
  // classification says; both routes agree (checked in core tests).
  REQUIRE(w.order() == w.d.order() * static_cast<int>(w.function_count()));
}

TEST_CASE("wreath size bound is enforced") {
  auto spec = z4_twisted();
  spec.max_functions = 8;  // |B|^|V| = 16 exceeds this
  REQUIRE_THROWS_AS(wreath_product(spec), ResourceError);
}

TEST_CASE("theta with identity automorphisms is the identity") {
  auto w = wreath_product(z4_twisted());
  std::vector<elem> i{0, 1};
  std::vector<elem> j{0, 1, 2, 3};
  auto res = theta_isomorphism(w, i, j);
  REQUIRE(res.c_ij.product.same_table(w.product));
  for (elem g = 0; g < w.order(); ++g) REQUIRE(res.theta[static_cast<std::size_t>(g)] == g);
}

TEST_CASE("theta with the inversion automorphism of Z4") {
  auto w = wreath_product(z4_twisted());
  std::vector<elem> i{0, 1};
  std::vector<elem> j{0, 3, 2, 1};  // b -> -b fixes C1 = {0,2} pointwise
  auto res = theta_isomorphism(w, i, j);  // internal assertions cover all pairs
  REQUIRE(res.c_ij.order() == 32);
  bool moved = false;
  for (elem g = 0; g < w.order(); ++g) moved = moved || res.theta[static_cast<std::size_t>(g)] != g;
  REQUIRE(moved);
}

TEST_CASE("non-automorphisms are rejected at the precondition") {
  auto w = wreath_product(z4_twisted());
  std::vector<elem> i{0, 1};
  REQUIRE_THROWS_AS(theta_isomorphism(w, i, std::vector<elem>{0, 2, 1, 3}), PreconditionError);
  REQUIRE_THROWS_AS(theta_isomorphism(w, std::vector<elem>{1, 0}, std::vector<elem>{0, 1, 2, 3}),
                    PreconditionError);
  // Automorphism of B that moves C1 off itself: b -> b+1 is not even an
  // automorphism, so use Z4 -> Z4 swap of {1,3} which is inversion (allowed);
  // instead check the C1 guard with a spec whose C1 = {0,1} over klein.
  WreathSpec spec;
  spec.d = catalog::cyclic(2);
  spec.a_members = {0};
  spec.b = catalog::klein();
  spec.c1_members = {0, 1};
  auto wk = wreath_product(spec);
  // Klein automorphism swapping 1 <-> 2 does not preserve C1 = {0,1}.
  REQUIRE_THROWS_AS(theta_isomorphism(wk, std::vector<elem>{0, 1}, std::vector<elem>{0, 2, 1, 3}),
                    PreconditionError);
}

TEST_CASE("verify_automorphism checks all three operations") {
  auto z4 = catalog::cyclic(4);
  REQUIRE(verify_automorphism(z4, {0, 3, 2, 1}).ok);
  REQUIRE_FALSE(verify_automorphism(z4, {0, 1, 3, 2}).ok);
  REQUIRE_FALSE(verify_automorphism(z4, {0, 0, 2, 2}).ok);
  auto s3 = catalog::s3();
  // Conjugation by (01): an inner automorphism of S3.
  std::vector<elem> conj(6);
  for (elem x = 0; x < 6; ++x) conj[static_cast<std::size_t>(x)] = s3.mul(s3.mul(2, x), 2);
  REQUIRE(verify_automorphism(s3, conj).ok);
}
