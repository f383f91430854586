#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "fixtures.hpp"
#include "relkit/dual.hpp"

using namespace relkit;
using namespace relkit::fixtures;

namespace {

// Thin compact-form comonad from object data; nullopt when some required
// structure morphism does not exist.
std::optional<RelativeComonad> make_bool_comonad(const EnrichedFunctor& i,
                                                 std::vector<int> obj) {
  const EnrichedCategory& V = *i.cod;
  const MonoidalBase& B = *V.base;
  RelativeComonad C;
  C.i = i;
  C.obj = std::move(obj);
  int n = i.dom->n;
  for (int x = 0; x < n; ++x) {
    if (B.hom_count(B.unit_object(), V.hom(C.d(x), i(x))) != 1) return std::nullopt;
    C.counit.push_back(B.the(B.unit_object(), V.hom(C.d(x), i(x))));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (B.hom_count(V.hom(C.d(x), i(y)), V.hom(C.d(x), C.d(y))) != 1) return std::nullopt;
      C.coext.push_back(B.the(V.hom(C.d(x), i(y)), V.hom(C.d(x), C.d(y))));
    }
  return C;
}

// The interior operator x |-> min(x, 1)... no: 0,1,1 keeps 0 and collapses 2
// onto 1; it is monotone, deflationary and idempotent on CH3.
RelativeComonad interior_comonad() {
  auto C = make_bool_comonad(identity_functor(ch3()), {0, 1, 1});
  REQUIRE(C.has_value());
  C->name = "INT";
  return *C;
}

RelativeComonad z2_identity_comonad() {
  CatPtr Z = z2cat();
  RelativeComonad C;
  C.i = identity_functor(Z);
  C.name = "Z2COID";
  C.obj = {0};
  C.counit = {Z->unit(0)};
  C.coext = {fs_big()->identity(2)};
  return C;
}

}  // namespace

TEST_CASE("trivial comonads validate") {
  CHECK(validate_relative_comonad(trivial_comonad(j01())).ok());
  CHECK(validate_relative_comonad(trivial_comonad(identity_functor(ch3()))).ok());
  RelativeComonad C = trivial_comonad(j01());
  CHECK(C.obj == j01().obj);
}

TEST_CASE("interior operator is a comonad relative to the identity") {
  RelativeComonad C = interior_comonad();
  CHECK(validate_relative_comonad(C).ok());
  EnrichedFunctor d = derive_underlying_cofunctor(C);
  CHECK(d.obj == std::vector<int>{0, 1, 1});
  CHECK(validate_functor(d).ok());
}

TEST_CASE("a non-idempotent deflation fails with a named coextension violation") {
  // d = (0, 0, 1) is not idempotent: d(d2) = 0 != 1 = d2. The coextension at
  // (2, 1) would need CH3(1, 1) -> CH3(1, 0), which does not exist.
  CHECK(!make_bool_comonad(identity_functor(ch3()), {0, 0, 1}).has_value());
  RelativeComonad C;
  C.i = identity_functor(ch3());
  C.name = "BAD";
  C.obj = {0, 0, 1};
  for (int x = 0; x < 3; ++x)
    C.counit.push_back(Mor{1, ch3()->hom(C.d(x), x), {}});
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      C.coext.push_back(Mor{ch3()->hom(C.d(x), y), ch3()->hom(C.d(x), C.d(y)), {}});
  auto rep = validate_relative_comonad(C);
  REQUIRE(!rep.ok());
  CHECK(rep.violations.front().law == "comonad-coextension-well-typed");
  CHECK(rep.violations.front().where == "2,1");
}

TEST_CASE("co-kleisli order is x below y iff dx below y") {
  CoKleisliResult ck = co_kleisli(interior_comonad());
  CHECK(validate_category(*ck.cat).ok());
  CHECK(ck.cat->homv == std::vector<int>{1, 1, 1, 0, 1, 1, 0, 1, 1});
  CHECK(validate_functor(ck.incl).ok());
  CHECK(ck.incl.obj == std::vector<int>{0, 1, 2});
}

TEST_CASE("coalgebras of the interior comonad are the open objects") {
  RelativeComonad C = interior_comonad();
  std::vector<int> carriers;
  for (const auto& c : enumerate_em_coalgebras(C)) carriers.push_back(c.carrier);
  CHECK(carriers == std::vector<int>{0, 1});
  // Independent scan: e is a coalgebra carrier iff e <= x implies e <= dx.
  for (int e = 0; e < 3; ++e) {
    bool want = true;
    for (int x = 0; x < 3; ++x)
      if (ch3()->hom(e, x) == 1 && ch3()->hom(e, C.d(x)) == 0) want = false;
    bool got = std::find(carriers.begin(), carriers.end(), e) != carriers.end();
    CHECK(want == got);
  }
  CoEMCategoryResult em = co_em(C);
  CHECK(validate_category(*em.cat).ok());
  CHECK(em.cat->homv == std::vector<int>{1, 1, 0, 1});
  CHECK(validate_functor(em.proj).ok());
}

TEST_CASE("dualization of comonads is involutive") {
  for (const RelativeComonad& C :
       {interior_comonad(), trivial_comonad(j01()), z2_identity_comonad()}) {
    RelativeComonad back = monad_to_op_comonad(comonad_to_op_monad(C));
    CHECK(back.obj == C.obj);
    CHECK(back.counit == C.counit);
    CHECK(back.coext == C.coext);
    CHECK(same_functor(back.i, C.i));
  }
}

TEST_CASE("z2 identity comonad over finset") {
  RelativeComonad C = z2_identity_comonad();
  CHECK(validate_relative_comonad(C).ok());
  CoKleisliResult ck = co_kleisli(C);
  CHECK(ck.cat->homv == z2cat()->homv);
  CHECK(ck.cat->comp == z2cat()->comp);
  CoEMCategoryResult em = co_em(C);
  REQUIRE(em.objects.size() == 1);
  CHECK(em.cat->homv == z2cat()->homv);
}

TEST_CASE("coadjunction presenting the interior comonad") {
  // Coreflection of CH3 onto its open objects {0, 1}.
  CatPtr O = make_bool_category("OPEN", {{1, 1}, {0, 1}}, {"0", "1"});
  EnrichedFunctor r = make_bool_functor("incl", O, ch3(), {0, 1});
  EnrichedFunctor l = make_bool_functor("int", ch3(), O, {0, 1, 1});
  RelativeCoadjunction co;
  co.i = identity_functor(ch3());
  co.l = l;
  co.r = r;
  co.name = "open-coreflection";
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) {
      REQUIRE(O->hom(y, l(x)) == ch3()->hom(r(y), x));
      co.sharp.push_back(q2()->identity(O->hom(y, l(x))));
      co.flat.push_back(q2()->identity(O->hom(y, l(x))));
    }
  CHECK(validate_coadjunction(co).ok());
  RelativeComonad ind = induced_comonad(co);
  CHECK(validate_relative_comonad(ind).ok());
  CHECK(ind.obj == std::vector<int>{0, 1, 1});
  CHECK(is_coresolution(co, interior_comonad()));
}
