#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "fixtures.hpp"
#include "relkit/algebra.hpp"

using namespace relkit;
using namespace relkit::fixtures;

namespace {

CatPtr pt1() {
  static CatPtr C = make_bool_category("PT1", {{1}}, {"*"});
  return C;
}

std::optional<RelativeMonad> make_bool_relmonad(const EnrichedFunctor& j,
                                                std::vector<int> obj) {
  const EnrichedCategory& E = *j.cod;
  const MonoidalBase& V = *E.base;
  RelativeMonad T;
  T.j = j;
  T.obj = std::move(obj);
  int n = j.dom->n;
  for (int x = 0; x < n; ++x) {
    if (V.hom_count(V.unit_object(), E.hom(j(x), T.t(x))) != 1) return std::nullopt;
    T.unit.push_back(V.the(V.unit_object(), E.hom(j(x), T.t(x))));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (V.hom_count(E.hom(j(x), T.t(y)), E.hom(T.t(x), T.t(y))) != 1) return std::nullopt;
      T.ext.push_back(V.the(E.hom(j(x), T.t(y)), E.hom(T.t(x), T.t(y))));
    }
  return T;
}

RelativeMonad tmax() {
  auto T = make_bool_relmonad(j01(), {2, 2});
  REQUIRE(T.has_value());
  T->name = "TMAX";
  return *T;
}

RelativeMonad tcl() {
  auto T = make_bool_relmonad(identity_functor(ch3()), {1, 1, 2});
  REQUIRE(T.has_value());
  T->name = "TCL";
  return *T;
}

RelativeMonad z2_identity_monad() {
  CatPtr Z = z2cat();
  RelativeMonad T;
  T.j = identity_functor(Z);
  T.name = "Z2ID";
  T.obj = {0};
  T.unit = {Z->unit(0)};
  T.ext = {fs_big()->identity(2)};
  return T;
}

// Independent thin-base oracle: a carrier e supports an EM algebra exactly
// when every jx <= e implies tx <= e.
bool bool_em_oracle(const RelativeMonad& T, int e) {
  const EnrichedCategory& E = *T.j.cod;
  for (int x = 0; x < T.n(); ++x)
    if (E.hom(T.j(x), e) == 1 && E.hom(T.t(x), e) == 0) return false;
  return true;
}

std::vector<int> em_carriers(const RelativeMonad& T) {
  std::vector<int> out;
  for (const auto& a : enumerate_em_algebras(T)) out.push_back(a.carrier);
  return out;
}

}  // namespace

TEST_CASE("EM algebra enumeration matches the thin-base oracle") {
  for (const RelativeMonad& T : {trivial_monad(j01()), tmax(), tcl()}) {
    std::vector<int> got = em_carriers(T);
    std::vector<int> want;
    for (int e = 0; e < T.j.cod->n; ++e)
      if (bool_em_oracle(T, e)) want.push_back(e);
    CHECK(got == want);
  }
  CHECK(em_carriers(tmax()) == std::vector<int>{2});
  CHECK(em_carriers(tcl()) == std::vector<int>{1, 2});
  CHECK(em_carriers(trivial_monad(j01())) == std::vector<int>{0, 1, 2});
}

TEST_CASE("EM algebra validation names the failing object") {
  RelativeMonad T = tmax();
  EMAlgebra good{2, {Mor{1, 1, {}}, Mor{1, 1, {}}}};
  CHECK(validate_em_algebra(T, good).ok());
  // Carrier 0 cannot absorb the extension at a: E(ja,0)=1 but E(ta,0)=0.
  EMAlgebra bad{0, {Mor{1, 0, {}}, Mor{0, 0, {}}}};
  auto rep = validate_em_algebra(T, bad);
  REQUIRE(!rep.ok());
  CHECK(rep.violations.front().law == "em-algebra-well-typed");
  CHECK(rep.violations.front().where == "a");
}

TEST_CASE("EM algebras of the identity monad on Z2 are plain objects") {
  RelativeMonad T = z2_identity_monad();
  auto algs = enumerate_em_algebras(T);
  REQUIRE(algs.size() == 1);
  CHECK(algs[0].ext == std::vector<Mor>{fs_big()->identity(2)});
  // The swap fails the unit law.
  EMAlgebra bad{0, {Mor{2, 2, {1, 0}}}};
  auto rep = validate_em_algebra(T, bad);
  REQUIRE(!rep.ok());
  CHECK(rep.violations.front().law == "em-algebra-unit");
}

TEST_CASE("graded homomorphisms") {
  RelativeMonad T = tcl();
  auto algs = enumerate_em_algebras(T);  // carriers 1, 2
  REQUIRE(algs.size() == 2);
  GradedHom up{ch3()->hom(1, 2), Mor{1, 1, {}}};
  CHECK(validate_graded_hom(T, algs[0], algs[1], up).ok());
  // No morphism 2 -> 1 in CH3, so the only candidate grade is the empty one.
  GradedHom down{ch3()->hom(2, 1), Mor{0, 0, {}}};
  CHECK(validate_graded_hom(T, algs[1], algs[0], down).ok());
  GradedHom mistyped{ch3()->hom(1, 2), Mor{0, 1, {}}};
  auto rep = validate_graded_hom(T, algs[0], algs[1], mistyped);
  REQUIRE(!rep.ok());
  CHECK(rep.violations.front().law == "graded-hom-well-typed");
}

TEST_CASE("canonical structures validate") {
  for (const RelativeMonad& T : {trivial_monad(j01()), tmax(), tcl()}) {
    CHECK(validate_opalgebra(T, t_opalgebra(T)).ok());
    CHECK(validate_algebra(T, t_algebra(T)).ok());
  }
  RelativeMonad Z = z2_identity_monad();
  CHECK(validate_opalgebra(Z, t_opalgebra(Z)).ok());
  CHECK(validate_algebra(Z, t_algebra(Z)).ok());
}

TEST_CASE("kleisli of a trivial monad is the root domain") {
  KleisliResult kl = kleisli(trivial_monad(j01()));
  CHECK(validate_category(*kl.cat).ok());
  CHECK(kl.cat->homv == a2()->homv);
  CHECK(kl.cat->ident == a2()->ident);
  CHECK(kl.cat->comp == a2()->comp);
  CHECK(kl.incl.obj == std::vector<int>{0, 1});
  CHECK(validate_functor(kl.incl).ok());
  CHECK(validate_opalgebra(trivial_monad(j01()), kl.op).ok());
}

TEST_CASE("kleisli hom tables match hand computation") {
  // Kl(TMAX)(x, y) = CH3(jx, 2) = 1 everywhere: the codiscrete preorder.
  KleisliResult km = kleisli(tmax());
  CHECK(validate_category(*km.cat).ok());
  CHECK(km.cat->homv == std::vector<int>{1, 1, 1, 1});
  // Kl(TCL)(x, y) = CH3(x, ty): 0 and 1 become equivalent below 2.
  KleisliResult kc = kleisli(tcl());
  CHECK(validate_category(*kc.cat).ok());
  CHECK(kc.cat->homv == std::vector<int>{1, 1, 1, 1, 1, 1, 0, 0, 1});
  // The structure form of the Kleisli opalgebra is invertible.
  for (const Mor& m : km.op.opext.comps) CHECK(is_invertible(*q2(), m));
  for (const Mor& m : kc.op.opext.comps) CHECK(is_invertible(*q2(), m));
}

TEST_CASE("kleisli of the Z2 identity monad is Z2 itself") {
  KleisliResult kl = kleisli(z2_identity_monad());
  CHECK(validate_category(*kl.cat).ok());
  CHECK(kl.cat->homv == z2cat()->homv);
  CHECK(kl.cat->ident == z2cat()->ident);
  CHECK(kl.cat->comp == z2cat()->comp);
  CHECK(validate_opalgebra(z2_identity_monad(), kl.op).ok());
}

TEST_CASE("eilenberg-moore category of TCL is the upper set of closed objects") {
  RelativeMonad T = tcl();
  EMCategoryResult em = em_category(T);
  CHECK(validate_category(*em.cat).ok());
  REQUIRE(em.objects.size() == 2);
  CHECK(em.objects[0].carrier == 1);
  CHECK(em.objects[1].carrier == 2);
  // Full subpreorder of CH3 on {1, 2}.
  CHECK(em.cat->homv == std::vector<int>{1, 1, 0, 1});
  CHECK(validate_functor(em.proj).ok());
  CHECK(validate_algebra(T, em.alg).ok());
}

TEST_CASE("eilenberg-moore category of the Z2 identity monad is Z2") {
  RelativeMonad T = z2_identity_monad();
  EMCategoryResult em = em_category(T);
  CHECK(validate_category(*em.cat).ok());
  REQUIRE(em.objects.size() == 1);
  CHECK(em.cat->homv == z2cat()->homv);
  CHECK(em.cat->comp == z2cat()->comp);
  CHECK(validate_algebra(T, em.alg).ok());
}

TEST_CASE("factorization through kleisli and eilenberg-moore") {
  RelativeMonad T = tmax();
  KleisliResult kl = kleisli(T);
  // The canonical opalgebra factors as v_T with the underlying objects.
  EnrichedFunctor v = factor_through_kleisli(T, kl, t_opalgebra(T));
  CHECK(v.obj == std::vector<int>{2, 2});
  CHECK(validate_functor(v).ok());
  // The identity factorization recovers the identity functor.
  EnrichedFunctor idf = factor_through_kleisli(T, kl, kl.op);
  CHECK(same_functor(idf, identity_functor(kl.cat)));

  EMCategoryResult em = em_category(T);
  EnrichedFunctor f = factor_through_em(T, em, t_algebra(T));
  CHECK(validate_functor(f).ok());
  CHECK(f.obj == std::vector<int>{0, 0});
  CHECK(same_functor(compose_functors(f, em.proj), derive_underlying_functor(T)));
}

TEST_CASE("resolutions from kleisli and eilenberg-moore") {
  for (const RelativeMonad& T : {trivial_monad(j01()), tmax(), tcl()}) {
    RelativeAdjunction kr = resolution_from_kleisli(T);
    CHECK(validate_adjunction(kr).ok());
    CHECK(is_resolution(kr, T));
    RelativeAdjunction er = resolution_from_em(T);
    CHECK(validate_adjunction(er).ok());
    CHECK(is_resolution(er, T));
  }
  RelativeMonad Z = z2_identity_monad();
  RelativeAdjunction kr = resolution_from_kleisli(Z);
  CHECK(validate_adjunction(kr).ok());
  CHECK(is_resolution(kr, Z));
  RelativeAdjunction er = resolution_from_em(Z);
  CHECK(validate_adjunction(er).ok());
  CHECK(is_resolution(er, Z));
}

TEST_CASE("comparison functor makes both triangles commute") {
  for (const RelativeMonad& T : {trivial_monad(j01()), tmax(), tcl()}) {
    KleisliResult kl = kleisli(T);
    EMCategoryResult em = em_category(T);
    EnrichedFunctor i = comparison(T, kl, em);
    CHECK(validate_functor(i).ok());
    EnrichedFunctor f = factor_through_em(T, em, t_algebra(T));
    EnrichedFunctor v = factor_through_kleisli(T, kl, t_opalgebra(T));
    CHECK(same_functor(compose_functors(kl.incl, i), f));
    CHECK(same_functor(compose_functors(i, em.proj), v));
  }
  RelativeMonad Z = z2_identity_monad();
  KleisliResult kl = kleisli(Z);
  EMCategoryResult em = em_category(Z);
  EnrichedFunctor i = comparison(Z, kl, em);
  CHECK(same_functor(compose_functors(kl.incl, i), factor_through_em(Z, em, t_algebra(Z))));
  CHECK(same_functor(compose_functors(i, em.proj),
                     factor_through_kleisli(Z, kl, t_opalgebra(Z))));
}

TEST_CASE("graded opalgebra morphism compatibility") {
  RelativeMonad T = tmax();
  KleisliResult kl = kleisli(T);
  // The identity cell on B(1, k) is a morphism from the Kleisli opalgebra to
  // itself graded by the empty chain.
  Form cell;
  cell.frame.chain = {
      restrict(loose_identity(kl.cat), identity_functor(kl.cat), kl.incl)};
  cell.frame.f = identity_functor(kl.cat);
  cell.frame.g = identity_functor(a2());
  cell.frame.q = cell.frame.chain.front();
  cell.frame.tuples().for_each([&](const std::vector<int>& t) {
    cell.comps.push_back(q2()->identity(cell.frame.chain_obj(t)));
  });
  CHECK(validate_graded_opalgebra_morphism(T, kl.op, kl.op, cell).ok());
  Form skew = cell;
  skew.frame.g = j01();
  CHECK_THROWS_AS(validate_graded_opalgebra_morphism(T, kl.op, kl.op, skew),
                  FrameMismatch);
}

TEST_CASE("graded algebra morphism validation") {
  RelativeMonad T = tcl();
  EMCategoryResult em = em_category(T);
  // The hom form of u_T, graded by the EM category's own homs.
  Form eps;
  eps.frame.chain = {loose_identity(em.cat)};
  eps.frame.f = identity_functor(em.cat);
  eps.frame.g = identity_functor(em.cat);
  eps.frame.q = restrict(loose_identity(ch3()), em.proj, em.proj);
  eps.frame.tuples().for_each([&](const std::vector<int>& t) {
    eps.comps.push_back(em.incl[static_cast<std::size_t>(t[0]) * em.objects.size() + t[1]]);
  });
  CHECK(validate_graded_algebra_morphism(T, em.alg, em.alg, eps).ok());
}

TEST_CASE("kleisli is a certified opalgebra object") {
  RelativeMonad T = tmax();
  KleisliResult kl = kleisli(T);
  std::vector<CatPtr> pool = {pt1(), a2()};
  std::vector<Distributor> chains = {loose_identity(pt1()), loose_identity(a2())};
  CertifiedVerdict v = check_opalgebra_object(T, kl.op, pool, chains, 200000);
  CHECK(v.ok);
  CHECK(v.failure.empty());
  // The canonical opalgebra on the ambient category is not an opalgebra
  // object: factorizations through it are not unique.
  CertifiedVerdict bad = check_opalgebra_object(T, t_opalgebra(T), pool, chains, 200000);
  CHECK(!bad.ok);
  CHECK(!bad.failure.empty());
}

TEST_CASE("eilenberg-moore is a certified algebra object") {
  RelativeMonad T = tcl();
  EMCategoryResult em = em_category(T);
  std::vector<CatPtr> pool = {pt1(), a2()};
  std::vector<Distributor> chains = {loose_identity(pt1()), loose_identity(a2())};
  CertifiedVerdict v = check_algebra_object(T, em.alg, pool, chains, 200000);
  CHECK(v.ok);
  // The canonical algebra on the ambient category fails uniqueness.
  CertifiedVerdict bad = check_algebra_object(T, t_algebra(T), pool, chains, 200000);
  CHECK(!bad.ok);
  CHECK(!bad.failure.empty());
}

TEST_CASE("coincidence of kleisli presentations") {
  RelativeMonad T = tmax();
  KleisliResult kl = kleisli(T);
  CHECK(coincidence_check(T, kl.incl));
  EMCategoryResult em = em_category(T);
  EnrichedFunctor f = factor_through_em(T, em, t_algebra(T));
  CHECK(coincidence_check(T, f));
  CHECK(coincidence_check(trivial_monad(j01()), j01()));
  // The identity on CH3 does not present TCL's hom objects on the nose.
  CHECK_THROWS_AS(coincidence_check(tcl(), identity_functor(ch3())), PreconditionFailed);
}

TEST_CASE("pushforward of an opalgebra is an opalgebra for the pushforward monad") {
  // Coreflection of CH3 onto {0, 1}: j01 -| min(-, 1), apex CH3.
  EnrichedFunctor r = make_bool_functor("rmin", ch3(), ch3(), {0, 1, 1});
  RelativeAdjunction outer;
  outer.j = j01();
  outer.l = j01();
  outer.r = r;
  outer.name = "coreflection";
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 3; ++y) {
      REQUIRE(ch3()->hom(j01()(x), y) == ch3()->hom(j01()(x), r(y)));
      outer.sharp.push_back(q2()->identity(ch3()->hom(j01()(x), y)));
      outer.flat.push_back(q2()->identity(ch3()->hom(j01()(x), y)));
    }
  REQUIRE(validate_adjunction(outer).ok());

  RelativeMonad T = tmax();
  EnrichedFunctor lp = identity_functor(a2());
  RelativeMonad P = pushforward_monad(outer, lp, T);
  Opalgebra push = pushforward_opalgebra(outer, lp, T, kleisli(T).op);
  CHECK(validate_opalgebra(P, push).ok());
  CHECK(push.a.obj == kleisli(T).incl.obj);
}
