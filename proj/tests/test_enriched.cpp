#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "relkit/enriched.hpp"

using namespace relkit;
using namespace relkit::fixtures;

TEST_CASE("bool preorders validate as enriched categories") {
  CHECK(validate_category(*ch3()).ok());
  CHECK(validate_category(*a2()).ok());
  CHECK(validate_category(*disc2()).ok());
  CHECK(validate_functor(identity_functor(ch3())).ok());
  CHECK(validate_functor(j01()).ok());
}

TEST_CASE("non-associative one-object FinSet category is rejected") {
  // comp(i, j) = not(i): fails associativity (and the unit laws).
  auto C = make_monoid_category("bad", fs_small(), 2, 0, {1, 1, 0, 0});
  auto rep = validate_category(*C);
  CHECK(!rep.ok());
  bool assoc = false;
  for (const auto& v : rep.violations)
    if (v.law == "category-associativity") assoc = true;
  CHECK(assoc);
}

TEST_CASE("Z2 monoid category and its loose identity validate") {
  CHECK(validate_category(*z2cat()).ok());
  CHECK(validate_distributor(loose_identity(z2cat())).ok());
}

TEST_CASE("loose identities of the bool corpus validate") {
  for (const CatPtr& C : {ch3(), a2(), disc2()})
    CHECK(validate_distributor(loose_identity(C)).ok());
}

TEST_CASE("restrict along identities is the identity") {
  Distributor p = loose_identity(ch3());
  Distributor r = restrict(p, identity_functor(ch3()), identity_functor(ch3()));
  CHECK(same_distributor(p, r));
}

TEST_CASE("E(j,1) over Bool relates a to e iff ja <= e") {
  EnrichedFunctor j = j01();
  Distributor ej1 = restrict(loose_identity(ch3()), j, identity_functor(ch3()));
  CHECK(validate_distributor(ej1).ok());
  // Components E(ja, e) indexed by (a in A2, e in CH3).
  for (int a = 0; a < 2; ++a)
    for (int e = 0; e < 3; ++e) CHECK(ej1.obj(a, e) == (j(a) <= e ? 1 : 0));
}

TEST_CASE("companion and conjoint orientations") {
  EnrichedFunctor j = j01();
  Distributor com = companion(j);   // components CH3(e, ja)
  Distributor con = conjoint(j);    // components CH3(ja, e)
  for (int e = 0; e < 3; ++e)
    for (int a = 0; a < 2; ++a) {
      CHECK(com.obj(e, a) == (e <= j(a) ? 1 : 0));
      CHECK(con.obj(a, e) == (j(a) <= e ? 1 : 0));
    }
  CHECK(validate_distributor(com).ok());
  CHECK(validate_distributor(con).ok());
  // companion(identity) is the loose identity.
  CHECK(same_distributor(companion(identity_functor(ch3())), loose_identity(ch3())));
}

TEST_CASE("companion/conjoint zig-zag laws hold as pasting equalities") {
  for (const EnrichedFunctor& f :
       {j01(), identity_functor(ch3()), make_bool_functor("c2", disc2(), ch3(), {1, 1})}) {
    Form unit = companion_unit(f);
    Form counit_unit = conjoint_unit(f);
    Form counit = companion_conjoint_counit(f);
    CHECK(validate_form(unit).ok());
    CHECK(validate_form(counit_unit).ok());
    CHECK(validate_form(counit).ok());

    // (unit, 1_conjoint) pasted into the counit = the cartesian cell of the conjoint.
    Form z1 = paste({unit, identity_form(conjoint(f))}, counit);
    Form e1 = cartesian_form(loose_identity(f.cod), f, identity_functor(f.cod));
    CHECK(form_equal(z1, e1));

    // (1_companion, counit-unit) pasted into the counit = cartesian cell of the companion.
    Form z2 = paste({identity_form(companion(f)), counit_unit}, counit);
    Form e2 = cartesian_form(loose_identity(f.cod), identity_functor(f.cod), f);
    CHECK(form_equal(z2, e2));
  }
}

TEST_CASE("pasting with identity forms leaves a form unchanged") {
  Form mu = composition_form(z2cat());
  CHECK(validate_form(mu).ok());
  Distributor p = loose_identity(z2cat());
  Form pasted = paste({identity_form(p), identity_form(p)}, mu);
  CHECK(form_equal(pasted, mu));
}

TEST_CASE("pasting is associative on a FinSet grid (monoid multiplication)") {
  Form mu = composition_form(z2cat());
  Distributor p = loose_identity(z2cat());
  // Both bracketings of the triple multiplication agree.
  Form l = paste({mu, identity_form(p)}, mu);
  Form r = paste({identity_form(p), mu}, mu);
  CHECK(form_equal(l, r));
  CHECK(validate_form(l).ok());
}

TEST_CASE("restrict is pseudofunctorial on the nose") {
  EnrichedFunctor j = j01();
  Distributor q = loose_identity(ch3());
  EnrichedFunctor idc = identity_functor(ch3());
  Distributor once = restrict(q, j, idc);
  EnrichedFunctor ida = identity_functor(a2());
  Distributor twice = restrict(once, ida, idc);
  CHECK(same_distributor(twice, restrict(q, compose_functors(ida, j), idc)));
}

TEST_CASE("form_equal distinguishes distinct FinSet forms") {
  // Nullary frame over the one-object category with hom-object 1, into a
  // distributor with component 2: two distinct forms.
  auto PT = make_monoid_category("PT", fs_small(), 1, 0, {0});
  Distributor q;
  q.left = q.right = PT;
  q.name = "two";
  q.objv = {2};
  q.lact = {Mor{2, 2, {0, 1}}};
  q.ract = {Mor{2, 2, {0, 1}}};
  CHECK(validate_distributor(q).ok());
  Frame fr;
  fr.chain = {};
  fr.f = fr.g = identity_functor(PT);
  fr.q = q;
  auto forms = enumerate_forms(fr, 100);
  CHECK(forms.size() == 2);
  CHECK(!form_equal(forms[0], forms[1]));
  CHECK(form_equal(forms[0], forms[0]));
  CHECK_THROWS_AS(enumerate_forms(fr, 0), EnumerationBudgetExceeded);
}

TEST_CASE("bool frames carry at most one form") {
  EnrichedFunctor j = j01();
  Frame fr;
  fr.chain = {conjoint(j)};
  fr.f = identity_functor(a2());
  fr.g = identity_functor(ch3());
  fr.q = restrict(loose_identity(ch3()), j, identity_functor(ch3()));
  auto forms = enumerate_forms(fr, 100);
  CHECK(forms.size() == 1);
}
