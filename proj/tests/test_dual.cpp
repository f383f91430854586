#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "relkit/dualize.hpp"

using namespace relkit;
using namespace relkit::fixtures;

TEST_CASE("bool base is self-dual; finset base dualizes by wrapping") {
  CHECK(op_base(q2()).get() == q2().get());
  BasePtr fsop = op_base(fs_small());
  CHECK(fsop.get() != fs_small().get());
  CHECK(base_backend(*fsop) == "finset");
  // Double dual unwraps to the original pointer.
  CHECK(op_base(fsop).get() == fs_small().get());
  // Reversed tensor and pairing.
  CHECK(fsop->tensor_obj(2, 3) == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(fsop->pair_index(2, 3, i, j) == fs_small()->pair_index(3, 2, j, i));
  CHECK(validate_base(*fsop, 4000).ok());
}

TEST_CASE("op of a preorder reverses the order and validates") {
  CatPtr rev = op_category(ch3());
  CHECK(validate_category(*rev).ok());
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) CHECK(rev->hom(x, y) == ch3()->hom(y, x));
  CHECK(same_category(op_category(rev), ch3()));
}

TEST_CASE("op is involutive on categories, functors and distributors") {
  CHECK(same_category(op_category(op_category(z2cat())), z2cat()));
  EnrichedFunctor j = j01();
  EnrichedFunctor jjj = op_functor(op_functor(j));
  CHECK(jjj.obj == j.obj);
  CHECK(jjj.hom_map == j.hom_map);
  CHECK(same_category(jjj.dom, j.dom));
  Distributor p = conjoint(j);
  Distributor pp = op_distributor(op_distributor(p));
  CHECK(pp.objv == p.objv);
  CHECK(pp.lact == p.lact);
  CHECK(pp.ract == p.ract);
}

TEST_CASE("op of a valid structure is valid") {
  CHECK(validate_category(*op_category(z2cat())).ok());
  CHECK(validate_functor(op_functor(j01())).ok());
  CHECK(validate_distributor(op_distributor(conjoint(j01()))).ok());
  CHECK(validate_distributor(op_distributor(loose_identity(z2cat()))).ok());
}

TEST_CASE("op exchanges companion and conjoint") {
  EnrichedFunctor j = j01();
  Distributor oc = op_distributor(companion(j));
  Distributor cj = conjoint(op_functor(j));
  CHECK(same_distributor(oc, cj));
}

TEST_CASE("op of a form validates and is involutive") {
  Form mu = composition_form(z2cat());
  Form omu = op_form(mu);
  CHECK(validate_form(omu).ok());
  Form back = op_form(omu);
  CHECK(form_equal(back, mu));

  Form counit = companion_conjoint_counit(j01());
  Form ocounit = op_form(counit);
  CHECK(validate_form(ocounit).ok());
  CHECK(form_equal(op_form(ocounit), counit));
}

TEST_CASE("op commutes with pasting") {
  Form mu = composition_form(z2cat());
  Distributor p = loose_identity(z2cat());
  Form l = paste({mu, identity_form(p)}, mu);
  // Reversal flips the order of the upper row.
  Form r = paste({op_form(identity_form(p)), op_form(mu)}, op_form(mu));
  CHECK(form_equal(op_form(l), r));
}
