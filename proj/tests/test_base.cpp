#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relkit/base.hpp"

using namespace relkit;

namespace {

// A one-object table base whose morphism monoid is Z3 (commutative, so the
// tensor can reuse the composition table).
TableBase::Tables z3_tables() {
  TableBase::Tables t;
  t.object_names = {"*"};
  t.hom = {{3}};
  std::vector<std::vector<int>> mult(3, std::vector<int>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mult[i][j] = (i + j) % 3;
  t.compose[{0, 0, 0}] = mult;
  t.identities = {0};
  t.unit = 0;
  t.tensor_obj = {{0}};
  t.tensor_mor[{0, 0, 0, 0}] = mult;
  t.caps = {true, true, false, false, true};
  return t;
}

}  // namespace

TEST_CASE("bool quantale laws hold by construction") {
  auto V = make_bool_quantale();
  CHECK(validate_base(*V).ok());
  CHECK(V->tensor_obj(1, 0) == 0);  // top (x) bot = bot
  CHECK(V->hom_count(0, 1) == 1);   // bot <= top
  CHECK(V->hom_count(1, 0) == 0);   // top <= bot fails
  CHECK(V->unit_object() == 1);
  CHECK(V->thin());
}

TEST_CASE("bool equalizer of any parallel pair is the domain") {
  auto V = make_bool_quantale();
  Mor f = V->the(0, 1);
  auto eq = equalizer(*V, f, f);
  CHECK(eq.obj == 0);
  CHECK(eq.incl == V->identity(0));
  CHECK(certify_equalizer(*V, f, f, eq));
}

TEST_CASE("finset skeleton validates and counts homs") {
  auto V = make_finset_skeleton(3);
  CHECK(validate_base(*V).ok());
  CHECK(V->hom_count(2, 3) == 9);
  CHECK(V->tensor_obj(1, 3) == 3);
  CHECK(V->tensor_obj(2, 3) == -1);  // outside the carrier
  CHECK(V->n_objects() == 4);
}

TEST_CASE("finset pairing is strictly associative (integer oracle)") {
  // (i*n + j)*p + k == i*(n*p) + (j*p + k) for the pairing <i, j> = i*n + j.
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int p = 1; p <= 3; ++p)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < p; ++k)
              CHECK((i * n + j) * p + k == i * (n * p) + (j * p + k));
}

TEST_CASE("finset morphism-level strict unit") {
  auto V = make_finset_skeleton(3);
  for (int a = 0; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for_each_hom(*V, a, b, 1000, [&](const Mor& f) {
        CHECK(V->tensor_mor(V->identity(1), f) == f);
        CHECK(V->tensor_mor(f, V->identity(1)) == f);
      });
}

TEST_CASE("finset equalizer picks the subset where the maps agree") {
  auto V = make_finset_skeleton(3);
  Mor f{3, 2, {0, 0, 1}};
  Mor g{3, 2, {0, 1, 1}};
  auto eq = equalizer(*V, f, g);
  CHECK(eq.obj == 2);
  CHECK(eq.incl.data == std::vector<int>{0, 2});
  CHECK(certify_equalizer(*V, f, g, eq));

  // Equal pair: equalizer is the domain with identity inclusion.
  auto eq2 = equalizer(*V, f, f);
  CHECK(eq2.obj == 3);
  CHECK(eq2.incl == V->identity(3));
}

TEST_CASE("finset coequalizer quotients the codomain") {
  auto V = make_finset_skeleton(3);
  Mor f{1, 2, {0}};
  Mor g{1, 2, {1}};
  auto cq = coequalizer(*V, f, g);
  CHECK(cq.obj == 1);
  CHECK(certify_coequalizer(*V, f, g, cq));

  auto cq2 = coequalizer(*V, f, f);
  CHECK(cq2.obj == 2);
  CHECK(cq2.proj == V->identity(2));
}

TEST_CASE("equalizer then coequalizer of the diagonal pair recovers the object") {
  auto V = make_finset_skeleton(3);
  Mor f{3, 2, {0, 0, 1}};
  Mor g{3, 2, {0, 1, 1}};
  auto eq = equalizer(*V, f, g);
  auto cq = coequalizer(*V, eq.incl, eq.incl);
  CHECK(cq.obj == eq.incl.cod);
}

TEST_CASE("table base (Z3 monoid) validates; redirected compose entry is caught") {
  TableBase good(z3_tables());
  CHECK(validate_base(good).ok());

  auto bad_tables = z3_tables();
  bad_tables.compose[{0, 0, 0}][1][1] = 0;  // redirect a*a to the identity
  TableBase bad(bad_tables);
  auto rep = validate_base(bad);
  CHECK(!rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.law == "compose-associativity") found = true;
  CHECK(found);
}

TEST_CASE("capability and precondition errors") {
  auto fs = make_finset_skeleton(2);
  Mor f{2, 2, {0, 1}};
  Mor g{2, 1, {0, 0}};
  CHECK_THROWS_AS(equalizer(*fs, f, g), NotParallel);

  TableBase::Tables t = z3_tables();
  t.caps.equalizers = false;
  TableBase nocap(t);
  Mor a{0, 0, {0}};
  CHECK_THROWS_AS(equalizer(nocap, a, a), CapabilityMissing);
}

TEST_CASE("inverse search") {
  auto V = make_finset_skeleton(3);
  Mor swap{2, 2, {1, 0}};
  auto inv = find_inverse(*V, swap);
  REQUIRE(inv.has_value());
  CHECK(*inv == swap);
  Mor collapse{2, 2, {0, 0}};
  CHECK(!is_invertible(*V, collapse));
}
