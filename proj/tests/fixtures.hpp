#pragma once
// In-code builders for the desk-scale corpus used by the unit tests.

#include <memory>
#include <string>
#include <vector>

#include "relkit/base.hpp"
#include "relkit/enriched.hpp"

namespace relkit::fixtures {

inline BasePtr q2() {
  static BasePtr b = make_bool_quantale();
  return b;
}

// A Bool-enriched category is exactly a preorder; leq is the relation matrix.
inline CatPtr make_bool_category(const std::string& name,
                                 const std::vector<std::vector<int>>& leq,
                                 std::vector<std::string> obj_names = {}) {
  auto C = std::make_shared<EnrichedCategory>();
  C->base = q2();
  C->name = name;
  C->n = static_cast<int>(leq.size());
  C->obj_names = std::move(obj_names);
  for (const auto& row : leq)
    for (int v : row) C->homv.push_back(v);
  for (int x = 0; x < C->n; ++x) C->ident.push_back(Mor{1, C->hom(x, x), {}});
  for (int x = 0; x < C->n; ++x)
    for (int y = 0; y < C->n; ++y)
      for (int z = 0; z < C->n; ++z)
        C->comp.push_back(Mor{std::min(C->hom(x, y), C->hom(y, z)), C->hom(x, z), {}});
  return C;
}

inline EnrichedFunctor make_bool_functor(const std::string& name, const CatPtr& dom,
                                         const CatPtr& cod, std::vector<int> obj) {
  EnrichedFunctor f;
  f.dom = dom;
  f.cod = cod;
  f.name = name;
  f.obj = std::move(obj);
  for (int x = 0; x < dom->n; ++x)
    for (int y = 0; y < dom->n; ++y)
      f.hom_map.push_back(Mor{dom->hom(x, y), cod->hom(f.obj[x], f.obj[y]), {}});
  return f;
}

inline Distributor make_bool_distributor(const std::string& name, const CatPtr& left,
                                         const CatPtr& right,
                                         const std::vector<std::vector<int>>& rel) {
  Distributor p;
  p.left = left;
  p.right = right;
  p.name = name;
  for (const auto& row : rel)
    for (int v : row) p.objv.push_back(v);
  for (int xp = 0; xp < left->n; ++xp)
    for (int x = 0; x < left->n; ++x)
      for (int y = 0; y < right->n; ++y)
        p.lact.push_back(
            Mor{std::min(left->hom(xp, x), p.obj(x, y)), p.obj(xp, y), {}});
  for (int x = 0; x < left->n; ++x)
    for (int y = 0; y < right->n; ++y)
      for (int yp = 0; yp < right->n; ++yp)
        p.ract.push_back(
            Mor{std::min(p.obj(x, y), right->hom(y, yp)), p.obj(x, yp), {}});
  return p;
}

// The chain 0 <= 1 <= 2.
inline CatPtr ch3() {
  static CatPtr C =
      make_bool_category("CH3", {{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}, {"0", "1", "2"});
  return C;
}

// The chain a <= b (domain of the J01 embedding).
inline CatPtr a2() {
  static CatPtr C = make_bool_category("A2", {{1, 1}, {0, 1}}, {"a", "b"});
  return C;
}

// Two-object discrete preorder.
inline CatPtr disc2() {
  static CatPtr C = make_bool_category("DISC2", {{1, 0}, {0, 1}}, {"u", "v"});
  return C;
}

// The order-embedding a |-> 0, b |-> 1 of the 2-chain into CH3.
inline EnrichedFunctor j01() { return make_bool_functor("J01", a2(), ch3(), {0, 1}); }

// A one-object FinSet-enriched category: a monoid with carrier m, unit element
// u and multiplication table mult (mult[i*m + j] = i * j, diagrammatic order).
inline CatPtr make_monoid_category(const std::string& name, const BasePtr& base, int m, int u,
                                   std::vector<int> mult) {
  auto C = std::make_shared<EnrichedCategory>();
  C->base = base;
  C->name = name;
  C->n = 1;
  C->obj_names = {"*"};
  C->homv = {m};
  C->ident = {Mor{1, m, {u}}};
  C->comp = {Mor{base->tensor_obj_checked(m, m), m, std::move(mult)}};
  return C;
}

inline BasePtr fs_small() {
  static BasePtr b = make_finset_skeleton(16);
  return b;
}

// A larger skeleton for tests that tensor five binary hom-objects (2^5 = 32);
// kept separate so the exhaustive base validations stay on the small carrier.
inline BasePtr fs_big() {
  static BasePtr b = make_finset_skeleton(32);
  return b;
}

// Z2 as a one-object FinSet-category (hom-object 2).
inline CatPtr z2cat() {
  static CatPtr C = make_monoid_category("Z2", fs_big(), 2, 0, {0, 1, 1, 0});
  return C;
}

}  // namespace relkit::fixtures
