#pragma once
// Dualization: the reversed base V^rev and the op-transport of categories,
// functors, distributors and forms. Everything is involutive on the nose.

#include "relkit/enriched.hpp"

namespace relkit {

// V^rev: same category, tensor reversed. Hom-level structure (composition,
// enumeration, equalizers) is untouched, so the wrapper delegates everything
// except the tensor.
class OpBase final : public MonoidalBase {
 public:
  explicit OpBase(BasePtr inner) : inner_(std::move(inner)) { caps = inner_->caps; }

  std::string kind() const override { return "op:" + inner_->kind(); }
  int n_objects() const override { return inner_->n_objects(); }
  std::string object_name(int x) const override { return inner_->object_name(x); }
  std::uint64_t hom_count(int a, int b) const override { return inner_->hom_count(a, b); }
  Mor hom_elem(int a, int b, std::uint64_t k) const override {
    return inner_->hom_elem(a, b, k);
  }
  std::uint64_t hom_index(const Mor& f) const override { return inner_->hom_index(f); }
  bool is_valid(const Mor& f) const override { return inner_->is_valid(f); }
  Mor identity(int x) const override { return inner_->identity(x); }
  Mor compose(const Mor& f, const Mor& g) const override { return inner_->compose(f, g); }
  int unit_object() const override { return inner_->unit_object(); }
  int tensor_obj(int a, int b) const override { return inner_->tensor_obj(b, a); }
  Mor tensor_mor(const Mor& f, const Mor& g) const override {
    return inner_->tensor_mor(g, f);
  }
  bool set_like() const override { return inner_->set_like(); }
  int card(int x) const override { return inner_->card(x); }
  int pair_index(int a, int b, int i, int j) const override {
    return inner_->pair_index(b, a, j, i);
  }
  BasePtr op_inner() const override { return inner_; }

 private:
  BasePtr inner_;
};

// The innermost backend kind, ignoring op-wrappers.
inline std::string base_backend(const MonoidalBase& V) {
  std::string k = V.kind();
  while (k.rfind("op:", 0) == 0) k = k.substr(3);
  return k;
}

inline BasePtr op_base(const BasePtr& V) {
  if (V->kind() == "bool") return V;  // the Boolean quantale is self-dual on the nose
  if (BasePtr inner = V->op_inner()) return inner;
  return std::make_shared<OpBase>(V);
}

inline CatPtr op_category(const CatPtr& C) {
  auto D = std::make_shared<EnrichedCategory>();
  D->base = op_base(C->base);
  D->name = C->name + "^op";
  D->n = C->n;
  D->obj_names = C->obj_names;
  D->homv.resize(C->homv.size());
  for (int x = 0; x < C->n; ++x)
    for (int y = 0; y < C->n; ++y)
      D->homv[static_cast<std::size_t>(x) * C->n + y] = C->hom(y, x);
  D->ident = C->ident;
  D->comp.resize(C->comp.size());
  for (int x = 0; x < C->n; ++x)
    for (int y = 0; y < C->n; ++y)
      for (int z = 0; z < C->n; ++z)
        D->comp[(static_cast<std::size_t>(x) * C->n + y) * C->n + z] = C->cmp(z, y, x);
  return D;
}

inline EnrichedFunctor op_functor(const EnrichedFunctor& f) {
  EnrichedFunctor g;
  g.dom = op_category(f.dom);
  g.cod = op_category(f.cod);
  g.name = f.name + "^op";
  g.obj = f.obj;
  g.hom_map.resize(f.hom_map.size());
  for (int x = 0; x < f.dom->n; ++x)
    for (int y = 0; y < f.dom->n; ++y)
      g.hom_map[static_cast<std::size_t>(x) * f.dom->n + y] = f.hom(y, x);
  return g;
}

inline Distributor op_distributor(const Distributor& p) {
  Distributor q;
  q.left = op_category(p.right);
  q.right = op_category(p.left);
  q.name = p.name + "^op";
  int ln = q.left->n, rn = q.right->n;  // ln = |right(p)|, rn = |left(p)|
  q.objv.resize(static_cast<std::size_t>(ln) * rn);
  for (int y = 0; y < ln; ++y)
    for (int x = 0; x < rn; ++x) q.objv[static_cast<std::size_t>(y) * rn + x] = p.obj(x, y);
  q.lact.resize(static_cast<std::size_t>(ln) * ln * rn);
  for (int yp = 0; yp < ln; ++yp)
    for (int y = 0; y < ln; ++y)
      for (int x = 0; x < rn; ++x)
        q.lact[(static_cast<std::size_t>(yp) * ln + y) * rn + x] = p.right_act(x, y, yp);
  q.ract.resize(static_cast<std::size_t>(ln) * rn * rn);
  for (int y = 0; y < ln; ++y)
    for (int x = 0; x < rn; ++x)
      for (int xp = 0; xp < rn; ++xp)
        q.ract[(static_cast<std::size_t>(y) * rn + x) * rn + xp] = p.left_act(xp, x, y);
  return q;
}

inline Form op_form(const Form& phi) {
  Form psi;
  const Frame& fr = phi.frame;
  for (int i = fr.n(); i-- > 0;)
    psi.frame.chain.push_back(op_distributor(fr.chain[static_cast<std::size_t>(i)]));
  psi.frame.f = op_functor(fr.g);
  psi.frame.g = op_functor(fr.f);
  psi.frame.q = op_distributor(fr.q);
  psi.name = phi.name + "^op";
  TupleSpace ts = psi.frame.tuples();
  psi.comps.resize(ts.size());
  ts.for_each([&](const std::vector<int>& t) {
    std::vector<int> rt(t.rbegin(), t.rend());
    psi.comps[ts.index(t)] = phi.at(rt);
  });
  return psi;
}

}  // namespace relkit
