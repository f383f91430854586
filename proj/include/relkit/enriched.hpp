#pragma once
// The V-Cat layer: enriched categories, functors, distributors and forms,
// with pasting, loose identities, restriction, companions and conjoints.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "relkit/base.hpp"

namespace relkit {

// ---------------------------------------------------------------------------
// Tuple spaces (dense component tables keyed by object tuples)
// ---------------------------------------------------------------------------

struct TupleSpace {
  std::vector<int> dims;

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (int d : dims) s = sat_mul(s, static_cast<std::uint64_t>(d));
    return s;
  }
  std::uint64_t index(const std::vector<int>& t) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < dims.size(); ++i)
      k = k * static_cast<std::uint64_t>(dims[i]) + static_cast<std::uint64_t>(t[i]);
    return k;
  }
  std::vector<int> decode(std::uint64_t k) const {
    std::vector<int> t(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      t[i] = static_cast<int>(k % static_cast<std::uint64_t>(dims[i]));
      k /= static_cast<std::uint64_t>(dims[i]);
    }
    return t;
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    std::uint64_t s = size();
    for (std::uint64_t k = 0; k < s; ++k) fn(decode(k));
  }
};

// ---------------------------------------------------------------------------
// Enriched categories
// ---------------------------------------------------------------------------

struct EnrichedCategory {
  BasePtr base;
  std::string name;
  int n = 0;                           // number of objects
  std::vector<std::string> obj_names;  // optional labels (empty = numeric)
  std::vector<int> homv;               // [x*n + y] -> base object C(x, y)
  std::vector<Mor> ident;              // [x] : I -> C(x, x)
  std::vector<Mor> comp;               // [(x*n + y)*n + z] : C(x,y) (x) C(y,z) -> C(x,z)

  int hom(int x, int y) const { return homv[static_cast<std::size_t>(x) * n + y]; }
  const Mor& unit(int x) const { return ident[x]; }
  const Mor& cmp(int x, int y, int z) const {
    return comp[(static_cast<std::size_t>(x) * n + y) * n + z];
  }
  std::string obj_name(int x) const {
    return obj_names.empty() ? std::to_string(x) : obj_names[x];
  }
};

using CatPtr = std::shared_ptr<const EnrichedCategory>;

inline bool same_base(const BasePtr& a, const BasePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind() || a->n_objects() != b->n_objects()) return false;
  if (a->unit_object() != b->unit_object()) return false;
  for (int x = 0; x < a->n_objects(); ++x)
    for (int y = 0; y < a->n_objects(); ++y) {
      if (a->tensor_obj(x, y) != b->tensor_obj(x, y)) return false;
      if (a->hom_count(x, y) != b->hom_count(x, y)) return false;
    }
  return true;
}

inline bool same_category(const CatPtr& a, const CatPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_base(a->base, b->base) && a->n == b->n && a->homv == b->homv &&
         a->ident == b->ident && a->comp == b->comp;
}

// ---------------------------------------------------------------------------
// Enriched functors
// ---------------------------------------------------------------------------

struct EnrichedFunctor {
  CatPtr dom, cod;
  std::string name;
  std::vector<int> obj;      // object assignment
  std::vector<Mor> hom_map;  // [x*dom->n + y] : C(x,y) -> D(fx, fy)

  int operator()(int x) const { return obj[x]; }
  const Mor& hom(int x, int y) const { return hom_map[static_cast<std::size_t>(x) * dom->n + y]; }
};

inline bool same_functor(const EnrichedFunctor& a, const EnrichedFunctor& b) {
  return same_category(a.dom, b.dom) && same_category(a.cod, b.cod) && a.obj == b.obj &&
         a.hom_map == b.hom_map;
}

inline EnrichedFunctor identity_functor(const CatPtr& C) {
  EnrichedFunctor f;
  f.dom = f.cod = C;
  f.name = "id";
  f.obj.resize(C->n);
  std::iota(f.obj.begin(), f.obj.end(), 0);
  f.hom_map.reserve(static_cast<std::size_t>(C->n) * C->n);
  for (int x = 0; x < C->n; ++x)
    for (int y = 0; y < C->n; ++y) f.hom_map.push_back(C->base->identity(C->hom(x, y)));
  return f;
}

// Diagrammatic order: first f, then g.
inline EnrichedFunctor compose_functors(const EnrichedFunctor& f, const EnrichedFunctor& g) {
  if (!same_category(f.cod, g.dom))
    throw FrameMismatch("compose_functors: middle categories differ");
  EnrichedFunctor h;
  h.dom = f.dom;
  h.cod = g.cod;
  h.name = f.name + ";" + g.name;
  h.obj.resize(f.dom->n);
  for (int x = 0; x < f.dom->n; ++x) h.obj[x] = g.obj[f.obj[x]];
  h.hom_map.reserve(static_cast<std::size_t>(f.dom->n) * f.dom->n);
  const MonoidalBase& V = *f.dom->base;
  for (int x = 0; x < f.dom->n; ++x)
    for (int y = 0; y < f.dom->n; ++y)
      h.hom_map.push_back(V.compose(f.hom(x, y), g.hom(f(x), f(y))));
  return h;
}

// ---------------------------------------------------------------------------
// Distributors
// ---------------------------------------------------------------------------

// Components p(x, y) with x in `left` and y in `right`; the left category acts
// by left(x', x) (x) p(x, y) -> p(x', y), the right one by
// p(x, y) (x) right(y, y') -> p(x, y').
struct Distributor {
  CatPtr left, right;
  std::string name;
  std::vector<int> objv;   // [x*right->n + y] -> base object p(x, y)
  std::vector<Mor> lact;   // [((x')*left->n + x)*right->n + y]
  std::vector<Mor> ract;   // [(x*right->n + y)*right->n + y']

  int obj(int x, int y) const { return objv[static_cast<std::size_t>(x) * right->n + y]; }
  const Mor& left_act(int xp, int x, int y) const {
    return lact[(static_cast<std::size_t>(xp) * left->n + x) * right->n + y];
  }
  const Mor& right_act(int x, int y, int yp) const {
    return ract[(static_cast<std::size_t>(x) * right->n + y) * right->n + yp];
  }
};

inline bool same_distributor(const Distributor& a, const Distributor& b) {
  return same_category(a.left, b.left) && same_category(a.right, b.right) &&
         a.objv == b.objv && a.lact == b.lact && a.ract == b.ract;
}

inline Distributor loose_identity(const CatPtr& C) {
  Distributor p;
  p.left = p.right = C;
  p.name = C->name + "(1,1)";
  p.objv = C->homv;
  p.lact = C->comp;
  p.ract = C->comp;
  return p;
}

inline Distributor restrict(const Distributor& q, const EnrichedFunctor& f,
                            const EnrichedFunctor& g) {
  if (!same_category(f.cod, q.left) || !same_category(g.cod, q.right))
    throw FrameMismatch("restrict: functors do not land in the distributor's boundary");
  const MonoidalBase& V = *q.left->base;
  Distributor r;
  r.left = f.dom;
  r.right = g.dom;
  r.name = q.name + "(" + f.name + "," + g.name + ")";
  int ln = r.left->n, rn = r.right->n;
  r.objv.resize(static_cast<std::size_t>(ln) * rn);
  for (int x = 0; x < ln; ++x)
    for (int y = 0; y < rn; ++y)
      r.objv[static_cast<std::size_t>(x) * rn + y] = q.obj(f(x), g(y));
  r.lact.reserve(static_cast<std::size_t>(ln) * ln * rn);
  for (int xp = 0; xp < ln; ++xp)
    for (int x = 0; x < ln; ++x)
      for (int y = 0; y < rn; ++y)
        r.lact.push_back(
            V.compose(V.tensor_mor(f.hom(xp, x), V.identity(q.obj(f(x), g(y)))),
                      q.left_act(f(xp), f(x), g(y))));
  r.ract.reserve(static_cast<std::size_t>(ln) * rn * rn);
  for (int x = 0; x < ln; ++x)
    for (int y = 0; y < rn; ++y)
      for (int yp = 0; yp < rn; ++yp)
        r.ract.push_back(
            V.compose(V.tensor_mor(V.identity(q.obj(f(x), g(y))), g.hom(y, yp)),
                      q.right_act(f(x), g(y), g(yp))));
  return r;
}

inline Distributor companion(const EnrichedFunctor& f) {
  return restrict(loose_identity(f.cod), identity_functor(f.cod), f);
}
inline Distributor conjoint(const EnrichedFunctor& f) {
  return restrict(loose_identity(f.cod), f, identity_functor(f.cod));
}

// ---------------------------------------------------------------------------
// Frames and forms
// ---------------------------------------------------------------------------

struct Frame {
  std::vector<Distributor> chain;  // p_1 .. p_n (n >= 0)
  EnrichedFunctor f, g;            // boundaries: f on the x_0 side, g on the x_n side
  Distributor q;

  int n() const { return static_cast<int>(chain.size()); }
  CatPtr spine(int i) const {
    if (chain.empty()) return f.dom;
    return i == 0 ? chain[0].left : chain[static_cast<std::size_t>(i) - 1].right;
  }
  TupleSpace tuples() const {
    TupleSpace ts;
    ts.dims.resize(static_cast<std::size_t>(n()) + 1);
    for (int i = 0; i <= n(); ++i) ts.dims[static_cast<std::size_t>(i)] = spine(i)->n;
    return ts;
  }
  // The base object p_1(x_0,x_1) (x) ... (x) p_n(x_{n-1},x_n) (unit when n=0).
  int chain_obj(const std::vector<int>& t) const {
    const MonoidalBase& V = *q.left->base;
    std::vector<int> parts;
    for (int i = 0; i < n(); ++i)
      parts.push_back(chain[static_cast<std::size_t>(i)].obj(t[static_cast<std::size_t>(i)],
                                                             t[static_cast<std::size_t>(i) + 1]));
    return V.tensor_objs(parts);
  }
  int cod_obj(const std::vector<int>& t) const { return q.obj(f(t.front()), g(t.back())); }
};

inline void check_frame(const Frame& fr) {
  for (int i = 0; i + 1 < fr.n(); ++i)
    if (!same_category(fr.chain[static_cast<std::size_t>(i)].right,
                       fr.chain[static_cast<std::size_t>(i) + 1].left))
      throw FrameMismatch("chain endpoints do not match at position " + std::to_string(i));
  if (!same_category(fr.f.dom, fr.spine(0)))
    throw FrameMismatch("left boundary functor has wrong domain");
  if (!same_category(fr.g.dom, fr.spine(fr.n())))
    throw FrameMismatch("right boundary functor has wrong domain");
  if (!same_category(fr.f.cod, fr.q.left))
    throw FrameMismatch("left boundary functor has wrong codomain");
  if (!same_category(fr.g.cod, fr.q.right))
    throw FrameMismatch("right boundary functor has wrong codomain");
}

inline bool same_frame(const Frame& a, const Frame& b) {
  if (a.n() != b.n()) return false;
  for (int i = 0; i < a.n(); ++i)
    if (!same_distributor(a.chain[static_cast<std::size_t>(i)],
                          b.chain[static_cast<std::size_t>(i)]))
      return false;
  return same_functor(a.f, b.f) && same_functor(a.g, b.g) && same_distributor(a.q, b.q);
}

struct Form {
  Frame frame;
  std::string name;
  std::vector<Mor> comps;  // dense over frame.tuples()

  const Mor& at(const std::vector<int>& t) const { return comps[frame.tuples().index(t)]; }
  Mor& at(const std::vector<int>& t) { return comps[frame.tuples().index(t)]; }
};

inline bool form_equal(const Form& a, const Form& b) {
  if (!same_frame(a.frame, b.frame)) throw FrameMismatch("form_equal: different frames");
  return a.comps == b.comps;
}

// The identity form p => p (unary chain, identity boundaries, identity components).
inline Form identity_form(const Distributor& p) {
  Form phi;
  phi.frame.chain = {p};
  phi.frame.f = identity_functor(p.left);
  phi.frame.g = identity_functor(p.right);
  phi.frame.q = p;
  phi.name = "1_" + p.name;
  const MonoidalBase& V = *p.left->base;
  phi.frame.tuples().for_each(
      [&](const std::vector<int>& t) { phi.comps.push_back(V.identity(p.obj(t[0], t[1]))); });
  return phi;
}

// The cartesian form q(f, g) => q whose components are identities.
inline Form cartesian_form(const Distributor& q, const EnrichedFunctor& f,
                           const EnrichedFunctor& g) {
  Form phi;
  phi.frame.chain = {restrict(q, f, g)};
  phi.frame.f = f;
  phi.frame.g = g;
  phi.frame.q = q;
  phi.name = q.name + "(" + f.name + "," + g.name + ")=>" + q.name;
  const MonoidalBase& V = *q.left->base;
  phi.frame.tuples().for_each([&](const std::vector<int>& t) {
    phi.comps.push_back(V.identity(q.obj(f(t[0]), g(t[1]))));
  });
  return phi;
}

// The nullary form () => D(1,f) with components the identities of D at f(x).
inline Form companion_unit(const EnrichedFunctor& f) {
  Form phi;
  phi.frame.chain = {};
  phi.frame.f = f;
  phi.frame.g = identity_functor(f.dom);
  phi.frame.q = companion(f);
  phi.name = "unit(" + f.name + ")";
  for (int x = 0; x < f.dom->n; ++x) phi.comps.push_back(f.cod->unit(f(x)));
  return phi;
}

// The nullary form () => D(f,1) with components the identities of D at f(x).
inline Form conjoint_unit(const EnrichedFunctor& f) {
  Form phi;
  phi.frame.chain = {};
  phi.frame.f = identity_functor(f.dom);
  phi.frame.g = f;
  phi.frame.q = conjoint(f);
  phi.name = "counit-unit(" + f.name + ")";
  for (int x = 0; x < f.dom->n; ++x) phi.comps.push_back(f.cod->unit(f(x)));
  return phi;
}

// The form D(1,f), D(f,1) => D(1,1) given by composition in D.
inline Form companion_conjoint_counit(const EnrichedFunctor& f) {
  Form phi;
  phi.frame.chain = {companion(f), conjoint(f)};
  phi.frame.f = identity_functor(f.cod);
  phi.frame.g = identity_functor(f.cod);
  phi.frame.q = loose_identity(f.cod);
  phi.name = "counit(" + f.name + ")";
  phi.frame.tuples().for_each([&](const std::vector<int>& t) {
    // t = (d, x, d'): D(d, fx) (x) D(fx, d') -> D(d, d').
    phi.comps.push_back(f.cod->cmp(t[0], f(t[1]), t[2]));
  });
  return phi;
}

// The form C(1,1), C(1,1) => C(1,1) given by composition in C.
inline Form composition_form(const CatPtr& C) {
  Form phi;
  Distributor p = loose_identity(C);
  phi.frame.chain = {p, p};
  phi.frame.f = identity_functor(C);
  phi.frame.g = identity_functor(C);
  phi.frame.q = p;
  phi.name = "compose(" + C->name + ")";
  phi.frame.tuples().for_each(
      [&](const std::vector<int>& t) { phi.comps.push_back(C->cmp(t[0], t[1], t[2])); });
  return phi;
}

// ---------------------------------------------------------------------------
// Validators
// ---------------------------------------------------------------------------

inline ValidationReport validate_category(const EnrichedCategory& C) {
  ValidationReport rep;
  const MonoidalBase& V = *C.base;
  if (static_cast<int>(C.homv.size()) != C.n * C.n ||
      static_cast<int>(C.ident.size()) != C.n ||
      static_cast<int>(C.comp.size()) != C.n * C.n * C.n)
    throw MalformedTables("category tables have wrong sizes");
  auto nm = [&](int x) { return C.obj_name(x); };

  for (int x = 0; x < C.n; ++x) {
    const Mor& u = C.unit(x);
    if (!V.is_valid(u) || u.dom != V.unit_object() || u.cod != C.hom(x, x))
      rep.add("identity-well-typed", nm(x));
  }
  for (int x = 0; x < C.n; ++x)
    for (int y = 0; y < C.n; ++y)
      for (int z = 0; z < C.n; ++z) {
        const Mor& c = C.cmp(x, y, z);
        int dom = V.tensor_obj(C.hom(x, y), C.hom(y, z));
        if (dom < 0) {
          rep.add("composition-domain-outside-carrier", nm(x) + "," + nm(y) + "," + nm(z));
          continue;
        }
        if (!V.is_valid(c) || c.dom != dom || c.cod != C.hom(x, z))
          rep.add("composition-well-typed", nm(x) + "," + nm(y) + "," + nm(z));
      }
  if (!rep.ok()) return rep;  // laws below assume well-typed structure

  for (int x = 0; x < C.n; ++x)
    for (int y = 0; y < C.n; ++y) {
      Mor idh = V.identity(C.hom(x, y));
      if (V.compose(V.tensor_mor(C.unit(x), idh), C.cmp(x, x, y)) != idh)
        rep.add("category-left-unit", nm(x) + "," + nm(y));
      if (V.compose(V.tensor_mor(idh, C.unit(y)), C.cmp(x, y, y)) != idh)
        rep.add("category-right-unit", nm(x) + "," + nm(y));
    }
  for (int x = 0; x < C.n; ++x)
    for (int y = 0; y < C.n; ++y)
      for (int z = 0; z < C.n; ++z)
        for (int w = 0; w < C.n; ++w) {
          Mor l = V.compose(V.tensor_mor(C.cmp(x, y, z), V.identity(C.hom(z, w))),
                            C.cmp(x, z, w));
          Mor r = V.compose(V.tensor_mor(V.identity(C.hom(x, y)), C.cmp(y, z, w)),
                            C.cmp(x, y, w));
          if (l != r)
            rep.add("category-associativity", nm(x) + "," + nm(y) + "," + nm(z) + "," + nm(w));
        }
  return rep;
}

inline ValidationReport validate_functor(const EnrichedFunctor& f) {
  ValidationReport rep;
  const EnrichedCategory& C = *f.dom;
  const EnrichedCategory& D = *f.cod;
  const MonoidalBase& V = *C.base;
  if (!same_base(C.base, D.base)) throw MalformedTables("functor crosses bases");
  if (static_cast<int>(f.obj.size()) != C.n ||
      static_cast<int>(f.hom_map.size()) != C.n * C.n)
    throw MalformedTables("functor tables have wrong sizes");
  for (int x : f.obj)
    if (x < 0 || x >= D.n) throw MalformedTables("functor object map out of range");
  auto nm = [&](int x) { return C.obj_name(x); };

  for (int x = 0; x < C.n; ++x)
    for (int y = 0; y < C.n; ++y) {
      const Mor& h = f.hom(x, y);
      if (!V.is_valid(h) || h.dom != C.hom(x, y) || h.cod != D.hom(f(x), f(y)))
        rep.add("functor-hom-well-typed", nm(x) + "," + nm(y));
    }
  if (!rep.ok()) return rep;

  for (int x = 0; x < C.n; ++x)
    if (V.compose(C.unit(x), f.hom(x, x)) != D.unit(f(x)))
      rep.add("functor-preserves-identities", nm(x));
  for (int x = 0; x < C.n; ++x)
    for (int y = 0; y < C.n; ++y)
      for (int z = 0; z < C.n; ++z) {
        Mor l = V.compose(C.cmp(x, y, z), f.hom(x, z));
        Mor r = V.compose(V.tensor_mor(f.hom(x, y), f.hom(y, z)), D.cmp(f(x), f(y), f(z)));
        if (l != r) rep.add("functor-preserves-composition", nm(x) + "," + nm(y) + "," + nm(z));
      }
  return rep;
}

inline ValidationReport validate_distributor(const Distributor& p) {
  ValidationReport rep;
  const EnrichedCategory& C = *p.left;
  const EnrichedCategory& D = *p.right;
  const MonoidalBase& V = *C.base;
  if (!same_base(C.base, D.base)) throw MalformedTables("distributor crosses bases");
  int ln = C.n, rn = D.n;
  if (static_cast<int>(p.objv.size()) != ln * rn ||
      static_cast<int>(p.lact.size()) != ln * ln * rn ||
      static_cast<int>(p.ract.size()) != ln * rn * rn)
    throw MalformedTables("distributor tables have wrong sizes");
  auto lnm = [&](int x) { return C.obj_name(x); };
  auto rnm = [&](int y) { return D.obj_name(y); };

  for (int xp = 0; xp < ln; ++xp)
    for (int x = 0; x < ln; ++x)
      for (int y = 0; y < rn; ++y) {
        const Mor& a = p.left_act(xp, x, y);
        int dom = V.tensor_obj(C.hom(xp, x), p.obj(x, y));
        if (dom < 0 || !V.is_valid(a) || a.dom != dom || a.cod != p.obj(xp, y))
          rep.add("left-action-well-typed", lnm(xp) + "," + lnm(x) + "," + rnm(y));
      }
  for (int x = 0; x < ln; ++x)
    for (int y = 0; y < rn; ++y)
      for (int yp = 0; yp < rn; ++yp) {
        const Mor& a = p.right_act(x, y, yp);
        int dom = V.tensor_obj(p.obj(x, y), D.hom(y, yp));
        if (dom < 0 || !V.is_valid(a) || a.dom != dom || a.cod != p.obj(x, yp))
          rep.add("right-action-well-typed", lnm(x) + "," + rnm(y) + "," + rnm(yp));
      }
  if (!rep.ok()) return rep;

  for (int x = 0; x < ln; ++x)
    for (int y = 0; y < rn; ++y) {
      Mor idp = V.identity(p.obj(x, y));
      if (V.compose(V.tensor_mor(C.unit(x), idp), p.left_act(x, x, y)) != idp)
        rep.add("left-action-unital", lnm(x) + "," + rnm(y));
      if (V.compose(V.tensor_mor(idp, D.unit(y)), p.right_act(x, y, y)) != idp)
        rep.add("right-action-unital", lnm(x) + "," + rnm(y));
    }
  for (int x2 = 0; x2 < ln; ++x2)
    for (int x1 = 0; x1 < ln; ++x1)
      for (int x = 0; x < ln; ++x)
        for (int y = 0; y < rn; ++y) {
          // On C(x2,x1) (x) C(x1,x) (x) p(x,y).
          Mor l = V.compose(V.tensor_mor(C.cmp(x2, x1, x), V.identity(p.obj(x, y))),
                            p.left_act(x2, x, y));
          Mor r = V.compose(V.tensor_mor(V.identity(C.hom(x2, x1)), p.left_act(x1, x, y)),
                            p.left_act(x2, x1, y));
          if (l != r)
            rep.add("left-action-associative",
                    lnm(x2) + "," + lnm(x1) + "," + lnm(x) + "," + rnm(y));
        }
  for (int x = 0; x < ln; ++x)
    for (int y = 0; y < rn; ++y)
      for (int y1 = 0; y1 < rn; ++y1)
        for (int y2 = 0; y2 < rn; ++y2) {
          // On p(x,y) (x) D(y,y1) (x) D(y1,y2).
          Mor l = V.compose(V.tensor_mor(V.identity(p.obj(x, y)), D.cmp(y, y1, y2)),
                            p.right_act(x, y, y2));
          Mor r = V.compose(V.tensor_mor(p.right_act(x, y, y1), V.identity(D.hom(y1, y2))),
                            p.right_act(x, y1, y2));
          if (l != r)
            rep.add("right-action-associative",
                    lnm(x) + "," + rnm(y) + "," + rnm(y1) + "," + rnm(y2));
        }
  for (int xp = 0; xp < ln; ++xp)
    for (int x = 0; x < ln; ++x)
      for (int y = 0; y < rn; ++y)
        for (int yp = 0; yp < rn; ++yp) {
          // On C(xp,x) (x) p(x,y) (x) D(y,yp).
          Mor l = V.compose(V.tensor_mor(p.left_act(xp, x, y), V.identity(D.hom(y, yp))),
                            p.right_act(xp, y, yp));
          Mor r = V.compose(V.tensor_mor(V.identity(C.hom(xp, x)), p.right_act(x, y, yp)),
                            p.left_act(xp, x, yp));
          if (l != r)
            rep.add("actions-compatible", lnm(xp) + "," + lnm(x) + "," + rnm(y) + "," + rnm(yp));
        }
  return rep;
}

namespace detail {

// Tensor of per-slot morphisms with identities everywhere except the listed
// replacements; slots are the chain components at the given tuple.
inline Mor chain_mor_with(const MonoidalBase& V, const std::vector<int>& slot_objs,
                          const std::vector<std::pair<int, Mor>>& repl) {
  std::vector<Mor> parts;
  parts.reserve(slot_objs.size());
  for (std::size_t i = 0; i < slot_objs.size(); ++i) {
    bool done = false;
    for (const auto& [at, m] : repl)
      if (static_cast<std::size_t>(at) == i) {
        parts.push_back(m);
        done = true;
        break;
      }
    if (!done) parts.push_back(V.identity(slot_objs[i]));
  }
  return V.tensor_mors(parts);
}

}  // namespace detail

inline ValidationReport validate_form(const Form& phi) {
  ValidationReport rep;
  check_frame(phi.frame);
  const Frame& fr = phi.frame;
  const MonoidalBase& V = *fr.q.left->base;
  const int n = fr.n();
  TupleSpace ts = fr.tuples();
  if (phi.comps.size() != ts.size()) throw MalformedTables("form component table has wrong size");

  auto where = [&](const std::vector<int>& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i)
      s += (i ? "," : "") + fr.spine(static_cast<int>(i))->obj_name(t[i]);
    return s;
  };

  // Typing.
  bool typed = true;
  ts.for_each([&](const std::vector<int>& t) {
    const Mor& c = phi.at(t);
    if (!V.is_valid(c) || c.dom != fr.chain_obj(t) || c.cod != fr.cod_obj(t)) {
      rep.add("form-component-well-typed", where(t));
      typed = false;
    }
  });
  if (!typed) return rep;

  const EnrichedFunctor& f = fr.f;
  const EnrichedFunctor& g = fr.g;
  const Distributor& q = fr.q;

  if (n == 0) {
    const EnrichedCategory& Z = *fr.spine(0);
    for (int x = 0; x < Z.n; ++x)
      for (int xp = 0; xp < Z.n; ++xp) {
        // Both routes Z(x, x') -> q(fx, gx').
        Mor l = V.compose(V.tensor_mor(phi.at({x}), g.hom(x, xp)),
                          q.right_act(f(x), g(x), g(xp)));
        Mor r = V.compose(V.tensor_mor(f.hom(x, xp), phi.at({xp})),
                          q.left_act(f(x), f(xp), g(xp)));
        if (l != r) rep.add("form-naturality-nullary", Z.obj_name(x) + "," + Z.obj_name(xp));
      }
    return rep;
  }

  auto slot_objs = [&](const std::vector<int>& t) {
    std::vector<int> so(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      so[static_cast<std::size_t>(i)] = fr.chain[static_cast<std::size_t>(i)].obj(
          t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i) + 1]);
    return so;
  };

  // Left naturality: for c in spine(0) and every tuple.
  ts.for_each([&](const std::vector<int>& t) {
    const EnrichedCategory& S0 = *fr.spine(0);
    std::vector<int> so = slot_objs(t);
    for (int c = 0; c < S0.n; ++c) {
      Mor chain_id = detail::chain_mor_with(V, so, {});
      // (f_{c,x0} (x) 1); (1 (x) phi); left action of q.
      Mor lhs = V.compose(
          V.tensor_mor(f.hom(c, t[0]), chain_id),
          V.compose(V.tensor_mor(V.identity(q.left->hom(f(c), f(t[0]))), phi.at(t)),
                    q.left_act(f(c), f(t[0]), g(t.back()))));
      // (p_1 left action (x) 1 .. 1); phi at (c, x1..xn).
      std::vector<Mor> parts;
      parts.push_back(fr.chain[0].left_act(c, t[0], t[1]));
      for (int i = 1; i < n; ++i) parts.push_back(V.identity(so[static_cast<std::size_t>(i)]));
      std::vector<int> t2 = t;
      t2[0] = c;
      Mor rhs = V.compose(V.tensor_mors(parts), phi.at(t2));
      if (lhs != rhs)
        rep.add("form-naturality-left", S0.obj_name(c) + ";" + where(t));
    }
  });

  // Right naturality: for c in spine(n) and every tuple.
  ts.for_each([&](const std::vector<int>& t) {
    const EnrichedCategory& Sn = *fr.spine(n);
    std::vector<int> so = slot_objs(t);
    for (int c = 0; c < Sn.n; ++c) {
      Mor chain_id = detail::chain_mor_with(V, so, {});
      Mor lhs = V.compose(
          V.tensor_mor(chain_id, g.hom(t.back(), c)),
          V.compose(V.tensor_mor(phi.at(t), V.identity(q.right->hom(g(t.back()), g(c)))),
                    q.right_act(f(t[0]), g(t.back()), g(c))));
      std::vector<Mor> parts;
      for (int i = 0; i + 1 < n; ++i) parts.push_back(V.identity(so[static_cast<std::size_t>(i)]));
      parts.push_back(fr.chain[static_cast<std::size_t>(n) - 1].right_act(t[n - 1], t[n], c));
      std::vector<int> t2 = t;
      t2[static_cast<std::size_t>(n)] = c;
      Mor rhs = V.compose(V.tensor_mors(parts), phi.at(t2));
      if (lhs != rhs)
        rep.add("form-naturality-right", Sn.obj_name(c) + ";" + where(t));
    }
  });

  // Internal naturality at each junction 1 <= i < n: insert C_i(x_i, x'_i).
  for (int i = 1; i < n; ++i) {
    const EnrichedCategory& Si = *fr.spine(i);
    // Iterate over tuples extended with the primed object.
    TupleSpace ext = ts;
    ext.dims.push_back(Si.n);
    ext.for_each([&](const std::vector<int>& et) {
      std::vector<int> t(et.begin(), et.end() - 1);
      int xip = et.back();
      int xi = t[static_cast<std::size_t>(i)];
      // Domain: p_1 .. p_i(x_{i-1}, x_i) (x) C_i(x_i, x'_i) (x) p_{i+1}(x'_i, x_{i+1}) ..
      std::vector<Mor> lparts, rparts;
      for (int k = 0; k < n; ++k) {
        int a = t[static_cast<std::size_t>(k)];
        int b = t[static_cast<std::size_t>(k) + 1];
        if (k == i - 1) {
          // lhs: right action of C_i on p_i absorbs the inserted hom; rhs leaves p_i alone.
          lparts.push_back(fr.chain[static_cast<std::size_t>(k)].right_act(a, xi, xip));
          rparts.push_back(V.identity(fr.chain[static_cast<std::size_t>(k)].obj(a, xi)));
        } else if (k == i) {
          // left action of C_i on p_{i+1}: C_i(x_i, x'_i) (x) p_{i+1}(x'_i, x_{i+1})
          lparts.push_back(V.identity(fr.chain[static_cast<std::size_t>(k)].obj(xip, b)));
          rparts.push_back(fr.chain[static_cast<std::size_t>(k)].left_act(xi, xip, b));
        } else {
          lparts.push_back(V.identity(fr.chain[static_cast<std::size_t>(k)].obj(a, b)));
          rparts.push_back(V.identity(fr.chain[static_cast<std::size_t>(k)].obj(a, b)));
        }
      }
      // lhs: act on p_i (uses x'_i in slot i), then phi at tuple with x'_i.
      std::vector<int> tl = t;
      tl[static_cast<std::size_t>(i)] = xip;
      Mor lhs = V.compose(V.tensor_mors(lparts), phi.at(tl));
      // rhs: act on p_{i+1} (keeps x_i), then phi at original tuple.
      Mor rhs = V.compose(V.tensor_mors(rparts), phi.at(t));
      if (lhs != rhs)
        rep.add("form-naturality-internal",
                "i=" + std::to_string(i) + ";" + where(t) + ";" + Si.obj_name(xip));
    });
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Pasting
// ---------------------------------------------------------------------------

// Composite of a two-row arrangement: upper forms phi_1 .. phi_k whose
// codomains constitute the chain of the lower form, with matching interleaved
// boundary functors. Multi-row grids are handled by iterated pasting.
inline Form paste(const std::vector<Form>& upper, const Form& lower) {
  const std::size_t k = upper.size();
  if (lower.frame.chain.size() != k)
    throw FrameMismatch("paste: lower chain length does not match the number of upper cells");
  for (std::size_t i = 0; i < k; ++i)
    if (!same_distributor(lower.frame.chain[i], upper[i].frame.q))
      throw FrameMismatch("paste: upper codomain " + std::to_string(i) +
                          " is not the lower chain entry");
  for (std::size_t i = 0; i + 1 < k; ++i)
    if (!same_functor(upper[i].frame.g, upper[i + 1].frame.f))
      throw FrameMismatch("paste: interleaved boundary functors differ at " + std::to_string(i));

  Form out;
  if (k == 0) {
    // Nullary lower cell: boundaries compose, components are unchanged.
    out.frame.chain = {};
    out.frame.f = lower.frame.f;
    out.frame.g = lower.frame.g;
    out.frame.q = lower.frame.q;
    out.comps = lower.comps;
    check_frame(out.frame);
    return out;
  }

  out.frame.f = compose_functors(upper.front().frame.f, lower.frame.f);
  out.frame.g = compose_functors(upper.back().frame.g, lower.frame.g);
  out.frame.q = lower.frame.q;
  for (const Form& u : upper)
    for (const Distributor& p : u.frame.chain) out.frame.chain.push_back(p);
  check_frame(out.frame);

  const MonoidalBase& V = *out.frame.q.left->base;
  TupleSpace ts = out.frame.tuples();
  out.comps.reserve(ts.size());
  ts.for_each([&](const std::vector<int>& t) {
    // Split the composite tuple into the upper tuples (junction objects shared).
    std::vector<Mor> parts;
    std::vector<int> lower_tuple;
    std::size_t off = 0;
    for (std::size_t i = 0; i < k; ++i) {
      int ni = upper[i].frame.n();
      std::vector<int> ti(t.begin() + static_cast<std::ptrdiff_t>(off),
                          t.begin() + static_cast<std::ptrdiff_t>(off + ni) + 1);
      parts.push_back(upper[i].at(ti));
      lower_tuple.push_back(upper[i].frame.f(ti.front()));
      if (i + 1 == k) lower_tuple.push_back(upper[i].frame.g(ti.back()));
      off += static_cast<std::size_t>(ni);
    }
    out.comps.push_back(V.compose(V.tensor_mors(parts), lower.at(lower_tuple)));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Form enumeration (the brute-force oracle)
// ---------------------------------------------------------------------------

inline std::vector<Form> enumerate_forms(const Frame& frame, std::uint64_t cap) {
  check_frame(frame);
  const MonoidalBase& V = *frame.q.left->base;
  if (!V.caps.morphism_enumeration)
    throw CapabilityMissing("base has no morphism enumeration");
  TupleSpace ts = frame.tuples();
  std::uint64_t total = 1;
  std::vector<std::uint64_t> counts;
  ts.for_each([&](const std::vector<int>& t) {
    std::uint64_t c = V.hom_count(frame.chain_obj(t), frame.cod_obj(t));
    counts.push_back(c);
    total = sat_mul(total, c);
  });
  if (total > cap)
    throw EnumerationBudgetExceeded(std::to_string(total) + " candidate families, cap " +
                                    std::to_string(cap));

  std::vector<Form> out;
  if (total == 0) return out;
  for (std::uint64_t it = 0; it < total; ++it) {
    Form phi;
    phi.frame = frame;
    std::uint64_t rem = it;
    // Mixed-radix decode, last tuple fastest.
    std::vector<std::uint64_t> digits(counts.size());
    for (std::size_t i = counts.size(); i-- > 0;) {
      digits[i] = rem % counts[i];
      rem /= counts[i];
    }
    std::size_t slot = 0;
    ts.for_each([&](const std::vector<int>& t) {
      phi.comps.push_back(V.hom_elem(frame.chain_obj(t), frame.cod_obj(t), digits[slot++]));
    });
    if (validate_form(phi).ok()) out.push_back(std::move(phi));
  }
  return out;
}

}  // namespace relkit
