#pragma once
// Relative monads in compact enriched form, monad morphisms, loose (relative)
// monads and the monoid form, relative adjunctions with their equivalent
// presentations, induced monads, composition and pushforward.

#include <optional>

#include "relkit/formal.hpp"

namespace relkit {

namespace detail {

// Postcomposition E(a, b) -> E(a, c) with g : I -> E(b, c).
inline Mor postcomp(const EnrichedCategory& E, int a, int b, int c, const Mor& g) {
  const MonoidalBase& V = *E.base;
  return V.compose(V.tensor_mor(V.identity(E.hom(a, b)), g), E.cmp(a, b, c));
}

// Precomposition E(b, c) -> E(a, c) with f : I -> E(a, b).
inline Mor precomp(const EnrichedCategory& E, int a, int b, int c, const Mor& f) {
  const MonoidalBase& V = *E.base;
  return V.compose(V.tensor_mor(f, V.identity(E.hom(b, c))), E.cmp(a, b, c));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Relative monads (compact form)
// ---------------------------------------------------------------------------

struct RelativeMonad {
  EnrichedFunctor j;       // root A -> E
  std::string name;
  std::vector<int> obj;    // ob t : ob A -> ob E
  std::vector<Mor> unit;   // [x] : I -> E(jx, tx)
  std::vector<Mor> ext;    // [x*n + y] : E(jx, ty) -> E(tx, ty)

  int n() const { return j.dom->n; }
  int t(int x) const { return obj[static_cast<std::size_t>(x)]; }
  const Mor& eta(int x) const { return unit[static_cast<std::size_t>(x)]; }
  const Mor& dag(int x, int y) const { return ext[static_cast<std::size_t>(x) * n() + y]; }
};

inline bool same_monad(const RelativeMonad& a, const RelativeMonad& b) {
  return same_functor(a.j, b.j) && a.obj == b.obj && a.unit == b.unit && a.ext == b.ext;
}

inline ValidationReport validate_relative_monad(const RelativeMonad& T) {
  ValidationReport rep;
  const EnrichedCategory& A = *T.j.dom;
  const EnrichedCategory& E = *T.j.cod;
  const MonoidalBase& V = *A.base;
  int n = A.n;
  if (static_cast<int>(T.obj.size()) != n || static_cast<int>(T.unit.size()) != n ||
      static_cast<int>(T.ext.size()) != n * n)
    throw MalformedTables("relative monad tables have wrong sizes");
  for (int x : T.obj)
    if (x < 0 || x >= E.n) throw MalformedTables("relative monad object map out of range");
  auto nm = [&](int x) { return A.obj_name(x); };

  for (int x = 0; x < n; ++x) {
    const Mor& e = T.eta(x);
    if (!V.is_valid(e) || e.dom != V.unit_object() || e.cod != E.hom(T.j(x), T.t(x)))
      rep.add("monad-unit-well-typed", nm(x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const Mor& d = T.dag(x, y);
      if (!V.is_valid(d) || d.dom != E.hom(T.j(x), T.t(y)) || d.cod != E.hom(T.t(x), T.t(y)))
        rep.add("monad-extension-well-typed", nm(x) + "," + nm(y));
    }
  if (!rep.ok()) return rep;

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      // dag ; E(eta_x, ty) = id.
      Mor pre = detail::precomp(E, T.j(x), T.t(x), T.t(y), T.eta(x));
      if (V.compose(T.dag(x, y), pre) != V.identity(E.hom(T.j(x), T.t(y))))
        rep.add("monad-extension-of-unit", nm(x) + "," + nm(y));
    }
  for (int x = 0; x < n; ++x)
    if (V.compose(T.eta(x), T.dag(x, x)) != E.unit(T.t(x)))
      rep.add("monad-unit-extension", nm(x));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        // On E(jx, ty) (x) E(jy, tz).
        Mor l = V.compose(V.tensor_mor(T.dag(x, y), T.dag(y, z)),
                          E.cmp(T.t(x), T.t(y), T.t(z)));
        Mor r = V.compose(V.tensor_mor(V.identity(E.hom(T.j(x), T.t(y))), T.dag(y, z)),
                          V.compose(E.cmp(T.j(x), T.t(y), T.t(z)), T.dag(x, z)));
        if (l != r) rep.add("monad-extension-associative", nm(x) + "," + nm(y) + "," + nm(z));
      }
  return rep;
}

inline RelativeMonad trivial_monad(const EnrichedFunctor& j) {
  RelativeMonad T;
  T.j = j;
  T.name = "trivial(" + j.name + ")";
  T.obj = j.obj;
  const EnrichedCategory& E = *j.cod;
  const MonoidalBase& V = *E.base;
  for (int x = 0; x < j.dom->n; ++x) T.unit.push_back(E.unit(j(x)));
  for (int x = 0; x < j.dom->n; ++x)
    for (int y = 0; y < j.dom->n; ++y)
      T.ext.push_back(V.identity(E.hom(j(x), j(y))));
  return T;
}

// The underlying V-functor t_{x,y} := j_{x,y} ; E(jx, eta_y) ; dag_{x,y}.
inline EnrichedFunctor derive_underlying_functor(const RelativeMonad& T) {
  const EnrichedCategory& E = *T.j.cod;
  const MonoidalBase& V = *E.base;
  EnrichedFunctor t;
  t.dom = T.j.dom;
  t.cod = T.j.cod;
  t.name = T.name + ".functor";
  t.obj = T.obj;
  for (int x = 0; x < T.n(); ++x)
    for (int y = 0; y < T.n(); ++y)
      t.hom_map.push_back(V.compose(
          T.j.hom(x, y),
          V.compose(detail::postcomp(E, T.j(x), T.j(y), T.t(y), T.eta(y)), T.dag(x, y))));
  return t;
}

// Certify that the derived hom-action is the only functor making eta and dag
// natural, by enumerating alternatives within the budget. Returns the number
// of admissible functors (1 = unique).
inline std::uint64_t certify_underlying_uniqueness(const RelativeMonad& T,
                                                   std::uint64_t budget = kDefaultBudget) {
  const EnrichedCategory& A = *T.j.dom;
  const EnrichedCategory& E = *T.j.cod;
  const MonoidalBase& V = *A.base;
  EnrichedFunctor t = derive_underlying_functor(T);
  int n = T.n();

  // eta-naturality pins each component c : A(x,y) -> E(tx, ty) separately:
  //   j_{x,y} ; E(jx, eta_y) = c ; E(eta_x, ty).
  std::vector<std::vector<Mor>> slots;
  std::uint64_t total = 1;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Mor lhs = V.compose(T.j.hom(x, y),
                          detail::postcomp(E, T.j(x), T.j(y), T.t(y), T.eta(y)));
      Mor pre = detail::precomp(E, T.j(x), T.t(x), T.t(y), T.eta(x));
      std::vector<Mor> hits;
      for_each_hom(V, A.hom(x, y), E.hom(T.t(x), T.t(y)), budget, [&](const Mor& c) {
        if (V.compose(c, pre) == lhs) hits.push_back(c);
      });
      if (hits.empty()) throw LawViolation("underlying functor: no natural candidate");
      if (V.compose(t.hom(x, y), pre) != lhs)
        throw LawViolation("underlying functor: derived component is not natural");
      total = sat_mul(total, hits.size());
      slots.push_back(std::move(hits));
    }
  if (total > budget)
    throw EnumerationBudgetExceeded(std::to_string(total) + " candidate functors, cap " +
                                    std::to_string(budget));

  // dag-naturality couples the components: as a form E(j-, t-) => E(t-, t-)
  // its left variable acts through j on the source but through the candidate
  // on the target, and its right variable acts through the candidate on both.
  auto dag_natural = [&](const EnrichedFunctor& c) {
    for (int xp = 0; xp < n; ++xp)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          // A(x',x) (x) E(jx, ty) -> E(tx', ty)
          Mor via_src = V.compose(
              V.tensor_mor(T.j.hom(xp, x), V.identity(E.hom(T.j(x), T.t(y)))),
              V.compose(E.cmp(T.j(xp), T.j(x), T.t(y)), T.dag(xp, y)));
          Mor via_tgt = V.compose(V.tensor_mor(c.hom(xp, x), T.dag(x, y)),
                                  E.cmp(T.t(xp), T.t(x), T.t(y)));
          if (via_src != via_tgt) return false;
          // E(jx, ty) (x) A(y,y') -> E(tx, ty')   (reusing xp as y')
          int yp = xp;
          Mor r_src = V.compose(
              V.tensor_mor(V.identity(E.hom(T.j(x), T.t(y))), c.hom(y, yp)),
              V.compose(E.cmp(T.j(x), T.t(y), T.t(yp)), T.dag(x, yp)));
          Mor r_tgt = V.compose(V.tensor_mor(T.dag(x, y), c.hom(y, yp)),
                                E.cmp(T.t(x), T.t(y), T.t(yp)));
          if (r_src != r_tgt) return false;
        }
    return true;
  };

  std::uint64_t admissible = 0;
  std::vector<std::size_t> pick(slots.size(), 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    EnrichedFunctor cand = t;
    cand.hom_map.clear();
    std::uint64_t rem = it;
    for (std::size_t s = slots.size(); s-- > 0;) {
      pick[s] = static_cast<std::size_t>(rem % slots[s].size());
      rem /= slots[s].size();
    }
    for (std::size_t s = 0; s < slots.size(); ++s) cand.hom_map.push_back(slots[s][pick[s]]);
    if (validate_functor(cand).ok() && dag_natural(cand)) ++admissible;
  }
  if (admissible == 0) throw LawViolation("underlying functor: no natural candidate");
  return admissible;
}

// ---------------------------------------------------------------------------
// Monad morphisms
// ---------------------------------------------------------------------------

struct MonadMorphism {
  std::vector<Mor> tau;  // [x] : I -> E(tx, t'x)
};

inline ValidationReport validate_monad_morphism(const RelativeMonad& S, const RelativeMonad& T,
                                                const MonadMorphism& m) {
  ValidationReport rep;
  if (!same_functor(S.j, T.j)) throw FrameMismatch("monad morphism: roots differ");
  const EnrichedCategory& E = *S.j.cod;
  const MonoidalBase& V = *E.base;
  int n = S.n();
  if (static_cast<int>(m.tau.size()) != n)
    throw MalformedTables("monad morphism has wrong size");
  auto nm = [&](int x) { return S.j.dom->obj_name(x); };

  for (int x = 0; x < n; ++x) {
    const Mor& c = m.tau[static_cast<std::size_t>(x)];
    if (!V.is_valid(c) || c.dom != V.unit_object() || c.cod != E.hom(S.t(x), T.t(x)))
      rep.add("morphism-well-typed", nm(x));
  }
  if (!rep.ok()) return rep;

  for (int x = 0; x < n; ++x) {
    // eta'_x = eta_x ; E(jx, tau_x).
    Mor post = detail::postcomp(E, S.j(x), S.t(x), T.t(x), m.tau[static_cast<std::size_t>(x)]);
    if (V.compose(S.eta(x), post) != T.eta(x)) rep.add("morphism-unit", nm(x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      // E(jx, tau_y) ; dag' ; E(tau_x, t'y) = dag ; E(tx, tau_y).
      Mor post_y = detail::postcomp(E, S.j(x), S.t(y), T.t(y), m.tau[static_cast<std::size_t>(y)]);
      Mor pre_x = detail::precomp(E, S.t(x), T.t(x), T.t(y), m.tau[static_cast<std::size_t>(x)]);
      Mor lhs = V.compose(post_y, V.compose(T.dag(x, y), pre_x));
      Mor rhs = V.compose(S.dag(x, y),
                          detail::postcomp(E, S.t(x), S.t(y), T.t(y),
                                           m.tau[static_cast<std::size_t>(y)]));
      if (lhs != rhs) rep.add("morphism-extension", nm(x) + "," + nm(y));
    }
  return rep;
}

inline std::vector<MonadMorphism> enumerate_monad_morphisms(const RelativeMonad& S,
                                                            const RelativeMonad& T,
                                                            std::uint64_t budget = kDefaultBudget) {
  if (!same_functor(S.j, T.j)) throw FrameMismatch("monad morphism: roots differ");
  const EnrichedCategory& E = *S.j.cod;
  const MonoidalBase& V = *E.base;
  int n = S.n();
  std::uint64_t total = 1;
  std::vector<std::uint64_t> counts;
  for (int x = 0; x < n; ++x) {
    counts.push_back(V.hom_count(V.unit_object(), E.hom(S.t(x), T.t(x))));
    total = sat_mul(total, counts.back());
  }
  if (total > budget)
    throw EnumerationBudgetExceeded(std::to_string(total) + " candidate morphisms, cap " +
                                    std::to_string(budget));
  std::vector<MonadMorphism> out;
  for (std::uint64_t it = 0; it < total; ++it) {
    MonadMorphism m;
    m.tau.resize(static_cast<std::size_t>(n));
    std::uint64_t rem = it;
    for (std::size_t x = static_cast<std::size_t>(n); x-- > 0;) {
      m.tau[x] = V.hom_elem(V.unit_object(), E.hom(S.t(static_cast<int>(x)), T.t(static_cast<int>(x))),
                            rem % counts[x]);
      rem /= counts[x];
    }
    if (validate_monad_morphism(S, T, m).ok()) out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Loose monads and the monoid form
// ---------------------------------------------------------------------------

struct LooseMonad {
  Distributor t;  // A -|-> A
  Form mult;      // t, t => t
  Form unit;      // () => t
};

inline ValidationReport validate_loose_monad(const LooseMonad& M) {
  ValidationReport rep;
  const CatPtr& A = M.t.left;
  Distributor t = M.t;
  Frame mf;
  mf.chain = {t, t};
  mf.f = mf.g = identity_functor(A);
  mf.q = t;
  Frame uf;
  uf.chain = {};
  uf.f = uf.g = identity_functor(A);
  uf.q = t;
  if (!same_category(M.t.left, M.t.right) || !same_frame(M.mult.frame, mf) ||
      !same_frame(M.unit.frame, uf))
    throw FrameMismatch("loose monad: wrong frames");
  for (const auto& v : validate_form(M.mult).violations) rep.add("mult-" + v.law, v.where);
  for (const auto& v : validate_form(M.unit).violations) rep.add("unit-" + v.law, v.where);
  if (!rep.ok()) return rep;

  Form l = paste({M.mult, identity_form(t)}, M.mult);
  Form r = paste({identity_form(t), M.mult}, M.mult);
  if (!form_equal(l, r)) rep.add("loose-monad-associativity", "");
  if (!form_equal(paste({M.unit, identity_form(t)}, M.mult), identity_form(t)))
    rep.add("loose-monad-left-unit", "");
  if (!form_equal(paste({identity_form(t), M.unit}, M.mult), identity_form(t)))
    rep.add("loose-monad-right-unit", "");
  return rep;
}

// Loose j-relative monad: a monoid in the skew-multicategory of distributors
// E -|-> A, with multiplication framed by the interleaved E(j, 1).
struct LooseRelativeMonad {
  EnrichedFunctor j;  // A -> E
  Distributor p;      // E -|-> A (left E, right A)
  Form mult;          // p, E(j,1), p => p
  Form unit;          // E(1,j) => p
};

inline ValidationReport validate_loose_relative_monad(const LooseRelativeMonad& M) {
  ValidationReport rep;
  const CatPtr& A = M.j.dom;
  const CatPtr& E = M.j.cod;
  const MonoidalBase& V = *E->base;
  if (!same_category(M.p.left, E) || !same_category(M.p.right, A))
    throw FrameMismatch("loose relative monad: carrier has wrong boundaries");
  Distributor ej1 = restrict(loose_identity(E), M.j, identity_functor(E));
  Distributor e1j = restrict(loose_identity(E), identity_functor(E), M.j);
  Frame mf;
  mf.chain = {M.p, ej1, M.p};
  mf.f = identity_functor(E);
  mf.g = identity_functor(A);
  mf.q = M.p;
  Frame uf;
  uf.chain = {e1j};
  uf.f = identity_functor(E);
  uf.g = identity_functor(A);
  uf.q = M.p;
  if (!same_frame(M.mult.frame, mf) || !same_frame(M.unit.frame, uf))
    throw FrameMismatch("loose relative monad: wrong frames");
  for (const auto& v : validate_form(M.mult).violations) rep.add("mult-" + v.law, v.where);
  for (const auto& v : validate_form(M.unit).violations) rep.add("unit-" + v.law, v.where);
  if (!rep.ok()) return rep;

  // Associativity as a pasting equality on p, E(j,1), p, E(j,1), p.
  Form l = paste({M.mult, identity_form(ej1), identity_form(M.p)}, M.mult);
  Form r = paste({identity_form(M.p), identity_form(ej1), M.mult}, M.mult);
  if (!form_equal(l, r)) rep.add("loose-relative-monad-associativity", "");

  // Left unit: (unit, 1, 1) ; mult equals composing E(1,j), E(j,1) and acting.
  Form lu = paste({M.unit, identity_form(ej1), identity_form(M.p)}, M.mult);
  Form can;
  can.frame = lu.frame;
  can.frame.tuples().for_each([&](const std::vector<int>& t) {
    // t = (e, a, e', x): E(e, ja) (x) E(ja, e') (x) p(e', x) -> p(e, x).
    can.comps.push_back(
        V.compose(V.tensor_mor(E->cmp(t[0], M.j(t[1]), t[2]), V.identity(M.p.obj(t[2], t[3]))),
                  M.p.left_act(t[0], t[2], t[3])));
  });
  if (!form_equal(lu, can)) rep.add("loose-relative-monad-left-unit", "");

  // Right unit, pointwise: mult at (e, x, jx, x) precomposed with the unit
  // element in both trailing slots is the identity of p(e, x).
  for (int e = 0; e < E->n; ++e)
    for (int x = 0; x < A->n; ++x) {
      Mor u = V.compose(E->unit(M.j(x)), M.unit.at({M.j(x), x}));
      Mor lhs = V.compose(
          V.tensor_mors({V.identity(M.p.obj(e, x)), E->unit(M.j(x)), u}),
          M.mult.at({e, x, M.j(x), x}));
      if (lhs != V.identity(M.p.obj(e, x)))
        rep.add("loose-relative-monad-right-unit", E->obj_name(e) + "," + A->obj_name(x));
    }
  return rep;
}

// Restriction along j: the loose monad with carrier p(j, 1).
inline LooseMonad restrict_loose_relative(const LooseRelativeMonad& M) {
  const CatPtr& A = M.j.dom;
  const CatPtr& E = M.j.cod;
  const MonoidalBase& V = *E->base;
  LooseMonad out;
  out.t = restrict(M.p, M.j, identity_functor(A));
  out.t.name = M.p.name + "(" + M.j.name + ",1)";
  out.mult.frame.chain = {out.t, out.t};
  out.mult.frame.f = out.mult.frame.g = identity_functor(A);
  out.mult.frame.q = out.t;
  out.mult.frame.tuples().for_each([&](const std::vector<int>& t) {
    // p(ja0, a1) (x) p(ja1, a2) -> p(ja0, a2): insert the unit of E(ja1, ja1).
    out.mult.comps.push_back(V.compose(
        V.tensor_mors({V.identity(M.p.obj(M.j(t[0]), t[1])), E->unit(M.j(t[1])),
                       V.identity(M.p.obj(M.j(t[1]), t[2]))}),
        M.mult.at({M.j(t[0]), t[1], M.j(t[1]), t[2]})));
  });
  out.unit.frame.chain = {};
  out.unit.frame.f = out.unit.frame.g = identity_functor(A);
  out.unit.frame.q = out.t;
  for (int a = 0; a < A->n; ++a)
    out.unit.comps.push_back(V.compose(E->unit(M.j(a)), M.unit.at({M.j(a), a})));
  return out;
}

// The loose monad E(j, t) of a tight relative monad.
inline LooseMonad to_loose_monad(const RelativeMonad& T) {
  const CatPtr& A = T.j.dom;
  const EnrichedCategory& E = *T.j.cod;
  const MonoidalBase& V = *E.base;
  EnrichedFunctor t = derive_underlying_functor(T);
  LooseMonad out;
  out.t = restrict(loose_identity(T.j.cod), T.j, t);
  out.t.name = "E(" + T.j.name + "," + T.name + ")";
  out.mult.frame.chain = {out.t, out.t};
  out.mult.frame.f = out.mult.frame.g = identity_functor(A);
  out.mult.frame.q = out.t;
  out.mult.frame.tuples().for_each([&](const std::vector<int>& tp) {
    // E(jx, ty) (x) E(jy, tz) -> E(jx, tz) via dag on the second factor.
    int x = tp[0], y = tp[1], z = tp[2];
    out.mult.comps.push_back(
        V.compose(V.tensor_mor(V.identity(E.hom(T.j(x), T.t(y))), T.dag(y, z)),
                  E.cmp(T.j(x), T.t(y), T.t(z))));
  });
  out.unit.frame.chain = {};
  out.unit.frame.f = out.unit.frame.g = identity_functor(A);
  out.unit.frame.q = out.t;
  for (int x = 0; x < A->n; ++x) out.unit.comps.push_back(T.eta(x));
  return out;
}

// The monoid form E(1, t) with its interleaved multiplication.
struct MonoidFormMonad {
  EnrichedFunctor j;
  std::vector<int> obj;  // ob t, kept to make the correspondence invertible
  Distributor carrier;   // E(1, t) : E -|-> A
  Form mult;             // E(1,t), E(j,1), E(1,t) => E(1,t)
  Form unit;             // E(1,j) => E(1,t)

  LooseRelativeMonad as_loose() const { return LooseRelativeMonad{j, carrier, mult, unit}; }
};

inline MonoidFormMonad to_monoid_form(const RelativeMonad& T) {
  const CatPtr& A = T.j.dom;
  const CatPtr& Ec = T.j.cod;
  const EnrichedCategory& E = *Ec;
  const MonoidalBase& V = *E.base;
  EnrichedFunctor t = derive_underlying_functor(T);
  MonoidFormMonad out;
  out.j = T.j;
  out.obj = T.obj;
  out.carrier = restrict(loose_identity(Ec), identity_functor(Ec), t);
  out.carrier.name = "E(1," + T.name + ")";
  Distributor ej1 = restrict(loose_identity(Ec), T.j, identity_functor(Ec));
  out.mult.frame.chain = {out.carrier, ej1, out.carrier};
  out.mult.frame.f = identity_functor(Ec);
  out.mult.frame.g = identity_functor(A);
  out.mult.frame.q = out.carrier;
  out.mult.frame.tuples().for_each([&](const std::vector<int>& tp) {
    // E(e, tx) (x) E(jx, e') (x) E(e', ty) -> E(e, ty).
    int e = tp[0], x = tp[1], ep = tp[2], y = tp[3];
    Mor inner = V.compose(E.cmp(T.j(x), ep, T.t(y)), T.dag(x, y));
    out.mult.comps.push_back(
        V.compose(V.tensor_mor(V.identity(E.hom(e, T.t(x))),
                               V.compose(V.tensor_mor(V.identity(E.hom(T.j(x), ep)),
                                                      V.identity(E.hom(ep, T.t(y)))),
                                         inner)),
                  E.cmp(e, T.t(x), T.t(y))));
  });
  out.unit.frame.chain = {restrict(loose_identity(Ec), identity_functor(Ec), T.j)};
  out.unit.frame.f = identity_functor(Ec);
  out.unit.frame.g = identity_functor(A);
  out.unit.frame.q = out.carrier;
  out.unit.frame.tuples().for_each([&](const std::vector<int>& tp) {
    // E(e, ja) -> E(e, ta), postcomposition with eta_a.
    out.unit.comps.push_back(detail::postcomp(E, tp[0], T.j(tp[1]), T.t(tp[1]), T.eta(tp[1])));
  });
  return out;
}

inline RelativeMonad from_monoid_form(const MonoidFormMonad& M) {
  const EnrichedCategory& E = *M.j.cod;
  const MonoidalBase& V = *E.base;
  RelativeMonad T;
  T.j = M.j;
  T.name = M.carrier.name;
  T.obj = M.obj;
  int n = M.j.dom->n;
  for (int x = 0; x < n; ++x)
    T.unit.push_back(V.compose(E.unit(M.j(x)), M.unit.at({M.j(x), x})));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int tx = M.obj[static_cast<std::size_t>(x)];
      int ty = M.obj[static_cast<std::size_t>(y)];
      T.ext.push_back(V.compose(
          V.tensor_mors({E.unit(tx), V.identity(E.hom(M.j(x), ty)), E.unit(ty)}),
          M.mult.at({tx, x, ty, y})));
    }
  return T;
}

// ---------------------------------------------------------------------------
// Relative adjunctions
// ---------------------------------------------------------------------------

struct RelativeAdjunction {
  EnrichedFunctor j;  // A -> E (root)
  EnrichedFunctor l;  // A -> C
  EnrichedFunctor r;  // C -> E
  std::string name;
  std::vector<Mor> sharp;  // [x*C.n + y] : C(lx, y) -> E(jx, ry)
  std::vector<Mor> flat;   // [x*C.n + y] : E(jx, ry) -> C(lx, y)

  const Mor& sh(int x, int y) const { return sharp[static_cast<std::size_t>(x) * l.cod->n + y]; }
  const Mor& fl(int x, int y) const { return flat[static_cast<std::size_t>(x) * l.cod->n + y]; }
};

// The transpositions as forms over cartesian frames C(l,1) <=> E(j,r).
inline Form sharp_form(const RelativeAdjunction& adj) {
  Form phi;
  phi.frame.chain = {restrict(loose_identity(adj.l.cod), adj.l, identity_functor(adj.l.cod))};
  phi.frame.f = identity_functor(adj.j.dom);
  phi.frame.g = identity_functor(adj.l.cod);
  phi.frame.q = restrict(loose_identity(adj.j.cod), adj.j, adj.r);
  phi.name = "sharp(" + adj.name + ")";
  phi.comps = adj.sharp;
  return phi;
}

inline Form flat_form(const RelativeAdjunction& adj) {
  Form phi;
  phi.frame.chain = {restrict(loose_identity(adj.j.cod), adj.j, adj.r)};
  phi.frame.f = identity_functor(adj.j.dom);
  phi.frame.g = identity_functor(adj.l.cod);
  phi.frame.q = restrict(loose_identity(adj.l.cod), adj.l, identity_functor(adj.l.cod));
  phi.name = "flat(" + adj.name + ")";
  phi.comps = adj.flat;
  return phi;
}

inline ValidationReport validate_adjunction(const RelativeAdjunction& adj) {
  ValidationReport rep;
  if (!same_category(adj.j.dom, adj.l.dom) || !same_category(adj.l.cod, adj.r.dom) ||
      !same_category(adj.r.cod, adj.j.cod))
    throw FrameMismatch("adjunction: functor boundaries do not compose");
  const EnrichedCategory& C = *adj.l.cod;
  const EnrichedCategory& E = *adj.j.cod;
  const MonoidalBase& V = *E.base;
  int n = adj.j.dom->n;
  if (static_cast<int>(adj.sharp.size()) != n * C.n ||
      static_cast<int>(adj.flat.size()) != n * C.n)
    throw MalformedTables("adjunction tables have wrong sizes");

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < C.n; ++y) {
      int cl = C.hom(adj.l(x), y);
      int er = E.hom(adj.j(x), adj.r(y));
      const Mor& s = adj.sh(x, y);
      const Mor& f = adj.fl(x, y);
      if (!V.is_valid(s) || s.dom != cl || s.cod != er)
        rep.add("sharp-well-typed", std::to_string(x) + "," + std::to_string(y));
      if (!V.is_valid(f) || f.dom != er || f.cod != cl)
        rep.add("flat-well-typed", std::to_string(x) + "," + std::to_string(y));
    }
  if (!rep.ok()) return rep;

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < C.n; ++y) {
      if (V.compose(adj.sh(x, y), adj.fl(x, y)) != V.identity(C.hom(adj.l(x), y)))
        rep.add("sharp-flat-inverse", std::to_string(x) + "," + std::to_string(y));
      if (V.compose(adj.fl(x, y), adj.sh(x, y)) != V.identity(E.hom(adj.j(x), adj.r(y))))
        rep.add("flat-sharp-inverse", std::to_string(x) + "," + std::to_string(y));
    }
  for (const auto& v : validate_form(sharp_form(adj)).violations)
    rep.add("sharp-" + v.law, v.where);
  for (const auto& v : validate_form(flat_form(adj)).violations)
    rep.add("flat-" + v.law, v.where);
  return rep;
}

// The identity-ish adjunction j -| 1_E.
inline RelativeAdjunction trivial_adjunction(const EnrichedFunctor& j) {
  const EnrichedCategory& E = *j.cod;
  const MonoidalBase& V = *E.base;
  RelativeAdjunction adj;
  adj.j = j;
  adj.l = j;
  adj.r = identity_functor(j.cod);
  adj.name = j.name + "-|1";
  for (int x = 0; x < j.dom->n; ++x)
    for (int y = 0; y < E.n; ++y) {
      adj.sharp.push_back(V.identity(E.hom(j(x), y)));
      adj.flat.push_back(V.identity(E.hom(j(x), y)));
    }
  return adj;
}

// The unit eta : j => l;r, with eta_x = I_{lx} ; sharp_{x, lx}.
inline Form unit_form(const RelativeAdjunction& adj) {
  const EnrichedCategory& C = *adj.l.cod;
  const MonoidalBase& V = *C.base;
  Form eta;
  eta.frame.chain = {};
  eta.frame.f = adj.j;
  eta.frame.g = compose_functors(adj.l, adj.r);
  eta.frame.q = loose_identity(adj.j.cod);
  eta.name = "unit(" + adj.name + ")";
  for (int x = 0; x < adj.j.dom->n; ++x)
    eta.comps.push_back(V.compose(C.unit(adj.l(x)), adj.sh(x, adj.l(x))));
  return eta;
}

// The counit C(1,l), E(j,r) => C(1,1) with components (1 (x) flat) ; compose.
inline Form counit_form(const RelativeAdjunction& adj) {
  const CatPtr& Cc = adj.l.cod;
  const EnrichedCategory& C = *Cc;
  const MonoidalBase& V = *C.base;
  Form eps;
  eps.frame.chain = {restrict(loose_identity(Cc), identity_functor(Cc), adj.l),
                     restrict(loose_identity(adj.j.cod), adj.j, adj.r)};
  eps.frame.f = identity_functor(Cc);
  eps.frame.g = identity_functor(Cc);
  eps.frame.q = loose_identity(Cc);
  eps.name = "counit(" + adj.name + ")";
  eps.frame.tuples().for_each([&](const std::vector<int>& t) {
    // C(c, lx) (x) E(jx, rc') -> C(c, c').
    int c = t[0], x = t[1], cp = t[2];
    eps.comps.push_back(
        V.compose(V.tensor_mor(V.identity(C.hom(c, adj.l(x))), adj.fl(x, cp)),
                  C.cmp(c, adj.l(x), cp)));
  });
  return eps;
}

// Rebuild sharp from a unit: sharp_{x,y} = r_{lx,y} ; E(eta_x, ry).
inline std::vector<Mor> sharp_from_unit(const EnrichedFunctor& j, const EnrichedFunctor& l,
                                        const EnrichedFunctor& r, const Form& eta) {
  const EnrichedCategory& E = *j.cod;
  const MonoidalBase& V = *E.base;
  std::vector<Mor> sharp;
  for (int x = 0; x < j.dom->n; ++x)
    for (int y = 0; y < l.cod->n; ++y)
      sharp.push_back(V.compose(
          r.hom(l(x), y), detail::precomp(E, j(x), r(l(x)), r(y), eta.at({x}))));
  return sharp;
}

// Rebuild flat from a counit: flat_{x,y} = (I_{lx} (x) 1) ; eps_{lx, x, y}.
inline std::vector<Mor> flat_from_counit(const EnrichedFunctor& j, const EnrichedFunctor& l,
                                         const EnrichedFunctor& r, const Form& eps) {
  const EnrichedCategory& C = *l.cod;
  const EnrichedCategory& E = *j.cod;
  const MonoidalBase& V = *C.base;
  std::vector<Mor> flat;
  for (int x = 0; x < j.dom->n; ++x)
    for (int y = 0; y < l.cod->n; ++y)
      flat.push_back(V.compose(
          V.tensor_mor(C.unit(l(x)), V.identity(E.hom(j(x), r(y)))), eps.at({l(x), x, y})));
  return flat;
}

// Assemble an adjunction from the unit-counit presentation; throws when the
// resulting transpositions fail to be mutually inverse natural families.
inline RelativeAdjunction from_unit_counit(const EnrichedFunctor& j, const EnrichedFunctor& l,
                                           const EnrichedFunctor& r, const Form& eta,
                                           const Form& eps) {
  RelativeAdjunction adj;
  adj.j = j;
  adj.l = l;
  adj.r = r;
  adj.name = l.name + "-|" + r.name;
  adj.sharp = sharp_from_unit(j, l, r, eta);
  adj.flat = flat_from_counit(j, l, r, eps);
  auto rep = validate_adjunction(adj);
  if (!rep.ok())
    throw LawViolation("unit-counit presentation: " + rep.violations.front().law + " at " +
                       rep.violations.front().where);
  return adj;
}

inline RelativeAdjunction from_unit_flat(const EnrichedFunctor& j, const EnrichedFunctor& l,
                                         const EnrichedFunctor& r, const Form& eta,
                                         const std::vector<Mor>& flat) {
  RelativeAdjunction adj;
  adj.j = j;
  adj.l = l;
  adj.r = r;
  adj.name = l.name + "-|" + r.name;
  adj.sharp = sharp_from_unit(j, l, r, eta);
  adj.flat = flat;
  auto rep = validate_adjunction(adj);
  if (!rep.ok())
    throw LawViolation("universal-arrow presentation: " + rep.violations.front().law + " at " +
                       rep.violations.front().where);
  return adj;
}

inline RelativeAdjunction from_sharp_counit(const EnrichedFunctor& j, const EnrichedFunctor& l,
                                            const EnrichedFunctor& r,
                                            const std::vector<Mor>& sharp, const Form& eps) {
  RelativeAdjunction adj;
  adj.j = j;
  adj.l = l;
  adj.r = r;
  adj.name = l.name + "-|" + r.name;
  adj.sharp = sharp;
  adj.flat = flat_from_counit(j, l, r, eps);
  auto rep = validate_adjunction(adj);
  if (!rep.ok())
    throw LawViolation("couniversal-arrow presentation: " + rep.violations.front().law + " at " +
                       rep.violations.front().where);
  return adj;
}

// The induced monad r.l with dag = flat ; r.
inline RelativeMonad induced_monad(const RelativeAdjunction& adj) {
  const MonoidalBase& V = *adj.j.dom->base;
  RelativeMonad T;
  T.j = adj.j;
  T.name = "induced(" + adj.name + ")";
  Form eta = unit_form(adj);
  for (int x = 0; x < adj.j.dom->n; ++x) {
    T.obj.push_back(adj.r(adj.l(x)));
    T.unit.push_back(eta.at({x}));
  }
  for (int x = 0; x < adj.j.dom->n; ++x)
    for (int y = 0; y < adj.j.dom->n; ++y)
      T.ext.push_back(V.compose(adj.fl(x, adj.l(y)), adj.r.hom(adj.l(x), adj.l(y))));
  return T;
}

// Compose an inner j-adjunction with an outer j'-adjunction whose left leg is
// lprime ; j.
inline RelativeAdjunction compose_adjunctions(const RelativeAdjunction& inner,
                                              const RelativeAdjunction& outer,
                                              const EnrichedFunctor& lprime) {
  if (!same_functor(outer.l, compose_functors(lprime, inner.j)))
    throw FrameMismatch("compose_adjunctions: outer left leg must be lprime ; j");
  const MonoidalBase& V = *inner.j.dom->base;
  RelativeAdjunction out;
  out.j = outer.j;
  out.l = compose_functors(lprime, inner.l);
  out.r = compose_functors(inner.r, outer.r);
  out.name = inner.name + ";" + outer.name;
  for (int x = 0; x < out.j.dom->n; ++x)
    for (int y = 0; y < out.l.cod->n; ++y) {
      out.sharp.push_back(V.compose(inner.sh(lprime(x), y), outer.sh(x, inner.r(y))));
      out.flat.push_back(V.compose(outer.fl(x, inner.r(y)), inner.fl(lprime(x), y)));
    }
  return out;
}

// Push a j-monad forward along an outer adjunction lprime;j -| r'.
inline RelativeMonad pushforward_monad(const RelativeAdjunction& outer,
                                       const EnrichedFunctor& lprime, const RelativeMonad& T) {
  if (!same_functor(outer.l, compose_functors(lprime, T.j)))
    throw FrameMismatch("pushforward_monad: outer left leg must be lprime ; j");
  const MonoidalBase& V = *T.j.dom->base;
  RelativeMonad out;
  out.j = outer.j;
  out.name = "push(" + T.name + ")";
  for (int x = 0; x < outer.j.dom->n; ++x) {
    int b = lprime(x);
    out.obj.push_back(outer.r(T.t(b)));
    out.unit.push_back(V.compose(T.eta(b), outer.sh(x, T.t(b))));
  }
  for (int x = 0; x < outer.j.dom->n; ++x)
    for (int y = 0; y < outer.j.dom->n; ++y) {
      int bx = lprime(x), by = lprime(y);
      out.ext.push_back(V.compose(
          outer.fl(x, T.t(by)),
          V.compose(T.dag(bx, by), outer.r.hom(T.t(bx), T.t(by)))));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms of adjunctions; resolutions
// ---------------------------------------------------------------------------

// Left-morphism (c, lambda): c : C -> C' with r = c;r', lambda : l' => l;c.
inline ValidationReport validate_left_morphism(const RelativeAdjunction& src,
                                               const RelativeAdjunction& dst,
                                               const EnrichedFunctor& c, const Form& lambda) {
  ValidationReport rep;
  if (!same_functor(src.j, dst.j)) throw FrameMismatch("left morphism: roots differ");
  if (!same_functor(src.r, compose_functors(c, dst.r)))
    throw FrameMismatch("left morphism: r must equal c;r'");
  Frame lf;
  lf.chain = {};
  lf.f = dst.l;
  lf.g = compose_functors(src.l, c);
  lf.q = loose_identity(dst.l.cod);
  if (!same_frame(lambda.frame, lf)) throw FrameMismatch("left morphism: lambda has wrong frame");
  for (const auto& v : validate_form(lambda).violations) rep.add("lambda-" + v.law, v.where);
  if (!rep.ok()) return rep;

  const EnrichedCategory& Cp = *dst.l.cod;
  const MonoidalBase& V = *Cp.base;
  for (int x = 0; x < src.j.dom->n; ++x)
    for (int y = 0; y < src.l.cod->n; ++y) {
      // sharp = c ; C'(lambda_x, cy) ; sharp'.
      Mor route = V.compose(
          c.hom(src.l(x), y),
          V.compose(detail::precomp(Cp, dst.l(x), c(src.l(x)), c(y), lambda.at({x})),
                    dst.sh(x, c(y))));
      if (route != src.sh(x, y))
        rep.add("left-morphism-compatibility", std::to_string(x) + "," + std::to_string(y));
    }
  return rep;
}

// Right-morphism (c, rho): c : C -> C' with l;c = l', rho : r => c;r'.
inline ValidationReport validate_right_morphism(const RelativeAdjunction& src,
                                                const RelativeAdjunction& dst,
                                                const EnrichedFunctor& c, const Form& rho) {
  ValidationReport rep;
  if (!same_functor(src.j, dst.j)) throw FrameMismatch("right morphism: roots differ");
  if (!same_functor(dst.l, compose_functors(src.l, c)))
    throw FrameMismatch("right morphism: l;c must equal l'");
  Frame rf;
  rf.chain = {};
  rf.f = src.r;
  rf.g = compose_functors(c, dst.r);
  rf.q = loose_identity(src.j.cod);
  if (!same_frame(rho.frame, rf)) throw FrameMismatch("right morphism: rho has wrong frame");
  for (const auto& v : validate_form(rho).violations) rep.add("rho-" + v.law, v.where);
  if (!rep.ok()) return rep;

  const EnrichedCategory& E = *src.j.cod;
  const MonoidalBase& V = *E.base;
  for (int x = 0; x < src.j.dom->n; ++x)
    for (int y = 0; y < src.l.cod->n; ++y) {
      // sharp ; E(jx, rho_y) = c ; sharp'.
      Mor lhs = V.compose(src.sh(x, y),
                          detail::postcomp(E, src.j(x), src.r(y), dst.r(c(y)), rho.at({y})));
      Mor rhs = V.compose(c.hom(src.l(x), y), dst.sh(x, c(y)));
      if (lhs != rhs)
        rep.add("right-morphism-compatibility", std::to_string(x) + "," + std::to_string(y));
    }
  return rep;
}

inline bool is_resolution(const RelativeAdjunction& adj, const RelativeMonad& T) {
  return same_monad(induced_monad(adj), T);
}

}  // namespace relkit
