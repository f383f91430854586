#pragma once
// Formal category theory over the equipment: objects of natural
// transformations, right lifts/extensions, weighted (co)limit checkers,
// pointwise left extensions and lifts, density, full faithfulness,
// left-composites (pointwise coends) and absoluteness.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <utility>

#include "relkit/dualize.hpp"
#include "relkit/enriched.hpp"

namespace relkit {

// ---------------------------------------------------------------------------
// Presheaves and objects of natural transformations
// ---------------------------------------------------------------------------

// A presheaf on Z: objects p(z) with a left Z-action Z(z',z) (x) p(z) -> p(z').
struct Presheaf {
  CatPtr Z;
  std::vector<int> objv;  // [z]
  std::vector<Mor> act;   // [z'*n + z]

  int obj(int z) const { return objv[static_cast<std::size_t>(z)]; }
  const Mor& action(int zp, int z) const {
    return act[static_cast<std::size_t>(zp) * Z->n + z];
  }
};

// The column p(-, y) of a distributor.
inline Presheaf column(const Distributor& p, int y) {
  Presheaf ph;
  ph.Z = p.left;
  for (int z = 0; z < p.left->n; ++z) ph.objv.push_back(p.obj(z, y));
  for (int zp = 0; zp < p.left->n; ++zp)
    for (int z = 0; z < p.left->n; ++z) ph.act.push_back(p.left_act(zp, z, y));
  return ph;
}

// Is psi_z : p(z) -> q(z) a natural family?
inline bool is_natural_family(const Presheaf& p, const Presheaf& q,
                              const std::vector<Mor>& psi) {
  const MonoidalBase& V = *p.Z->base;
  int n = p.Z->n;
  for (int zp = 0; zp < n; ++zp)
    for (int z = 0; z < n; ++z) {
      Mor l = V.compose(V.tensor_mor(V.identity(p.Z->hom(zp, z)), psi[static_cast<std::size_t>(z)]),
                        q.action(zp, z));
      Mor r = V.compose(p.action(zp, z), psi[static_cast<std::size_t>(zp)]);
      if (l != r) return false;
    }
  return true;
}

// The object of natural transformations <Z>(p, q) together with its counit
// family and (on set-like bases) the enumerated natural families indexing it.
struct NatObject {
  BasePtr V;
  Presheaf p, q;
  int value = -1;
  std::vector<Mor> counit;                  // [z] : p(z) (x) value -> q(z)
  std::vector<std::vector<Mor>> families;   // set-like only: families[k][z]

  // Factor a natural family lambda_z : p(z) (x) a -> q(z) through the counit,
  // returning the unique a -> value.
  Mor factor(const std::vector<Mor>& lambda, int a) const {
    const MonoidalBase& B = *V;
    if (B.set_like()) {
      Mor m{a, value, {}};
      m.data.resize(static_cast<std::size_t>(B.card(a)));
      for (int k = 0; k < B.card(a); ++k) {
        std::vector<Mor> psi;
        for (int z = 0; z < p.Z->n; ++z) {
          Mor col{p.obj(z), q.obj(z), {}};
          for (int i = 0; i < B.card(p.obj(z)); ++i)
            col.data.push_back(lambda[static_cast<std::size_t>(z)]
                                   .data[static_cast<std::size_t>(B.pair_index(p.obj(z), a, i, k))]);
          psi.push_back(std::move(col));
        }
        auto it = std::find(families.begin(), families.end(), psi);
        if (it == families.end())
          throw PreconditionFailed("factor: the family is not natural");
        m.data[static_cast<std::size_t>(k)] = static_cast<int>(it - families.begin());
      }
      return m;
    }
    if (B.hom_count(a, value) == 0)
      throw PreconditionFailed("factor: no morphism into the object of naturals");
    return B.the(a, value);
  }
};

inline NatObject nat_object(const Presheaf& p, const Presheaf& q,
                            std::uint64_t budget = kDefaultBudget) {
  if (!same_category(p.Z, q.Z)) throw FrameMismatch("nat_object: presheaf categories differ");
  const BasePtr& Vp = p.Z->base;
  const MonoidalBase& V = *Vp;
  if (!V.caps.nat_objects) throw CapabilityMissing("base has no objects of naturals");
  NatObject out;
  out.V = Vp;
  out.p = p;
  out.q = q;
  int n = p.Z->n;

  if (V.set_like()) {
    // Enumerate the natural families psi_z : p(z) -> q(z).
    std::uint64_t total = 1;
    std::vector<std::uint64_t> counts;
    for (int z = 0; z < n; ++z) {
      counts.push_back(V.hom_count(p.obj(z), q.obj(z)));
      total = sat_mul(total, counts.back());
    }
    if (total > budget)
      throw EnumerationBudgetExceeded(std::to_string(total) + " candidate families, cap " +
                                      std::to_string(budget));
    for (std::uint64_t it = 0; it < total; ++it) {
      std::uint64_t rem = it;
      std::vector<Mor> psi(static_cast<std::size_t>(n));
      for (std::size_t z = static_cast<std::size_t>(n); z-- > 0;) {
        psi[z] = V.hom_elem(p.obj(static_cast<int>(z)), q.obj(static_cast<int>(z)),
                            rem % counts[z]);
        rem /= counts[z];
      }
      if (is_natural_family(p, q, psi)) out.families.push_back(std::move(psi));
    }
    if (out.families.size() >= static_cast<std::size_t>(V.n_objects()))
      throw CardinalityOverflow("object of naturals has " +
                                std::to_string(out.families.size()) +
                                " elements, beyond the base carrier");
    out.value = static_cast<int>(out.families.size());
    for (int z = 0; z < n; ++z) {
      int pz = p.obj(z);
      Mor w{V.tensor_obj_checked(pz, out.value), q.obj(z), {}};
      w.data.resize(static_cast<std::size_t>(V.card(w.dom)));
      for (int i = 0; i < V.card(pz); ++i)
        for (int k = 0; k < out.value; ++k)
          w.data[static_cast<std::size_t>(V.pair_index(pz, out.value, i, k))] =
              out.families[static_cast<std::size_t>(k)][static_cast<std::size_t>(z)]
                  .data[static_cast<std::size_t>(i)];
      out.counit.push_back(std::move(w));
    }
    return out;
  }

  if (base_backend(V) == "bool") {
    // value = meet over z of p(z) => q(z).
    int v = 1;
    for (int z = 0; z < n; ++z)
      if (p.obj(z) > q.obj(z)) v = 0;
    out.value = v;
    for (int z = 0; z < n; ++z)
      out.counit.push_back(Mor{V.tensor_obj_checked(p.obj(z), v), q.obj(z), {}});
    return out;
  }
  throw CapabilityMissing("objects of naturals need a bool or set-like base");
}

// ---------------------------------------------------------------------------
// Right lifts and right extensions
// ---------------------------------------------------------------------------

struct RightLift {
  Distributor dist;           // q <| p, left = right(p), right = right(q)
  Form counit;                // p, (q <| p) => q
  std::vector<NatObject> nats;  // [y * right(q)->n + x]

  const NatObject& nat(int y, int x) const {
    return nats[static_cast<std::size_t>(y) * dist.right->n + x];
  }
};

// The right lift of q through p; both distributors share the left category Z.
inline RightLift right_lift(const Distributor& q, const Distributor& p,
                            std::uint64_t budget = kDefaultBudget) {
  if (!same_category(q.left, p.left))
    throw FrameMismatch("right_lift: distributors do not share the left category");
  const MonoidalBase& V = *q.left->base;
  const CatPtr& Z = q.left;
  const CatPtr& Y = p.right;
  const CatPtr& X = q.right;

  RightLift out;
  out.dist.left = Y;
  out.dist.right = X;
  out.dist.name = q.name + "<|" + p.name;
  out.nats.reserve(static_cast<std::size_t>(Y->n) * X->n);
  for (int y = 0; y < Y->n; ++y)
    for (int x = 0; x < X->n; ++x) {
      out.nats.push_back(nat_object(column(p, y), column(q, x), budget));
      out.dist.objv.push_back(out.nats.back().value);
    }

  // Left action: Y(y',y) (x) r(y,x) -> r(y',x), the unique factorization of
  // (right action of p (x) 1) ; counit through the counit at (y', x).
  for (int yp = 0; yp < Y->n; ++yp)
    for (int y = 0; y < Y->n; ++y)
      for (int x = 0; x < X->n; ++x) {
        int a = V.tensor_obj_checked(Y->hom(yp, y), out.dist.obj(y, x));
        std::vector<Mor> fam;
        for (int z = 0; z < Z->n; ++z)
          fam.push_back(V.compose(
              V.tensor_mor(p.right_act(z, yp, y), V.identity(out.dist.obj(y, x))),
              out.nat(y, x).counit[static_cast<std::size_t>(z)]));
        out.dist.lact.push_back(out.nat(yp, x).factor(fam, a));
      }

  // Right action: r(y,x) (x) X(x,x') -> r(y,x').
  for (int y = 0; y < Y->n; ++y)
    for (int x = 0; x < X->n; ++x)
      for (int xp = 0; xp < X->n; ++xp) {
        int a = V.tensor_obj_checked(out.dist.obj(y, x), X->hom(x, xp));
        std::vector<Mor> fam;
        for (int z = 0; z < Z->n; ++z)
          fam.push_back(V.compose(
              V.tensor_mor(out.nat(y, x).counit[static_cast<std::size_t>(z)],
                           V.identity(X->hom(x, xp))),
              q.right_act(z, x, xp)));
        out.dist.ract.push_back(out.nat(y, xp).factor(fam, a));
      }

  out.counit.frame.chain = {p, out.dist};
  out.counit.frame.f = identity_functor(Z);
  out.counit.frame.g = identity_functor(X);
  out.counit.frame.q = q;
  out.counit.name = "counit(" + out.dist.name + ")";
  out.counit.frame.tuples().for_each([&](const std::vector<int>& t) {
    out.counit.comps.push_back(out.nat(t[1], t[2]).counit[static_cast<std::size_t>(t[0])]);
  });
  return out;
}

struct RightExtension {
  Distributor dist;  // p |> q
  Form counit;       // (p |> q), p => q
};

// The right extension of q along p; both distributors share the right category.
inline RightExtension right_extension(const Distributor& p, const Distributor& q,
                                      std::uint64_t budget = kDefaultBudget) {
  if (!same_category(q.right, p.right))
    throw FrameMismatch("right_extension: distributors do not share the right category");
  RightLift rl = right_lift(op_distributor(q), op_distributor(p), budget);
  RightExtension out;
  out.dist = op_distributor(rl.dist);
  out.counit = op_form(rl.counit);
  return out;
}

// ---------------------------------------------------------------------------
// Weighted (co)limit checkers
// ---------------------------------------------------------------------------

struct CylinderCheck {
  bool verdict = false;
  std::vector<Mor> comparison;  // canonical comparisons, row-major
  std::string failure;          // empty when the verdict is true
};

// Does the cylinder lambda : p => X(f, c) exhibit c as the p-weighted colimit
// of f? Verdict: the induced X(c, 1) -> X(f, 1) <| p is componentwise
// invertible.
inline CylinderCheck check_weighted_colimit(const Distributor& p, const EnrichedFunctor& f,
                                            const EnrichedFunctor& c, const Form& lambda,
                                            std::uint64_t budget = kDefaultBudget) {
  const CatPtr& X = f.cod;
  if (!same_category(c.cod, X) || !same_category(p.left, f.dom) ||
      !same_category(p.right, c.dom))
    throw FrameMismatch("check_weighted_colimit: boundary categories do not match");
  if (lambda.frame.n() != 1 || !same_distributor(lambda.frame.chain[0], p) ||
      !same_functor(lambda.frame.f, f) || !same_functor(lambda.frame.g, c) ||
      !same_distributor(lambda.frame.q, loose_identity(X)))
    throw FrameMismatch("check_weighted_colimit: cylinder has the wrong frame");

  CylinderCheck out;
  if (auto rep = validate_form(lambda); !rep.ok()) {
    out.failure = "cylinder is not a form: " + rep.violations.front().law;
    return out;
  }

  const MonoidalBase& V = *X->base;
  RightLift rl = right_lift(restrict(loose_identity(X), f, identity_functor(X)), p, budget);
  out.verdict = true;
  for (int y = 0; y < p.right->n; ++y)
    for (int x = 0; x < X->n; ++x) {
      int a = X->hom(c(y), x);
      std::vector<Mor> fam;
      for (int z = 0; z < p.left->n; ++z)
        fam.push_back(V.compose(V.tensor_mor(lambda.at({z, y}), V.identity(a)),
                                X->cmp(f(z), c(y), x)));
      Mor cmpn = rl.nat(y, x).factor(fam, a);
      if (!is_invertible(V, cmpn, budget) && out.verdict) {
        out.verdict = false;
        out.failure = "comparison not invertible at (" + p.right->obj_name(y) + "," +
                      X->obj_name(x) + ")";
      }
      out.comparison.push_back(std::move(cmpn));
    }
  return out;
}

// Does mu : p => X(c, f) exhibit c as the p-weighted limit of f? Checked as
// the dual colimit.
inline CylinderCheck check_weighted_limit(const Distributor& p, const EnrichedFunctor& f,
                                          const EnrichedFunctor& c, const Form& mu,
                                          std::uint64_t budget = kDefaultBudget) {
  return check_weighted_colimit(op_distributor(p), op_functor(f), op_functor(c), op_form(mu),
                                budget);
}

// The cylinder of the left extension candidate g along j with unit pi
// (a nullary form f => j;g), reduced to the E(j,1)-weighted colimit of f.
inline CylinderCheck check_left_extension(const EnrichedFunctor& j, const EnrichedFunctor& f,
                                          const EnrichedFunctor& g, const Form& pi,
                                          std::uint64_t budget = kDefaultBudget) {
  const CatPtr& E = j.cod;
  const CatPtr& X = f.cod;
  if (!same_category(g.dom, E) || !same_category(g.cod, X) || !same_category(j.dom, f.dom))
    throw FrameMismatch("check_left_extension: boundary categories do not match");
  if (pi.frame.n() != 0 || !same_functor(pi.frame.f, f) ||
      !same_functor(pi.frame.g, compose_functors(j, g)) ||
      !same_distributor(pi.frame.q, loose_identity(X)))
    throw FrameMismatch("check_left_extension: unit has the wrong frame");
  const MonoidalBase& V = *X->base;
  Distributor w = restrict(loose_identity(E), j, identity_functor(E));
  Form lam;
  lam.frame.chain = {w};
  lam.frame.f = f;
  lam.frame.g = g;
  lam.frame.q = loose_identity(X);
  lam.name = "ext-cylinder";
  lam.frame.tuples().for_each([&](const std::vector<int>& t) {
    int a = t[0], e = t[1];
    lam.comps.push_back(V.compose(V.tensor_mor(pi.at({a}), g.hom(j(a), e)),
                                  X->cmp(f(a), g(j(a)), g(e))));
  });
  return check_weighted_colimit(w, f, g, lam, budget);
}

// Does eta : j => l;r (a nullary form) exhibit l as the left lift of j through
// r? Verdict: C(lx, c) -> E(jx, rc) is invertible for all x, c.
inline CylinderCheck check_left_lift(const EnrichedFunctor& j, const EnrichedFunctor& r,
                                     const EnrichedFunctor& l, const Form& eta,
                                     std::uint64_t budget = kDefaultBudget) {
  const CatPtr& E = j.cod;
  const CatPtr& C = r.dom;
  if (!same_category(r.cod, E) || !same_category(l.dom, j.dom) || !same_category(l.cod, C))
    throw FrameMismatch("check_left_lift: boundary categories do not match");
  if (eta.frame.n() != 0 || !same_functor(eta.frame.f, j) ||
      !same_functor(eta.frame.g, compose_functors(l, r)) ||
      !same_distributor(eta.frame.q, loose_identity(E)))
    throw FrameMismatch("check_left_lift: unit has the wrong frame");
  const MonoidalBase& V = *E->base;
  CylinderCheck out;
  if (auto rep = validate_form(eta); !rep.ok()) {
    out.failure = "unit is not a form: " + rep.violations.front().law;
    return out;
  }
  out.verdict = true;
  for (int x = 0; x < j.dom->n; ++x)
    for (int c = 0; c < C->n; ++c) {
      Mor cmpn = V.compose(
          r.hom(l(x), c),
          V.compose(V.tensor_mor(eta.at({x}), V.identity(E->hom(r(l(x)), r(c)))),
                    E->cmp(j(x), r(l(x)), r(c))));
      if (!is_invertible(V, cmpn, budget) && out.verdict) {
        out.verdict = false;
        out.failure = "comparison not invertible at (" + j.dom->obj_name(x) + "," +
                      C->obj_name(c) + ")";
      }
      out.comparison.push_back(std::move(cmpn));
    }
  return out;
}

inline bool is_dense(const EnrichedFunctor& j, std::uint64_t budget = kDefaultBudget) {
  const CatPtr& E = j.cod;
  EnrichedFunctor ide = identity_functor(E);
  Distributor w = restrict(loose_identity(E), j, ide);
  return check_weighted_colimit(w, j, ide, cartesian_form(loose_identity(E), j, ide), budget)
      .verdict;
}

inline bool is_fully_faithful(const EnrichedFunctor& j, std::uint64_t budget = kDefaultBudget) {
  const MonoidalBase& V = *j.dom->base;
  for (int x = 0; x < j.dom->n; ++x)
    for (int y = 0; y < j.dom->n; ++y)
      if (!is_invertible(V, j.hom(x, y), budget)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Left composites (pointwise coends)
// ---------------------------------------------------------------------------

struct LeftComposite {
  Distributor dist;  // p (.) q
  Form unit;         // p, q => p (.) q
};

namespace detail {

// Per-cell coend data on a set-like base: the quotient of the disjoint sum
// over b of p(a,b) x q(b,c) by the middle actions.
struct CoendCell {
  std::vector<int> offsets;              // [b] into the flattened sum
  std::vector<int> cls;                  // [flat element] -> class index
  std::vector<std::pair<int, int>> rep;  // [class] -> (b, element), least flat
  int n_classes = 0;
};

inline CoendCell coend_cell(const Distributor& p, const Distributor& q, int a, int c) {
  const MonoidalBase& V = *p.left->base;
  const CatPtr& B = p.right;
  CoendCell cell;
  int total = 0;
  for (int b = 0; b < B->n; ++b) {
    cell.offsets.push_back(total);
    total += V.card(V.tensor_obj_checked(p.obj(a, b), q.obj(b, c)));
  }
  std::vector<int> parent(static_cast<std::size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  auto unite = [&](int u, int v) {
    u = find(u);
    v = find(v);
    if (u != v) parent[static_cast<std::size_t>(std::max(u, v))] = std::min(u, v);
  };
  for (int b = 0; b < B->n; ++b)
    for (int bp = 0; bp < B->n; ++bp) {
      // On p(a,b) (x) B(b,b') (x) q(b',c).
      Mor m1 = V.tensor_mor(p.right_act(a, b, bp), V.identity(q.obj(bp, c)));
      Mor m2 = V.tensor_mor(V.identity(p.obj(a, b)), q.left_act(b, bp, c));
      for (int e = 0; e < V.card(m1.dom); ++e)
        unite(cell.offsets[static_cast<std::size_t>(bp)] + m1.data[static_cast<std::size_t>(e)],
              cell.offsets[static_cast<std::size_t>(b)] + m2.data[static_cast<std::size_t>(e)]);
    }
  cell.cls.resize(static_cast<std::size_t>(total));
  for (int e = 0; e < total; ++e) {
    int root = find(e);
    if (root == e) {
      int b = 0;
      while (b + 1 < B->n && cell.offsets[static_cast<std::size_t>(b) + 1] <= e) ++b;
      cell.rep.emplace_back(b, e - cell.offsets[static_cast<std::size_t>(b)]);
      cell.cls[static_cast<std::size_t>(e)] = cell.n_classes++;
    } else {
      cell.cls[static_cast<std::size_t>(e)] = cell.cls[static_cast<std::size_t>(root)];
    }
  }
  return cell;
}

}  // namespace detail

inline LeftComposite left_composite(const Distributor& p, const Distributor& q) {
  if (!same_category(p.right, q.left))
    throw FrameMismatch("left_composite: middle categories differ");
  const MonoidalBase& V = *p.left->base;
  if (!V.caps.coend_objects) throw CapabilityMissing("base has no coend objects");
  const CatPtr& A = p.left;
  const CatPtr& B = p.right;
  const CatPtr& C = q.right;
  LeftComposite out;
  out.dist.left = A;
  out.dist.right = C;
  out.dist.name = p.name + "(.)" + q.name;

  if (base_backend(V) == "bool") {
    for (int a = 0; a < A->n; ++a)
      for (int c = 0; c < C->n; ++c) {
        int v = 0;
        for (int b = 0; b < B->n; ++b) v = std::max(v, std::min(p.obj(a, b), q.obj(b, c)));
        out.dist.objv.push_back(v);
      }
    for (int ap = 0; ap < A->n; ++ap)
      for (int a = 0; a < A->n; ++a)
        for (int c = 0; c < C->n; ++c)
          out.dist.lact.push_back(Mor{
              V.tensor_obj_checked(A->hom(ap, a), out.dist.obj(a, c)), out.dist.obj(ap, c), {}});
    for (int a = 0; a < A->n; ++a)
      for (int c = 0; c < C->n; ++c)
        for (int cp = 0; cp < C->n; ++cp)
          out.dist.ract.push_back(Mor{
              V.tensor_obj_checked(out.dist.obj(a, c), C->hom(c, cp)), out.dist.obj(a, cp), {}});
    out.unit.frame.chain = {p, q};
    out.unit.frame.f = identity_functor(A);
    out.unit.frame.g = identity_functor(C);
    out.unit.frame.q = out.dist;
    out.unit.name = "unit(" + out.dist.name + ")";
    out.unit.frame.tuples().for_each([&](const std::vector<int>& t) {
      out.unit.comps.push_back(Mor{
          V.tensor_obj_checked(p.obj(t[0], t[1]), q.obj(t[1], t[2])), out.dist.obj(t[0], t[2]), {}});
    });
    return out;
  }

  if (!V.set_like()) throw CapabilityMissing("coend objects need a bool or set-like base");

  std::vector<detail::CoendCell> cells;
  cells.reserve(static_cast<std::size_t>(A->n) * C->n);
  auto cell = [&](int a, int c) -> const detail::CoendCell& {
    return cells[static_cast<std::size_t>(a) * C->n + c];
  };
  for (int a = 0; a < A->n; ++a)
    for (int c = 0; c < C->n; ++c) {
      cells.push_back(detail::coend_cell(p, q, a, c));
      if (cells.back().n_classes >= V.n_objects())
        throw CardinalityOverflow("coend has " + std::to_string(cells.back().n_classes) +
                                  " classes, beyond the base carrier");
      out.dist.objv.push_back(cells.back().n_classes);
    }

  for (int ap = 0; ap < A->n; ++ap)
    for (int a = 0; a < A->n; ++a)
      for (int c = 0; c < C->n; ++c) {
        int h = A->hom(ap, a);
        Mor m{V.tensor_obj_checked(h, out.dist.obj(a, c)), out.dist.obj(ap, c), {}};
        m.data.resize(static_cast<std::size_t>(V.card(m.dom)));
        for (int mi = 0; mi < V.card(h); ++mi)
          for (int k = 0; k < out.dist.obj(a, c); ++k) {
            auto [b, e] = cell(a, c).rep[static_cast<std::size_t>(k)];
            Mor step = V.tensor_mor(p.left_act(ap, a, b), V.identity(q.obj(b, c)));
            int src = V.pair_index(h, V.tensor_obj_checked(p.obj(a, b), q.obj(b, c)), mi, e);
            int img = step.data[static_cast<std::size_t>(src)];
            m.data[static_cast<std::size_t>(V.pair_index(h, out.dist.obj(a, c), mi, k))] =
                cell(ap, c).cls[static_cast<std::size_t>(cell(ap, c).offsets[static_cast<std::size_t>(b)] + img)];
          }
        out.dist.lact.push_back(std::move(m));
      }

  for (int a = 0; a < A->n; ++a)
    for (int c = 0; c < C->n; ++c)
      for (int cp = 0; cp < C->n; ++cp) {
        int h = C->hom(c, cp);
        Mor m{V.tensor_obj_checked(out.dist.obj(a, c), h), out.dist.obj(a, cp), {}};
        m.data.resize(static_cast<std::size_t>(V.card(m.dom)));
        for (int k = 0; k < out.dist.obj(a, c); ++k)
          for (int mi = 0; mi < V.card(h); ++mi) {
            auto [b, e] = cell(a, c).rep[static_cast<std::size_t>(k)];
            Mor step = V.tensor_mor(V.identity(p.obj(a, b)), q.right_act(b, c, cp));
            int src = V.pair_index(V.tensor_obj_checked(p.obj(a, b), q.obj(b, c)), h, e, mi);
            int img = step.data[static_cast<std::size_t>(src)];
            m.data[static_cast<std::size_t>(V.pair_index(out.dist.obj(a, c), h, k, mi))] =
                cell(a, cp).cls[static_cast<std::size_t>(cell(a, cp).offsets[static_cast<std::size_t>(b)] + img)];
          }
        out.dist.ract.push_back(std::move(m));
      }

  out.unit.frame.chain = {p, q};
  out.unit.frame.f = identity_functor(A);
  out.unit.frame.g = identity_functor(C);
  out.unit.frame.q = out.dist;
  out.unit.name = "unit(" + out.dist.name + ")";
  out.unit.frame.tuples().for_each([&](const std::vector<int>& t) {
    int a = t[0], b = t[1], c = t[2];
    Mor u{V.tensor_obj_checked(p.obj(a, b), q.obj(b, c)), out.dist.obj(a, c), {}};
    for (int e = 0; e < V.card(u.dom); ++e)
      u.data.push_back(
          cell(a, c).cls[static_cast<std::size_t>(cell(a, c).offsets[static_cast<std::size_t>(b)] + e)]);
    out.unit.comps.push_back(std::move(u));
  });
  return out;
}

// Is the colimit exhibited by lambda : p => X(f, c) absolute relative to j,
// i.e. preserved by E(j, 1)? Verdict: E(j,f) (.) p -> E(j, c-) invertible.
inline bool is_j_absolute(const EnrichedFunctor& j, const Distributor& p,
                          const EnrichedFunctor& f, const EnrichedFunctor& c,
                          const Form& lambda, std::uint64_t budget = kDefaultBudget) {
  const CatPtr& E = f.cod;
  if (!same_category(j.cod, E))
    throw FrameMismatch("is_j_absolute: j must land in the colimit's category");
  const MonoidalBase& V = *E->base;
  if (auto rep = validate_form(lambda); !rep.ok())
    throw PreconditionFailed("is_j_absolute: cylinder is not a form");
  LeftComposite lc = left_composite(restrict(loose_identity(E), j, f), p);
  for (int a = 0; a < j.dom->n; ++a)
    for (int y = 0; y < p.right->n; ++y) {
      int target = E->hom(j(a), c(y));
      Mor cmpn{lc.dist.obj(a, y), target, {}};
      if (V.set_like()) {
        cmpn.data.resize(static_cast<std::size_t>(V.card(cmpn.dom)));
        // The family E(ja, fb) (x) p(b, y) -> E(ja, cy) through the quotient.
        TupleSpace ts = lc.unit.frame.tuples();
        std::vector<int> seen(static_cast<std::size_t>(V.card(cmpn.dom)), 0);
        for (int b = 0; b < p.left->n; ++b) {
          Mor fam = V.compose(
              V.tensor_mor(V.identity(E->hom(j(a), f(b))), lambda.at({b, y})),
              E->cmp(j(a), f(b), c(y)));
          const Mor& u = lc.unit.at({a, b, y});
          for (int e = 0; e < V.card(fam.dom); ++e) {
            cmpn.data[static_cast<std::size_t>(u.data[static_cast<std::size_t>(e)])] =
                fam.data[static_cast<std::size_t>(e)];
            seen[static_cast<std::size_t>(u.data[static_cast<std::size_t>(e)])] = 1;
          }
        }
        (void)ts;
        for (int s : seen)
          if (!s) throw PreconditionFailed("is_j_absolute: quotient class without preimage");
      } else if (!V.is_valid(cmpn)) {
        return false;  // thin base: no comparison morphism at all
      }
      if (!is_invertible(V, cmpn, budget)) return false;
    }
  return true;
}

}  // namespace relkit
