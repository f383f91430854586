#pragma once
// Relative comonads and coadjunctions. Everything here is implemented by
// transport along the dualization of the enriched layer: a comonad is exactly
// a monad in the opposite equipment, so validation and the co-Kleisli and
// co-Eilenberg-Moore constructions reuse the monad-side code verbatim.

#include "relkit/algebra.hpp"
#include "relkit/dualize.hpp"

namespace relkit {

// Compact-form relative comonad: a coroot i : Z -> V, carrier objects d,
// counits eps_x : I -> V(dx, ix) and coextensions
// ddag_{x,y} : V(dx, iy) -> V(dx, dy).
struct RelativeComonad {
  EnrichedFunctor i;
  std::string name;
  std::vector<int> obj;
  std::vector<Mor> counit;  // [x]
  std::vector<Mor> coext;   // [x*n + y]

  int n() const { return i.dom->n; }
  int d(int x) const { return obj[static_cast<std::size_t>(x)]; }
  const Mor& eps(int x) const { return counit[static_cast<std::size_t>(x)]; }
  const Mor& ddag(int x, int y) const {
    return coext[static_cast<std::size_t>(x) * n() + y];
  }
};

// The same data read as a monad relative to i^op. Involutive up to structural
// equality: indices of the extension table are transposed both ways.
inline RelativeMonad comonad_to_op_monad(const RelativeComonad& C) {
  RelativeMonad T;
  T.j = op_functor(C.i);
  T.name = C.name + "^op";
  T.obj = C.obj;
  T.unit = C.counit;
  int n = C.n();
  T.ext.resize(C.coext.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      T.ext[static_cast<std::size_t>(x) * n + y] = C.ddag(y, x);
  return T;
}

inline RelativeComonad monad_to_op_comonad(const RelativeMonad& T) {
  RelativeComonad C;
  C.i = op_functor(T.j);
  C.name = T.name + "^op";
  C.obj = T.obj;
  C.counit = T.unit;
  int n = T.n();
  C.coext.resize(T.ext.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      C.coext[static_cast<std::size_t>(x) * n + y] = T.dag(y, x);
  return C;
}

namespace detail {

// Rename the monad-side laws of a dualized validation and transpose the
// object tuples back to comonad order.
inline ValidationReport co_translate(const ValidationReport& rep) {
  auto law = [](std::string s) {
    auto sub = [&](const std::string& from, const std::string& to) {
      std::size_t p = s.find(from);
      if (p != std::string::npos) s = s.substr(0, p) + to + s.substr(p + from.size());
    };
    sub("monad-", "comonad-");
    sub("em-algebra", "em-coalgebra");
    sub("unit", "counit");
    sub("extension", "coextension");
    return s;
  };
  auto where = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t p = s.find(','); p != std::string::npos; p = s.find(',', start)) {
      parts.push_back(s.substr(start, p - start));
      start = p + 1;
    }
    parts.push_back(s.substr(start));
    std::string out;
    for (std::size_t k = parts.size(); k-- > 0;) {
      out += parts[k];
      if (k) out += ",";
    }
    return out;
  };
  ValidationReport out;
  for (const auto& v : rep.violations) out.add(law(v.law), where(v.where));
  return out;
}

}  // namespace detail

inline ValidationReport validate_relative_comonad(const RelativeComonad& C) {
  return detail::co_translate(validate_relative_monad(comonad_to_op_monad(C)));
}

inline RelativeComonad trivial_comonad(const EnrichedFunctor& i) {
  return monad_to_op_comonad(trivial_monad(op_functor(i)));
}

inline EnrichedFunctor derive_underlying_cofunctor(const RelativeComonad& C) {
  return op_functor(derive_underlying_functor(comonad_to_op_monad(C)));
}

// Co-Kleisli: coKl(C)(x, y) = V(dx, iy), with counits as identities and
// composition through the coextension.
struct CoKleisliResult {
  CatPtr cat;
  EnrichedFunctor incl;
};

inline CoKleisliResult co_kleisli(const RelativeComonad& C) {
  KleisliResult kl = kleisli(comonad_to_op_monad(C));
  CoKleisliResult out;
  out.cat = op_category(kl.cat);
  out.incl = op_functor(kl.incl);
  return out;
}

// Coalgebras and the co-Eilenberg-Moore category.
struct EMCoalgebra {
  int carrier = -1;      // e in ob V
  std::vector<Mor> ext;  // [x] : V(e, ix) -> V(e, dx)
};

inline ValidationReport validate_em_coalgebra(const RelativeComonad& C,
                                              const EMCoalgebra& coalg) {
  EMAlgebra a{coalg.carrier, coalg.ext};
  return detail::co_translate(validate_em_algebra(comonad_to_op_monad(C), a));
}

inline std::vector<EMCoalgebra> enumerate_em_coalgebras(const RelativeComonad& C,
                                                        std::uint64_t budget = kDefaultBudget) {
  std::vector<EMCoalgebra> out;
  for (const EMAlgebra& a : enumerate_em_algebras(comonad_to_op_monad(C), budget))
    out.push_back(EMCoalgebra{a.carrier, a.ext});
  return out;
}

struct CoEMCategoryResult {
  CatPtr cat;
  std::vector<EMCoalgebra> objects;
  EnrichedFunctor proj;
};

inline CoEMCategoryResult co_em(const RelativeComonad& C,
                                std::uint64_t budget = kDefaultBudget) {
  EMCategoryResult em = em_category(comonad_to_op_monad(C), budget);
  CoEMCategoryResult out;
  out.cat = op_category(em.cat);
  for (const EMAlgebra& a : em.objects) out.objects.push_back(EMCoalgebra{a.carrier, a.ext});
  out.proj = op_functor(em.proj);
  return out;
}

// Relative coadjunction: coroot i : Z -> V with l : Z -> C, r : C -> V and
// tables sharp/flat [x*|C| + y] translating C(y, lx) <-> V(ry, ix).
struct RelativeCoadjunction {
  EnrichedFunctor i;
  EnrichedFunctor l;
  EnrichedFunctor r;
  std::string name;
  std::vector<Mor> sharp;
  std::vector<Mor> flat;
};

inline RelativeAdjunction coadjunction_to_op_adjunction(const RelativeCoadjunction& co) {
  RelativeAdjunction adj;
  adj.j = op_functor(co.i);
  adj.l = op_functor(co.l);
  adj.r = op_functor(co.r);
  adj.name = co.name + "^op";
  adj.sharp = co.sharp;
  adj.flat = co.flat;
  return adj;
}

inline ValidationReport validate_coadjunction(const RelativeCoadjunction& co) {
  return validate_adjunction(coadjunction_to_op_adjunction(co));
}

inline RelativeComonad induced_comonad(const RelativeCoadjunction& co) {
  return monad_to_op_comonad(induced_monad(coadjunction_to_op_adjunction(co)));
}

inline bool is_coresolution(const RelativeCoadjunction& co, const RelativeComonad& C) {
  return is_resolution(coadjunction_to_op_adjunction(co), comonad_to_op_monad(C));
}

}  // namespace relkit
