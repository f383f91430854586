#pragma once
// Finite strict monoidal categories presented by tables, plus the two
// built-in backends (Boolean quantale, FinSet skeleton) and the small
// (co)limit primitives the rest of the kernel needs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace relkit {

// ---------------------------------------------------------------------------
// Errors and validation reports
// ---------------------------------------------------------------------------

struct RelkitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedTables : RelkitError {
  explicit MalformedTables(const std::string& m) : RelkitError("MalformedTables: " + m) {}
};
struct CapabilityMissing : RelkitError {
  explicit CapabilityMissing(const std::string& m) : RelkitError("CapabilityMissing: " + m) {}
};
struct NotParallel : RelkitError {
  explicit NotParallel(const std::string& m) : RelkitError("NotParallel: " + m) {}
};
struct CardinalityOverflow : RelkitError {
  explicit CardinalityOverflow(const std::string& m) : RelkitError("CardinalityOverflow: " + m) {}
};
struct FrameMismatch : RelkitError {
  explicit FrameMismatch(const std::string& m) : RelkitError("FrameMismatch: " + m) {}
};
struct EnumerationBudgetExceeded : RelkitError {
  explicit EnumerationBudgetExceeded(const std::string& m)
      : RelkitError("EnumerationBudgetExceeded: " + m) {}
};
struct LawViolation : RelkitError {
  explicit LawViolation(const std::string& m) : RelkitError("LawViolation: " + m) {}
};
struct PreconditionFailed : RelkitError {
  explicit PreconditionFailed(const std::string& m) : RelkitError("PreconditionFailed: " + m) {}
};

struct Violation {
  std::string law;    // name of the violated law
  std::string where;  // witnessing indices
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> skipped;  // law checks skipped because the space exceeded the budget

  bool ok() const { return violations.empty(); }
  void add(std::string law, std::string where) {
    violations.push_back({std::move(law), std::move(where)});
  }
  void skip(std::string what) { skipped.push_back(std::move(what)); }
  void merge(const ValidationReport& o) {
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    skipped.insert(skipped.end(), o.skipped.begin(), o.skipped.end());
  }
  std::string str() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.law << " @ " << v.where << "\n";
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Morphisms of the base
// ---------------------------------------------------------------------------

// A base morphism carries its endpoints and a backend-specific payload:
//   - table backends: {index into the hom table}
//   - Bool quantale:  {} (hom-sets are subsingletons)
//   - FinSet:         the image list of the function, one entry per element
struct Mor {
  int dom = -1;
  int cod = -1;
  std::vector<int> data;

  bool operator==(const Mor&) const = default;
  bool operator<(const Mor& o) const {
    return std::tie(dom, cod, data) < std::tie(o.dom, o.cod, o.data);
  }
};

struct Capabilities {
  bool equalizers = false;
  bool coequalizers = false;
  bool nat_objects = false;
  bool coend_objects = false;
  bool morphism_enumeration = false;
};

inline constexpr std::uint64_t kCountSaturated = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kDefaultBudget = 1000000;

// n^m with saturation.
inline std::uint64_t sat_pow(std::uint64_t n, std::uint64_t m) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (n != 0 && r > kCountSaturated / n) return kCountSaturated;
    r *= n;
  }
  return r;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kCountSaturated / a) return kCountSaturated;
  return a * b;
}

// ---------------------------------------------------------------------------
// MonoidalBase
// ---------------------------------------------------------------------------

class MonoidalBase {
 public:
  Capabilities caps;

  virtual ~MonoidalBase() = default;

  virtual std::string kind() const = 0;       // "bool" | "finset" | "table"
  virtual int n_objects() const = 0;
  virtual std::string object_name(int x) const { return std::to_string(x); }

  // Hom-set size, saturating at kCountSaturated.
  virtual std::uint64_t hom_count(int a, int b) const = 0;
  // k-th morphism a -> b in the canonical order (k < hom_count(a, b)).
  virtual Mor hom_elem(int a, int b, std::uint64_t k) const = 0;
  // Canonical rank of a morphism; saturates when the rank does not fit.
  virtual std::uint64_t hom_index(const Mor& f) const = 0;
  virtual bool is_valid(const Mor& f) const = 0;

  virtual Mor identity(int x) const = 0;
  // Diagrammatic order: f : a -> b, g : b -> c, result g.f : a -> c.
  virtual Mor compose(const Mor& f, const Mor& g) const = 0;

  virtual int unit_object() const = 0;
  // Returns -1 when the tensor falls outside the carrier (partial FinSet tensor).
  virtual int tensor_obj(int a, int b) const = 0;
  virtual Mor tensor_mor(const Mor& f, const Mor& g) const = 0;

  // Set-like bases (FinSet skeleta and their duals) expose their objects as
  // finite sets {0..card-1} and a pairing of elements realizing the tensor.
  virtual bool set_like() const { return false; }
  virtual int card(int x) const {
    (void)x;
    throw CapabilityMissing("base is not set-like");
  }
  // Element of a (x) b formed from i in a and j in b.
  virtual int pair_index(int a, int b, int i, int j) const {
    (void)a, (void)b, (void)i, (void)j;
    throw CapabilityMissing("base is not set-like");
  }
  // The dualized base shares everything but the tensor; overridden by the
  // op-wrapper so that double dualization unwraps on the nose.
  virtual std::shared_ptr<const MonoidalBase> op_inner() const { return nullptr; }

  bool in_range(int x) const { return x >= 0 && x < n_objects(); }

  bool thin() const {
    for (int a = 0; a < n_objects(); ++a)
      for (int b = 0; b < n_objects(); ++b)
        if (hom_count(a, b) > 1) return false;
    return true;
  }

  // The unique morphism a -> b; throws when the hom-set is not a singleton.
  Mor the(int a, int b) const {
    if (hom_count(a, b) != 1)
      throw MalformedTables("hom(" + object_name(a) + "," + object_name(b) +
                            ") is not a singleton");
    return hom_elem(a, b, 0);
  }

  int tensor_obj_checked(int a, int b) const {
    int t = tensor_obj(a, b);
    if (t < 0)
      throw CardinalityOverflow("tensor of " + object_name(a) + " and " + object_name(b) +
                                " is outside the carrier");
    return t;
  }

  // Tensor of a list of objects (empty list = unit).
  int tensor_objs(const std::vector<int>& xs) const {
    int acc = unit_object();
    for (int x : xs) acc = tensor_obj_checked(acc, x);
    return acc;
  }

  // Tensor of a list of morphisms (empty list = identity on the unit).
  Mor tensor_mors(const std::vector<Mor>& fs) const {
    Mor acc = identity(unit_object());
    for (const Mor& f : fs) acc = tensor_mor(acc, f);
    return acc;
  }
};

using BasePtr = std::shared_ptr<const MonoidalBase>;

// Iterate over hom(a, b); throws EnumerationBudgetExceeded when the hom-set
// exceeds the budget.
template <typename Fn>
void for_each_hom(const MonoidalBase& V, int a, int b, std::uint64_t budget, Fn&& fn) {
  std::uint64_t n = V.hom_count(a, b);
  if (n > budget)
    throw EnumerationBudgetExceeded("hom(" + V.object_name(a) + "," + V.object_name(b) +
                                    ") has " + std::to_string(n) + " candidates, budget " +
                                    std::to_string(budget));
  for (std::uint64_t k = 0; k < n; ++k) fn(V.hom_elem(a, b, k));
}

// ---------------------------------------------------------------------------
// Boolean quantale: objects {bottom = 0, top = 1}, tensor = meet, unit = top
// ---------------------------------------------------------------------------

class BoolBase final : public MonoidalBase {
 public:
  BoolBase() {
    caps = {true, true, true, true, true};
  }
  std::string kind() const override { return "bool"; }
  int n_objects() const override { return 2; }
  std::string object_name(int x) const override { return x == 0 ? "bot" : "top"; }

  std::uint64_t hom_count(int a, int b) const override { return a <= b ? 1 : 0; }
  Mor hom_elem(int a, int b, std::uint64_t k) const override {
    if (a > b || k != 0) throw MalformedTables("no such Bool morphism");
    return Mor{a, b, {}};
  }
  std::uint64_t hom_index(const Mor&) const override { return 0; }
  bool is_valid(const Mor& f) const override {
    return in_range(f.dom) && in_range(f.cod) && f.dom <= f.cod && f.data.empty();
  }

  Mor identity(int x) const override { return Mor{x, x, {}}; }
  Mor compose(const Mor& f, const Mor& g) const override {
    if (f.cod != g.dom) throw MalformedTables("Bool compose: type mismatch");
    return Mor{f.dom, g.cod, {}};
  }

  int unit_object() const override { return 1; }
  int tensor_obj(int a, int b) const override { return std::min(a, b); }
  Mor tensor_mor(const Mor& f, const Mor& g) const override {
    return Mor{std::min(f.dom, g.dom), std::min(f.cod, g.cod), {}};
  }
};

// ---------------------------------------------------------------------------
// FinSet skeleton: objects 0..max_card, morphisms = functions as image lists,
// tensor m (x) n = m*n with the pairing <i, j> = i*n + j
// ---------------------------------------------------------------------------

class FinSetBase final : public MonoidalBase {
 public:
  explicit FinSetBase(int max_card) : max_card_(max_card) {
    if (max_card < 1) throw MalformedTables("finset skeleton requires max_card >= 1");
    caps = {true, true, true, true, true};
  }

  int max_card() const { return max_card_; }
  std::string kind() const override { return "finset"; }
  int n_objects() const override { return max_card_ + 1; }

  std::uint64_t hom_count(int a, int b) const override {
    if (a == 0) return 1;      // the empty function
    if (b == 0) return 0;
    return sat_pow(static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(a));
  }

  Mor hom_elem(int a, int b, std::uint64_t k) const override {
    if (hom_count(a, b) <= k) throw MalformedTables("finset hom_elem: index out of range");
    std::vector<int> img(a);
    // Most-significant digit first, so ranks order image lists lexicographically.
    for (int i = a - 1; i >= 0; --i) {
      img[i] = static_cast<int>(k % b);
      k /= b;
    }
    return Mor{a, b, std::move(img)};
  }

  std::uint64_t hom_index(const Mor& f) const override {
    std::uint64_t r = 0;
    for (int v : f.data) {
      r = sat_mul(r, static_cast<std::uint64_t>(f.cod));
      if (r == kCountSaturated) return kCountSaturated;
      r += static_cast<std::uint64_t>(v);
    }
    return r;
  }

  bool is_valid(const Mor& f) const override {
    if (!in_range(f.dom) || !in_range(f.cod)) return false;
    if (static_cast<int>(f.data.size()) != f.dom) return false;
    for (int v : f.data)
      if (v < 0 || v >= f.cod) return false;
    return true;
  }

  Mor identity(int x) const override {
    std::vector<int> img(x);
    std::iota(img.begin(), img.end(), 0);
    return Mor{x, x, std::move(img)};
  }

  Mor compose(const Mor& f, const Mor& g) const override {
    if (f.cod != g.dom) throw MalformedTables("finset compose: type mismatch");
    std::vector<int> img(f.data.size());
    for (std::size_t i = 0; i < f.data.size(); ++i) img[i] = g.data[f.data[i]];
    return Mor{f.dom, g.cod, std::move(img)};
  }

  int unit_object() const override { return 1; }

  int tensor_obj(int a, int b) const override {
    long long t = static_cast<long long>(a) * b;
    return t <= max_card_ ? static_cast<int>(t) : -1;
  }

  bool set_like() const override { return true; }
  int card(int x) const override { return x; }
  int pair_index(int a, int b, int i, int j) const override {
    (void)a;
    return i * b + j;
  }

  Mor tensor_mor(const Mor& f, const Mor& g) const override {
    int dom = tensor_obj(f.dom, g.dom);
    int cod = tensor_obj(f.cod, g.cod);
    if (dom < 0 || cod < 0)
      throw CardinalityOverflow("finset tensor_mor outside the carrier");
    std::vector<int> img(static_cast<std::size_t>(dom));
    for (int i = 0; i < f.dom; ++i)
      for (int j = 0; j < g.dom; ++j)
        img[static_cast<std::size_t>(i) * g.dom + j] = f.data[i] * g.cod + g.data[j];
    return Mor{dom, cod, std::move(img)};
  }

 private:
  int max_card_;
};

// ---------------------------------------------------------------------------
// Table-driven base (custom bases loaded from JSON, fault-injection tests)
// ---------------------------------------------------------------------------

class TableBase final : public MonoidalBase {
 public:
  struct Tables {
    std::vector<std::string> object_names;                    // size n
    std::vector<std::vector<std::uint64_t>> hom;              // [a][b] -> count
    // compose[a][b][c][f][g] -> index of g.f in hom(a, c)
    std::map<std::tuple<int, int, int>, std::vector<std::vector<int>>> compose;
    std::vector<int> identities;                              // [x] -> index in hom(x, x)
    int unit = 0;
    std::vector<std::vector<int>> tensor_obj;                 // [a][b] -> object or -1
    // tensor_mor[{a,b,c,d}][f][g] -> index of f(x)g in hom(a(x)c, b(x)d); f: a->b, g: c->d
    std::map<std::tuple<int, int, int, int>, std::vector<std::vector<int>>> tensor_mor;
    Capabilities caps;
  };

  explicit TableBase(Tables t) : t_(std::move(t)) {
    caps = t_.caps;
    n_ = static_cast<int>(t_.object_names.size());
    check_shape();
  }

  const Tables& tables() const { return t_; }

  std::string kind() const override { return "table"; }
  int n_objects() const override { return n_; }
  std::string object_name(int x) const override { return t_.object_names[x]; }

  std::uint64_t hom_count(int a, int b) const override { return t_.hom[a][b]; }
  Mor hom_elem(int a, int b, std::uint64_t k) const override {
    if (k >= t_.hom[a][b]) throw MalformedTables("table hom_elem: index out of range");
    return Mor{a, b, {static_cast<int>(k)}};
  }
  std::uint64_t hom_index(const Mor& f) const override {
    return static_cast<std::uint64_t>(f.data.at(0));
  }
  bool is_valid(const Mor& f) const override {
    return in_range(f.dom) && in_range(f.cod) && f.data.size() == 1 && f.data[0] >= 0 &&
           static_cast<std::uint64_t>(f.data[0]) < t_.hom[f.dom][f.cod];
  }

  Mor identity(int x) const override { return Mor{x, x, {t_.identities[x]}}; }

  Mor compose(const Mor& f, const Mor& g) const override {
    if (f.cod != g.dom) throw MalformedTables("table compose: type mismatch");
    auto it = t_.compose.find({f.dom, f.cod, g.cod});
    if (it == t_.compose.end()) throw MalformedTables("table compose: missing table");
    return Mor{f.dom, g.cod, {it->second.at(f.data.at(0)).at(g.data.at(0))}};
  }

  int unit_object() const override { return t_.unit; }
  int tensor_obj(int a, int b) const override { return t_.tensor_obj[a][b]; }

  Mor tensor_mor(const Mor& f, const Mor& g) const override {
    int dom = tensor_obj(f.dom, g.dom);
    int cod = tensor_obj(f.cod, g.cod);
    if (dom < 0 || cod < 0) throw CardinalityOverflow("table tensor_mor outside the carrier");
    auto it = t_.tensor_mor.find({f.dom, f.cod, g.dom, g.cod});
    if (it == t_.tensor_mor.end()) throw MalformedTables("table tensor_mor: missing table");
    return Mor{dom, cod, {it->second.at(f.data.at(0)).at(g.data.at(0))}};
  }

 private:
  void check_shape() const {
    if (t_.hom.size() != static_cast<std::size_t>(n_))
      throw MalformedTables("hom table has wrong number of rows");
    for (const auto& row : t_.hom)
      if (row.size() != static_cast<std::size_t>(n_))
        throw MalformedTables("hom table is ragged");
    if (t_.identities.size() != static_cast<std::size_t>(n_))
      throw MalformedTables("identities table has wrong size");
    if (t_.unit < 0 || t_.unit >= n_) throw MalformedTables("unit object out of range");
    if (t_.tensor_obj.size() != static_cast<std::size_t>(n_))
      throw MalformedTables("tensor_obj table has wrong number of rows");
    for (const auto& row : t_.tensor_obj) {
      if (row.size() != static_cast<std::size_t>(n_))
        throw MalformedTables("tensor_obj table is ragged");
      for (int v : row)
        if (v < -1 || v >= n_) throw MalformedTables("tensor_obj entry out of range");
    }
  }

  Tables t_;
  int n_ = 0;
};

inline BasePtr make_bool_quantale() { return std::make_shared<BoolBase>(); }
inline BasePtr make_finset_skeleton(int max_card) {
  return std::make_shared<FinSetBase>(max_card);
}

// ---------------------------------------------------------------------------
// validate_base
// ---------------------------------------------------------------------------

// Exhaustively checks category laws, functoriality of the tensor, and
// strictness. Iteration spaces larger than the budget are recorded as skipped
// rather than checked (only relevant for large FinSet skeleta, whose laws
// hold by construction).
inline ValidationReport validate_base(const MonoidalBase& V,
                                      std::uint64_t budget = kDefaultBudget) {
  ValidationReport rep;
  int n = V.n_objects();
  int I = V.unit_object();

  auto nm = [&](int x) { return V.object_name(x); };

  // Identities well-typed.
  for (int x = 0; x < n; ++x) {
    Mor id = V.identity(x);
    if (!V.is_valid(id) || id.dom != x || id.cod != x)
      rep.add("identity-well-typed", nm(x));
  }

  // Unit laws and typing of composition.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::uint64_t cnt = V.hom_count(a, b);
      if (cnt > budget) {
        rep.skip("unit laws on hom(" + nm(a) + "," + nm(b) + ")");
        continue;
      }
      for (std::uint64_t k = 0; k < cnt; ++k) {
        Mor f = V.hom_elem(a, b, k);
        Mor lf = V.compose(V.identity(a), f);
        Mor fr = V.compose(f, V.identity(b));
        if (!V.is_valid(lf) || lf != f) rep.add("compose-left-unit", nm(a) + "->" + nm(b));
        if (!V.is_valid(fr) || fr != f) rep.add("compose-right-unit", nm(a) + "->" + nm(b));
      }
    }

  // Associativity of composition.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          std::uint64_t space =
              sat_mul(sat_mul(V.hom_count(a, b), V.hom_count(b, c)), V.hom_count(c, d));
          if (space == 0) continue;
          if (space > budget) {
            rep.skip("compose associativity on (" + nm(a) + "," + nm(b) + "," + nm(c) + "," +
                     nm(d) + ")");
            continue;
          }
          for (std::uint64_t i = 0; i < V.hom_count(a, b); ++i)
            for (std::uint64_t j = 0; j < V.hom_count(b, c); ++j)
              for (std::uint64_t k = 0; k < V.hom_count(c, d); ++k) {
                Mor f = V.hom_elem(a, b, i), g = V.hom_elem(b, c, j), h = V.hom_elem(c, d, k);
                if (V.compose(V.compose(f, g), h) != V.compose(f, V.compose(g, h)))
                  rep.add("compose-associativity",
                          nm(a) + "," + nm(b) + "," + nm(c) + "," + nm(d) + " @ " +
                              std::to_string(i) + "," + std::to_string(j) + "," +
                              std::to_string(k));
              }
        }

  // Strictness on objects.
  for (int x = 0; x < n; ++x) {
    if (V.tensor_obj(I, x) != x) rep.add("strict-left-unit-object", nm(x));
    if (V.tensor_obj(x, I) != x) rep.add("strict-right-unit-object", nm(x));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int ab = V.tensor_obj(a, b), bc = V.tensor_obj(b, c);
        if (ab < 0 || bc < 0) continue;
        int l = V.tensor_obj(ab, c), r = V.tensor_obj(a, bc);
        if (l != r) rep.add("strict-associativity-object", nm(a) + "," + nm(b) + "," + nm(c));
      }

  // Tensor preserves identities; strict unit on morphisms.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (V.tensor_obj(a, b) < 0) continue;
      Mor t = V.tensor_mor(V.identity(a), V.identity(b));
      if (t != V.identity(V.tensor_obj(a, b)))
        rep.add("tensor-preserves-identities", nm(a) + "," + nm(b));
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::uint64_t cnt = V.hom_count(a, b);
      if (cnt > budget) {
        rep.skip("strict unit on hom(" + nm(a) + "," + nm(b) + ")");
        continue;
      }
      for (std::uint64_t k = 0; k < cnt; ++k) {
        Mor f = V.hom_elem(a, b, k);
        if (V.tensor_mor(V.identity(I), f) != f)
          rep.add("strict-left-unit-morphism", nm(a) + "->" + nm(b));
        if (V.tensor_mor(f, V.identity(I)) != f)
          rep.add("strict-right-unit-morphism", nm(a) + "->" + nm(b));
      }
    }

  // Tensor preserves composition (interchange with both factors composing).
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int a2 = 0; a2 < n; ++a2)
          for (int b2 = 0; b2 < n; ++b2)
            for (int c2 = 0; c2 < n; ++c2) {
              if (V.tensor_obj(a, a2) < 0 || V.tensor_obj(b, b2) < 0 ||
                  V.tensor_obj(c, c2) < 0)
                continue;
              std::uint64_t space =
                  sat_mul(sat_mul(V.hom_count(a, b), V.hom_count(b, c)),
                          sat_mul(V.hom_count(a2, b2), V.hom_count(b2, c2)));
              if (space == 0) continue;
              if (space > budget) {
                rep.skip("tensor functoriality at (" + nm(a) + nm(b) + nm(c) + ";" + nm(a2) +
                         nm(b2) + nm(c2) + ")");
                continue;
              }
              for (std::uint64_t i = 0; i < V.hom_count(a, b); ++i)
                for (std::uint64_t j = 0; j < V.hom_count(b, c); ++j)
                  for (std::uint64_t i2 = 0; i2 < V.hom_count(a2, b2); ++i2)
                    for (std::uint64_t j2 = 0; j2 < V.hom_count(b2, c2); ++j2) {
                      Mor f = V.hom_elem(a, b, i), g = V.hom_elem(b, c, j);
                      Mor f2 = V.hom_elem(a2, b2, i2), g2 = V.hom_elem(b2, c2, j2);
                      if (V.tensor_mor(V.compose(f, g), V.compose(f2, g2)) !=
                          V.compose(V.tensor_mor(f, f2), V.tensor_mor(g, g2)))
                        rep.add("tensor-preserves-composition",
                                nm(a) + nm(b) + nm(c) + ";" + nm(a2) + nm(b2) + nm(c2));
                    }
            }

  // Strict associativity on morphisms (spot-checkable spaces only).
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e)
            for (int h = 0; h < n; ++h) {
              if (V.tensor_obj(a, c) < 0 || V.tensor_obj(b, d) < 0 ||
                  V.tensor_obj(c, e) < 0 || V.tensor_obj(d, h) < 0)
                continue;
              if (V.tensor_obj(V.tensor_obj(a, c), e) < 0 ||
                  V.tensor_obj(V.tensor_obj(b, d), h) < 0)
                continue;
              std::uint64_t space = sat_mul(
                  sat_mul(V.hom_count(a, b), V.hom_count(c, d)), V.hom_count(e, h));
              if (space == 0) continue;
              if (space > budget) {
                rep.skip("strict associativity on morphisms");
                continue;
              }
              for (std::uint64_t i = 0; i < V.hom_count(a, b); ++i)
                for (std::uint64_t j = 0; j < V.hom_count(c, d); ++j)
                  for (std::uint64_t k = 0; k < V.hom_count(e, h); ++k) {
                    Mor f = V.hom_elem(a, b, i), g = V.hom_elem(c, d, j),
                        m = V.hom_elem(e, h, k);
                    if (V.tensor_mor(V.tensor_mor(f, g), m) !=
                        V.tensor_mor(f, V.tensor_mor(g, m)))
                      rep.add("strict-associativity-morphism",
                              nm(a) + nm(b) + "," + nm(c) + nm(d) + "," + nm(e) + nm(h));
                  }
            }

  return rep;
}

// ---------------------------------------------------------------------------
// Equalizers and coequalizers
// ---------------------------------------------------------------------------

struct EqualizerResult {
  int obj = -1;
  Mor incl;  // obj -> dom(f)
};

struct CoequalizerResult {
  int obj = -1;
  Mor proj;  // cod(f) -> obj
};

namespace detail {

// Checks that (e, m) is a limiting cone over the parallel pair (f, g), with
// competing cones enumerated within the budget (larger spaces are skipped).
inline bool certify_equalizer_cone(const MonoidalBase& V, const Mor& f, const Mor& g, int e,
                                   const Mor& m, std::uint64_t budget) {
  if (V.compose(m, f) != V.compose(m, g)) return false;
  for (int c = 0; c < V.n_objects(); ++c) {
    std::uint64_t cones = V.hom_count(c, f.dom);
    std::uint64_t factors = V.hom_count(c, e);
    if (cones > budget || sat_mul(cones, factors) > budget) continue;
    for (std::uint64_t k = 0; k < cones; ++k) {
      Mor h = V.hom_elem(c, f.dom, k);
      if (V.compose(h, f) != V.compose(h, g)) continue;
      std::uint64_t found = 0;
      for (std::uint64_t u = 0; u < factors; ++u)
        if (V.compose(V.hom_elem(c, e, u), m) == h) ++found;
      if (found != 1) return false;
    }
  }
  return true;
}

inline bool certify_coequalizer_cone(const MonoidalBase& V, const Mor& f, const Mor& g, int q,
                                     const Mor& p, std::uint64_t budget) {
  if (V.compose(f, p) != V.compose(g, p)) return false;
  for (int c = 0; c < V.n_objects(); ++c) {
    std::uint64_t cones = V.hom_count(f.cod, c);
    std::uint64_t factors = V.hom_count(q, c);
    if (cones > budget || sat_mul(cones, factors) > budget) continue;
    for (std::uint64_t k = 0; k < cones; ++k) {
      Mor h = V.hom_elem(f.cod, c, k);
      if (V.compose(f, h) != V.compose(g, h)) continue;
      std::uint64_t found = 0;
      for (std::uint64_t u = 0; u < factors; ++u)
        if (V.compose(p, V.hom_elem(q, c, u)) == h) ++found;
      if (found != 1) return false;
    }
  }
  return true;
}

}  // namespace detail

inline EqualizerResult equalizer(const MonoidalBase& V, const Mor& f, const Mor& g,
                                 std::uint64_t budget = kDefaultBudget) {
  if (!V.caps.equalizers) throw CapabilityMissing("base has no equalizers");
  if (!V.is_valid(f) || !V.is_valid(g)) throw MalformedTables("equalizer: invalid morphism");
  if (f.dom != g.dom || f.cod != g.cod) throw NotParallel("equalizer: pair is not parallel");

  if (V.kind() == "bool") {
    // Thin base: parallel pairs are equal, so the domain equalizes.
    return {f.dom, V.identity(f.dom)};
  }
  if (V.kind() == "finset") {
    std::vector<int> sel;
    for (int i = 0; i < f.dom; ++i)
      if (f.data[i] == g.data[i]) sel.push_back(i);
    return {static_cast<int>(sel.size()),
            Mor{static_cast<int>(sel.size()), f.dom, std::move(sel)}};
  }
  // Generic search with full certification.
  for (int e = 0; e < V.n_objects(); ++e) {
    std::uint64_t cnt = V.hom_count(e, f.dom);
    if (cnt > budget)
      throw EnumerationBudgetExceeded("equalizer candidate space too large");
    for (std::uint64_t k = 0; k < cnt; ++k) {
      Mor m = V.hom_elem(e, f.dom, k);
      if (detail::certify_equalizer_cone(V, f, g, e, m, budget)) return {e, m};
    }
  }
  throw MalformedTables("equalizer: no limiting cone found");
}

inline CoequalizerResult coequalizer(const MonoidalBase& V, const Mor& f, const Mor& g,
                                     std::uint64_t budget = kDefaultBudget) {
  if (!V.caps.coequalizers) throw CapabilityMissing("base has no coequalizers");
  if (!V.is_valid(f) || !V.is_valid(g)) throw MalformedTables("coequalizer: invalid morphism");
  if (f.dom != g.dom || f.cod != g.cod) throw NotParallel("coequalizer: pair is not parallel");

  if (V.kind() == "bool") {
    return {f.cod, V.identity(f.cod)};
  }
  if (V.kind() == "finset") {
    // Union-find quotient of the codomain by f(i) ~ g(i).
    std::vector<int> parent(f.cod);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < f.dom; ++i) {
      int a = find(f.data[i]), b = find(g.data[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    // Classes numbered by their least element, in ascending order.
    std::vector<int> cls(f.cod, -1);
    int next = 0;
    for (int x = 0; x < f.cod; ++x)
      if (find(x) == x) cls[x] = next++;
    std::vector<int> img(f.cod);
    for (int x = 0; x < f.cod; ++x) img[x] = cls[find(x)];
    return {next, Mor{f.cod, next, std::move(img)}};
  }
  for (int q = 0; q < V.n_objects(); ++q) {
    std::uint64_t cnt = V.hom_count(f.cod, q);
    if (cnt > budget)
      throw EnumerationBudgetExceeded("coequalizer candidate space too large");
    for (std::uint64_t k = 0; k < cnt; ++k) {
      Mor p = V.hom_elem(f.cod, q, k);
      if (detail::certify_coequalizer_cone(V, f, g, q, p, budget)) return {q, p};
    }
  }
  throw MalformedTables("coequalizer: no colimiting cone found");
}

// Bounded universality certification, exposed for tests and the certify CLI.
inline bool certify_equalizer(const MonoidalBase& V, const Mor& f, const Mor& g,
                              const EqualizerResult& eq,
                              std::uint64_t budget = kDefaultBudget) {
  return detail::certify_equalizer_cone(V, f, g, eq.obj, eq.incl, budget);
}
inline bool certify_coequalizer(const MonoidalBase& V, const Mor& f, const Mor& g,
                                const CoequalizerResult& cq,
                                std::uint64_t budget = kDefaultBudget) {
  return detail::certify_coequalizer_cone(V, f, g, cq.obj, cq.proj, budget);
}

// Searches hom(cod, dom) for a two-sided inverse of f.
inline std::optional<Mor> find_inverse(const MonoidalBase& V, const Mor& f,
                                       std::uint64_t budget = kDefaultBudget) {
  std::uint64_t cnt = V.hom_count(f.cod, f.dom);
  if (cnt > budget) throw EnumerationBudgetExceeded("inverse search space too large");
  for (std::uint64_t k = 0; k < cnt; ++k) {
    Mor g = V.hom_elem(f.cod, f.dom, k);
    if (V.compose(f, g) == V.identity(f.dom) && V.compose(g, f) == V.identity(f.cod))
      return g;
  }
  return std::nullopt;
}

inline bool is_invertible(const MonoidalBase& V, const Mor& f,
                          std::uint64_t budget = kDefaultBudget) {
  return find_inverse(V, f, budget).has_value();
}

}  // namespace relkit
