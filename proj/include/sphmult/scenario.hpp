#pragma once

// Catalog of spherical pairs (group descriptor, space descriptor) that can be
// instantiated over any F_{q^k}: canonical point enumeration, the group
// action, and per-element fixed-point counting. Subspaces are keyed by their
// reduced-row-echelon basis matrices; flags by tuples of those.

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "group.hpp"

namespace sphmult {

inline constexpr u64 kSpaceCap = 2'000'000;

struct SpaceDescriptor {
  enum class Kind {
    Point,
    ProjectiveSpace,
    Grassmannian,
    Flag,
    ProjlinePair,
    GroupCase,
    TorusCoset,
    Regular,
    AffineTrivial
  };
  Kind kind = Kind::Point;
  u32 d = 0;  // grassmannian subspace dimension

  static SpaceDescriptor point() { return {Kind::Point, 0}; }
  static SpaceDescriptor projective_space() {
    return {Kind::ProjectiveSpace, 1};
  }
  static SpaceDescriptor grassmannian(u32 d) { return {Kind::Grassmannian, d}; }
  static SpaceDescriptor flag() { return {Kind::Flag, 0}; }
  static SpaceDescriptor projline_pair() { return {Kind::ProjlinePair, 0}; }
  static SpaceDescriptor group_case() { return {Kind::GroupCase, 0}; }
  static SpaceDescriptor torus_coset() { return {Kind::TorusCoset, 0}; }
  static SpaceDescriptor regular() { return {Kind::Regular, 0}; }
  // synthetic control: the affine plane with every group element acting as
  // the identity; point counts grow like Q^2, so nothing about it is tame
  static SpaceDescriptor affine_trivial() { return {Kind::AffineTrivial, 0}; }

  bool operator==(const SpaceDescriptor&) const = default;
};

// Metadata for the reduction chain: an auxiliary pair G' -> G, G' inside G''
// with declared scheme-level integers that rational points cannot see.
struct WitnessSpec {
  GroupDescriptor g_prime;
  GroupDescriptor g_double_prime;
  MorphRule i_rule;
  u64 scheme_kernel_order = 1;
  u64 pi0_intersection = 1;
};

struct Scenario {
  std::string name;
  GroupDescriptor group;
  SpaceDescriptor space;
  u64 q = 2;  // base prime power p^e
  u64 p = 2;
  u32 e = 1;
  u32 max_ext = 3;
  std::string notes;
  std::optional<WitnessSpec> witness;

  static Scenario make(std::string name, GroupDescriptor g, SpaceDescriptor x,
                       u64 q, u32 max_ext, std::string notes = "") {
    Scenario s;
    s.name = std::move(name);
    s.group = std::move(g);
    s.space = x;
    s.q = q;
    s.max_ext = max_ext;
    s.notes = std::move(notes);
    u64 p = 2;
    while (q % p != 0) {
      ++p;
      if (p * p > q) p = q;
    }
    u32 e = 0;
    u64 t = q;
    while (t > 1) {
      if (t % p != 0)
        throw std::invalid_argument("q must be a prime power: " +
                                    std::to_string(q));
      t /= p;
      ++e;
    }
    s.p = p;
    s.e = e;
    return s;
  }
};

using PointKey = std::vector<u32>;

class SpaceInstance {
 public:
  enum class FixStrategy { Sweep, ConjugacyClassification };

  u64 size() const { return keys_.size(); }
  const PointKey& key(u32 i) const { return keys_[i]; }

  u32 index_of_key(const PointKey& k) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || *it != k)
      throw std::out_of_range("point key not in the space");
    return u32(it - keys_.begin());
  }

  u32 act(const Element& g, u32 x) const {
    return index_of_key(act_(g, keys_[x]));
  }

  PointKey act_key(const Element& g, const PointKey& k) const {
    return act_(g, k);
  }

  // Exact number of points fixed by g.
  u64 fixed_points(const Element& g) const {
    if (strategy_ == FixStrategy::ConjugacyClassification) {
      // (g,h) fixes x iff g x = x h; solutions form a centralizer coset,
      // nonempty exactly when g and h are conjugate.
      const MatOps& ops = *ops_;
      ConjClass cg = ops.classify(g[0]);
      ConjClass ch = ops.classify(g[1]);
      if (!(cg == ch)) return 0;
      return centralizer_order(cg, BigInt(ops.field().q())).convert_to<u64>();
    }
    u64 n = 0;
    for (u32 x = 0; x < keys_.size(); ++x)
      if (act_(g, keys_[x]) == keys_[x]) ++n;
    return n;
  }

  const char* strategy_name() const {
    return strategy_ == FixStrategy::Sweep ? "sweep"
                                           : "conjugacy-classification";
  }
  const std::string& note() const { return note_; }

  SpaceInstance(std::vector<PointKey> keys,
                std::function<PointKey(const Element&, const PointKey&)> act,
                FixStrategy strategy, const Fq* field, u32 n,
                std::string note)
      : keys_(std::move(keys)),
        act_(std::move(act)),
        strategy_(strategy),
        note_(std::move(note)) {
    std::sort(keys_.begin(), keys_.end());
    if (std::adjacent_find(keys_.begin(), keys_.end()) != keys_.end())
      throw std::logic_error("duplicate point keys");
    if (field) ops_ = std::make_shared<MatOps>(*field);
    (void)n;
  }

 private:
  std::vector<PointKey> keys_;
  std::function<PointKey(const Element&, const PointKey&)> act_;
  FixStrategy strategy_;
  std::shared_ptr<MatOps> ops_;
  std::string note_;
};

namespace detail {

inline std::vector<u32> all_field_values(const Fq& F) {
  std::vector<u32> vals;
  vals.push_back(F.zero());
  for (u64 i = 0; i + 1 < F.q(); ++i) vals.push_back(F.unit(i));
  return vals;
}

inline Mat decode_rows(const PointKey& k, size_t off, u32 d, u32 n) {
  Mat m(d, n);
  for (u32 i = 0; i < d; ++i)
    for (u32 j = 0; j < n; ++j) m.at(i, j) = k[off + size_t(i) * n + j];
  return m;
}

inline void encode_rows(const Mat& m, PointKey& out) {
  for (u32 i = 0; i < m.r; ++i)
    for (u32 j = 0; j < m.c; ++j) out.push_back(m.at(i, j));
}

// All d-dimensional subspaces of F^n as rref basis matrices.
inline std::vector<Mat> rref_subspaces(const Fq& F, u32 n, u32 d) {
  std::vector<Mat> out;
  std::vector<u32> vals = all_field_values(F);
  std::vector<u32> pivots(d);
  // iterate over increasing pivot-column tuples
  for (u32 i = 0; i < d; ++i) pivots[i] = i;
  auto advance_pivots = [&]() -> bool {
    for (u32 i = d; i-- > 0;) {
      if (pivots[i] + (d - i) <= n - 1) {
        ++pivots[i];
        for (u32 j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  while (true) {
    // free positions: (i, j) with j > pivots[i] and j not a pivot column
    std::vector<std::pair<u32, u32>> free_pos;
    std::vector<bool> is_piv(n, false);
    for (u32 c : pivots) is_piv[c] = true;
    for (u32 i = 0; i < d; ++i)
      for (u32 j = pivots[i] + 1; j < n; ++j)
        if (!is_piv[j]) free_pos.emplace_back(i, j);
    std::vector<u32> idx(free_pos.size(), 0);
    while (true) {
      Mat m(d, n);
      for (u32 i = 0; i < d; ++i)
        for (u32 j = 0; j < n; ++j) m.at(i, j) = F.zero();
      for (u32 i = 0; i < d; ++i) m.at(i, pivots[i]) = F.one();
      for (size_t t = 0; t < free_pos.size(); ++t)
        m.at(free_pos[t].first, free_pos[t].second) = vals[idx[t]];
      out.push_back(m);
      size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == vals.size()) idx[pos++] = 0;
      if (pos == idx.size() && !idx.empty()) break;
      if (idx.empty()) break;
    }
    if (!advance_pivots()) break;
  }
  return out;
}

inline BigInt gaussian_binomial(u32 n, u32 d, const BigInt& Q) {
  BigRat r(1);
  for (u32 i = 0; i < d; ++i)
    r *= BigRat(pow_big(Q, n - i) - 1, pow_big(Q, i + 1) - 1);
  BigInt num = numerator(r), den = denominator(r);
  if (den != 1) throw std::logic_error("gaussian binomial not integral");
  return num;
}

}  // namespace detail

// A scenario realized at one extension level: leaves over F_{q^k}, the
// space, and optionally the fully enumerated group.
struct Instance {
  GroupDescriptor gdesc;
  std::vector<LeafSpec> leaves;
  u64 Q = 0;             // q^k
  u32 field_deg = 0;     // absolute degree over the prime field
  std::unique_ptr<GroupTable> group;  // present when requested
  std::unique_ptr<SpaceInstance> space;
};

inline Instance instantiate(const Scenario& s, FieldTower& tower, u32 k,
                            bool build_group) {
  Instance inst;
  inst.gdesc = s.group;
  inst.field_deg = s.e * k;
  inst.leaves = flatten_leaves(s.group, tower, inst.field_deg);
  inst.Q = 1;
  for (u32 i = 0; i < inst.field_deg; ++i) inst.Q *= s.p;

  const u64 Q = inst.Q;
  auto require = [&](bool ok, const char* what) {
    if (!ok)
      throw std::invalid_argument(std::string("incompatible pair: ") + what);
  };
  auto check_cap = [&](const BigInt& total) {
    if (total > kSpaceCap)
      throw CapError("space size " + total.str() + " exceeds enumeration cap " +
                     std::to_string(kSpaceCap));
  };

  using K = SpaceDescriptor::Kind;
  const SpaceDescriptor& sd = s.space;

  // matrix kinds act through the transpose so that subspaces written as row
  // spans carry a left action: g.V = V g^T
  auto subspace_act = [](const MatOps ops, u32 d, u32 n) {
    return [ops, d, n](const Element& g, const PointKey& key) {
      Mat m = detail::decode_rows(key, 0, d, n);
      Mat img = ops.mul(m, ops.transpose(g[0]));
      if (ops.rref(img) != d)
        throw std::logic_error("action dropped subspace dimension");
      PointKey out;
      detail::encode_rows(img, out);
      return out;
    };
  };

  switch (sd.kind) {
    case K::Point: {
      inst.space = std::make_unique<SpaceInstance>(
          std::vector<PointKey>{{}},
          [](const Element&, const PointKey& k) { return k; },
          SpaceInstance::FixStrategy::Sweep, nullptr, 0, "");
      break;
    }
    case K::ProjectiveSpace:
    case K::Grassmannian:
    case K::Flag: {
      require(inst.leaves.size() == 1 && (s.group.kind == GroupDescriptor::Kind::GL ||
                                          s.group.kind == GroupDescriptor::Kind::SL),
              "subspace kinds need a single linear group");
      u32 n = inst.leaves[0].n;
      const Fq& F = *inst.leaves[0].F;
      MatOps ops(F);
      if (sd.kind == K::Flag) {
        require(n == 2 || n == 3, "flags implemented for n = 2, 3");
        check_cap(flag_count(s.group, BigInt(Q)));
        auto lines = detail::rref_subspaces(F, n, 1);
        std::vector<PointKey> keys;
        if (n == 2) {
          for (const auto& L : lines) {
            PointKey k;
            detail::encode_rows(L, k);
            keys.push_back(std::move(k));
          }
        } else {
          auto planes = detail::rref_subspaces(F, n, 2);
          for (const auto& L : lines)
            for (const auto& P : planes) {
              Mat stack(3, n);
              for (u32 j = 0; j < n; ++j) {
                stack.at(0, j) = P.at(0, j);
                stack.at(1, j) = P.at(1, j);
                stack.at(2, j) = L.at(0, j);
              }
              if (ops.rank(stack) != 2) continue;  // line not inside plane
              PointKey k;
              detail::encode_rows(L, k);
              detail::encode_rows(P, k);
              keys.push_back(std::move(k));
            }
        }
        auto base = subspace_act(ops, 1, n);
        std::function<PointKey(const Element&, const PointKey&)> act;
        if (n == 2) {
          act = base;
        } else {
          act = [ops, n](const Element& g, const PointKey& key) {
            Mat L = detail::decode_rows(key, 0, 1, n);
            Mat P = detail::decode_rows(key, size_t(n), 2, n);
            Mat tg = ops.transpose(g[0]);
            Mat li = ops.mul(L, tg), pi = ops.mul(P, tg);
            if (ops.rref(li) != 1 || ops.rref(pi) != 2)
              throw std::logic_error("action dropped subspace dimension");
            PointKey out;
            detail::encode_rows(li, out);
            detail::encode_rows(pi, out);
            return out;
          };
        }
        inst.space = std::make_unique<SpaceInstance>(
            std::move(keys), act, SpaceInstance::FixStrategy::Sweep, &F, n,
            "");
        if (inst.space->size() != flag_count(s.group, BigInt(Q)))
          throw std::logic_error("flag count disagrees with closed form");
      } else {
        u32 d = sd.kind == K::ProjectiveSpace ? 1 : sd.d;
        require(d >= 1 && d < n, "subspace dimension out of range");
        BigInt closed = detail::gaussian_binomial(n, d, BigInt(Q));
        check_cap(closed);
        std::vector<PointKey> keys;
        for (const auto& m : detail::rref_subspaces(F, n, d)) {
          PointKey k;
          detail::encode_rows(m, k);
          keys.push_back(std::move(k));
        }
        inst.space = std::make_unique<SpaceInstance>(
            std::move(keys), subspace_act(ops, d, n),
            SpaceInstance::FixStrategy::Sweep, &F, n, "");
        if (BigInt(inst.space->size()) != closed)
          throw std::logic_error("subspace count disagrees with closed form");
      }
      break;
    }
    case K::ProjlinePair:
    case K::TorusCoset: {
      require(inst.leaves.size() == 1 && inst.leaves[0].n == 2,
              "paired-line kinds need one rank-2 group");
      const Fq& F = *inst.leaves[0].F;
      MatOps ops(F);
      bool distinct = sd.kind == K::TorusCoset;
      check_cap(BigInt(Q + 1) * BigInt(Q + 1));
      auto lines = detail::rref_subspaces(F, 2, 1);
      std::vector<PointKey> keys;
      for (const auto& a : lines)
        for (const auto& b : lines) {
          if (distinct && a == b) continue;
          PointKey k;
          detail::encode_rows(a, k);
          detail::encode_rows(b, k);
          keys.push_back(std::move(k));
        }
      auto act = [ops](const Element& g, const PointKey& key) {
        Mat a = detail::decode_rows(key, 0, 1, 2);
        Mat b = detail::decode_rows(key, 2, 1, 2);
        Mat tg = ops.transpose(g[0]);
        Mat ia = ops.mul(a, tg), ib = ops.mul(b, tg);
        if (ops.rref(ia) != 1 || ops.rref(ib) != 1)
          throw std::logic_error("action dropped subspace dimension");
        PointKey out;
        detail::encode_rows(ia, out);
        detail::encode_rows(ib, out);
        return out;
      };
      inst.space = std::make_unique<SpaceInstance>(
          std::move(keys), act, SpaceInstance::FixStrategy::Sweep, &F, 2,
          distinct ? "points are G(F_Q)/T(F_Q) cosets, realized as ordered "
                     "pairs of distinct lines; valid because the torus "
                     "stabilizer is connected (Lang)"
                   : "");
      u64 expect = distinct ? Q * Q + Q : (Q + 1) * (Q + 1);
      if (inst.space->size() != expect)
        throw std::logic_error("pair count disagrees with closed form");
      break;
    }
    case K::GroupCase: {
      require(s.group.kind == GroupDescriptor::Kind::Product &&
                  s.group.factors.size() == 2 &&
                  s.group.factors[0] == s.group.factors[1] &&
                  s.group.factors[0].kind == GroupDescriptor::Kind::GL,
              "group case needs GL(n) x GL(n)");
      u32 n = s.group.factors[0].n;
      const Fq& F = *inst.leaves[0].F;
      MatOps ops(F);
      BigInt closed = gl_order(n, BigInt(Q));
      check_cap(closed);
      // enumerate all invertible n x n matrices by odometer + det test
      std::vector<u32> vals = detail::all_field_values(F);
      std::vector<u32> idx(size_t(n) * n, 0);
      std::vector<PointKey> keys;
      while (true) {
        Mat m(n, n);
        for (u32 i = 0; i < n; ++i)
          for (u32 j = 0; j < n; ++j) m.at(i, j) = vals[idx[size_t(i) * n + j]];
        if (ops.det(m) != F.zero()) {
          PointKey k;
          detail::encode_rows(m, k);
          keys.push_back(std::move(k));
        }
        size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == vals.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
      }
      auto act = [ops, n](const Element& g, const PointKey& key) {
        Mat x = detail::decode_rows(key, 0, n, n);
        Mat img = ops.mul(ops.mul(g[0], x), ops.inv(g[1]));
        PointKey out;
        detail::encode_rows(img, out);
        return out;
      };
      inst.space = std::make_unique<SpaceInstance>(
          std::move(keys), act,
          SpaceInstance::FixStrategy::ConjugacyClassification, &F, n, "");
      if (BigInt(inst.space->size()) != closed)
        throw std::logic_error("group-case count disagrees with closed form");
      break;
    }
    case K::AffineTrivial: {
      check_cap(BigInt(Q) * BigInt(Q));
      std::vector<PointKey> keys;
      for (u32 a = 0; a < Q; ++a)
        for (u32 b = 0; b < Q; ++b) keys.push_back({a, b});
      inst.space = std::make_unique<SpaceInstance>(
          std::move(keys),
          [](const Element&, const PointKey& k) { return k; },
          SpaceInstance::FixStrategy::Sweep, nullptr, 0, "");
      break;
    }
    case K::Regular: {
      if (!build_group)
        throw std::invalid_argument(
            "regular space needs the enumerated group");
      break;  // filled in after the table is built
    }
  }

  if (build_group || sd.kind == K::Regular) {
    inst.group = std::make_unique<GroupTable>(
        GroupTable::build(s.group, tower, inst.field_deg));
  }
  if (sd.kind == K::Regular) {
    const GroupTable& T = *inst.group;
    std::vector<PointKey> keys;
    for (u32 i = 0; i < T.size(); ++i) keys.push_back(T.key_of(T.element(i)));
    const GroupTable* tp = &T;
    auto act = [tp](const Element& g, const PointKey& key) {
      auto idx = tp->find(key);
      if (!idx) throw std::out_of_range("regular point not in the group");
      return tp->key_of(tp->mul_elems(g, tp->element(*idx)));
    };
    inst.space = std::make_unique<SpaceInstance>(
        std::move(keys), act, SpaceInstance::FixStrategy::Sweep, nullptr, 0,
        "");
  }
  return inst;
}

// Generators of the Borel subgroup B(F_Q) as elements (diagonal plus upper
// transvections per linear leaf, a root of unity per Mu leaf). Used for
// orbit partitions without enumerating B.
inline std::vector<Element> borel_generators(
    const std::vector<LeafSpec>& leaves) {
  std::vector<Element> gens;
  Element id;
  std::vector<MatOps> ops;
  for (const auto& lf : leaves) {
    ops.emplace_back(*lf.F);
    id.push_back(ops.back().identity(lf.n));
  }
  auto push = [&](size_t li, const Mat& m) {
    Element e = id;
    e[li] = m;
    gens.push_back(std::move(e));
  };
  for (size_t li = 0; li < leaves.size(); ++li) {
    const LeafSpec& lf = leaves[li];
    const Fq& F = *lf.F;
    if (lf.kind == GroupDescriptor::Kind::Mu) {
      u64 d = gcd_u64(lf.r, F.q() - 1);
      if (d > 1) {
        Mat m(1, 1);
        m.at(0, 0) = F.unit((F.q() - 1) / d);
        push(li, m);
      }
      continue;
    }
    u32 n = lf.n;
    // upper transvections spanning each root group over the prime field
    for (u32 i = 0; i < n; ++i)
      for (u32 j = i + 1; j < n; ++j)
        for (u32 t = 0; t < F.k(); ++t) {
          Mat m = ops[li].identity(n);
          m.at(i, j) = F.pow(F.generator(), t);
          push(li, m);
        }
    if (F.q() > 2) {
      if (lf.kind == GroupDescriptor::Kind::GL) {
        for (u32 i = 0; i < n; ++i) {
          Mat m = ops[li].identity(n);
          m.at(i, i) = F.generator();
          push(li, m);
        }
      } else {
        for (u32 i = 0; i + 1 < n; ++i) {
          Mat m = ops[li].identity(n);
          m.at(i, i) = F.generator();
          m.at(i + 1, i + 1) = F.inv(F.generator());
          push(li, m);
        }
      }
    }
  }
  return gens;
}

// Number of orbits of the subgroup generated by gens on the space, by
// partition refinement (no group enumeration).
inline u64 orbit_count_partition(const SpaceInstance& X,
                                 const std::vector<Element>& gens) {
  u64 n = X.size();
  std::vector<u32> comp(n, u32(-1));
  u64 orbits = 0;
  std::vector<u32> stack;
  for (u32 s = 0; s < n; ++s) {
    if (comp[s] != u32(-1)) continue;
    comp[s] = u32(orbits);
    stack.push_back(s);
    while (!stack.empty()) {
      u32 x = stack.back();
      stack.pop_back();
      for (const auto& g : gens) {
        u32 y = X.act(g, x);
        if (comp[y] == u32(-1)) {
          comp[y] = u32(orbits);
          stack.push_back(y);
        }
      }
    }
    ++orbits;
  }
  return orbits;
}

// Preset scenarios. Estimator horizons follow the base field: slow-decaying
// corrections at q = 2 need deeper extensions.
inline std::vector<Scenario> catalog() {
  using GD = GroupDescriptor;
  using SD = SpaceDescriptor;
  std::vector<Scenario> out;
  out.push_back(Scenario::make("gl2_flag", GD::gl(2), SD::flag(), 3, 4));
  out.push_back(
      Scenario::make("gl2_p1xp1", GD::gl(2), SD::projline_pair(), 3, 4));
  out.push_back(
      Scenario::make("gl2_torus_coset", GD::gl(2), SD::torus_coset(), 3, 4));
  out.push_back(Scenario::make("gl2_group_case",
                               GD::product({GD::gl(2), GD::gl(2)}),
                               SD::group_case(), 2, 6));
  out.push_back(Scenario::make("gln_point", GD::gl(2), SD::point(), 2, 6));
  out.push_back(Scenario::make("gl3_flag", GD::gl(3), SD::flag(), 2, 6));
  out.push_back(Scenario::make("gl3_grassmann2", GD::gl(3),
                               SD::grassmannian(2), 2, 6));
  return out;
}

// Scenarios carrying the reduction witness used by the main-chain check.
inline std::vector<Scenario> witness_presets() {
  using GD = GroupDescriptor;
  using SD = SpaceDescriptor;
  WitnessSpec w;
  w.g_prime = GD::product({GD::mu(2), GD::sl(2)});
  w.g_double_prime = GD::product({GD::mu(2), GD::gl(2)});
  w.i_rule = MorphRule::mult();
  w.scheme_kernel_order = 2;
  w.pi0_intersection = 2;
  std::vector<Scenario> out;
  auto s1 = Scenario::make("sl2_flag", GD::sl(2), SD::flag(), 3, 4);
  s1.witness = w;
  out.push_back(std::move(s1));
  auto s2 = Scenario::make("sl2_p1xp1", GD::sl(2), SD::projline_pair(), 3, 4);
  s2.witness = w;
  out.push_back(std::move(s2));
  return out;
}

}  // namespace sphmult
