#pragma once

// Finite matrix groups over F_{q^k}: descriptors (GL, SL, mu_r, products,
// Weil restriction of GL along an extension), fully enumerated tables with
// canonical element keys, distinguished subgroups, conjugacy classes, and
// group morphisms with exact kernel/image data.
//
// Elements are tuples of matrices, one per descriptor leaf; the canonical
// key is the row-major entry concatenation across leaves. Tables keep keys
// sorted, so element indices are reproducible across runs.
//
// Estimator paths never enumerate a whole group at large extensions; they
// use for_each_borel (lazy upper-triangular iteration) plus the closed-form
// orders below.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "matfq.hpp"

namespace sphmult {

struct GroupDescriptor {
  enum class Kind { GL, SL, Mu, Product, Weil };
  Kind kind = Kind::GL;
  u32 n = 1;  // matrix size for GL/SL/Weil; the order r for Mu
  u32 m = 1;  // extension degree for Weil
  std::vector<GroupDescriptor> factors;

  static GroupDescriptor gl(u32 n) { return {Kind::GL, n, 1, {}}; }
  static GroupDescriptor sl(u32 n) { return {Kind::SL, n, 1, {}}; }
  static GroupDescriptor mu(u32 r) { return {Kind::Mu, r, 1, {}}; }
  static GroupDescriptor weil_gl(u32 n, u32 m) { return {Kind::Weil, n, m, {}}; }
  static GroupDescriptor product(std::vector<GroupDescriptor> fs) {
    GroupDescriptor d;
    d.kind = Kind::Product;
    d.factors = std::move(fs);
    return d;
  }

  u64 dim() const {
    switch (kind) {
      case Kind::GL: return u64(n) * n;
      case Kind::SL: return u64(n) * n - 1;
      case Kind::Mu: return 0;
      case Kind::Weil: return u64(m) * n * n;
      case Kind::Product: {
        u64 s = 0;
        for (const auto& f : factors) s += f.dim();
        return s;
      }
    }
    return 0;
  }

  bool operator==(const GroupDescriptor& o) const {
    return kind == o.kind && n == o.n && m == o.m && factors == o.factors;
  }
};

// One matrix slot of an element tuple: its own field, size, and the leaf
// condition (GL: invertible; SL: det 1; Mu: 1x1 with z^r = 1).
struct LeafSpec {
  GroupDescriptor::Kind kind = GroupDescriptor::Kind::GL;  // GL, SL or Mu
  u32 n = 1;
  u32 r = 1;  // Mu only
  const Fq* F = nullptr;
};

using Element = std::vector<Mat>;

// field_deg: absolute degree over the prime of the field the group lives
// over (a scenario at base q = p^e and extension k passes e*k).
inline std::vector<LeafSpec> flatten_leaves(const GroupDescriptor& d,
                                            FieldTower& tower, u32 field_deg) {
  std::vector<LeafSpec> out;
  switch (d.kind) {
    case GroupDescriptor::Kind::GL:
      out.push_back({GroupDescriptor::Kind::GL, d.n, 1, &tower.field(field_deg)});
      break;
    case GroupDescriptor::Kind::SL:
      out.push_back({GroupDescriptor::Kind::SL, d.n, 1, &tower.field(field_deg)});
      break;
    case GroupDescriptor::Kind::Mu:
      out.push_back({GroupDescriptor::Kind::Mu, 1, d.n, &tower.field(field_deg)});
      break;
    case GroupDescriptor::Kind::Weil:
      out.push_back(
          {GroupDescriptor::Kind::GL, d.n, 1, &tower.field(field_deg * d.m)});
      break;
    case GroupDescriptor::Kind::Product:
      for (const auto& f : d.factors) {
        auto sub = flatten_leaves(f, tower, field_deg);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
  }
  return out;
}

inline BigInt group_order(const GroupDescriptor& d, const BigInt& Q) {
  switch (d.kind) {
    case GroupDescriptor::Kind::GL: return gl_order(d.n, Q);
    case GroupDescriptor::Kind::SL: return sl_order(d.n, Q);
    case GroupDescriptor::Kind::Mu: return gcd(BigInt(d.n), BigInt(Q - 1));
    case GroupDescriptor::Kind::Weil: return gl_order(d.n, pow_big(Q, d.m));
    case GroupDescriptor::Kind::Product: {
      BigInt o = 1;
      for (const auto& f : d.factors) o *= group_order(f, Q);
      return o;
    }
  }
  throw std::logic_error("unhandled descriptor kind");
}

// |B(F_Q)| for the upper-triangular Borel; Mu factors count whole.
inline BigInt borel_order(const GroupDescriptor& d, const BigInt& Q) {
  switch (d.kind) {
    case GroupDescriptor::Kind::GL:
      return pow_big(Q - 1, d.n) * pow_big(Q, u64(d.n) * (d.n - 1) / 2);
    case GroupDescriptor::Kind::SL:
      return pow_big(Q - 1, d.n - 1) * pow_big(Q, u64(d.n) * (d.n - 1) / 2);
    case GroupDescriptor::Kind::Mu: return gcd(BigInt(d.n), BigInt(Q - 1));
    case GroupDescriptor::Kind::Weil:
      return borel_order(GroupDescriptor::gl(d.n), pow_big(Q, d.m));
    case GroupDescriptor::Kind::Product: {
      BigInt o = 1;
      for (const auto& f : d.factors) o *= borel_order(f, Q);
      return o;
    }
  }
  throw std::logic_error("unhandled descriptor kind");
}

inline BigInt flag_count(const GroupDescriptor& d, const BigInt& Q) {
  BigInt g = group_order(d, Q), b = borel_order(d, Q);
  if (g % b != 0) throw std::logic_error("flag count not integral");
  return g / b;
}

struct ConjugacyClasses {
  std::vector<u32> reps;        // element indices, minimal key per class
  std::vector<u64> sizes;
  std::vector<u32> class_of;    // element index -> class index
  std::vector<BigInt> centralizer_orders;
  std::vector<u32> inverse_class;  // class index of rep^{-1}

  u32 count() const { return u32(reps.size()); }
};

constexpr u64 kGroupCap = 2'000'000;

inline Element leaf_identity_element(const std::vector<LeafSpec>& leaves) {
  Element e;
  for (const auto& lf : leaves) {
    MatOps ops(*lf.F);
    e.push_back(ops.identity(lf.n));
  }
  return e;
}

inline Element mul_leaf_elements(const std::vector<LeafSpec>& leaves,
                                 const Element& a, const Element& b) {
  Element r;
  r.reserve(leaves.size());
  for (size_t l = 0; l < leaves.size(); ++l)
    r.push_back(MatOps(*leaves[l].F).mul(a[l], b[l]));
  return r;
}

inline Element inv_leaf_element(const std::vector<LeafSpec>& leaves,
                                const Element& a) {
  Element r;
  r.reserve(leaves.size());
  for (size_t l = 0; l < leaves.size(); ++l)
    r.push_back(MatOps(*leaves[l].F).inv(a[l]));
  return r;
}

// Standard generating set read off the leaves: transvections with
// coefficients spanning each field additively, one diagonal stretch per
// general linear leaf over more than two elements, one root of unity per
// finite-multiplicative leaf.
inline std::vector<Element> standard_group_generators(
    const std::vector<LeafSpec>& leaves) {
  std::vector<Element> gens;
  Element id = leaf_identity_element(leaves);
  for (size_t l = 0; l < leaves.size(); ++l) {
    const auto& lf = leaves[l];
    const Fq& F = *lf.F;
    MatOps ops(*lf.F);
    auto push_leaf = [&](const Mat& m) {
      Element e = id;
      e[l] = m;
      gens.push_back(std::move(e));
    };
    if (lf.kind == GroupDescriptor::Kind::Mu) {
      u64 d = u64(gcd(BigInt(lf.r), BigInt(F.q() - 1)));
      if (d > 1) {
        Mat z(1, 1);
        z.at(0, 0) = F.unit((F.q() - 1) / d);
        push_leaf(z);
      }
      continue;
    }
    for (u32 i = 0; i < lf.n; ++i)
      for (u32 j = 0; j < lf.n; ++j) {
        if (i == j) continue;
        for (u32 t = 0; t < F.k(); ++t) {
          Mat e = ops.identity(lf.n);
          e.at(i, j) = F.pow(F.generator(), t);
          push_leaf(e);
        }
      }
    if (lf.kind == GroupDescriptor::Kind::GL && F.q() > 2) {
      Mat dgen = ops.identity(lf.n);
      dgen.at(0, 0) = F.generator();
      push_leaf(dgen);
    }
  }
  return gens;
}

class GroupTable {
 public:
  // Full enumeration by breadth-first closure from standard generators.
  // Refuses (CapError naming the predicted order) when the closed-form
  // order exceeds the cap.
  static GroupTable build(const GroupDescriptor& d, FieldTower& tower,
                          u32 field_deg, u64 cap = kGroupCap) {
    // field_deg is absolute over the prime, so Q = p^field_deg
    BigInt predicted = group_order(d, pow_big(BigInt(tower.p()), field_deg));
    if (predicted > cap)
      throw CapError("group order " + predicted.str() +
                     " exceeds enumeration cap " + std::to_string(cap));
    GroupTable t;
    t.desc_ = d;
    t.leaves_ = flatten_leaves(d, tower, field_deg);
    t.init_ops();
    t.enumerate(t.standard_generators());
    if (BigInt(t.size()) != predicted)
      throw std::logic_error("enumerated order disagrees with closed form");
    return t;
  }

  const GroupDescriptor& descriptor() const { return desc_; }
  const std::vector<LeafSpec>& leaves() const { return leaves_; }
  u32 key_width() const { return width_; }
  u32 size() const { return count_; }
  BigInt order() const { return BigInt(count_); }

  // Indices of the generating set used for enumeration.
  const std::vector<u32>& generator_indices() const { return gen_idx_; }

  Element identity_element() const { return leaf_identity_element(leaves_); }

  std::vector<u32> key_of(const Element& e) const {
    std::vector<u32> k;
    k.reserve(width_);
    for (const auto& m : e) m.append_key(k);
    return k;
  }

  Element element(u32 idx) const {
    Element e;
    const u32* base = keys_.data() + size_t(idx) * width_;
    for (const auto& lf : leaves_) {
      Mat m(lf.n, lf.n);
      for (u32 i = 0; i < lf.n * lf.n; ++i) m.e[i] = base[i];
      base += lf.n * lf.n;
      e.push_back(m);
    }
    return e;
  }

  std::optional<u32> find(const std::vector<u32>& key) const {
    u32 lo = 0, hi = count_;
    while (lo < hi) {
      u32 mid = lo + (hi - lo) / 2;
      int c = cmp_key(mid, key);
      if (c == 0) return mid;
      if (c < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return std::nullopt;
  }

  u32 index(const Element& e) const {
    auto r = find(key_of(e));
    if (!r) throw std::out_of_range("element not in group table");
    return *r;
  }

  u32 identity_index() const { return id_idx_; }

  Element mul_elems(const Element& a, const Element& b) const {
    Element r;
    r.reserve(leaves_.size());
    for (size_t l = 0; l < leaves_.size(); ++l)
      r.push_back(ops_[l].mul(a[l], b[l]));
    return r;
  }

  Element inv_elem(const Element& a) const {
    Element r;
    r.reserve(leaves_.size());
    for (size_t l = 0; l < leaves_.size(); ++l) r.push_back(ops_[l].inv(a[l]));
    return r;
  }

  u32 mul(u32 a, u32 b) const { return index(mul_elems(element(a), element(b))); }
  u32 inv(u32 a) const { return index(inv_elem(element(a))); }

  // Subgroup by membership predicate over elements; the result keeps a map
  // back into this table's indexing.
  GroupTable subgroup_where(
      const std::function<bool(const Element&)>& pred) const {
    GroupTable s;
    s.desc_ = desc_;
    s.leaves_ = leaves_;
    s.init_ops();
    s.parent_map_.emplace();
    for (u32 i = 0; i < count_; ++i) {
      Element e = element(i);
      if (!pred(e)) continue;
      s.keys_.insert(s.keys_.end(), keys_.begin() + size_t(i) * width_,
                     keys_.begin() + size_t(i + 1) * width_);
      s.parent_map_->push_back(i);
    }
    s.count_ = u32(s.parent_map_->size());
    s.locate_identity();
    s.verify_closure();
    return s;
  }

  enum class Which { Borel, Torus, Unipotent, Center, Det1, Scalars };

  GroupTable distinguished_subgroup(Which w) const {
    switch (w) {
      case Which::Borel:
        return subgroup_where([this](const Element& e) {
          for (size_t l = 0; l < leaves_.size(); ++l)
            if (!ops_[l].is_upper_triangular(e[l])) return false;
          return true;
        });
      case Which::Torus:
        return subgroup_where([this](const Element& e) {
          for (size_t l = 0; l < leaves_.size(); ++l)
            if (!is_diagonal(e[l])) return false;
          return true;
        });
      case Which::Unipotent:
        return subgroup_where([this](const Element& e) {
          for (size_t l = 0; l < leaves_.size(); ++l)
            if (!is_unipotent(e[l])) return false;
          return true;
        });
      case Which::Center: {
        // abstract center: commutes with a generating set (or with every
        // element when this table carries no generators)
        std::vector<Element> gens;
        for (u32 g : conjugating_set()) gens.push_back(element(g));
        return subgroup_where([this, gens](const Element& e) {
          for (const auto& g : gens)
            if (!(mul_elems(e, g) == mul_elems(g, e))) return false;
          return true;
        });
      }
      case Which::Det1:
        return subgroup_where(
            [this](const Element& e) { return det_of(e) == 1; });
      case Which::Scalars:
        // rational points of the radical: scalar block per GL leaf,
        // det-1 scalars per SL leaf, identity on finite mu leaves
        return subgroup_where([this](const Element& e) {
          for (size_t l = 0; l < leaves_.size(); ++l) {
            const auto& lf = leaves_[l];
            if (lf.kind == GroupDescriptor::Kind::Mu) {
              if (e[l].at(0, 0) != 1) return false;
            } else {
              if (!is_scalar(e[l])) return false;
              if (lf.kind == GroupDescriptor::Kind::SL &&
                  ops_[l].det(e[l]) != 1)
                return false;
            }
          }
          return true;
        });
    }
    throw std::logic_error("unhandled subgroup selector");
  }

  // product of leaf determinants (a mu leaf contributes its value)
  u32 det_of(const Element& e) const {
    u32 d = 1;
    const Fq& F = *leaves_[0].F;
    for (size_t l = 0; l < leaves_.size(); ++l) {
      if (leaves_[l].F != leaves_[0].F)
        throw std::invalid_argument("det across mixed fields");
      d = F.mul(d, ops_[l].det(e[l]));
    }
    return d;
  }

  const std::optional<std::vector<u32>>& parent_map() const {
    return parent_map_;
  }

  bool contains_all(const GroupTable& sub) const {
    for (u32 i = 0; i < sub.size(); ++i)
      if (!find(sub.key_of(sub.element(i)))) return false;
    return true;
  }

  const ConjugacyClasses& classes() const {
    if (!classes_) compute_classes();
    return *classes_;
  }

 private:
  void init_ops() {
    ops_.clear();
    width_ = 0;
    for (const auto& lf : leaves_) {
      ops_.emplace_back(*lf.F);
      width_ += lf.n * lf.n;
    }
  }

  int cmp_key(u32 idx, const std::vector<u32>& key) const {
    const u32* a = keys_.data() + size_t(idx) * width_;
    for (u32 i = 0; i < width_; ++i) {
      if (a[i] < key[i]) return -1;
      if (a[i] > key[i]) return 1;
    }
    return 0;
  }

  std::vector<Element> standard_generators() const {
    return standard_group_generators(leaves_);
  }

  void enumerate(const std::vector<Element>& gens) {
    std::map<std::vector<u32>, u32> seen;
    std::vector<Element> frontier, next;
    Element id = identity_element();
    seen.emplace(key_of(id), 0);
    frontier.push_back(id);
    while (!frontier.empty()) {
      next.clear();
      for (const auto& e : frontier)
        for (const auto& g : gens) {
          Element p = mul_elems(e, g);
          auto k = key_of(p);
          if (seen.emplace(std::move(k), 0).second) next.push_back(std::move(p));
        }
      frontier.swap(next);
    }
    count_ = u32(seen.size());
    keys_.clear();
    keys_.reserve(size_t(count_) * width_);
    u32 pos = 0;
    for (auto& [k, v] : seen) {
      v = pos++;
      keys_.insert(keys_.end(), k.begin(), k.end());
    }
    gen_idx_.clear();
    for (const auto& g : gens) gen_idx_.push_back(seen.at(key_of(g)));
    locate_identity();
  }

  void locate_identity() {
    auto idk = key_of(identity_element());
    auto r = find(idk);
    if (!r) throw std::logic_error("identity missing from table");
    id_idx_ = *r;
  }

  void verify_closure() const {
    // subgroup construction must yield a genuine subgroup
    for (u32 i = 0; i < count_; ++i) {
      Element a = element(i);
      if (!find(key_of(inv_elem(a))))
        throw std::logic_error("subgroup not closed under inverse");
    }
    // light product spot-check plus full closure for small tables
    u64 limit = u64(count_) * count_ <= 250'000 ? count_ : 0;
    for (u32 i = 0; i < limit; ++i) {
      Element a = element(i);
      for (u32 j = 0; j < count_; ++j)
        if (!find(key_of(mul_elems(a, element(j)))))
          throw std::logic_error("subgroup not closed under product");
    }
  }

  static bool is_diagonal(const Mat& m) {
    for (u32 i = 0; i < m.r; ++i)
      for (u32 j = 0; j < m.c; ++j)
        if (i != j && m.at(i, j)) return false;
    return true;
  }

  static bool is_unipotent(const Mat& m) {
    for (u32 i = 0; i < m.r; ++i) {
      if (m.at(i, i) != 1) return false;
      for (u32 j = 0; j < i; ++j)
        if (m.at(i, j)) return false;
    }
    return true;
  }

  static bool is_scalar(const Mat& m) {
    u32 d = m.at(0, 0);
    if (d == 0) return false;
    for (u32 i = 0; i < m.r; ++i)
      for (u32 j = 0; j < m.c; ++j)
        if (m.at(i, j) != (i == j ? d : 0)) return false;
    return true;
  }

  // Generator indices when present, else every element (subgroup tables
  // built by filtering carry no generating set).
  std::vector<u32> conjugating_set() const {
    if (!gen_idx_.empty()) return gen_idx_;
    std::vector<u32> all(count_);
    for (u32 i = 0; i < count_; ++i) all[i] = i;
    return all;
  }

  void compute_classes() const {
    ConjugacyClasses cc;
    cc.class_of.assign(count_, UINT32_MAX);
    std::vector<Element> gens, gens_inv;
    for (u32 g : conjugating_set()) {
      gens.push_back(element(g));
      gens_inv.push_back(inv_elem(gens.back()));
    }
    std::vector<std::pair<std::vector<u32>, u32>> order_keys;  // (rep key, class)
    u32 nclasses = 0;
    for (u32 start = 0; start < count_; ++start) {
      if (cc.class_of[start] != UINT32_MAX) continue;
      u32 cls = nclasses++;
      std::vector<u32> stack = {start};
      cc.class_of[start] = cls;
      u64 sz = 0;
      u32 rep = start;
      while (!stack.empty()) {
        u32 cur = stack.back();
        stack.pop_back();
        ++sz;
        Element e = element(cur);
        for (size_t g = 0; g < gens.size(); ++g) {
          Element conj = mul_elems(gens[g], mul_elems(e, gens_inv[g]));
          u32 idx = index(conj);
          if (cc.class_of[idx] == UINT32_MAX) {
            cc.class_of[idx] = cls;
            stack.push_back(idx);
          }
        }
      }
      cc.reps.push_back(rep);
      cc.sizes.push_back(sz);
    }
    // canonical class order: by (size, representative key); keys are sorted
    // in the table so the first-found element of each class has minimal key
    std::vector<u32> perm(nclasses);
    for (u32 i = 0; i < nclasses; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](u32 a, u32 b) {
      if (cc.sizes[a] != cc.sizes[b]) return cc.sizes[a] < cc.sizes[b];
      return cc.reps[a] < cc.reps[b];
    });
    std::vector<u32> inv_perm(nclasses);
    for (u32 i = 0; i < nclasses; ++i) inv_perm[perm[i]] = i;
    ConjugacyClasses out;
    out.reps.resize(nclasses);
    out.sizes.resize(nclasses);
    out.centralizer_orders.resize(nclasses);
    out.class_of.resize(count_);
    for (u32 i = 0; i < nclasses; ++i) {
      out.reps[i] = cc.reps[perm[i]];
      out.sizes[i] = cc.sizes[perm[i]];
      if (count_ % cc.sizes[perm[i]] != 0)
        throw std::logic_error("class size does not divide group order");
      out.centralizer_orders[i] = BigInt(count_ / out.sizes[i]);
    }
    for (u32 e = 0; e < count_; ++e) out.class_of[e] = inv_perm[cc.class_of[e]];
    out.inverse_class.resize(nclasses);
    for (u32 i = 0; i < nclasses; ++i)
      out.inverse_class[i] = out.class_of[inv(out.reps[i])];
    u64 total = 0;
    for (u64 s : out.sizes) total += s;
    if (total != count_) throw std::logic_error("class equation violated");
    classes_ = std::move(out);
  }

  GroupDescriptor desc_;
  std::vector<LeafSpec> leaves_;
  std::vector<MatOps> ops_;
  u32 width_ = 0;
  u32 count_ = 0;
  u32 id_idx_ = 0;
  std::vector<u32> keys_;  // count_ * width_, sorted by chunk
  std::vector<u32> gen_idx_;
  std::optional<std::vector<u32>> parent_map_;
  mutable std::optional<ConjugacyClasses> classes_;
};

// Exponent of the group: lcm of element orders.
inline u64 group_exponent(const GroupTable& G) {
  u64 e = 1;
  for (u32 c = 0; c < G.classes().count(); ++c) {
    u32 rep = G.classes().reps[c];
    u64 ord = 1;
    u32 cur = rep;
    while (cur != G.identity_index()) {
      cur = G.mul(cur, rep);
      ++ord;
      if (ord > G.size()) throw std::logic_error("order computation ran away");
    }
    e = lcm_u64(e, ord);
  }
  return e;
}

struct MorphRule {
  enum class Kind { Identity, Inclusion, Det, Mult, Projection, Pow };
  Kind kind = Kind::Identity;
  u32 param = 0;  // projection: factor index; pow: the exponent

  static MorphRule identity() { return {Kind::Identity, 0}; }
  static MorphRule inclusion() { return {Kind::Inclusion, 0}; }
  static MorphRule det() { return {Kind::Det, 0}; }
  static MorphRule mult() { return {Kind::Mult, 0}; }
  static MorphRule projection(u32 i) { return {Kind::Projection, i}; }
  static MorphRule pow(u32 m) { return {Kind::Pow, m}; }
};

// Rule application at the element level; needs only leaf metadata, so the
// same code serves table-backed morphisms and table-free generator mapping.
inline Element apply_morph_rule(const MorphRule& rule, const Element& e,
                                const std::vector<LeafSpec>& src_leaves,
                                const std::vector<LeafSpec>& tgt_leaves) {
  switch (rule.kind) {
    case MorphRule::Kind::Identity:
    case MorphRule::Kind::Inclusion:
      return e;
    case MorphRule::Kind::Det: {
      if (tgt_leaves.size() != 1 || tgt_leaves[0].n != 1)
        throw std::invalid_argument("det target must be 1x1");
      const Fq& F = *src_leaves[0].F;
      u32 d = 1;
      for (size_t l = 0; l < src_leaves.size(); ++l) {
        if (src_leaves[l].F != src_leaves[0].F)
          throw std::invalid_argument("det across mixed fields");
        d = F.mul(d, MatOps(*src_leaves[l].F).det(e[l]));
      }
      Mat m(1, 1);
      m.at(0, 0) = d;
      return {m};
    }
    case MorphRule::Kind::Mult: {
      if (tgt_leaves.size() != 1)
        throw std::invalid_argument("mult target must be a single leaf");
      u32 n = tgt_leaves[0].n;
      const Fq& F = *tgt_leaves[0].F;
      MatOps ops(F);
      Mat acc = ops.identity(n);
      for (const auto& part : e) {
        Mat p(n, n);
        if (part.r == 1 && n != 1) {
          p = ops.scalar(n, part.at(0, 0));
        } else if (part.r == n) {
          p = part;
        } else {
          throw std::invalid_argument("mult rule shape mismatch");
        }
        acc = ops.mul(acc, p);
      }
      return {acc};
    }
    case MorphRule::Kind::Projection: {
      if (rule.param >= e.size())
        throw std::invalid_argument("projection index out of range");
      return {e[rule.param]};
    }
    case MorphRule::Kind::Pow: {
      Element acc = leaf_identity_element(src_leaves);
      for (u32 i = 0; i < rule.param; ++i)
        acc = mul_leaf_elements(src_leaves, acc, e);
      return acc;
    }
  }
  throw std::logic_error("unhandled morphism rule");
}

struct GroupMorphism {
  const GroupTable* source = nullptr;
  const GroupTable* target = nullptr;
  std::vector<u32> map;  // source index -> target index
  u64 kernel_order = 0;
  u64 image_index = 0;
  u64 declared_pi0_kernel = 0;  // scenario metadata, 0 = unset

  u32 operator()(u32 s) const { return map[s]; }
};

inline GroupMorphism make_morphism(const GroupTable& src, const GroupTable& tgt,
                                   MorphRule rule, u64 seed = 12345) {
  GroupMorphism m;
  m.source = &src;
  m.target = &tgt;
  m.map.resize(src.size());

  auto apply = [&](const Element& e) -> Element {
    return apply_morph_rule(rule, e, src.leaves(), tgt.leaves());
  };

  for (u32 i = 0; i < src.size(); ++i) {
    Element img = apply(src.element(i));
    auto idx = tgt.find(tgt.key_of(img));
    if (!idx) throw std::domain_error("morphism image leaves the target group");
    m.map[i] = *idx;
  }

  // homomorphism property: exhaustive on small tables, seeded sample above
  auto check_pair = [&](u32 a, u32 b) {
    u32 lhs = m.map[src.index(src.mul_elems(src.element(a), src.element(b)))];
    u32 rhs = tgt.index(
        tgt.mul_elems(tgt.element(m.map[a]), tgt.element(m.map[b])));
    if (lhs != rhs) throw std::domain_error("map is not a homomorphism");
  };
  if (src.size() <= 10'000) {
    for (u32 a = 0; a < src.size(); ++a)
      for (u32 b = 0; b < src.size(); ++b) check_pair(a, b);
  } else {
    u64 state = seed ? seed : 1;
    auto next = [&state]() {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      return state >> 16;
    };
    for (u32 t = 0; t < 4096; ++t)
      check_pair(u32(next() % src.size()), u32(next() % src.size()));
  }

  std::vector<bool> hit(tgt.size(), false);
  u64 ker = 0;
  for (u32 i = 0; i < src.size(); ++i) {
    if (m.map[i] == tgt.identity_index()) ++ker;
    hit[m.map[i]] = true;
  }
  u64 image = 0;
  for (bool b : hit) image += b;
  if (ker * image != src.size())
    throw std::logic_error("kernel times image mismatch");
  if (tgt.size() % image != 0)
    throw std::logic_error("image does not divide target order");
  m.kernel_order = ker;
  m.image_index = tgt.size() / image;
  return m;
}

// Lazy iteration over Borel elements (upper-triangular tuples) of the
// descriptor over the given fields, without building any table. fn receives
// a reused Element. Throws CapError when the closed-form Borel order
// exceeds the cap. Returns the number visited.
inline u64 for_each_borel(const std::vector<LeafSpec>& leaves, u64 cap,
                          const std::function<void(const Element&)>& fn) {
  BigInt total = 1;
  for (const auto& lf : leaves) {
    const BigInt Q(lf.F->q());
    switch (lf.kind) {
      case GroupDescriptor::Kind::GL:
        total *= borel_order(GroupDescriptor::gl(lf.n), Q);
        break;
      case GroupDescriptor::Kind::SL:
        total *= borel_order(GroupDescriptor::sl(lf.n), Q);
        break;
      case GroupDescriptor::Kind::Mu:
        total *= gcd(BigInt(lf.r), Q - 1);
        break;
      default:
        throw std::invalid_argument("unexpected leaf kind");
    }
  }
  if (total > cap)
    throw CapError("Borel sweep size " + total.str() + " exceeds cap " +
                   std::to_string(cap));

  // mixed-radix odometer: per leaf, a list of positions with their radices
  struct Slot {
    u32 leaf;
    enum { DiagUnit, FreeEntry, MuVal } what;
    u32 i, j;   // matrix position for DiagUnit / FreeEntry
    u64 radix;
  };
  std::vector<Slot> slots;
  for (u32 l = 0; l < leaves.size(); ++l) {
    const auto& lf = leaves[l];
    u64 q = lf.F->q();
    if (lf.kind == GroupDescriptor::Kind::Mu) {
      u64 d = u64(gcd(BigInt(lf.r), BigInt(q - 1)));
      slots.push_back({l, Slot::MuVal, 0, 0, d});
      continue;
    }
    u32 diag_free = lf.kind == GroupDescriptor::Kind::SL ? lf.n - 1 : lf.n;
    for (u32 i = 0; i < diag_free; ++i)
      slots.push_back({l, Slot::DiagUnit, i, i, q - 1});
    for (u32 i = 0; i < lf.n; ++i)
      for (u32 j = i + 1; j < lf.n; ++j)
        slots.push_back({l, Slot::FreeEntry, i, j, q});
  }

  Element e;
  for (const auto& lf : leaves) {
    MatOps ops(*lf.F);
    e.push_back(ops.identity(lf.n));
  }
  std::vector<u64> counter(slots.size(), 0);
  auto fill = [&](size_t s) {
    const Slot& sl = slots[s];
    const Fq& F = *leaves[sl.leaf].F;
    switch (sl.what) {
      case Slot::DiagUnit:
        e[sl.leaf].at(sl.i, sl.j) = F.unit(counter[s]);
        break;
      case Slot::FreeEntry:
        e[sl.leaf].at(sl.i, sl.j) = u32(counter[s]);
        break;
      case Slot::MuVal: {
        u64 d = sl.radix;
        e[sl.leaf].at(0, 0) = d == 1 ? 1 : F.unit((F.q() - 1) / d * counter[s]);
        break;
      }
    }
  };
  auto fix_sl_diag = [&]() {
    // last diagonal entry of each SL leaf balances the determinant
    for (u32 l = 0; l < leaves.size(); ++l) {
      const auto& lf = leaves[l];
      if (lf.kind != GroupDescriptor::Kind::SL) continue;
      const Fq& F = *lf.F;
      u32 prod = 1;
      for (u32 i = 0; i + 1 < lf.n; ++i) prod = F.mul(prod, e[l].at(i, i));
      e[l].at(lf.n - 1, lf.n - 1) = F.inv(prod);
    }
  };
  for (size_t s = 0; s < slots.size(); ++s) fill(s);
  fix_sl_diag();
  u64 visited = 0;
  for (;;) {
    fn(e);
    ++visited;
    size_t s = 0;
    while (s < slots.size()) {
      if (++counter[s] < slots[s].radix) {
        fill(s);
        break;
      }
      counter[s] = 0;
      fill(s);
      ++s;
    }
    if (s == slots.size()) break;
    fix_sl_diag();
  }
  if (BigInt(visited) != total)
    throw std::logic_error("Borel sweep count mismatch");
  return visited;
}

// RCF cross-check: for a single GL leaf of size <= 3 the rational-form
// classifier must induce exactly the orbit partition. (SL classes can be
// strictly finer than rational forms, so the check is GL-only; other
// shapes return true vacuously.)
inline bool rcf_agrees_with_orbits(const GroupTable& G) {
  if (G.leaves().size() != 1 || G.leaves()[0].n > 3 ||
      G.leaves()[0].kind != GroupDescriptor::Kind::GL)
    return true;
  const auto& cc = G.classes();
  MatOps ops(*G.leaves()[0].F);
  std::map<ConjClass, u32> label_to_class;
  for (u32 e = 0; e < G.size(); ++e) {
    ConjClass label = ops.classify(G.element(e)[0]);
    u32 want = cc.class_of[e];
    auto [it, fresh] = label_to_class.emplace(label, want);
    if (!fresh && it->second != want) return false;
  }
  return label_to_class.size() == cc.count();
}

}  // namespace sphmult
