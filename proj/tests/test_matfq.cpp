#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "sphmult/matfq.hpp"

using namespace sphmult;

namespace {

Mat make(u32 r, u32 c, std::initializer_list<u32> vals) {
  Mat m(r, c);
  u32 i = 0;
  for (u32 v : vals) m.e[i++] = v;
  return m;
}

// Every invertible n x n matrix over F, by odometer enumeration.
template <typename Fn>
void for_each_gl(const MatOps& ops, u32 n, Fn&& fn) {
  u32 q = ops.field().q();
  u64 total = 1;
  for (u32 i = 0; i < n * n; ++i) total *= q;
  for (u64 v = 0; v < total; ++v) {
    Mat m(n, n);
    u64 t = v;
    for (u32 i = 0; i < n * n; ++i) {
      m.e[i] = u32(t % q);
      t /= q;
    }
    if (ops.det(m) != 0) fn(m);
  }
}

}  // namespace

TEST_CASE("determinant and inverse over F_3") {
  Fq F(3, 1);
  MatOps ops(F);
  Mat a = make(2, 2, {1, 2, 1, 1});
  CHECK(ops.det(a) == 2);
  Mat ai = ops.inv(a);
  CHECK(ops.mul(a, ai) == ops.identity(2));
  CHECK(ops.mul(ai, a) == ops.identity(2));
  Mat s = make(2, 2, {1, 2, 2, 1});  // det = 1 - 4 = 0 mod 3
  CHECK(ops.det(s) == 0);
  CHECK_THROWS_AS(ops.inv(s), std::domain_error);
}

TEST_CASE("rref canonicalizes row spaces") {
  Fq F(2, 1);
  MatOps ops(F);
  Mat a = make(2, 3, {1, 1, 0, 0, 1, 1});
  Mat b = make(2, 3, {1, 0, 1, 0, 1, 1});  // row-equivalent to a
  CHECK(ops.rref(a) == 2);
  CHECK(ops.rref(b) == 2);
  CHECK(a == b);
  Mat c = make(2, 3, {1, 1, 0, 1, 1, 0});
  CHECK(ops.rref(c) == 1);
}

TEST_CASE("charpoly of companion matrices") {
  Fq F(5, 1);
  MatOps ops(F);
  // companion of x^2 - 3x + 2, i.e. column (0 1; -2 3) convention below
  Mat a = make(2, 2, {0, 3, 1, 2});  // rows: (0,3),(1,2): tr=2, det=-3=2
  auto cp = ops.charpoly(a);
  CHECK(cp == std::vector<u32>{2, 3, 1});  // x^2 + 3x + 2 = x^2 - 2x + 2
  Mat t = make(3, 3, {1, 4, 0, 0, 2, 1, 0, 0, 3});
  auto cp3 = ops.charpoly(t);
  // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6 = x^3 + 4x^2 + x + 4 mod 5
  CHECK(cp3 == std::vector<u32>{4, 1, 4, 1});
}

TEST_CASE("conjugacy classes of GL_2(F_2)") {
  Fq F(2, 1);
  MatOps ops(F);
  std::map<ConjClass, u64> bucket;
  for_each_gl(ops, 2, [&](const Mat& m) { bucket[ops.classify(m)] += 1; });
  REQUIRE(bucket.size() == 3);
  std::vector<u64> sizes;
  for (auto& [k, v] : bucket) sizes.push_back(v);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<u64>{1, 2, 3});
  for (auto& [cls, sz] : bucket) CHECK(class_size(cls, 2, 2) == sz);
}

TEST_CASE("conjugacy classes of GL_2(F_3)") {
  Fq F(3, 1);
  MatOps ops(F);
  std::map<ConjClass, u64> bucket;
  for_each_gl(ops, 2, [&](const Mat& m) { bucket[ops.classify(m)] += 1; });
  REQUIRE(bucket.size() == 8);
  std::vector<u64> sizes;
  for (auto& [k, v] : bucket) sizes.push_back(v);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<u64>{1, 1, 6, 6, 6, 8, 8, 12});
  for (auto& [cls, sz] : bucket) CHECK(class_size(cls, 2, 3) == sz);
}

TEST_CASE("conjugacy classes of GL_3(F_2)") {
  Fq F(2, 1);
  MatOps ops(F);
  std::map<ConjClass, u64> bucket;
  for_each_gl(ops, 3, [&](const Mat& m) { bucket[ops.classify(m)] += 1; });
  REQUIRE(bucket.size() == 6);
  std::vector<u64> sizes;
  for (auto& [k, v] : bucket) sizes.push_back(v);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<u64>{1, 21, 24, 24, 42, 56});
  for (auto& [cls, sz] : bucket) CHECK(class_size(cls, 3, 2) == sz);
}

TEST_CASE("triangular classification agrees with the generic path") {
  Fq F(3, 1);
  MatOps ops(F);
  for_each_gl(ops, 2, [&](const Mat& m) {
    if (!ops.is_upper_triangular(m)) return;
    // conjugating by a permutation-like matrix breaks triangularity
    Mat g = make(2, 2, {0, 1, 1, 2});
    Mat conj = ops.mul(ops.mul(g, m), ops.inv(g));
    CHECK(ops.classify(m) == ops.classify(conj));
  });
}

TEST_CASE("group orders") {
  CHECK(gl_order(2, 2) == 6);
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(2, 4) == 180);
  CHECK(gl_order(2, 9) == 5760);
  CHECK(gl_order(3, 2) == 168);
  CHECK(sl_order(2, 3) == 24);
}

TEST_CASE("centralizer orders sum to the group order") {
  // sum over classes of |G|/|Z| = |G|
  for (u32 q : {2u, 3u}) {
    Fq F(q, 1);
    MatOps ops(F);
    std::map<ConjClass, u64> bucket;
    for_each_gl(ops, 2, [&](const Mat& m) { bucket[ops.classify(m)] += 1; });
    BigInt total = 0;
    for (auto& [cls, sz] : bucket) total += class_size(cls, 2, q);
    CHECK(total == gl_order(2, q));
  }
}
