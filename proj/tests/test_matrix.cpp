#include <catch2/catch_amalgamated.hpp>

#include "envlab/matrix.hpp"

#include "support/common.hpp"

using envlab::ErrorCode;
using envlab::Fp;
using envlab::Matrix;
using envlab::Rational;
using testsupport::sc;

namespace {

template <class K>
Matrix<K> mat(const std::vector<std::vector<long long>>& rows) {
  Matrix<K> m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = sc<K>(rows[i][j]);
  return m;
}

}  // namespace

TEMPLATE_TEST_CASE("rref and rank on a hand-reduced matrix", "", Rational, Fp) {
  using K = TestType;
  // Hand reduction: r2 - 2 r1 = (0,0,1), r3 - r1 = (0,0,1); then clear col 2.
  auto a = mat<K>({{1, 2, 3}, {2, 4, 7}, {1, 2, 4}});
  auto r = envlab::rref(a);
  REQUIRE(r.rank == 2);
  REQUIRE(r.pivot_cols == std::vector<int>{0, 2});
  REQUIRE(r.reduced == mat<K>({{1, 2, 0}, {0, 0, 1}, {0, 0, 0}}));
  REQUIRE(r.transform * a == r.reduced);
  REQUIRE(envlab::rank(a) == 2);
  REQUIRE(envlab::rank(Matrix<K>::identity(4)) == 4);
  REQUIRE(envlab::rank(Matrix<K>::zero(2, 5)) == 0);
}

TEMPLATE_TEST_CASE("left kernel matches the hand-solved system", "", Rational, Fp) {
  using K = TestType;
  // x1 r1 + x2 r2 + x3 r3 = 0 solves to the line through (1, -1, 1).
  auto a = mat<K>({{1, 2, 3}, {2, 4, 7}, {1, 2, 4}});
  auto ker = envlab::left_kernel(a);
  REQUIRE(ker.rows() == 1);
  REQUIRE(ker == mat<K>({{1, -1, 1}}));
  REQUIRE((ker * a).is_zero());
  REQUIRE(envlab::left_kernel(Matrix<K>::identity(3)).rows() == 0);
}

TEMPLATE_TEST_CASE("solve_left finds exact solutions and rejects the rest", "", Rational, Fp) {
  using K = TestType;
  auto a = mat<K>({{1, 2, 3}, {2, 4, 7}, {1, 2, 4}});
  auto b = mat<K>({{3, 6, 10}, {0, 0, 1}});
  auto x = envlab::solve_left(a, b);
  REQUIRE(x.has_value());
  REQUIRE(*x * a == b);
  REQUIRE_FALSE(envlab::solve_left(a, mat<K>({{0, 1, 0}})).has_value());
  REQUIRE(envlab::row_space_contains(a, b));
  REQUIRE_FALSE(envlab::row_space_contains(a, mat<K>({{0, 1, 0}})));
}

TEMPLATE_TEST_CASE("row space sum and intersection", "", Rational, Fp) {
  using K = TestType;
  auto a = mat<K>({{1, 0, 0}, {0, 1, 0}});
  auto b = mat<K>({{1, 1, 0}, {0, 0, 1}});
  REQUIRE(envlab::row_space_sum(a, b).rows() == 3);
  auto cap = envlab::row_space_intersect(a, b);
  REQUIRE(cap == mat<K>({{1, 1, 0}}));
  // Intersection of a plane with itself.
  REQUIRE(envlab::row_space_intersect(a, a).rows() == 2);
  // Trivial intersection.
  REQUIRE(envlab::row_space_intersect(mat<K>({{1, 0, 0}}), mat<K>({{0, 1, 0}})).rows() == 0);
}

TEMPLATE_TEST_CASE("inverse agrees with hand computation", "", Rational, Fp) {
  using K = TestType;
  auto m = mat<K>({{1, 2}, {3, 4}});
  REQUIRE(envlab::is_invertible(m));
  auto mi = envlab::inverse(m);
  REQUIRE(m * mi == Matrix<K>::identity(2));
  REQUIRE(mi * m == Matrix<K>::identity(2));
  // det = -2, adjugate/det first entry is -2.
  REQUIRE(mi(0, 0) == sc<K>(-2));
  REQUIRE(mi(0, 1) == sc<K>(1));
  REQUIRE_FALSE(envlab::is_invertible(mat<K>({{1, 2}, {2, 4}})));
  REQUIRE(testsupport::code_of([&] { envlab::inverse(mat<K>({{1, 2}, {2, 4}})); }) == ErrorCode::BadInput);
}

TEST_CASE("inverse entries over the rationals") {
  auto m = mat<Rational>({{1, 2}, {3, 4}});
  auto mi = envlab::inverse(m);
  REQUIRE(mi(1, 0).str() == "3/2");
  REQUIRE(mi(1, 1).str() == "-1/2");
}

TEMPLATE_TEST_CASE("block operations", "", Rational, Fp) {
  using K = TestType;
  auto a = mat<K>({{1, 2}, {3, 4}});
  auto b = mat<K>({{5}, {6}});
  auto h = Matrix<K>::hconcat(a, b);
  REQUIRE(h == mat<K>({{1, 2, 5}, {3, 4, 6}}));
  auto v = Matrix<K>::vconcat(a, mat<K>({{7, 8}}));
  REQUIRE(v == mat<K>({{1, 2}, {3, 4}, {7, 8}}));
  REQUIRE(h.block(0, 1, 2, 2) == mat<K>({{2, 5}, {4, 6}}));
  Matrix<K> dst(3, 3);
  a.paste_into(dst, 1, 1);
  REQUIRE(dst == mat<K>({{0, 0, 0}, {0, 1, 2}, {0, 3, 4}}));
  REQUIRE((a - a).is_zero());
  REQUIRE(a + (-a) == Matrix<K>::zero(2, 2));
  REQUIRE(a.scaled(sc<K>(2)) == mat<K>({{2, 4}, {6, 8}}));
  REQUIRE(a.transpose() == mat<K>({{1, 3}, {2, 4}}));
}

TEMPLATE_TEST_CASE("shape mismatches raise E_DIM_MISMATCH", "", Rational, Fp) {
  using K = TestType;
  auto a = mat<K>({{1, 2}});
  REQUIRE(testsupport::code_of([&] { (void)(a * a); }) == ErrorCode::DimMismatch);
  REQUIRE(testsupport::code_of([&] { (void)(a + mat<K>({{1}})); }) == ErrorCode::DimMismatch);
  REQUIRE(testsupport::code_of([&] { envlab::solve_left(a, mat<K>({{1}})); }) == ErrorCode::DimMismatch);
}
