#pragma once

// Shared desk-scale fixtures: the linear-quiver category with its simple
// cokernel, the twisted-sheaf generators on the projective line, and a seeded
// random-module generator for cross-checking the quotient hom formulas.

#include "envlab/exact.hpp"
#include "envlab/rng.hpp"

#include "common.hpp"

#include <memory>
#include <vector>

namespace testsupport {

/// Generators P1 = (k -> k), P2 = (0 -> k), S1 = (k -> 0) over the path
/// algebra of the one-arrow quiver.
template <class K>
envlab::ExactContext<K> make_line_context() {
  envlab::Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  auto alg = std::make_unique<envlab::Algebra<K>>(
      envlab::Algebra<K>::from_quiver(spec<K>(), q, {}, 1));
  std::vector<envlab::Module<K>> gens{envlab::Module<K>::projective(*alg, 0),
                                      envlab::Module<K>::projective(*alg, 1),
                                      envlab::Module<K>::simple(*alg, 0)};
  return envlab::ExactContext<K>::build(std::move(alg), std::move(gens), {"P1", "P2", "S1"});
}

/// Twisting sheaves O(0), O(1), O(2) as the vertex projectives of the quiver
/// v0 => v1 => v2 with the commutation relation between the two arrow layers.
inline envlab::ExactContext<envlab::Fp> make_kron_context() {
  using envlab::Fp;
  envlab::Quiver q;
  q.vertices = {"v0", "v1", "v2"};
  q.arrows = {{"x0", 0, 1}, {"x1", 0, 1}, {"y0", 1, 2}, {"y1", 1, 2}};
  envlab::Relation<Fp> rel{envlab::RelationTerm<Fp>{sc<Fp>(1), {0, 3}},
                           envlab::RelationTerm<Fp>{sc<Fp>(-1), {1, 2}}};
  auto alg = std::make_unique<envlab::Algebra<Fp>>(
      envlab::Algebra<Fp>::from_quiver(spec<Fp>(), q, {rel}, 2));
  std::vector<envlab::Module<Fp>> gens{envlab::Module<Fp>::projective(*alg, 2),
                                       envlab::Module<Fp>::projective(*alg, 1),
                                       envlab::Module<Fp>::projective(*alg, 0)};
  return envlab::ExactContext<Fp>::build(std::move(alg), std::move(gens), {"O0", "O1", "O2"});
}

template <class K>
envlab::Matrix<K> mat(const std::vector<std::vector<long long>>& rows, int cols) {
  envlab::Matrix<K> m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = sc<K>(rows[i][j]);
  return m;
}

/// Unit morphism at pair-basis position k of the component G_j -> G_i.
template <class K>
envlab::EMorphism<K> unit_map(const envlab::ExactContext<K>& ctx, int j, int i, int k = 0) {
  envlab::EMorphism<K> f = ctx.e_zero(envlab::EObject{{j}}, envlab::EObject{{i}});
  f.entry[0][0][static_cast<size_t>(ctx.pair_offset(i, j) + k)] = K(1);
  return f;
}

/// The inclusion/cokernel pair P2 -> P1 ->> S1 of the line fixture.
template <class K>
envlab::Conflation<K> line_conflation(const envlab::ExactContext<K>& ctx) {
  return {unit_map(ctx, 1, 0), unit_map(ctx, 0, 2)};
}

/// The twisted Euler sequence O(0) -> O(1)^2 ->> O(2) as category morphisms.
inline envlab::Conflation<envlab::Fp> euler_conflation(const envlab::ExactContext<envlab::Fp>& ctx) {
  using envlab::Fp;
  envlab::EObject o0{{0}}, o1sq{{1, 1}}, o2{{2}};
  envlab::ModuleHom<Fp> ih = envlab::zero_hom(ctx.ambient_module(o0), ctx.ambient_module(o1sq));
  ih.block[2] = mat<Fp>({{0, 1, -1, 0}}, 4);
  envlab::ModuleHom<Fp> dh = envlab::zero_hom(ctx.ambient_module(o1sq), ctx.ambient_module(o2));
  dh.block[1] = mat<Fp>({{1, 0}, {0, 1}}, 2);
  dh.block[2] = mat<Fp>({{1, 0, 0}, {0, 1, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
  return {ctx.from_ambient_hom(o0, o1sq, ih), ctx.from_ambient_hom(o1sq, o2, dh)};
}

/// Seeded random module: a quotient of a random sum of slot projectives by
/// the action closure of a handful of random rows.
template <class K>
envlab::Module<K> random_module(const envlab::Algebra<K>& a, envlab::SplitMix64& rng,
                                int max_mult = 2) {
  std::vector<envlab::Module<K>> parts;
  for (int u = 0; u < a.slots(); ++u) {
    int m = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(max_mult + 1)));
    for (int c = 0; c < m; ++c) parts.push_back(envlab::Module<K>::projective(a, u));
  }
  if (parts.empty())
    parts.push_back(envlab::Module<K>::projective(
        a, static_cast<int>(rng.bounded(static_cast<std::uint64_t>(a.slots())))));
  envlab::Module<K> p = envlab::direct_sum(parts).mod;

  std::vector<envlab::Matrix<K>> rows;
  for (size_t u = 0; u < p.dims.size(); ++u) {
    int k = static_cast<int>(rng.bounded(3));
    envlab::Matrix<K> r(k, p.dims[u]);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < p.dims[u]; ++j) r(i, j) = envlab::random_scalar<K>(rng, a.field());
    rows.push_back(envlab::row_space_basis(r));
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (int b = 0; b < a.dim(); ++b) {
      auto [s, t] = a.slot_of(b);
      envlab::Matrix<K> img = rows[static_cast<size_t>(s)] * p.act[static_cast<size_t>(b)];
      if (!envlab::row_space_contains(rows[static_cast<size_t>(t)], img)) {
        rows[static_cast<size_t>(t)] = envlab::row_space_sum(rows[static_cast<size_t>(t)], img);
        grew = true;
      }
    }
  }
  return envlab::quotient_by_rows(p, rows).mod;
}

}  // namespace testsupport
