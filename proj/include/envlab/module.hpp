#pragma once

// Finite-dimensional right modules over a slot-graded algebra, as slot-graded
// vector spaces with one action block per algebra basis element.  Elements
// are rows; a hom is one matrix per slot acting on the right, so composing
// "f then g" is the blockwise product F * G.
//
// Modules hold a raw pointer to their algebra; the algebra must outlive every
// module built over it (context objects own algebras at stable addresses).

#include "envlab/algebra.hpp"
#include "envlab/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace envlab {

template <class K>
struct Module {
  const Algebra<K>* alg = nullptr;
  std::vector<int> dims;       // dimension per slot
  std::vector<Matrix<K>> act;  // per basis element b: dims[s(b)] x dims[t(b)]

  int total() const {
    int s = 0;
    for (int d : dims) s += d;
    return s;
  }

  static Module zero_module(const Algebra<K>& a) {
    Module m;
    m.alg = &a;
    m.dims.assign(static_cast<size_t>(a.slots()), 0);
    for (int b = 0; b < a.dim(); ++b) m.act.push_back(Matrix<K>(0, 0));
    return m;
  }

  /// The projective e_u A: basis elements with source slot u, graded by target.
  static Module projective(const Algebra<K>& a, int u) {
    Module m;
    m.alg = &a;
    m.dims.assign(static_cast<size_t>(a.slots()), 0);
    std::vector<int> pos(static_cast<size_t>(a.dim()), -1);  // index within its slot block
    std::vector<std::vector<int>> members(static_cast<size_t>(a.slots()));
    for (int b = 0; b < a.dim(); ++b) {
      auto [s, t] = a.slot_of(b);
      if (s != u) continue;
      pos[static_cast<size_t>(b)] = m.dims[static_cast<size_t>(t)]++;
      members[static_cast<size_t>(t)].push_back(b);
    }
    for (int c = 0; c < a.dim(); ++c) {
      auto [cs, ct] = a.slot_of(c);
      Matrix<K> blk(m.dims[static_cast<size_t>(cs)], m.dims[static_cast<size_t>(ct)]);
      for (int b : members[static_cast<size_t>(cs)]) {
        const auto& prod = a.product_of_basis(b, c);
        for (int k = 0; k < a.dim(); ++k) {
          if (prod[static_cast<size_t>(k)].is_zero()) continue;
          if (pos[static_cast<size_t>(k)] < 0)
            fail(ErrorCode::AxiomFail, "projective action left the source-slot span");
          blk(pos[static_cast<size_t>(b)], pos[static_cast<size_t>(k)]) = prod[static_cast<size_t>(k)];
        }
      }
      m.act.push_back(std::move(blk));
    }
    return m;
  }

  /// The simple at slot u: one-dimensional, acting through the character.
  static Module simple(const Algebra<K>& a, int u) {
    Module m;
    m.alg = &a;
    m.dims.assign(static_cast<size_t>(a.slots()), 0);
    m.dims[static_cast<size_t>(u)] = 1;
    for (int c = 0; c < a.dim(); ++c) {
      auto [cs, ct] = a.slot_of(c);
      Matrix<K> blk(m.dims[static_cast<size_t>(cs)], m.dims[static_cast<size_t>(ct)]);
      if (cs == u && ct == u) blk(0, 0) = a.simple_character(u, c);
      m.act.push_back(std::move(blk));
    }
    return m;
  }
};

template <class K>
struct ModuleHom {
  std::vector<Matrix<K>> block;  // per slot: src.dims[u] x tgt.dims[u]
};

// --- basic hom plumbing ----------------------------------------------------

template <class K>
ModuleHom<K> zero_hom(const Module<K>& m, const Module<K>& n) {
  ModuleHom<K> f;
  for (size_t u = 0; u < m.dims.size(); ++u)
    f.block.push_back(Matrix<K>(m.dims[u], n.dims[u]));
  return f;
}

template <class K>
ModuleHom<K> identity_hom(const Module<K>& m) {
  ModuleHom<K> f;
  for (size_t u = 0; u < m.dims.size(); ++u) f.block.push_back(Matrix<K>::identity(m.dims[u]));
  return f;
}

template <class K>
ModuleHom<K> compose(const ModuleHom<K>& f, const ModuleHom<K>& g) {
  if (f.block.size() != g.block.size()) fail(ErrorCode::DimMismatch, "hom composition slot mismatch");
  ModuleHom<K> h;
  for (size_t u = 0; u < f.block.size(); ++u) h.block.push_back(f.block[u] * g.block[u]);
  return h;
}

template <class K>
ModuleHom<K> hom_add(const ModuleHom<K>& f, const ModuleHom<K>& g) {
  ModuleHom<K> h;
  for (size_t u = 0; u < f.block.size(); ++u) h.block.push_back(f.block[u] + g.block[u]);
  return h;
}

template <class K>
ModuleHom<K> hom_sub(const ModuleHom<K>& f, const ModuleHom<K>& g) {
  ModuleHom<K> h;
  for (size_t u = 0; u < f.block.size(); ++u) h.block.push_back(f.block[u] - g.block[u]);
  return h;
}

template <class K>
ModuleHom<K> hom_scaled(const ModuleHom<K>& f, const K& c) {
  ModuleHom<K> h;
  for (size_t u = 0; u < f.block.size(); ++u) h.block.push_back(f.block[u].scaled(c));
  return h;
}

template <class K>
bool hom_is_zero(const ModuleHom<K>& f) {
  for (const auto& b : f.block)
    if (!b.is_zero()) return false;
  return true;
}

template <class K>
bool hom_equal(const ModuleHom<K>& f, const ModuleHom<K>& g) {
  if (f.block.size() != g.block.size()) return false;
  for (size_t u = 0; u < f.block.size(); ++u)
    if (f.block[u] != g.block[u]) return false;
  return true;
}

/// Intertwining test: act_M[b] * F_t = F_s * act_N[b] for every basis b.
template <class K>
bool is_hom(const Module<K>& m, const ModuleHom<K>& f, const Module<K>& n) {
  if (m.alg != n.alg || f.block.size() != m.dims.size()) return false;
  for (size_t u = 0; u < m.dims.size(); ++u)
    if (f.block[u].rows() != m.dims[u] || f.block[u].cols() != n.dims[u]) return false;
  const Algebra<K>& a = *m.alg;
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    if (m.act[static_cast<size_t>(b)] * f.block[static_cast<size_t>(t)] !=
        f.block[static_cast<size_t>(s)] * n.act[static_cast<size_t>(b)])
      return false;
  }
  return true;
}

template <class K>
void check_hom(const Module<K>& m, const ModuleHom<K>& f, const Module<K>& n) {
  if (!is_hom(m, f, n)) fail(ErrorCode::AxiomFail, "matrix family is not a module homomorphism");
}

// --- structural validation -------------------------------------------------

template <class K>
int slot_offset(const Module<K>& m, int u) {
  int off = 0;
  for (int v = 0; v < u; ++v) off += m.dims[static_cast<size_t>(v)];
  return off;
}

/// Action of a general algebra element as one total x total matrix.
template <class K>
Matrix<K> full_action(const Module<K>& m, const std::vector<K>& x) {
  const Algebra<K>& a = *m.alg;
  Matrix<K> out(m.total(), m.total());
  for (int b = 0; b < a.dim(); ++b) {
    if (x[static_cast<size_t>(b)].is_zero()) continue;
    auto [s, t] = a.slot_of(b);
    const Matrix<K>& blk = m.act[static_cast<size_t>(b)];
    int ro = slot_offset(m, s), co = slot_offset(m, t);
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) out(ro + i, co + j) += x[static_cast<size_t>(b)] * blk(i, j);
  }
  return out;
}

/// Action block of a slot-pure algebra element (support within one slot pair).
template <class K>
Matrix<K> pure_action_block(const Module<K>& m, const std::vector<K>& x, int s, int t) {
  const Algebra<K>& a = *m.alg;
  Matrix<K> blk(m.dims[static_cast<size_t>(s)], m.dims[static_cast<size_t>(t)]);
  for (int b = 0; b < a.dim(); ++b) {
    if (x[static_cast<size_t>(b)].is_zero()) continue;
    if (a.slot_of(b) != std::make_pair(s, t))
      fail(ErrorCode::AxiomFail, "element is not slot-pure for the requested block");
    blk = blk + m.act[static_cast<size_t>(b)].scaled(x[static_cast<size_t>(b)]);
  }
  return blk;
}

template <class K>
void validate_module(const Module<K>& m) {
  const Algebra<K>& a = *m.alg;
  if (static_cast<int>(m.dims.size()) != a.slots() || static_cast<int>(m.act.size()) != a.dim())
    fail(ErrorCode::DimMismatch, "module data does not match the algebra layout");
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    const Matrix<K>& blk = m.act[static_cast<size_t>(b)];
    if (blk.rows() != m.dims[static_cast<size_t>(s)] || blk.cols() != m.dims[static_cast<size_t>(t)])
      fail(ErrorCode::DimMismatch, "action block of '" + a.basis_name(b) + "' has the wrong shape");
  }
  // The unit acts as the identity.
  Matrix<K> unit_act(m.total(), m.total());
  for (int u = 0; u < a.slots(); ++u) unit_act = unit_act + full_action(m, a.idempotent(u));
  if (unit_act != Matrix<K>::identity(m.total()))
    fail(ErrorCode::AxiomFail, "unit does not act as the identity");
  // Multiplicativity on basis pairs.
  for (int i = 0; i < a.dim(); ++i) {
    auto [is, it] = a.slot_of(i);
    for (int j = 0; j < a.dim(); ++j) {
      auto [js, jt] = a.slot_of(j);
      if (it != js) continue;  // product of basis elements is zero
      Matrix<K> lhs = m.act[static_cast<size_t>(i)] * m.act[static_cast<size_t>(j)];
      Matrix<K> rhs(m.dims[static_cast<size_t>(is)], m.dims[static_cast<size_t>(jt)]);
      const auto& prod = a.product_of_basis(i, j);
      for (int k = 0; k < a.dim(); ++k)
        if (!prod[static_cast<size_t>(k)].is_zero())
          rhs = rhs + m.act[static_cast<size_t>(k)].scaled(prod[static_cast<size_t>(k)]);
      if (lhs != rhs)
        fail(ErrorCode::AxiomFail, "action is not multiplicative on '" + a.basis_name(i) + "', '" + a.basis_name(j) + "'");
    }
  }
}

// --- hom spaces -------------------------------------------------------------

template <class K>
std::vector<K> flatten_hom(const ModuleHom<K>& f) {
  std::vector<K> out;
  for (const auto& blk : f.block)
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) out.push_back(blk(i, j));
  return out;
}

template <class K>
ModuleHom<K> unflatten_hom(const Module<K>& m, const Module<K>& n, const std::vector<K>& v) {
  ModuleHom<K> f = zero_hom(m, n);
  size_t p = 0;
  for (auto& blk : f.block)
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) blk(i, j) = v[p++];
  return f;
}

/// Deterministic basis of Hom(M, N), from the RREF kernel of the
/// intertwining equations.
template <class K>
std::vector<ModuleHom<K>> hom_basis(const Module<K>& m, const Module<K>& n) {
  const Algebra<K>& a = *m.alg;
  if (m.alg != n.alg) fail(ErrorCode::BadInput, "hom between modules over different algebras");
  std::vector<int> uoff(m.dims.size() + 1, 0);
  for (size_t u = 0; u < m.dims.size(); ++u) uoff[u + 1] = uoff[u] + m.dims[u] * n.dims[u];
  const int unknowns = uoff[m.dims.size()];
  auto uidx = [&](int u, int i, int j) { return uoff[static_cast<size_t>(u)] + i * n.dims[static_cast<size_t>(u)] + j; };

  // Count equations: one block equation per algebra basis element.
  int eqs = 0;
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    eqs += m.dims[static_cast<size_t>(s)] * n.dims[static_cast<size_t>(t)];
  }
  Matrix<K> E(unknowns, eqs);
  int ecol = 0;
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    const Matrix<K>& am = m.act[static_cast<size_t>(b)];
    const Matrix<K>& an = n.act[static_cast<size_t>(b)];
    for (int i = 0; i < m.dims[static_cast<size_t>(s)]; ++i)
      for (int j = 0; j < n.dims[static_cast<size_t>(t)]; ++j) {
        // sum_k am(i,k) F_t(k,j) - sum_k F_s(i,k) an(k,j) = 0
        for (int k = 0; k < m.dims[static_cast<size_t>(t)]; ++k)
          if (!am(i, k).is_zero()) E(uidx(t, k, j), ecol) += am(i, k);
        for (int k = 0; k < n.dims[static_cast<size_t>(s)]; ++k)
          if (!an(k, j).is_zero()) E(uidx(s, i, k), ecol) -= an(k, j);
        ++ecol;
      }
  }
  Matrix<K> ker = left_kernel(E);
  std::vector<ModuleHom<K>> out;
  for (int r = 0; r < ker.rows(); ++r) out.push_back(unflatten_hom(m, n, ker.row(r)));
  return out;
}

template <class K>
int hom_dim(const Module<K>& m, const Module<K>& n) {
  return static_cast<int>(hom_basis(m, n).size());
}

/// Coordinates of f over a list of homs (rows of the flattened span), if any.
template <class K>
std::optional<std::vector<K>> hom_coords(const std::vector<ModuleHom<K>>& basis, const ModuleHom<K>& f) {
  std::vector<K> fv = flatten_hom(f);
  const int n = static_cast<int>(fv.size());
  Matrix<K> span(static_cast<int>(basis.size()), n);
  for (size_t r = 0; r < basis.size(); ++r) span.set_row(static_cast<int>(r), flatten_hom(basis[r]));
  Matrix<K> rhs(1, n);
  rhs.set_row(0, fv);
  auto sol = solve_left(span, rhs);
  if (!sol) return std::nullopt;
  return sol->row(0);
}

// --- submodules and quotients ----------------------------------------------

template <class K>
struct Submodule {
  Module<K> mod;
  ModuleHom<K> incl;           // mod -> ambient
  std::vector<Matrix<K>> rows;  // RREF basis rows per slot, in ambient coords
};

template <class K>
struct QuotientModule {
  Module<K> mod;
  ModuleHom<K> proj;  // ambient -> mod
};

/// Submodule spanned by the given rows (checked to be action-closed).
template <class K>
Submodule<K> submodule_from_rows(const Module<K>& m, const std::vector<Matrix<K>>& spanning) {
  const Algebra<K>& a = *m.alg;
  Submodule<K> out;
  out.rows.resize(m.dims.size());
  for (size_t u = 0; u < m.dims.size(); ++u) {
    if (spanning[u].cols() != m.dims[u]) fail(ErrorCode::DimMismatch, "submodule rows have the wrong width");
    out.rows[u] = row_space_basis(spanning[u]);
  }
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    Matrix<K> img = out.rows[static_cast<size_t>(s)] * m.act[static_cast<size_t>(b)];
    if (!row_space_contains(out.rows[static_cast<size_t>(t)], img))
      fail(ErrorCode::AxiomFail, "rows do not span an action-closed submodule");
  }
  out.mod.alg = m.alg;
  out.mod.dims.resize(m.dims.size());
  for (size_t u = 0; u < m.dims.size(); ++u) out.mod.dims[u] = out.rows[u].rows();
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    Matrix<K> img = out.rows[static_cast<size_t>(s)] * m.act[static_cast<size_t>(b)];
    auto coords = solve_left(out.rows[static_cast<size_t>(t)], img);
    out.mod.act.push_back(*coords);
  }
  out.incl.block = out.rows;
  return out;
}

/// Quotient by an action-closed row space, with deterministic coordinates on
/// the non-pivot columns of the RREF.
template <class K>
QuotientModule<K> quotient_by_rows(const Module<K>& m, const std::vector<Matrix<K>>& spanning) {
  const Algebra<K>& a = *m.alg;
  std::vector<Matrix<K>> rows(m.dims.size());
  std::vector<std::vector<int>> free_cols(m.dims.size());
  for (size_t u = 0; u < m.dims.size(); ++u) {
    if (spanning[u].cols() != m.dims[u]) fail(ErrorCode::DimMismatch, "quotient rows have the wrong width");
    rows[u] = row_space_basis(spanning[u]);
  }
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    Matrix<K> img = rows[static_cast<size_t>(s)] * m.act[static_cast<size_t>(b)];
    if (!row_space_contains(rows[static_cast<size_t>(t)], img))
      fail(ErrorCode::AxiomFail, "rows do not span an action-closed submodule");
  }
  // Free (non-pivot) coordinates index the quotient basis.
  std::vector<Rref<K>> rr;
  for (size_t u = 0; u < m.dims.size(); ++u) {
    rr.push_back(rref(rows[u]));
    std::vector<bool> piv(static_cast<size_t>(m.dims[u]), false);
    for (int c : rr[u].pivot_cols) piv[static_cast<size_t>(c)] = true;
    for (int j = 0; j < m.dims[u]; ++j)
      if (!piv[static_cast<size_t>(j)]) free_cols[u].push_back(j);
  }
  // Reduction of an ambient row to quotient coordinates.
  auto reduce = [&](size_t u, std::vector<K> v) {
    for (int p = 0; p < rr[u].rank; ++p) {
      K c = v[static_cast<size_t>(rr[u].pivot_cols[static_cast<size_t>(p)])];
      if (c.is_zero()) continue;
      for (int j = 0; j < m.dims[u]; ++j) v[static_cast<size_t>(j)] -= c * rr[u].reduced(p, j);
    }
    std::vector<K> out;
    for (int j : free_cols[u]) out.push_back(v[static_cast<size_t>(j)]);
    return out;
  };

  QuotientModule<K> out;
  out.mod.alg = m.alg;
  out.mod.dims.resize(m.dims.size());
  for (size_t u = 0; u < m.dims.size(); ++u) out.mod.dims[u] = static_cast<int>(free_cols[u].size());
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    Matrix<K> blk(out.mod.dims[static_cast<size_t>(s)], out.mod.dims[static_cast<size_t>(t)]);
    for (size_t r = 0; r < free_cols[static_cast<size_t>(s)].size(); ++r) {
      std::vector<K> rep(static_cast<size_t>(m.dims[static_cast<size_t>(s)]), K(0));
      rep[static_cast<size_t>(free_cols[static_cast<size_t>(s)][r])] = K(1);
      Matrix<K> rep_m(1, m.dims[static_cast<size_t>(s)]);
      rep_m.set_row(0, rep);
      auto img = (rep_m * m.act[static_cast<size_t>(b)]).row(0);
      auto q = reduce(static_cast<size_t>(t), img);
      for (size_t j = 0; j < q.size(); ++j) blk(static_cast<int>(r), static_cast<int>(j)) = q[j];
    }
    out.mod.act.push_back(std::move(blk));
  }
  out.proj = zero_hom(m, out.mod);
  for (size_t u = 0; u < m.dims.size(); ++u)
    for (int i = 0; i < m.dims[u]; ++i) {
      std::vector<K> e(static_cast<size_t>(m.dims[u]), K(0));
      e[static_cast<size_t>(i)] = K(1);
      auto q = reduce(u, e);
      for (size_t j = 0; j < q.size(); ++j) out.proj.block[u](i, static_cast<int>(j)) = q[j];
    }
  return out;
}

template <class K>
Submodule<K> kernel(const Module<K>& m, const ModuleHom<K>& f, const Module<K>& n) {
  (void)n;
  std::vector<Matrix<K>> rows;
  for (size_t u = 0; u < m.dims.size(); ++u) rows.push_back(left_kernel(f.block[u]));
  return submodule_from_rows(m, rows);
}

template <class K>
Submodule<K> image(const Module<K>& m, const ModuleHom<K>& f, const Module<K>& n) {
  (void)m;
  std::vector<Matrix<K>> rows;
  for (size_t u = 0; u < n.dims.size(); ++u) rows.push_back(row_space_basis(f.block[u]));
  return submodule_from_rows(n, rows);
}

template <class K>
QuotientModule<K> cokernel(const Module<K>& m, const ModuleHom<K>& f, const Module<K>& n) {
  (void)m;
  std::vector<Matrix<K>> rows;
  for (size_t u = 0; u < n.dims.size(); ++u) rows.push_back(f.block[u]);
  return quotient_by_rows(n, rows);
}

// --- direct sums -------------------------------------------------------------

template <class K>
struct DirectSum {
  Module<K> mod;
  std::vector<ModuleHom<K>> inject;   // summand -> sum
  std::vector<ModuleHom<K>> project;  // sum -> summand
};

template <class K>
DirectSum<K> direct_sum(const std::vector<Module<K>>& parts) {
  if (parts.empty()) fail(ErrorCode::BadInput, "direct sum of an empty list needs an algebra");
  const Algebra<K>& a = *parts[0].alg;
  DirectSum<K> out;
  out.mod.alg = &a;
  out.mod.dims.assign(static_cast<size_t>(a.slots()), 0);
  std::vector<std::vector<int>> off(parts.size(), std::vector<int>(static_cast<size_t>(a.slots()), 0));
  for (size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].alg != &a) fail(ErrorCode::BadInput, "direct sum across different algebras");
    for (int u = 0; u < a.slots(); ++u) {
      off[p][static_cast<size_t>(u)] = out.mod.dims[static_cast<size_t>(u)];
      out.mod.dims[static_cast<size_t>(u)] += parts[p].dims[static_cast<size_t>(u)];
    }
  }
  for (int b = 0; b < a.dim(); ++b) {
    auto [s, t] = a.slot_of(b);
    Matrix<K> blk(out.mod.dims[static_cast<size_t>(s)], out.mod.dims[static_cast<size_t>(t)]);
    for (size_t p = 0; p < parts.size(); ++p)
      parts[p].act[static_cast<size_t>(b)].paste_into(blk, off[p][static_cast<size_t>(s)], off[p][static_cast<size_t>(t)]);
    out.mod.act.push_back(std::move(blk));
  }
  for (size_t p = 0; p < parts.size(); ++p) {
    ModuleHom<K> in = zero_hom(parts[p], out.mod);
    ModuleHom<K> pr = zero_hom(out.mod, parts[p]);
    for (int u = 0; u < a.slots(); ++u) {
      for (int i = 0; i < parts[p].dims[static_cast<size_t>(u)]; ++i) {
        in.block[static_cast<size_t>(u)](i, off[p][static_cast<size_t>(u)] + i) = K(1);
        pr.block[static_cast<size_t>(u)](off[p][static_cast<size_t>(u)] + i, i) = K(1);
      }
    }
    out.inject.push_back(std::move(in));
    out.project.push_back(std::move(pr));
  }
  return out;
}

// --- radical, socle, tops ----------------------------------------------------

/// Rows spanning M * rad(A), per slot.
template <class K>
std::vector<Matrix<K>> radical_rows(const Module<K>& m) {
  const Algebra<K>& a = *m.alg;
  const Matrix<K>& rad = a.radical();
  std::vector<std::vector<std::vector<K>>> acc(m.dims.size());
  for (int r = 0; r < rad.rows(); ++r) {
    auto x = rad.row(r);
    // Radical basis rows are slot-pure (the radical is slot-graded and RREF
    // cannot mix disjoint supports); find the slot pair from the support.
    int s = -1, t = -1;
    for (int b = 0; b < a.dim(); ++b)
      if (!x[static_cast<size_t>(b)].is_zero()) {
        auto st = a.slot_of(b);
        if (s < 0) std::tie(s, t) = st;
        else if (std::make_pair(s, t) != st)
          fail(ErrorCode::AxiomFail, "radical basis row is not slot-pure");
      }
    if (s < 0) continue;
    Matrix<K> blk = pure_action_block(m, x, s, t);
    for (int i = 0; i < blk.rows(); ++i) acc[static_cast<size_t>(t)].push_back(blk.row(i));
  }
  std::vector<Matrix<K>> rows;
  for (size_t u = 0; u < m.dims.size(); ++u)
    rows.push_back(row_space_basis(Matrix<K>::from_rows(acc[u], m.dims[u])));
  return rows;
}

template <class K>
Submodule<K> radical_submodule(const Module<K>& m) {
  return submodule_from_rows(m, radical_rows(m));
}

template <class K>
QuotientModule<K> top(const Module<K>& m) {
  return quotient_by_rows(m, radical_rows(m));
}

/// Largest submodule killed by the radical, per slot.
template <class K>
std::vector<Matrix<K>> socle_rows(const Module<K>& m) {
  const Algebra<K>& a = *m.alg;
  const Matrix<K>& rad = a.radical();
  std::vector<Matrix<K>> soc;
  for (size_t u = 0; u < m.dims.size(); ++u) soc.push_back(Matrix<K>::identity(m.dims[u]));
  for (int r = 0; r < rad.rows(); ++r) {
    auto x = rad.row(r);
    int s = -1, t = -1;
    for (int b = 0; b < a.dim(); ++b)
      if (!x[static_cast<size_t>(b)].is_zero()) {
        std::tie(s, t) = a.slot_of(b);
        break;
      }
    if (s < 0) continue;
    Matrix<K> blk = pure_action_block(m, x, s, t);
    soc[static_cast<size_t>(s)] = row_space_intersect(soc[static_cast<size_t>(s)], left_kernel(blk));
  }
  return soc;
}

template <class K>
Submodule<K> socle_submodule(const Module<K>& m) {
  return submodule_from_rows(m, socle_rows(m));
}

/// Layer dimensions of the radical filtration M > M rad > M rad^2 > ...,
/// outermost layer first.  Each layer is semisimple, so its slot dimensions
/// are its simple multiplicities.
template <class K>
std::vector<std::vector<int>> radical_filtration(const Module<K>& m) {
  std::vector<std::vector<int>> layers;
  Module<K> cur = m;
  while (cur.total() > 0) {
    Submodule<K> r = radical_submodule(cur);
    std::vector<int> layer(cur.dims.size());
    for (size_t u = 0; u < cur.dims.size(); ++u) layer[u] = cur.dims[u] - r.mod.dims[u];
    layers.push_back(std::move(layer));
    if (r.mod.total() == cur.total()) fail(ErrorCode::AxiomFail, "radical filtration does not descend");
    cur = r.mod;
  }
  return layers;
}

/// Multiplicity of each slot simple among the composition factors.  Over a
/// split basic algebra every radical layer is a sum of slot simples, so the
/// filtration telescopes to the slot dimensions.
template <class K>
std::vector<int> composition_factor_counts(const Module<K>& m) {
  return m.dims;
}

// --- projective covers and Ext^1 ---------------------------------------------

template <class K>
struct Cover {
  Module<K> proj;
  ModuleHom<K> onto;
  std::vector<int> mult;  // copies of e_u A per slot u
};

template <class K>
Cover<K> projective_cover(const Module<K>& m) {
  const Algebra<K>& a = *m.alg;
  std::vector<Matrix<K>> rad = radical_rows(m);
  Cover<K> out;
  out.mult.assign(static_cast<size_t>(a.slots()), 0);
  std::vector<Module<K>> parts;
  std::vector<std::pair<int, std::vector<K>>> gens;  // (slot, generator row in M_u)
  for (int u = 0; u < a.slots(); ++u) {
    Rref<K> rr = rref(rad[static_cast<size_t>(u)]);
    std::vector<bool> piv(static_cast<size_t>(m.dims[static_cast<size_t>(u)]), false);
    for (int c : rr.pivot_cols) piv[static_cast<size_t>(c)] = true;
    for (int j = 0; j < m.dims[static_cast<size_t>(u)]; ++j) {
      if (piv[static_cast<size_t>(j)]) continue;
      ++out.mult[static_cast<size_t>(u)];
      parts.push_back(Module<K>::projective(a, u));
      std::vector<K> g(static_cast<size_t>(m.dims[static_cast<size_t>(u)]), K(0));
      g[static_cast<size_t>(j)] = K(1);
      gens.push_back({u, std::move(g)});
    }
  }
  if (parts.empty()) {
    out.proj = Module<K>::zero_module(a);
    out.onto = zero_hom(out.proj, m);
    if (m.total() != 0) fail(ErrorCode::AxiomFail, "nonzero module with zero top");
    return out;
  }
  DirectSum<K> ds = direct_sum(parts);
  out.proj = ds.mod;
  out.onto = zero_hom(out.proj, m);
  for (size_t p = 0; p < parts.size(); ++p) {
    auto [u, g] = gens[p];
    // Generator e_u of the p-th copy maps to g; basis element b of e_u A
    // (slot (u, t)) maps to g * act[b].
    ModuleHom<K> phi = zero_hom(parts[p], m);
    std::vector<int> pos(static_cast<size_t>(a.slots()), 0);
    for (int b = 0; b < a.dim(); ++b) {
      auto [s, t] = a.slot_of(b);
      if (s != u) continue;
      Matrix<K> gm(1, m.dims[static_cast<size_t>(u)]);
      gm.set_row(0, g);
      auto img = (gm * m.act[static_cast<size_t>(b)]).row(0);
      phi.block[static_cast<size_t>(t)].set_row(pos[static_cast<size_t>(t)]++, img);
    }
    out.onto = hom_add(out.onto, compose(ds.project[p], phi));
  }
  for (size_t u = 0; u < m.dims.size(); ++u)
    if (rank(out.onto.block[u]) != m.dims[u])
      fail(ErrorCode::AxiomFail, "projective cover failed to surject");
  return out;
}

template <class K>
bool is_projective(const Module<K>& m) {
  return projective_cover(m).proj.dims == m.dims;
}

/// One projective presentation step: P0 ->> M with kernel K0 included in P0.
template <class K>
struct Presentation {
  Cover<K> cover;     // P0 ->> M
  Submodule<K> ker;   // K0 -> P0
};

template <class K>
Presentation<K> presentation(const Module<K>& m) {
  Presentation<K> p{projective_cover(m), {}};
  p.ker = kernel(p.cover.proj, p.cover.onto, m);
  return p;
}

/// dim Ext^1(M, N) via Hom(K0, N) / image of Hom(P0, N), from the conflation
/// K0 -> P0 ->> M and projectivity of P0.
template <class K>
int ext1_dim(const Module<K>& m, const Module<K>& n) {
  Presentation<K> p = presentation(m);
  auto hk = hom_basis(p.ker.mod, n);
  auto h0 = hom_basis(p.cover.proj, n);
  if (hk.empty()) return 0;
  std::vector<std::vector<K>> restricted;
  for (const auto& psi : h0) restricted.push_back(flatten_hom(compose(p.ker.incl, psi)));
  Matrix<K> res = Matrix<K>::from_rows(restricted, static_cast<int>(flatten_hom(hk[0]).size()));
  return static_cast<int>(hk.size()) - rank(res);
}

// --- isomorphism witnesses ----------------------------------------------------

template <class K>
ModuleHom<K> inverse_hom(const ModuleHom<K>& f) {
  ModuleHom<K> g;
  for (const auto& blk : f.block) g.block.push_back(inverse(blk));
  return g;
}

template <class K>
bool hom_is_invertible(const ModuleHom<K>& f) {
  for (const auto& blk : f.block)
    if (!is_invertible(blk)) return false;
  return true;
}

/// Seeded search for an isomorphism M -> N: single hom-basis elements first,
/// then random combinations.  A returned witness is exact; nullopt means no
/// invertible combination was found within the try budget.
template <class K>
std::optional<ModuleHom<K>> find_isomorphism(const Module<K>& m, const Module<K>& n,
                                             std::uint64_t seed, int tries = 64) {
  if (m.dims != n.dims) return std::nullopt;
  if (m.total() == 0) return identity_hom(m);
  auto basis = hom_basis(m, n);
  if (basis.empty()) return std::nullopt;
  for (const auto& f : basis)
    if (hom_is_invertible(f)) return f;
  SplitMix64 rng(seed);
  const FieldSpec& field = m.alg->field();
  for (int t = 0; t < tries; ++t) {
    ModuleHom<K> f = zero_hom(m, n);
    for (const auto& b : basis) f = hom_add(f, hom_scaled(b, random_scalar<K>(rng, field)));
    if (hom_is_invertible(f)) return f;
  }
  return std::nullopt;
}

/// Trace-ideal membership: M lies in add(G_1 + ... + G_r) iff the identity of
/// M is a sum of maps factoring through the G_i.  Deterministic and complete.
template <class K>
bool in_additive_closure(const Module<K>& m, const std::vector<Module<K>>& gens) {
  if (m.total() == 0) return true;
  std::vector<std::vector<K>> comps;
  for (const auto& g : gens) {
    auto out = hom_basis(m, g);
    auto in = hom_basis(g, m);
    for (const auto& f : out)
      for (const auto& h : in) comps.push_back(flatten_hom(compose(f, h)));
  }
  std::vector<K> idv = flatten_hom(identity_hom(m));
  Matrix<K> span = Matrix<K>::from_rows(comps, static_cast<int>(idv.size()));
  Matrix<K> idm(1, static_cast<int>(idv.size()));
  idm.set_row(0, idv);
  return row_space_contains(span, idm);
}

}  // namespace envlab
