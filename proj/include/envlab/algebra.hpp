#pragma once

// Finite-dimensional associative algebras with a distinguished complete set
// of orthogonal idempotents ("slots").  Two constructors: a quiver with
// parallel, length-homogeneous relations reduced degree by degree, and a raw
// structure-constants table.  Every basis element is slot-pure: b = e_s b e_t
// for a unique pair (s, t); right modules then act slot s -> slot t.

#include "envlab/matrix.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace envlab {

struct Quiver {
  struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
  };
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
};

/// One relation: a linear combination of parallel paths of one common length,
/// each path a list of arrow indices in traversal order (first arrow first).
template <class K>
struct RelationTerm {
  K coeff;
  std::vector<int> arrows;
};
template <class K>
using Relation = std::vector<RelationTerm<K>>;

template <class K>
class Algebra {
 public:
  /// Quotient of a path algebra by length-homogeneous relations, with an
  /// explicit path-length bound.  Paths of each degree are eliminated against
  /// the degree slice of the ideal; a path surviving at (bound+1) certifies
  /// that the quotient is not finite-dimensional over the bound.
  static Algebra from_quiver(const FieldSpec& field, const Quiver& q,
                             const std::vector<Relation<K>>& relations, int path_bound);

  /// Raw structure constants.  `table[i][j]` holds the coefficients of
  /// b_i * b_j over the basis; `idempotent_indices` name the basis elements
  /// that form the complete orthogonal idempotent set, in slot order.
  static Algebra from_table(const FieldSpec& field, std::vector<std::string> slot_names,
                            std::vector<std::string> basis_names,
                            std::vector<std::vector<std::vector<K>>> table,
                            const std::vector<int>& idempotent_indices);

  const FieldSpec& field() const { return field_; }

  int dim() const { return static_cast<int>(basis_names_.size()); }
  int slots() const { return static_cast<int>(slot_names_.size()); }
  const std::string& slot_name(int i) const { return slot_names_[static_cast<size_t>(i)]; }
  const std::string& basis_name(int i) const { return basis_names_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& slot_names() const { return slot_names_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  std::pair<int, int> slot_of(int basis_index) const { return slot_[static_cast<size_t>(basis_index)]; }
  const std::vector<K>& idempotent(int i) const { return idem_[static_cast<size_t>(i)]; }

  const std::vector<K>& product_of_basis(int i, int j) const {
    return table_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  std::vector<K> zero_vec() const { return std::vector<K>(static_cast<size_t>(dim()), K(0)); }
  std::vector<K> unit() const {
    auto u = zero_vec();
    for (int i = 0; i < slots(); ++i)
      for (int k = 0; k < dim(); ++k) u[static_cast<size_t>(k)] += idem_[static_cast<size_t>(i)][static_cast<size_t>(k)];
    return u;
  }

  /// Product of two coefficient vectors.
  std::vector<K> multiply(const std::vector<K>& x, const std::vector<K>& y) const {
    auto out = zero_vec();
    for (int i = 0; i < dim(); ++i) {
      if (x[static_cast<size_t>(i)].is_zero()) continue;
      for (int j = 0; j < dim(); ++j) {
        if (y[static_cast<size_t>(j)].is_zero()) continue;
        const auto& t = table_[static_cast<size_t>(i)][static_cast<size_t>(j)];
        K c = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
        for (int k = 0; k < dim(); ++k)
          if (!t[static_cast<size_t>(k)].is_zero()) out[static_cast<size_t>(k)] += c * t[static_cast<size_t>(k)];
      }
    }
    return out;
  }

  /// Matrix of right multiplication by basis element j on coefficient rows.
  Matrix<K> right_mult_matrix(int j) const {
    Matrix<K> m(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      for (int k = 0; k < dim(); ++k) m(i, k) = table_[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
    return m;
  }

  /// Full structural validation: orthogonal idempotents summing to the unit,
  /// slot-pure products, associativity on all basis triples.
  void validate() const;

  /// Basis of the Jacobson radical as RREF rows over the algebra basis.
  /// Computed from the trace form and then *certified*: the candidate must be
  /// a nilpotent ideal whose quotient is spanned by the slot idempotents.
  /// Certification failure raises E_AXIOM_FAIL (not split basic over k, or
  /// the characteristic is too small for the trace method).
  const Matrix<K>& radical() const;

  /// Scalar through which basis element b acts on the simple at `slot`
  /// (zero unless b is slot-pure of type (slot, slot)).
  K simple_character(int slot, int basis_index) const;

  /// dim of rad/rad^2 restricted to slot (u, v): the arrow counts of the
  /// species/Ext-quiver of the algebra.
  Matrix<K> radical_square() const;
  std::vector<std::vector<int>> ext_quiver_arrow_counts() const;

  /// Opposite algebra: same basis, reversed products, swapped slots.
  Algebra opposite() const;

 private:
  FieldSpec field_ = FieldSpec::rationals();
  std::vector<std::string> slot_names_;
  std::vector<std::string> basis_names_;
  std::vector<std::pair<int, int>> slot_;
  std::vector<std::vector<std::vector<K>>> table_;
  std::vector<std::vector<K>> idem_;

  mutable bool radical_ready_ = false;
  mutable Matrix<K> radical_rows_;

  Matrix<K> slot_subspace(int u, int v) const;

  /// Pins every stored scalar to the concrete field (relevant for F_p, where
  /// plain integer literals circulate without a modulus until attached).
  void attach_scalars() {
    for (auto& row : table_)
      for (auto& entry : row)
        for (auto& x : entry) x = FieldOps<K>::attach(field_, x);
    for (auto& e : idem_)
      for (auto& x : e) x = FieldOps<K>::attach(field_, x);
  }
};

// ---------------------------------------------------------------------------

template <class K>
Algebra<K> Algebra<K>::from_quiver(const FieldSpec& field, const Quiver& q,
                                   const std::vector<Relation<K>>& relations, int path_bound) {
  const int nv = static_cast<int>(q.vertices.size());
  if (nv == 0) fail(ErrorCode::BadInput, "quiver needs at least one vertex");
  if (path_bound < 0) fail(ErrorCode::BadInput, "negative path bound");
  {
    std::map<std::string, int> seen;
    for (const auto& v : q.vertices)
      if (!seen.emplace(v, 1).second) fail(ErrorCode::BadInput, "duplicate vertex name '" + v + "'");
    std::map<std::string, int> aseen;
    for (const auto& a : q.arrows) {
      if (a.src < 0 || a.src >= nv || a.tgt < 0 || a.tgt >= nv)
        fail(ErrorCode::BadInput, "arrow '" + a.name + "' references a missing vertex");
      if (!aseen.emplace(a.name, 1).second) fail(ErrorCode::BadInput, "duplicate arrow name '" + a.name + "'");
    }
  }

  struct Path {
    int src, tgt;
    std::vector<int> arrows;  // traversal order
  };

  // Paths by degree, lexicographic within a degree.
  std::vector<std::vector<Path>> paths(static_cast<size_t>(path_bound) + 2);
  for (int v = 0; v < nv; ++v) paths[0].push_back(Path{v, v, {}});
  size_t total = static_cast<size_t>(nv);
  for (int len = 1; len <= path_bound + 1; ++len) {
    for (const Path& p : paths[static_cast<size_t>(len - 1)]) {
      for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
        if (q.arrows[static_cast<size_t>(a)].src != p.tgt) continue;
        Path np = p;
        np.tgt = q.arrows[static_cast<size_t>(a)].tgt;
        np.arrows.push_back(a);
        paths[static_cast<size_t>(len)].push_back(std::move(np));
        if (++total > 200000) fail(ErrorCode::NotFiniteDim, "path enumeration exceeds sanity cap; lower the path bound");
      }
    }
  }

  // Validate relations: nonempty, composable, parallel, one common length >= 1.
  struct RelInfo { int src, tgt, len; };
  std::vector<RelInfo> rinfo;
  for (size_t ri = 0; ri < relations.size(); ++ri) {
    const auto& rel = relations[ri];
    if (rel.empty()) fail(ErrorCode::BadInput, "empty relation");
    RelInfo info{-1, -1, -1};
    for (const auto& term : rel) {
      if (term.arrows.empty()) fail(ErrorCode::BadInput, "relation term with empty path (length-0 terms unsupported)");
      int src = -1, prev = -1;
      for (size_t k = 0; k < term.arrows.size(); ++k) {
        int a = term.arrows[k];
        if (a < 0 || a >= static_cast<int>(q.arrows.size()))
          fail(ErrorCode::BadInput, "relation references a missing arrow");
        const auto& arr = q.arrows[static_cast<size_t>(a)];
        if (k == 0) src = arr.src;
        else if (arr.src != prev) fail(ErrorCode::BadInput, "relation path is not composable");
        prev = arr.tgt;
      }
      if (info.len < 0) info = RelInfo{src, prev, static_cast<int>(term.arrows.size())};
      else if (info.src != src || info.tgt != prev)
        fail(ErrorCode::BadInput, "relation terms are not parallel (mixed source/target)");
      else if (info.len != static_cast<int>(term.arrows.size()))
        fail(ErrorCode::BadInput, "relation terms mix path lengths; only length-homogeneous relations are supported");
    }
    rinfo.push_back(info);
  }

  // Degreewise elimination.  For each degree d, the ideal slice is spanned by
  // a * r * b over paths a, b with len(a) + len(r) + len(b) = d and matching
  // endpoints; the RREF of that slice marks pivot paths as eliminated and
  // stores their rewriting over the surviving paths of the same degree.
  auto path_key = [](const Path& p) { return p.arrows; };
  std::vector<std::map<std::vector<int>, int>> index_of(paths.size());
  for (size_t d = 0; d < paths.size(); ++d)
    for (size_t i = 0; i < paths[d].size(); ++i) index_of[d][path_key(paths[d][i])] = static_cast<int>(i);
  // Degree-0 keys collide (all empty) — index trivial paths by vertex instead.
  index_of[0].clear();

  std::vector<std::vector<bool>> eliminated(paths.size());
  std::vector<std::map<int, std::vector<K>>> rewrite(paths.size());  // pivot path -> coeffs over all paths of the degree
  for (size_t deg = 1; deg < paths.size(); ++deg) {
    const auto& pd = paths[deg];
    eliminated[deg].assign(pd.size(), false);
    std::vector<std::vector<K>> rows;
    for (size_t ri = 0; ri < relations.size(); ++ri) {
      const int m = rinfo[ri].len;
      if (m > static_cast<int>(deg)) continue;
      for (int la = 0; la + m <= static_cast<int>(deg); ++la) {
        int lb = static_cast<int>(deg) - m - la;
        for (const Path& a : paths[static_cast<size_t>(la)]) {
          if (a.tgt != rinfo[ri].src) continue;
          for (const Path& b : paths[static_cast<size_t>(lb)]) {
            if (b.src != rinfo[ri].tgt) continue;
            std::vector<K> row(pd.size(), K(0));
            for (const auto& term : relations[ri]) {
              std::vector<int> seq = a.arrows;
              seq.insert(seq.end(), term.arrows.begin(), term.arrows.end());
              seq.insert(seq.end(), b.arrows.begin(), b.arrows.end());
              auto it = index_of[deg].find(seq);
              if (it == index_of[deg].end()) fail(ErrorCode::BadInput, "internal: relation instance path missing");
              row[static_cast<size_t>(it->second)] += term.coeff;
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
    if (rows.empty()) continue;
    Matrix<K> mat = Matrix<K>::from_rows(rows, static_cast<int>(pd.size()));
    Rref<K> r = rref(mat);
    for (int p = 0; p < r.rank; ++p) {
      int pc = r.pivot_cols[static_cast<size_t>(p)];
      eliminated[deg][static_cast<size_t>(pc)] = true;
      std::vector<K> rw(pd.size(), K(0));
      for (int j = 0; j < static_cast<int>(pd.size()); ++j)
        if (j != pc) rw[static_cast<size_t>(j)] = -r.reduced(p, j);
      rewrite[deg][pc] = std::move(rw);
    }
  }
  for (size_t d = 1; d < paths.size(); ++d)
    if (eliminated[d].empty()) eliminated[d].assign(paths[d].size(), false);

  // Finite-dimensionality certificate at degree bound+1.
  {
    size_t dtop = static_cast<size_t>(path_bound) + 1;
    for (size_t i = 0; i < paths[dtop].size(); ++i)
      if (!eliminated[dtop][i])
        fail(ErrorCode::NotFiniteDim,
             "path of length " + std::to_string(dtop) + " survives reduction; quotient exceeds the path bound");
  }

  Algebra A;
  A.field_ = field;
  A.slot_names_ = q.vertices;
  // Surviving paths of degree <= bound, in (degree, lex) order.
  struct Loc { int deg, idx; };
  std::vector<Loc> basis_loc;
  for (int d = 0; d <= path_bound; ++d)
    for (size_t i = 0; i < paths[static_cast<size_t>(d)].size(); ++i)
      if (d == 0 || !eliminated[static_cast<size_t>(d)][i]) basis_loc.push_back(Loc{d, static_cast<int>(i)});

  std::vector<std::vector<int>> basis_index_by_deg(paths.size());
  for (size_t d = 0; d < paths.size(); ++d) basis_index_by_deg[d].assign(paths[d].size(), -1);
  for (size_t bi = 0; bi < basis_loc.size(); ++bi)
    basis_index_by_deg[static_cast<size_t>(basis_loc[bi].deg)][static_cast<size_t>(basis_loc[bi].idx)] = static_cast<int>(bi);

  auto path_name = [&](const Path& p) {
    if (p.arrows.empty()) return std::string("e_") + q.vertices[static_cast<size_t>(p.src)];
    std::string s;
    for (size_t k = 0; k < p.arrows.size(); ++k) {
      if (k) s += "*";
      s += q.arrows[static_cast<size_t>(p.arrows[k])].name;
    }
    return s;
  };

  for (const Loc& loc : basis_loc) {
    const Path& p = paths[static_cast<size_t>(loc.deg)][static_cast<size_t>(loc.idx)];
    A.basis_names_.push_back(path_name(p));
    A.slot_.push_back({p.src, p.tgt});
  }

  const int D = static_cast<int>(basis_loc.size());
  A.table_.assign(static_cast<size_t>(D),
                  std::vector<std::vector<K>>(static_cast<size_t>(D), std::vector<K>(static_cast<size_t>(D), K(0))));

  // Reduce a degree-d path (by global index within its degree) to surviving
  // basis coordinates.  Rewrites stay within one degree, so one pass is
  // enough: RREF rows express pivots over non-pivot (surviving) paths only.
  auto reduced_coords = [&](int deg, int idx) {
    std::vector<K> out(static_cast<size_t>(D), K(0));
    if (deg == 0 || !eliminated[static_cast<size_t>(deg)][static_cast<size_t>(idx)]) {
      out[static_cast<size_t>(basis_index_by_deg[static_cast<size_t>(deg)][static_cast<size_t>(idx)])] = K(1);
      return out;
    }
    const auto& rw = rewrite[static_cast<size_t>(deg)].at(idx);
    for (size_t j = 0; j < rw.size(); ++j) {
      if (rw[j].is_zero()) continue;
      int bi = basis_index_by_deg[static_cast<size_t>(deg)][j];
      if (bi < 0) fail(ErrorCode::BadInput, "internal: rewrite hits an eliminated path");
      out[static_cast<size_t>(bi)] += rw[j];
    }
    return out;
  };

  for (int i = 0; i < D; ++i) {
    const Path& pi = paths[static_cast<size_t>(basis_loc[static_cast<size_t>(i)].deg)][static_cast<size_t>(basis_loc[static_cast<size_t>(i)].idx)];
    for (int j = 0; j < D; ++j) {
      const Path& pj = paths[static_cast<size_t>(basis_loc[static_cast<size_t>(j)].deg)][static_cast<size_t>(basis_loc[static_cast<size_t>(j)].idx)];
      if (pi.tgt != pj.src) continue;  // product vanishes
      int deg = static_cast<int>(pi.arrows.size() + pj.arrows.size());
      if (deg > path_bound) continue;  // certified zero beyond the bound
      std::vector<int> seq = pi.arrows;
      seq.insert(seq.end(), pj.arrows.begin(), pj.arrows.end());
      int idx;
      if (deg == 0) idx = pi.src;
      else idx = index_of[static_cast<size_t>(deg)].at(seq);
      A.table_[static_cast<size_t>(i)][static_cast<size_t>(j)] = reduced_coords(deg, idx);
    }
  }

  A.idem_.assign(static_cast<size_t>(nv), A.zero_vec());
  for (int v = 0; v < nv; ++v) A.idem_[static_cast<size_t>(v)][static_cast<size_t>(v)] = K(1);
  A.attach_scalars();
  return A;
}

template <class K>
Algebra<K> Algebra<K>::from_table(const FieldSpec& field, std::vector<std::string> slot_names,
                                  std::vector<std::string> basis_names,
                                  std::vector<std::vector<std::vector<K>>> table,
                                  const std::vector<int>& idempotent_indices) {
  Algebra A;
  A.field_ = field;
  A.slot_names_ = std::move(slot_names);
  A.basis_names_ = std::move(basis_names);
  A.table_ = std::move(table);
  const int d = A.dim();
  if (A.table_.size() != static_cast<size_t>(d)) fail(ErrorCode::BadInput, "structure table row count mismatch");
  for (const auto& row : A.table_) {
    if (row.size() != static_cast<size_t>(d)) fail(ErrorCode::BadInput, "structure table column count mismatch");
    for (const auto& v : row)
      if (v.size() != static_cast<size_t>(d)) fail(ErrorCode::BadInput, "structure table entry length mismatch");
  }
  if (idempotent_indices.size() != A.slot_names_.size())
    fail(ErrorCode::BadInput, "idempotent list must match slot names");
  for (int e : idempotent_indices) {
    if (e < 0 || e >= d) fail(ErrorCode::BadInput, "idempotent index out of range");
    auto v = A.zero_vec();
    v[static_cast<size_t>(e)] = K(1);
    A.idem_.push_back(std::move(v));
  }
  A.attach_scalars();
  // Infer slot purity: b = e_u b e_v for exactly one (u, v).
  A.slot_.assign(static_cast<size_t>(d), {-1, -1});
  for (int b = 0; b < d; ++b) {
    auto vb = A.zero_vec();
    vb[static_cast<size_t>(b)] = K(1);
    for (int u = 0; u < A.slots(); ++u)
      for (int v = 0; v < A.slots(); ++v) {
        auto p = A.multiply(A.idem_[static_cast<size_t>(u)], A.multiply(vb, A.idem_[static_cast<size_t>(v)]));
        if (p == vb) {
          if (A.slot_[static_cast<size_t>(b)].first >= 0)
            fail(ErrorCode::BadInput, "basis element '" + A.basis_names_[static_cast<size_t>(b)] + "' is slot-pure for two slots");
          A.slot_[static_cast<size_t>(b)] = {u, v};
        }
      }
    if (A.slot_[static_cast<size_t>(b)].first < 0)
      fail(ErrorCode::BadInput, "basis element '" + A.basis_names_[static_cast<size_t>(b)] + "' is not slot-pure for the given idempotents");
  }
  A.validate();
  return A;
}

template <class K>
void Algebra<K>::validate() const {
  const int d = dim();
  // Idempotents: orthogonal, idempotent, sum to a two-sided unit.
  for (int i = 0; i < slots(); ++i)
    for (int j = 0; j < slots(); ++j) {
      auto p = multiply(idem_[static_cast<size_t>(i)], idem_[static_cast<size_t>(j)]);
      if (i == j ? (p != idem_[static_cast<size_t>(i)]) : !std::all_of(p.begin(), p.end(), [](const K& x) { return x.is_zero(); }))
        fail(ErrorCode::AxiomFail, "idempotents are not orthogonal idempotents");
    }
  auto u = unit();
  for (int b = 0; b < d; ++b) {
    auto vb = zero_vec();
    vb[static_cast<size_t>(b)] = K(1);
    if (multiply(u, vb) != vb || multiply(vb, u) != vb)
      fail(ErrorCode::AxiomFail, "idempotent sum is not a unit");
  }
  // Slot purity of products.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& t = table_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      bool nonzero = false;
      for (const auto& x : t) nonzero = nonzero || !x.is_zero();
      if (!nonzero) continue;
      if (slot_[static_cast<size_t>(i)].second != slot_[static_cast<size_t>(j)].first)
        fail(ErrorCode::AxiomFail, "nonzero product across incompatible slots");
      for (int k = 0; k < d; ++k)
        if (!t[static_cast<size_t>(k)].is_zero() &&
            (slot_[static_cast<size_t>(k)].first != slot_[static_cast<size_t>(i)].first ||
             slot_[static_cast<size_t>(k)].second != slot_[static_cast<size_t>(j)].second))
          fail(ErrorCode::AxiomFail, "product is not slot-pure");
    }
  // Associativity on basis triples.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& tij = table_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      for (int k = 0; k < d; ++k) {
        auto lhs = zero_vec();
        for (int m = 0; m < d; ++m)
          if (!tij[static_cast<size_t>(m)].is_zero())
            for (int n = 0; n < d; ++n)
              lhs[static_cast<size_t>(n)] += tij[static_cast<size_t>(m)] * table_[static_cast<size_t>(m)][static_cast<size_t>(k)][static_cast<size_t>(n)];
        const auto& tjk = table_[static_cast<size_t>(j)][static_cast<size_t>(k)];
        auto rhs = zero_vec();
        for (int m = 0; m < d; ++m)
          if (!tjk[static_cast<size_t>(m)].is_zero())
            for (int n = 0; n < d; ++n)
              rhs[static_cast<size_t>(n)] += table_[static_cast<size_t>(i)][static_cast<size_t>(m)][static_cast<size_t>(n)] * tjk[static_cast<size_t>(m)];
        if (lhs != rhs) fail(ErrorCode::AxiomFail, "structure constants are not associative");
      }
    }
}

template <class K>
const Matrix<K>& Algebra<K>::radical() const {
  if (radical_ready_) return radical_rows_;
  const int d = dim();
  // tau(b) = trace of left multiplication by b.
  std::vector<K> tau(static_cast<size_t>(d), K(0));
  for (int i = 0; i < d; ++i)
    for (int w = 0; w < d; ++w) tau[static_cast<size_t>(i)] += table_[static_cast<size_t>(i)][static_cast<size_t>(w)][static_cast<size_t>(w)];
  Matrix<K> form(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      K acc = K(0);
      const auto& t = table_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      for (int k = 0; k < d; ++k)
        if (!t[static_cast<size_t>(k)].is_zero()) acc += t[static_cast<size_t>(k)] * tau[static_cast<size_t>(k)];
      form(i, j) = acc;
    }
  Matrix<K> cand = row_space_basis(left_kernel(form));

  // Certificate 1: candidate is a two-sided ideal.
  for (int b = 0; b < d; ++b) {
    Matrix<K> lb(cand.rows(), d), rb(cand.rows(), d);
    auto eb = zero_vec();
    eb[static_cast<size_t>(b)] = K(1);
    for (int r = 0; r < cand.rows(); ++r) {
      auto lrow = multiply(eb, cand.row(r));
      auto rrow = multiply(cand.row(r), eb);
      lb.set_row(r, lrow);
      rb.set_row(r, rrow);
    }
    if (!row_space_contains(cand, lb) || !row_space_contains(cand, rb))
      fail(ErrorCode::AxiomFail, "radical certification failed: trace-form kernel is not an ideal");
  }
  // Certificate 2: nilpotent.
  Matrix<K> power = cand;
  for (int step = 0; step <= d && power.rows() > 0; ++step) {
    std::vector<std::vector<K>> rows;
    for (int r = 0; r < power.rows(); ++r)
      for (int s = 0; s < cand.rows(); ++s) rows.push_back(multiply(power.row(r), cand.row(s)));
    if (rows.empty()) { power = Matrix<K>(0, d); break; }
    power = row_space_basis(Matrix<K>::from_rows(rows, d));
    if (step == d && power.rows() > 0)
      fail(ErrorCode::AxiomFail, "radical certification failed: candidate is not nilpotent (algebra not split basic over this field?)");
  }
  // Certificate 3: quotient spanned by the slot idempotents.
  if (d - cand.rows() != slots())
    fail(ErrorCode::AxiomFail,
         "algebra is not split basic over the given field: semisimple quotient has dimension " +
             std::to_string(d - cand.rows()) + ", expected " + std::to_string(slots()));
  for (int i = 0; i < slots(); ++i) {
    Matrix<K> ei(1, d);
    ei.set_row(0, idem_[static_cast<size_t>(i)]);
    if (row_space_contains(cand, ei))
      fail(ErrorCode::AxiomFail, "radical certification failed: an idempotent died in the quotient");
  }
  radical_rows_ = cand;
  radical_ready_ = true;
  return radical_rows_;
}

template <class K>
K Algebra<K>::simple_character(int slot, int basis_index) const {
  auto st = slot_[static_cast<size_t>(basis_index)];
  if (st.first != slot || st.second != slot) return K(0);
  const Matrix<K>& rad = radical();
  Matrix<K> stack(1 + rad.rows(), dim());
  stack.set_row(0, idem_[static_cast<size_t>(slot)]);
  for (int r = 0; r < rad.rows(); ++r) stack.set_row(1 + r, rad.row(r));
  Matrix<K> b(1, dim());
  auto vb = zero_vec();
  vb[static_cast<size_t>(basis_index)] = K(1);
  b.set_row(0, vb);
  auto sol = solve_left(stack, b);
  if (!sol) fail(ErrorCode::AxiomFail, "diagonal slot element not of the form scalar + radical");
  return (*sol)(0, 0);
}

template <class K>
Matrix<K> Algebra<K>::radical_square() const {
  const Matrix<K>& rad = radical();
  std::vector<std::vector<K>> rows;
  for (int r = 0; r < rad.rows(); ++r)
    for (int s = 0; s < rad.rows(); ++s) rows.push_back(multiply(rad.row(r), rad.row(s)));
  if (rows.empty()) return Matrix<K>(0, dim());
  return row_space_basis(Matrix<K>::from_rows(rows, dim()));
}

template <class K>
Matrix<K> Algebra<K>::slot_subspace(int u, int v) const {
  std::vector<std::vector<K>> rows;
  for (int b = 0; b < dim(); ++b)
    if (slot_[static_cast<size_t>(b)] == std::make_pair(u, v)) {
      auto e = zero_vec();
      e[static_cast<size_t>(b)] = K(1);
      rows.push_back(std::move(e));
    }
  if (rows.empty()) return Matrix<K>(0, dim());
  return Matrix<K>::from_rows(rows, dim());
}

template <class K>
std::vector<std::vector<int>> Algebra<K>::ext_quiver_arrow_counts() const {
  const Matrix<K>& rad = radical();
  Matrix<K> rad2 = radical_square();
  std::vector<std::vector<int>> counts(static_cast<size_t>(slots()), std::vector<int>(static_cast<size_t>(slots()), 0));
  for (int u = 0; u < slots(); ++u)
    for (int v = 0; v < slots(); ++v) {
      Matrix<K> sub = slot_subspace(u, v);
      if (sub.rows() == 0) continue;
      int a = row_space_intersect(rad, sub).rows();
      int b = row_space_intersect(rad2, sub).rows();
      counts[static_cast<size_t>(u)][static_cast<size_t>(v)] = a - b;
    }
  return counts;
}

template <class K>
Algebra<K> Algebra<K>::opposite() const {
  Algebra A;
  A.field_ = field_;
  A.slot_names_ = slot_names_;
  A.basis_names_ = basis_names_;
  A.slot_.reserve(slot_.size());
  for (auto [s, t] : slot_) A.slot_.push_back({t, s});
  const size_t d = static_cast<size_t>(dim());
  A.table_.assign(d, std::vector<std::vector<K>>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) A.table_[i][j] = table_[j][i];
  A.idem_ = idem_;
  return A;
}

}  // namespace envlab
