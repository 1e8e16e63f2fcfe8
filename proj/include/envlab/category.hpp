#pragma once

// The additive category add(G_1, ..., G_n) inside modules over an ambient
// algebra, together with its endomorphism algebra Gamma = End(G_1 + ... + G_n).
//
// Conventions.  A Gamma basis element gamma representing a map G_j -> G_i is
// slot-pure of type (i, j), and Gamma multiplies in function order:
// gamma * delta means "apply delta, then gamma".  With these choices the
// covariant Yoneda module of G_i is exactly the slot projective e_i Gamma,
// whose right action is precomposition, and Y(f then g) = Y(f) * Y(g) in the
// row convention.

#include "envlab/module.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace envlab {

/// Formal object of add(G): an ordered tuple of generator indices.
struct EObject {
  std::vector<int> parts;
  bool operator==(const EObject& o) const { return parts == o.parts; }
  bool operator!=(const EObject& o) const { return !(*this == o); }
};

/// Morphism X -> Y: entry[q][p] is the component G_{x_p} -> G_{y_q} as a
/// coefficient vector over the Gamma basis (supported on slot (y_q, x_p)).
template <class K>
struct EMorphism {
  EObject src, tgt;
  std::vector<std::vector<std::vector<K>>> entry;
};

template <class K>
class ExactContext {
 public:
  ExactContext(const ExactContext&) = delete;
  ExactContext& operator=(const ExactContext&) = delete;
  ExactContext(ExactContext&&) = default;
  ExactContext& operator=(ExactContext&&) = default;

  static ExactContext build(std::unique_ptr<Algebra<K>> ambient, std::vector<Module<K>> gens,
                            std::vector<std::string> names);

  const Algebra<K>& ambient() const { return *ambient_; }
  const Algebra<K>& gamma() const { return *gamma_; }
  const Algebra<K>& gamma_op() const { return *gamma_op_; }
  int num_gens() const { return static_cast<int>(gens_.size()); }
  const Module<K>& gen(int i) const { return gens_[static_cast<size_t>(i)]; }
  const std::string& gen_name(int i) const { return names_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& gen_names() const { return names_; }

  /// Hom(G_j, G_i) as module homs, in Gamma basis order for slot (i, j).
  const std::vector<ModuleHom<K>>& pair_basis(int i, int j) const {
    return pair_basis_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  int pair_offset(int i, int j) const { return pair_offset_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  int pair_dim(int i, int j) const { return static_cast<int>(pair_basis(i, j).size()); }

  // --- objects and morphisms of E ------------------------------------------

  EMorphism<K> e_zero(const EObject& x, const EObject& y) const {
    EMorphism<K> f;
    f.src = x;
    f.tgt = y;
    f.entry.assign(y.parts.size(), std::vector<std::vector<K>>(x.parts.size(), gamma_->zero_vec()));
    return f;
  }

  EMorphism<K> e_identity(const EObject& x) const {
    EMorphism<K> f = e_zero(x, x);
    for (size_t p = 0; p < x.parts.size(); ++p) f.entry[p][p] = gamma_->idempotent(x.parts[p]);
    return f;
  }

  void validate_emorphism(const EMorphism<K>& f) const {
    if (f.entry.size() != f.tgt.parts.size()) fail(ErrorCode::DimMismatch, "morphism row count mismatch");
    for (size_t q = 0; q < f.entry.size(); ++q) {
      if (f.entry[q].size() != f.src.parts.size()) fail(ErrorCode::DimMismatch, "morphism column count mismatch");
      for (size_t p = 0; p < f.entry[q].size(); ++p) {
        const auto& v = f.entry[q][p];
        if (static_cast<int>(v.size()) != gamma_->dim()) fail(ErrorCode::DimMismatch, "morphism entry length mismatch");
        for (int b = 0; b < gamma_->dim(); ++b)
          if (!v[static_cast<size_t>(b)].is_zero() &&
              gamma_->slot_of(b) != std::make_pair(f.tgt.parts[q], f.src.parts[p]))
            fail(ErrorCode::BadInput, "morphism entry is not slot-pure for its component");
      }
    }
  }

  /// f then g.
  EMorphism<K> e_compose(const EMorphism<K>& f, const EMorphism<K>& g) const {
    if (f.tgt != g.src) fail(ErrorCode::DimMismatch, "composition endpoint mismatch");
    EMorphism<K> h = e_zero(f.src, g.tgt);
    for (size_t t = 0; t < g.tgt.parts.size(); ++t)
      for (size_t r = 0; r < f.src.parts.size(); ++r) {
        auto acc = gamma_->zero_vec();
        for (size_t s = 0; s < f.tgt.parts.size(); ++s) {
          auto term = gamma_->multiply(g.entry[t][s], f.entry[s][r]);  // function order
          for (int b = 0; b < gamma_->dim(); ++b) acc[static_cast<size_t>(b)] += term[static_cast<size_t>(b)];
        }
        h.entry[t][r] = std::move(acc);
      }
    return h;
  }

  EMorphism<K> e_add(const EMorphism<K>& f, const EMorphism<K>& g) const {
    EMorphism<K> h = f;
    for (size_t q = 0; q < h.entry.size(); ++q)
      for (size_t p = 0; p < h.entry[q].size(); ++p)
        for (int b = 0; b < gamma_->dim(); ++b)
          h.entry[q][p][static_cast<size_t>(b)] += g.entry[q][p][static_cast<size_t>(b)];
    return h;
  }

  EMorphism<K> e_scaled(const EMorphism<K>& f, const K& c) const {
    EMorphism<K> h = f;
    for (auto& row : h.entry)
      for (auto& v : row)
        for (auto& x : v) x *= c;
    return h;
  }

  EMorphism<K> e_negated(const EMorphism<K>& f) const { return e_scaled(f, K(-1)); }

  bool e_is_zero(const EMorphism<K>& f) const {
    for (const auto& row : f.entry)
      for (const auto& v : row)
        for (const auto& x : v)
          if (!x.is_zero()) return false;
    return true;
  }

  bool e_equal(const EMorphism<K>& f, const EMorphism<K>& g) const {
    if (f.src != g.src || f.tgt != g.tgt) return false;
    for (size_t q = 0; q < f.entry.size(); ++q)
      for (size_t p = 0; p < f.entry[q].size(); ++p)
        if (f.entry[q][p] != g.entry[q][p]) return false;
    return true;
  }

  /// Basis of Hom_E(X, Y): one morphism per Gamma basis element per component,
  /// in (component, basis) order.  These are canonical coordinates: the
  /// coordinate vector of any morphism is read off its entries directly.
  std::vector<EMorphism<K>> e_hom_basis(const EObject& x, const EObject& y) const {
    std::vector<EMorphism<K>> out;
    for (size_t q = 0; q < y.parts.size(); ++q)
      for (size_t p = 0; p < x.parts.size(); ++p) {
        int off = pair_offset(y.parts[q], x.parts[p]);
        for (int k = 0; k < pair_dim(y.parts[q], x.parts[p]); ++k) {
          EMorphism<K> f = e_zero(x, y);
          f.entry[q][p][static_cast<size_t>(off + k)] = K(1);
          out.push_back(std::move(f));
        }
      }
    return out;
  }

  /// Flat canonical coordinates of f over e_hom_basis(f.src, f.tgt).
  std::vector<K> e_flatten(const EMorphism<K>& f) const {
    std::vector<K> out;
    for (size_t q = 0; q < f.tgt.parts.size(); ++q)
      for (size_t p = 0; p < f.src.parts.size(); ++p) {
        int off = pair_offset(f.tgt.parts[q], f.src.parts[p]);
        for (int k = 0; k < pair_dim(f.tgt.parts[q], f.src.parts[p]); ++k)
          out.push_back(f.entry[q][p][static_cast<size_t>(off + k)]);
      }
    return out;
  }

  EMorphism<K> e_unflatten(const EObject& x, const EObject& y, const std::vector<K>& v) const {
    EMorphism<K> f = e_zero(x, y);
    size_t pos = 0;
    for (size_t q = 0; q < y.parts.size(); ++q)
      for (size_t p = 0; p < x.parts.size(); ++p) {
        int off = pair_offset(y.parts[q], x.parts[p]);
        for (int k = 0; k < pair_dim(y.parts[q], x.parts[p]); ++k)
          f.entry[q][p][static_cast<size_t>(off + k)] = v[pos++];
      }
    return f;
  }

  int e_hom_dim(const EObject& x, const EObject& y) const {
    int d = 0;
    for (int yq : y.parts)
      for (int xp : x.parts) d += pair_dim(yq, xp);
    return d;
  }

  /// Slot dimension vector of the covariant Yoneda module, without building it.
  std::vector<int> yoneda_dims(const EObject& x) const {
    std::vector<int> dims(static_cast<size_t>(num_gens()), 0);
    for (int p : x.parts)
      for (int t = 0; t < num_gens(); ++t) dims[static_cast<size_t>(t)] += pair_dim(p, t);
    return dims;
  }

  /// Direct sum of objects with canonical injections/projections.
  EObject e_sum(const EObject& x, const EObject& y) const {
    EObject s = x;
    s.parts.insert(s.parts.end(), y.parts.begin(), y.parts.end());
    return s;
  }
  EMorphism<K> e_inject_first(const EObject& x, const EObject& y) const {
    EMorphism<K> f = e_zero(x, e_sum(x, y));
    for (size_t p = 0; p < x.parts.size(); ++p) f.entry[p][p] = gamma_->idempotent(x.parts[p]);
    return f;
  }
  EMorphism<K> e_inject_second(const EObject& x, const EObject& y) const {
    EMorphism<K> f = e_zero(y, e_sum(x, y));
    for (size_t p = 0; p < y.parts.size(); ++p)
      f.entry[x.parts.size() + p][p] = gamma_->idempotent(y.parts[p]);
    return f;
  }
  EMorphism<K> e_project_first(const EObject& x, const EObject& y) const {
    EMorphism<K> f = e_zero(e_sum(x, y), x);
    for (size_t p = 0; p < x.parts.size(); ++p) f.entry[p][p] = gamma_->idempotent(x.parts[p]);
    return f;
  }
  EMorphism<K> e_project_second(const EObject& x, const EObject& y) const {
    EMorphism<K> f = e_zero(e_sum(x, y), y);
    for (size_t p = 0; p < y.parts.size(); ++p)
      f.entry[p][x.parts.size() + p] = gamma_->idempotent(y.parts[p]);
    return f;
  }
  /// Blockwise direct sum of morphisms.
  EMorphism<K> e_direct_sum(const EMorphism<K>& f, const EMorphism<K>& g) const {
    EMorphism<K> h = e_zero(e_sum(f.src, g.src), e_sum(f.tgt, g.tgt));
    for (size_t q = 0; q < f.tgt.parts.size(); ++q)
      for (size_t p = 0; p < f.src.parts.size(); ++p) h.entry[q][p] = f.entry[q][p];
    for (size_t q = 0; q < g.tgt.parts.size(); ++q)
      for (size_t p = 0; p < g.src.parts.size(); ++p)
        h.entry[f.tgt.parts.size() + q][f.src.parts.size() + p] = g.entry[q][p];
    return h;
  }

  // --- ambient realization ---------------------------------------------------

  Module<K> ambient_module(const EObject& x) const {
    if (x.parts.empty()) return Module<K>::zero_module(*ambient_);
    std::vector<Module<K>> parts;
    for (int p : x.parts) parts.push_back(gens_[static_cast<size_t>(p)]);
    return direct_sum(parts).mod;
  }

  ModuleHom<K> ambient_hom(const EMorphism<K>& f) const {
    std::vector<Module<K>> sp, tp;
    for (int p : f.src.parts) sp.push_back(gens_[static_cast<size_t>(p)]);
    for (int q : f.tgt.parts) tp.push_back(gens_[static_cast<size_t>(q)]);
    Module<K> sm = sp.empty() ? Module<K>::zero_module(*ambient_) : direct_sum(sp).mod;
    Module<K> tm = tp.empty() ? Module<K>::zero_module(*ambient_) : direct_sum(tp).mod;
    ModuleHom<K> out = zero_hom(sm, tm);
    if (sp.empty() || tp.empty()) return out;
    DirectSum<K> ds = direct_sum(sp), dt = direct_sum(tp);
    for (size_t q = 0; q < f.tgt.parts.size(); ++q)
      for (size_t p = 0; p < f.src.parts.size(); ++p) {
        ModuleHom<K> comp = component_hom(f, static_cast<int>(q), static_cast<int>(p));
        out = hom_add(out, compose(ds.project[p], compose(comp, dt.inject[q])));
      }
    return out;
  }

  /// Recover the E-morphism of an ambient module hom (add(G) is full).
  EMorphism<K> from_ambient_hom(const EObject& x, const EObject& y, const ModuleHom<K>& h) const {
    EMorphism<K> f = e_zero(x, y);
    std::vector<Module<K>> sp, tp;
    for (int p : x.parts) sp.push_back(gens_[static_cast<size_t>(p)]);
    for (int q : y.parts) tp.push_back(gens_[static_cast<size_t>(q)]);
    if (sp.empty() || tp.empty()) return f;
    DirectSum<K> ds = direct_sum(sp), dt = direct_sum(tp);
    for (size_t q = 0; q < y.parts.size(); ++q)
      for (size_t p = 0; p < x.parts.size(); ++p) {
        ModuleHom<K> comp = compose(ds.inject[p], compose(h, dt.project[q]));
        const auto& basis = pair_basis(y.parts[q], x.parts[p]);
        auto coords = hom_coords(basis, comp);
        if (!coords) fail(ErrorCode::AxiomFail, "ambient hom does not lie in the component hom space");
        int off = pair_offset(y.parts[q], x.parts[p]);
        for (size_t k = 0; k < coords->size(); ++k)
          f.entry[q][p][static_cast<size_t>(off) + k] = (*coords)[k];
      }
    return f;
  }

  // --- Yoneda to Gamma-modules -------------------------------------------------

  Module<K> yoneda(const EObject& x) const {
    if (x.parts.empty()) return Module<K>::zero_module(*gamma_);
    std::vector<Module<K>> parts;
    for (int p : x.parts) parts.push_back(Module<K>::projective(*gamma_, p));
    return direct_sum(parts).mod;
  }

  ModuleHom<K> yoneda_hom(const EMorphism<K>& f) const { return yoneda_hom_impl(f, *gamma_, false); }

  /// Contravariant side: Y_op(X) over Gamma^op, and for f: X -> Y the map
  /// Y_op(f): Y_op(Y) -> Y_op(X) given by the same entries read in Gamma^op.
  Module<K> yoneda_op(const EObject& x) const {
    if (x.parts.empty()) return Module<K>::zero_module(*gamma_op_);
    std::vector<Module<K>> parts;
    for (int p : x.parts) parts.push_back(Module<K>::projective(*gamma_op_, p));
    return direct_sum(parts).mod;
  }

  ModuleHom<K> yoneda_op_hom(const EMorphism<K>& f) const { return yoneda_hom_impl(f, *gamma_op_, true); }

  bool e_is_iso(const EMorphism<K>& f) const {
    ModuleHom<K> h = yoneda_hom(f);
    Module<K> ys = yoneda(f.src), yt = yoneda(f.tgt);
    if (ys.dims != yt.dims) return false;
    return hom_is_invertible(h);
  }

  /// Component hom G_{x_p} -> G_{y_q} of an entry vector.
  ModuleHom<K> component_hom(const EMorphism<K>& f, int q, int p) const {
    int i = f.tgt.parts[static_cast<size_t>(q)], j = f.src.parts[static_cast<size_t>(p)];
    const auto& basis = pair_basis(i, j);
    ModuleHom<K> out = zero_hom(gens_[static_cast<size_t>(j)], gens_[static_cast<size_t>(i)]);
    int off = pair_offset(i, j);
    const auto& v = f.entry[static_cast<size_t>(q)][static_cast<size_t>(p)];
    for (size_t k = 0; k < basis.size(); ++k)
      if (!v[static_cast<size_t>(off) + k].is_zero())
        out = hom_add(out, hom_scaled(basis[k], v[static_cast<size_t>(off) + k]));
    return out;
  }

 private:
  ExactContext() = default;

  std::unique_ptr<Algebra<K>> ambient_;
  std::vector<Module<K>> gens_;
  std::vector<std::string> names_;
  std::unique_ptr<Algebra<K>> gamma_;
  std::unique_ptr<Algebra<K>> gamma_op_;
  std::vector<std::vector<std::vector<ModuleHom<K>>>> pair_basis_;
  std::vector<std::vector<int>> pair_offset_;

  /// Left multiplication e_x A -> e_y A by a slot-(y, x) pure element, over
  /// the given algebra (gamma or its opposite; slots swap in the opposite).
  static ModuleHom<K> lmult_hom(const Algebra<K>& a, const std::vector<K>& g, int x, int y) {
    Module<K> px = Module<K>::projective(a, x);
    Module<K> py = Module<K>::projective(a, y);
    std::vector<int> pos_x(static_cast<size_t>(a.dim()), -1), pos_y(static_cast<size_t>(a.dim()), -1);
    {
      std::vector<int> cx(static_cast<size_t>(a.slots()), 0), cy(static_cast<size_t>(a.slots()), 0);
      for (int b = 0; b < a.dim(); ++b) {
        auto [s, t] = a.slot_of(b);
        if (s == x) pos_x[static_cast<size_t>(b)] = cx[static_cast<size_t>(t)]++;
        if (s == y) pos_y[static_cast<size_t>(b)] = cy[static_cast<size_t>(t)]++;
      }
    }
    ModuleHom<K> out = zero_hom(px, py);
    for (int b = 0; b < a.dim(); ++b) {
      if (pos_x[static_cast<size_t>(b)] < 0) continue;
      auto [s, t] = a.slot_of(b);
      auto eb = a.zero_vec();
      eb[static_cast<size_t>(b)] = K(1);
      auto img = a.multiply(g, eb);
      for (int k = 0; k < a.dim(); ++k) {
        if (img[static_cast<size_t>(k)].is_zero()) continue;
        if (pos_y[static_cast<size_t>(k)] < 0) fail(ErrorCode::AxiomFail, "left multiplication left the target projective");
        out.block[static_cast<size_t>(t)](pos_x[static_cast<size_t>(b)], pos_y[static_cast<size_t>(k)]) =
            img[static_cast<size_t>(k)];
      }
    }
    return out;
  }

  ModuleHom<K> yoneda_hom_impl(const EMorphism<K>& f, const Algebra<K>& a, bool op) const {
    // Covariant: component p -> q is left multiplication by entry[q][p].
    // Contravariant: f turns into a map Y_op(tgt) -> Y_op(src) with component
    // q -> p given by the same entry vector, now slot-(src, tgt)-pure in a^op.
    const EObject& xs = op ? f.tgt : f.src;
    const EObject& xt = op ? f.src : f.tgt;
    std::vector<Module<K>> sp, tp;
    for (int p : xs.parts) sp.push_back(Module<K>::projective(a, p));
    for (int q : xt.parts) tp.push_back(Module<K>::projective(a, q));
    Module<K> sm = sp.empty() ? Module<K>::zero_module(a) : direct_sum(sp).mod;
    Module<K> tm = tp.empty() ? Module<K>::zero_module(a) : direct_sum(tp).mod;
    ModuleHom<K> out = zero_hom(sm, tm);
    if (sp.empty() || tp.empty()) return out;
    DirectSum<K> ds = direct_sum(sp), dt = direct_sum(tp);
    for (size_t q = 0; q < f.tgt.parts.size(); ++q)
      for (size_t p = 0; p < f.src.parts.size(); ++p) {
        const auto& v = f.entry[q][p];
        bool nonzero = false;
        for (const auto& c : v) nonzero = nonzero || !c.is_zero();
        if (!nonzero) continue;
        ModuleHom<K> step;
        size_t from, to;
        if (!op) {
          step = lmult_hom(a, v, f.src.parts[p], f.tgt.parts[q]);
          from = p;
          to = q;
        } else {
          step = lmult_hom(a, v, f.tgt.parts[q], f.src.parts[p]);
          from = q;
          to = p;
        }
        out = hom_add(out, compose(ds.project[from], compose(step, dt.inject[to])));
      }
    return out;
  }
};

template <class K>
ExactContext<K> ExactContext<K>::build(std::unique_ptr<Algebra<K>> ambient, std::vector<Module<K>> gens,
                                       std::vector<std::string> names) {
  ExactContext ctx;
  ctx.ambient_ = std::move(ambient);
  ctx.gens_ = std::move(gens);
  ctx.names_ = std::move(names);
  const int n = static_cast<int>(ctx.gens_.size());
  if (n == 0) fail(ErrorCode::BadInput, "at least one generator is required");
  if (ctx.names_.size() != ctx.gens_.size()) fail(ErrorCode::BadInput, "generator name count mismatch");
  for (const auto& g : ctx.gens_) {
    if (g.alg != ctx.ambient_.get()) fail(ErrorCode::BadInput, "generator module over a different algebra");
    validate_module(g);
    if (g.total() == 0) fail(ErrorCode::BadInput, "zero generators are not allowed");
  }

  // Hom bases per ordered pair; diagonal bases start with the identity.
  ctx.pair_basis_.assign(static_cast<size_t>(n), std::vector<std::vector<ModuleHom<K>>>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto basis = hom_basis(ctx.gens_[static_cast<size_t>(j)], ctx.gens_[static_cast<size_t>(i)]);
      if (i == j) {
        std::vector<ModuleHom<K>> with_id{identity_hom(ctx.gens_[static_cast<size_t>(i)])};
        const int width = static_cast<int>(flatten_hom(with_id[0]).size());
        Matrix<K> rows(1, width);
        rows.set_row(0, flatten_hom(with_id[0]));
        for (const auto& h : basis) {
          Matrix<K> cand(1, width);
          cand.set_row(0, flatten_hom(h));
          if (!row_space_contains(rows, cand)) {
            rows = row_space_sum(rows, cand);
            with_id.push_back(h);
          }
        }
        basis = std::move(with_id);
      }
      ctx.pair_basis_[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(basis);
    }

  ctx.pair_offset_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
  int total = 0;
  std::vector<std::string> basis_names;
  std::vector<std::pair<int, int>> slots;
  std::vector<int> idem_idx(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ctx.pair_offset_[static_cast<size_t>(i)][static_cast<size_t>(j)] = total;
      if (i == j) idem_idx[static_cast<size_t>(i)] = total;
      for (int k = 0; k < ctx.pair_dim(i, j); ++k) {
        basis_names.push_back(ctx.names_[static_cast<size_t>(i)] + "<-" + ctx.names_[static_cast<size_t>(j)] +
                              "#" + std::to_string(k));
        slots.push_back({i, j});
        ++total;
      }
    }

  // Structure constants by composing representative homs.
  std::vector<std::vector<std::vector<K>>> table(
      static_cast<size_t>(total),
      std::vector<std::vector<K>>(static_cast<size_t>(total), std::vector<K>(static_cast<size_t>(total), K(0))));
  for (int a = 0; a < total; ++a) {
    auto [ai, aj] = slots[static_cast<size_t>(a)];
    const auto& fa = ctx.pair_basis_[static_cast<size_t>(ai)][static_cast<size_t>(aj)]
                                    [static_cast<size_t>(a - ctx.pair_offset(ai, aj))];
    for (int b = 0; b < total; ++b) {
      auto [bi, bj] = slots[static_cast<size_t>(b)];
      if (aj != bi) continue;  // function order: need src(a) == tgt(b)
      const auto& fb = ctx.pair_basis_[static_cast<size_t>(bi)][static_cast<size_t>(bj)]
                                      [static_cast<size_t>(b - ctx.pair_offset(bi, bj))];
      ModuleHom<K> comp = compose(fb, fa);  // apply fb first, then fa
      const auto& target_basis = ctx.pair_basis(ai, bj);
      auto coords = hom_coords(target_basis, comp);
      if (!coords) fail(ErrorCode::AxiomFail, "endomorphism algebra is not closed under composition");
      int off = ctx.pair_offset(ai, bj);
      for (size_t k = 0; k < coords->size(); ++k)
        table[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(off) + k] = (*coords)[k];
    }
  }
  std::vector<int> idem(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idem[static_cast<size_t>(i)] = idem_idx[static_cast<size_t>(i)];
  ctx.gamma_ = std::make_unique<Algebra<K>>(
      Algebra<K>::from_table(ctx.ambient_->field(), ctx.names_, basis_names, table, idem));
  ctx.gamma_op_ = std::make_unique<Algebra<K>>(ctx.gamma_->opposite());
  return ctx;
}

// --- duality -----------------------------------------------------------------

/// Opposite context: opposite ambient algebra, k-linear dual generators
/// (transposed action blocks).  Applying it twice rebuilds the original data
/// byte for byte.
template <class K>
ExactContext<K> dual_context(const ExactContext<K>& ctx) {
  auto op_alg = std::make_unique<Algebra<K>>(ctx.ambient().opposite());
  std::vector<Module<K>> dgens;
  for (int i = 0; i < ctx.num_gens(); ++i) {
    const Module<K>& g = ctx.gen(i);
    Module<K> d;
    d.alg = op_alg.get();
    d.dims = g.dims;
    for (const auto& blk : g.act) d.act.push_back(blk.transpose());
    dgens.push_back(std::move(d));
  }
  return ExactContext<K>::build(std::move(op_alg), std::move(dgens), ctx.gen_names());
}

/// The dual of f: X -> Y is a morphism Y -> X in the dual context, with
/// transposed ambient blocks.
template <class K>
EMorphism<K> dual_morphism(const ExactContext<K>& ctx, const ExactContext<K>& dual_ctx,
                           const EMorphism<K>& f) {
  ModuleHom<K> h = ctx.ambient_hom(f);
  ModuleHom<K> ht;
  for (const auto& blk : h.block) ht.block.push_back(blk.transpose());
  return dual_ctx.from_ambient_hom(f.tgt, f.src, ht);
}

}  // namespace envlab
