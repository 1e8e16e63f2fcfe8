#pragma once

// Serre-quotient layer: defect simples of an exact structure, the idempotent
// truncation e*Gamma*e presenting mod(E)/def(E), the Gabriel hom formula as an
// independent oracle, presentation lifting back into E, and the left-exactness
// / closure deciders that characterise the quotient's image.

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "envlab/exact.hpp"

namespace envlab {

// --- defect simples -----------------------------------------------------------

/// The simple supports of the cokernels of the declared generating deflations
/// on the Yoneda side.  These span the thick subcategory that the quotient
/// kills; each simple carries the index of a declared conflation witnessing it.
template <class K>
struct DefData {
  std::vector<int> simples;                    // generator slots, ascending
  std::vector<std::pair<int, int>> witnesses;  // (slot, declared conflation index)
  std::vector<std::vector<int>> defects;       // per declared conflation: coker dims
};

template <class K>
DefData<K> def_simples(const ExactContext<K>& ctx, const ExactStructure<K>& st) {
  DefData<K> out;
  for (size_t c = 0; c < st.declared.size(); ++c) {
    const Conflation<K>& conf = st.declared[c];
    Module<K> yb = ctx.yoneda(conf.d.src);
    Module<K> yc = ctx.yoneda(conf.d.tgt);
    QuotientModule<K> q = cokernel(yb, ctx.yoneda_hom(conf.d), yc);
    out.defects.push_back(q.mod.dims);
    if (st.kind == StructureKind::Split) continue;
    for (size_t u = 0; u < q.mod.dims.size(); ++u) {
      if (q.mod.dims[u] == 0) continue;
      int slot = static_cast<int>(u);
      if (std::find(out.simples.begin(), out.simples.end(), slot) == out.simples.end()) {
        out.simples.push_back(slot);
        out.witnesses.push_back({slot, static_cast<int>(c)});
      }
    }
  }
  std::sort(out.simples.begin(), out.simples.end());
  std::sort(out.witnesses.begin(), out.witnesses.end());
  return out;
}

/// Soundness of the defect set against the enumerated deflation closure: the
/// Yoneda cokernel of every enumerated deflation must be supported on the
/// defect simples.  A failure names the offending deflation.
template <class K>
struct DefSoundness {
  bool ok = true;
  int checked = 0;
  std::string detail;
};

template <class K>
DefSoundness<K> def_soundness_check(const ExactContext<K>& ctx, const ExactStructure<K>& st,
                                    const DefData<K>& dd, int depth = 3) {
  DefSoundness<K> rep;
  std::vector<bool> in_d(static_cast<size_t>(ctx.num_gens()), false);
  for (int s : dd.simples) in_d[static_cast<size_t>(s)] = true;
  ExactStructure<K> bounded = st;
  bounded.depth = depth;
  for (const EMorphism<K>& d : enumerate_deflations(ctx, bounded)) {
    ++rep.checked;
    Module<K> yb = ctx.yoneda(d.src);
    Module<K> yc = ctx.yoneda(d.tgt);
    QuotientModule<K> q = cokernel(yb, ctx.yoneda_hom(d), yc);
    for (size_t u = 0; u < q.mod.dims.size(); ++u)
      if (q.mod.dims[u] > 0 && !in_d[u]) {
        rep.ok = false;
        rep.detail = "deflation with key [" + e_key(ctx, d) +
                     "] has a cokernel factor outside the defect set at slot " +
                     ctx.gen_name(static_cast<int>(u));
        return rep;
      }
  }
  return rep;
}

// --- the idempotent truncation ------------------------------------------------

/// mod(E)/def(E) presented as modules over e*Gamma*e, where e is the sum of
/// the generator idempotents away from the defect simples.  Holds the kept
/// slot bookkeeping and the basis correspondence into Gamma.
template <class K>
class QuotientCtx {
 public:
  QuotientCtx() = default;

  static QuotientCtx build(const ExactContext<K>& ctx, const std::vector<int>& def_slots) {
    QuotientCtx q;
    q.ctx_ = &ctx;
    const Algebra<K>& g = ctx.gamma();
    std::vector<bool> dropped(static_cast<size_t>(g.slots()), false);
    for (int s : def_slots) {
      if (s < 0 || s >= g.slots()) fail(ErrorCode::BadInput, "defect slot out of range");
      if (dropped[static_cast<size_t>(s)]) fail(ErrorCode::BadInput, "defect slot listed twice");
      dropped[static_cast<size_t>(s)] = true;
    }
    q.def_ = def_slots;
    std::sort(q.def_.begin(), q.def_.end());
    q.kept_pos_.assign(static_cast<size_t>(g.slots()), -1);
    for (int u = 0; u < g.slots(); ++u)
      if (!dropped[static_cast<size_t>(u)]) {
        q.kept_pos_[static_cast<size_t>(u)] = static_cast<int>(q.kept_.size());
        q.kept_.push_back(u);
      }
    if (q.kept_.empty()) fail(ErrorCode::BadInput, "the truncation keeps no generators");

    q.from_gamma_.assign(static_cast<size_t>(g.dim()), -1);
    for (int b = 0; b < g.dim(); ++b) {
      auto [s, t] = g.slot_of(b);
      if (dropped[static_cast<size_t>(s)] || dropped[static_cast<size_t>(t)]) continue;
      q.from_gamma_[static_cast<size_t>(b)] = static_cast<int>(q.to_gamma_.size());
      q.to_gamma_.push_back(b);
    }

    const int d = static_cast<int>(q.to_gamma_.size());
    std::vector<std::string> slot_names, basis_names;
    for (int u : q.kept_) slot_names.push_back(g.slot_name(u));
    for (int b : q.to_gamma_) basis_names.push_back(g.basis_name(b));
    std::vector<std::vector<std::vector<K>>> table(
        static_cast<size_t>(d),
        std::vector<std::vector<K>>(static_cast<size_t>(d),
                                    std::vector<K>(static_cast<size_t>(d), K(0))));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const std::vector<K>& full = g.product_of_basis(q.to_gamma_[static_cast<size_t>(a)],
                                                        q.to_gamma_[static_cast<size_t>(b)]);
        for (int c = 0; c < g.dim(); ++c) {
          if (full[static_cast<size_t>(c)].is_zero()) continue;
          int tc = q.from_gamma_[static_cast<size_t>(c)];
          if (tc < 0) fail(ErrorCode::AxiomFail, "truncation is not multiplicatively closed");
          table[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(tc)] =
              full[static_cast<size_t>(c)];
        }
      }
    std::vector<int> idem;
    for (int u : q.kept_) {
      int gi = ctx.pair_offset(u, u);  // the identity leads its diagonal block
      idem.push_back(q.from_gamma_[static_cast<size_t>(gi)]);
    }
    q.trunc_ = std::make_shared<Algebra<K>>(Algebra<K>::from_table(
        g.field(), std::move(slot_names), std::move(basis_names), std::move(table), idem));
    return q;
  }

  const ExactContext<K>& context() const { return *ctx_; }
  const Algebra<K>& trunc() const { return *trunc_; }
  const std::vector<int>& def_slots() const { return def_; }
  const std::vector<int>& kept() const { return kept_; }
  int kept_pos(int slot) const { return kept_pos_[static_cast<size_t>(slot)]; }
  int gamma_index(int trunc_basis) const { return to_gamma_[static_cast<size_t>(trunc_basis)]; }
  int trunc_index(int gamma_basis) const { return from_gamma_[static_cast<size_t>(gamma_basis)]; }

  /// Exact functor mod Gamma -> mod eGammae: restriction to the kept slots.
  Module<K> apply(const Module<K>& m) const {
    if (m.alg != &ctx_->gamma()) fail(ErrorCode::BadInput, "module is not over the endomorphism algebra");
    Module<K> out;
    out.alg = trunc_.get();
    for (int u : kept_) out.dims.push_back(m.dims[static_cast<size_t>(u)]);
    for (int b : to_gamma_) out.act.push_back(m.act[static_cast<size_t>(b)]);
    return out;
  }

  ModuleHom<K> apply_hom(const ModuleHom<K>& f) const {
    ModuleHom<K> out;
    for (int u : kept_) out.block.push_back(f.block[static_cast<size_t>(u)]);
    return out;
  }

 private:
  const ExactContext<K>* ctx_ = nullptr;
  std::shared_ptr<Algebra<K>> trunc_;
  std::vector<int> def_, kept_, kept_pos_, to_gamma_, from_gamma_;
};

template <class K>
QuotientCtx<K> serre_quotient(const ExactContext<K>& ctx, const std::vector<int>& def_slots) {
  return QuotientCtx<K>::build(ctx, def_slots);
}

/// The quotient-side Yoneda image of an object / morphism of E.
template <class K>
Module<K> quotient_yoneda(const QuotientCtx<K>& q, const EObject& x) {
  return q.apply(q.context().yoneda(x));
}

template <class K>
ModuleHom<K> quotient_yoneda_hom(const QuotientCtx<K>& q, const EMorphism<K>& f) {
  return q.apply_hom(q.context().yoneda_hom(f));
}

// --- trace, reject and the Gabriel hom formula ---------------------------------

/// Largest submodule of m whose composition factors all lie on the given
/// slots: iterated preimages of the slot-supported socle.
template <class K>
Submodule<K> trace_slots(const Module<K>& m, const std::vector<int>& slots) {
  std::vector<bool> in_d(m.dims.size(), false);
  for (int s : slots) in_d[static_cast<size_t>(s)] = true;
  std::vector<Matrix<K>> rows;
  for (size_t u = 0; u < m.dims.size(); ++u) rows.push_back(Matrix<K>(0, m.dims[u]));
  for (;;) {
    QuotientModule<K> q = quotient_by_rows(m, rows);
    std::vector<Matrix<K>> soc = socle_rows(q.mod);
    bool grew = false;
    std::vector<Matrix<K>> next;
    for (size_t u = 0; u < m.dims.size(); ++u) {
      if (!in_d[u]) soc[u] = Matrix<K>(0, q.mod.dims[u]);
      if (soc[u].rows() == 0) {
        next.push_back(rows[u]);
        continue;
      }
      // Preimage of the socle span: kernel of m_u -> q_u -> q_u / soc_u.
      QuotientModule<K> step = quotient_by_rows(q.mod, soc);
      Matrix<K> pre = left_kernel(q.proj.block[u] * step.proj.block[u]);
      if (pre.rows() > rows[u].rows()) grew = true;
      next.push_back(std::move(pre));
    }
    rows = std::move(next);
    if (!grew) break;
  }
  return submodule_from_rows(m, rows);
}

/// Smallest submodule r of m with m/r supported on the given slots: iterated
/// kernels of the slot-supported top.
template <class K>
Submodule<K> reject_slots(const Module<K>& m, const std::vector<int>& slots) {
  std::vector<bool> in_d(m.dims.size(), false);
  for (int s : slots) in_d[static_cast<size_t>(s)] = true;
  std::vector<Matrix<K>> rows;
  for (size_t u = 0; u < m.dims.size(); ++u) rows.push_back(Matrix<K>::identity(m.dims[u]));
  Submodule<K> cur = submodule_from_rows(m, rows);
  for (;;) {
    std::vector<Matrix<K>> spanning = radical_rows(cur.mod);
    for (size_t u = 0; u < cur.mod.dims.size(); ++u)
      if (!in_d[u]) spanning[u] = row_space_sum(spanning[u], Matrix<K>::identity(cur.mod.dims[u]));
    QuotientModule<K> q = quotient_by_rows(cur.mod, spanning);
    if (q.mod.total() == 0) return cur;
    std::vector<Matrix<K>> next;
    for (size_t u = 0; u < m.dims.size(); ++u)
      next.push_back(left_kernel(q.proj.block[u]) * cur.rows[u]);
    cur = submodule_from_rows(m, next);
  }
}

/// dim Hom in the Serre quotient by the slot simples, computed on the module
/// side without ever forming the truncation: Hom(reject(m), n / trace(n)).
template <class K>
int gabriel_hom(const std::vector<int>& def_slots, const Module<K>& m, const Module<K>& n) {
  Submodule<K> rm = reject_slots(m, def_slots);
  Submodule<K> tn = trace_slots(n, def_slots);
  QuotientModule<K> nq = quotient_by_rows(n, tn.rows);
  return hom_dim(rm.mod, nq.mod);
}

// --- presentation lifting -------------------------------------------------------

/// A two-step projective presentation of a truncation module, lifted to a
/// morphism of E: quotient_yoneda(tgt) / image of quotient_yoneda_hom(a) is
/// isomorphic to the module, and `onto` realises the cokernel projection.
template <class K>
struct EPresentation {
  EObject src, tgt;
  EMorphism<K> a;      // src -> tgt in E
  ModuleHom<K> onto;   // quotient_yoneda(tgt) ->> the presented module
};

namespace detail {

/// Entry extraction for a hom between truncation projectives arranged as the
/// quotient Yoneda image of an EObject: the generator row of each source copy
/// is read off blockwise against the target's pair bases.
template <class K>
EMorphism<K> emorphism_from_trunc(const QuotientCtx<K>& q, const EObject& x, const EObject& y,
                                  const ModuleHom<K>& h) {
  const ExactContext<K>& ctx = q.context();
  const Algebra<K>& g = ctx.gamma();
  EMorphism<K> f = ctx.e_zero(x, y);
  for (size_t p = 0; p < x.parts.size(); ++p) {
    int u = x.parts[p];          // generator slot of the source copy
    int ku = q.kept_pos(u);      // its kept position (the trunc slot)
    if (ku < 0) fail(ErrorCode::BadInput, "presentation object touches a defect slot");
    // Row of the copy's generator inside the slot-ku component of Y_q(x).
    int row = 0;
    for (size_t pp = 0; pp < p; ++pp) row += ctx.pair_dim(x.parts[pp], u);
    for (size_t qq = 0; qq < y.parts.size(); ++qq) {
      int col = 0;
      for (size_t q2 = 0; q2 < qq; ++q2) col += ctx.pair_dim(y.parts[q2], u);
      int w = ctx.pair_dim(y.parts[qq], u);
      std::vector<K> vec(static_cast<size_t>(g.dim()), K(0));
      int off = ctx.pair_offset(y.parts[qq], u);
      for (int k = 0; k < w; ++k)
        vec[static_cast<size_t>(off + k)] = h.block[static_cast<size_t>(ku)](row, col + k);
      f.entry[qq][p] = std::move(vec);
    }
  }
  if (!hom_equal(quotient_yoneda_hom(q, f), h))
    fail(ErrorCode::AxiomFail, "truncation hom does not come from the category");
  return f;
}

}  // namespace detail

/// Presents a truncation module by generator objects of E.  Deterministic:
/// the projective presentation over the truncation is canonical, the entry
/// lift is coordinate-exact, and `onto` is the unique factoring isomorphism
/// composed with the cokernel projection.
template <class K>
EPresentation<K> compute_presentation(const QuotientCtx<K>& q, const Module<K>& m) {
  if (m.alg != &q.trunc()) fail(ErrorCode::BadInput, "module is not over the truncation");
  Presentation<K> pres = presentation(m);
  Cover<K> c1 = projective_cover(pres.ker.mod);
  ModuleHom<K> a_hom = compose(c1.onto, pres.ker.incl);  // P1 -> P0 over the truncation

  EPresentation<K> out;
  for (size_t ku = 0; ku < q.kept().size(); ++ku)
    for (int c = 0; c < pres.cover.mult[ku]; ++c) out.tgt.parts.push_back(q.kept()[ku]);
  for (size_t ku = 0; ku < q.kept().size(); ++ku)
    for (int c = 0; c < c1.mult[ku]; ++c) out.src.parts.push_back(q.kept()[ku]);
  out.a = detail::emorphism_from_trunc(q, out.src, out.tgt, a_hom);

  // The cover projective and the quotient Yoneda image of tgt agree slotwise
  // by construction, so the cover surjection is already the presentation epi.
  Module<K> ytgt = quotient_yoneda(q, out.tgt);
  if (ytgt.dims != pres.cover.proj.dims || !(ytgt.act == pres.cover.proj.act))
    fail(ErrorCode::AxiomFail, "presentation cover does not match the Yoneda image");
  out.onto = pres.cover.onto;
  return out;
}

// --- left exactness and closure deciders ----------------------------------------

/// The contravariant evaluation of a module of mod Gamma on an E-morphism:
/// component (q -> p) is the right action of entry[q][p].
template <class K>
Matrix<K> functor_matrix(const ExactContext<K>& ctx, const Module<K>& m, const EMorphism<K>& f) {
  int rows = 0, cols = 0;
  std::vector<int> roff, coff;
  for (int g : f.tgt.parts) {
    roff.push_back(rows);
    rows += m.dims[static_cast<size_t>(g)];
  }
  for (int g : f.src.parts) {
    coff.push_back(cols);
    cols += m.dims[static_cast<size_t>(g)];
  }
  Matrix<K> out(rows, cols);
  for (size_t qq = 0; qq < f.tgt.parts.size(); ++qq)
    for (size_t pp = 0; pp < f.src.parts.size(); ++pp) {
      Matrix<K> blk = pure_action_block(m, f.entry[qq][pp], f.tgt.parts[qq], f.src.parts[pp]);
      for (int i = 0; i < blk.rows(); ++i)
        for (int j = 0; j < blk.cols(); ++j)
          out(roff[qq] + i, coff[pp] + j) = blk(i, j);
    }
  return out;
}

template <class K>
struct LexReport {
  bool lex = true;
  std::string detail;
};

/// Left exactness of the contravariant evaluation against every declared
/// generating conflation: 0 -> M(C) -> M(B) -> M(A) must be exact.
template <class K>
LexReport<K> is_lex(const ExactContext<K>& ctx, const ExactStructure<K>& st, const Module<K>& m) {
  LexReport<K> rep;
  for (size_t c = 0; c < st.declared.size(); ++c) {
    const Conflation<K>& conf = st.declared[c];
    Matrix<K> md = functor_matrix(ctx, m, conf.d);  // M(C) -> M(B)
    Matrix<K> mi = functor_matrix(ctx, m, conf.i);  // M(B) -> M(A)
    if (rank(md) != md.rows()) {
      rep.lex = false;
      rep.detail = "evaluation on conflation " + std::to_string(c) + " is not injective at M(C)";
      return rep;
    }
    Matrix<K> im = row_space_basis(md);
    Matrix<K> ker = left_kernel(mi);
    if (im.rows() != ker.rows() || !row_space_contains(ker, im)) {
      rep.lex = false;
      rep.detail = "evaluation on conflation " + std::to_string(c) + " is not exact at M(B)";
      return rep;
    }
  }
  return rep;
}

/// Closure of m under the defect simples: no homs from them and no extensions
/// by them.
template <class K>
bool is_def_closed(const ExactContext<K>& ctx, const std::vector<int>& def_slots,
                   const Module<K>& m) {
  for (int s : def_slots) {
    Module<K> simple = Module<K>::simple(ctx.gamma(), s);
    if (hom_dim(simple, m) != 0) return false;
    if (ext1_dim(simple, m) != 0) return false;
  }
  return true;
}

}  // namespace envlab
