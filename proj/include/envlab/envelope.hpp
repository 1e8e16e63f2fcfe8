#pragma once

// The abelian envelope and its certification toolkit: the embedding functor
// into the truncation, weak kernels with their extension-by-deflation
// verification, density of the image, induced right-exact functors out of the
// envelope, monotone structure comparison, pullback witnesses for the
// one-sided abelianness, and the duality involution check.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "envlab/quotient.hpp"

namespace envlab {

/// Uniform result record for the named envelope checks.  A failing check
/// carries its counterexample in `detail`; `witnesses` lists the positive
/// evidence gathered on the way.  The timing field is filled by the task
/// runner and never participates in determinism comparisons.
struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::Yes;
  std::string detail;
  std::vector<std::string> witnesses;
  std::int64_t micros = 0;
};

// --- envelope construction ------------------------------------------------------

/// The right abelian envelope of (E, s): modules over the idempotent
/// truncation of the endomorphism algebra by the defect simples, together
/// with the data that produced it.
template <class K>
struct Envelope {
  const ExactContext<K>* ctx = nullptr;
  ExactStructure<K> structure;
  DefData<K> def;
  QuotientCtx<K> quotient;
};

template <class K>
Envelope<K> construct_envelope(const ExactContext<K>& ctx, const ExactStructure<K>& st) {
  Envelope<K> env;
  env.ctx = &ctx;
  env.structure = st;
  env.def = def_simples(ctx, st);
  env.quotient = serre_quotient(ctx, env.def.simples);
  return env;
}

/// The embedding i_R on objects and morphisms.
template <class K>
Module<K> envelope_image(const Envelope<K>& env, const EObject& x) {
  return quotient_yoneda(env.quotient, x);
}

template <class K>
ModuleHom<K> envelope_image_hom(const Envelope<K>& env, const EMorphism<K>& f) {
  return quotient_yoneda_hom(env.quotient, f);
}

/// Exactness of the image of a composable pair under i_R: mono, epi, and
/// image-equals-kernel checked slotwise over the truncation.
template <class K>
bool image_short_exact(const Envelope<K>& env, const EMorphism<K>& i, const EMorphism<K>& d,
                       std::string* why = nullptr) {
  Module<K> a = envelope_image(env, i.src);
  Module<K> b = envelope_image(env, i.tgt);
  Module<K> c = envelope_image(env, d.tgt);
  ModuleHom<K> fi = envelope_image_hom(env, i);
  ModuleHom<K> fd = envelope_image_hom(env, d);
  for (size_t u = 0; u < b.dims.size(); ++u) {
    if (rank(fi.block[u]) != a.dims[u]) {
      if (why) *why = "the image of the inflation is not injective";
      return false;
    }
    if (rank(fd.block[u]) != c.dims[u]) {
      if (why) *why = "the image of the deflation is not surjective";
      return false;
    }
    Matrix<K> im = row_space_basis(fi.block[u]);
    Matrix<K> ker = left_kernel(fd.block[u]);
    if (im.rows() != ker.rows() || !row_space_contains(ker, im)) {
      if (why) *why = "the image sequence is not exact in the middle";
      return false;
    }
  }
  return true;
}

// --- weak kernels ----------------------------------------------------------------

template <class K>
struct WeakKernel {
  EObject obj;
  EMorphism<K> w;  // obj -> src(f), with w then f = 0
};

/// Weak kernel of f from the projective cover of the kernel of its Yoneda
/// image: complete because every test morphism lifts through the cover.
template <class K>
WeakKernel<K> weak_kernel(const ExactContext<K>& ctx, const EMorphism<K>& f) {
  Module<K> yx = ctx.yoneda(f.src);
  Module<K> yy = ctx.yoneda(f.tgt);
  Submodule<K> ker = kernel(yx, ctx.yoneda_hom(f), yy);
  Cover<K> cov = projective_cover(ker.mod);
  WeakKernel<K> out;
  for (size_t u = 0; u < cov.mult.size(); ++u)
    for (int c = 0; c < cov.mult[u]; ++c) out.obj.parts.push_back(static_cast<int>(u));
  out.w = detail::emorphism_from_yoneda(ctx, out.obj, f.src, compose(cov.onto, ker.incl));
  if (!ctx.e_is_zero(ctx.e_compose(out.w, f)))
    fail(ErrorCode::AxiomFail, "weak kernel does not compose to zero");
  return out;
}

/// Completeness of a weak kernel: every generator-sourced morphism killed by
/// f factors through w.
template <class K>
bool verify_weak_kernel(const ExactContext<K>& ctx, const WeakKernel<K>& wk,
                        const EMorphism<K>& f) {
  for (int c = 0; c < ctx.num_gens(); ++c) {
    EObject cc{{c}};
    auto basis = ctx.e_hom_basis(cc, f.src);
    if (basis.empty()) continue;
    std::vector<std::vector<K>> post;
    for (const auto& g : basis) post.push_back(ctx.e_flatten(ctx.e_compose(g, f)));
    Matrix<K> post_m = Matrix<K>::from_rows(post, static_cast<int>(post[0].size()));
    Matrix<K> killed = left_kernel(post_m);
    if (killed.rows() == 0) continue;
    auto through = ctx.e_hom_basis(cc, wk.obj);
    std::vector<std::vector<K>> span;
    for (const auto& h : through) span.push_back(ctx.e_flatten(ctx.e_compose(h, wk.w)));
    Matrix<K> span_m = Matrix<K>::from_rows(span, ctx.e_hom_dim(cc, f.src));
    for (int r = 0; r < killed.rows(); ++r) {
      // The killed combination of basis morphisms, as a flat vector.
      std::vector<K> gp(static_cast<size_t>(ctx.e_hom_dim(cc, f.src)), K(0));
      for (size_t b = 0; b < basis.size(); ++b) {
        const K& coeff = killed(r, static_cast<int>(b));
        if (coeff.is_zero()) continue;
        std::vector<K> fb = ctx.e_flatten(basis[b]);
        for (size_t k = 0; k < gp.size(); ++k) gp[k] += coeff * fb[k];
      }
      Matrix<K> rhs(1, static_cast<int>(gp.size()));
      rhs.set_row(0, gp);
      if (!solve_left(span_m, rhs)) return false;
    }
  }
  return true;
}

// --- extension-kernel verification ------------------------------------------------

/// Checks that g: W -> X is a kernel of f: X -> Y up to refinement by
/// deflations: every generator-sourced g' with g' then f = 0 must, after
/// precomposition with some deflation (the identity is tried first), factor
/// through g.  Pass / fail / search-exhausted semantics; fail requires a
/// decidable obstruction.  The out-parameters report how many test morphisms
/// were dominated and how many of those needed only the identity deflation.
template <class K>
CheckReport ext_kernel_verify(const ExactContext<K>& ctx, const ExactStructure<K>& st,
                              const EMorphism<K>& g, const EMorphism<K>& f, int depth,
                              const std::vector<EMorphism<K>>* candidates = nullptr,
                              int* covered_out = nullptr, int* identity_out = nullptr) {
  CheckReport rep{"ext_kernel", Verdict::Yes, "", {}, 0};
  if (g.tgt != f.src) fail(ErrorCode::BadInput, "kernel candidate does not land in the source");
  if (!ctx.e_is_zero(ctx.e_compose(g, f)))
    fail(ErrorCode::BadInput, "kernel candidate does not compose to zero");
  std::vector<EMorphism<K>> local;
  if (!candidates) {
    ExactStructure<K> bounded = st;
    bounded.depth = depth;
    local = enumerate_deflations(ctx, bounded);
    candidates = &local;
  }
  const bool g_zero = ctx.e_is_zero(g);
  int covered_by_identity = 0, covered_total = 0;
  for (int c = 0; c < ctx.num_gens(); ++c) {
    EObject cc{{c}};
    auto basis = ctx.e_hom_basis(cc, f.src);
    if (basis.empty()) continue;
    std::vector<std::vector<K>> post;
    for (const auto& gp : basis) post.push_back(ctx.e_flatten(ctx.e_compose(gp, f)));
    Matrix<K> post_m = Matrix<K>::from_rows(post, static_cast<int>(post[0].size()));
    Matrix<K> killed = left_kernel(post_m);
    if (killed.rows() == 0) continue;
    // The cheapest refinement first: the identity deflation, then the
    // enumerated ones in their canonical order.
    std::vector<const EMorphism<K>*> onto_c;
    EMorphism<K> idc = ctx.e_identity(cc);
    onto_c.push_back(&idc);
    for (const EMorphism<K>& d : *candidates)
      if (d.tgt == cc && !(d.src == cc && ctx.e_equal(d, idc))) onto_c.push_back(&d);
    for (int r = 0; r < killed.rows(); ++r) {
      EMorphism<K> gp = ctx.e_zero(cc, f.src);
      for (size_t b = 0; b < basis.size(); ++b) {
        const K& coeff = killed(r, static_cast<int>(b));
        if (!coeff.is_zero()) gp = ctx.e_add(gp, ctx.e_scaled(basis[b], coeff));
      }
      if (g_zero && !ctx.e_is_zero(gp)) {
        // No deflation can annihilate a nonzero morphism: deflations are
        // epimorphisms relative to the generators.
        rep.verdict = Verdict::No;
        rep.detail = "a nonzero morphism from " + ctx.gen_name(c) +
                     " is killed by the map but cannot factor through a zero kernel candidate";
        return rep;
      }
      bool found = false;
      for (size_t di = 0; di < onto_c.size(); ++di) {
        const EMorphism<K>& d = *onto_c[di];
        EMorphism<K> lhs = ctx.e_compose(d, gp);
        auto through = ctx.e_hom_basis(d.src, g.src);
        std::vector<std::vector<K>> span;
        for (const auto& h : through) span.push_back(ctx.e_flatten(ctx.e_compose(h, g)));
        Matrix<K> span_m = Matrix<K>::from_rows(span, ctx.e_hom_dim(d.src, f.src));
        Matrix<K> rhs(1, ctx.e_hom_dim(d.src, f.src));
        rhs.set_row(0, ctx.e_flatten(lhs));
        if (solve_left(span_m, rhs)) {
          found = true;
          ++covered_total;
          if (di == 0) ++covered_by_identity;
          break;
        }
      }
      if (!found) {
        rep.verdict = Verdict::Inconclusive;
        rep.detail = "search exhausted: no enumerated deflation onto " + ctx.gen_name(c) +
                     " refines the test morphism at depth " + std::to_string(depth);
        return rep;
      }
    }
  }
  if (covered_out) *covered_out = covered_total;
  if (identity_out) *identity_out = covered_by_identity;
  rep.witnesses.push_back("test morphisms covered: " + std::to_string(covered_total));
  rep.witnesses.push_back("covered by identity deflations: " + std::to_string(covered_by_identity));
  return rep;
}

/// Runs ext_kernel_verify on the weak kernel of every hom-basis morphism
/// between generators and reports the pass rate.
template <class K>
CheckReport ext_coherence_report(const ExactContext<K>& ctx, const ExactStructure<K>& st,
                                 int depth = 2) {
  CheckReport rep{"ext_coherence", Verdict::Yes, "", {}, 0};
  ExactStructure<K> bounded = st;
  bounded.depth = depth;
  std::vector<EMorphism<K>> candidates = enumerate_deflations(ctx, bounded);
  int total = 0, passed = 0, identity_only = 0;
  for (int i = 0; i < ctx.num_gens(); ++i)
    for (int j = 0; j < ctx.num_gens(); ++j) {
      EObject xi{{i}}, xj{{j}};
      for (const auto& f : ctx.e_hom_basis(xi, xj)) {
        ++total;
        WeakKernel<K> wk = weak_kernel(ctx, f);
        int covered = 0, by_identity = 0;
        CheckReport one = ext_kernel_verify(ctx, st, wk.w, f, depth, &candidates, &covered, &by_identity);
        if (one.verdict == Verdict::Yes) {
          ++passed;
          // A complete weak kernel lets every test morphism factor without
          // any genuine refinement.
          if (covered == by_identity) ++identity_only;
        } else if (rep.verdict == Verdict::Yes) {
          rep.verdict = one.verdict;
          rep.detail = "morphism " + ctx.gen_name(i) + " -> " + ctx.gen_name(j) + ": " + one.detail;
        }
      }
    }
  rep.witnesses.push_back("hom-basis morphisms checked: " + std::to_string(total));
  rep.witnesses.push_back("passed: " + std::to_string(passed));
  rep.witnesses.push_back("resolved by identity deflations alone: " + std::to_string(identity_only));
  if (total != passed && rep.verdict == Verdict::Yes) rep.verdict = Verdict::Inconclusive;
  return rep;
}

// --- embedding certification --------------------------------------------------------

/// Full faithfulness on generator pairs, exactness on the declared
/// conflations, and reflection of exactness against the enumerated
/// kernel-cokernel pairs.
template <class K>
CheckReport check_embedding(const Envelope<K>& env, int reflect_cap = 24) {
  CheckReport rep{"embedding", Verdict::Yes, "", {}, 0};
  const ExactContext<K>& ctx = *env.ctx;
  int pairs_ok = 0;
  for (int i = 0; i < ctx.num_gens() && rep.verdict == Verdict::Yes; ++i)
    for (int j = 0; j < ctx.num_gens(); ++j) {
      EObject xi{{i}}, xj{{j}};
      auto basis = ctx.e_hom_basis(xi, xj);
      Module<K> mi = envelope_image(env, xi);
      Module<K> mj = envelope_image(env, xj);
      int target = hom_dim(mi, mj);
      std::vector<std::vector<K>> rows;
      int width = 0;
      for (const auto& f : basis) {
        std::vector<K> v = flatten_hom(envelope_image_hom(env, f));
        width = static_cast<int>(v.size());
        rows.push_back(std::move(v));
      }
      int rk = rank(Matrix<K>::from_rows(rows, width));
      if (rk != static_cast<int>(basis.size()) || target != static_cast<int>(basis.size())) {
        rep.verdict = Verdict::No;
        rep.detail = "generator pair (" + ctx.gen_name(i) + ", " + ctx.gen_name(j) +
                     "): dim Hom_E = " + std::to_string(basis.size()) +
                     ", embedded rank = " + std::to_string(rk) +
                     ", dim Hom in the envelope = " + std::to_string(target);
        break;
      }
      ++pairs_ok;
    }
  rep.witnesses.push_back("fully faithful on generator pairs: " + std::to_string(pairs_ok));
  if (rep.verdict != Verdict::Yes) return rep;

  int exact_ok = 0;
  for (size_t c = 0; c < env.structure.declared.size(); ++c) {
    std::string why;
    if (!image_short_exact(env, env.structure.declared[c].i, env.structure.declared[c].d, &why)) {
      rep.verdict = Verdict::No;
      rep.detail = "declared conflation " + std::to_string(c) + ": " + why;
      return rep;
    }
    ++exact_ok;
  }
  rep.witnesses.push_back("declared conflations with exact image: " + std::to_string(exact_ok));

  // Reflection: kernel-cokernel pairs with short exact image must not be
  // rejected as deflations.  Besides the enumerated deflations themselves the
  // sample includes their nonzero scalar multiples, which leave the candidate
  // list and exercise the isomorphism-factorization path.
  std::vector<EMorphism<K>> candidates = enumerate_deflations(ctx, env.structure);
  std::vector<EMorphism<K>> sample = candidates;
  K two = FieldOps<K>::attach(ctx.gamma().field(), K(2));
  if (!two.is_zero())
    for (const EMorphism<K>& d : candidates) sample.push_back(ctx.e_scaled(d, two));
  int reflected = 0, inconclusive = 0;
  for (const EMorphism<K>& d : sample) {
    if (reflected + inconclusive >= reflect_cap) break;
    WeakKernel<K> wk = weak_kernel(ctx, d);
    if (!is_kernel_cokernel_pair(ctx, wk.w, d)) continue;
    if (!image_short_exact(env, wk.w, d)) continue;
    DeflationCheck<K> chk = is_deflation_with(ctx, env.structure, d, candidates);
    if (chk.verdict == Verdict::No) {
      rep.verdict = Verdict::No;
      rep.detail = "a kernel-cokernel pair with exact image was rejected as a deflation: [" +
                   e_key(ctx, d) + "]";
      return rep;
    }
    if (chk.verdict == Verdict::Inconclusive)
      ++inconclusive;
    else
      ++reflected;
  }
  rep.witnesses.push_back("kernel-cokernel pairs reflected: " + std::to_string(reflected));
  if (inconclusive > 0) {
    rep.verdict = Verdict::Inconclusive;
    rep.detail = std::to_string(inconclusive) + " reflected pairs exhausted the deflation search";
  }
  return rep;
}

// --- density of the image -------------------------------------------------------------

/// Definition-level density test for a module of the envelope: every
/// generator-sourced map into the module (resp. into the cover with zero
/// composite) is dominated, after refinement by a deflation, by the
/// presentation produced from the category.
template <class K>
CheckReport dense_extension_check(const Envelope<K>& env, const Module<K>& m, int depth = 2) {
  CheckReport rep{"dense_extension", Verdict::Yes, "", {}, 0};
  const ExactContext<K>& ctx = *env.ctx;
  const QuotientCtx<K>& q = env.quotient;
  EPresentation<K> pres = compute_presentation(q, m);
  Module<K> y0 = quotient_yoneda(q, pres.tgt);
  Module<K> y1 = quotient_yoneda(q, pres.src);
  ModuleHom<K> ya = quotient_yoneda_hom(q, pres.a);

  ExactStructure<K> bounded = env.structure;
  bounded.depth = depth;
  std::vector<EMorphism<K>> candidates = enumerate_deflations(ctx, bounded);

  int covered = 0;
  for (int x = 0; x < ctx.num_gens(); ++x) {
    EObject xx{{x}};
    Module<K> ix = envelope_image(env, xx);
    // The cheapest refinement first: the identity deflation, then the
    // enumerated ones in their canonical order.
    std::vector<const EMorphism<K>*> onto_x;
    EMorphism<K> idx = ctx.e_identity(xx);
    onto_x.push_back(&idx);
    for (const EMorphism<K>& d : candidates)
      if (d.tgt == xx && !(d.src == xx && ctx.e_equal(d, idx))) onto_x.push_back(&d);
    // Condition 1: maps into the module lift through the presentation epi
    // after refinement.  Condition 2: maps into the cover killed by the epi
    // factor through the relation object after refinement.
    for (int cond = 0; cond < 2; ++cond) {
      std::vector<ModuleHom<K>> tests;
      if (cond == 0) {
        tests = hom_basis(ix, m);
      } else {
        auto into_cover = hom_basis(ix, y0);
        if (!into_cover.empty()) {
          std::vector<std::vector<K>> post;
          for (const auto& f : into_cover) post.push_back(flatten_hom(compose(f, pres.onto)));
          Matrix<K> post_m = Matrix<K>::from_rows(post, static_cast<int>(post[0].size()));
          Matrix<K> killed = left_kernel(post_m);
          for (int r = 0; r < killed.rows(); ++r) {
            ModuleHom<K> f = zero_hom(ix, y0);
            for (size_t b = 0; b < into_cover.size(); ++b)
              if (!killed(r, static_cast<int>(b)).is_zero())
                f = hom_add(f, hom_scaled(into_cover[b], killed(r, static_cast<int>(b))));
            tests.push_back(std::move(f));
          }
        }
      }
      const Module<K>& through_mod = (cond == 0) ? y0 : y1;
      const ModuleHom<K>& through_map = (cond == 0) ? pres.onto : ya;
      for (const ModuleHom<K>& f : tests) {
        bool found = false;
        for (const EMorphism<K>* dp : onto_x) {
          const EMorphism<K>& d = *dp;
          ModuleHom<K> lhs = compose(envelope_image_hom(env, d), f);
          Module<K> isrc = envelope_image(env, d.src);
          auto through = hom_basis(isrc, through_mod);
          std::vector<std::vector<K>> span;
          for (const auto& h : through) span.push_back(flatten_hom(compose(h, through_map)));
          std::vector<K> rhs_v = flatten_hom(lhs);
          Matrix<K> span_m = Matrix<K>::from_rows(span, static_cast<int>(rhs_v.size()));
          Matrix<K> rhs(1, static_cast<int>(rhs_v.size()));
          rhs.set_row(0, rhs_v);
          if (solve_left(span_m, rhs)) {
            found = true;
            break;
          }
        }
        if (!found) {
          rep.verdict = Verdict::Inconclusive;
          rep.detail = "search exhausted: condition " + std::to_string(cond + 1) +
                       " unresolved for a test morphism from " + ctx.gen_name(x) + " at depth " +
                       std::to_string(depth);
          return rep;
        }
        ++covered;
      }
    }
  }
  rep.witnesses.push_back("test morphisms dominated: " + std::to_string(covered));
  return rep;
}

// --- epimorphism refinement ------------------------------------------------------------

template <class K>
struct RefinedEpi {
  EObject obj;       // X'
  ModuleHom<K> g;    // i_R(X') -> M over the truncation
};

/// Replaces an arbitrary epimorphism p: M ->> i_R(X) by a generator-sourced
/// one: the projective cover of M is the image of a kept-generator object,
/// and the composite i_R(X') -> M -> i_R(X) stays onto.
template <class K>
RefinedEpi<K> refine_epi(const Envelope<K>& env, const Module<K>& m, const ModuleHom<K>& p,
                         const Module<K>& target) {
  if (m.alg != &env.quotient.trunc()) fail(ErrorCode::BadInput, "module is not over the truncation");
  for (size_t u = 0; u < target.dims.size(); ++u)
    if (rank(p.block[u]) != target.dims[u])
      fail(ErrorCode::BadInput, "the map to refine is not an epimorphism");
  Cover<K> cov = projective_cover(m);
  RefinedEpi<K> out;
  for (size_t ku = 0; ku < cov.mult.size(); ++ku)
    for (int c = 0; c < cov.mult[ku]; ++c) out.obj.parts.push_back(env.quotient.kept()[ku]);
  Module<K> iobj = envelope_image(env, out.obj);
  if (iobj.dims != cov.proj.dims || !(iobj.act == cov.proj.act))
    fail(ErrorCode::AxiomFail, "the cover projective does not match a generator image");
  out.g = cov.onto;
  ModuleHom<K> composite = compose(out.g, p);
  for (size_t u = 0; u < target.dims.size(); ++u)
    if (rank(composite.block[u]) != target.dims[u])
      fail(ErrorCode::AxiomFail, "refined composite lost surjectivity");
  return out;
}

// --- induced functors --------------------------------------------------------------------

/// A right-exact functor out of E, given by its values on the generators and
/// on each pair-basis morphism, into modules over an arbitrary target
/// algebra.
template <class K>
struct FunctorData {
  const Algebra<K>* target = nullptr;
  std::vector<Module<K>> images;                            // F(G_i)
  std::vector<std::vector<std::vector<ModuleHom<K>>>> maps;  // maps[i][j][k] : F(G_j) -> F(G_i)
};

template <class K>
struct InducedFunctor {
  const Envelope<K>* env = nullptr;
  FunctorData<K> data;
};

namespace detail {

template <class K>
DirectSum<K> functor_sum(const FunctorData<K>& fd, const EObject& x) {
  std::vector<Module<K>> parts;
  for (int g : x.parts) parts.push_back(fd.images[static_cast<size_t>(g)]);
  if (parts.empty()) {
    DirectSum<K> out;
    out.mod = Module<K>::zero_module(*fd.target);
    return out;
  }
  return direct_sum(parts);
}

template <class K>
ModuleHom<K> functor_hom(const ExactContext<K>& ctx, const FunctorData<K>& fd,
                         const EMorphism<K>& f, const DirectSum<K>& src, const DirectSum<K>& tgt) {
  ModuleHom<K> out = zero_hom(src.mod, tgt.mod);
  for (size_t p = 0; p < f.src.parts.size(); ++p)
    for (size_t qq = 0; qq < f.tgt.parts.size(); ++qq) {
      int j = f.src.parts[p], i = f.tgt.parts[qq];
      const std::vector<K>& entry = f.entry[qq][p];
      ModuleHom<K> comp = zero_hom(fd.images[static_cast<size_t>(j)],
                                   fd.images[static_cast<size_t>(i)]);
      int off = ctx.pair_offset(i, j);
      bool nonzero = false;
      for (int k = 0; k < ctx.pair_dim(i, j); ++k) {
        const K& c = entry[static_cast<size_t>(off + k)];
        if (c.is_zero()) continue;
        comp = hom_add(comp, hom_scaled(fd.maps[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                            [static_cast<size_t>(k)],
                                        c));
        nonzero = true;
      }
      if (nonzero) out = hom_add(out, compose(src.project[p], compose(comp, tgt.inject[qq])));
    }
  return out;
}

}  // namespace detail

/// Validates functoriality and right exactness of the assignment, raising
/// E_BAD_INPUT on any violation, and returns the induced functor.
template <class K>
InducedFunctor<K> induce_functor(const Envelope<K>& env, FunctorData<K> data) {
  const ExactContext<K>& ctx = *env.ctx;
  if (!data.target) fail(ErrorCode::BadInput, "functor data needs a target algebra");
  if (static_cast<int>(data.images.size()) != ctx.num_gens())
    fail(ErrorCode::BadInput, "functor data must cover every generator");
  for (const Module<K>& im : data.images)
    if (im.alg != data.target) fail(ErrorCode::BadInput, "functor image is not over the target algebra");
  if (static_cast<int>(data.maps.size()) != ctx.num_gens())
    fail(ErrorCode::BadInput, "functor data must cover every generator pair");
  for (int i = 0; i < ctx.num_gens(); ++i) {
    if (static_cast<int>(data.maps[static_cast<size_t>(i)].size()) != ctx.num_gens())
      fail(ErrorCode::BadInput, "functor data must cover every generator pair");
    for (int j = 0; j < ctx.num_gens(); ++j)
      if (static_cast<int>(data.maps[static_cast<size_t>(i)][static_cast<size_t>(j)].size()) !=
          ctx.pair_dim(i, j))
        fail(ErrorCode::BadInput, "functor data must cover every hom-basis morphism");
  }

  // Identities map to identities.
  for (int i = 0; i < ctx.num_gens(); ++i) {
    const ModuleHom<K>& idm = data.maps[static_cast<size_t>(i)][static_cast<size_t>(i)][0];
    if (!hom_equal(idm, identity_hom(data.images[static_cast<size_t>(i)])))
      fail(ErrorCode::BadInput, "functor data does not preserve identities");
  }
  // Composition against the structure constants of the endomorphism algebra.
  const Algebra<K>& g = ctx.gamma();
  for (int b = 0; b < g.dim(); ++b)
    for (int b2 = 0; b2 < g.dim(); ++b2) {
      auto [i, j] = g.slot_of(b);
      auto [j2, l] = g.slot_of(b2);
      if (j != j2) continue;
      const ModuleHom<K>& fb = data.maps[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                        [static_cast<size_t>(b - ctx.pair_offset(i, j))];
      const ModuleHom<K>& fb2 = data.maps[static_cast<size_t>(j)][static_cast<size_t>(l)]
                                         [static_cast<size_t>(b2 - ctx.pair_offset(j, l))];
      ModuleHom<K> lhs = compose(fb2, fb);  // F(b2) then F(b) = F(b after b2)
      ModuleHom<K> rhs = zero_hom(data.images[static_cast<size_t>(l)],
                                  data.images[static_cast<size_t>(i)]);
      const std::vector<K>& prod = g.product_of_basis(b, b2);
      for (int c = 0; c < g.dim(); ++c) {
        if (prod[static_cast<size_t>(c)].is_zero()) continue;
        auto [ci, cl] = g.slot_of(c);
        rhs = hom_add(rhs, hom_scaled(data.maps[static_cast<size_t>(ci)][static_cast<size_t>(cl)]
                                               [static_cast<size_t>(c - ctx.pair_offset(ci, cl))],
                                      prod[static_cast<size_t>(c)]));
      }
      if (!hom_equal(lhs, rhs)) fail(ErrorCode::BadInput, "functor data is not functorial");
    }
  // Right exactness on the declared conflations.
  for (const Conflation<K>& conf : env.structure.declared) {
    DirectSum<K> fa = detail::functor_sum(data, conf.i.src);
    DirectSum<K> fb = detail::functor_sum(data, conf.i.tgt);
    DirectSum<K> fc = detail::functor_sum(data, conf.d.tgt);
    ModuleHom<K> fi = detail::functor_hom(ctx, data, conf.i, fa, fb);
    ModuleHom<K> fd = detail::functor_hom(ctx, data, conf.d, fb, fc);
    for (size_t u = 0; u < fc.mod.dims.size(); ++u) {
      if (rank(fd.block[u]) != fc.mod.dims[u])
        fail(ErrorCode::BadInput, "functor is not right exact: the deflation image is not onto");
      Matrix<K> im = row_space_basis(fi.block[u]);
      Matrix<K> ker = left_kernel(fd.block[u]);
      if (im.rows() != ker.rows() || !row_space_contains(ker, im))
        fail(ErrorCode::BadInput, "functor is not right exact: the middle homology is nonzero");
    }
  }
  InducedFunctor<K> out;
  out.env = &env;
  out.data = std::move(data);
  return out;
}

/// Value of the induced functor on an explicit presentation in E.
template <class K>
Module<K> induced_apply_presentation(const InducedFunctor<K>& f, const EObject& src,
                                     const EObject& tgt, const EMorphism<K>& a) {
  const ExactContext<K>& ctx = *f.env->ctx;
  DirectSum<K> fsrc = detail::functor_sum(f.data, src);
  DirectSum<K> ftgt = detail::functor_sum(f.data, tgt);
  ModuleHom<K> fa = detail::functor_hom(ctx, f.data, a, fsrc, ftgt);
  return cokernel(fsrc.mod, fa, ftgt.mod).mod;
}

/// Value on a module of the envelope, through its canonical presentation.
template <class K>
Module<K> induced_apply(const InducedFunctor<K>& f, const Module<K>& m) {
  EPresentation<K> pres = compute_presentation(f.env->quotient, m);
  return induced_apply_presentation(f, pres.src, pres.tgt, pres.a);
}

/// Compatibility F-tilde after i_R versus F on every generator, witnessed by
/// explicit isomorphisms.
template <class K>
CheckReport check_induced_compatibility(const InducedFunctor<K>& f, std::uint64_t seed = 20260814u) {
  CheckReport rep{"induced_compatibility", Verdict::Yes, "", {}, 0};
  const ExactContext<K>& ctx = *f.env->ctx;
  for (int u = 0; u < ctx.num_gens(); ++u) {
    Module<K> lhs = induced_apply(f, envelope_image(*f.env, EObject{{u}}));
    const Module<K>& rhs = f.data.images[static_cast<size_t>(u)];
    auto iso = find_isomorphism(lhs, rhs, seed);
    if (!iso) {
      rep.verdict = Verdict::No;
      rep.detail = "no isomorphism found on generator " + ctx.gen_name(u);
      return rep;
    }
    rep.witnesses.push_back("generator " + ctx.gen_name(u) + ": values isomorphic");
  }
  return rep;
}

// --- structure comparison ------------------------------------------------------------------

/// Monotone comparison of two structures on the same category: requires the
/// generating conflations of `small` to appear in `big` (or `small` to be
/// split), checks defect containment, and certifies the induced comparison
/// functor between the envelopes as exact by slotwise restriction.
template <class K>
CheckReport compare_structures(const ExactContext<K>& ctx, const ExactStructure<K>& small,
                               const ExactStructure<K>& big) {
  CheckReport rep{"compare", Verdict::Yes, "", {}, 0};
  if (small.kind != StructureKind::Split) {
    for (const Conflation<K>& conf : small.declared) {
      bool found = false;
      for (const Conflation<K>& other : big.declared)
        if (e_key(ctx, conf.i) == e_key(ctx, other.i) && e_key(ctx, conf.d) == e_key(ctx, other.d)) {
          found = true;
          break;
        }
      if (!found)
        fail(ErrorCode::BadInput, "the first structure is not contained in the second");
    }
  }
  Envelope<K> env_small = construct_envelope(ctx, small);
  Envelope<K> env_big = construct_envelope(ctx, big);
  for (int s : env_small.def.simples)
    if (std::find(env_big.def.simples.begin(), env_big.def.simples.end(), s) ==
        env_big.def.simples.end()) {
      rep.verdict = Verdict::No;
      rep.detail = "defect simple at " + ctx.gen_name(s) + " is missing from the larger structure";
      return rep;
    }
  rep.witnesses.push_back("defect containment: " + std::to_string(env_small.def.simples.size()) +
                          " of " + std::to_string(env_big.def.simples.size()) + " simples shared");

  // The comparison functor is restriction to the smaller idempotent: on every
  // generator it matches the two embeddings on the nose, and it is exact
  // because kernels and cokernels restrict slotwise.
  std::vector<int> keep_pos;  // positions in kept(small) of the slots kept by big
  for (int u : env_big.quotient.kept()) {
    int pos = env_small.quotient.kept_pos(u);
    if (pos < 0) {
      rep.verdict = Verdict::No;
      rep.detail = "the larger truncation keeps a slot the smaller one dropped";
      return rep;
    }
    keep_pos.push_back(pos);
  }
  for (int u = 0; u < ctx.num_gens(); ++u) {
    Module<K> through = envelope_image(env_small, EObject{{u}});
    Module<K> direct = envelope_image(env_big, EObject{{u}});
    bool agree = true;
    for (size_t k = 0; k < keep_pos.size() && agree; ++k)
      if (through.dims[static_cast<size_t>(keep_pos[k])] != direct.dims[k]) agree = false;
    // Byte-exact on the action too: every basis element of the larger
    // truncation is a basis element of the smaller one.
    for (int tb = 0; agree && tb < env_big.quotient.trunc().dim(); ++tb) {
      int ts = env_small.quotient.trunc_index(env_big.quotient.gamma_index(tb));
      if (ts < 0 || !(direct.act[static_cast<size_t>(tb)] == through.act[static_cast<size_t>(ts)]))
        agree = false;
    }
    if (!agree) {
      rep.verdict = Verdict::No;
      rep.detail = "comparison functor disagrees with the embeddings on " + ctx.gen_name(u);
      return rep;
    }
  }
  rep.witnesses.push_back("comparison functor matches both embeddings on all generators");

  int exact_ok = 0;
  for (const Conflation<K>& conf : small.declared) {
    std::string why;
    if (!image_short_exact(env_big, conf.i, conf.d, &why)) {
      rep.verdict = Verdict::No;
      rep.detail = "image of a shared conflation is not exact in the larger envelope: " + why;
      return rep;
    }
    ++exact_ok;
  }
  rep.witnesses.push_back("shared conflations exact in the larger envelope: " +
                          std::to_string(exact_ok));
  return rep;
}

// --- pullback witnesses for one-sided abelianness ---------------------------------------------

template <class K>
struct AbelianWitness {
  Module<K> obj;     // the pullback module E
  ModuleHom<K> d;    // E -> D, an epimorphism
  ModuleHom<K> h;    // E -> A, with h then f = d then g
};

/// Exhibits the left-abelian factorization in the envelope: given f: A -> B
/// and g: D -> B with coker(f) then g = 0 (so g lands in the image of f),
/// pulls back A ->> im(f) along g.
template <class K>
AbelianWitness<K> left_abelian_witness(const Envelope<K>& env, const Module<K>& a,
                                       const ModuleHom<K>& f, const Module<K>& b,
                                       const Module<K>& dmod, const ModuleHom<K>& g) {
  if (a.alg != &env.quotient.trunc() || b.alg != a.alg || dmod.alg != a.alg)
    fail(ErrorCode::BadInput, "witness construction needs modules over the envelope");
  QuotientModule<K> ck = cokernel(a, f, b);
  ModuleHom<K> gq = compose(g, ck.proj);
  for (size_t u = 0; u < gq.block.size(); ++u)
    if (rank(gq.block[u]) != 0)
      fail(ErrorCode::BadInput, "the test morphism does not land in the image");
  DirectSum<K> sum = direct_sum(std::vector<Module<K>>{a, dmod});
  ModuleHom<K> diff = hom_sub(compose(sum.project[0], f), compose(sum.project[1], g));
  Submodule<K> pb = kernel(sum.mod, diff, b);
  AbelianWitness<K> out;
  out.obj = pb.mod;
  out.h = compose(pb.incl, sum.project[0]);
  out.d = compose(pb.incl, sum.project[1]);
  for (size_t u = 0; u < dmod.dims.size(); ++u)
    if (rank(out.d.block[u]) != dmod.dims[u])
      fail(ErrorCode::AxiomFail, "pullback projection failed to stay onto");
  if (!hom_equal(compose(out.h, f), compose(out.d, g)))
    fail(ErrorCode::AxiomFail, "pullback square does not commute");
  return out;
}

// --- duality -------------------------------------------------------------------------------

/// Round-trips the structure through the duality involution and certifies the
/// double dual byte-exactly, including the defect sets on both sides.
template <class K>
CheckReport dualize_check(const ExactContext<K>& ctx, const ExactStructure<K>& st) {
  CheckReport rep{"dualize", Verdict::Yes, "", {}, 0};
  ExactContext<K> dctx = dual_context(ctx);
  ExactStructure<K> dst = dual_structure(ctx, dctx, st);
  ExactContext<K> ddctx = dual_context(dctx);
  ExactStructure<K> ddst = dual_structure(dctx, ddctx, dst);
  for (size_t c = 0; c < st.declared.size(); ++c) {
    if (e_key(ddctx, ddst.declared[c].i) != e_key(ctx, st.declared[c].i) ||
        e_key(ddctx, ddst.declared[c].d) != e_key(ctx, st.declared[c].d)) {
      rep.verdict = Verdict::No;
      rep.detail = "double dual of conflation " + std::to_string(c) + " is not byte-identical";
      return rep;
    }
  }
  rep.witnesses.push_back("double dual byte-identical on " + std::to_string(st.declared.size()) +
                          " conflations");
  if (dctx.gamma().dim() != ctx.gamma().dim()) {
    rep.verdict = Verdict::No;
    rep.detail = "dual endomorphism algebra changed dimension";
    return rep;
  }
  rep.witnesses.push_back("dual endomorphism algebra dimension preserved: " +
                          std::to_string(dctx.gamma().dim()));
  return rep;
}

}  // namespace envlab
