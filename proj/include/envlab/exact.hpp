#pragma once

// Exact structures on add(G): split, ambient (inherited from the module
// category), and generated (smallest structure containing declared
// conflations).  Deflation checks return three-valued verdicts: membership
// certificates are exact, non-membership is certified where decidable, and
// bounded searches report exhaustion honestly instead of guessing.

#include "envlab/category.hpp"
#include "envlab/rng.hpp"

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace envlab {

enum class StructureKind { Split, Ambient, Generated };

inline const char* structure_kind_name(StructureKind k) {
  switch (k) {
    case StructureKind::Split: return "split";
    case StructureKind::Ambient: return "ambient";
    case StructureKind::Generated: return "generated";
  }
  return "?";
}

template <class K>
struct Conflation {
  EMorphism<K> i;  // A -> B
  EMorphism<K> d;  // B -> C
};

template <class K>
struct ExactStructure {
  StructureKind kind = StructureKind::Split;
  std::vector<Conflation<K>> declared;  // generating conflations (generated kind)
  int depth = 2;                        // object-universe bound for enumeration
  std::uint64_t seed = 20260814u;       // seed for isomorphism searches
};

enum class Verdict { Yes, No, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

template <class K>
struct DeflationCheck {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::optional<EMorphism<K>> section;  // present when a splitting certifies the verdict
};

// --- elementary certificates ---------------------------------------------------

/// Section search: s with (s then f) = id_{tgt}.  Exact linear solve.
template <class K>
std::optional<EMorphism<K>> split_section(const ExactContext<K>& ctx, const EMorphism<K>& f) {
  auto basis = ctx.e_hom_basis(f.tgt, f.src);
  EMorphism<K> id = ctx.e_identity(f.tgt);
  std::vector<K> want = ctx.e_flatten(id);
  const int cols = static_cast<int>(want.size());
  if (basis.empty()) {
    for (const auto& c : want)
      if (!c.is_zero()) return std::nullopt;
    return ctx.e_zero(f.tgt, f.src);
  }
  Matrix<K> rows(static_cast<int>(basis.size()), cols);
  for (size_t r = 0; r < basis.size(); ++r) rows.set_row(static_cast<int>(r), ctx.e_flatten(ctx.e_compose(basis[r], f)));
  Matrix<K> rhs(1, cols);
  rhs.set_row(0, want);
  auto sol = solve_left(rows, rhs);
  if (!sol) return std::nullopt;
  EMorphism<K> s = ctx.e_zero(f.tgt, f.src);
  for (size_t r = 0; r < basis.size(); ++r)
    if (!(*sol)(0, static_cast<int>(r)).is_zero()) s = ctx.e_add(s, ctx.e_scaled(basis[r], (*sol)(0, static_cast<int>(r))));
  return s;
}

/// Epimorphism test relative to the generators: f: B -> C is epi in add(G)
/// iff precomposition Hom(C, G_l) -> Hom(B, G_l) is injective for every l.
template <class K>
bool e_is_epi(const ExactContext<K>& ctx, const EMorphism<K>& f) {
  for (int l = 0; l < ctx.num_gens(); ++l) {
    EObject gl{{l}};
    auto basis = ctx.e_hom_basis(f.tgt, gl);
    if (basis.empty()) continue;
    const int cols = ctx.e_hom_dim(f.src, gl);
    Matrix<K> rows(static_cast<int>(basis.size()), cols);
    for (size_t r = 0; r < basis.size(); ++r)
      rows.set_row(static_cast<int>(r), ctx.e_flatten(ctx.e_compose(f, basis[r])));
    if (left_kernel(rows).rows() != 0) return false;
  }
  return true;
}

/// Dually: f is mono in add(G) iff postcomposition Hom(G_l, B) -> Hom(G_l, C)
/// is injective for every l.
template <class K>
bool e_is_mono(const ExactContext<K>& ctx, const EMorphism<K>& f) {
  for (int l = 0; l < ctx.num_gens(); ++l) {
    EObject gl{{l}};
    auto basis = ctx.e_hom_basis(gl, f.src);
    if (basis.empty()) continue;
    const int cols = ctx.e_hom_dim(gl, f.tgt);
    Matrix<K> rows(static_cast<int>(basis.size()), cols);
    for (size_t r = 0; r < basis.size(); ++r)
      rows.set_row(static_cast<int>(r), ctx.e_flatten(ctx.e_compose(basis[r], f)));
    if (left_kernel(rows).rows() != 0) return false;
  }
  return true;
}

/// Deterministic byte key for deduplication.
template <class K>
std::string e_key(const ExactContext<K>& ctx, const EMorphism<K>& f) {
  std::ostringstream os;
  for (int p : f.src.parts) os << p << ',';
  os << '|';
  for (int q : f.tgt.parts) os << q << ',';
  os << '|';
  for (const auto& c : ctx.e_flatten(f)) os << c.str() << ';';
  return os.str();
}

/// Permutation isomorphism matching equal generator indices (multisets must
/// agree); the matching is greedy and deterministic.
template <class K>
std::optional<EMorphism<K>> permutation_morphism(const ExactContext<K>& ctx, const EObject& from,
                                                 const EObject& to) {
  if (from.parts.size() != to.parts.size()) return std::nullopt;
  std::vector<bool> used(from.parts.size(), false);
  EMorphism<K> f = ctx.e_zero(from, to);
  for (size_t q = 0; q < to.parts.size(); ++q) {
    bool found = false;
    for (size_t p = 0; p < from.parts.size(); ++p) {
      if (used[p] || from.parts[p] != to.parts[q]) continue;
      used[p] = true;
      f.entry[q][p] = ctx.gamma().idempotent(to.parts[q]);
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return f;
}

/// Find an isomorphism a: B -> B' with (a then d) = f, by affine solve plus a
/// seeded bounded search over the solution space.
template <class K>
std::optional<EMorphism<K>> solve_iso_factor(const ExactContext<K>& ctx, const EMorphism<K>& f,
                                             const EMorphism<K>& d, std::uint64_t seed, int tries = 24) {
  auto basis = ctx.e_hom_basis(f.src, d.src);
  std::vector<K> want = ctx.e_flatten(f);
  const int cols = static_cast<int>(want.size());
  if (basis.empty()) {
    for (const auto& c : want)
      if (!c.is_zero()) return std::nullopt;
    EMorphism<K> zero = ctx.e_zero(f.src, d.src);
    if (ctx.e_is_iso(zero)) return zero;
    return std::nullopt;
  }
  Matrix<K> rows(static_cast<int>(basis.size()), cols);
  for (size_t r = 0; r < basis.size(); ++r)
    rows.set_row(static_cast<int>(r), ctx.e_flatten(ctx.e_compose(basis[r], d)));
  Matrix<K> rhs(1, cols);
  rhs.set_row(0, want);
  auto sol = solve_left(rows, rhs);
  if (!sol) return std::nullopt;
  Matrix<K> kern = left_kernel(rows);
  auto assemble = [&](const std::vector<K>& coeffs) {
    EMorphism<K> a = ctx.e_zero(f.src, d.src);
    for (size_t r = 0; r < basis.size(); ++r)
      if (!coeffs[r].is_zero()) a = ctx.e_add(a, ctx.e_scaled(basis[r], coeffs[r]));
    return a;
  };
  std::vector<K> part = sol->row(0);
  EMorphism<K> cand = assemble(part);
  if (ctx.e_is_iso(cand)) return cand;
  SplitMix64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const FieldSpec& fs = ctx.ambient().field();
  for (int t = 0; t < tries; ++t) {
    std::vector<K> coeffs = part;
    for (int r = 0; r < kern.rows(); ++r) {
      K c = random_scalar<K>(rng, fs);
      if (c.is_zero()) continue;
      for (int j = 0; j < kern.cols(); ++j) coeffs[static_cast<size_t>(j)] += kern(r, j) * c;
    }
    cand = assemble(coeffs);
    if (ctx.e_is_iso(cand)) return cand;
  }
  return std::nullopt;
}

// --- pullback / pushout --------------------------------------------------------

template <class K>
struct PullbackResult {
  bool representable = false;
  EObject obj;
  EMorphism<K> to_src;   // P -> B (source of d)
  EMorphism<K> to_base;  // P -> X (source of g)
};

template <class K>
struct PushoutResult {
  bool representable = false;
  EObject obj;
  EMorphism<K> from_tgt;   // B -> P (target of i)
  EMorphism<K> from_base;  // X -> P (target of g)
};

namespace detail {

/// Read an E-morphism X -> Y off a module hom Y(X) -> Y(Y) between covariant
/// Yoneda modules (evaluate on the generating idempotents).
template <class K>
EMorphism<K> emorphism_from_yoneda(const ExactContext<K>& ctx, const EObject& x, const EObject& y,
                                   const ModuleHom<K>& h) {
  EMorphism<K> f = ctx.e_zero(x, y);
  for (size_t p = 0; p < x.parts.size(); ++p) {
    const int u = x.parts[p];
    int row = 0;
    for (size_t pp = 0; pp < p; ++pp) row += ctx.pair_dim(x.parts[pp], u);
    // The identity sits first in the diagonal pair basis, so the generator of
    // e_u Gamma at slot u is position 0 of its own block.
    const Matrix<K>& blk = h.block[static_cast<size_t>(u)];
    int col = 0;
    for (size_t q = 0; q < y.parts.size(); ++q) {
      const int pdim = ctx.pair_dim(y.parts[q], u);
      const int off = ctx.pair_offset(y.parts[q], u);
      for (int k = 0; k < pdim; ++k)
        f.entry[q][p][static_cast<size_t>(off + k)] = blk(row, col + k);
      col += pdim;
    }
  }
  if (!hom_equal(ctx.yoneda_hom(f), h)) fail(ErrorCode::AxiomFail, "module hom is not induced by a morphism of add(G)");
  return f;
}

/// Contravariant version: a module hom Y_op(X) -> Y_op(Y) over Gamma^op is
/// induced by an E-morphism Y -> X.
template <class K>
EMorphism<K> emorphism_from_yoneda_op(const ExactContext<K>& ctx, const EObject& x, const EObject& y,
                                      const ModuleHom<K>& h) {
  EMorphism<K> f = ctx.e_zero(y, x);
  for (size_t p = 0; p < x.parts.size(); ++p) {
    const int u = x.parts[p];
    int row = 0;
    for (size_t pp = 0; pp < p; ++pp) row += ctx.pair_dim(u, x.parts[pp]);  // op pair dims swap
    const Matrix<K>& blk = h.block[static_cast<size_t>(u)];
    int col = 0;
    for (size_t q = 0; q < y.parts.size(); ++q) {
      const int pdim = ctx.pair_dim(u, y.parts[q]);
      const int off = ctx.pair_offset(x.parts[p], y.parts[q]);
      for (int k = 0; k < pdim; ++k)
        f.entry[p][q][static_cast<size_t>(off + k)] = blk(row, col + k);
      col += pdim;
    }
  }
  if (!hom_equal(ctx.yoneda_op_hom(f), h)) fail(ErrorCode::AxiomFail, "module hom is not induced by a morphism of add(G)");
  return f;
}

}  // namespace detail

/// Pullback of d: B -> C along g: X -> C, computed as the kernel of
/// [Y(d); -Y(g)] on the covariant Yoneda side; representable iff that kernel
/// is a projective Gamma-module.
template <class K>
PullbackResult<K> pullback(const ExactContext<K>& ctx, const EMorphism<K>& d, const EMorphism<K>& g) {
  if (d.tgt != g.tgt) fail(ErrorCode::DimMismatch, "pullback legs must share a target");
  PullbackResult<K> out;
  Module<K> yb = ctx.yoneda(d.src), yx = ctx.yoneda(g.src), yc = ctx.yoneda(d.tgt);
  DirectSum<K> big = direct_sum(std::vector<Module<K>>{yb, yx});
  ModuleHom<K> diff = hom_sub(compose(big.project[0], ctx.yoneda_hom(d)), compose(big.project[1], ctx.yoneda_hom(g)));
  Submodule<K> ker = kernel(big.mod, diff, yc);
  Cover<K> cover = projective_cover(ker.mod);
  if (cover.proj.dims != ker.mod.dims) return out;  // kernel not projective: no representing object
  out.representable = true;
  for (size_t u = 0; u < cover.mult.size(); ++u)
    for (int c = 0; c < cover.mult[u]; ++c) out.obj.parts.push_back(static_cast<int>(u));
  ModuleHom<K> to_big = compose(cover.onto, ker.incl);
  out.to_src = detail::emorphism_from_yoneda(ctx, out.obj, d.src, compose(to_big, big.project[0]));
  out.to_base = detail::emorphism_from_yoneda(ctx, out.obj, g.src, compose(to_big, big.project[1]));
  if (!ctx.e_equal(ctx.e_compose(out.to_src, d), ctx.e_compose(out.to_base, g)))
    fail(ErrorCode::AxiomFail, "pullback square does not commute");
  return out;
}

/// Pushout of i: A -> B along g: A -> X, computed dually over Gamma^op.
template <class K>
PushoutResult<K> pushout(const ExactContext<K>& ctx, const EMorphism<K>& i, const EMorphism<K>& g) {
  if (i.src != g.src) fail(ErrorCode::DimMismatch, "pushout legs must share a source");
  PushoutResult<K> out;
  Module<K> yb = ctx.yoneda_op(i.tgt), yx = ctx.yoneda_op(g.tgt), ya = ctx.yoneda_op(i.src);
  DirectSum<K> big = direct_sum(std::vector<Module<K>>{yb, yx});
  ModuleHom<K> diff =
      hom_sub(compose(big.project[0], ctx.yoneda_op_hom(i)), compose(big.project[1], ctx.yoneda_op_hom(g)));
  Submodule<K> ker = kernel(big.mod, diff, ya);
  Cover<K> cover = projective_cover(ker.mod);
  if (cover.proj.dims != ker.mod.dims) return out;
  out.representable = true;
  for (size_t u = 0; u < cover.mult.size(); ++u)
    for (int c = 0; c < cover.mult[u]; ++c) out.obj.parts.push_back(static_cast<int>(u));
  ModuleHom<K> to_big = compose(cover.onto, ker.incl);
  out.from_tgt = detail::emorphism_from_yoneda_op(ctx, out.obj, i.tgt, compose(to_big, big.project[0]));
  out.from_base = detail::emorphism_from_yoneda_op(ctx, out.obj, g.tgt, compose(to_big, big.project[1]));
  if (!ctx.e_equal(ctx.e_compose(i, out.from_tgt), ctx.e_compose(g, out.from_base)))
    fail(ErrorCode::AxiomFail, "pushout square does not commute");
  return out;
}

// --- enumeration ---------------------------------------------------------------

/// All sorted generator multisets of size 1..depth, in length-lex order.
inline std::vector<EObject> object_universe(int num_gens, int depth) {
  std::vector<EObject> out;
  std::vector<std::vector<int>> layer{{}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& tup : layer) {
      int start = tup.empty() ? 0 : tup.back();
      for (int g = start; g < num_gens; ++g) {
        auto t = tup;
        t.push_back(g);
        next.push_back(t);
      }
    }
    for (const auto& t : next) out.push_back(EObject{t});
    layer = std::move(next);
  }
  return out;
}

/// Bounded deterministic closure of known deflations: split projections and
/// declared/seeded deflations, closed under composition, pullback along
/// generator morphisms, and direct sum with identities.
template <class K>
std::vector<EMorphism<K>> enumerate_deflations(const ExactContext<K>& ctx, const ExactStructure<K>& st,
                                               const std::vector<EMorphism<K>>& extra_seeds = {},
                                               int cap = 512) {
  std::vector<EMorphism<K>> out;
  std::set<std::string> seen;
  auto push = [&](const EMorphism<K>& f) {
    if (static_cast<int>(out.size()) >= cap) return;
    auto key = e_key(ctx, f);
    if (seen.insert(key).second) out.push_back(f);
  };
  // Declared and seeded deflations first: candidate scans hit them early.
  for (const auto& conf : st.declared) push(conf.d);
  for (const auto& f : extra_seeds) push(f);
  auto universe = object_universe(ctx.num_gens(), st.depth);
  for (const auto& c : universe) {
    push(ctx.e_identity(c));
    for (const auto& x : universe) push(ctx.e_project_second(x, c));
  }

  const int rounds = 2;
  for (int round = 0; round < rounds; ++round) {
    const size_t frozen = out.size();
    // Compositions.
    for (size_t a = 0; a < frozen; ++a)
      for (size_t b = 0; b < frozen; ++b) {
        if (static_cast<int>(out.size()) >= cap) break;
        if (out[a].tgt == out[b].src) push(ctx.e_compose(out[a], out[b]));
      }
    // Pullbacks along generator morphisms.
    for (size_t a = 0; a < frozen; ++a) {
      if (static_cast<int>(out.size()) >= cap) break;
      for (int l = 0; l < ctx.num_gens(); ++l) {
        EObject gl{{l}};
        for (const auto& g : ctx.e_hom_basis(gl, out[a].tgt)) {
          if (static_cast<int>(out.size()) >= cap) break;
          PullbackResult<K> pb = pullback(ctx, out[a], g);
          if (pb.representable) push(pb.to_base);
        }
      }
    }
    // Direct sums with identity summands.
    for (size_t a = 0; a < frozen; ++a)
      for (int l = 0; l < ctx.num_gens(); ++l) {
        if (static_cast<int>(out.size()) >= cap) break;
        EObject gl{{l}};
        push(ctx.e_direct_sum(out[a], ctx.e_identity(gl)));
      }
  }
  return out;
}

// --- deflation and conflation verdicts ------------------------------------------

/// Access to the generator list for additive-closure tests.
template <class K>
std::vector<Module<K>> ctx_gens(const ExactContext<K>& ctx) {
  std::vector<Module<K>> gens;
  for (int i = 0; i < ctx.num_gens(); ++i) gens.push_back(ctx.gen(i));
  return gens;
}

/// Deflation verdict against a precomputed candidate closure (generated kind
/// only consults the candidates; split/ambient verdicts are decided exactly).
template <class K>
DeflationCheck<K> is_deflation_with(const ExactContext<K>& ctx, const ExactStructure<K>& st,
                                    const EMorphism<K>& f, const std::vector<EMorphism<K>>& candidates) {
  ctx.validate_emorphism(f);
  DeflationCheck<K> out;
  // Split epimorphisms are deflations in every exact structure.
  auto section = split_section(ctx, f);
  if (section) {
    out.verdict = Verdict::Yes;
    out.reason = "split epimorphism (section exhibited)";
    out.section = std::move(section);
    return out;
  }
  if (st.kind == StructureKind::Split) {
    out.verdict = Verdict::No;
    out.reason = "no section exists, so the map is not a split-structure deflation";
    return out;
  }
  if (!e_is_epi(ctx, f)) {
    out.verdict = Verdict::No;
    out.reason = "not an epimorphism relative to the generators";
    return out;
  }
  if (st.kind == StructureKind::Ambient) {
    ModuleHom<K> h = ctx.ambient_hom(f);
    Module<K> src = ctx.ambient_module(f.src), tgt = ctx.ambient_module(f.tgt);
    for (size_t u = 0; u < h.block.size(); ++u)
      if (rank(h.block[u]) != tgt.dims[u]) {
        out.verdict = Verdict::No;
        out.reason = "underlying module map is not surjective";
        return out;
      }
    Submodule<K> ker = kernel(src, h, tgt);
    if (in_additive_closure(ker.mod, ctx_gens(ctx))) {
      out.verdict = Verdict::Yes;
      out.reason = "surjective with kernel in the additive closure of the generators";
    } else {
      out.verdict = Verdict::No;
      out.reason = "kernel of the underlying module map lies outside the additive closure";
    }
    return out;
  }
  // Generated structure: certificate search against the bounded closure.
  const std::vector<int> src_dims = ctx.yoneda_dims(f.src);
  for (const auto& d : candidates) {
    EMorphism<K> dd = d;
    if (dd.tgt != f.tgt) {
      auto perm = permutation_morphism(ctx, dd.tgt, f.tgt);
      if (!perm) continue;
      dd = ctx.e_compose(dd, *perm);
    }
    if (ctx.yoneda_dims(dd.src) != src_dims) continue;  // isomorphic sources only
    auto alpha = solve_iso_factor(ctx, f, dd, st.seed);
    if (alpha) {
      out.verdict = Verdict::Yes;
      out.reason = "isomorphic to an enumerated deflation of the generated structure";
      return out;
    }
  }
  out.verdict = Verdict::Inconclusive;
  out.reason = "search exhausted: bounded closure at depth " + std::to_string(st.depth) +
               " contains no matching deflation";
  return out;
}

template <class K>
DeflationCheck<K> is_deflation(const ExactContext<K>& ctx, const ExactStructure<K>& st,
                               const EMorphism<K>& f, const std::vector<EMorphism<K>>& extra_seeds = {}) {
  std::vector<EMorphism<K>> candidates;
  if (st.kind == StructureKind::Generated) {
    // Cheap pre-checks avoid paying for enumeration on decided cases.
    auto section = split_section(ctx, f);
    if (!section && e_is_epi(ctx, f)) candidates = enumerate_deflations(ctx, st, extra_seeds);
  }
  return is_deflation_with(ctx, st, f, candidates);
}

template <class K>
struct ConflationCheck {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
};

/// Kernel-cokernel pair test via both Yoneda embeddings: i must represent
/// ker(d) covariantly and d must represent coker(i) contravariantly.
template <class K>
bool is_kernel_cokernel_pair(const ExactContext<K>& ctx, const EMorphism<K>& i, const EMorphism<K>& d,
                             std::string* why = nullptr) {
  auto explain = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (i.tgt != d.src) return explain("middle objects disagree");
  if (!ctx.e_is_zero(ctx.e_compose(i, d))) return explain("composite is nonzero");
  {
    Module<K> ya = ctx.yoneda(i.src), yb = ctx.yoneda(i.tgt), yc = ctx.yoneda(d.tgt);
    ModuleHom<K> yi = ctx.yoneda_hom(i), yd = ctx.yoneda_hom(d);
    int rk = 0;
    for (const auto& blk : yi.block) rk += rank(blk);
    if (rk != ya.total()) return explain("kernel side: the first map is not injective on hom spaces");
    Submodule<K> im = image(ya, yi, yb);
    Submodule<K> ker = kernel(yb, yd, yc);
    for (size_t u = 0; u < im.rows.size(); ++u) {
      if (im.rows[u].rows() != ker.rows[u].rows() || !row_space_contains(ker.rows[u], im.rows[u]))
        return explain("kernel side: image of the first map differs from the kernel of the second");
    }
  }
  {
    Module<K> ya = ctx.yoneda_op(i.src), yb = ctx.yoneda_op(i.tgt), yc = ctx.yoneda_op(d.tgt);
    ModuleHom<K> yi = ctx.yoneda_op_hom(i), yd = ctx.yoneda_op_hom(d);
    int rk = 0;
    for (const auto& blk : yd.block) rk += rank(blk);
    if (rk != yc.total()) return explain("cokernel side: the second map is not injective on op hom spaces");
    Submodule<K> im = image(yc, yd, yb);
    Submodule<K> ker = kernel(yb, yi, ya);
    for (size_t u = 0; u < im.rows.size(); ++u) {
      if (im.rows[u].rows() != ker.rows[u].rows() || !row_space_contains(ker.rows[u], im.rows[u]))
        return explain("cokernel side: image of the second map differs from the kernel of the first");
    }
  }
  return true;
}

template <class K>
ConflationCheck<K> is_conflation(const ExactContext<K>& ctx, const ExactStructure<K>& st,
                                 const Conflation<K>& conf,
                                 const std::vector<EMorphism<K>>& extra_seeds = {}) {
  ConflationCheck<K> out;
  std::string why;
  if (!is_kernel_cokernel_pair(ctx, conf.i, conf.d, &why)) {
    out.verdict = Verdict::No;
    out.reason = why;
    return out;
  }
  DeflationCheck<K> def = is_deflation(ctx, st, conf.d, extra_seeds);
  out.verdict = def.verdict;
  out.reason = def.verdict == Verdict::Yes ? "kernel-cokernel pair whose second map is a deflation" : def.reason;
  return out;
}

// --- structure validation --------------------------------------------------------

struct CheckItem {
  std::string name;
  std::string verdict;  // "pass" / "fail" / "inconclusive"
  std::string detail;
};

struct StructureReport {
  bool ok = true;
  bool exhausted = false;
  std::vector<CheckItem> items;
};

namespace detail {

inline void report_item(StructureReport& rep, const std::string& name, Verdict v, const std::string& detail) {
  CheckItem item{name, "", detail};
  switch (v) {
    case Verdict::Yes: item.verdict = "pass"; break;
    case Verdict::No:
      item.verdict = "fail";
      rep.ok = false;
      break;
    case Verdict::Inconclusive:
      item.verdict = "inconclusive";
      rep.exhausted = true;
      break;
  }
  rep.items.push_back(std::move(item));
}

template <class K>
void validate_structure_side(const ExactContext<K>& ctx, const ExactStructure<K>& st, const std::string& side,
                             StructureReport& rep) {
  std::vector<EMorphism<K>> candidates;
  if (st.kind == StructureKind::Generated) candidates = enumerate_deflations(ctx, st);
  auto check_defl = [&](const EMorphism<K>& f) { return is_deflation_with(ctx, st, f, candidates); };

  // Identities are deflations.
  for (int l = 0; l < ctx.num_gens(); ++l) {
    EObject gl{{l}};
    auto check = check_defl(ctx.e_identity(gl));
    report_item(rep, side + "identity on " + ctx.gen_name(l) + " is a deflation", check.verdict, check.reason);
  }
  // Declared conflations hold.
  for (size_t c = 0; c < st.declared.size(); ++c) {
    std::string why;
    Verdict v = Verdict::Yes;
    std::string detail = "kernel-cokernel pair whose second map is a deflation";
    if (!is_kernel_cokernel_pair(ctx, st.declared[c].i, st.declared[c].d, &why)) {
      v = Verdict::No;
      detail = why;
    } else {
      auto check = check_defl(st.declared[c].d);
      v = check.verdict;
      if (v != Verdict::Yes) detail = check.reason;
    }
    report_item(rep, side + "declared conflation #" + std::to_string(c), v, detail);
  }
  // Seed deflations: declared ones first so the samples exercise them, then
  // split projections.
  std::vector<EMorphism<K>> seeds;
  for (const auto& conf : st.declared) seeds.push_back(conf.d);
  auto universe = object_universe(ctx.num_gens(), std::min(st.depth, 2));
  for (const auto& c : universe)
    for (const auto& x : universe) seeds.push_back(ctx.e_project_second(x, c));

  // Compositions of seed deflations are deflations.
  int done = 0;
  Verdict comp_worst = Verdict::Yes;
  std::string comp_detail = "sampled compositions certified";
  for (size_t a = 0; a < seeds.size() && done < 20; ++a)
    for (size_t b = 0; b < seeds.size() && done < 20; ++b) {
      if (seeds[a].tgt != seeds[b].src) continue;
      ++done;
      auto check = check_defl(ctx.e_compose(seeds[a], seeds[b]));
      if (check.verdict == Verdict::No) {
        comp_worst = Verdict::No;
        comp_detail = check.reason;
      } else if (check.verdict == Verdict::Inconclusive && comp_worst == Verdict::Yes) {
        comp_worst = Verdict::Inconclusive;
        comp_detail = check.reason;
      }
    }
  report_item(rep, side + "compositions of deflations are deflations (sampled)", comp_worst, comp_detail);

  // Pullbacks of seed deflations along generator morphisms exist and deflate.
  done = 0;
  Verdict pb_worst = Verdict::Yes;
  std::string pb_detail = "sampled pullbacks representable with deflation projections";
  for (size_t a = 0; a < seeds.size() && done < 12; ++a) {
    for (int l = 0; l < ctx.num_gens() && done < 12; ++l) {
      EObject gl{{l}};
      for (const auto& g : ctx.e_hom_basis(gl, seeds[a].tgt)) {
        if (done >= 12) break;
        ++done;
        PullbackResult<K> pb = pullback(ctx, seeds[a], g);
        if (!pb.representable) {
          pb_worst = Verdict::No;
          pb_detail = "pullback of a deflation is not representable in add(G)";
          continue;
        }
        auto check = check_defl(pb.to_base);
        if (check.verdict == Verdict::No) {
          pb_worst = Verdict::No;
          pb_detail = check.reason;
        } else if (check.verdict == Verdict::Inconclusive && pb_worst == Verdict::Yes) {
          pb_worst = Verdict::Inconclusive;
          pb_detail = check.reason;
        }
      }
    }
  }
  report_item(rep, side + "pullbacks of deflations along generator maps (sampled)", pb_worst, pb_detail);
}

}  // namespace detail

/// Dual structure carried to the dual context.
template <class K>
ExactStructure<K> dual_structure(const ExactContext<K>& ctx, const ExactContext<K>& dctx,
                                 const ExactStructure<K>& st) {
  ExactStructure<K> out;
  out.kind = st.kind;
  out.depth = st.depth;
  out.seed = st.seed;
  for (const auto& conf : st.declared) {
    Conflation<K> dual;
    dual.i = dual_morphism(ctx, dctx, conf.d);
    dual.d = dual_morphism(ctx, dctx, conf.i);
    out.declared.push_back(std::move(dual));
  }
  return out;
}

/// Axiom validation at desk scale, on the structure and on its dual (so the
/// pushout-side axioms are checked as pullback-side axioms of the dual).
template <class K>
StructureReport validate_structure(const ExactContext<K>& ctx, const ExactStructure<K>& st) {
  StructureReport rep;
  detail::validate_structure_side(ctx, st, "", rep);
  ExactContext<K> dctx = dual_context(ctx);
  ExactStructure<K> dst = dual_structure(ctx, dctx, st);
  detail::validate_structure_side(dctx, dst, "dual: ", rep);
  // Dualizing twice restores every declared conflation byte for byte.
  ExactContext<K> ddctx = dual_context(dctx);
  bool invol = ddctx.gamma().dim() == ctx.gamma().dim();
  for (size_t c = 0; invol && c < st.declared.size(); ++c) {
    Conflation<K> back;
    back.i = dual_morphism(dctx, ddctx, dst.declared[c].d);
    back.d = dual_morphism(dctx, ddctx, dst.declared[c].i);
    invol = e_key(ctx, back.i) == e_key(ctx, st.declared[c].i) &&
            e_key(ctx, back.d) == e_key(ctx, st.declared[c].d);
  }
  detail::report_item(rep, "dualization is an involution on declared data", invol ? Verdict::Yes : Verdict::No,
                      invol ? "double dual reproduced declared conflations exactly" : "double dual mismatch");
  return rep;
}

}  // namespace envlab
