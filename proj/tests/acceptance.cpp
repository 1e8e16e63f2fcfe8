// Acceptance harness: one line per acceptance criterion, [PASS] or [FAIL],
// followed by a summary.  Exits 0 exactly when every criterion passes.
//
// Every expected number in this file is a frozen oracle: it was computed by
// hand from the defining formulas (hom spaces of quiver representations,
// endomorphism algebras of explicit generator sets, idempotent truncations)
// before the implementation existed, and the harness only compares.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "envlab/corpus.hpp"
#include "envlab/input.hpp"
#include "envlab/report.hpp"
#include "envlab/runner.hpp"
#include "support/fixtures.hpp"

using namespace envlab;
using testsupport::random_module;

namespace {

struct Crit {
  bool ok = true;
  std::string note;  // first failure explanation

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

long long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

InputData<Fp> load(const std::string& name) {
  return parse_input<Fp>(ojson::parse(corpus_text(name)));
}

int witness_count(const CheckReport& rep, const std::string& prefix) {
  for (const std::string& w : rep.witnesses)
    if (w.rfind(prefix, 0) == 0) return std::stoi(w.substr(prefix.size()));
  return -1;
}

std::string dims_str(const std::vector<int>& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

// ---- criterion 1: the one-arrow ambient fixture matches its frozen oracle ----

Crit criterion1(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();
  InputData<Fp> in = load("FIX-A2-ALL");
  const ExactContext<Fp>& ctx = in.ctx;
  const ExactStructure<Fp>& st = in.structures.at("all");
  Envelope<Fp> env = construct_envelope(ctx, st);

  c.expect(ctx.gamma().dim() == 5, "endomorphism algebra dimension != 5");
  c.expect(env.def.simples == std::vector<int>{2}, "defect set != {S[S1]}");
  c.expect(env.quotient.trunc().dim() == 3, "envelope algebra dimension != 3");
  c.expect(env.quotient.trunc().slots() == 2, "envelope algebra slot count != 2");

  // The truncation is the path algebra of the one-arrow quiver: one basis
  // element in each diagonal block, one in the off-diagonal block (0,1), and
  // an empty block (1,0).
  int blocks[2][2] = {{0, 0}, {0, 0}};
  for (int b = 0; b < env.quotient.trunc().dim(); ++b) {
    auto [s, t] = env.quotient.trunc().slot_of(b);
    blocks[s][t] += 1;
  }
  c.expect(blocks[0][0] == 1 && blocks[1][1] == 1 && blocks[0][1] + blocks[1][0] == 1,
           "envelope algebra is not a one-arrow path algebra");

  const std::vector<std::vector<int>> want_dims = {{1, 1}, {0, 1}, {1, 0}};
  std::vector<Module<Fp>> img;
  for (int g = 0; g < 3; ++g) {
    img.push_back(envelope_image(env, EObject{{g}}));
    c.expect(img.back().dims == want_dims[static_cast<size_t>(g)],
             "image of generator " + std::to_string(g) + " has dims " +
                 dims_str(img.back().dims));
  }

  // Full 3x3 hom table, pinned by hand and cross-checked against the
  // generator homs and the localization formula.
  const int want_hom[3][3] = {{1, 0, 1}, {1, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int via_env = hom_dim(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)]);
      int via_gens = ctx.e_hom_dim(EObject{{i}}, EObject{{j}});
      int via_loc = gabriel_hom(env.def.simples, ctx.yoneda(EObject{{i}}),
                                ctx.yoneda(EObject{{j}}));
      c.expect(via_env == want_hom[i][j] && via_gens == want_hom[i][j] &&
                   via_loc == want_hom[i][j],
               "hom(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                   std::to_string(via_env) + "/" + std::to_string(via_gens) + "/" +
                   std::to_string(via_loc) + ", expected " +
                   std::to_string(want_hom[i][j]));
    }

  c.expect(image_short_exact(env, st.declared[0].i, st.declared[0].d),
           "declared conflation image is not short exact");
  *ms = ms_since(t0);
  c.expect(*ms < 1000, "exceeded the 1 second budget");
  return c;
}

// ---- criterion 2: the split fixture rebuilds the whole module category ----

Crit criterion2(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();
  InputData<Fp> in = load("FIX-A2-SPLIT");
  const ExactContext<Fp>& ctx = in.ctx;
  Envelope<Fp> env = construct_envelope(ctx, in.structures.at("split"));

  c.expect(env.def.simples.empty(), "split structure has a nonempty defect");
  c.expect(env.quotient.trunc().dim() == 5, "envelope algebra dimension != 5");
  c.expect(env.quotient.trunc().slots() == 3, "envelope has != 3 simple modules");

  // The non-split kernel-cokernel pair P2 -> P1 -> S1 exists in the ambient
  // category but is not declared here, and its image fails exactness.
  std::vector<EMorphism<Fp>> inc = ctx.e_hom_basis(EObject{{1}}, EObject{{0}});
  std::vector<EMorphism<Fp>> dfl = ctx.e_hom_basis(EObject{{0}}, EObject{{2}});
  c.expect(inc.size() == 1 && dfl.size() == 1, "unexpected generator hom dimensions");
  std::string why;
  bool exact = image_short_exact(env, inc[0], dfl[0], &why);
  c.expect(!exact, "non-split pair image is short exact in the split envelope");
  c.expect(why == "the image of the deflation is not surjective",
           "unexpected failure reason: " + why);
  *ms = ms_since(t0);
  c.expect(*ms < 1000, "exceeded the 1 second budget");
  return c;
}

// ---- criterion 3: the twisted fixture matches its frozen oracle ----

Crit criterion3(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();
  InputData<Fp> in = load("FIX-KRON");
  const ExactContext<Fp>& ctx = in.ctx;
  Envelope<Fp> env = construct_envelope(ctx, in.structures.at("euler"));

  c.expect(ctx.gamma().dim() == 10, "endomorphism algebra dimension != 10");
  c.expect(env.def.simples == std::vector<int>{2}, "defect set != {S[O2]}");
  c.expect(env.quotient.trunc().dim() == 4, "envelope algebra dimension != 4");
  Module<Fp> io2 = envelope_image(env, EObject{{2}});
  c.expect(io2.dims == std::vector<int>{3, 2},
           "image of O2 has dims " + dims_str(io2.dims));
  c.expect(hom_dim(io2, io2) == 1, "End(image of O2) is not one-dimensional");
  *ms = ms_since(t0);
  c.expect(*ms < 2000, "exceeded the 2 second budget");
  return c;
}

// ---- criterion 4: localization formula vs truncation on random pairs ----

Crit criterion4(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, std::string>> picks = {
      {"FIX-A2-ALL", "all"}, {"FIX-A2-SPLIT", "split"}, {"FIX-KRON", "euler"}};
  std::uint64_t seed = 1001;
  for (const auto& [fixture, sname] : picks) {
    InputData<Fp> in = load(fixture);
    Envelope<Fp> env = construct_envelope(in.ctx, in.structures.at(sname));
    SplitMix64 rng(seed++);
    int agreed = 0;
    for (int trial = 0; trial < 100; ++trial) {
      Module<Fp> m = random_module(in.ctx.gamma(), rng);
      Module<Fp> n = random_module(in.ctx.gamma(), rng);
      int via_loc = gabriel_hom(env.def.simples, m, n);
      int via_trunc = hom_dim(env.quotient.apply(m), env.quotient.apply(n));
      if (via_loc == via_trunc) ++agreed;
    }
    c.expect(agreed == 100, fixture + ": only " + std::to_string(agreed) +
                                " of 100 random pairs agreed");
  }
  *ms = ms_since(t0);
  return c;
}

// ---- criterion 5: extension coherence with identity-covered kernels ----

Crit criterion5(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, std::string>> picks = {
      {"FIX-A2-ALL", "all"}, {"FIX-A2-SPLIT", "split"}, {"FIX-KRON", "euler"}};
  for (const auto& [fixture, sname] : picks) {
    InputData<Fp> in = load(fixture);
    ExactStructure<Fp> st = in.structures.at(sname);
    st.depth = 2;
    CheckReport rep = ext_coherence_report(in.ctx, st);
    c.expect(rep.verdict == Verdict::Yes, fixture + ": " + rep.detail);
    int checked = witness_count(rep, "hom-basis morphisms checked: ");
    int passed = witness_count(rep, "passed: ");
    int ident = witness_count(rep, "resolved by identity deflations alone: ");
    c.expect(checked > 0 && checked == passed,
             fixture + ": " + std::to_string(passed) + " of " +
                 std::to_string(checked) + " morphisms passed");
    c.expect(ident == checked,
             fixture + ": only " + std::to_string(ident) + " of " +
                 std::to_string(checked) + " weak kernels were identity-covered");
  }
  *ms = ms_since(t0);
  return c;
}

// ---- criterion 6: density of the embedded image on every indecomposable ----

Crit criterion6(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();

  // Ambient structure: the envelope is the module category of the one-arrow
  // path algebra, whose indecomposables are exactly the three generator
  // images (1,1), (0,1), (1,0).
  {
    InputData<Fp> in = load("FIX-A2-ALL");
    Envelope<Fp> env = construct_envelope(in.ctx, in.structures.at("all"));
    for (int g = 0; g < 3; ++g) {
      CheckReport rep = dense_extension_check(env, envelope_image(env, EObject{{g}}), 2);
      c.expect(rep.verdict == Verdict::Yes,
               "ambient image " + std::to_string(g) + ": " + rep.detail);
    }
  }

  // Split structure: the envelope algebra has radical square zero with five
  // indecomposables: three simples plus the images of P1 and S1.
  {
    InputData<Fp> in = load("FIX-A2-SPLIT");
    Envelope<Fp> env = construct_envelope(in.ctx, in.structures.at("split"));
    std::vector<Module<Fp>> indec;
    for (int s = 0; s < 3; ++s) indec.push_back(Module<Fp>::simple(env.quotient.trunc(), s));
    indec.push_back(envelope_image(env, EObject{{0}}));
    indec.push_back(envelope_image(env, EObject{{2}}));
    for (size_t i = 0; i < indec.size(); ++i) {
      CheckReport rep = dense_extension_check(env, indec[i], 2);
      c.expect(rep.verdict == Verdict::Yes,
               "split indecomposable " + std::to_string(i) + ": " + rep.detail);
    }
  }
  *ms = ms_since(t0);
  return c;
}

// ---- criterion 7: the induced functor and its presentation independence ----

Crit criterion7(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();
  InputData<Fp> in = load("FIX-A2-SPLIT");
  const ExactContext<Fp>& ctx = in.ctx;
  Envelope<Fp> env = construct_envelope(ctx, in.structures.at("split"));

  FunctorData<Fp> fd;
  fd.target = &ctx.ambient();
  for (int i = 0; i < ctx.num_gens(); ++i) fd.images.push_back(ctx.gen(i));
  fd.maps.resize(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) fd.maps[static_cast<size_t>(i)].push_back(ctx.pair_basis(i, j));
  InducedFunctor<Fp> f = induce_functor(env, fd);

  CheckReport compat = check_induced_compatibility(f);
  c.expect(compat.verdict == Verdict::Yes, "compatibility: " + compat.detail);

  Module<Fp> s2 = Module<Fp>::simple(env.quotient.trunc(), 2);
  c.expect(induced_apply(f, s2).total() == 0, "defect simple does not die");

  // Same object, two presentations: the canonical one and a padded one.
  EMorphism<Fp> into = ctx.e_inject_second(EObject{{1}}, EObject{{0}});
  Module<Fp> via_padded = induced_apply_presentation(f, into.src, into.tgt, into);
  c.expect(find_isomorphism(via_padded, ctx.gen(1), 99u).has_value(),
           "padded presentation changed the induced value");
  EMorphism<Fp> d = ctx.e_hom_basis(EObject{{0}}, EObject{{2}})[0];
  EMorphism<Fp> padded = ctx.e_direct_sum(d, ctx.e_identity(EObject{{0}}));
  c.expect(induced_apply_presentation(f, padded.src, padded.tgt, padded).total() == 0,
           "padded zero object acquired a nonzero induced value");
  *ms = ms_since(t0);
  return c;
}

// ---- criterion 8: structure comparison and duality involution ----

Crit criterion8(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();
  {
    InputData<Fp> in = load("FIX-A2-ALL");
    ExactStructure<Fp> split;
    split.kind = StructureKind::Split;
    CheckReport cmp = compare_structures(in.ctx, split, in.structures.at("all"));
    c.expect(cmp.verdict == Verdict::Yes, "split <= ambient: " + cmp.detail);
    CheckReport dual = dualize_check(in.ctx, in.structures.at("all"));
    c.expect(dual.verdict == Verdict::Yes, "one-arrow duality: " + dual.detail);
  }
  {
    InputData<Fp> in = load("FIX-KRON");
    CheckReport cmp = compare_structures(in.ctx, in.structures.at("split"),
                                         in.structures.at("euler"));
    c.expect(cmp.verdict == Verdict::Yes, "split <= generated: " + cmp.detail);
    CheckReport dual = dualize_check(in.ctx, in.structures.at("euler"));
    c.expect(dual.verdict == Verdict::Yes, "twisted duality: " + dual.detail);
  }
  *ms = ms_since(t0);
  return c;
}

// ---- criterion 9: seeded fuzzing, corpus determinism and runtime budget ----

// One fuzz instance: build a category from randomly chosen generators over a
// randomly chosen base algebra, then run the envelope pipeline on it.  The
// outcome fingerprint records everything observable so that a replay with the
// same seed must reproduce it byte for byte.
std::string fuzz_instance(std::uint64_t seed, bool* accepted) {
  SplitMix64 rng(seed);
  std::ostringstream out;
  out << "seed=" << seed << ";";
  try {
    std::unique_ptr<Algebra<Fp>> alg;
    if (rng.bounded(2) == 0) {
      Quiver qv;
      qv.vertices = {"1", "2"};
      qv.arrows = {{"a", 0, 1}};
      alg = std::make_unique<Algebra<Fp>>(
          Algebra<Fp>::from_quiver(FieldSpec::prime(101), qv, {}, 1));
    } else {
      Quiver qv;
      qv.vertices = {"u", "v", "w"};
      qv.arrows = {{"x0", 0, 1}, {"x1", 0, 1}, {"y0", 1, 2}, {"y1", 1, 2}};
      std::vector<Relation<Fp>> rel = {{RelationTerm<Fp>{Fp(1, 101), {0, 3}},
                                        RelationTerm<Fp>{Fp(-1, 101), {1, 2}}}};
      alg = std::make_unique<Algebra<Fp>>(
          Algebra<Fp>::from_quiver(FieldSpec::prime(101), qv, rel, 2));
    }
    const Algebra<Fp>* alg_raw = alg.get();

    int ngens = 1 + static_cast<int>(rng.bounded(3));
    std::vector<Module<Fp>> gens;
    std::vector<std::string> names;
    for (int g = 0; g < ngens; ++g) {
      switch (rng.bounded(3)) {
        case 0:
          gens.push_back(Module<Fp>::projective(
              *alg_raw, static_cast<int>(rng.bounded(static_cast<std::uint64_t>(alg_raw->slots())))));
          break;
        case 1:
          gens.push_back(Module<Fp>::simple(
              *alg_raw, static_cast<int>(rng.bounded(static_cast<std::uint64_t>(alg_raw->slots())))));
          break;
        default:
          gens.push_back(random_module(*alg_raw, rng));
      }
      names.push_back("G" + std::to_string(g));
    }
    ExactContext<Fp> ctx = ExactContext<Fp>::build(std::move(alg), std::move(gens), names);

    ExactStructure<Fp> st;
    st.kind = rng.bounded(2) == 0 ? StructureKind::Split : StructureKind::Ambient;
    st.depth = 2;
    st.seed = rng.next();
    Envelope<Fp> env = construct_envelope(ctx, st);
    out << "gamma=" << ctx.gamma().dim() << ";trunc=" << env.quotient.trunc().dim() << ";def=";
    for (int s : env.def.simples) out << s << ",";
    SplitMix64 pair_rng(rng.next());
    Module<Fp> m = random_module(ctx.gamma(), pair_rng);
    Module<Fp> n = random_module(ctx.gamma(), pair_rng);
    int via_loc = gabriel_hom(env.def.simples, m, n);
    int via_trunc = hom_dim(env.quotient.apply(m), env.quotient.apply(n));
    out << ";hom=" << via_loc << "/" << via_trunc;
    if (via_loc != via_trunc) out << ";MISMATCH";
    *accepted = true;
  } catch (const Error& e) {
    out << "rejected:" << error_code_name(e.code());
    *accepted = false;
  }
  out << "\n";
  return out.str();
}

Crit criterion9(long long* ms) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();

  const int kInstances = 500;
  int accepted = 0;
  std::string log1, log2;
  for (int i = 0; i < kInstances; ++i) {
    bool ok1 = false, ok2 = false;
    std::string a = fuzz_instance(90000u + static_cast<std::uint64_t>(i), &ok1);
    std::string b = fuzz_instance(90000u + static_cast<std::uint64_t>(i), &ok2);
    c.expect(a == b, "instance " + std::to_string(i) + " is not replay-stable");
    c.expect(a.find("MISMATCH") == std::string::npos,
             "instance " + std::to_string(i) + " disagreed on a quotient hom");
    if (ok1) ++accepted;
    log1 += a;
    log2 += b;
  }
  c.expect(log1 == log2, "fuzz logs differ between replays");
  // Random generator lists are often rejected (duplicated or decomposable
  // summands make the endomorphism algebra non-basic); the floor only keeps
  // the accepted path from going vacuous.
  c.expect(accepted >= 150,
           "only " + std::to_string(accepted) + " instances were accepted");

  // Every bundled input replays byte-identically (timing stripped) and stays
  // inside the runtime budget.
  for (const CorpusEntry& e : corpus()) {
    auto tf = std::chrono::steady_clock::now();
    InputData<Fp> in1 = load(e.name);
    RunReport r1 = run_tasks(in1, {}, "acc", fnv1a_hex(e.text));
    InputData<Fp> in2 = load(e.name);
    RunReport r2 = run_tasks(in2, {}, "acc", fnv1a_hex(e.text));
    c.expect(report_to_machine(r1, false) == report_to_machine(r2, false),
             std::string(e.name) + ": replay not byte-identical");
    c.expect(report_exit_code(r1) == 0, std::string(e.name) + ": exit code nonzero");
    long long fms = ms_since(tf);
    c.expect(fms < 10000, std::string(e.name) + ": task suite exceeded 10 seconds");
  }
  *ms = ms_since(t0);
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Crit (*fn)(long long*);
  };
  const std::vector<Entry> entries = {
      {"one-arrow ambient envelope matches the frozen oracle", criterion1},
      {"split structure rebuilds the whole module category", criterion2},
      {"twisted-generator envelope matches the frozen oracle", criterion3},
      {"localization formula agrees with the truncation on 300 random pairs", criterion4},
      {"extension coherence holds with identity-covered weak kernels", criterion5},
      {"embedded image is extension-dense on every indecomposable", criterion6},
      {"induced functor is compatible and presentation-independent", criterion7},
      {"structure comparison is monotone and duality is an involution", criterion8},
      {"500 seeded instances and all bundled inputs replay byte-identically", criterion9},
  };

  int failures = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    long long ms = 0;
    Crit c;
    try {
      c = entries[i].fn(&ms);
    } catch (const Error& e) {
      c.ok = false;
      c.note = std::string("unexpected error: ") + e.what();
    }
    std::printf("[%s] %zu. %s (%lld ms)\n", c.ok ? "PASS" : "FAIL", i + 1,
                entries[i].label, ms);
    if (!c.ok) {
      std::printf("       %s\n", c.note.c_str());
      ++failures;
    }
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", entries.size());
  else
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures, entries.size());
  return failures == 0 ? 0 : 1;
}
