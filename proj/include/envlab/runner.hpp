#pragma once

// Task execution: resolves each task against the parsed input, runs the
// requested construction or check, and collects CheckReports.  Tasks are
// isolated: an input error inside one task is recorded on that task and the
// remaining tasks still run.

#include <chrono>
#include <string>
#include <vector>

#include "envlab/input.hpp"
#include "envlab/report.hpp"

namespace envlab {

struct RunOptions {
  int depth = 0;            // 0 = keep the depth given by the structure
  std::uint64_t seed = 0;   // 0 = keep the seed given by the structure
};

namespace rundetail {

inline std::int64_t micros_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <class K>
const ExactStructure<K>* resolve_structure(const InputData<K>& in, TaskReport& task,
                                           const std::string& name) {
  std::string key = name;
  if (key.empty()) {
    if (in.structure_order.size() == 1) {
      key = in.structure_order.front();
    } else {
      task.error = "E_BAD_INPUT: task needs a 'structure' name (the input declares " +
                   std::to_string(in.structure_order.size()) + ")";
      return nullptr;
    }
  }
  auto it = in.structures.find(key);
  if (it == in.structures.end()) {
    task.error = "E_BAD_INPUT: unknown structure '" + key + "'";
    return nullptr;
  }
  task.structure = key;
  return &it->second;
}

template <class K>
ExactStructure<K> with_options(const ExactStructure<K>& st, const RunOptions& opt) {
  ExactStructure<K> out = st;
  if (opt.depth > 0) out.depth = opt.depth;
  if (opt.seed != 0) out.seed = opt.seed;
  return out;
}

inline std::string join_dims(const std::vector<int>& dims) {
  std::string s = "(";
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + ")";
}

template <class K>
CheckReport envelope_summary(const ExactContext<K>& ctx, const ExactStructure<K>& st) {
  CheckReport rep{"envelope", Verdict::Yes, "", {}, 0};
  Envelope<K> env = construct_envelope(ctx, st);
  rep.witnesses.push_back("endomorphism algebra dimension: " + std::to_string(ctx.gamma().dim()));
  std::string defects = "defect simples:";
  if (env.def.simples.empty()) defects += " none";
  for (int s : env.def.simples) defects += " S[" + ctx.gen_name(s) + "]";
  rep.witnesses.push_back(defects);
  DefSoundness<K> sound = def_soundness_check(ctx, st, env.def, st.depth);
  if (!sound.ok) {
    rep.verdict = Verdict::No;
    rep.detail = sound.detail;
    return rep;
  }
  rep.witnesses.push_back("defect closure checked on " + std::to_string(sound.checked) +
                          " enumerated deflations");
  rep.witnesses.push_back("envelope algebra dimension: " +
                          std::to_string(env.quotient.trunc().dim()));
  rep.witnesses.push_back("envelope simple modules: " +
                          std::to_string(env.quotient.trunc().slots()));
  for (int g = 0; g < ctx.num_gens(); ++g)
    rep.witnesses.push_back("image of " + ctx.gen_name(g) + ": " +
                            join_dims(envelope_image(env, EObject{{g}}).dims));
  return rep;
}

template <class K>
CheckReport dense_summary(const ExactContext<K>& ctx, const ExactStructure<K>& st, int depth) {
  CheckReport rep{"dense_extension", Verdict::Yes, "", {}, 0};
  Envelope<K> env = construct_envelope(ctx, st);
  for (int g = 0; g < ctx.num_gens(); ++g) {
    CheckReport one = dense_extension_check(env, envelope_image(env, EObject{{g}}), depth);
    if (one.verdict != Verdict::Yes && rep.verdict == Verdict::Yes) {
      rep.verdict = one.verdict;
      rep.detail = "image of " + ctx.gen_name(g) + ": " + one.detail;
    }
    for (const std::string& w : one.witnesses)
      rep.witnesses.push_back("image of " + ctx.gen_name(g) + ": " + w);
  }
  return rep;
}

}  // namespace rundetail

template <class K>
RunReport run_tasks(const InputData<K>& in, const RunOptions& opt, const std::string& version,
                    const std::string& digest) {
  using namespace rundetail;
  auto t_run = std::chrono::steady_clock::now();
  RunReport rep;
  rep.version = version;
  rep.input_name = in.name;
  rep.input_digest = digest;
  rep.field = in.field_desc;
  rep.depth_override = opt.depth;
  rep.seed_override = opt.seed;

  for (const TaskSpec& ts : in.tasks) {
    TaskReport task;
    task.op = ts.op;
    auto t0 = std::chrono::steady_clock::now();
    try {
      if (ts.op == "compare") {
        auto small_it = ts.params.find("small");
        auto big_it = ts.params.find("big");
        if (small_it == ts.params.end() || big_it == ts.params.end()) {
          task.error = "E_BAD_INPUT: compare needs 'small' and 'big' structure params";
        } else {
          const ExactStructure<K>* small = resolve_structure(in, task, small_it->second);
          const ExactStructure<K>* big = small ? resolve_structure(in, task, big_it->second) : nullptr;
          task.structure = small_it->second + " <= " + big_it->second;
          if (small && big)
            task.checks.push_back(
                compare_structures(in.ctx, with_options(*small, opt), with_options(*big, opt)));
        }
      } else {
        const ExactStructure<K>* stp = resolve_structure(in, task, ts.structure);
        if (stp) {
          ExactStructure<K> st = with_options(*stp, opt);
          if (ts.op == "validate") {
            StructureReport sr = validate_structure(in.ctx, st);
            for (const CheckItem& item : sr.items) {
              Verdict v = item.verdict == "pass"
                              ? Verdict::Yes
                              : (item.verdict == "fail" ? Verdict::No : Verdict::Inconclusive);
              task.checks.push_back(CheckReport{item.name, v, item.detail, {}, 0});
            }
          } else if (ts.op == "envelope") {
            task.checks.push_back(envelope_summary(in.ctx, st));
          } else if (ts.op == "check:embedding") {
            Envelope<K> env = construct_envelope(in.ctx, st);
            task.checks.push_back(check_embedding(env));
          } else if (ts.op == "check:ext_coherence") {
            task.checks.push_back(ext_coherence_report(in.ctx, st, st.depth));
          } else if (ts.op == "check:dense") {
            task.checks.push_back(dense_summary(in.ctx, st, st.depth));
          } else if (ts.op == "dualize") {
            task.checks.push_back(dualize_check(in.ctx, st));
          }
        }
      }
    } catch (const Error& e) {
      task.checks.clear();
      task.error = e.what();
    }
    for (CheckReport& c : task.checks)
      if (c.micros == 0) c.micros = micros_since(t0);
    task.micros = micros_since(t0);
    rep.tasks.push_back(std::move(task));
  }
  rep.total_micros = micros_since(t_run);
  return rep;
}

}  // namespace envlab
