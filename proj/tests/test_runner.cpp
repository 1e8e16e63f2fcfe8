// End-to-end coverage of the input parser, the task runner and the report
// serializers, driven by the bundled corpus.  Expected values repeat the
// hand-computed oracles pinned by the lower-level suites, so a drift anywhere
// in the pipeline surfaces here as a witness-string mismatch.

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "envlab/corpus.hpp"
#include "envlab/input.hpp"
#include "envlab/report.hpp"
#include "envlab/runner.hpp"
#include "support/common.hpp"

using namespace envlab;

namespace {

ojson corpus_json(const std::string& name) {
  const char* text = corpus_text(name);
  REQUIRE(text != nullptr);
  return ojson::parse(text);
}

RunReport run_corpus(const std::string& name, RunOptions opt = {}) {
  InputData<Fp> in = parse_input<Fp>(corpus_json(name));
  return run_tasks(in, opt, "test", fnv1a_hex(corpus_text(name)));
}

const TaskReport& task_by_op(const RunReport& rep, const std::string& op) {
  for (const TaskReport& t : rep.tasks)
    if (t.op == op) return t;
  FAIL("no task with op " + op);
  return rep.tasks.front();
}

bool has_witness(const CheckReport& c, const std::string& w) {
  for (const std::string& s : c.witnesses)
    if (s == w) return true;
  return false;
}

}  // namespace

TEST_CASE("the bundled corpus parses and lists cleanly") {
  REQUIRE(corpus().size() == 5);
  std::vector<std::string> names;
  for (const CorpusEntry& e : corpus()) {
    names.emplace_back(e.name);
    ojson root = ojson::parse(e.text);
    REQUIRE(root["name"] == e.name);
    FieldSpec fs = parse_field(root);
    REQUIRE(fs.kind == FieldSpec::Kind::Prime);
    REQUIRE(fs.p == 101);
    InputData<Fp> in = parse_input<Fp>(root);
    REQUIRE(in.name == e.name);
    REQUIRE(in.field_desc == "F_101");
  }
  REQUIRE(names == std::vector<std::string>{"FIX-A2", "FIX-A2-ALL", "FIX-A2-SPLIT",
                                            "FIX-A2-PROJ", "FIX-KRON"});
  REQUIRE(corpus_text("no-such-entry") == nullptr);
}

TEST_CASE("a task-free input yields an empty passing report") {
  RunReport rep = run_corpus("FIX-A2");
  REQUIRE(rep.tasks.empty());
  REQUIRE(report_exit_code(rep) == 0);
  REQUIRE(report_to_human(rep).find("(no tasks)") != std::string::npos);
}

TEST_CASE("the two-vertex fixture reproduces its envelope oracle end to end") {
  RunReport rep = run_corpus("FIX-A2-ALL");
  REQUIRE(report_exit_code(rep) == 0);
  REQUIRE(rep.tasks.size() == 4);

  const TaskReport& env = task_by_op(rep, "envelope");
  REQUIRE(env.error.empty());
  REQUIRE(env.checks.size() == 1);
  const CheckReport& c = env.checks.front();
  REQUIRE(c.verdict == Verdict::Yes);
  REQUIRE(has_witness(c, "endomorphism algebra dimension: 5"));
  REQUIRE(has_witness(c, "defect simples: S[S1]"));
  REQUIRE(has_witness(c, "envelope algebra dimension: 3"));
  REQUIRE(has_witness(c, "image of P1: (1,1)"));
  REQUIRE(has_witness(c, "image of P2: (0,1)"));
  REQUIRE(has_witness(c, "image of S1: (1,0)"));

  const CheckReport& emb = task_by_op(rep, "check:embedding").checks.front();
  REQUIRE(emb.verdict == Verdict::Yes);
  REQUIRE(has_witness(emb, "fully faithful on generator pairs: 9"));
  REQUIRE(has_witness(emb, "declared conflations with exact image: 1"));

  const CheckReport& ext = task_by_op(rep, "check:ext_coherence").checks.front();
  REQUIRE(ext.verdict == Verdict::Yes);
  REQUIRE(has_witness(ext, "hom-basis morphisms checked: 5"));
  REQUIRE(has_witness(ext, "passed: 5"));
  REQUIRE(has_witness(ext, "resolved by identity deflations alone: 5"));
}

TEST_CASE("the split fixture recovers the whole module category") {
  RunReport rep = run_corpus("FIX-A2-SPLIT");
  REQUIRE(report_exit_code(rep) == 0);
  const CheckReport& c = task_by_op(rep, "envelope").checks.front();
  REQUIRE(has_witness(c, "endomorphism algebra dimension: 5"));
  REQUIRE(has_witness(c, "defect simples: none"));
  REQUIRE(has_witness(c, "envelope algebra dimension: 5"));
  REQUIRE(has_witness(c, "image of P1: (1,1,0)"));
  REQUIRE(has_witness(c, "image of S1: (1,0,1)"));
}

TEST_CASE("the projective fixture has no defect") {
  RunReport rep = run_corpus("FIX-A2-PROJ");
  REQUIRE(report_exit_code(rep) == 0);
  const CheckReport& c = task_by_op(rep, "envelope").checks.front();
  REQUIRE(has_witness(c, "defect simples: none"));
  REQUIRE(has_witness(c, "endomorphism algebra dimension: 3"));
  REQUIRE(has_witness(c, "envelope algebra dimension: 3"));
}

TEST_CASE("the twisted fixture reproduces its envelope oracle end to end") {
  RunReport rep = run_corpus("FIX-KRON");
  REQUIRE(report_exit_code(rep) == 0);
  REQUIRE(rep.tasks.size() == 6);

  const CheckReport& c = task_by_op(rep, "envelope").checks.front();
  REQUIRE(has_witness(c, "endomorphism algebra dimension: 10"));
  REQUIRE(has_witness(c, "defect simples: S[O2]"));
  REQUIRE(has_witness(c, "envelope algebra dimension: 4"));
  REQUIRE(has_witness(c, "image of O0: (1,0)"));
  REQUIRE(has_witness(c, "image of O1: (2,1)"));
  REQUIRE(has_witness(c, "image of O2: (3,2)"));

  const CheckReport& ext = task_by_op(rep, "check:ext_coherence").checks.front();
  REQUIRE(has_witness(ext, "hom-basis morphisms checked: 10"));
  REQUIRE(has_witness(ext, "passed: 10"));

  const TaskReport& cmp = task_by_op(rep, "compare");
  REQUIRE(cmp.structure == "split <= euler");
  REQUIRE(cmp.checks.front().verdict == Verdict::Yes);

  const TaskReport& dual = task_by_op(rep, "dualize");
  REQUIRE(dual.checks.front().verdict == Verdict::Yes);
}

TEST_CASE("replays of the same input are byte-identical") {
  for (const CorpusEntry& e : corpus()) {
    RunReport r1 = run_corpus(e.name);
    RunReport r2 = run_corpus(e.name);
    REQUIRE(report_to_machine(r1, false) == report_to_machine(r2, false));
  }
}

TEST_CASE("depth and seed overrides keep the corpus green") {
  RunOptions opt;
  opt.depth = 3;
  opt.seed = 917u;
  REQUIRE(report_exit_code(run_corpus("FIX-A2-ALL", opt)) == 0);
  REQUIRE(report_exit_code(run_corpus("FIX-A2-SPLIT", opt)) == 0);
}

TEST_CASE("a failing declared conflation drives the exit code to one") {
  ojson root = corpus_json("FIX-A2-ALL");
  // Zero out the inflation: still a homomorphism, but no longer the kernel of
  // the deflation, so the declared pair fails validation at run time.
  root["structures"]["all"]["conflations"][0]["i"]["blocks"]["2"] =
      ojson::parse("[[0]]");
  root["tasks"] = ojson::parse(R"([{"op": "validate", "structure": "all"}])");
  InputData<Fp> in = parse_input<Fp>(root);
  RunReport rep = run_tasks(in, {}, "test", "d");
  REQUIRE(report_has_fail(rep));
  REQUIRE(report_exit_code(rep) == 1);

  // The machine report embeds a counterexample block for the failing check
  // and for it alone.
  ojson parsed = ojson::parse(report_to_machine(rep, false));
  int blocks = 0;
  for (const ojson& cj : parsed["tasks"][0]["checks"]) {
    if (!cj.contains("counterexample")) continue;
    ++blocks;
    REQUIRE(cj["verdict"] == "fail");
    REQUIRE(!cj["counterexample"]["reason"].get<std::string>().empty());
  }
  REQUIRE(blocks >= 1);
  RunReport ok = run_corpus("FIX-A2-ALL");
  REQUIRE(report_to_machine(ok, false).find("counterexample") == std::string::npos);
}

TEST_CASE("parse, serialize, parse is the identity on inputs") {
  for (const CorpusEntry& e : corpus()) {
    InputData<Fp> in1 = parse_input<Fp>(ojson::parse(e.text));
    std::string text = input_to_text(in1);
    InputData<Fp> in2 = parse_input<Fp>(ojson::parse(text));
    REQUIRE(input_to_text(in2) == text);
    REQUIRE(in2.name == in1.name);
    REQUIRE(in2.structure_order == in1.structure_order);
    REQUIRE(in2.tasks.size() == in1.tasks.size());
    REQUIRE(report_to_machine(run_tasks(in2, {}, "t", "d"), false) ==
            report_to_machine(run_tasks(in1, {}, "t", "d"), false));
  }
}

TEST_CASE("the dense check runs as a task") {
  ojson root = corpus_json("FIX-A2-ALL");
  root["tasks"] = ojson::parse(R"([{"op": "check:dense", "structure": "all"}])");
  InputData<Fp> in = parse_input<Fp>(root);
  RunReport rep = run_tasks(in, {}, "test", "d");
  REQUIRE(report_exit_code(rep) == 0);
  const CheckReport& c = task_by_op(rep, "check:dense").checks.front();
  REQUIRE(c.verdict == Verdict::Yes);
  bool saw_p1 = false;
  for (const std::string& w : c.witnesses)
    if (w.rfind("image of P1: ", 0) == 0) saw_p1 = true;
  REQUIRE(saw_p1);
}

TEST_CASE("task failures are isolated and reported as errors") {
  ojson root = corpus_json("FIX-A2-ALL");
  root["tasks"] = ojson::parse(
      R"([{"op": "envelope", "structure": "no-such-structure"},
          {"op": "envelope", "structure": "all"}])");
  InputData<Fp> in = parse_input<Fp>(root);
  RunReport rep = run_tasks(in, {}, "test", "d");
  REQUIRE(rep.tasks.size() == 2);
  REQUIRE(!rep.tasks[0].error.empty());
  REQUIRE(rep.tasks[0].error.find("no-such-structure") != std::string::npos);
  REQUIRE(rep.tasks[1].error.empty());
  REQUIRE(rep.tasks[1].checks.front().verdict == Verdict::Yes);
  REQUIRE(report_exit_code(rep) == 2);
}

TEST_CASE("exit codes rank errors over failures over inconclusives") {
  RunReport rep;
  REQUIRE(report_exit_code(rep) == 0);
  TaskReport t;
  CheckReport c;
  c.verdict = Verdict::Inconclusive;
  t.checks.push_back(c);
  rep.tasks.push_back(t);
  REQUIRE(report_exit_code(rep) == 3);
  c.verdict = Verdict::No;
  rep.tasks.front().checks.push_back(c);
  REQUIRE(report_exit_code(rep) == 1);
  rep.tasks.front().error = "E_BAD_INPUT: boom";
  REQUIRE(report_exit_code(rep) == 2);
}

TEST_CASE("malformed inputs are rejected with diagnostics") {
  ojson base = corpus_json("FIX-A2-ALL");

  SECTION("floating-point scalars") {
    ojson root = base;
    root["modules"]["P1"]["arrows"]["a"] = ojson::parse("[[1.25]]");
    REQUIRE_THROWS_AS(parse_input<Fp>(root), Error);
  }
  SECTION("unknown task op") {
    ojson root = base;
    root["tasks"][0]["op"] = "frobnicate";
    REQUIRE_THROWS_AS(parse_input<Fp>(root), Error);
  }
  SECTION("unknown generator name") {
    ojson root = base;
    root["category"]["generators"][0] = "P9";
    REQUIRE_THROWS_AS(parse_input<Fp>(root), Error);
  }
  SECTION("morphism block of the wrong shape") {
    ojson root = base;
    root["structures"]["all"]["conflations"][0]["i"]["blocks"]["2"] =
        ojson::parse("[[1, 1]]");
    REQUIRE_THROWS_AS(parse_input<Fp>(root), Error);
  }
  SECTION("morphism that is not a homomorphism") {
    ojson root = base;
    // P1 -> P1 with mismatched vertex components does not commute with the arrow.
    root["structures"]["all"]["conflations"][0]["i"] = ojson::parse(
        R"({"src": ["P1"], "tgt": ["P1"], "blocks": {"1": [[1]], "2": [[0]]}})");
    REQUIRE_THROWS_AS(parse_input<Fp>(root), Error);
  }
  SECTION("split structure with declared conflations") {
    ojson root = base;
    root["structures"]["all"]["kind"] = "split";
    REQUIRE_THROWS_AS(parse_input<Fp>(root), Error);
  }
  SECTION("action matrix of the wrong shape") {
    ojson root = base;
    root["modules"]["P1"]["arrows"]["a"] = ojson::parse("[[1], [1]]");
    REQUIRE_THROWS_AS(parse_input<Fp>(root), Error);
  }
}

TEST_CASE("rational inputs parse and run through the same pipeline") {
  ojson root = ojson::parse(R"({
    "name": "tiny-rational",
    "field": {"kind": "rationals"},
    "algebra": {
      "basis": ["e"],
      "table": [[[1]]],
      "idempotents": ["e"]
    },
    "modules": {"M": {"dims": {"e": 1}, "arrows": {}}},
    "category": {"generators": ["M"]},
    "structures": {"s": {"kind": "split", "conflations": []}},
    "tasks": [{"op": "envelope", "structure": "s"},
              {"op": "check:embedding", "structure": "s"}]
  })");
  FieldSpec fs = parse_field(root);
  REQUIRE(fs.kind == FieldSpec::Kind::Rationals);
  InputData<Rational> in = parse_input<Rational>(root);
  REQUIRE(in.field_desc == "Q");
  RunReport rep = run_tasks(in, {}, "test", "d");
  REQUIRE(report_exit_code(rep) == 0);
  const CheckReport& c = task_by_op(rep, "envelope").checks.front();
  REQUIRE(has_witness(c, "endomorphism algebra dimension: 1"));
  REQUIRE(has_witness(c, "defect simples: none"));
  REQUIRE(has_witness(c, "envelope algebra dimension: 1"));
}

TEST_CASE("rational scalars accept fraction strings") {
  ojson root = ojson::parse(R"({
    "name": "tiny-fraction",
    "field": {"kind": "rationals"},
    "algebra": {
      "basis": ["e"],
      "table": [[[1]]],
      "idempotents": ["e"]
    },
    "modules": {"M": {"dims": {"e": 1}, "arrows": {}}},
    "category": {"generators": ["M"]},
    "structures": {"s": {"kind": "split", "conflations": []}},
    "tasks": []
  })");
  root["structures"]["s"] = ojson::parse(R"({"kind": "generated", "conflations": [
    {"i": {"src": ["M"], "tgt": ["M"], "blocks": {"e": [["1/2"]]}},
     "d": {"src": ["M"], "tgt": ["M"], "blocks": {"e": [[0]]}}}
  ]})");
  // i is an isomorphism scaled by 1/2 and d is zero; the pair is not a
  // kernel-cokernel pair, which validate reports as a failure (not an error).
  root["tasks"] = ojson::parse(R"([{"op": "validate", "structure": "s"}])");
  InputData<Rational> in = parse_input<Rational>(root);
  RunReport rep = run_tasks(in, {}, "test", "d");
  REQUIRE(report_exit_code(rep) == 1);
}

TEST_CASE("report serializations are stable and well-formed") {
  REQUIRE(fnv1a_hex("") == "cbf29ce484222325");
  REQUIRE(fnv1a_hex("a") == "af63dc4c8601ec8c");

  RunReport rep = run_corpus("FIX-A2-ALL");
  std::string machine = report_to_machine(rep, false);
  ojson parsed = ojson::parse(machine);
  REQUIRE(parsed["tool"] == "envlab");
  REQUIRE(parsed["exit_code"] == 0);
  REQUIRE(parsed["field"] == "F_101");
  REQUIRE(parsed["tasks"].size() == 4);
  REQUIRE(machine.find("micros") == std::string::npos);
  std::string timed = report_to_machine(rep, true);
  REQUIRE(timed.find("micros") != std::string::npos);

  std::string human = report_to_human(rep);
  REQUIRE(human.substr(human.size() - 7) == "exit 0\n");
  REQUIRE(human.find("task envelope [all]") != std::string::npos);
}
