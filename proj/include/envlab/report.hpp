#pragma once

// Run reports: the structured outcome of a task list, serializable to a
// byte-stable machine format (ordered keys, integers and strings only) and to
// a human-readable text format.  Timing fields are informational and can be
// excluded from the serialization so that replays compare byte-for-byte.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "envlab/envelope.hpp"

namespace envlab {

inline std::string verdict_label(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "pass";
    case Verdict::No: return "fail";
    default: return "inconclusive";
  }
}

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ull;
  }
  static const char* hexd = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hexd[h & 0xfull];
    h >>= 4;
  }
  return out;
}

struct TaskReport {
  std::string op;
  std::string structure;            // empty when the task takes no structure
  std::string error;                // nonempty marks an input error (code: message)
  std::vector<CheckReport> checks;  // empty when the task errored
  std::int64_t micros = 0;
};

struct RunReport {
  std::string tool = "envlab";
  std::string version;
  std::string input_name;    // fixture name from the input, when present
  std::string input_digest;  // fnv1a of the raw input bytes
  std::string field;         // printable field description
  std::int64_t depth_override = 0;  // 0 = structures kept their declared depth
  std::uint64_t seed_override = 0;  // 0 = structures kept their declared seed
  std::vector<TaskReport> tasks;
  std::int64_t total_micros = 0;
};

inline bool report_has_error(const RunReport& r) {
  for (const TaskReport& t : r.tasks)
    if (!t.error.empty()) return true;
  return false;
}

inline bool report_has_fail(const RunReport& r) {
  for (const TaskReport& t : r.tasks)
    for (const CheckReport& c : t.checks)
      if (c.verdict == Verdict::No) return true;
  return false;
}

inline bool report_has_inconclusive(const RunReport& r) {
  for (const TaskReport& t : r.tasks)
    for (const CheckReport& c : t.checks)
      if (c.verdict == Verdict::Inconclusive) return true;
  return false;
}

/// Process exit code: input errors dominate, then failures, then exhausted
/// searches; a clean run (possibly with no tasks) exits zero.
inline int report_exit_code(const RunReport& r) {
  if (report_has_error(r)) return 2;
  if (report_has_fail(r)) return 1;
  if (report_has_inconclusive(r)) return 3;
  return 0;
}

inline nlohmann::ordered_json report_to_json(const RunReport& r, bool include_timing = true) {
  nlohmann::ordered_json j;
  j["tool"] = r.tool;
  j["version"] = r.version;
  if (!r.input_name.empty()) j["input"] = r.input_name;
  j["digest"] = r.input_digest;
  j["field"] = r.field;
  j["options"] = {{"depth", r.depth_override}, {"seed", r.seed_override}};
  j["exit_code"] = report_exit_code(r);
  j["tasks"] = nlohmann::ordered_json::array();
  for (const TaskReport& t : r.tasks) {
    nlohmann::ordered_json tj;
    tj["op"] = t.op;
    if (!t.structure.empty()) tj["structure"] = t.structure;
    if (!t.error.empty()) tj["error"] = t.error;
    tj["checks"] = nlohmann::ordered_json::array();
    for (const CheckReport& c : t.checks) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["verdict"] = verdict_label(c.verdict);
      if (!c.detail.empty()) cj["detail"] = c.detail;
      cj["witnesses"] = c.witnesses;
      // Failures embed an explicit counterexample block: together with the
      // input digest and the options above it pins down an exact replay.
      if (c.verdict == Verdict::No)
        cj["counterexample"] = {{"reason", c.detail}, {"witnesses", c.witnesses}};
      if (include_timing) cj["micros"] = c.micros;
      tj["checks"].push_back(std::move(cj));
    }
    if (include_timing) tj["micros"] = t.micros;
    j["tasks"].push_back(std::move(tj));
  }
  if (include_timing) j["total_micros"] = r.total_micros;
  return j;
}

inline std::string report_to_machine(const RunReport& r, bool include_timing = true) {
  return report_to_json(r, include_timing).dump(2) + "\n";
}

inline std::string report_to_human(const RunReport& r) {
  std::string out;
  out += r.tool + " " + r.version;
  if (!r.input_name.empty()) out += "  input=" + r.input_name;
  out += "  digest=" + r.input_digest + "  field=" + r.field + "\n";
  if (r.tasks.empty()) out += "(no tasks)\n";
  for (const TaskReport& t : r.tasks) {
    out += "task " + t.op;
    if (!t.structure.empty()) out += " [" + t.structure + "]";
    out += "\n";
    if (!t.error.empty()) {
      out += "  error: " + t.error + "\n";
      continue;
    }
    for (const CheckReport& c : t.checks) {
      out += "  " + c.name + ": " + verdict_label(c.verdict);
      if (!c.detail.empty()) out += " -- " + c.detail;
      out += "\n";
      for (const std::string& w : c.witnesses) out += "    " + w + "\n";
    }
  }
  out += "exit " + std::to_string(report_exit_code(r)) + "\n";
  return out;
}

}  // namespace envlab
