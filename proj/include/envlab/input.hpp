#pragma once

// JSON input files: field, ambient algebra (quiver presentation or raw
// multiplication table), named modules, the generator list, named exact
// structures with their declared conflations, and a task list.  Parsing is
// strict: floating-point numbers are rejected everywhere, unknown names and
// malformed shapes raise E_BAD_INPUT with a pointed message.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "envlab/envelope.hpp"

namespace envlab {

using ojson = nlohmann::ordered_json;

struct TaskSpec {
  std::string op;
  std::string structure;                      // empty = unique structure of the file
  std::map<std::string, std::string> params;  // op-specific string parameters
};

template <class K>
struct InputData {
  std::string name;
  std::string field_desc;
  ExactContext<K> ctx;
  std::vector<std::string> structure_order;
  std::map<std::string, ExactStructure<K>> structures;
  std::vector<TaskSpec> tasks;
  ojson document;  // the parsed input, kept for lossless re-serialization
};

/// Canonical text form of a parsed input.  Parsing the result reproduces the
/// same document, so parse -> serialize -> parse is the identity.
template <class K>
std::string input_to_text(const InputData<K>& in) {
  return in.document.dump(2) + "\n";
}

namespace inputdetail {

inline const ojson& need(const ojson& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorCode::BadInput, where + " is missing the '" + key + "' key");
  return *it;
}

inline std::string need_string(const ojson& j, const std::string& key, const std::string& where) {
  const ojson& v = need(j, key, where);
  if (!v.is_string()) fail(ErrorCode::BadInput, where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

inline long long need_int(const ojson& j, const std::string& key, const std::string& where) {
  const ojson& v = need(j, key, where);
  if (v.is_number_float()) fail(ErrorCode::BadInput, where + ": floating-point values are not accepted");
  if (!v.is_number_integer()) fail(ErrorCode::BadInput, where + ": '" + key + "' must be an integer");
  return v.get<long long>();
}

template <class K>
K parse_scalar(const ojson& v, const FieldSpec& fs, const std::string& where) {
  if (v.is_number_float()) fail(ErrorCode::BadInput, where + ": floating-point values are not accepted");
  if (v.is_number_integer()) return FieldOps<K>::attach(fs, K(v.get<long long>()));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if constexpr (std::is_same_v<K, Rational>) {
      return Rational::parse(s);
    } else {
      try {
        size_t used = 0;
        long long n = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return FieldOps<K>::attach(fs, K(n));
      } catch (const std::exception&) {
        fail(ErrorCode::BadInput, where + ": cannot parse scalar '" + s + "' over this field");
      }
    }
  }
  fail(ErrorCode::BadInput, where + ": scalars must be integers or strings");
}

template <class K>
Matrix<K> parse_matrix(const ojson& v, int rows, int cols, const FieldSpec& fs,
                       const std::string& where) {
  if (!v.is_array()) fail(ErrorCode::BadInput, where + " must be an array of rows");
  if (static_cast<int>(v.size()) != rows)
    fail(ErrorCode::BadInput, where + " must have " + std::to_string(rows) + " rows, got " +
                                  std::to_string(v.size()));
  Matrix<K> m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const ojson& row = v[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(ErrorCode::BadInput, where + " row " + std::to_string(r) + " must have " +
                                    std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      m(r, c) = parse_scalar<K>(row[static_cast<size_t>(c)], fs,
                                where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

inline int lookup(const std::map<std::string, int>& names, const std::string& key,
                  const std::string& what) {
  auto it = names.find(key);
  if (it == names.end()) fail(ErrorCode::BadInput, "unknown " + what + " '" + key + "'");
  return it->second;
}

template <class K>
std::unique_ptr<Algebra<K>> parse_algebra(const ojson& a, const FieldSpec& fs) {
  if (a.contains("quiver")) {
    const ojson& qj = need(a, "quiver", "algebra");
    Quiver q;
    std::map<std::string, int> vix;
    for (const ojson& v : need(qj, "vertices", "quiver")) {
      if (!v.is_string()) fail(ErrorCode::BadInput, "quiver vertices must be strings");
      vix.emplace(v.get<std::string>(), static_cast<int>(q.vertices.size()));
      q.vertices.push_back(v.get<std::string>());
    }
    std::map<std::string, int> aix;
    if (qj.contains("arrows"))
      for (const ojson& ar : qj["arrows"]) {
        Quiver::Arrow arrow;
        arrow.name = need_string(ar, "name", "arrow");
        arrow.src = lookup(vix, need_string(ar, "src", "arrow"), "vertex");
        arrow.tgt = lookup(vix, need_string(ar, "tgt", "arrow"), "vertex");
        aix.emplace(arrow.name, static_cast<int>(q.arrows.size()));
        q.arrows.push_back(std::move(arrow));
      }
    std::vector<Relation<K>> rels;
    if (a.contains("relations"))
      for (const ojson& rj : a["relations"]) {
        Relation<K> rel;
        for (const ojson& tj : need(rj, "terms", "relation")) {
          RelationTerm<K> term;
          term.coeff = parse_scalar<K>(need(tj, "coeff", "relation term"), fs, "relation coeff");
          for (const ojson& an : need(tj, "path", "relation term")) {
            if (!an.is_string()) fail(ErrorCode::BadInput, "relation paths must list arrow names");
            term.arrows.push_back(lookup(aix, an.get<std::string>(), "arrow"));
          }
          rel.push_back(std::move(term));
        }
        rels.push_back(std::move(rel));
      }
    int bound = static_cast<int>(need_int(a, "path_bound", "algebra"));
    return std::make_unique<Algebra<K>>(Algebra<K>::from_quiver(fs, q, rels, bound));
  }
  if (a.contains("table")) {
    std::vector<std::string> basis;
    for (const ojson& b : need(a, "basis", "algebra")) {
      if (!b.is_string()) fail(ErrorCode::BadInput, "algebra basis names must be strings");
      basis.push_back(b.get<std::string>());
    }
    const int dim = static_cast<int>(basis.size());
    const ojson& tj = need(a, "table", "algebra");
    if (!tj.is_array() || static_cast<int>(tj.size()) != dim)
      fail(ErrorCode::BadInput, "algebra table must be a dim x dim array of coefficient vectors");
    std::vector<std::vector<std::vector<K>>> table;
    for (int i = 0; i < dim; ++i) {
      const ojson& row = tj[static_cast<size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        fail(ErrorCode::BadInput, "algebra table row " + std::to_string(i) + " has the wrong length");
      std::vector<std::vector<K>> trow;
      for (int j = 0; j < dim; ++j) {
        const ojson& cell = row[static_cast<size_t>(j)];
        if (!cell.is_array() || static_cast<int>(cell.size()) != dim)
          fail(ErrorCode::BadInput, "algebra table cell must list one coefficient per basis element");
        std::vector<K> coeffs;
        for (int k = 0; k < dim; ++k)
          coeffs.push_back(parse_scalar<K>(cell[static_cast<size_t>(k)], fs, "algebra table entry"));
        trow.push_back(std::move(coeffs));
      }
      table.push_back(std::move(trow));
    }
    std::map<std::string, int> bix;
    for (int b = 0; b < dim; ++b) bix.emplace(basis[static_cast<size_t>(b)], b);
    std::vector<int> idem;
    std::vector<std::string> slot_names;
    for (const ojson& e : need(a, "idempotents", "algebra")) {
      if (!e.is_string()) fail(ErrorCode::BadInput, "algebra idempotents must name basis elements");
      idem.push_back(lookup(bix, e.get<std::string>(), "basis element"));
      slot_names.push_back(e.get<std::string>());
    }
    return std::make_unique<Algebra<K>>(
        Algebra<K>::from_table(fs, std::move(slot_names), std::move(basis), std::move(table), idem));
  }
  fail(ErrorCode::BadInput, "algebra must give either a 'quiver' presentation or a 'table'");
}

/// A module over the parsed algebra: either the shorthand {"projective":
/// slot} / {"simple": slot}, or explicit slot dimensions plus one matrix per
/// acting basis element ('arrows'); actions of composite basis elements named
/// 'a*b*c' are derived from their factors, idempotents act as the identity.
template <class K>
Module<K> parse_module(const ojson& mj, const Algebra<K>& alg,
                       const std::map<std::string, int>& slot_ix, const std::string& name) {
  const std::string where = "module '" + name + "'";
  if (mj.contains("projective"))
    return Module<K>::projective(alg, lookup(slot_ix, need_string(mj, "projective", where), "slot"));
  if (mj.contains("simple"))
    return Module<K>::simple(alg, lookup(slot_ix, need_string(mj, "simple", where), "slot"));

  Module<K> m;
  m.alg = &alg;
  m.dims.assign(static_cast<size_t>(alg.slots()), 0);
  for (const auto& [slot, dj] : need(mj, "dims", where).items()) {
    int u = lookup(slot_ix, slot, "slot");
    if (dj.is_number_float() || !dj.is_number_integer())
      fail(ErrorCode::BadInput, where + ": dimensions must be non-negative integers");
    const long long dv = dj.template get<long long>();
    if (dv < 0) fail(ErrorCode::BadInput, where + ": dimensions must be non-negative integers");
    m.dims[static_cast<size_t>(u)] = static_cast<int>(dv);
  }

  // Identify the slot of each idempotent basis element.
  std::vector<int> idem_slot(static_cast<size_t>(alg.dim()), -1);
  for (int u = 0; u < alg.slots(); ++u) {
    const std::vector<K>& vec = alg.idempotent(u);
    for (int b = 0; b < alg.dim(); ++b)
      if (!vec[static_cast<size_t>(b)].is_zero()) idem_slot[static_cast<size_t>(b)] = u;
  }

  const ojson* arrows = mj.contains("arrows") ? &mj["arrows"] : nullptr;
  std::map<std::string, Matrix<K>> given;
  std::map<std::string, std::pair<int, int>> expected;
  for (int b = 0; b < alg.dim(); ++b) {
    auto [s, t] = alg.slot_of(b);
    expected.emplace(alg.basis_name(b), std::pair<int, int>{s, t});
  }
  if (arrows)
    for (const auto& [aname, matj] : arrows->items()) {
      auto it = expected.find(aname);
      if (it == expected.end())
        fail(ErrorCode::BadInput, where + ": unknown basis element '" + aname + "'");
      given.emplace(aname, parse_matrix<K>(matj, m.dims[static_cast<size_t>(it->second.first)],
                                           m.dims[static_cast<size_t>(it->second.second)],
                                           alg.field(), where + " action of '" + aname + "'"));
    }

  for (int b = 0; b < alg.dim(); ++b) {
    auto [s, t] = alg.slot_of(b);
    const std::string& bname = alg.basis_name(b);
    if (auto it = given.find(bname); it != given.end()) {
      m.act.push_back(it->second);
      continue;
    }
    if (idem_slot[static_cast<size_t>(b)] >= 0) {
      m.act.push_back(Matrix<K>::identity(m.dims[static_cast<size_t>(s)]));
      continue;
    }
    if (m.dims[static_cast<size_t>(s)] == 0 || m.dims[static_cast<size_t>(t)] == 0) {
      m.act.push_back(Matrix<K>(m.dims[static_cast<size_t>(s)], m.dims[static_cast<size_t>(t)]));
      continue;
    }
    // Composite basis element: derive the action from its named factors.
    std::vector<std::string> factors;
    std::string cur;
    for (char c : bname) {
      if (c == '*') {
        factors.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    factors.push_back(cur);
    if (factors.size() < 2)
      fail(ErrorCode::BadInput, where + " does not define the action of '" + bname + "'");
    Matrix<K> acc;
    bool first = true;
    int pos = s;
    for (const std::string& f : factors) {
      auto it = given.find(f);
      if (it == given.end())
        fail(ErrorCode::BadInput,
             where + " does not define the action of '" + f + "' (needed for '" + bname + "')");
      auto eit = expected.find(f);
      if (eit->second.first != pos)
        fail(ErrorCode::BadInput, where + ": factor chain of '" + bname + "' does not compose");
      pos = eit->second.second;
      if (first) {
        acc = it->second;
        first = false;
      } else {
        acc = acc * it->second;
      }
    }
    if (pos != t) fail(ErrorCode::BadInput, where + ": factor chain of '" + bname + "' ends at the wrong slot");
    m.act.push_back(std::move(acc));
  }

  try {
    validate_module(m);
  } catch (const Error& e) {
    fail(ErrorCode::BadInput, where + " is not a module: " + e.what());
  }
  return m;
}

template <class K>
EMorphism<K> parse_emorphism(const ojson& fj, const ExactContext<K>& ctx,
                             const std::map<std::string, int>& gen_ix,
                             const std::map<std::string, int>& slot_ix, const std::string& where) {
  EObject src, tgt;
  for (const ojson& g : need(fj, "src", where)) {
    if (!g.is_string()) fail(ErrorCode::BadInput, where + ": 'src' must list generator names");
    src.parts.push_back(lookup(gen_ix, g.get<std::string>(), "generator"));
  }
  for (const ojson& g : need(fj, "tgt", where)) {
    if (!g.is_string()) fail(ErrorCode::BadInput, where + ": 'tgt' must list generator names");
    tgt.parts.push_back(lookup(gen_ix, g.get<std::string>(), "generator"));
  }
  Module<K> sm = ctx.ambient_module(src);
  Module<K> tm = ctx.ambient_module(tgt);
  ModuleHom<K> h = zero_hom(sm, tm);
  if (fj.contains("blocks"))
    for (const auto& [slot, matj] : fj["blocks"].items()) {
      int u = lookup(slot_ix, slot, "slot");
      h.block[static_cast<size_t>(u)] =
          parse_matrix<K>(matj, sm.dims[static_cast<size_t>(u)], tm.dims[static_cast<size_t>(u)],
                          ctx.ambient().field(), where + " block '" + slot + "'");
    }
  if (!is_hom(sm, h, tm)) fail(ErrorCode::BadInput, where + " is not a module homomorphism");
  return ctx.from_ambient_hom(src, tgt, h);
}

inline StructureKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "split") return StructureKind::Split;
  if (s == "ambient") return StructureKind::Ambient;
  if (s == "generated") return StructureKind::Generated;
  fail(ErrorCode::BadInput, where + ": unknown structure kind '" + s + "'");
}

inline bool known_op(const std::string& op) {
  return op == "validate" || op == "envelope" || op == "check:embedding" ||
         op == "check:ext_coherence" || op == "check:dense" || op == "compare" || op == "dualize";
}

}  // namespace inputdetail

inline FieldSpec parse_field(const ojson& root) {
  const ojson& f = inputdetail::need(root, "field", "input");
  const std::string kind = inputdetail::need_string(f, "kind", "field");
  if (kind == "rationals") return FieldSpec::rationals();
  if (kind == "prime") return FieldSpec::prime(inputdetail::need_int(f, "p", "field"));
  fail(ErrorCode::BadInput, "field kind must be 'rationals' or 'prime'");
}

template <class K>
InputData<K> parse_input(const ojson& root) {
  using namespace inputdetail;
  FieldSpec fs = parse_field(root);
  std::string field_desc =
      fs.kind == FieldSpec::Kind::Rationals ? "Q" : "F_" + std::to_string(fs.p);

  auto alg = parse_algebra<K>(need(root, "algebra", "input"), fs);
  std::map<std::string, int> slot_ix;
  for (int u = 0; u < alg->slots(); ++u) slot_ix.emplace(alg->slot_name(u), u);

  std::map<std::string, Module<K>> modules;
  std::vector<std::string> module_order;
  for (const auto& [mname, mj] : need(root, "modules", "input").items()) {
    modules.emplace(mname, parse_module<K>(mj, *alg, slot_ix, mname));
    module_order.push_back(mname);
  }

  const ojson& cat = need(root, "category", "input");
  std::vector<Module<K>> gens;
  std::vector<std::string> gen_names;
  for (const ojson& g : need(cat, "generators", "category")) {
    if (!g.is_string()) fail(ErrorCode::BadInput, "category generators must be module names");
    auto it = modules.find(g.get<std::string>());
    if (it == modules.end()) fail(ErrorCode::BadInput, "unknown module '" + g.get<std::string>() + "'");
    gens.push_back(it->second);
    gen_names.push_back(g.get<std::string>());
  }
  ExactContext<K> ctx = ExactContext<K>::build(std::move(alg), std::move(gens), gen_names);
  std::map<std::string, int> gen_ix;
  for (size_t i = 0; i < gen_names.size(); ++i) gen_ix.emplace(gen_names[i], static_cast<int>(i));

  std::vector<std::string> structure_order;
  std::map<std::string, ExactStructure<K>> structures;
  if (root.contains("structures"))
    for (const auto& [sname, sj] : root["structures"].items()) {
      const std::string where = "structure '" + sname + "'";
      ExactStructure<K> st;
      st.kind = parse_kind(need_string(sj, "kind", where), where);
      if (sj.contains("conflations"))
        for (const ojson& cj : sj["conflations"]) {
          Conflation<K> conf;
          conf.i = parse_emorphism<K>(need(cj, "i", where), ctx, gen_ix, slot_ix,
                                      where + " inflation");
          conf.d = parse_emorphism<K>(need(cj, "d", where), ctx, gen_ix, slot_ix,
                                      where + " deflation");
          st.declared.push_back(std::move(conf));
        }
      if (st.kind == StructureKind::Split && !st.declared.empty())
        fail(ErrorCode::BadInput, where + ": a split structure declares no conflations");
      if (sj.contains("depth")) st.depth = static_cast<int>(need_int(sj, "depth", where));
      if (sj.contains("seed")) st.seed = static_cast<std::uint64_t>(need_int(sj, "seed", where));
      structures.emplace(sname, std::move(st));
      structure_order.push_back(sname);
    }

  std::vector<TaskSpec> tasks;
  if (root.contains("tasks"))
    for (const ojson& tj : root["tasks"]) {
      TaskSpec t;
      t.op = need_string(tj, "op", "task");
      if (!known_op(t.op)) fail(ErrorCode::BadInput, "unknown task op '" + t.op + "'");
      if (tj.contains("structure")) t.structure = need_string(tj, "structure", "task");
      if (tj.contains("params"))
        for (const auto& [k, v] : tj["params"].items()) {
          if (!v.is_string()) fail(ErrorCode::BadInput, "task params must be strings");
          t.params.emplace(k, v.template get<std::string>());
        }
      tasks.push_back(std::move(t));
    }

  std::string name;
  if (root.contains("name") && root["name"].is_string()) name = root["name"].get<std::string>();

  return InputData<K>{std::move(name),            std::move(field_desc), std::move(ctx),
                      std::move(structure_order), std::move(structures), std::move(tasks),
                      root};
}

}  // namespace envlab
