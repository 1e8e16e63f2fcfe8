#pragma once

// The bundled input corpus: five self-contained fixture files, embedded so
// that every build carries its reference inputs.  `envlab corpus show <name>`
// prints the exact bytes; the files under examples/ are generated from these
// strings and stay byte-identical to them.

#include <string>
#include <vector>

namespace envlab {

struct CorpusEntry {
  const char* name;
  const char* text;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"FIX-A2", R"json({
  "name": "FIX-A2",
  "field": {"kind": "prime", "p": 101},
  "algebra": {
    "quiver": {
      "vertices": ["1", "2"],
      "arrows": [{"name": "a", "src": "1", "tgt": "2"}]
    },
    "relations": [],
    "path_bound": 1
  },
  "modules": {
    "P1": {"dims": {"1": 1, "2": 1}, "arrows": {"a": [[1]]}},
    "P2": {"dims": {"1": 0, "2": 1}, "arrows": {}},
    "S1": {"dims": {"1": 1, "2": 0}, "arrows": {}}
  },
  "category": {"generators": ["P1", "P2", "S1"]},
  "structures": {
    "split": {"kind": "split", "conflations": []}
  },
  "tasks": []
}
)json"},
      {"FIX-A2-ALL", R"json({
  "name": "FIX-A2-ALL",
  "field": {"kind": "prime", "p": 101},
  "algebra": {
    "quiver": {
      "vertices": ["1", "2"],
      "arrows": [{"name": "a", "src": "1", "tgt": "2"}]
    },
    "relations": [],
    "path_bound": 1
  },
  "modules": {
    "P1": {"dims": {"1": 1, "2": 1}, "arrows": {"a": [[1]]}},
    "P2": {"dims": {"1": 0, "2": 1}, "arrows": {}},
    "S1": {"dims": {"1": 1, "2": 0}, "arrows": {}}
  },
  "category": {"generators": ["P1", "P2", "S1"]},
  "structures": {
    "all": {
      "kind": "ambient",
      "conflations": [
        {
          "i": {"src": ["P2"], "tgt": ["P1"], "blocks": {"2": [[1]]}},
          "d": {"src": ["P1"], "tgt": ["S1"], "blocks": {"1": [[1]]}}
        }
      ]
    }
  },
  "tasks": [
    {"op": "validate", "structure": "all"},
    {"op": "envelope", "structure": "all"},
    {"op": "check:embedding", "structure": "all"},
    {"op": "check:ext_coherence", "structure": "all"}
  ]
}
)json"},
      {"FIX-A2-SPLIT", R"json({
  "name": "FIX-A2-SPLIT",
  "field": {"kind": "prime", "p": 101},
  "algebra": {
    "quiver": {
      "vertices": ["1", "2"],
      "arrows": [{"name": "a", "src": "1", "tgt": "2"}]
    },
    "relations": [],
    "path_bound": 1
  },
  "modules": {
    "P1": {"dims": {"1": 1, "2": 1}, "arrows": {"a": [[1]]}},
    "P2": {"dims": {"1": 0, "2": 1}, "arrows": {}},
    "S1": {"dims": {"1": 1, "2": 0}, "arrows": {}}
  },
  "category": {"generators": ["P1", "P2", "S1"]},
  "structures": {
    "split": {"kind": "split", "conflations": []}
  },
  "tasks": [
    {"op": "validate", "structure": "split"},
    {"op": "envelope", "structure": "split"},
    {"op": "check:embedding", "structure": "split"},
    {"op": "check:ext_coherence", "structure": "split"}
  ]
}
)json"},
      {"FIX-A2-PROJ", R"json({
  "name": "FIX-A2-PROJ",
  "field": {"kind": "prime", "p": 101},
  "algebra": {
    "quiver": {
      "vertices": ["1", "2"],
      "arrows": [{"name": "a", "src": "1", "tgt": "2"}]
    },
    "relations": [],
    "path_bound": 1
  },
  "modules": {
    "P1": {"dims": {"1": 1, "2": 1}, "arrows": {"a": [[1]]}},
    "P2": {"dims": {"1": 0, "2": 1}, "arrows": {}}
  },
  "category": {"generators": ["P1", "P2"]},
  "structures": {
    "proj": {"kind": "ambient", "conflations": []}
  },
  "tasks": [
    {"op": "validate", "structure": "proj"},
    {"op": "envelope", "structure": "proj"},
    {"op": "check:embedding", "structure": "proj"},
    {"op": "check:ext_coherence", "structure": "proj"}
  ]
}
)json"},
      {"FIX-KRON", R"json({
  "name": "FIX-KRON",
  "field": {"kind": "prime", "p": 101},
  "algebra": {
    "quiver": {
      "vertices": ["v0", "v1", "v2"],
      "arrows": [
        {"name": "x0", "src": "v0", "tgt": "v1"},
        {"name": "x1", "src": "v0", "tgt": "v1"},
        {"name": "y0", "src": "v1", "tgt": "v2"},
        {"name": "y1", "src": "v1", "tgt": "v2"}
      ]
    },
    "relations": [
      {"terms": [
        {"coeff": 1, "path": ["x0", "y1"]},
        {"coeff": -1, "path": ["x1", "y0"]}
      ]}
    ],
    "path_bound": 2
  },
  "modules": {
    "O0": {"projective": "v2"},
    "O1": {"projective": "v1"},
    "O2": {"projective": "v0"}
  },
  "category": {"generators": ["O0", "O1", "O2"]},
  "structures": {
    "split": {"kind": "split", "conflations": []},
    "euler": {
      "kind": "generated",
      "conflations": [
        {
          "i": {"src": ["O0"], "tgt": ["O1", "O1"], "blocks": {"v2": [[0, 1, -1, 0]]}},
          "d": {
            "src": ["O1", "O1"],
            "tgt": ["O2"],
            "blocks": {
              "v1": [[1, 0], [0, 1]],
              "v2": [[1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1]]
            }
          }
        }
      ]
    }
  },
  "tasks": [
    {"op": "validate", "structure": "euler"},
    {"op": "envelope", "structure": "euler"},
    {"op": "check:embedding", "structure": "euler"},
    {"op": "check:ext_coherence", "structure": "euler"},
    {"op": "compare", "params": {"small": "split", "big": "euler"}},
    {"op": "dualize", "structure": "euler"}
  ]
}
)json"}};
  return entries;
}

inline const char* corpus_text(const std::string& name) {
  for (const CorpusEntry& e : corpus())
    if (name == e.name) return e.text;
  return nullptr;
}

}  // namespace envlab
