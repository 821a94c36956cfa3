#pragma once

// Model files.
//
// A model file is a sequence of sections. A section header `[name]` may be
// followed on the same line by `key = value` pairs; further pairs on the
// following lines belong to the same section. `#` starts a comment.
//
//   [model]     name, b, n_removed, vertices
//   [edge]      from, to, roof, class          (one section per edge)
//   [chords]    tree = 1>2;2>3, chord = 1>3:1,0 (repeatable)
//   [removed]   cycle = 1,2                    (repeatable)
//   [quotient]  name, then modulus = m | lattice = a,b;c,d | degree = k perms = p1;p2;...
//
// Reals are decimal or `log(x)`. Vectors are comma-separated integers. When a
// [chords] section is present, edge classes are derived from it and [edge]
// sections must not carry a class.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symflow/graph_shift.hpp"
#include "symflow/homology_weights.hpp"
#include "symflow/quotient.hpp"

namespace symflow {

struct NamedQuotient {
  std::string name;
  FiniteQuotient quotient;

  friend bool operator==(const NamedQuotient&, const NamedQuotient&) = default;
};

struct ModelSpec {
  std::string name;
  int b = 0;
  int N = 0;
  DirectedGraph graph;
  WeightSystem weights;
  /// Roof values as written, one per edge; empty means "format the double".
  std::vector<std::string> roof_literals;
  std::optional<ChordAssignment> chords;
  std::vector<PrimeCycle> removed;
  std::vector<NamedQuotient> quotients;
  /// Non-fatal findings from parsing; not part of the model's identity.
  std::vector<std::string> warnings;

  [[nodiscard]] const FiniteQuotient& quotient(std::string_view name) const;

  friend bool operator==(const ModelSpec& a, const ModelSpec& b) {
    return a.name == b.name && a.b == b.b && a.N == b.N && a.graph == b.graph && a.weights == b.weights &&
           a.roof_literals == b.roof_literals && a.chords == b.chords && a.removed == b.removed &&
           a.quotients == b.quotients;
  }
};

/// Decimal or log(x).
double parse_real(std::string_view text);

ModelSpec parse_model(std::string_view text);
std::string serialize_model(const ModelSpec& m);

std::vector<std::string> builtin_names();
std::string builtin_text(std::string_view name);
ModelSpec builtin_model(std::string_view name);

}  // namespace symflow
