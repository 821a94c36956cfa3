#pragma once

// Roof functions and integer homology weights on edges of a coding graph.
//
// Class vectors have dimension d = b + N: the first b coordinates are base
// homology coordinates, the last N are meridian coordinates, i.e. linking
// numbers with the removed orbits.

#include <string>
#include <utility>
#include <vector>

#include "symflow/graph_shift.hpp"
#include "symflow/lattice.hpp"

namespace symflow {

struct WeightSystem {
  int b = 0;
  int N = 0;
  /// Per edge id, strictly positive.
  std::vector<double> roof;
  /// Per edge id, each of length dim().
  std::vector<IntVector> cls;

  [[nodiscard]] int dim() const noexcept { return b + N; }
  [[nodiscard]] double r_min() const;

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

/// Human-readable problems with w relative to g; empty when consistent.
std::vector<std::string> weight_diagnostics(const DirectedGraph& g, const WeightSystem& w);

/// Throws MissingEdgeWeight, DimensionMismatch or ValidationError.
void require_weights(const DirectedGraph& g, const WeightSystem& w);

/// Spanning tree of the undirected graph plus integer values on the
/// remaining (chord) edges. A chord contributes +value when traversed in its
/// own direction.
struct ChordAssignment {
  std::vector<Edge> tree_edges;
  std::vector<std::pair<Edge, IntVector>> chord_values;

  friend bool operator==(const ChordAssignment&, const ChordAssignment&) = default;
};

/// Per-edge class map: zero on tree edges, the chord value on chords.
std::vector<IntVector> weights_from_chords(const DirectedGraph& g, const ChordAssignment& ca, int dim);

struct BirkhoffData {
  double length = 0.0;
  IntVector cls;
};

BirkhoffData birkhoff(const DirectedGraph& g, const PrimeCycle& c, const WeightSystem& w);
BirkhoffData birkhoff_edges(std::span<const int> edge_ids, const WeightSystem& w);

struct GenerationReport {
  bool generates = false;
  std::size_t rank = 0;
  std::vector<std::int64_t> divisors;
};

/// Do the classes of prime cycles of period <= n_probe generate Z^d?
GenerationReport generation_check(const DirectedGraph& g, const WeightSystem& w, int n_probe);

/// The probe grid used when none is given: 0.1, 0.2, ..., 1.0.
std::vector<double> default_eps_grid();

/// Scales eps at which every cycle length (period <= n_probe) is an integer
/// multiple of eps to within 1e-9, i.e. lengths generate a discrete group.
std::vector<double> lattice_length_heuristic(const DirectedGraph& g, const WeightSystem& w, int n_probe,
                                             std::span<const double> eps_grid);

/// Last N coordinates of the cycle class.
IntVector linking_numbers(const DirectedGraph& g, const PrimeCycle& c, const WeightSystem& w);

}  // namespace symflow
