#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "congest/graph.hpp"

namespace congest {

/// Raised when an exhaustive oracle is asked to go beyond its hard size cap.
class OracleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Property { kBipartite, kTriangleFree, kCycleFree, kKColorable };
enum class Model { kDense, kGeneral, kSparse };
enum class CertMethod { kExhaustive, kFormula, kPackingBound };
enum class FarnessVerdict { kSatisfies, kEpsilonFar, kNeither };

const char* to_string(Property p);
const char* to_string(Model m);
const char* to_string(CertMethod m);
const char* to_string(FarnessVerdict v);
Property parse_property(const std::string& s);
Model parse_model(const std::string& s);

// Hard caps of the exhaustive oracles.
inline constexpr std::size_t kMaxBipartitionVertices = 24;
inline constexpr std::size_t kMaxColoringVertices = 25;
inline constexpr std::size_t kMaxColoringDistanceVertices = 16;
inline constexpr std::size_t kMaxExactTriangleVertices = 12;

/// Outcome of an exact decider. `coloring` certifies a yes for bipartite and
/// k-colorable; `witness` is a cycle (vertex sequence) or a triangle for a no.
struct PropertyDecision {
  bool holds = false;
  std::vector<std::size_t> coloring;
  std::vector<VertexId> witness;
};

PropertyDecision decide_property(const Graph& g, Property property, std::size_t k = 3);

/// Proper k-coloring by backtracking, or nullopt. Throws past 25 vertices.
std::optional<std::vector<std::size_t>> find_k_coloring(const Graph& g, std::size_t k);

/// m - n + (#components): edges outside any spanning forest.
std::size_t distance_cycle_free(const Graph& g);

/// Minimum number of monochromatic edges over all 2-colorings (n <= 24).
std::size_t distance_bipartite(const Graph& g);

/// Minimum number of monochromatic edges over all k-colorings (n <= 16).
std::size_t distance_k_colorable(const Graph& g, std::size_t k);

using Triangle = std::array<VertexId, 3>;

struct TrianglePacking {
  std::vector<Triangle> triangles;  // pairwise edge-disjoint
  std::size_t bound = 0;            // == triangles.size()
  std::optional<std::size_t> exact; // exhaustive distance when n <= 12
};

/// Greedy maximal edge-disjoint triangle packing in lexicographic edge order.
TrianglePacking distance_triangle_free_lower_bound(const Graph& g);

/// Exact minimum number of edge deletions leaving no triangle (n <= 12).
std::size_t exact_distance_triangle_free(const Graph& g);

/// Shortest odd cycle as a vertex sequence, or empty if g is bipartite.
std::vector<VertexId> shortest_odd_cycle(const Graph& g);

/// Greedy edge-disjoint odd cycles: repeatedly removes a shortest odd cycle.
std::vector<std::vector<VertexId>> odd_cycle_packing(const Graph& g);

struct FarnessCertificate {
  Property property = Property::kBipartite;
  std::size_t k = 0;  // colors, k-colorable only
  Model model = Model::kGeneral;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<std::size_t> degree_bound;
  std::size_t distance = 0;
  double normalizer = 0.0;
  double epsilon_star = 0.0;
  CertMethod method = CertMethod::kFormula;
  double epsilon = 0.0;
  FarnessVerdict verdict = FarnessVerdict::kNeither;

  bool exact() const { return method != CertMethod::kPackingBound; }
  friend bool operator==(const FarnessCertificate&, const FarnessCertificate&) = default;
};

/// n^2, max(n, m) or d*n depending on the model.
double model_normalizer(Model model, std::size_t n, std::size_t m, std::optional<std::size_t> d);

/// Computes the distance (exact or lower bound) of g from `property` and
/// classifies g against epsilon * normalizer.
FarnessCertificate certify(const Graph& g, Property property, double epsilon, Model model,
                           std::optional<std::size_t> d = std::nullopt, std::size_t k = 3);

}  // namespace congest
