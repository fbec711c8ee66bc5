#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "congest/graph.hpp"
#include "congest/simulator.hpp"

namespace congest {

struct TriangleParams {
  double epsilon = 0.5;

  void validate() const;
  /// ceil(32 / epsilon^2).
  std::size_t iterations() const;
  std::size_t rounds() const { return 2 * iterations(); }
};

struct TriangleDiagnostics {
  double degree_threshold = 0.0;      // 2 sqrt(m / epsilon)
  std::vector<VertexId> high_degree;  // vertices with degree >= threshold
  std::size_t heavy_edges = 0;        // both endpoints high-degree
  std::size_t light_triangle_edges = 0;  // light edges lying on some triangle
};

/// Heavy/light edge split; throws std::logic_error if the heavy count ever
/// exceeds epsilon * m / 2.
TriangleDiagnostics classify_edges(const Graph& g, double epsilon);

/// Each iteration a vertex of degree >= 2 picks an ordered pair of distinct
/// neighbors (w1, w2), asks w1 whether w2 is its neighbor, and rejects on a
/// yes. Query and answer take one round each.
class TriangleVertex final : public VertexAlgorithm {
 public:
  TriangleVertex(VertexInit init, std::size_t iterations);

  void send(std::size_t round, Outbox& out) override;
  void receive(std::size_t round, std::span<const Incoming> inbox) override;
  Verdict verdict() const override { return verdict_; }
  bool terminated() const override { return done_; }

 private:
  struct Query {
    VertexId from;
    VertexId about;
  };

  VertexId id_;
  std::span<const VertexId> neighbors_;
  std::size_t id_bits_;
  RngStream rng_;
  std::size_t iterations_;
  std::optional<VertexId> asked_;
  std::vector<Query> queries_;
  Verdict verdict_ = Verdict::kUndecided;
  bool done_ = false;
};

AlgorithmFactory triangle_factory(const TriangleParams& params);

Transcript run_triangle_test(const Graph& g, const TriangleParams& params, const SimConfig& cfg);

}  // namespace congest
