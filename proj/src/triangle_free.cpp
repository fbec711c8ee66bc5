#include "congest/triangle_free.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace congest {

namespace {

// ceil that ignores floating noise just above an integer.
std::size_t ceil_tolerant(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

}  // namespace

void TriangleParams::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("triangle test needs epsilon in (0, 1]");
}

std::size_t TriangleParams::iterations() const {
  validate();
  return ceil_tolerant(32.0 / (epsilon * epsilon));
}

TriangleDiagnostics classify_edges(const Graph& g, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (g.num_edges() == 0) throw std::invalid_argument("edge classification needs m >= 1");
  TriangleDiagnostics out;
  const double m = static_cast<double>(g.num_edges());
  out.degree_threshold = 2.0 * std::sqrt(m / epsilon);
  std::vector<char> high(g.num_vertices(), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (static_cast<double>(g.degree(v)) >= out.degree_threshold) {
      high[v] = 1;
      out.high_degree.push_back(v);
    }
  }
  for (auto [u, v] : g.edges()) {
    if (high[u] && high[v]) {
      ++out.heavy_edges;
      continue;
    }
    auto a = g.neighbors(u);
    auto b = g.neighbors(v);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) {
        ++out.light_triangle_edges;
        break;
      }
      a[i] < b[j] ? ++i : ++j;
    }
  }
  if (static_cast<double>(out.heavy_edges) > epsilon * m / 2.0) {
    throw std::logic_error("heavy edge count " + std::to_string(out.heavy_edges) + " exceeds epsilon*m/2");
  }
  return out;
}

TriangleVertex::TriangleVertex(VertexInit init, std::size_t iterations)
    : id_(init.id),
      neighbors_(init.neighbors),
      id_bits_(bits_for(init.num_vertices > 0 ? init.num_vertices - 1 : 0)),
      rng_(init.rng),
      iterations_(iterations) {}

void TriangleVertex::send(std::size_t round, Outbox& out) {
  if (round % 2 == 0) {
    asked_.reset();
    const std::size_t deg = neighbors_.size();
    if (deg < 2) return;
    const std::size_t first = rng_.uniform(deg);
    std::size_t second = rng_.uniform(deg - 1);
    if (second >= first) ++second;
    asked_ = neighbors_[first];
    out.send(neighbors_[first], MessageWriter().put(neighbors_[second], id_bits_).finish());
    return;
  }
  for (const auto& q : queries_) {
    const bool adjacent = std::binary_search(neighbors_.begin(), neighbors_.end(), q.about);
    out.send(q.from, MessageWriter().put_flag(adjacent).finish());
  }
  queries_.clear();
}

void TriangleVertex::receive(std::size_t round, std::span<const Incoming> inbox) {
  if (round % 2 == 0) {
    for (const auto& in : inbox) {
      MessageReader reader(in.message);
      queries_.push_back({in.from, static_cast<VertexId>(reader.get(id_bits_))});
    }
    return;
  }
  for (const auto& in : inbox) {
    if (asked_ && in.from == *asked_ && MessageReader(in.message).get_flag()) verdict_ = Verdict::kReject;
  }
  if (round + 1 == 2 * iterations_) {
    done_ = true;
    if (verdict_ != Verdict::kReject) verdict_ = Verdict::kAccept;
  }
}

AlgorithmFactory triangle_factory(const TriangleParams& params) {
  const std::size_t iterations = params.iterations();
  return [iterations](VertexInit init) -> std::unique_ptr<VertexAlgorithm> {
    return std::make_unique<TriangleVertex>(init, iterations);
  };
}

Transcript run_triangle_test(const Graph& g, const TriangleParams& params, const SimConfig& cfg) {
  return run(g, triangle_factory(params), cfg);
}

}  // namespace congest
