#include "congest/dense_emulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "congest/oracles.hpp"

namespace congest {

namespace {

constexpr std::uint64_t kRecordTag = std::uint64_t{1} << 63;

std::uint64_t edge_item(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

std::uint64_t record_item(VertexId v, std::size_t picked_degree) {
  return kRecordTag | (std::uint64_t{v} << 32) | picked_degree;
}

// Depth-first search for an induced cycle of odd length >= 5 through the
// smallest vertex of the path; adjacency as bitmasks over <= 14 vertices.
bool has_odd_hole(const std::vector<std::uint32_t>& adj) {
  const auto n = static_cast<std::uint32_t>(adj.size());
  auto extend = [&](auto&& self, std::uint32_t start, std::uint32_t last, std::uint32_t path,
                    std::uint32_t length) -> bool {
    const std::uint32_t interior = path & ~(1u << start) & ~(1u << last);
    for (std::uint32_t w = start + 1; w < n; ++w) {
      const std::uint32_t bit = 1u << w;
      if ((path & bit) || !(adj[last] & bit) || (adj[w] & interior)) continue;
      if (adj[w] & (1u << start)) {
        if (length + 1 >= 5 && (length + 1) % 2 == 1) return true;
        continue;  // chord to start: no induced path through w
      }
      if (self(self, start, w, path | bit, length + 1)) return true;
    }
    return false;
  };
  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::uint32_t x = s + 1; x < n; ++x) {
      if (!(adj[s] & (1u << x))) continue;
      if (extend(extend, s, x, (1u << s) | (1u << x), 2)) return true;
    }
  }
  return false;
}

Graph fixture_complement_cycle(std::size_t n) { return complement(make_cycle(n)); }

Graph fixture_almost_complete(std::size_t n) {
  auto edges = make_complete(n).edges();
  edges.erase(edges.begin());
  return Graph(n, edges);
}

Graph with_extra_vertex(const Graph& g, bool attach_first, bool attach_all) {
  const std::size_t n = g.num_vertices();
  auto edges = g.edges();
  const auto extra = static_cast<VertexId>(n);
  for (VertexId v = 0; v < n; ++v) {
    if (attach_all || (attach_first && v == 0)) edges.emplace_back(v, extra);
  }
  return Graph(n + 1, edges);
}

}  // namespace

bool witness_k_colorability(const Graph& g, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (k >= 3 && g.num_vertices() > kMaxColoringVertices) {
    throw OracleBudgetExceeded("oracle budget exceeded: k-colorability witness check is capped at " +
                               std::to_string(kMaxColoringVertices) + " vertices (got " +
                               std::to_string(g.num_vertices()) + ")");
  }
  for (const auto& component : connected_components(g)) {
    if (!find_k_coloring(induced_subgraph(g, component), k)) return true;
  }
  return false;
}

bool witness_perfect_graph(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxPerfectCheckVertices) {
    throw OracleBudgetExceeded("oracle budget exceeded: perfect-graph witness check is capped at " +
                               std::to_string(kMaxPerfectCheckVertices) + " vertices (got " + std::to_string(n) +
                               ")");
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  if (has_odd_hole(adj)) return true;
  const std::uint32_t all = n == 0 ? 0 : (1u << n) - 1;
  for (std::size_t v = 0; v < n; ++v) adj[v] = ~adj[v] & all & ~(1u << v);
  return has_odd_hole(adj);
}

NamedChecker make_checker(const std::string& name) {
  if (name == "perfect") return {name, [](const Graph& g) { return witness_perfect_graph(g); }};
  const std::string prefix = "k-colorability:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string digits = name.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad color count in checker name '" + name + "'");
    }
    const std::size_t k = std::stoul(digits);
    if (k == 0) throw std::invalid_argument("checker needs k >= 1");
    return {name, [k](const Graph& g) { return witness_k_colorability(g, k); }};
  }
  throw std::invalid_argument("unknown checker '" + name + "' (expected k-colorability:<k> or perfect)");
}

std::string checker_self_test(const WitnessChecker& checker) {
  const std::vector<std::pair<std::string, Graph>> fixtures = {
      {"K1", make_complete(1)},
      {"K2", make_complete(2)},
      {"P3", make_path(3)},
      {"K3", make_complete(3)},
      {"C4", make_cycle(4)},
      {"C5", make_cycle(5)},
      {"K4", make_complete(4)},
      {"K5-e", fixture_almost_complete(5)},
      {"C6", make_cycle(6)},
      {"co-C7", fixture_complement_cycle(7)},
  };
  std::vector<bool> witness;
  witness.reserve(fixtures.size());
  for (const auto& [name, g] : fixtures) witness.push_back(checker(g));

  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    if (!witness[i]) continue;
    const auto& [name, g] = fixtures[i];
    for (auto [first, all] : {std::pair{false, false}, std::pair{true, false}, std::pair{false, true}}) {
      if (!checker(with_extra_vertex(g, first, all))) {
        return "checker is not monotone: " + name + " is a witness but an induced supergraph is not";
      }
    }
  }
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    for (std::size_t j = i; j < fixtures.size(); ++j) {
      if (witness[i] || witness[j]) continue;
      if (checker(disjoint_union(fixtures[i].second, fixtures[j].second))) {
        return "checker describes a disjointed property: " + fixtures[i].first + " and " + fixtures[j].first +
               " are not witnesses but their disjoint union is";
      }
    }
  }
  return {};
}

void EmulationParams::validate() const {
  if (q < 1) throw std::invalid_argument("emulation needs q >= 1");
  if (edge_cap_override && *edge_cap_override < 1) throw std::invalid_argument("edge cap must be positive");
}

double EmulationParams::pick_probability(std::size_t n) const {
  if (n == 0) return 1.0;
  return std::min(1.0, 5.0 * static_cast<double>(q) / static_cast<double>(n));
}

EmulationVertex::EmulationVertex(VertexInit init, WitnessChecker checker, EmulationParams params)
    : id_(init.id),
      neighbors_(init.neighbors),
      id_bits_(bits_for(init.num_vertices > 0 ? init.num_vertices - 1 : 0)),
      rng_(init.rng),
      checker_(std::move(checker)),
      params_(params),
      pick_probability_(params.pick_probability(init.num_vertices)) {}

void EmulationVertex::start_outer(std::size_t outer) {
  outer_ = outer;
  picked_ = rng_.bernoulli(pick_probability_);
  picked_in_[outer] = picked_;
  capped_ = false;
  picked_neighbors_.clear();
  known_items_.clear();
  known_edges_.clear();
  pending_.clear();
}

void EmulationVertex::learn(std::uint64_t item, std::optional<VertexId> from) {
  if (!known_items_.insert(item).second) return;
  if (!(item & kRecordTag)) {
    known_edges_.emplace_back(static_cast<VertexId>(item >> 32), static_cast<VertexId>(item & 0xffffffffu));
  }
  if (capped_) return;
  for (std::size_t i = 0; i < picked_neighbors_.size(); ++i) {
    if (from && picked_neighbors_[i] == *from) continue;
    pending_[i].insert(item);
  }
}

void EmulationVertex::send(std::size_t round, Outbox& out) {
  const std::size_t local = round % params_.rounds_per_outer();
  if (local == 0) {
    start_outer(round / params_.rounds_per_outer());
    if (picked_) out.send_all(MessageWriter().put_flag(true).finish());
    return;
  }
  if (!picked_) return;
  for (std::size_t i = 0; i < picked_neighbors_.size(); ++i) {
    auto& queue = pending_[i];
    if (queue.empty()) continue;
    if (capped_) ++sends_while_capped_;
    const std::uint64_t item = *queue.begin();
    queue.erase(queue.begin());
    const bool record = (item & kRecordTag) != 0;
    const Message msg = MessageWriter()
                            .put_flag(record)
                            .put((item >> 32) & 0x7fffffffu, id_bits_)
                            .put(item & 0xffffffffu, id_bits_)
                            .finish();
    out.send(picked_neighbors_[i], msg);
  }
}

void EmulationVertex::receive(std::size_t round, std::span<const Incoming> inbox) {
  const std::size_t local = round % params_.rounds_per_outer();
  if (local == 0) {
    if (!picked_) return;
    for (const auto& in : inbox) picked_neighbors_.push_back(in.from);
    pending_.assign(picked_neighbors_.size(), {});
    learn(record_item(id_, picked_neighbors_.size()), std::nullopt);
    for (VertexId w : picked_neighbors_) learn(edge_item(id_, w), std::nullopt);
  } else if (picked_) {
    for (const auto& in : inbox) {
      MessageReader reader(in.message);
      const bool record = reader.get_flag();
      const auto a = static_cast<VertexId>(reader.get(id_bits_));
      const auto b = reader.get(id_bits_);
      learn(record ? record_item(a, b) : edge_item(a, static_cast<VertexId>(b)), in.from);
    }
  }
  if (picked_ && !capped_ && known_edges_.size() > params_.edge_cap()) {
    capped_ = true;
    capped_in_[outer_] = true;
    for (auto& queue : pending_) queue.clear();
  }
  if (local == params_.flood_rounds()) {
    if (picked_ && verdict_ != Verdict::kReject) check_witness();
    if (outer_ + 1 == EmulationParams::kOuterIterations) {
      done_ = true;
      if (verdict_ != Verdict::kReject) verdict_ = Verdict::kAccept;
    }
  }
}

void EmulationVertex::check_witness() {
  // A picked vertex is complete once all edges its degree record announces
  // are known; edges among complete vertices form an induced subgraph of G.
  std::map<VertexId, std::size_t> announced;
  std::map<VertexId, std::size_t> seen;
  for (std::uint64_t item : known_items_) {
    if (item & kRecordTag) announced[static_cast<VertexId>((item >> 32) & 0x7fffffffu)] = item & 0xffffffffu;
  }
  for (auto [a, b] : known_edges_) {
    ++seen[a];
    ++seen[b];
  }
  std::vector<VertexId> complete;
  for (auto [u, degree] : announced) {
    if (seen[u] == degree) complete.push_back(u);
  }
  auto index_of = [&](VertexId u) -> std::optional<std::size_t> {
    auto it = std::lower_bound(complete.begin(), complete.end(), u);
    if (it == complete.end() || *it != u) return std::nullopt;
    return static_cast<std::size_t>(it - complete.begin());
  };
  std::vector<Edge> local_edges;
  for (auto [a, b] : known_edges_) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (ia && ib) local_edges.emplace_back(static_cast<VertexId>(*ia), static_cast<VertexId>(*ib));
  }
  const Graph known(complete.size(), local_edges);
  const auto self = index_of(id_);
  if (!self) return;
  const auto labels = component_labels(known);
  std::vector<VertexId> component;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] == labels[*self]) component.push_back(static_cast<VertexId>(v));
  }
  const Graph witness = induced_subgraph(known, component);
  if (!checker_(witness)) return;
  verdict_ = Verdict::kReject;
  evidence_.clear();
  for (auto [a, b] : witness.edges()) evidence_.emplace_back(complete[component[a]], complete[component[b]]);
}

AlgorithmFactory emulation_factory(WitnessChecker checker, const EmulationParams& params) {
  params.validate();
  return [checker = std::move(checker), params](VertexInit init) -> std::unique_ptr<VertexAlgorithm> {
    return std::make_unique<EmulationVertex>(init, checker, params);
  };
}

EmulationRun emulate(const Graph& g, const WitnessChecker& checker, const EmulationParams& params,
                     const SimConfig& cfg) {
  params.validate();
  if (auto failure = checker_self_test(checker); !failure.empty()) throw ContractViolation(failure);
  Simulation sim(g, emulation_factory(checker, params), cfg);
  EmulationRun out;
  out.transcript = sim.run();
  out.round_bound = params.round_bound();
  for (std::size_t outer = 0; outer < EmulationParams::kOuterIterations; ++outer) {
    if (out.transcript.rounds_used <= outer * params.rounds_per_outer()) break;
    std::size_t picked = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const auto& vertex = sim.vertex_as<EmulationVertex>(v);
      if (vertex.picked_in(outer)) ++picked;
      if (vertex.capped_in(outer)) ++out.capped_vertices[outer];
    }
    out.picked_counts[outer] = picked;
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto& vertex = sim.vertex_as<EmulationVertex>(v);
    out.sends_while_capped += vertex.sends_while_capped();
    if (out.transcript.verdicts[v] == Verdict::kReject) out.evidence.emplace_back(v, vertex.evidence());
  }
  return out;
}

}  // namespace congest
