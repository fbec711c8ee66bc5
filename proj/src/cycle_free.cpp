#include "congest/cycle_free.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace congest {

namespace {

std::size_t log_rounds(double scale, std::size_t n, const CycleParams& p) {
  const double log_n = n > 1 ? std::log(static_cast<double>(n)) / std::log(p.log_base) : 0.0;
  return static_cast<std::size_t>(std::ceil(scale * log_n / p.epsilon - 1e-9));
}

std::uint32_t cap_depth(std::size_t n, std::size_t length) {
  return static_cast<std::uint32_t>(std::max<std::size_t>(1, std::min(n, length)));
}

}  // namespace

void CycleParams::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("cycle test needs epsilon in (0, 1]");
  if (!(log_base > 1.0)) throw std::invalid_argument("log base must exceed 1");
}

std::size_t CycleParams::phase_one_rounds(std::size_t n) const {
  validate();
  return std::max<std::size_t>(2, log_rounds(20.0, n, *this));
}

std::size_t CycleParams::phase_two_rounds(std::size_t n) const {
  validate();
  return log_rounds(10.0, n, *this);
}

BfsState::BfsState(VertexId self, RootId own, Priority priority, std::uint32_t depth_cap)
    : self_(self), priority_(priority), depth_cap_(depth_cap), best_{own, 0, self} {
  tuples_.insert(best_);
  pending_ = Forward{own, std::min<std::uint32_t>(1, depth_cap_), self};
}

bool BfsState::beats(const BfsTuple& a, const BfsTuple& b) const {
  if (a.root != b.root) return priority_ == Priority::kLowestRoot ? a.root < b.root : a.root > b.root;
  return std::tie(a.depth, a.parent) < std::tie(b.depth, b.parent);
}

void BfsState::absorb(const BfsTuple& tuple) {
  received_ = true;
  const auto [it, inserted] = tuples_.insert(tuple);
  if (!inserted) return;
  if (it != tuples_.begin() && std::prev(it)->root == tuple.root) duplicate_ = true;
  if (const auto next = std::next(it); next != tuples_.end() && next->root == tuple.root) duplicate_ = true;
  max_depth_ = std::max(max_depth_, tuple.depth);
  if (beats(tuple, best_)) best_ = tuple;
}

void BfsState::finish_round() {
  if (received_) {
    pending_ = Forward{best_.root, std::min(best_.depth + 1, depth_cap_), best_.parent};
  } else {
    pending_.reset();
  }
  received_ = false;
}

BfsWire BfsWire::make(std::size_t n, std::uint32_t max_rank, std::uint32_t depth_cap) {
  BfsWire w;
  w.rank_bits = max_rank == 0 ? 0 : bits_for(max_rank);
  w.id_bits = bits_for(n > 0 ? n - 1 : 0);
  w.depth_bits = bits_for(depth_cap);
  return w;
}

Message BfsWire::encode(RootId root, std::uint32_t depth) const {
  MessageWriter writer;
  if (rank_bits > 0) writer.put(root.rank, rank_bits);
  return writer.put(root.vertex, id_bits).put(depth, depth_bits).finish();
}

std::pair<RootId, std::uint32_t> BfsWire::decode(const Message& m) const {
  MessageReader reader(m);
  RootId root;
  if (rank_bits > 0) root.rank = static_cast<std::uint32_t>(reader.get(rank_bits));
  root.vertex = static_cast<VertexId>(reader.get(id_bits));
  const auto depth = static_cast<std::uint32_t>(reader.get(depth_bits));
  return {root, depth};
}

BfsVertex::BfsVertex(VertexInit init, RootId own, Priority priority, std::size_t length, BfsWire wire)
    : neighbors_(init.neighbors),
      length_(length),
      wire_(wire),
      state_(init.id, own, priority, cap_depth(init.num_vertices, length)),
      done_(length == 0) {}

void BfsVertex::send(std::size_t, Outbox& out) {
  const auto& fwd = state_.pending();
  if (!fwd) return;
  const Message msg = wire_.encode(fwd->root, fwd->depth);
  for (VertexId u : neighbors_) {
    if (u != fwd->skip) out.send(u, msg);
  }
}

void BfsVertex::receive(std::size_t round, std::span<const Incoming> inbox) {
  for (const auto& in : inbox) {
    const auto [root, depth] = wire_.decode(in.message);
    state_.absorb({root, depth, in.from});
  }
  state_.finish_round();
  if (round + 1 == length_) done_ = true;
}

std::vector<std::set<BfsTuple>> prioritized_bfs(const Graph& g, std::size_t length, Priority priority,
                                                const std::vector<RootId>& ids, const SimConfig& cfg) {
  const std::size_t n = g.num_vertices();
  if (ids.size() != n) throw std::invalid_argument("one initial id per vertex required");
  std::vector<RootId> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("initial ids must be distinct");
  }
  std::uint32_t max_rank = 0;
  for (const auto& id : ids) {
    max_rank = std::max(max_rank, id.rank);
    if (id.vertex >= std::max<std::size_t>(n, 1)) throw std::invalid_argument("id vertex out of range");
  }
  const BfsWire wire = BfsWire::make(n, max_rank, cap_depth(n, length));
  Simulation sim(g,
                 [&](VertexInit init) -> std::unique_ptr<VertexAlgorithm> {
                   return std::make_unique<BfsVertex>(init, ids[init.id], priority, length, wire);
                 },
                 cfg);
  sim.run();
  std::vector<std::set<BfsTuple>> lists(n);
  for (VertexId v = 0; v < n; ++v) lists[v] = sim.vertex_as<BfsVertex>(v).state().tuples();
  return lists;
}

Sparsification sparsify(const Graph& g, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("deletion probability must lie in [0, 1]");
  const std::vector<Edge> edges = g.edges();
  std::vector<bool> deleted(edges.size(), false);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    RngStream rng(seed, v);
    for (VertexId u : g.neighbors(v)) {
      if (u >= v) break;
      if (!rng.bernoulli(p)) continue;
      const auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
      deleted[static_cast<std::size_t>(it - edges.begin())] = true;
    }
  }
  std::vector<bool> keep(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) keep[i] = !deleted[i];
  return {edge_subgraph(g, keep), std::move(deleted)};
}

CycleVertex::CycleVertex(VertexInit init, const CycleParams& params)
    : id_(init.id),
      neighbors_(init.neighbors),
      n_(init.num_vertices),
      rng_(init.rng),
      deletion_probability_(params.deletion_probability()),
      phase_one_rounds_(params.phase_one_rounds(init.num_vertices)),
      phase_two_rounds_(params.phase_two_rounds(init.num_vertices)),
      deleted_(init.neighbors.size(), false) {
  const std::uint32_t cap_one = cap_depth(n_, phase_one_rounds_);
  wire_one_ = BfsWire::make(n_, 0, cap_one);
  wire_two_ = BfsWire::make(n_, cap_one, cap_depth(n_, phase_two_rounds_));
  phase_one_.emplace(id_, RootId{0, id_}, Priority::kLowestRoot, cap_one);
}

const std::set<BfsTuple>& CycleVertex::phase_two_tuples() const {
  static const std::set<BfsTuple> kEmpty;
  return phase_two_ ? phase_two_->tuples() : kEmpty;
}

std::size_t CycleVertex::index_of(VertexId u) const {
  return static_cast<std::size_t>(std::lower_bound(neighbors_.begin(), neighbors_.end(), u) - neighbors_.begin());
}

void CycleVertex::forward(const BfsState& state, const BfsWire& wire, bool sparse_only, Outbox& out) const {
  const auto& fwd = state.pending();
  if (!fwd) return;
  const Message msg = wire.encode(fwd->root, fwd->depth);
  for (std::size_t i = 0; i < neighbors_.size(); ++i) {
    if (neighbors_[i] == fwd->skip || (sparse_only && deleted_[i])) continue;
    out.send(neighbors_[i], msg);
  }
}

void CycleVertex::send(std::size_t round, Outbox& out) {
  if (round == 0) {
    for (std::size_t i = 0; i < neighbors_.size() && neighbors_[i] < id_; ++i) {
      if (!rng_.bernoulli(deletion_probability_)) continue;
      deleted_[i] = true;
      out.send(neighbors_[i], MessageWriter().put_flag(true).finish());
    }
  } else if (round <= phase_one_rounds_) {
    forward(*phase_one_, wire_one_, true, out);
  } else {
    forward(*phase_two_, wire_two_, false, out);
  }
}

void CycleVertex::receive(std::size_t round, std::span<const Incoming> inbox) {
  if (round == 0) {
    for (const auto& in : inbox) deleted_[index_of(in.from)] = true;
    return;
  }
  const bool first = round <= phase_one_rounds_;
  BfsState& state = first ? *phase_one_ : *phase_two_;
  const BfsWire& wire = first ? wire_one_ : wire_two_;
  for (const auto& in : inbox) {
    const auto [root, depth] = wire.decode(in.message);
    state.absorb({root, depth, in.from});
  }
  state.finish_round();

  if (round == phase_one_rounds_) {
    if (phase_one_->duplicate_root()) {
      verdict_ = Verdict::kReject;
      rejected_phase_ = 1;
    }
    rank_ = phase_one_->max_depth();
    if (phase_two_rounds_ > 0) {
      phase_two_.emplace(id_, RootId{rank_, id_}, Priority::kHighestRoot, cap_depth(n_, phase_two_rounds_));
    }
  }
  if (round == phase_one_rounds_ + phase_two_rounds_) {
    if (phase_two_ && phase_two_->duplicate_root() && !rejected_phase_) {
      verdict_ = Verdict::kReject;
      rejected_phase_ = 2;
    }
    done_ = true;
    if (verdict_ != Verdict::kReject) verdict_ = Verdict::kAccept;
  }
}

AlgorithmFactory cycle_factory(const CycleParams& params) {
  params.validate();
  return [params](VertexInit init) -> std::unique_ptr<VertexAlgorithm> {
    return std::make_unique<CycleVertex>(init, params);
  };
}

Transcript run_cycle_test(const Graph& g, const CycleParams& params, const SimConfig& cfg) {
  return run(g, cycle_factory(params), cfg);
}

}  // namespace congest
