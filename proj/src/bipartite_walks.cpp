#include "congest/bipartite_walks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace congest {

namespace {

std::uint64_t history_key(const WalkToken& t) { return (static_cast<std::uint64_t>(t.origin) << 1) | (t.moves & 1u); }

std::size_t checked_ceil(double x, const char* what) {
  if (!(x < 9.0e18)) throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

}  // namespace

VertexId lazy_step(VertexId v, const Graph& g, std::size_t d, RngStream& rng) {
  const auto nbrs = g.neighbors(v);
  if (nbrs.size() > d) {
    throw DegreeBoundViolation("vertex " + std::to_string(v) + " has degree " + std::to_string(nbrs.size()) +
                               " > d = " + std::to_string(d));
  }
  const std::uint64_t r = rng.uniform(2 * static_cast<std::uint64_t>(d));
  return r < nbrs.size() ? nbrs[r] : v;
}

bool detect_violation(std::span<const WalkToken> history) {
  WalkHistory h;
  for (const auto& t : history) h.record(t);
  return h.violation();
}

void WalkHistory::record(const WalkToken& token) {
  const std::uint64_t key = history_key(token);
  if (!keys_.insert(key).second) return;
  if (keys_.contains(key ^ 1u)) violation_ = true;
}

void WalkHistory::clear() {
  keys_.clear();
  violation_ = false;
}

WalkState WalkState::initial(std::size_t n) {
  WalkState s;
  s.resident.resize(n);
  s.history.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    const WalkToken start{0, v};
    s.resident[v] = {start, start};
    s.history[v].record(start);
  }
  return s;
}

std::size_t WalkState::total_tokens() const {
  std::size_t total = 0;
  for (const auto& w : resident) total += w.size();
  return total;
}

WalkState move_walks_once(const WalkState& state, double congestion_cap, const Graph& g, std::size_t d,
                          std::span<RngStream> rngs) {
  const std::size_t n = g.num_vertices();
  if (state.resident.size() != n || state.history.size() != n || rngs.size() != n) {
    throw std::invalid_argument("walk state, rng count and graph size disagree");
  }
  WalkState next;
  next.resident.resize(n);
  next.history = state.history;
  std::vector<std::vector<WalkToken>> arrivals(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto& here = state.resident[v];
    if (static_cast<double>(here.size()) > congestion_cap) {
      next.resident[v] = here;
      continue;
    }
    for (const auto& token : here) {
      const VertexId to = lazy_step(v, g, d, rngs[v]);
      if (to == v) {
        next.resident[v].push_back(token);
      } else {
        arrivals[to].push_back({token.moves + 1, token.origin});
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    for (const auto& token : arrivals[v]) {
      next.resident[v].push_back(token);
      next.history[v].record(token);
    }
  }
  return next;
}

BipartiteParams BipartiteParams::scaled(std::size_t d, double epsilon, std::size_t walk_length,
                                        std::size_t iterations) {
  BipartiteParams p;
  p.d = d;
  p.epsilon = epsilon;
  p.walk_length = walk_length;
  p.iterations = iterations;
  p.mode = WalkMode::kScaled;
  p.validate();
  return p;
}

BipartiteParams BipartiteParams::paper_faithful(std::size_t n, std::size_t d, double epsilon, double c_k,
                                                double c_l) {
  if (n < 2) throw std::invalid_argument("unscaled parameters need n >= 2");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (!(c_k > 0.0 && c_l > 0.0)) throw std::invalid_argument("constants must be positive");
  const double nn = static_cast<double>(n);
  BipartiteParams p;
  p.d = d;
  p.epsilon = epsilon;
  p.c_k = c_k;
  p.c_l = c_l;
  p.mode = WalkMode::kPaperFaithful;
  const double log_n = std::log(nn) / std::log(kWalkLengthLogBase);
  p.walk_length = checked_ceil(c_l * std::pow(epsilon, -8.0) * std::pow(log_n, 6.0), "L");
  p.analysis_k = checked_ceil(c_k * std::pow(epsilon, -4.0) * std::sqrt(nn) * std::sqrt(std::log(nn / epsilon)), "K");
  const double k = static_cast<double>(p.analysis_k);
  p.iterations = checked_ceil(320.0 * k * k / (nn * epsilon), "eta");
  p.validate();
  return p;
}

void BipartiteParams::validate() const {
  if (d == 0) throw std::invalid_argument("degree bound d must be positive");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (walk_length == 0) throw std::invalid_argument("walk length L must be positive");
  if (iterations == 0) throw std::invalid_argument("iteration count eta must be positive");
}

double BipartiteParams::gamma(std::size_t n) const {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
  return 3.0 * (2.0 * std::log(nn) + std::log(static_cast<double>(walk_length)));
}

std::size_t BipartiteParams::rounds_per_move(std::size_t n) const {
  return static_cast<std::size_t>(std::floor(congestion_cap(n)));
}

BipartiteVertex::BipartiteVertex(VertexInit init, const Graph& g, const BipartiteParams& params)
    : id_(init.id),
      graph_(g),
      neighbors_(init.neighbors),
      rng_(init.rng),
      d_(params.d),
      walk_length_(params.walk_length),
      iterations_(params.iterations),
      cap_(params.congestion_cap(init.num_vertices)),
      rounds_per_move_(params.rounds_per_move(init.num_vertices)),
      moves_bits_(bits_for(params.walk_length)),
      id_bits_(bits_for(init.num_vertices > 0 ? init.num_vertices - 1 : 0)),
      outgoing_(init.neighbors.size()) {}

void BipartiteVertex::plan_move() {
  max_resident_ = std::max(max_resident_, resident_.size());
  if (static_cast<double>(resident_.size()) > cap_) {
    ++frozen_moves_;
    return;
  }
  std::vector<WalkToken> staying;
  for (const auto& token : resident_) {
    const VertexId to = lazy_step(id_, graph_, d_, rng_);
    if (to == id_) {
      staying.push_back(token);
      continue;
    }
    const auto idx = static_cast<std::size_t>(std::lower_bound(neighbors_.begin(), neighbors_.end(), to) -
                                              neighbors_.begin());
    outgoing_[idx].push_back({token.moves + 1, token.origin});
  }
  resident_ = std::move(staying);
  for (auto& queue : outgoing_) {
    if (queue.size() > rounds_per_move_) throw std::logic_error("token batch exceeds the per-move round budget");
    max_edge_batch_ = std::max(max_edge_batch_, queue.size());
    std::reverse(queue.begin(), queue.end());
  }
}

void BipartiteVertex::send(std::size_t round, Outbox& out) {
  const std::size_t iteration_rounds = walk_length_ * rounds_per_move_;
  if (round % iteration_rounds == 0) {
    const WalkToken start{0, id_};
    resident_ = {start, start};
    history_.clear();
    history_.record(start);
  }
  if (round % rounds_per_move_ == 0) plan_move();
  for (std::size_t i = 0; i < outgoing_.size(); ++i) {
    auto& queue = outgoing_[i];
    if (queue.empty()) continue;
    const WalkToken token = queue.back();
    queue.pop_back();
    out.send(neighbors_[i], MessageWriter().put(token.moves, moves_bits_).put(token.origin, id_bits_).finish());
  }
}

void BipartiteVertex::receive(std::size_t round, std::span<const Incoming> inbox) {
  for (const auto& in : inbox) {
    MessageReader reader(in.message);
    WalkToken token;
    token.moves = static_cast<std::uint32_t>(reader.get(moves_bits_));
    token.origin = static_cast<VertexId>(reader.get(id_bits_));
    arrivals_.emplace_back(in.from, token);
  }
  if ((round + 1) % rounds_per_move_ != 0) return;

  std::stable_sort(arrivals_.begin(), arrivals_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [from, token] : arrivals_) {
    resident_.push_back(token);
    history_.record(token);
  }
  arrivals_.clear();

  const std::size_t iteration_rounds = walk_length_ * rounds_per_move_;
  if ((round + 1) % iteration_rounds != 0) return;
  if (history_.violation()) verdict_ = Verdict::kReject;
  if ((round + 1) / iteration_rounds == iterations_) {
    done_ = true;
    if (verdict_ != Verdict::kReject) verdict_ = Verdict::kAccept;
  }
}

AlgorithmFactory bipartite_factory(const Graph& g, const BipartiteParams& params) {
  params.validate();
  if (g.max_degree() > params.d) {
    throw DegreeBoundViolation("max degree " + std::to_string(g.max_degree()) + " exceeds d = " +
                               std::to_string(params.d));
  }
  return [&g, params](VertexInit init) -> std::unique_ptr<VertexAlgorithm> {
    return std::make_unique<BipartiteVertex>(init, g, params);
  };
}

Transcript run_bipartite_test(const Graph& g, const BipartiteParams& params, const SimConfig& cfg) {
  return run(g, bipartite_factory(g, params), cfg);
}

}  // namespace congest
