#include "congest/report.hpp"

#include <stdexcept>

namespace congest {

namespace {

template <class Enum, std::size_t N>
Enum enum_from(const std::string& s, const Enum (&values)[N], const char* what) {
  for (Enum v : values) {
    if (s == to_string(v)) return v;
  }
  throw std::invalid_argument(std::string("unknown ") + what + " '" + s + "'");
}

}  // namespace

Json transcript_json(const Transcript& t) {
  Json j;
  j["rounds_used"] = t.rounds_used;
  j["reject"] = t.rejected();
  j["global_verdict"] = to_string(t.global_verdict);
  j["per_round_messages"] = t.per_round_messages;
  j["total_messages"] = t.total_messages();
  j["max_message_bits"] = t.max_message_bits;
  j["bandwidth_bits"] = t.bandwidth_bits;
  j["hit_round_cap"] = t.hit_round_cap;
  j["verdicts"] = {{"accept", t.count(Verdict::kAccept)},
                   {"reject", t.count(Verdict::kReject)},
                   {"undecided", t.count(Verdict::kUndecided)}};
  return j;
}

Json stats_json(const RejectionStats& s) {
  Json j;
  j["trials"] = s.trials;
  j["rejections"] = s.rejections;
  j["reject_fraction"] = s.reject_fraction;
  j["sigma"] = binomial_sigma(s.reject_fraction, s.trials);
  j["mean_rounds"] = s.mean_rounds;
  j["max_rounds"] = s.max_rounds;
  j["max_congestion_observed"] = s.max_congestion_observed;
  return j;
}

Json graph_json(const Graph& g) {
  return {{"n", g.num_vertices()}, {"m", g.num_edges()}, {"max_degree", g.max_degree()}};
}

Json certificate_json(const FarnessCertificate& c) {
  Json j;
  j["property"] = to_string(c.property);
  if (c.property == Property::kKColorable) j["k"] = c.k;
  j["model"] = to_string(c.model);
  j["n"] = c.n;
  j["m"] = c.m;
  j["degree_bound"] = c.degree_bound ? Json(*c.degree_bound) : Json(nullptr);
  j["distance"] = c.distance;
  j["exact"] = c.exact();
  j["normalizer"] = c.normalizer;
  j["epsilon_star"] = c.epsilon_star;
  j["method"] = to_string(c.method);
  j["epsilon"] = c.epsilon;
  j["verdict"] = to_string(c.verdict);
  return j;
}

FarnessCertificate certificate_from_json(const Json& j) {
  try {
    FarnessCertificate c;
    c.property = parse_property(j.at("property").get<std::string>());
    if (j.contains("k")) c.k = j.at("k").get<std::size_t>();
    c.model = parse_model(j.at("model").get<std::string>());
    c.n = j.at("n").get<std::size_t>();
    c.m = j.at("m").get<std::size_t>();
    if (!j.at("degree_bound").is_null()) c.degree_bound = j.at("degree_bound").get<std::size_t>();
    c.distance = j.at("distance").get<std::size_t>();
    c.normalizer = j.at("normalizer").get<double>();
    c.epsilon_star = j.at("epsilon_star").get<double>();
    constexpr CertMethod kMethods[] = {CertMethod::kExhaustive, CertMethod::kFormula, CertMethod::kPackingBound};
    c.method = enum_from(j.at("method").get<std::string>(), kMethods, "certificate method");
    c.epsilon = j.at("epsilon").get<double>();
    constexpr FarnessVerdict kVerdicts[] = {FarnessVerdict::kSatisfies, FarnessVerdict::kEpsilonFar,
                                            FarnessVerdict::kNeither};
    c.verdict = enum_from(j.at("verdict").get<std::string>(), kVerdicts, "farness verdict");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace congest
