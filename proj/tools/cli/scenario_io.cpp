// Copyright 2026 The Screening Contracts Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "screening/error.hpp"

namespace screening::cli {
namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kInvalidScenario, field + ": " + why);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

void only_keys(const Json& obj, const std::string& path,
               std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(join(path, key), "unknown key \"" + key + "\"");
  }
}

const Json& member(const Json& obj, const std::string& path, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "not finite");
  return v;
}

std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::uint64_t unsigned_integer(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) fail(path, "must not be negative");
  fail(path, "expected a non-negative integer");
}

// Re-throws core validation errors under the field path.
template <typename F>
auto guarded(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidScenario) throw;
    fail(path, e.what());
  }
}

Forecast forecast(const Json& j, const std::string& path, const StateSpace& states) {
  if (!j.is_array()) fail(path, "expected an array of probabilities");
  std::vector<double> raw;
  raw.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) raw.push_back(number(j[i], at(path, i)));
  return guarded(path, [&] { return validate_forecast(raw, states); });
}

std::vector<Forecast> forecast_list(const Json& j, const std::string& path,
                                    const StateSpace& states) {
  if (!j.is_array()) fail(path, "expected an array of forecasts");
  std::vector<Forecast> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(forecast(j[i], at(path, i), states));
  return out;
}

StateSpace parse_states(const Json& j) {
  if (!j.is_array()) fail("states", "expected an array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) labels.push_back(string(j[i], at("states", i)));
  return guarded("states", [&] { return StateSpace(std::move(labels)); });
}

Nature parse_nature(const Json& j, const StateSpace& states) {
  object(j, "nature");
  const std::string kind = string(member(j, "nature", "kind"), "nature.kind");
  if (kind == "fixed") {
    only_keys(j, "nature", {"kind", "forecast"});
    return FixedNature{forecast(member(j, "nature", "forecast"), "nature.forecast", states)};
  }
  if (kind == "uniform") {
    only_keys(j, "nature", {"kind"});
    return UniformNature{};
  }
  fail("nature.kind", "expected \"fixed\" or \"uniform\"");
}

PlausibleSet parse_theta(const Json& j, const std::string& path, const StateSpace& states) {
  object(j, path);
  const std::string kind = string(member(j, path, "kind"), join(path, "kind"));
  if (kind == "finite") {
    only_keys(j, path, {"kind", "forecasts"});
    const std::string fp = join(path, "forecasts");
    auto list = forecast_list(member(j, path, "forecasts"), fp, states);
    return guarded(fp, [&] { return PlausibleSet::finite(std::move(list)); });
  }
  if (kind == "ball") {
    only_keys(j, path, {"kind", "center", "radius"});
    Forecast center = forecast(member(j, path, "center"), join(path, "center"), states);
    const std::string rp = join(path, "radius");
    const double radius = number(member(j, path, "radius"), rp);
    return guarded(rp, [&] { return PlausibleSet::ball(std::move(center), radius); });
  }
  fail(join(path, "kind"), "expected \"finite\" or \"ball\"");
}

AnnouncePolicy parse_announce(const Json& j, const std::string& path,
                              const StateSpace& states) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "truth") return AnnounceTruth{};
    if (name == "chebyshev") return AnnounceChebyshev{};
    if (name == "sample") return AnnounceSample{};
    fail(path, "expected \"truth\", \"chebyshev\", \"sample\" or {\"fixed\": [...]}");
  }
  object(j, path);
  only_keys(j, path, {"fixed"});
  const std::string fp = join(path, "fixed");
  return AnnounceFixed{forecast(member(j, path, "fixed"), fp, states)};
}

ExpertSpec parse_expert(const Json& j, const std::string& path, const StateSpace& states) {
  object(j, path);
  only_keys(j, path, {"id", "kind", "theta", "announce"});
  ExpertSpec spec{string(member(j, path, "id"), join(path, "id")), Informed{},
                  AnnounceTruth{}};
  const std::string kind = string(member(j, path, "kind"), join(path, "kind"));
  const std::string tp = join(path, "theta");
  if (kind == "informed") {
    if (j.contains("theta")) fail(tp, "informed experts take no plausible set");
  } else if (kind == "uninformed" || kind == "partial") {
    PlausibleSet theta = parse_theta(member(j, path, "theta"), tp, states);
    if (kind == "partial") {
      if (theta.as_ball() == nullptr) fail(tp, "partially informed experts need a ball");
      spec.kind = PartiallyInformed{std::move(theta)};
    } else {
      spec.kind = Uninformed{std::move(theta)};
    }
    spec.announce = AnnounceChebyshev{};
  } else {
    fail(join(path, "kind"), "expected \"informed\", \"uninformed\" or \"partial\"");
  }
  if (const auto it = j.find("announce"); it != j.end()) {
    spec.announce = parse_announce(*it, join(path, "announce"), states);
  }
  return spec;
}

MarginPolicy parse_policy(const Json& j) {
  const std::string path = "contract.policy";
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "paper") return PaperEpsilon{};
    if (name == "safe") return SafeEpsilon{};
    fail(path, "expected \"paper\", \"safe\" or {\"fixed\": m}");
  }
  object(j, path);
  only_keys(j, path, {"fixed"});
  return FixedMargin{number(member(j, path, "fixed"), path + ".fixed")};
}

ContractConfig parse_contract(const Json& j, const StateSpace& states) {
  object(j, "contract");
  const std::string kind = string(member(j, "contract", "kind"), "contract.kind");
  if (kind == "prop1") {
    only_keys(j, "contract", {"kind", "policy", "witnesses"});
    MarginPolicy policy = parse_policy(member(j, "contract", "policy"));
    auto list = forecast_list(member(j, "contract", "witnesses"), "contract.witnesses", states);
    if (list.size() != 2) fail("contract.witnesses", "expected exactly 2 forecasts");
    return WitnessContractConfig{policy, {std::move(list[0]), std::move(list[1])}};
  }
  if (kind == "prop2") {
    only_keys(j, "contract", {"kind", "eps1", "eps2", "gamma"});
    return ComparativeContractConfig{number(member(j, "contract", "eps1"), "contract.eps1"),
                                     number(member(j, "contract", "eps2"), "contract.eps2"),
                                     number(member(j, "contract", "gamma"), "contract.gamma")};
  }
  fail("contract.kind", "expected \"prop1\" or \"prop2\"");
}

}  // namespace

Scenario parse_scenario(const Json& doc) {
  object(doc, "scenario");
  only_keys(doc, "", {"states", "nature", "experts", "contract", "trials", "seed"});
  StateSpace states = parse_states(member(doc, "", "states"));
  Nature nature = parse_nature(member(doc, "", "nature"), states);

  const Json& ej = member(doc, "", "experts");
  if (!ej.is_array()) fail("experts", "expected an array");
  std::vector<ExpertSpec> experts;
  for (std::size_t i = 0; i < ej.size(); ++i) {
    experts.push_back(parse_expert(ej[i], at("experts", i), states));
  }
  ContractConfig contract = parse_contract(member(doc, "", "contract"), states);

  const Json& tj = member(doc, "", "trials");
  if (!tj.is_number_integer()) fail("trials", "expected a positive integer");
  if (!tj.is_number_unsigned() || tj.get<std::uint64_t>() == 0) {
    fail("trials", "must be a positive integer");
  }
  Scenario sc{std::move(states),   std::move(nature),        std::move(experts),
              std::move(contract), tj.get<std::uint64_t>(),  unsigned_integer(member(doc, "", "seed"), "seed")};
  validate_scenario(sc);
  return sc;
}

Scenario parse_scenario_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    fail("scenario", std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("scenario", "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

Json forecast_to_json(const Forecast& f) {
  Json out = Json::array();
  for (double p : f.probs()) out.push_back(p);
  return out;
}

Json theta_to_json(const PlausibleSet& theta) {
  if (const auto* ball = theta.as_ball()) {
    return Json{{"kind", "ball"},
                {"center", forecast_to_json(ball->center)},
                {"radius", ball->radius}};
  }
  Json list = Json::array();
  for (const auto& f : theta.as_finite()->forecasts) list.push_back(forecast_to_json(f));
  return Json{{"kind", "finite"}, {"forecasts", std::move(list)}};
}

namespace {

Json announce_to_json(const AnnouncePolicy& a) {
  struct Visitor {
    Json operator()(const AnnounceTruth&) const { return "truth"; }
    Json operator()(const AnnounceChebyshev&) const { return "chebyshev"; }
    Json operator()(const AnnounceSample&) const { return "sample"; }
    Json operator()(const AnnounceFixed& f) const {
      return Json{{"fixed", forecast_to_json(f.forecast)}};
    }
  };
  return std::visit(Visitor{}, a);
}

Json expert_to_json(const ExpertSpec& e) {
  Json out{{"id", e.id}};
  if (const auto* u = std::get_if<Uninformed>(&e.kind)) {
    out["kind"] = "uninformed";
    out["theta"] = theta_to_json(u->theta);
  } else if (const auto* p = std::get_if<PartiallyInformed>(&e.kind)) {
    out["kind"] = "partial";
    out["theta"] = theta_to_json(p->ball);
  } else {
    out["kind"] = "informed";
  }
  out["announce"] = announce_to_json(e.announce);
  return out;
}

Json contract_to_json(const ContractConfig& cfg) {
  if (const auto* c = std::get_if<ComparativeContractConfig>(&cfg)) {
    return Json{{"kind", "prop2"}, {"eps1", c->eps1}, {"eps2", c->eps2}, {"gamma", c->gamma}};
  }
  const auto& w = std::get<WitnessContractConfig>(cfg);
  Json policy;
  if (const auto* m = std::get_if<FixedMargin>(&w.policy)) {
    policy = Json{{"fixed", m->value}};
  } else {
    policy = policy_name(w.policy);
  }
  return Json{{"kind", "prop1"},
              {"policy", std::move(policy)},
              {"witnesses", Json::array({forecast_to_json(w.witnesses.first),
                                         forecast_to_json(w.witnesses.second)})}};
}

}  // namespace

Json scenario_to_json(const Scenario& sc) {
  Json states = Json::array();
  for (const auto& label : sc.states.labels()) states.push_back(label);
  Json nature;
  if (const auto* f = std::get_if<FixedNature>(&sc.nature)) {
    nature = Json{{"kind", "fixed"}, {"forecast", forecast_to_json(f->truth)}};
  } else {
    nature = Json{{"kind", "uniform"}};
  }
  Json experts = Json::array();
  for (const auto& e : sc.experts) experts.push_back(expert_to_json(e));
  return Json{{"states", std::move(states)},
              {"nature", std::move(nature)},
              {"experts", std::move(experts)},
              {"contract", contract_to_json(sc.contract)},
              {"trials", sc.trials},
              {"seed", sc.seed}};
}

}  // namespace screening::cli
