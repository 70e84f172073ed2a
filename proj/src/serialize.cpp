// SPDX-License-Identifier: Apache-2.0
#include "serialize.hpp"

#include <charconv>

namespace setfam::serialize {

namespace {

std::vector<std::uint64_t> indices(const std::vector<Point>& points) {
  std::vector<std::uint64_t> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(p.bits());
  return out;
}

Point point_at(const json& j, const char* key, int arity) {
  if (!j.contains(key)) throw ParseError(std::string("certificate is missing '") + key + "'");
  return Point(j.at(key).get<std::uint64_t>(), arity);
}

std::vector<std::uint64_t> mask_positions(std::uint64_t mask) {
  std::vector<std::uint64_t> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1U) out.push_back(static_cast<std::uint64_t>(i) + 1);
  return out;
}

}  // namespace

json to_json(const Certificate& cert) {
  struct Visitor {
    json operator()(const IViolatingPair& p) const {
      return {{"type", "i-pair"}, {"x", p.x.bits()}, {"y", p.y.bits()}};
    }
    json operator()(const UcViolatingTuple& t) const {
      return {{"type", "uc-tuple"}, {"members", indices(t.members)}, {"end", t.end.bits()}};
    }
    json operator()(const TripleCertificate& t) const {
      return {{"type", "triple"}, {"y1", t.y1.bits()}, {"y2", t.y2.bits()}, {"z", t.z.bits()}};
    }
  };
  return std::visit(Visitor{}, cert);
}

Certificate certificate_from_json(const json& j, int arity) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "i-pair") return IViolatingPair{point_at(j, "x", arity), point_at(j, "y", arity)};
    if (type == "triple")
      return TripleCertificate{point_at(j, "y1", arity), point_at(j, "y2", arity),
                               point_at(j, "z", arity)};
    if (type == "uc-tuple") {
      UcViolatingTuple t{{}, point_at(j, "end", arity)};
      for (const auto& m : j.at("members")) t.members.emplace_back(m.get<std::uint64_t>(), arity);
      return t;
    }
    throw ParseError("unknown certificate type '" + type + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

json to_json(const TesterReport& report) {
  json j = {{"verdict", to_string(report.verdict)},
            {"queries", report.queries},
            {"iterations_run", report.iterations_run},
            {"iterations_planned", report.iterations_planned},
            {"successes", report.successes},
            {"seed", report.seed}};
  j["certificate"] = report.certificate ? to_json(*report.certificate) : json(nullptr);
  return j;
}

json to_json(const DistanceResult& result) {
  json j = {{"method", to_string(result.method)},
            {"value", result.value.to_string()},
            {"numerator", result.value.numerator},
            {"denominator", result.value.denominator}};
  if (result.upper) j["upper"] = result.upper->to_string();
  if (result.certificate) {
    j["certificate"] = {{"n", result.certificate->arity()}, {"ones", result.certificate->ones()}};
  }
  return j;
}

json to_json(const TalagrandDnf& dnf) {
  json terms = json::array();
  for (std::uint64_t t : dnf.terms()) terms.push_back(mask_positions(t));
  return {{"arity", dnf.arity()}, {"term_size", dnf.term_size()}, {"L", dnf.size()},
          {"terms", std::move(terms)}};
}

json instance_spec_json(const InstanceSpec& spec) {
  return {{"format", "setfam-instance"}, {"version", 1},       {"kind", to_string(spec.kind)},
          {"n", spec.n},                 {"eps", spec.eps},     {"seed", spec.seed}};
}

InstanceSpec instance_spec_from_json(const json& j) {
  try {
    if (j.value("format", std::string()) != "setfam-instance")
      throw ParseError("not a setfam instance document");
    if (j.at("version").get<int>() != 1) throw ParseError("unsupported instance version");
    InstanceSpec spec;
    spec.kind = parse_instance_kind(j.at("kind").get<std::string>());
    spec.n = j.at("n").get<int>();
    spec.eps = j.at("eps").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
}

json describe(const InstanceSpec& spec, const IntersectInstance& inst) {
  json j = instance_spec_json(spec);
  json hidden = {{"arity", inst.arity()},
                 {"a", inst.action_size()},
                 {"A", mask_positions(inst.action_mask())}};
  if (inst.kind() != InstanceKind::int_one_sided_no) {
    hidden["T"] = to_json(inst.dnf());
    hidden["b"] = inst.bits();
  }
  j["hidden"] = std::move(hidden);
  return j;
}

json describe(const InstanceSpec& spec, const UcInstance& inst) {
  json j = instance_spec_json(spec);
  json strings = json::array();
  for (std::uint64_t s : inst.strings()) strings.push_back(mask_positions(s));
  json hidden = {{"arity", inst.arity()},
                 {"a", inst.action_size()},
                 {"A", mask_positions(inst.action_mask())},
                 {"T", to_json(inst.dnf())}};
  if (inst.kind() == InstanceKind::uc_yes) {
    hidden["s"] = std::move(strings);
  } else {
    hidden["r"] = std::move(strings);
    hidden["b"] = inst.bits();
  }
  j["hidden"] = std::move(hidden);
  return j;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace setfam::serialize
