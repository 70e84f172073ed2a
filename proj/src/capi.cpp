// SPDX-License-Identifier: Apache-2.0
#include "setfam/setfam.h"

#include <charconv>
#include <cstring>
#include <mutex>
#include <optional>
#include <string>

#include "serialize.hpp"
#include "setfam/distance.hpp"
#include "setfam/hardness.hpp"
#include "setfam/io.hpp"
#include "setfam/testers.hpp"

#ifndef SETFAM_VERSION
#define SETFAM_VERSION "0.0.0"
#endif

using setfam::serialize::json;

struct setfam_function {
  setfam::FunctionPtr fn;
  json source;
  std::optional<setfam::InstanceSpec> spec;
  std::shared_ptr<const setfam::IntersectInstance> int_instance;
  std::shared_ptr<const setfam::UcInstance> uc_instance;
  std::shared_ptr<const setfam::TalagrandDnf> dnf;

  mutable std::once_flag table_once;
  mutable std::shared_ptr<const setfam::TruthTable> table;

  const setfam::TruthTable& materialize() const {
    std::call_once(table_once, [this] {
      if (auto t = std::dynamic_pointer_cast<const setfam::TruthTable>(fn)) {
        table = std::move(t);
        return;
      }
      if (fn->arity() > setfam::kMaxTableArity)
        throw setfam::ResourceLimit("arity " + std::to_string(fn->arity()) +
                                    " is too large to materialize (limit 24)");
      table = std::make_shared<const setfam::TruthTable>(setfam::TruthTable::from_function(*fn));
    });
    return *table;
  }
};

namespace {

thread_local std::string g_last_error;

template <class Body>
setfam_status guarded(Body&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return SETFAM_OK;
  } catch (const setfam::InvalidArgument& e) {
    g_last_error = e.what();
    return SETFAM_INVALID_ARGUMENT;
  } catch (const setfam::ResourceLimit& e) {
    g_last_error = e.what();
    return SETFAM_RESOURCE_LIMIT;
  } catch (const setfam::ParseError& e) {
    g_last_error = e.what();
    return SETFAM_PARSE_ERROR;
  } catch (const setfam::IoError& e) {
    g_last_error = e.what();
    return SETFAM_IO_ERROR;
  } catch (const json::exception& e) {
    g_last_error = std::string("JSON: ") + e.what();
    return SETFAM_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SETFAM_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SETFAM_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return SETFAM_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw setfam::InvalidArgument(std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) {
  require(out, "output pointer");
  *out = dup_string(j.dump());
}

int parse_int(std::string_view text, const char* what) {
  int value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw setfam::InvalidArgument(std::string("malformed ") + what + " '" + std::string(text) + "'");
  return value;
}

setfam::FunctionPtr parse_ones(std::string_view body, int n) {
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw setfam::InvalidArgument("ones list must look like ones:{01,10}");
  body = body.substr(1, body.size() - 2);
  setfam::TruthTable t(n);
  while (!body.empty()) {
    const std::size_t comma = body.find(',');
    std::string_view token = body.substr(0, comma);
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty()) throw setfam::InvalidArgument("empty entry in ones list");
    const bool bit_string = static_cast<int>(token.size()) == n &&
                            token.find_first_not_of("01") == std::string_view::npos;
    std::uint64_t index = 0;
    if (bit_string) {
      index = setfam::Point::parse(token).bits();
    } else {
      const auto res = std::from_chars(token.data(), token.data() + token.size(), index);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size() || index >= t.size())
        throw setfam::InvalidArgument("ones entry '" + std::string(token) +
                                      "' is neither an n-bit string nor an index below 2^n");
    }
    t.set(index, true);
  }
  return std::make_shared<const setfam::TruthTable>(std::move(t));
}

setfam::FunctionPtr builtin(const std::string& name, int n) {
  if (name == "const0") return setfam::make_constant(n, false);
  if (name == "const1") return setfam::make_constant(n, true);
  if (name == "majority") return setfam::make_majority(n);
  if (name.starts_with("dictator-"))
    return setfam::make_dictator(n, parse_int(std::string_view(name).substr(9), "dictator index"));
  if (name.starts_with("ones:")) return parse_ones(std::string_view(name).substr(5), n);
  throw setfam::InvalidArgument("unknown builtin function '" + name + "'");
}

setfam_function* make_instance(const setfam::InstanceSpec& spec) {
  auto handle = std::make_unique<setfam_function>();
  handle->spec = spec;
  switch (spec.kind) {
    case setfam::InstanceKind::talagrand: {
      setfam::CounterRng rng(spec.seed);
      auto dnf = std::make_shared<const setfam::TalagrandDnf>(setfam::sample_talagrand(spec.n, spec.eps, rng));
      handle->fn = std::make_shared<setfam::LambdaFunction>(
          spec.n, [dnf](std::uint64_t x) { return dnf->eval(x); });
      handle->dnf = std::move(dnf);
      break;
    }
    case setfam::InstanceKind::int_yes:
    case setfam::InstanceKind::int_no:
    case setfam::InstanceKind::int_one_sided_no: {
      auto inst = std::make_shared<const setfam::IntersectInstance>(setfam::IntersectInstance::build(spec));
      handle->fn = inst;
      handle->int_instance = std::move(inst);
      break;
    }
    case setfam::InstanceKind::uc_yes:
    case setfam::InstanceKind::uc_no: {
      auto inst = std::make_shared<const setfam::UcInstance>(setfam::UcInstance::build(spec));
      handle->fn = inst;
      handle->uc_instance = std::move(inst);
      break;
    }
  }
  handle->source = setfam::serialize::instance_spec_json(spec);
  return handle.release();
}

json interval_json(const setfam::stats::Interval& ci) { return {ci.lo, ci.hi}; }

}  // namespace

extern "C" {

const char* setfam_version(void) { return SETFAM_VERSION; }

const char* setfam_status_name(setfam_status status) {
  switch (status) {
    case SETFAM_OK: return "ok";
    case SETFAM_INVALID_ARGUMENT: return "invalid-argument";
    case SETFAM_RESOURCE_LIMIT: return "resource-limit";
    case SETFAM_PARSE_ERROR: return "parse-error";
    case SETFAM_IO_ERROR: return "io-error";
    case SETFAM_INTERNAL_ERROR: return "internal-error";
  }
  return "unknown";
}

const char* setfam_last_error(void) { return g_last_error.c_str(); }

void setfam_string_free(char* text) { delete[] text; }

setfam_status setfam_function_builtin(const char* name, int n, setfam_function** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "output pointer");
    auto handle = std::make_unique<setfam_function>();
    handle->fn = builtin(name, n);
    handle->source = {{"builtin", name}, {"n", n}};
    *out = handle.release();
  });
}

setfam_status setfam_function_load(const char* path, setfam_function** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    auto handle = std::make_unique<setfam_function>();
    handle->fn = std::make_shared<const setfam::TruthTable>(setfam::load_table(path));
    handle->source = {{"file", path}};
    *out = handle.release();
  });
}

setfam_status setfam_function_instance(const char* kind, int n, double eps, uint64_t seed,
                                       setfam_function** out) {
  return guarded([&] {
    require(kind, "kind");
    require(out, "output pointer");
    *out = make_instance(setfam::InstanceSpec{setfam::parse_instance_kind(kind), n, eps, seed});
  });
}

setfam_status setfam_function_instance_json(const char* text, setfam_function** out) {
  return guarded([&] {
    require(text, "json");
    require(out, "output pointer");
    *out = make_instance(setfam::serialize::instance_spec_from_json(json::parse(text)));
  });
}

setfam_status setfam_function_truncate(const setfam_function* f, int uc, double eps,
                                       setfam_function** out) {
  return guarded([&] {
    require(f, "function");
    require(out, "output pointer");
    auto handle = std::make_unique<setfam_function>();
    handle->fn = uc ? setfam::truncate_uc(f->fn, eps) : setfam::truncate_int(f->fn, eps);
    handle->source = {{uc ? "truncate_uc" : "truncate_int", f->source}, {"eps", eps}};
    *out = handle.release();
  });
}

void setfam_function_free(setfam_function* f) { delete f; }

int setfam_function_arity(const setfam_function* f) { return f ? f->fn->arity() : -1; }

setfam_status setfam_function_eval(const setfam_function* f, uint64_t point, int* out) {
  return guarded([&] {
    require(f, "function");
    require(out, "output pointer");
    *out = f->fn->eval(setfam::Point(point, f->fn->arity())) ? 1 : 0;
  });
}

setfam_status setfam_function_describe(const setfam_function* f, char** json_out) {
  return guarded([&] {
    require(f, "function");
    json j;
    if (f->int_instance)
      j = setfam::serialize::describe(*f->spec, *f->int_instance);
    else if (f->uc_instance)
      j = setfam::serialize::describe(*f->spec, *f->uc_instance);
    else if (f->dnf) {
      j = f->source;
      j["hidden"] = {{"arity", f->dnf->arity()}, {"T", setfam::serialize::to_json(*f->dnf)}};
    } else
      j = {{"source", f->source}, {"arity", f->fn->arity()}};
    emit(j, json_out);
  });
}

setfam_status setfam_function_write_bftt1(const setfam_function* f, const char* path) {
  return guarded([&] {
    require(f, "function");
    require(path, "path");
    setfam::write_file(path, setfam::encode_bftt1(f->materialize()));
  });
}

setfam_status setfam_function_check(const setfam_function* f, char** json_out) {
  return guarded([&] {
    require(f, "function");
    const setfam::TruthTable& t = f->materialize();
    emit({{"n", t.arity()},
          {"ones", t.count_ones()},
          {"union_closed", setfam::is_union_closed(t)},
          {"intersecting", setfam::is_intersecting(t)}},
         json_out);
  });
}

void setfam_tester_config_init(setfam_tester_config* cfg) {
  if (!cfg) return;
  cfg->eps = 0.1;
  cfg->seed = 0;
  cfg->max_iterations = 0;
  cfg->enumeration_cap = 0;
  cfg->tau_constant = 1.0;
  cfg->run_all_rounds = 0;
}

setfam_status setfam_run_tester(const setfam_function* f, const char* algorithm,
                                const setfam_tester_config* cfg, char** json_out) {
  return guarded([&] {
    require(f, "function");
    require(algorithm, "algorithm");
    require(cfg, "config");
    setfam::TesterConfig c;
    c.eps = cfg->eps;
    c.seed = cfg->seed;
    if (cfg->max_iterations) c.max_iterations = cfg->max_iterations;
    if (cfg->enumeration_cap) c.enumeration_cap = cfg->enumeration_cap;
    c.tau_constant = cfg->tau_constant;
    c.run_all_rounds = cfg->run_all_rounds != 0;
    const std::string alg = algorithm;
    const setfam::BooleanFunction& fn = *f->fn;
    setfam::TesterReport report;
    if (alg == "uc")
      report = setfam::uc_tester(fn, c);
    else if (alg == "int")
      report = setfam::int_tester(fn, c);
    else if (alg == "uc-triple")
      report = setfam::uc_triple_tester(fn, c);
    else if (alg == "int-pair")
      report = setfam::int_pair_tester(fn, c);
    else
      throw setfam::InvalidArgument("unknown algorithm '" + alg + "'");
    json j = setfam::serialize::to_json(report);
    j["algorithm"] = alg;
    j["n"] = fn.arity();
    j["eps"] = c.eps;
    if (report.certificate) j["certificate_verified"] = setfam::verify_certificate(fn, *report.certificate);
    emit(j, json_out);
  });
}

setfam_status setfam_verify_certificate(const setfam_function* f, const char* certificate_json,
                                        int* valid) {
  return guarded([&] {
    require(f, "function");
    require(certificate_json, "certificate");
    require(valid, "output pointer");
    const setfam::Certificate cert =
        setfam::serialize::certificate_from_json(json::parse(certificate_json), f->fn->arity());
    *valid = setfam::verify_certificate(*f->fn, cert) ? 1 : 0;
  });
}

setfam_status setfam_distance(const setfam_function* f, const char* property, const char* method,
                              char** json_out) {
  return guarded([&] {
    require(f, "function");
    require(property, "property");
    require(method, "method");
    const std::string prop = property;
    const std::string how = method;
    if (how != "auto" && how != "exact" && how != "bounds")
      throw setfam::InvalidArgument("method must be auto, exact or bounds");
    const setfam::TruthTable& t = f->materialize();
    setfam::DistanceResult result;
    if (prop == "int") {
      if (how == "bounds" || (how == "auto" && t.arity() > 16)) {
        result = setfam::dist_int_bounds(t);
      } else if (how == "exact") {
        result = setfam::dist_int_exact(t);
      } else {
        try {
          result = setfam::dist_int_exact(t);
        } catch (const setfam::ResourceLimit&) {
          result = setfam::dist_int_bounds(t);
        }
      }
    } else if (prop == "uc") {
      if (how == "exact" || (how == "auto" && t.arity() <= 4))
        result = setfam::dist_uc_exact(t);
      else
        result = setfam::dist_uc_bounds(t);
    } else {
      throw setfam::InvalidArgument("property must be int or uc");
    }
    json j = setfam::serialize::to_json(result);
    j["property"] = prop;
    j["n"] = t.arity();
    emit(j, json_out);
  });
}

setfam_status setfam_count_violations(const setfam_function* f, char** json_out) {
  return guarded([&] {
    require(f, "function");
    json j;
    if (f->int_instance) {
      const auto count = setfam::count_int_no_violations(*f->int_instance);
      const int arity = f->int_instance->arity();
      j = {{"kind", setfam::to_string(f->int_instance->kind())},
           {"arity", arity},
           {"pairs", count.pairs},
           {"active_controls", count.active_controls},
           {"distance_lb", setfam::ExactFraction{count.pairs, std::uint64_t{1} << arity}.to_string()}};
    } else if (f->uc_instance) {
      const auto count = setfam::count_uc_no_violations(*f->uc_instance);
      const int arity = f->uc_instance->arity();
      j = {{"kind", setfam::to_string(f->uc_instance->kind())},
           {"arity", arity},
           {"triples", count.triples},
           {"good_strings", count.good_strings},
           {"bad_strings", count.bad_strings},
           {"distance_lb", setfam::ExactFraction{count.triples, std::uint64_t{1} << arity}.to_string()}};
    } else {
      throw setfam::InvalidArgument("violation counting needs an int or uc instance");
    }
    emit(j, json_out);
  });
}

setfam_status setfam_unique_sat(int n, double eps, uint64_t trials, uint64_t seed, char** json_out) {
  return guarded([&] {
    const auto report = setfam::unique_sat_probability(n, eps, trials, seed);
    const auto window = setfam::unique_sat_window(n, eps);
    json rows = json::array();
    for (const auto& w : report.per_weight)
      rows.push_back({{"weight", w.weight}, {"hits", w.hits}, {"trials", w.trials},
                      {"estimate", w.estimate}, {"ci99", interval_json(w.ci)}});
    emit({{"n", n},
          {"eps", eps},
          {"trials", trials},
          {"seed", seed},
          {"window", {window.first, window.second}},
          {"per_weight", std::move(rows)},
          {"pooled", {{"hits", report.pooled.hits}, {"trials", report.pooled.trials},
                      {"estimate", report.pooled.estimate}, {"ci99", interval_json(report.pooled.ci)}}}},
         json_out);
  });
}

setfam_status setfam_bad_event(const char* kind, const char* queries_json, int n, double eps,
                               uint64_t trials, uint64_t seed, char** json_out) {
  return guarded([&] {
    require(kind, "kind");
    require(queries_json, "queries");
    const std::string k = kind;
    setfam::BadEventKind bk;
    if (k == "intersect")
      bk = setfam::BadEventKind::intersect;
    else if (k == "union-closed")
      bk = setfam::BadEventKind::union_closed;
    else
      throw setfam::InvalidArgument("bad-event kind must be intersect or union-closed");
    std::vector<setfam::Point> queries;
    for (const auto& q : json::parse(queries_json)) queries.emplace_back(q.get<std::uint64_t>(), n);
    const auto report = setfam::estimate_bad_probability(bk, queries, n, eps, trials, seed);
    json j = {{"kind", k},          {"n", n},
              {"eps", eps},         {"q", queries.size()},
              {"trials", trials},   {"seed", seed},
              {"hits", report.hits}, {"estimate", report.estimate},
              {"sigma", report.sigma}, {"ci99", interval_json(report.ci)}};
    if (bk == setfam::BadEventKind::intersect)
      j["bound"] = setfam::bad_event_bound(n, eps, queries.size());
    emit(j, json_out);
  });
}

}  // extern "C"
