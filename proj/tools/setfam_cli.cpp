// SPDX-License-Identifier: Apache-2.0
// setfam: experiment driver over the libsetfam C interface.

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "setfam/setfam.h"

using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1";

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A failed library call. Row-level failures of this kind become ERROR rows.
struct CallError : std::runtime_error {
  CallError(setfam_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
  setfam_status status;
};

void check(setfam_status status) {
  if (status != SETFAM_OK)
    throw CallError(status, std::string(setfam_status_name(status)) + ": " + setfam_last_error());
}

struct FunctionDeleter {
  void operator()(setfam_function* f) const { setfam_function_free(f); }
};
using Function = std::unique_ptr<setfam_function, FunctionDeleter>;

/// Takes ownership of a library string and parses it.
json take_json(char* text) {
  std::unique_ptr<char, void (*)(char*)> guard(text, setfam_string_free);
  return json::parse(text);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

using Row = std::vector<std::string>;

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void comment(const std::string& text) { out_ << "# " << text << "\r\n"; }
  void row(const Row& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << csv_field(fields[i]);
    out_ << "\r\n";
  }

 private:
  std::ostream& out_;
};

struct Globals {
  std::uint64_t seed = 0;
  int threads = 0;
  std::uint64_t cap = 0;
  std::string out;
  bool timing = false;
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SETFAM_THREADS")) {
    int v = 0;
    const auto res = std::from_chars(env, env + std::strlen(env), v);
    if (res.ec == std::errc() && v > 0) return v;
  }
  return 1;
}

/// Runs job(i) for i in [0, count) on `threads` workers; results land by index.
void parallel_rows(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) job(i);
  };
  const int extra = std::min<int>(threads, static_cast<int>(count)) - 1;
  std::vector<std::thread> pool;
  for (int t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

/// Output goes to --out when set, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw CliError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

Function load_function(const std::string& source, int n) {
  setfam_function* f = nullptr;
  if (std::filesystem::is_regular_file(source)) {
    std::ifstream in(source, std::ios::binary);
    std::string head(64, '\0');
    in.read(head.data(), static_cast<std::streamsize>(head.size()));
    head.resize(static_cast<std::size_t>(in.gcount()));
    if (head.find("setfam-instance") != std::string::npos || head.find("\"format\"") != std::string::npos) {
      std::ostringstream all;
      in.seekg(0);
      all << in.rdbuf();
      check(setfam_function_instance_json(all.str().c_str(), &f));
    } else {
      check(setfam_function_load(source.c_str(), &f));
    }
    return Function(f);
  }
  if (n <= 0) throw CliError("--n is required for builtin function '" + source + "'");
  check(setfam_function_builtin(source.c_str(), n, &f));
  return Function(f);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

/// "8:16" or "8,10,12" or "12".
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (const auto& s : split(text, ',')) out.push_back(std::stoi(s));
  if (out.empty()) throw CliError("empty integer list '" + text + "'");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(std::stod(s));
  if (out.empty()) throw CliError("empty number list '" + text + "'");
  return out;
}

std::string header_args(const std::vector<std::pair<std::string, std::string>>& args) {
  std::string out;
  for (const auto& [k, v] : args) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out;
}

void write_header(CsvWriter& csv, const std::string& command,
                  const std::vector<std::pair<std::string, std::string>>& args) {
  csv.comment(std::string("setfam ") + command + " schema=" + kSchemaVersion +
              " library=" + setfam_version());
  csv.comment(header_args(args));
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::string kind;
  int n = 0;
  double eps = 0.5;
  std::string bftt1;
  bool verify = true;
};

int cmd_gen(const Globals& g, const GenOptions& o) {
  setfam_function* raw = nullptr;
  check(setfam_function_instance(o.kind.c_str(), o.n, o.eps, g.seed, &raw));
  Function f(raw);
  char* text = nullptr;
  check(setfam_function_describe(f.get(), &text));
  const json doc = take_json(text);
  Output out(g.out);
  out.stream() << doc.dump() << "\n";

  if (!o.bftt1.empty()) check(setfam_function_write_bftt1(f.get(), o.bftt1.c_str()));

  if (o.verify) {
    const int arity = setfam_function_arity(f.get());
    if (o.kind == "talagrand") {
      const auto& t = doc.at("hidden").at("T");
      std::cerr << "terms: " << t.at("L") << ", term size: " << t.at("term_size") << "\n";
    } else if (arity <= 24) {
      check(setfam_function_check(f.get(), &text));
      const json c = take_json(text);
      if (o.kind.starts_with("uc"))
        std::cerr << "union-closed: " << (c.at("union_closed").get<bool>() ? "true" : "false") << "\n";
      else
        std::cerr << "intersecting: " << (c.at("intersecting").get<bool>() ? "true" : "false") << "\n";
      if (arity <= 20 && o.kind != "int-one-sided-no") {
        check(setfam_count_violations(f.get(), &text));
        const json v = take_json(text);
        std::cerr << "violations: " << v.dump() << "\n";
      }
    } else {
      std::cerr << "structural check skipped: arity " << arity << " exceeds 24\n";
    }
  }
  return 0;
}

// ---- test ------------------------------------------------------------------

struct TestOptions {
  std::string algs = "uc";
  std::string fn;
  int n = 0;
  double eps = 0.1;
  std::uint64_t trials = 1;
  std::uint64_t iterations = 0;
  double tau_constant = 1.0;
  bool all_rounds = false;
};

const Row kTestHeader = {"alg",     "fn",         "n",         "eps",         "trial",
                         "seed",    "verdict",    "queries",   "iterations_run",
                         "iterations_planned",    "successes", "round_success",
                         "certificate",           "error",     "wall_ms"};

int cmd_test(const Globals& g, const TestOptions& o) {
  const Function f = load_function(o.fn, o.n);
  const int arity = setfam_function_arity(f.get());
  const std::vector<std::string> algs = split(o.algs, ',');
  const std::size_t rows = algs.size() * o.trials;
  std::vector<Row> results(rows);
  parallel_rows(rows, resolve_threads(g.threads), [&](std::size_t i) {
    const std::string& alg = algs[i / o.trials];
    const std::uint64_t trial = i % o.trials;
    setfam_tester_config cfg;
    setfam_tester_config_init(&cfg);
    cfg.eps = o.eps;
    cfg.seed = g.seed + trial;
    cfg.max_iterations = o.iterations;
    cfg.enumeration_cap = g.cap;
    cfg.tau_constant = o.tau_constant;
    cfg.run_all_rounds = o.all_rounds ? 1 : 0;
    const auto start = std::chrono::steady_clock::now();
    Row row = {alg, o.fn, std::to_string(arity), format_double(o.eps), std::to_string(trial),
               std::to_string(cfg.seed)};
    char* text = nullptr;
    const setfam_status s = setfam_run_tester(f.get(), alg.c_str(), &cfg, &text);
    if (s == SETFAM_OK) {
      const json r = take_json(text);
      const auto run = r.at("iterations_run").get<std::uint64_t>();
      const auto successes = r.at("successes").get<std::uint64_t>();
      row.insert(row.end(),
                 {r.at("verdict").get<std::string>(), std::to_string(r.at("queries").get<std::uint64_t>()),
                  std::to_string(run), std::to_string(r.at("iterations_planned").get<std::uint64_t>()),
                  std::to_string(successes),
                  format_double(run ? static_cast<double>(successes) / static_cast<double>(run) : 0.0),
                  r.at("certificate").is_null() ? "" : r.at("certificate").dump(), ""});
    } else if (s == SETFAM_RESOURCE_LIMIT) {
      row.insert(row.end(), {"ERROR", "", "", "", "", "", "", setfam_last_error()});
    } else {
      throw CallError(s, setfam_last_error());
    }
    row.push_back(g.timing ? format_double(elapsed_ms(start)) : "0");
    results[i] = std::move(row);
  });

  Output out(g.out);
  CsvWriter csv(out.stream());
  write_header(csv, "test",
               {{"seed", std::to_string(g.seed)}, {"alg", o.algs}, {"fn", o.fn},
                {"n", std::to_string(arity)}, {"eps", format_double(o.eps)},
                {"trials", std::to_string(o.trials)}, {"iterations", std::to_string(o.iterations)},
                {"tau_constant", format_double(o.tau_constant)}, {"all_rounds", o.all_rounds ? "1" : "0"},
                {"cap", std::to_string(g.cap)}});
  csv.row(kTestHeader);
  for (const Row& r : results) csv.row(r);
  return 0;
}

// ---- dist ------------------------------------------------------------------

struct DistOptions {
  std::string prop = "int";
  std::string fn;
  int n = 0;
  std::string method = "auto";
};

int cmd_dist(const Globals& g, const DistOptions& o) {
  const Function f = load_function(o.fn, o.n);
  char* text = nullptr;
  check(setfam_distance(f.get(), o.prop.c_str(), o.method.c_str(), &text));
  json j = take_json(text);
  Output out(g.out);
  out.stream() << j.dump() << "\n";
  return 0;
}

// ---- sweep -----------------------------------------------------------------

struct SweepOptions {
  std::string what = "queries";
  std::string alg = "uc";
  std::string fn = "const0";
  std::string ns = "8:16";
  std::string eps = "0.25";
  std::uint64_t trials = 10;
  std::uint64_t iterations = 0;
  std::string pairs = "antipodal";
  int pair_count = 4;
};

int sweep_queries(const Globals& g, const SweepOptions& o, CsvWriter& csv) {
  const std::vector<int> ns = parse_int_list(o.ns);
  const double eps = parse_double_list(o.eps).front();
  std::vector<Row> rows(ns.size());
  std::vector<double> means(ns.size(), 0.0);
  parallel_rows(ns.size(), resolve_threads(g.threads), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const Function f = load_function(o.fn, ns[i]);
    std::uint64_t queries = 0, iterations = 0;
    double lo = INFINITY, hi = 0.0;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
      setfam_tester_config cfg;
      setfam_tester_config_init(&cfg);
      cfg.eps = eps;
      cfg.seed = g.seed + t;
      cfg.max_iterations = o.iterations;
      cfg.enumeration_cap = g.cap;
      char* text = nullptr;
      check(setfam_run_tester(f.get(), o.alg.c_str(), &cfg, &text));
      const json r = take_json(text);
      const auto q = r.at("queries").get<std::uint64_t>();
      const auto it = r.at("iterations_run").get<std::uint64_t>();
      queries += q;
      iterations += it;
      const double per = it ? static_cast<double>(q) / static_cast<double>(it) : 0.0;
      lo = std::min(lo, per);
      hi = std::max(hi, per);
    }
    means[i] = iterations ? static_cast<double>(queries) / static_cast<double>(iterations) : 0.0;
    rows[i] = {o.alg, o.fn, std::to_string(ns[i]), format_double(eps), std::to_string(o.trials),
               std::to_string(iterations), std::to_string(queries), format_double(means[i]),
               format_double(lo), format_double(hi),
               g.timing ? format_double(elapsed_ms(start)) : "0"};
  });
  csv.row({"alg", "fn", "n", "eps", "trials", "iterations", "queries", "mean_queries_per_iteration",
           "min_per_iteration", "max_per_iteration", "wall_ms"});
  for (const Row& r : rows) csv.row(r);

  // log(q) against sqrt(n ln(1/eps)) * ln n.
  if (ns.size() >= 2) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      x.push_back(std::sqrt(ns[i] * std::log(1.0 / eps)) * std::log(static_cast<double>(ns[i])));
      y.push_back(std::log(means[i]));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double worst = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::fabs(y[i] - (slope * x[i] + intercept)) / std::fabs(y[i]));
      if (i > 0 && means[i] <= means[i - 1]) monotone = false;
    }
    csv.comment("fit log(queries) = C * sqrt(n ln(1/eps)) * ln(n) + C'; C=" + format_double(slope) +
                " C'=" + format_double(intercept) + " max_relative_residual=" + format_double(worst) +
                " monotone=" + (monotone ? "true" : "false"));
  }
  return 0;
}

int sweep_unique_sat(const Globals& g, const SweepOptions& o, CsvWriter& csv) {
  const std::vector<int> ns = parse_int_list(o.ns);
  const double eps = parse_double_list(o.eps).front();
  std::vector<std::vector<Row>> rows(ns.size());
  parallel_rows(ns.size(), resolve_threads(g.threads), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    char* text = nullptr;
    check(setfam_unique_sat(ns[i], eps, o.trials, g.seed, &text));
    const json r = take_json(text);
    const std::string wall = g.timing ? format_double(elapsed_ms(start)) : "0";
    auto add = [&](const std::string& weight, const json& w) {
      rows[i].push_back({std::to_string(ns[i]), format_double(eps), weight,
                         std::to_string(w.at("trials").get<std::uint64_t>()),
                         std::to_string(w.at("hits").get<std::uint64_t>()),
                         format_double(w.at("estimate").get<double>()),
                         format_double(w.at("ci99")[0].get<double>()),
                         format_double(w.at("ci99")[1].get<double>()), wall});
    };
    for (const auto& w : r.at("per_weight")) add(std::to_string(w.at("weight").get<int>()), w);
    add("pooled", r.at("pooled"));
  });
  csv.row({"n", "eps", "weight", "trials", "hits", "estimate", "ci99_lo", "ci99_hi", "wall_ms"});
  for (const auto& group : rows)
    for (const Row& r : group) csv.row(r);
  return 0;
}

/// Query pairs are fixed per (n, pair index) from a simple SplitMix stream
/// seeded by the global seed.
std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int sweep_bad_event(const Globals& g, const SweepOptions& o, CsvWriter& csv) {
  const std::vector<int> ns = parse_int_list(o.ns);
  const double eps = parse_double_list(o.eps).front();
  const std::string kind = o.alg == "uc" ? "union-closed" : "intersect";
  if (o.pairs != "antipodal" && o.pairs != "random")
    throw CliError("--pairs must be antipodal or random");
  struct Job {
    int n;
    int pair;
    std::uint64_t x, y;
  };
  std::vector<Job> jobs;
  for (int n : ns) {
    std::uint64_t state = g.seed ^ (static_cast<std::uint64_t>(n) << 32);
    const std::uint64_t mask = n >= 64 ? ~0ULL : (1ULL << n) - 1;
    for (int p = 0; p < o.pair_count; ++p) {
      const std::uint64_t x = splitmix(state) & mask;
      const std::uint64_t y = o.pairs == "antipodal" ? (~x & mask) : (splitmix(state) & mask);
      jobs.push_back({n, p, x, y});
    }
  }
  std::vector<Row> rows(jobs.size());
  parallel_rows(jobs.size(), resolve_threads(g.threads), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const Job& job = jobs[i];
    const std::string queries = json::array({job.x, job.y}).dump();
    char* text = nullptr;
    check(setfam_bad_event(kind.c_str(), queries.c_str(), job.n, eps, o.trials, g.seed + i, &text));
    const json r = take_json(text);
    const double est = r.at("estimate").get<double>();
    const double sigma = r.at("sigma").get<double>();
    const bool has_bound = r.contains("bound");
    const double bound = has_bound ? r.at("bound").get<double>() : 0.0;
    rows[i] = {kind, o.pairs, std::to_string(job.n), format_double(eps), std::to_string(job.pair),
               std::to_string(job.x), std::to_string(job.y), std::to_string(o.trials),
               std::to_string(r.at("hits").get<std::uint64_t>()), format_double(est),
               format_double(sigma), has_bound ? format_double(bound) : "",
               has_bound ? (est <= bound + 3 * sigma ? "true" : "false") : "",
               g.timing ? format_double(elapsed_ms(start)) : "0"};
  });
  csv.row({"kind", "pairs", "n", "eps", "pair", "x", "y", "trials", "hits", "estimate", "sigma",
           "bound", "within_bound_3sigma", "wall_ms"});
  for (const Row& r : rows) csv.row(r);
  return 0;
}

int sweep_reject(const Globals& g, const SweepOptions& o, CsvWriter& csv) {
  const std::vector<int> ns = parse_int_list(o.ns);
  const std::vector<double> epss = parse_double_list(o.eps);
  struct Job {
    int n;
    double eps;
  };
  std::vector<Job> jobs;
  for (int n : ns)
    for (double e : epss) jobs.push_back({n, e});
  std::vector<Row> rows(jobs.size());
  parallel_rows(jobs.size(), resolve_threads(g.threads), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const Function f = load_function(o.fn, jobs[i].n);
    std::uint64_t rejects = 0, queries = 0, errors = 0;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
      setfam_tester_config cfg;
      setfam_tester_config_init(&cfg);
      cfg.eps = jobs[i].eps;
      cfg.seed = g.seed + t;
      cfg.max_iterations = o.iterations;
      cfg.enumeration_cap = g.cap;
      char* text = nullptr;
      const setfam_status s = setfam_run_tester(f.get(), o.alg.c_str(), &cfg, &text);
      if (s == SETFAM_RESOURCE_LIMIT) {
        ++errors;
        continue;
      }
      check(s);
      const json r = take_json(text);
      if (r.at("verdict") == "reject") ++rejects;
      queries += r.at("queries").get<std::uint64_t>();
    }
    const std::uint64_t done = o.trials - errors;
    rows[i] = {o.alg, o.fn, std::to_string(jobs[i].n), format_double(jobs[i].eps),
               std::to_string(o.trials), std::to_string(errors), std::to_string(rejects),
               format_double(done ? static_cast<double>(rejects) / static_cast<double>(done) : 0.0),
               format_double(done ? static_cast<double>(queries) / static_cast<double>(done) : 0.0),
               g.timing ? format_double(elapsed_ms(start)) : "0"};
  });
  csv.row({"alg", "fn", "n", "eps", "trials", "errors", "rejects", "reject_fraction", "mean_queries",
           "wall_ms"});
  for (const Row& r : rows) csv.row(r);
  return 0;
}

int cmd_sweep(const Globals& g, const SweepOptions& o) {
  Output out(g.out);
  CsvWriter csv(out.stream());
  write_header(csv, "sweep",
               {{"seed", std::to_string(g.seed)}, {"what", o.what}, {"alg", o.alg}, {"fn", o.fn},
                {"n", o.ns}, {"eps", o.eps}, {"trials", std::to_string(o.trials)},
                {"iterations", std::to_string(o.iterations)}, {"pairs", o.pairs},
                {"pair_count", std::to_string(o.pair_count)}, {"cap", std::to_string(g.cap)}});
  if (o.what == "queries") return sweep_queries(g, o, csv);
  if (o.what == "unique-sat") return sweep_unique_sat(g, o, csv);
  if (o.what == "bad-event") return sweep_bad_event(g, o, csv);
  if (o.what == "reject") return sweep_reject(g, o, csv);
  throw CliError("unknown sweep '" + o.what + "'");
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  std::string fn;
  int n = 0;
  std::string csv;
};

int cmd_verify(const Globals& g, const VerifyOptions& o) {
  const Function f = load_function(o.fn, o.n);
  Output out(g.out);
  if (o.csv.empty()) {
    char* text = nullptr;
    check(setfam_function_check(f.get(), &text));
    out.stream() << take_json(text).dump() << "\n";
    return 0;
  }
  std::ifstream in(o.csv, std::ios::binary);
  if (!in) throw CliError("cannot open " + o.csv);
  std::string line;
  std::optional<std::size_t> column;
  std::uint64_t checked = 0, valid = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto fields = parse_csv_line(line);
    if (!column) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == "certificate") column = i;
      if (!column) throw CliError("CSV has no certificate column");
      continue;
    }
    if (*column >= fields.size() || fields[*column].empty()) continue;
    int ok = 0;
    check(setfam_verify_certificate(f.get(), fields[*column].c_str(), &ok));
    ++checked;
    if (ok) ++valid;
  }
  out.stream() << json{{"certificates", checked}, {"verified", valid}}.dump() << "\n";
  return valid == checked ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property testing experiments for intersecting and union-closed set systems"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Worker threads (default: SETFAM_THREADS or 1)");
  app.add_option("--cap", g.cap, "Enumeration cap for witness checks (0 = library default)");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_flag("--timing", g.timing, "Fill the wall_ms columns (output is then not reproducible)");
  app.set_version_flag("--version", std::string(setfam_version()));

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a hard instance");
  gen_cmd->add_option("--kind", gen.kind, "talagrand|int-yes|int-no|int-one-sided-no|uc-yes|uc-no")->required();
  gen_cmd->add_option("--n", gen.n, "Arity parameter")->required();
  gen_cmd->add_option("--eps", gen.eps, "Distance parameter");
  gen_cmd->add_option("--bftt1", gen.bftt1, "Also write the truth table (arity <= 24)");
  gen_cmd->add_flag("!--no-verify", gen.verify, "Skip the structural check");

  TestOptions test;
  auto* test_cmd = app.add_subcommand("test", "Run testers, one CSV row per run");
  test_cmd->add_option("--alg", test.algs, "uc|int|uc-triple|int-pair, comma separated");
  test_cmd->add_option("--fn", test.fn, "Builtin name, truth-table file or instance JSON")->required();
  test_cmd->add_option("--n", test.n, "Arity for builtin functions");
  test_cmd->add_option("--eps", test.eps, "Distance parameter");
  test_cmd->add_option("--trials", test.trials, "Runs per algorithm; run t uses seed + t");
  test_cmd->add_option("--iterations", test.iterations, "Override the iteration / round count");
  test_cmd->add_option("--tau-constant", test.tau_constant, "C in the triple/pair tester round count");
  test_cmd->add_flag("--all-rounds", test.all_rounds, "Do not stop at the first rejection");

  DistOptions dist;
  auto* dist_cmd = app.add_subcommand("dist", "Distance to a property");
  dist_cmd->add_option("--prop", dist.prop, "int|uc");
  dist_cmd->add_option("--fn", dist.fn, "Builtin name, truth-table file or instance JSON")->required();
  dist_cmd->add_option("--n", dist.n, "Arity for builtin functions");
  dist_cmd->add_option("--method", dist.method, "auto|exact|bounds");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweeps");
  sweep_cmd->add_option("what", sweep.what, "queries|unique-sat|bad-event|reject")->required();
  sweep_cmd->add_option("--alg", sweep.alg, "Tester (queries, reject) or uc|int (bad-event)");
  sweep_cmd->add_option("--fn", sweep.fn, "Function source for tester sweeps");
  sweep_cmd->add_option("--n", sweep.ns, "Arities: lo:hi or a,b,c");
  sweep_cmd->add_option("--eps", sweep.eps, "eps, or a comma list for reject");
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per grid point");
  sweep_cmd->add_option("--iterations", sweep.iterations, "Override the tester iteration count");
  sweep_cmd->add_option("--pairs", sweep.pairs, "antipodal|random (bad-event)");
  sweep_cmd->add_option("--pair-count", sweep.pair_count, "Query pairs per n (bad-event)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a function, or re-verify CSV certificates");
  verify_cmd->add_option("--fn", verify.fn, "Builtin name, truth-table file or instance JSON")->required();
  verify_cmd->add_option("--n", verify.n, "Arity for builtin functions");
  verify_cmd->add_option("--csv", verify.csv, "CSV produced by 'test'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen_cmd) return cmd_gen(g, gen);
    if (*test_cmd) return cmd_test(g, test);
    if (*dist_cmd) return cmd_dist(g, dist);
    if (*sweep_cmd) return cmd_sweep(g, sweep);
    if (*verify_cmd) return cmd_verify(g, verify);
  } catch (const CallError& e) {
    std::cerr << "setfam: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "setfam: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
