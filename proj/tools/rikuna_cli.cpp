#include <cstdint>
#include <cstdlib>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rikuna/rikuna.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitMismatch = 4;

struct Outcome {
  rk_status status = RK_OK;
  std::string error;
  json report;
};

int exit_code(rk_status s) {
  switch (s) {
    case RK_OK: return kExitOk;
    case RK_ERR_PARAMETER: return kExitUsage;
    case RK_ERR_PRECONDITION:
    case RK_ERR_DOMAIN: return kExitPrecondition;
    default: return kExitFailure;
  }
}

template <typename Call>
Outcome run(Call&& call) {
  Outcome o;
  rk_report* rep = nullptr;
  o.status = call(&rep);
  if (o.status != RK_OK) {
    o.error = rk_last_error();
    return o;
  }
  o.report = json::parse(rk_report_json(rep));
  rk_report_free(rep);
  return o;
}

std::vector<std::string> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw CLI::ValidationError("--t-range", "expected a..b");
  long long a = 0, b = 0;
  try {
    a = std::stoll(text.substr(0, dots));
    b = std::stoll(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--t-range", "bounds must be integers");
  }
  if (b < a) throw CLI::ValidationError("--t-range", "empty range");
  if (b - a > 100000) throw CLI::ValidationError("--t-range", "range too long");
  std::vector<std::string> out;
  for (long long t = a; t <= b; ++t) out.push_back(std::to_string(t));
  return out;
}

// Runs fn over every t on a small pool and keeps the input order.
template <typename Fn>
std::vector<Outcome> sweep(const std::vector<std::string>& ts, Fn fn) {
  std::vector<Outcome> out(ts.size());
  unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < ts.size(); i += workers) out[i] = fn(ts[i]);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

struct Envelope {
  std::string command;
  json parameters = json::object();
  json results;
  json warnings = json::array();
  int exit_status = kExitOk;
  std::optional<std::string> error;

  int emit() const {
    json j{{"command", command},
           {"parameters", parameters},
           {"results", results},
           {"warnings", warnings},
           {"exit_status", exit_status}};
    if (error) {
      j["error"] = *error;
      std::cerr << "rikuna " << command << ": " << *error << "\n";
    }
    std::cout << j.dump(2) << "\n";
    return exit_status;
  }
};

// Moves report warnings into the envelope and records failures.
json absorb(Envelope& env, Outcome& o, const std::string& prefix = "") {
  if (o.status != RK_OK) {
    env.exit_status = std::max(env.exit_status, exit_code(o.status));
    if (!env.error) env.error = prefix + o.error;
    return json{{"error", o.error}, {"status", rk_status_name(o.status)}};
  }
  for (const auto& w : o.report["warnings"]) env.warnings.push_back(prefix + w.get<std::string>());
  o.report.erase("warnings");
  return o.report;
}

// One value of t or a sweep over --t-range.
template <typename Fn>
void single_or_sweep(Envelope& env, const std::optional<std::string>& t,
                     const std::optional<std::string>& range, Fn fn) {
  if (range) {
    std::vector<std::string> ts = parse_range(*range);
    std::vector<Outcome> outs = sweep(ts, fn);
    env.results = json::array();
    for (std::size_t i = 0; i < ts.size(); ++i)
      env.results.push_back(absorb(env, outs[i], "t=" + ts[i] + ": "));
  } else {
    Outcome o = fn(*t);
    env.results = absorb(env, o);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rikuna polynomials: construction, indices, discriminants and splitting"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Seed for finite-field factorization (default fixed)");

  int n = 1;
  std::optional<std::string> t, t_range, p_text, zplus, dot_path;
  std::uint32_t ell = 3;
  std::uint64_t modulus = 0, p = 0, q = 0;
  unsigned k = 1;
  bool census = false, no_montes = false;

  auto add_t = [&](CLI::App* cmd) {
    auto* opt_t = cmd->add_option("--t", t, "Specialization parameter");
    auto* opt_r = cmd->add_option("--t-range", t_range, "Sweep t over a..b");
    opt_t->excludes(opt_r);
    opt_r->excludes(opt_t);
  };

  auto* poly = app.add_subcommand("poly", "Coefficients of r_n(x, t; l), constant term first");
  poly->add_option("--n", n, "Level")->required();
  poly->add_option("--t", t, "Specialization parameter")->required();
  poly->add_option("--l", ell, "Odd prime l");
  poly->add_option("--mod", modulus, "Reduce over F_{p^k}");
  poly->add_option("--k", k, "Extension degree with --mod");
  poly->add_option("--zplus", zplus, "Residue of zeta^+ with --mod");

  auto* disc = app.add_subcommand("disc", "Discriminant of r_n(x, t; 3) and of its field");
  disc->add_option("--n", n, "Level")->required();
  add_t(disc);

  auto* index = app.add_subcommand("index", "Index valuations of r_n(x, t; 3)");
  index->add_option("--n", n, "Level")->required();
  add_t(index);
  index->add_option("--p", p_text, "Single prime");
  index->add_flag("--no-montes", no_montes, "Skip the Newton polygon cross-check");

  auto* graph = app.add_subcommand("graph", "Functional graph of phi(x; l) on PF_q");
  graph->add_option("--q", q, "Field size")->required();
  graph->add_option("--l", ell, "Odd prime l");
  graph->add_flag("--census", census, "Print the cycle census");
  graph->add_option("--dot", dot_path, "Write the graph as DOT to PATH");

  auto* dec = app.add_subcommand("decompose", "Splitting of r_n(x, t; l) modulo a prime");
  dec->add_option("--n", n, "Level")->required();
  add_t(dec);
  dec->add_option("--p", p, "Rational prime")->required();
  dec->add_option("--k", k, "Residue degree");
  dec->add_option("--zplus", zplus, "Residue of zeta^+");
  dec->add_option("--l", ell, "Odd prime l");

  try {
    app.parse(argc, argv);
    if ((disc->parsed() || index->parsed() || dec->parsed()) && !t && !t_range)
      throw CLI::RequiredError("--t or --t-range");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (!seed) {
    if (const char* env = std::getenv("RIKUNA_SEED")) {
      try {
        seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "rikuna: RIKUNA_SEED must be an unsigned integer\n";
        return kExitUsage;
      }
    }
  }
  if (seed) rk_set_factor_seed(*seed);

  Envelope env;
  auto t_param = [&](json& params) {
    if (t) params["t"] = *t;
    if (t_range) params["t_range"] = *t_range;
  };

  if (poly->parsed()) {
    env.command = "poly";
    env.parameters = {{"n", n}, {"t", *t}, {"l", ell}};
    if (ell != 3 && modulus == 0) {
      env.exit_status = kExitUsage;
      env.error = "l != 3 needs --mod";
      return env.emit();
    }
    Outcome o;
    if (modulus) {
      env.parameters["mod"] = modulus;
      env.parameters["k"] = k;
      if (zplus) env.parameters["zplus"] = *zplus;
      o = run([&](rk_report** r) {
        return rk_poly_mod(n, t->c_str(), ell, modulus, k, zplus ? zplus->c_str() : nullptr, r);
      });
    } else {
      o = run([&](rk_report** r) { return rk_poly(n, t->c_str(), r); });
    }
    env.results = absorb(env, o);
    return env.emit();
  }

  if (disc->parsed()) {
    env.command = "disc";
    env.parameters = {{"n", n}};
    t_param(env.parameters);
    single_or_sweep(env, t, t_range, [&](const std::string& tv) {
      return run([&](rk_report** r) { return rk_disc(n, tv.c_str(), r); });
    });
    return env.emit();
  }

  if (index->parsed()) {
    env.command = "index";
    env.parameters = {{"n", n}, {"montes", !no_montes}};
    t_param(env.parameters);
    if (p_text) env.parameters["p"] = *p_text;
    single_or_sweep(env, t, t_range, [&](const std::string& tv) {
      return run([&](rk_report** r) {
        return rk_index(n, tv.c_str(), p_text ? p_text->c_str() : nullptr, no_montes ? 0 : 1, r);
      });
    });
    auto flag = [&](const json& res) {
      if (res.contains("mismatch") && res["mismatch"].get<bool>())
        env.exit_status = std::max(env.exit_status, kExitMismatch);
    };
    if (env.results.is_array()) for (const auto& r : env.results) flag(r);
    else flag(env.results);
    return env.emit();
  }

  if (graph->parsed()) {
    env.command = "graph";
    env.parameters = {{"q", q}, {"l", ell}, {"census", census || !dot_path}};
    if (dot_path) env.parameters["dot"] = *dot_path;
    env.results = json::object();
    if (census || !dot_path) {
      if (ell != 0 && q % ell != 1) {
        env.exit_status = kExitUsage;
        env.error = "the census is defined only for q = 1 (mod l)";
        return env.emit();
      }
      Outcome o = run([&](rk_report** r) { return rk_graph_census(q, ell, r); });
      env.results["census"] = absorb(env, o);
    }
    if (dot_path && env.exit_status == kExitOk) {
      rk_status s = rk_graph_dot(q, ell, dot_path->c_str());
      if (s != RK_OK) {
        env.exit_status = exit_code(s);
        env.error = rk_last_error();
      } else {
        env.results["dot"] = {{"path", *dot_path}, {"vertices", q + 1}};
      }
    }
    return env.emit();
  }

  if (dec->parsed()) {
    env.command = "decompose";
    env.parameters = {{"n", n}, {"p", p}, {"k", k}, {"l", ell}};
    t_param(env.parameters);
    if (zplus) env.parameters["zplus"] = *zplus;
    if (n < 1) {
      env.exit_status = kExitUsage;
      env.error = "--n must be at least 1";
      return env.emit();
    }
    single_or_sweep(env, t, t_range, [&](const std::string& tv) {
      return run([&](rk_report** r) {
        return rk_decompose(static_cast<unsigned>(n), tv.c_str(), p, k,
                            zplus ? zplus->c_str() : nullptr, ell, r);
      });
    });
    auto flag = [&](const json& res) {
      if (res.contains("predicted") && !res["predicted"].is_null() && !res["match"].get<bool>())
        env.exit_status = std::max(env.exit_status, kExitMismatch);
    };
    if (env.results.is_array()) for (const auto& r : env.results) flag(r);
    else flag(env.results);
    return env.emit();
  }
  return kExitUsage;
}
