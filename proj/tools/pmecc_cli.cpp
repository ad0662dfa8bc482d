// Copyright 2026 The pmecc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pmecc: construct -> verify -> assemble -> evolve -> report.
//
// Every stage reads and writes plain files under --out. Exit status:
// 0 when every check passes, 1 when a check fails, 2 on usage errors or
// missing inputs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmecc/pmecc.h"

namespace fs = std::filesystem;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct RunConfig {
  double alpha = 1;
  double m = 2;
  int n = 3;
  double steepness = 0;  // 0: solved for
  double rho = 0;        // 0: searched
  std::string glue = "auto";
  std::string poly;      // verify: alternative polynomial file
  std::string res = "49,65";
  double horizon = 0;    // 0: automatic
  int probe_stride = 1;
  int snapshot_stride = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out = "pmecc_run";
};

// Thrown to leave a stage with a given exit code.
struct Exit {
  int code;
  std::string message;
};

using KV = std::map<std::string, std::string>;

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Exit{kUsage, "missing input: " + p.string()};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw Exit{kUsage, "cannot write " + p.string()};
}

KV parse_kv(const std::string& text) {
  KV kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::string get(const KV& kv, const std::string& key) {
  auto it = kv.find(key);
  return it == kv.end() ? std::string() : it->second;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  pmecc_string_free(s);
  return out;
}

int status_exit(pmecc_status s) {
  switch (s) {
    case PMECC_ERR_INVALID_ARGUMENT:
    case PMECC_ERR_FAMILY_RANGE:
    case PMECC_ERR_PARSE:
    case PMECC_ERR_IO:
    case PMECC_ERR_DIMENSION_MISMATCH:
    case PMECC_ERR_RESOLUTION_TOO_SMALL:
      return kUsage;
    default:
      return kFail;
  }
}

void check(pmecc_status s) {
  if (s != PMECC_OK) {
    throw Exit{status_exit(s), std::string(pmecc_status_name(s)) + ": " + pmecc_last_error()};
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Timestamps go here and nowhere else, so reports stay byte-identical.
void log_meta(const RunConfig& c, const std::string& stage, const std::string& started, int code) {
  std::ofstream out(fs::path(c.out) / "run_meta.txt", std::ios::app);
  out << stage << ".started=" << started << "\n"
      << stage << ".finished=" << timestamp() << "\n"
      << stage << ".exit=" << code << "\n";
}

struct Poly {
  pmecc_poly* p = nullptr;
  ~Poly() { pmecc_poly_free(p); }
};
struct Bundle {
  pmecc_bundle* b = nullptr;
  ~Bundle() { pmecc_bundle_free(b); }
};
struct Field {
  pmecc_field* f = nullptr;
  ~Field() { pmecc_field_free(f); }
};
struct Series {
  pmecc_series* s = nullptr;
  ~Series() { pmecc_series_free(s); }
};

pmecc_params load_params(const RunConfig& c) {
  pmecc_params p;
  check(pmecc_params_parse(read_text(fs::path(c.out) / "params.txt").c_str(), &p));
  return p;
}

void load_poly(const fs::path& path, Poly& w) { check(pmecc_poly_parse(read_text(path).c_str(), &w.p)); }

// Downstream stages refuse to run on an unverified construction.
void require_verified(const RunConfig& c) {
  const KV v = parse_kv(read_text(fs::path(c.out) / "verification.txt"));
  if (get(v, "overall") != "pass") {
    throw Exit{kFail, "verification.txt reports a failing verification; refusing to continue"};
  }
}

std::vector<int> parse_res(const std::string& list) {
  std::vector<int> out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Exit{kUsage, "bad resolution '" + item + "'"};
    }
    if (out.back() % 2 == 0) throw Exit{kUsage, "resolutions must be odd"};
  }
  if (out.empty()) throw Exit{kUsage, "empty resolution list"};
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_construct(const RunConfig& c) {
  pmecc_family fam;
  check(pmecc_family_for_alpha(c.alpha, &fam));
  pmecc_params p;
  check(pmecc_params_init(c.alpha, c.m, c.n, &p));
  p.steepness = c.steepness;
  if (p.steepness <= 0) check(pmecc_solve_steepness(c.alpha, c.m, c.n, 0.5, &p.steepness));
  Poly w;
  check(pmecc_build_family(&p, &w.p));
  double rate = 0;
  char* breakdown = nullptr;
  check(pmecc_origin_rate(&p, &rate, &breakdown));
  char* params = nullptr;
  char* poly = nullptr;
  check(pmecc_params_format(&p, &params));
  check(pmecc_poly_format(w.p, &poly));
  const fs::path out(c.out);
  write_text(out / "params.txt", take(params));
  write_text(out / "w.poly", take(poly));
  write_text(out / "rate_breakdown.txt", take(breakdown));
  std::cout << "family=" << (fam == PMECC_CASE1 ? "case1" : "case2") << "\n"
            << "steepness=" << fmt(p.steepness) << "\n"
            << "origin_rate=" << fmt(rate) << "\n";
  return kPass;
}

int cmd_verify(const RunConfig& c) {
  pmecc_params p = load_params(c);
  Poly w;
  load_poly(c.poly.empty() ? fs::path(c.out) / "w.poly" : fs::path(c.poly), w);
  pmecc_verification* v = nullptr;
  check(pmecc_verify(&p, w.p, c.seed, c.threads, c.rho, &v));
  int passed = 0;
  double rho = 0;
  char* report = nullptr;
  pmecc_verification_passed(v, &passed);
  pmecc_verification_rho(v, &rho);
  pmecc_verification_report(v, &report);
  pmecc_verification_free(v);
  const std::string text = take(report);
  write_text(fs::path(c.out) / "verification.txt", text);
  if (passed) {
    p.rho = rho;
    char* params = nullptr;
    check(pmecc_params_format(&p, &params));
    write_text(fs::path(c.out) / "params.txt", take(params));
  }
  const KV kv = parse_kv(text);
  for (const char* k : {"condition1", "condition2", "condition3", "overall"}) {
    std::cout << k << "=" << get(kv, k) << "\n";
  }
  return passed ? kPass : kFail;
}

int cmd_assemble(const RunConfig& c) {
  require_verified(c);
  const pmecc_params p = load_params(c);
  Poly w;
  load_poly(fs::path(c.out) / "w.poly", w);
  Bundle b;
  char* report = nullptr;
  char* log = nullptr;
  check(pmecc_assemble(&p, w.p, c.glue.c_str(), c.seed, c.threads, &b.b, &report, &log));
  char* manifest = nullptr;
  check(pmecc_bundle_format(b.b, &manifest));
  const fs::path out(c.out);
  const std::string text = take(report);
  write_text(out / "bundle.txt", take(manifest));
  write_text(out / "assembly.txt", text);
  write_text(out / "assembly_log.txt", take(log));
  const KV kv = parse_kv(text);
  for (const char* k : {"glue", "rho", "amplitude", "shifted_origin_rate", "assembly"}) {
    std::cout << k << "=" << get(kv, k) << "\n";
  }
  return get(kv, "assembly") == "pass" ? kPass : kFail;
}

bool run_healthy(const KV& s) {
  return get(s, "aborted") == "false" && get(s, "max_v_monotone") == "true" &&
         std::stod(get(s, "max_clamp_ratio")) < 1e-12;
}

int cmd_evolve(const RunConfig& c) {
  require_verified(c);
  const fs::path out(c.out);
  Bundle b;
  check(pmecc_bundle_parse(read_text(out / "bundle.txt").c_str(), &b.b));
  pmecc_params p;
  check(pmecc_bundle_params(b.b, &p));
  const std::vector<int> res = parse_res(c.res);

  double horizon = c.horizon;
  if (horizon <= 0) {
    // Twice the time the closed-form rate needs to reach the coarsest threshold.
    double rate = 0, h = 0;
    check(pmecc_bundle_origin_rate(b.b, &rate));
    Field coarse;
    check(pmecc_discretize(b.b, res.front(), c.threads, &coarse.f));
    check(pmecc_field_info(coarse.f, nullptr, nullptr, &h, nullptr));
    if (!(rate > 0)) throw Exit{kUsage, "origin rate is not positive; pass --horizon explicitly"};
    horizon = 2 * 10 * h * h / rate;
  }

  bool healthy = true;
  for (int r : res) {
    const fs::path dir = out / ("evolve_res" + std::to_string(r));
    fs::create_directories(dir);
    Field f;
    check(pmecc_discretize(b.b, r, c.threads, &f.f));
    const std::string snaps = (dir / "snapshots").string();
    if (c.snapshot_stride > 0) fs::create_directories(snaps);
    pmecc_evolve_options opt{p.alpha, p.m, horizon, c.probe_stride, c.threads,
                             c.snapshot_stride > 0 ? snaps.c_str() : nullptr, c.snapshot_stride};
    Series s;
    check(pmecc_evolve(f.f, &opt, &s.s));
    char* csv = nullptr;
    char* summary = nullptr;
    check(pmecc_series_csv(s.s, &csv));
    check(pmecc_series_summary(s.s, &summary));
    const std::string text = "horizon=" + fmt(horizon) + "\n" + take(summary);
    write_text(dir / "probe.csv", take(csv));
    write_text(dir / "summary.txt", text);
    const KV kv = parse_kv(text);
    const bool ok = run_healthy(kv);
    healthy = healthy && ok;
    std::cout << "res=" << r << " steps=" << get(kv, "steps") << " detected=" << get(kv, "detected")
              << " local=" << get(kv, "detection_local") << " t_star=" << get(kv, "t_star")
              << " measured_rate=" << get(kv, "measured_rate") << (ok ? "" : " UNHEALTHY") << "\n";
  }
  return healthy ? kPass : kFail;
}

int cmd_report(const RunConfig& c) {
  const fs::path out(c.out);
  std::vector<std::pair<int, KV>> runs;
  if (fs::is_directory(out)) {
    for (const auto& e : fs::directory_iterator(out)) {
      const std::string name = e.path().filename().string();
      if (name.rfind("evolve_res", 0) != 0 || !fs::exists(e.path() / "summary.txt")) continue;
      runs.emplace_back(std::stoi(name.substr(10)), parse_kv(read_text(e.path() / "summary.txt")));
    }
  }
  if (runs.empty()) throw Exit{kUsage, "no evolve runs under " + out.string()};
  std::sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  const KV ver = parse_kv(read_text(out / "verification.txt"));
  const KV asmb = parse_kv(read_text(out / "assembly.txt"));
  Bundle b;
  check(pmecc_bundle_parse(read_text(out / "bundle.txt").c_str(), &b.b));
  double rate = 0;
  check(pmecc_bundle_origin_rate(b.b, &rate));

  std::ostringstream rep;
  bool all = true;
  auto verdict = [&](const std::string& key, bool ok) {
    rep << key << "=" << (ok ? "pass" : "fail") << "\n";
    all = all && ok;
  };
  for (const char* k : {"condition1", "condition2", "condition3"}) verdict(k, get(ver, k) == "pass");
  verdict("assembly", get(asmb, "assembly") == "pass");
  rep << "closed_form_rate=" << fmt(rate) << "\n";

  for (const auto& [r, kv] : runs) {
    const std::string pre = "res" + std::to_string(r) + ".";
    rep << pre << "t_star=" << get(kv, "t_star") << "\n"
        << pre << "lambda1_at_detection=" << get(kv, "lambda1_at_detection") << "\n"
        << pre << "measured_rate=" << get(kv, "measured_rate") << "\n"
        << pre << "mass_drift=" << get(kv, "mass_drift") << "\n";
    verdict(pre + "health", run_healthy(kv));
    verdict(pre + "crossing", get(kv, "detected") == "true" && get(kv, "detection_local") == "true");
  }

  // Refinement checks on the two finest runs.
  const auto& fine = runs.back().second;
  const auto& coarse = runs.size() > 1 ? runs[runs.size() - 2].second : fine;
  auto num = [](const KV& kv, const char* k) {
    const std::string s = get(kv, k);
    return s.empty() ? NAN : std::stod(s);
  };
  const double l_f = num(fine, "lambda1_at_detection"), l_c = num(coarse, "lambda1_at_detection");
  verdict("probe.sign_consistent", std::isfinite(l_f) && std::isfinite(l_c) && (l_f > 0) == (l_c > 0));
  verdict("probe.t_star_non_increasing", num(fine, "t_star") <= num(coarse, "t_star"));
  bool rate_ok = rate > 0;
  for (const KV* kv : {&coarse, &fine}) {
    rate_ok = rate_ok && std::abs(num(*kv, "measured_rate") - rate) <= 0.25 * std::abs(rate);
  }
  verdict("probe.rate_within_25pct", rate_ok);
  rep << "overall=" << (all ? "pass" : "fail") << "\n";
  write_text(out / "report.txt", rep.str());
  std::cout << rep.str();
  return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"pmecc: counterexample pipeline for alpha-concavity under the porous medium equation"};
  app.set_config("--config", "", "flat key=value file; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--seed", c.seed, "sampling seed")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--alpha", c.alpha, "concavity exponent in [0, 1], not 1/2")->capture_default_str();
  app.add_option("--m", c.m, "porous medium exponent, > 1")->capture_default_str();
  app.add_option("--n", c.n, "dimension")->capture_default_str();
  app.add_option("--steepness", c.steepness, "a (case 1) or b (case 2); 0 solves for it");
  app.add_option("--rho", c.rho, "ball radius for condition 2; 0 searches");
  app.add_option("--glue", c.glue, "assembly gluing")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "literal", "anchored"}));
  app.add_option("--poly", c.poly, "verify this polynomial file instead of w.poly");
  app.add_option("--res", c.res, "comma-separated odd resolutions")->capture_default_str();
  app.add_option("--horizon", c.horizon, "evolution horizon; 0 picks one from the origin rate");
  app.add_option("--probe-stride", c.probe_stride, "steps between probes")->capture_default_str();
  app.add_option("--snapshot-stride", c.snapshot_stride, "steps between field snapshots; 0 disables");

  std::map<std::string, int (*)(const RunConfig&)> stages = {
      {"construct", cmd_construct}, {"verify", cmd_verify}, {"assemble", cmd_assemble},
      {"evolve", cmd_evolve},       {"report", cmd_report}};
  const std::map<std::string, std::string> help = {
      {"construct", "build the polynomial family and its origin rate"},
      {"verify", "check conditions 1 to 3 on the constructed polynomial"},
      {"assemble", "glue the local data into globally concave initial pressure"},
      {"evolve", "run the solver and probe concavity at the origin"},
      {"report", "aggregate every check into report.txt"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, fn] : stages) subs.push_back(app.add_subcommand(name, help.at(name)));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    const std::string name = sub->get_name();
    const std::string started = timestamp();
    int code;
    try {
      fs::create_directories(c.out);
      code = stages.at(name)(c);
    } catch (const Exit& e) {
      std::cerr << "pmecc " << name << ": " << e.message << "\n";
      code = e.code;
    } catch (const std::exception& e) {
      std::cerr << "pmecc " << name << ": " << e.what() << "\n";
      code = kUsage;
    }
    if (fs::is_directory(c.out)) log_meta(c, name, started, code);
    return code;
  }
  return kUsage;
}
