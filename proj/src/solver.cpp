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

#include "pmecc/core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "pmecc/core/error.hpp"
#include "pmecc/core/keyvalue.hpp"
#include "pmecc/core/parallel.hpp"

namespace pmecc {

std::size_t GridField::stride(int d) const {
  std::size_t s = 1;
  for (int k = d + 1; k < n; ++k) s *= static_cast<std::size_t>(res);
  return s;
}

std::size_t GridField::origin() const {
  std::size_t k = 0;
  const std::size_t c = static_cast<std::size_t>(res / 2);
  for (int d = 0; d < n; ++d) k += c * stride(d);
  return k;
}

namespace {

// Node coordinates (indices) of flat index k.
void decode(std::size_t k, int n, int res, int* idx) {
  for (int d = n - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(k % res);
    k /= res;
  }
}

long double minmod(long double x, long double y) {
  if (x * y <= 0) return 0;
  return std::fabs(x) < std::fabs(y) ? x : y;
}

constexpr long double kTailFlush = 1e-12L;

int edge_distance(const int* idx, int n, int res) {
  int e = res;
  for (int d = 0; d < n; ++d) e = std::min({e, idx[d], res - 1 - idx[d]});
  return e;
}

}  // namespace

void GridField::refresh(int threads) {
  const int nt = std::max(1, threads);
  std::vector<long double> mv(nt, 0), mg(nt, 0);
  std::vector<std::size_t> st(n);
  for (int d = 0; d < n; ++d) st[d] = stride(d);
  mask.assign(v.size(), 0);
  parallel_chunks(v.size(), nt, [&](std::size_t b, std::size_t e, int c) {
    int idx[8];
    for (std::size_t k = b; k < e; ++k) {
      mask[k] = v[k] > 0;
      mv[c] = std::max(mv[c], v[k]);
      decode(k, n, res, idx);
      long double g2 = 0;
      for (int d = 0; d < n; ++d) {
        long double a = 0, f = 0;
        if (idx[d] > 0) a = std::fabs(v[k] - v[k - st[d]]);
        if (idx[d] < res - 1) f = std::fabs(v[k + st[d]] - v[k]);
        const long double p = std::max(a, f) / h;
        g2 += p * p;
      }
      mg[c] = std::max(mg[c], std::sqrt(g2));
    }
  });
  max_v = *std::max_element(mv.begin(), mv.end());
  max_grad = *std::max_element(mg.begin(), mg.end());
}

GridField make_grid(int n, double half_width, int res) {
  if (res < 33 || res % 2 == 0) {
    throw Error(ErrorKind::kResolutionTooSmall,
                "resolution must be odd and at least 33 (got " + std::to_string(res) + ")");
  }
  if (n < 1 || n > 4) throw Error(ErrorKind::kInvalidArgument, "grid dimension must be 1..4");
  if (!(half_width > 0)) throw Error(ErrorKind::kInvalidArgument, "box half-width must be positive");
  GridField f;
  f.n = n;
  f.half_width = half_width;
  f.res = res;
  f.h = 2 * half_width / (res - 1);
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(res);
  f.v.assign(total, 0.0L);
  f.mask.assign(total, 0);
  return f;
}

GridField sample_field(int n, double half_width, int res,
                       const std::function<long double(const long double*)>& fn, int threads) {
  GridField f = make_grid(n, half_width, res);
  parallel_chunks(f.size(), threads, [&](std::size_t b, std::size_t e, int) {
    int idx[8];
    long double x[8];
    for (std::size_t k = b; k < e; ++k) {
      decode(k, n, res, idx);
      bool edge = false;
      for (int d = 0; d < n; ++d) {
        // Exact origin and symmetric nodes: i h - L computed from the centre.
        x[d] = static_cast<long double>(idx[d] - res / 2) * f.h;
        edge = edge || idx[d] == 0 || idx[d] == res - 1;
      }
      f.v[k] = edge ? 0.0L : std::max(0.0L, fn(x));
    }
  });
  f.refresh(threads);
  return f;
}

double padded_half_width(double ball_radius, int res, int pad) {
  // rho = L - pad h with h = 2L / (res - 1).
  return ball_radius * (res - 1) / static_cast<double>(res - 1 - 2 * pad);
}

GridField discretize(const AssemblyBundle& b, int res, int threads, int pad) {
  if (res < 33 || res % 2 == 0) {
    throw Error(ErrorKind::kResolutionTooSmall,
                "resolution must be odd and at least 33 (got " + std::to_string(res) + ")");
  }
  GridField f = sample_field(b.dimension(), padded_half_width(b.rho(), res, pad), res,
                             [&b](const long double* x) { return b.v0(x); }, threads);
  f.ball_radius = b.rho();
  f.local_radius = b.rho() / 4;
  return f;
}

int local_window(const GridField& f) {
  if (!(f.local_radius > 0)) return -1;
  // Smallest L1 norm among offsets strictly outside local_radius.
  const double R = f.local_radius / f.h * (1 + 1e-12);
  const int K = static_cast<int>(std::ceil(R)) + 1;
  int best = std::numeric_limits<int>::max();
  std::vector<int> o(f.n, -K);
  while (true) {
    double r2 = 0;
    int l1 = 0;
    for (int x : o) {
      r2 += double(x) * x;
      l1 += std::abs(x);
    }
    if (r2 > R * R) best = std::min(best, l1);
    int d = 0;
    while (d < f.n && ++o[d] > K) o[d++] = -K;
    if (d == f.n) break;
  }
  return std::max(0, best - 3);
}

double admissible_dt(const GridField& f, double m) {
  double dt = std::numeric_limits<double>::infinity();
  if (f.max_v > 0) dt = std::min(dt, static_cast<double>(f.h * f.h / (4 * f.n * (m - 1) * f.max_v)));
  if (f.max_grad > 0) dt = std::min(dt, static_cast<double>(f.h / (4 * f.n * f.max_grad)));
  return dt;
}

void step(GridField& f, double m, double dt, int threads, StepStats* stats) {
  if (!(m > 1)) throw Error(ErrorKind::kInvalidArgument, "m must exceed 1");
  const double adm = admissible_dt(f, m);
  if (!(dt > 0) || dt > adm * (1 + 1e-12)) {
    throw StabilityError("time step " + format_double(dt) + " exceeds the admissible " +
                             format_double(adm),
                         adm);
  }
  const int n = f.n;
  const int res = f.res;
  const long double h = f.h;
  const long double ih = 1 / h;
  const long double ih2 = ih * ih;
  const long double mm1 = m - 1;
  const long double ldt = dt;
  std::vector<std::size_t> st(n);
  for (int d = 0; d < n; ++d) st[d] = f.stride(d);
  std::vector<long double> out(f.size());
  const int nt = std::max(1, threads);
  std::vector<double> clamp(nt, 0);
  std::vector<int> edge(nt, res);
  const auto& v = f.v;
  const long double flush = kTailFlush * f.max_v;
  parallel_chunks(f.size(), nt, [&](std::size_t b, std::size_t e, int c) {
    int idx[8];
    for (std::size_t k = b; k < e; ++k) {
      decode(k, n, res, idx);
      const int ed = edge_distance(idx, n, res);
      if (ed == 0) {
        out[k] = 0;
        continue;
      }
      const long double v0 = v[k];
      long double lap = 0, grad2 = 0;
      for (int d = 0; d < n; ++d) {
        const long double vm = v[k - st[d]];
        const long double vp = v[k + st[d]];
        if (v0 > 0 && (vm <= 0 || vp <= 0)) {
          // Next to the free boundary the zero neighbour is not the continuation
          // of v; a centered difference there reads the kink as curvature and
          // pushes the front. Use the one-sided difference from the support side.
          if (vm <= 0 && vp > 0 && idx[d] + 2 < res) {
            lap += (v0 - 2 * vp + v[k + 2 * st[d]]) * ih2;
          } else if (vp <= 0 && vm > 0 && idx[d] >= 2) {
            lap += (v0 - 2 * vm + v[k - 2 * st[d]]) * ih2;
          }
        } else {
          lap += (vp - 2 * v0 + vm) * ih2;
        }
        long double a = (v0 - vm) * ih;
        long double bb = (vp - v0) * ih;
        const long double c0 = 0.5L * (a + bb);
        if (v0 > 0 && vm > 0 && vp > 0 && a * bb > 0 && std::fabs(c0) * h <= mm1 * v0) {
          grad2 += c0 * c0;  // smooth interior: centered
          continue;
        }
        if (idx[d] >= 2 && idx[d] + 2 < res) {
          // ENO2 one-sided differences: the less curved stencil wins.
          const long double dm = v0 - 2 * vm + v[k - 2 * st[d]];
          const long double d0 = vp - 2 * v0 + vm;
          const long double dp = v[k + 2 * st[d]] - 2 * vp + v0;
          a += 0.5L * ih * minmod(dm, d0);
          bb -= 0.5L * ih * minmod(d0, dp);
        }
        if (a <= bb) {
          grad2 += std::max(a * a, bb * bb);
        } else if (a * bb > 0) {
          grad2 += std::min(a * a, bb * bb);
        }
      }
      long double nv = v0 + ldt * (mm1 * v0 * lap + grad2);
      if (nv < 0) {
        clamp[c] = std::max(clamp[c], static_cast<double>(-nv));
        nv = 0;
      } else if (nv < flush) {
        // Upwinding leaks a super-exponentially small tail one node per step
        // beyond the front; values this far below rounding carry no information.
        nv = 0;
      }
      out[k] = nv;
      if (nv > 0) edge[c] = std::min(edge[c], ed);
    }
  });
  f.v.swap(out);
  f.t += dt;
  f.refresh(threads);
  if (stats) {
    stats->clamp_norm = *std::max_element(clamp.begin(), clamp.end());
    stats->edge_distance = *std::min_element(edge.begin(), edge.end());
  }
}

ProbeResult probe(const GridField& f, double alpha) {
  const int n = f.n;
  const std::size_t o = f.origin();
  if (f.res / 2 < 2) throw Error(ErrorKind::kInvalidArgument, "grid too small for the probe stencil");
  if (!(f.v[o] > 0) && alpha != 1) {
    throw Error(ErrorKind::kOriginOutsideSupport, "the origin is outside the support");
  }
  auto w = [&](std::size_t k) -> long double {
    const long double x = f.v[k];
    if (alpha == 1) return x;
    if (!(x > 0)) {
      throw Error(ErrorKind::kOriginOutsideSupport, "probe stencil leaves the support");
    }
    if (alpha == 0) return std::log(x);
    return std::pow(x, static_cast<long double>(alpha));
  };
  static const long double c1[5] = {1.0L / 12, -8.0L / 12, 0, 8.0L / 12, -1.0L / 12};
  static const long double c2[5] = {-1.0L / 12, 16.0L / 12, -30.0L / 12, 16.0L / 12, -1.0L / 12};
  const long double h = f.h;
  ProbeResult r;
  r.hessian = SymMatrixT<long double>(n);
  for (int i = 0; i < n; ++i) {
    const std::ptrdiff_t si = static_cast<std::ptrdiff_t>(f.stride(i));
    long double d2 = 0;
    for (int p = 0; p < 5; ++p) d2 += c2[p] * w(o + (p - 2) * si);
    r.hessian(i, i) = d2 / (h * h);
    for (int j = i + 1; j < n; ++j) {
      const std::ptrdiff_t sj = static_cast<std::ptrdiff_t>(f.stride(j));
      long double dij = 0;
      for (int p = 0; p < 5; ++p) {
        if (c1[p] == 0) continue;
        for (int q = 0; q < 5; ++q) {
          if (c1[q] == 0) continue;
          dij += c1[p] * c1[q] * w(o + (p - 2) * si + (q - 2) * sj);
        }
      }
      r.hessian(i, j) = r.hessian(j, i) = dij / (h * h);
    }
  }
  const auto ev = jacobi_eigenvalues(r.hessian, 1e-15L);
  for (long double e : ev) r.eigenvalues.push_back(static_cast<double>(e));
  r.lambda1 = r.eigenvalues.front();
  r.w11 = static_cast<double>(r.hessian(0, 0));
  return r;
}

double mass_proxy(const GridField& f, double m) {
  long double sum = 0;
  const long double e = 1 / static_cast<long double>(m - 1);
  const long double c = (m - 1) / static_cast<long double>(m);
  for (long double x : f.v) {
    if (x > 0) sum += std::pow(c * x, e);
  }
  return static_cast<double>(sum * std::pow(static_cast<long double>(f.h), f.n));
}

namespace {

void record(ProbeSeries& s, const GridField& f, const EvolveOptions& opt, double clamp) {
  const ProbeResult p = probe(f, opt.alpha);
  s.times.push_back(f.t);
  s.w11.push_back(p.w11);
  s.lambda1.push_back(p.lambda1);
  s.max_v.push_back(static_cast<double>(f.max_v));
  s.mass_proxy.push_back(mass_proxy(f, opt.m));
  s.clamp_norm.push_back(clamp);
  if (!s.detected && p.lambda1 > s.theta) {
    s.detected = true;
    s.detection_step = s.steps;
    s.detection_local = s.local_steps >= 0 && s.steps <= s.local_steps;
    s.t_star = f.t;
    s.lambda1_at_detection = p.lambda1;
  }
}

std::string snapshot_path(const std::string& dir, long step) {
  std::ostringstream os;
  os << dir << "/snapshot_" << step << ".bin";
  return os.str();
}

}  // namespace

ProbeSeries evolve_and_probe(GridField f, const EvolveOptions& opt) {
  if (!(opt.horizon >= 0)) throw Error(ErrorKind::kInvalidArgument, "horizon must be nonnegative");
  if (opt.probe_stride < 1) throw Error(ErrorKind::kInvalidArgument, "probe stride must be >= 1");
  ProbeSeries s;
  s.res = f.res;
  s.h = f.h;
  s.theta = 10 * f.h * f.h;
  s.local_steps = local_window(f);
  const double t0 = f.t;
  const double end = t0 + opt.horizon;
  record(s, f, opt, 0);
  const double mass0 = s.mass_proxy.front();
  bool mass_tracked = true;
  const bool snap = !opt.snapshot_dir.empty() && opt.snapshot_stride > 0;
  if (snap) write_snapshot(snapshot_path(opt.snapshot_dir, 0), f);
  while (f.t < end) {
    double dt = admissible_dt(f, opt.m);
    bool last = false;
    if (dt >= end - f.t) {
      dt = end - f.t;
      last = true;
    }
    const long double prev_max = f.max_v;
    StepStats st;
    step(f, opt.m, dt, opt.threads, &st);
    if (last) f.t = end;
    ++s.steps;
    if (s.steps == 1) s.dt_first = dt;
    s.dt_last = dt;
    if (prev_max > 0) {
      s.max_clamp_ratio = std::max(s.max_clamp_ratio, st.clamp_norm / static_cast<double>(prev_max));
    }
    if (f.max_v > prev_max * (1 + 1e-10L)) s.max_v_monotone = false;
    if (st.edge_distance < 3) mass_tracked = false;
    const bool touching = st.edge_distance <= 1;
    if (s.steps == 1 || s.steps % opt.probe_stride == 0 || last || touching) {
      record(s, f, opt, st.clamp_norm);
      if (s.steps == 1) s.measured_rate = (s.w11.back() - s.w11.front()) / (f.t - t0);
      if (mass_tracked && mass0 > 0) {
        s.mass_drift = std::max(s.mass_drift, std::fabs(s.mass_proxy.back() - mass0) / mass0);
      }
    }
    if (snap && s.steps % opt.snapshot_stride == 0) {
      write_snapshot(snapshot_path(opt.snapshot_dir, s.steps), f);
    }
    if (touching) {
      s.aborted = true;
      s.abort_reason = "support reached the box boundary at t = " + format_double(f.t);
      break;
    }
  }
  return s;
}

ProbeSeries evolve_and_probe(const AssemblyBundle& b, int res, const EvolveOptions& opt) {
  return evolve_and_probe(discretize(b, res, opt.threads), opt);
}

std::string format_probe_csv(const ProbeSeries& s) {
  std::ostringstream os;
  os << "t,w11,lambda1,max_v,mass_proxy,clamp_norm\n";
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    os << format_double(s.times[i]) << ',' << format_double(s.w11[i]) << ','
       << format_double(s.lambda1[i]) << ',' << format_double(s.max_v[i]) << ','
       << format_double(s.mass_proxy[i]) << ',' << format_double(s.clamp_norm[i]) << '\n';
  }
  return os.str();
}

std::string format_probe_summary(const ProbeSeries& s) {
  KeyValues kv;
  kv.set("res", s.res);
  kv.set("h", s.h);
  kv.set("theta", s.theta);
  kv.set("steps", s.steps);
  kv.set("dt_first", s.dt_first);
  kv.set("dt_last", s.dt_last);
  kv.set("local_steps", s.local_steps);
  kv.set("detected", s.detected);
  if (s.detected) {
    kv.set("detection_step", s.detection_step);
    kv.set("detection_local", s.detection_local);
    kv.set("t_star", s.t_star);
    kv.set("lambda1_at_detection", s.lambda1_at_detection);
  }
  kv.set("measured_rate", s.measured_rate);
  kv.set("max_v_monotone", s.max_v_monotone);
  kv.set("mass_drift", s.mass_drift);
  kv.set("max_clamp_ratio", s.max_clamp_ratio);
  kv.set("aborted", s.aborted);
  if (s.aborted) kv.set("abort_reason", s.abort_reason);
  return kv.format();
}

namespace {
constexpr char kMagic[8] = {'P', 'M', 'E', 'C', 'C', 'G', 'F', '1'};
}

void write_snapshot(const std::string& path, const GridField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  const std::int32_t n = f.n, res = f.res;
  const double t = f.t;
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&res), 4);
  out.write(reinterpret_cast<const char*>(&t), 8);
  std::vector<double> buf(f.v.begin(), f.v.end());
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 8));
  if (!out) throw Error(ErrorKind::kIo, "short write to " + path);
}

GridField read_snapshot(const std::string& path, double half_width) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path);
  char magic[8];
  std::int32_t n = 0, res = 0;
  double t = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&res), 4);
  in.read(reinterpret_cast<char*>(&t), 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw Error(ErrorKind::kParse, path + " is not a grid snapshot");
  }
  GridField f = make_grid(n, half_width, res);
  f.t = t;
  std::vector<double> buf(f.size());
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 8));
  if (!in) throw Error(ErrorKind::kParse, path + " is truncated");
  std::copy(buf.begin(), buf.end(), f.v.begin());
  f.refresh();
  return f;
}

long double Barenblatt::pressure(const long double* x, long double tau) const {
  const long double mm = m;
  const long double k = n / (n * (mm - 1) + 2);
  const long double q = k * (mm - 1) / (2 * mm * n);
  long double r2 = 0;
  for (int d = 0; d < n; ++d) r2 += x[d] * x[d];
  const long double core = C - q * r2 * std::pow(tau, -2 * k / n);
  if (core <= 0) return 0;
  return mm / (mm - 1) * std::pow(tau, -k * (mm - 1)) * core;
}

double Barenblatt::front_radius(double tau) const {
  const double k = n / (n * (m - 1) + 2);
  const double q = k * (m - 1) / (2 * m * n);
  return std::sqrt(C / q * std::pow(tau, 2 * k / n));
}

}  // namespace pmecc
