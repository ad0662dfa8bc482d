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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pmecc/core/assembly.hpp"
#include "pmecc/core/linalg.hpp"

namespace pmecc {

// Pressure on the box [-L, L]^n with res nodes per axis (res odd, so the
// origin is a node). Values are long double: the probe differentiates v twice
// per step at h ~ 1e-4, where double rounding would swamp the signal.
struct GridField {
  int n = 0;
  double half_width = 0;   // L
  double ball_radius = 0;  // radius of the initial support, when known
  // Around the origin the initial data equals the polynomial jet (up to a
  // constant) on |x| <= local_radius; 0 when not applicable.
  double local_radius = 0;
  int res = 0;
  double h = 0;
  double t = 0;
  std::vector<long double> v;
  std::vector<std::uint8_t> mask;  // v > 0

  // Refreshed by sampling and by every step.
  long double max_v = 0;
  long double max_grad = 0;  // largest one-sided gradient norm

  std::size_t size() const { return v.size(); }
  std::size_t stride(int d) const;
  std::size_t origin() const;
  double coordinate(int i) const { return -half_width + i * h; }
  void refresh(int threads = 1);
};

// Empty field (all zeros). Throws resolution-too-small unless res is odd and >= 33.
GridField make_grid(int n, double half_width, int res);

GridField sample_field(int n, double half_width, int res,
                       const std::function<long double(const long double*)>& f, int threads = 1);

// Box half-width that leaves `pad` empty nodes between the ball and the box edge.
double padded_half_width(double ball_radius, int res, int pad = 4);

// Samples v0 of the bundle on the padded box around B_rho.
GridField discretize(const AssemblyBundle& b, int res, int threads = 1, int pad = 4);

// Steps during which the origin probe cannot see data from outside
// local_radius: an explicit step moves information one node in the L1
// metric and the axis stencil reaches two nodes. -1 when local_radius is 0.
int local_window(const GridField& f);

// min(h^2 / (4 n (m-1) max v), h / (4 n max |grad v|)); infinite for v = 0.
double admissible_dt(const GridField& f, double m);

struct StepStats {
  double clamp_norm = 0;    // largest negative value clamped to zero
  int edge_distance = 0;    // nodes between the support and the box edge
};

// One explicit step of v_t = (m-1) v lap v + |grad v|^2. Throws StabilityError
// when dt exceeds admissible_dt.
void step(GridField& f, double m, double dt, int threads = 1, StepStats* stats = nullptr);

struct ProbeResult {
  double lambda1 = 0;
  double w11 = 0;
  std::vector<double> eigenvalues;
  SymMatrixT<long double> hessian;
};

// Hessian of v^alpha (log v for alpha = 0) at the origin from fourth-order
// centered differences on the 5^n stencil; eigenvalues by cyclic Jacobi.
ProbeResult probe(const GridField& f, double alpha);

double mass_proxy(const GridField& f, double m);

struct EvolveOptions {
  double alpha = 1;
  double m = 2;
  double horizon = 0;
  int probe_stride = 1;
  int threads = 1;
  std::string snapshot_dir;  // empty: no snapshots
  int snapshot_stride = 0;
};

struct ProbeSeries {
  std::vector<double> times;
  std::vector<double> w11;
  std::vector<double> lambda1;
  std::vector<double> max_v;
  std::vector<double> mass_proxy;
  std::vector<double> clamp_norm;

  int res = 0;
  double h = 0;
  double dt_first = 0;
  double dt_last = 0;
  double theta = 0;  // detection threshold 10 h^2
  long steps = 0;

  int local_steps = -1;     // see local_window
  bool detected = false;
  bool detection_local = false;  // detected within the local window
  long detection_step = 0;
  double t_star = 0;
  double lambda1_at_detection = 0;
  double measured_rate = 0;  // (w11(t1) - w11(0)) / t1 over the first step

  bool max_v_monotone = true;
  double mass_drift = 0;       // while the support stays >= 3h from the edge
  double max_clamp_ratio = 0;  // clamp_norm / max v, worst step

  bool aborted = false;
  std::string abort_reason;
};

ProbeSeries evolve_and_probe(GridField f, const EvolveOptions& opt);
ProbeSeries evolve_and_probe(const AssemblyBundle& b, int res, const EvolveOptions& opt);

std::string format_probe_csv(const ProbeSeries& s);
std::string format_probe_summary(const ProbeSeries& s);

// Flat binary snapshot: "PMECCGF1", int32 n, int32 res, float64 t, then the
// res^n values as float64 in row-major order (last axis fastest), native byte order.
void write_snapshot(const std::string& path, const GridField& f);
GridField read_snapshot(const std::string& path, double half_width);

// Self-similar source solution in pressure form:
// v = m/(m-1) tau^(-k(m-1)) (C - q |x|^2 tau^(-2k/n))_+,
// k = n / (n(m-1) + 2), q = k(m-1) / (2 m n).
struct Barenblatt {
  int n = 2;
  double m = 2;
  double C = 1.0 / 64;

  long double pressure(const long double* x, long double tau) const;
  double front_radius(double tau) const;
};

}  // namespace pmecc
