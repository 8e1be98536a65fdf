#pragma once

#include <string>
#include <vector>

#include "holo/models.hpp"

namespace holo {

// RawSolver keeps the solver's canonical phases, SmoothPhase rotates each
// band/block so the overlap with the previous frame is Hermitian positive,
// ParallelTransport is the same rotation (it makes the discrete diagonal
// connection vanish), AnalyticOracle builds frames from the closed forms.
enum class GaugePolicy { RawSolver, SmoothPhase, ParallelTransport, AnalyticOracle };

std::string to_string(GaugePolicy policy);
GaugePolicy gauge_policy_from_string(const std::string& name);

// Instantaneous eigenframe at one parameter point. Inside a Bundle the
// quasienergies are unwrapped along the path; standalone frames carry
// principal values (in [0, 2*pi/T_p) for kicked models).
struct Frame {
  ParameterPoint point;
  std::vector<double> quasienergies;
  CMatrix vectors;
  std::vector<std::vector<int>> blocks;  // degenerate clusters, contiguous column index groups

  int dim() const { return static_cast<int>(vectors.cols()); }
};

// Piecewise-linear closed or open path in coordinate space, uniform step per
// segment (steps allocated proportionally to coordinate arc length).
struct LoopDef {
  std::string name;  // "lambda", "gamma", "eta", "xi", "zeta", "waypoints", "constant"
  std::vector<ParameterPoint> waypoints;

  ParameterPoint at(double s) const;  // s in [0, 1]
  double arc_length() const;
  bool closed() const;  // endpoints equal modulo 2*pi per angular coordinate

  static LoopDef coordinate_loop(const std::string& coord, const ParameterPoint& base,
                                 double turns = 1.0);
  static LoopDef constant(const ParameterPoint& base);
  static LoopDef from_waypoints(std::vector<ParameterPoint> pts);
};

struct Bundle {
  ModelSpec spec;
  LoopDef loop;
  GaugePolicy policy = GaugePolicy::SmoothPhase;
  std::vector<Frame> frames;  // K+1 entries, frames[K].point == frames[0].point on the manifold
  std::vector<double> arc;    // cumulative coordinate-arc position per frame

  int K() const { return static_cast<int>(frames.size()) - 1; }
  int dim() const { return frames.empty() ? 0 : frames.front().dim(); }
  double step(int k) const { return arc[k + 1] - arc[k]; }
  const std::vector<std::vector<int>>& blocks() const { return frames.front().blocks; }
};

double default_deg_tol(const ModelSpec& spec);

Frame frame_at(const ModelSpec& spec, const ParameterPoint& alpha, double deg_tol);
Frame frame_at(const ModelSpec& spec, const ParameterPoint& alpha);

// Band-tracks next_raw against prev (greedy block matching on overlap singular
// values, 10% ambiguity margin), unwraps quasienergies onto prev's branch and
// applies the gauge policy. segment_index only decorates error messages;
// period is the quasienergy circle (pass 0 for static energies).
Frame continue_frame(const Frame& prev, Frame next_raw, GaugePolicy policy,
                     int segment_index = -1, double period = 6.283185307179586);

// K+1 gauge-continued frames along a closed loop. frames[K] stays in the
// continued gauge; its mismatch against frames[0] is the holonomy content.
Bundle bundle_along(const ModelSpec& spec, const LoopDef& loop, int K, GaugePolicy policy,
                    double deg_tol);
Bundle bundle_along(const ModelSpec& spec, const LoopDef& loop, int K, GaugePolicy policy);

// Same tracking machinery along an open path (spectrum sweeps).
std::vector<Frame> track_open_path(const ModelSpec& spec,
                                   const std::vector<ParameterPoint>& points,
                                   GaugePolicy policy, double deg_tol);

}  // namespace holo
