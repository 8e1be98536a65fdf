#include "holo/eigenframe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "holo/oracles.hpp"

namespace holo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double mod_pos(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  return r;
}

double wrap_signed(double x, double period) { return x - period * std::round(x / period); }

}  // namespace

std::string to_string(GaugePolicy policy) {
  switch (policy) {
    case GaugePolicy::RawSolver: return "raw_solver";
    case GaugePolicy::SmoothPhase: return "smooth_phase";
    case GaugePolicy::ParallelTransport: return "parallel_transport";
    case GaugePolicy::AnalyticOracle: return "analytic_oracle";
  }
  return "unknown";
}

GaugePolicy gauge_policy_from_string(const std::string& name) {
  if (name == "raw_solver") return GaugePolicy::RawSolver;
  if (name == "smooth_phase") return GaugePolicy::SmoothPhase;
  if (name == "parallel_transport") return GaugePolicy::ParallelTransport;
  if (name == "analytic_oracle") return GaugePolicy::AnalyticOracle;
  throw ConfigError("unknown gauge policy '" + name + "'");
}

// ---------------------------------------------------------------------------
// LoopDef

namespace {

std::vector<double> flatten(const ParameterPoint& p) {
  std::vector<double> v;
  v.push_back(p.lambda);
  v.insert(v.end(), p.sphere.begin(), p.sphere.end());
  v.insert(v.end(), p.generic.begin(), p.generic.end());
  return v;
}

ParameterPoint lerp(const ParameterPoint& a, const ParameterPoint& b, double t) {
  ParameterPoint out = a;
  out.lambda = a.lambda + t * (b.lambda - a.lambda);
  for (size_t i = 0; i < a.sphere.size(); ++i)
    out.sphere[i] = a.sphere[i] + t * (b.sphere[i] - a.sphere[i]);
  for (size_t i = 0; i < a.generic.size(); ++i)
    out.generic[i] = a.generic[i] + t * (b.generic[i] - a.generic[i]);
  return out;
}

double segment_length(const ParameterPoint& a, const ParameterPoint& b) {
  const std::vector<double> fa = flatten(a), fb = flatten(b);
  double s = 0.0;
  for (size_t i = 0; i < fa.size(); ++i) s += (fb[i] - fa[i]) * (fb[i] - fa[i]);
  return std::sqrt(s);
}

void check_same_shape(const std::vector<ParameterPoint>& pts) {
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].sphere.size() != pts[0].sphere.size() ||
        pts[i].generic.size() != pts[0].generic.size())
      throw ConfigError("loop waypoints have inconsistent coordinate shapes");
}

}  // namespace

ParameterPoint LoopDef::at(double s) const {
  if (waypoints.empty()) throw ConfigError("loop has no waypoints");
  if (waypoints.size() == 1) return waypoints.front();
  s = std::clamp(s, 0.0, 1.0);

  const double total = arc_length();
  if (total <= 0.0) return waypoints.front();

  double target = s * total;
  for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const double len = segment_length(waypoints[i], waypoints[i + 1]);
    if (target <= len || i + 2 == waypoints.size()) {
      const double t = (len > 0.0) ? std::clamp(target / len, 0.0, 1.0) : 0.0;
      return lerp(waypoints[i], waypoints[i + 1], t);
    }
    target -= len;
  }
  return waypoints.back();
}

double LoopDef::arc_length() const {
  double total = 0.0;
  for (size_t i = 0; i + 1 < waypoints.size(); ++i)
    total += segment_length(waypoints[i], waypoints[i + 1]);
  return total;
}

bool LoopDef::closed() const {
  if (waypoints.size() < 2) return true;
  const ParameterPoint& a = waypoints.front();
  const ParameterPoint& b = waypoints.back();
  if (std::abs(wrap_signed(b.lambda - a.lambda, kTwoPi)) > 1e-9) return false;
  for (size_t i = 0; i < a.sphere.size(); ++i)
    if (std::abs(wrap_signed(b.sphere[i] - a.sphere[i], kTwoPi)) > 1e-9) return false;
  for (size_t i = 0; i < a.generic.size(); ++i)
    if (std::abs(b.generic[i] - a.generic[i]) > 1e-12) return false;
  return true;
}

LoopDef LoopDef::coordinate_loop(const std::string& coord, const ParameterPoint& base,
                                 double turns) {
  ParameterPoint end = base;
  const double sweep = kTwoPi * turns;
  if (coord == "lambda") {
    end.lambda += sweep;
  } else {
    int idx = -1;
    if (base.sphere.size() == 2) {
      if (coord == "gamma") idx = 0;
      if (coord == "xi") idx = 1;
    } else if (base.sphere.size() == 4) {
      if (coord == "gamma") idx = 0;
      if (coord == "eta") idx = 1;
      if (coord == "xi") idx = 2;
      if (coord == "zeta") idx = 3;
    }
    if (idx < 0) throw ConfigError("loop coordinate '" + coord + "' not available here");
    end.sphere[static_cast<size_t>(idx)] += sweep;
  }
  LoopDef loop;
  loop.name = coord;
  loop.waypoints = {base, end};
  return loop;
}

LoopDef LoopDef::constant(const ParameterPoint& base) {
  LoopDef loop;
  loop.name = "constant";
  loop.waypoints = {base, base};
  return loop;
}

LoopDef LoopDef::from_waypoints(std::vector<ParameterPoint> pts) {
  if (pts.size() < 2) throw ConfigError("waypoint loop needs at least two points");
  check_same_shape(pts);
  LoopDef loop;
  loop.name = "waypoints";
  loop.waypoints = std::move(pts);
  return loop;
}

// ---------------------------------------------------------------------------
// frame_at

double default_deg_tol(const ModelSpec& spec) {
  return spec.kicked() ? 1e-6 * (kTwoPi / spec.T_p) : 1e-6;
}

namespace {

std::vector<std::vector<int>> contiguous_blocks(const std::vector<int>& cluster_of) {
  std::vector<std::vector<int>> blocks;
  for (int j = 0; j < static_cast<int>(cluster_of.size()); ++j) {
    if (j == 0 || cluster_of[j] != cluster_of[j - 1]) blocks.emplace_back();
    blocks.back().push_back(j);
  }
  return blocks;
}

Frame frame_at_kicked(const ModelSpec& spec, const ParameterPoint& alpha, double deg_tol) {
  const CMatrix u = floquet_operator(spec, alpha);
  const EigenPairs ep = eig_unitary(u, 1e-10);
  const int n = static_cast<int>(ep.values.size());
  const double period = kTwoPi / spec.T_p;

  std::vector<double> eps(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    eps[static_cast<size_t>(i)] = mod_pos(-std::arg(ep.values(i)), kTwoPi) / spec.T_p;

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return eps[static_cast<size_t>(a)] < eps[static_cast<size_t>(b)];
  });

  // rotate the circular ordering so the largest gap sits at the boundary;
  // keeps degenerate clusters contiguous even when they straddle 0
  int cut = 0;
  double widest = -1.0;
  for (int i = 0; i < n; ++i) {
    const double lo = eps[static_cast<size_t>(order[static_cast<size_t>(i)])];
    const double hi = eps[static_cast<size_t>(order[static_cast<size_t>((i + 1) % n)])];
    const double gap = (i + 1 == n) ? (hi + period - lo) : (hi - lo);
    if (gap > widest) {
      widest = gap;
      cut = (i + 1) % n;
    }
  }
  std::rotate(order.begin(), order.begin() + cut, order.end());

  Frame f;
  f.point = alpha;
  f.quasienergies.resize(static_cast<size_t>(n));
  f.vectors.resize(n, n);
  std::vector<int> cluster_of(static_cast<size_t>(n), 0);
  double prev_eps = 0.0;
  int cluster = 0;
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<size_t>(j)];
    const double e = eps[static_cast<size_t>(src)];
    if (j > 0 && mod_pos(e - prev_eps, period) >= deg_tol) ++cluster;
    cluster_of[static_cast<size_t>(j)] = cluster;
    f.quasienergies[static_cast<size_t>(j)] = e;
    f.vectors.col(j) = ep.vectors.col(src);
    prev_eps = e;
  }
  f.blocks = contiguous_blocks(cluster_of);
  return f;
}

Frame frame_at_static(const ModelSpec& spec, const ParameterPoint& alpha, double deg_tol) {
  const CMatrix h = static_hamiltonian(spec, alpha);
  const HermEigenPairs ep = eig_hermitian(h, 1e-10);
  const int n = static_cast<int>(ep.values.size());

  Frame f;
  f.point = alpha;
  f.quasienergies.resize(static_cast<size_t>(n));
  f.vectors = ep.vectors;
  std::vector<int> cluster_of(static_cast<size_t>(n), 0);
  int cluster = 0;
  for (int j = 0; j < n; ++j) {
    if (j > 0 && ep.values(j) - ep.values(j - 1) >= deg_tol) ++cluster;
    cluster_of[static_cast<size_t>(j)] = cluster;
    f.quasienergies[static_cast<size_t>(j)] = ep.values(j);
  }
  f.blocks = contiguous_blocks(cluster_of);
  return f;
}

}  // namespace

Frame frame_at(const ModelSpec& spec, const ParameterPoint& alpha, double deg_tol) {
  return spec.kicked() ? frame_at_kicked(spec, alpha, deg_tol)
                       : frame_at_static(spec, alpha, deg_tol);
}

Frame frame_at(const ModelSpec& spec, const ParameterPoint& alpha) {
  return frame_at(spec, alpha, default_deg_tol(spec));
}

// ---------------------------------------------------------------------------
// continuation

namespace {

double min_singular_value(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().minCoeff();
}

CMatrix subblock(const CMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  return out;
}

std::string seg_tag(int segment_index) {
  return segment_index >= 0 ? " (segment " + std::to_string(segment_index) + ")" : "";
}

}  // namespace

Frame continue_frame(const Frame& prev, Frame next_raw, GaugePolicy policy, int segment_index,
                     double period) {
  const int d = prev.dim();
  if (next_raw.dim() != d) throw DimensionMismatch("continue_frame: dimension changed");

  {
    std::vector<size_t> a, b;
    for (const auto& blk : prev.blocks) a.push_back(blk.size());
    for (const auto& blk : next_raw.blocks) b.push_back(blk.size());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw BandCrossing("continue_frame: degeneracy structure changed" + seg_tag(segment_index));
  }

  const CMatrix overlap = prev.vectors.adjoint() * next_raw.vectors;

  // greedy block assignment by smallest singular value of the overlap block
  const size_t nb = prev.blocks.size();
  std::vector<bool> used(next_raw.blocks.size(), false);
  std::vector<int> match(nb, -1);
  for (size_t a = 0; a < nb; ++a) {
    double best = -1.0, second = -1.0;
    int best_b = -1;
    for (size_t b = 0; b < next_raw.blocks.size(); ++b) {
      if (used[b] || next_raw.blocks[b].size() != prev.blocks[a].size()) continue;
      const double s = min_singular_value(subblock(overlap, prev.blocks[a], next_raw.blocks[b]));
      if (s > best) {
        second = best;
        best = s;
        best_b = static_cast<int>(b);
      } else if (s > second) {
        second = s;
      }
    }
    if (best_b < 0)
      throw BandCrossing("continue_frame: no candidate block" + seg_tag(segment_index));
    if (second >= 0.9 * best)
      throw BandCrossing("continue_frame: ambiguous band assignment" + seg_tag(segment_index));
    if (best <= 0.1)
      throw BandCrossing("continue_frame: overlap too singular, refine the grid" +
                         seg_tag(segment_index));
    match[a] = best_b;
    used[static_cast<size_t>(best_b)] = true;
  }

  std::vector<int> order;
  order.reserve(static_cast<size_t>(d));
  for (size_t a = 0; a < nb; ++a)
    for (int j : next_raw.blocks[static_cast<size_t>(match[a])]) order.push_back(j);

  Frame out;
  out.point = next_raw.point;
  out.blocks = prev.blocks;
  out.vectors.resize(d, d);
  out.quasienergies.resize(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    out.vectors.col(j) = next_raw.vectors.col(order[static_cast<size_t>(j)]);
    out.quasienergies[static_cast<size_t>(j)] =
        next_raw.quasienergies[static_cast<size_t>(order[static_cast<size_t>(j)])];
  }

  // unwrap onto prev's branch; kicked quasienergies live on a circle of the
  // given period, static energies (period <= 0) are already continuous
  if (period > 0.0) {
    for (int j = 0; j < d; ++j) {
      const double prev_eps = prev.quasienergies[static_cast<size_t>(j)];
      const double raw = out.quasienergies[static_cast<size_t>(j)];
      out.quasienergies[static_cast<size_t>(j)] = prev_eps + wrap_signed(raw - prev_eps, period);
    }
  }

  if (policy == GaugePolicy::SmoothPhase || policy == GaugePolicy::ParallelTransport) {
    for (const auto& blk : out.blocks) {
      const CMatrix o = subblock(prev.vectors.adjoint() * out.vectors, blk, blk);
      const CMatrix x = unitarize(o).adjoint();
      CMatrix cols(d, static_cast<Eigen::Index>(blk.size()));
      for (size_t j = 0; j < blk.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = out.vectors.col(blk[j]);
      cols = cols * x;
      for (size_t j = 0; j < blk.size(); ++j) out.vectors.col(blk[j]) = cols.col(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// bundles

namespace {

Bundle analytic_bundle(const ModelSpec& spec, const LoopDef& loop, int K, double total_arc) {
  if (!spec.kicked())
    throw UnsupportedModel("bundle_along: AnalyticOracle gauge needs a kicked model");

  Bundle bundle;
  bundle.spec = spec;
  bundle.loop = loop;
  bundle.policy = GaugePolicy::AnalyticOracle;
  bundle.frames.reserve(static_cast<size_t>(K) + 1);
  bundle.arc.resize(static_cast<size_t>(K) + 1);

  const double period = kTwoPi / spec.T_p;
  std::vector<double> offsets;
  double q_prev = 0.0;

  for (int k = 0; k <= K; ++k) {
    const double s = static_cast<double>(k) / K;
    bundle.arc[static_cast<size_t>(k)] = (total_arc > 0.0) ? s * total_arc : s;
    const ParameterPoint pt = loop.at(s);
    const double mu = 0.5 * (2 - spec.p) * pt.lambda;

    const double q = (k == 0) ? oracles::Q_unwrapped(mu, pt.gamma(), spec.T)
                              : oracles::Q_near(mu, pt.gamma(), spec.T, q_prev);
    q_prev = q;

    Frame f = (spec.kind == ModelKind::KickedSpinHalf)
                  ? oracles::analytic_frame_spin_half(spec.p, pt.lambda, pt.gamma(), pt.xi(),
                                                      spec.T, q)
                  : oracles::analytic_frame_spin_threehalf(spec.p, pt.lambda, pt.gamma(),
                                                           pt.eta(), pt.xi(), pt.zeta(),
                                                           spec.T, q);
    if (k == 0) {
      offsets.resize(f.quasienergies.size());
      for (size_t j = 0; j < f.quasienergies.size(); ++j)
        offsets[j] = mod_pos(f.quasienergies[j], period) - f.quasienergies[j];
    }
    for (size_t j = 0; j < f.quasienergies.size(); ++j) f.quasienergies[j] += offsets[j];
    bundle.frames.push_back(std::move(f));
  }
  return bundle;
}

}  // namespace

Bundle bundle_along(const ModelSpec& spec, const LoopDef& loop, int K, GaugePolicy policy,
                    double deg_tol) {
  if (K < 16) throw ConfigError("bundle_along: K must be at least 16");
  if (!loop.closed()) throw LoopNotClosed("bundle_along: loop endpoints differ");

  const double total_arc = loop.arc_length();
  if (policy == GaugePolicy::AnalyticOracle) return analytic_bundle(spec, loop, K, total_arc);

  Bundle bundle;
  bundle.spec = spec;
  bundle.loop = loop;
  bundle.policy = policy;
  bundle.frames.reserve(static_cast<size_t>(K) + 1);
  bundle.arc.resize(static_cast<size_t>(K) + 1);

  const double period = spec.kicked() ? kTwoPi / spec.T_p : 0.0;
  for (int k = 0; k <= K; ++k) {
    const double s = static_cast<double>(k) / K;
    bundle.arc[static_cast<size_t>(k)] = (total_arc > 0.0) ? s * total_arc : s;
    Frame raw = frame_at(spec, loop.at(s), deg_tol);
    if (k == 0)
      bundle.frames.push_back(std::move(raw));
    else
      bundle.frames.push_back(
          continue_frame(bundle.frames.back(), std::move(raw), policy, k - 1, period));
  }
  return bundle;
}

Bundle bundle_along(const ModelSpec& spec, const LoopDef& loop, int K, GaugePolicy policy) {
  return bundle_along(spec, loop, K, policy, default_deg_tol(spec));
}

std::vector<Frame> track_open_path(const ModelSpec& spec,
                                   const std::vector<ParameterPoint>& points,
                                   GaugePolicy policy, double deg_tol) {
  if (points.empty()) throw ConfigError("track_open_path: no points");
  const double period = spec.kicked() ? kTwoPi / spec.T_p : 0.0;
  std::vector<Frame> frames;
  frames.reserve(points.size());
  for (size_t k = 0; k < points.size(); ++k) {
    Frame raw = frame_at(spec, points[k], deg_tol);
    if (k == 0)
      frames.push_back(std::move(raw));
    else
      frames.push_back(continue_frame(frames.back(), std::move(raw), policy,
                                      static_cast<int>(k) - 1, period));
  }
  return frames;
}

}  // namespace holo
