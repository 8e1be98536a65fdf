#include "holo/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace holo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

CMatrix subblock(const CMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  return out;
}

void set_subblock(CMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols,
                  const CMatrix& value) {
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      m(rows[i], cols[j]) = value(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

CMatrix overlap(const Bundle& bundle, int k) {
  return bundle.frames[static_cast<size_t>(k)].vectors.adjoint() *
         bundle.frames[static_cast<size_t>(k) + 1].vectors;
}

// block-diagonal part of the overlap, zero elsewhere
CMatrix block_part(const CMatrix& o, const std::vector<std::vector<int>>& blocks) {
  CMatrix out = CMatrix::Zero(o.rows(), o.cols());
  for (const auto& b : blocks) set_subblock(out, b, b, subblock(o, b, b));
  return out;
}

// unitarized block-diagonal overlap factor
CMatrix block_unitarized(const CMatrix& o, const std::vector<std::vector<int>>& blocks) {
  CMatrix out = CMatrix::Zero(o.rows(), o.cols());
  for (const auto& b : blocks) set_subblock(out, b, b, unitarize(subblock(o, b, b)));
  return out;
}

void check_blocks_consistent(const Bundle& bundle) {
  const auto& base = bundle.blocks();
  for (const Frame& f : bundle.frames)
    if (f.blocks != base)
      throw BlockMismatch("bundle block structure changes along the loop");
}

}  // namespace

ConnectionSample connection_at(const Bundle& bundle, int k) {
  if (k < 0 || k >= bundle.K())
    throw DimensionMismatch("connection_at: grid index out of range");
  check_blocks_consistent(bundle);
  const auto& blocks = bundle.blocks();

  const auto link_generators = [&](int j, CMatrix& full, CMatrix& diag) {
    const CMatrix o = overlap(bundle, j);
    full = log_unitary_generator(unitarize(o));
    diag = log_unitary_generator(block_unitarized(o, blocks));
  };

  CMatrix g_full, g_diag;
  link_generators(k, g_full, g_diag);

  ConnectionSample out;
  out.k = k;
  if (k > 0) {
    // symmetric average of the two adjacent links at interior points
    CMatrix g_full_prev, g_diag_prev;
    link_generators(k - 1, g_full_prev, g_diag_prev);
    out.A = (g_full_prev / bundle.step(k - 1) + g_full / bundle.step(k)) * 0.5;
    out.A_diag = (g_diag_prev / bundle.step(k - 1) + g_diag / bundle.step(k)) * 0.5;
  } else {
    out.A = g_full / bundle.step(k);
    out.A_diag = g_diag / bundle.step(k);
  }
  return out;
}

CMatrix wilson_W(const Bundle& bundle, int k0, int k1) {
  if (k0 < 0 || k1 > bundle.K() || k0 > k1)
    throw DimensionMismatch("wilson_W: bad link range");
  CMatrix w = CMatrix::Identity(bundle.dim(), bundle.dim());
  for (int k = k0; k < k1; ++k) w = w * unitarize(overlap(bundle, k));
  return w;
}

CMatrix wilson_W(const Bundle& bundle) {
  if (!bundle.loop.closed()) throw LoopNotClosed("wilson_W: bundle loop is not closed");
  return wilson_W(bundle, 0, bundle.K());
}

CMatrix ordered_B(const Bundle& bundle) {
  if (!bundle.loop.closed()) throw LoopNotClosed("ordered_B: bundle loop is not closed");
  check_blocks_consistent(bundle);
  const auto& blocks = bundle.blocks();
  CMatrix b = CMatrix::Identity(bundle.dim(), bundle.dim());
  for (int k = 0; k < bundle.K(); ++k)
    b = block_unitarized(overlap(bundle, k), blocks).adjoint() * b;
  return b;
}

std::optional<PermutationPhases> classify_permutation(const CMatrix& m, double tol) {
  const int n = static_cast<int>(m.cols());
  PermutationPhases out;
  out.permutation.assign(static_cast<size_t>(n), -1);
  out.phases.assign(static_cast<size_t>(n), cplx(0, 0));
  std::vector<bool> row_used(static_cast<size_t>(n), false);

  for (int col = 0; col < n; ++col) {
    int row = -1;
    for (int i = 0; i < n; ++i)
      if (std::abs(m(i, col)) >= 1.0 - tol) {
        row = i;
        break;
      }
    if (row < 0 || row_used[static_cast<size_t>(row)]) return std::nullopt;
    row_used[static_cast<size_t>(row)] = true;
    out.permutation[static_cast<size_t>(col)] = row;
    out.phases[static_cast<size_t>(col)] = m(row, col) / std::abs(m(row, col));
  }
  return out;
}

std::optional<BlockPermutation> classify_block_permutation(
    const CMatrix& m, const std::vector<std::vector<int>>& blocks, double tol) {
  const size_t nb = blocks.size();
  BlockPermutation out;
  out.block_map.assign(nb, -1);
  out.block_unitaries.resize(nb);
  out.column_map.assign(static_cast<size_t>(m.cols()), -1);
  std::vector<bool> used(nb, false);

  for (size_t src = 0; src < nb; ++src) {
    int target = -1;
    for (size_t dst = 0; dst < nb; ++dst) {
      const CMatrix sub = subblock(m, blocks[dst], blocks[src]);
      Eigen::JacobiSVD<CMatrix> svd(sub);
      const double smin = svd.singularValues().minCoeff();
      const double smax = svd.singularValues().maxCoeff();
      if (blocks[dst].size() == blocks[src].size() && smin >= 1.0 - tol) {
        if (target >= 0) return std::nullopt;
        target = static_cast<int>(dst);
      } else if (smax > tol) {
        return std::nullopt;  // weight leaking outside a single block
      }
    }
    if (target < 0 || used[static_cast<size_t>(target)]) return std::nullopt;
    used[static_cast<size_t>(target)] = true;
    out.block_map[src] = target;
    out.block_unitaries[src] = subblock(m, blocks[static_cast<size_t>(target)], blocks[src]);
    for (size_t j = 0; j < blocks[src].size(); ++j)
      out.column_map[static_cast<size_t>(blocks[src][j])] =
          blocks[static_cast<size_t>(target)][j];
  }
  return out;
}

std::vector<int> delta_n_from_tracking(const Bundle& bundle) {
  check_blocks_consistent(bundle);
  const Frame& first = bundle.frames.front();
  const Frame& last = bundle.frames.back();
  const auto& blocks = first.blocks;
  const int nblocks = static_cast<int>(blocks.size());
  const double period = bundle.spec.kicked() ? kTwoPi / bundle.spec.T_p : 0.0;

  // ladder rungs at the base point: one representative quasienergy per block,
  // lifted so the representatives ascend within one period cell
  std::vector<double> rung(static_cast<size_t>(nblocks), 0.0);
  std::vector<int> block_of(static_cast<size_t>(first.dim()), 0);
  for (int b = 0; b < nblocks; ++b) {
    double mean = 0.0;
    for (int j : blocks[static_cast<size_t>(b)]) {
      mean += first.quasienergies[static_cast<size_t>(j)];
      block_of[static_cast<size_t>(j)] = b;
    }
    mean /= static_cast<double>(blocks[static_cast<size_t>(b)].size());
    if (period > 0.0 && b > 0) {
      double lift = std::fmod(mean - rung[static_cast<size_t>(b - 1)], period);
      if (lift <= 0.0) lift += period;
      mean = rung[static_cast<size_t>(b - 1)] + lift;
    }
    rung[static_cast<size_t>(b)] = mean;
  }

  std::vector<int> delta(static_cast<size_t>(first.dim()), 0);
  for (int j = 0; j < first.dim(); ++j) {
    const double end = last.quasienergies[static_cast<size_t>(j)];
    int best_rung = 0;
    double best_err = std::numeric_limits<double>::max();
    for (int b = 0; b < nblocks; ++b) {
      if (period > 0.0) {
        const double cells = std::round((end - rung[static_cast<size_t>(b)]) / period);
        const double err = std::abs(end - rung[static_cast<size_t>(b)] - cells * period);
        if (err < best_err) {
          best_err = err;
          best_rung = b + nblocks * static_cast<int>(cells);
        }
      } else {
        const double err = std::abs(end - rung[static_cast<size_t>(b)]);
        if (err < best_err) {
          best_err = err;
          best_rung = b;
        }
      }
    }
    delta[static_cast<size_t>(j)] = best_rung - block_of[static_cast<size_t>(j)];
  }
  return delta;
}

HolonomyResult holonomy_M(const Bundle& bundle, double perm_tol) {
  HolonomyResult out;
  out.W = wilson_W(bundle);
  out.B = ordered_B(bundle);
  out.M = out.W * out.B;
  out.blocks = bundle.blocks();
  out.delta_n = delta_n_from_tracking(bundle);

  const bool degenerate =
      std::any_of(out.blocks.begin(), out.blocks.end(), [](const auto& b) { return b.size() > 1; });
  if (!degenerate) {
    if (auto cp = classify_permutation(out.M, perm_tol)) {
      out.permutation = cp->permutation;
      out.phases = cp->phases;
    }
  } else {
    if (auto bp = classify_block_permutation(out.M, out.blocks, perm_tol)) {
      out.permutation = bp->column_map;
      out.block_unitaries = bp->block_unitaries;
    }
  }
  return out;
}

Bundle apply_gauge(const Bundle& bundle, const std::vector<std::vector<double>>& diag_phases) {
  if (diag_phases.size() != bundle.frames.size())
    throw DimensionMismatch("apply_gauge: one phase vector per frame required");
  Bundle out = bundle;
  for (size_t k = 0; k < out.frames.size(); ++k) {
    if (static_cast<int>(diag_phases[k].size()) != bundle.dim())
      throw DimensionMismatch("apply_gauge: phase vector length mismatch");
    for (int j = 0; j < bundle.dim(); ++j)
      out.frames[k].vectors.col(j) *= std::exp(cplx(0.0, diag_phases[k][static_cast<size_t>(j)]));
  }
  return out;
}

Bundle apply_gauge(const Bundle& bundle,
                   const std::vector<std::vector<CMatrix>>& block_unitaries) {
  if (block_unitaries.size() != bundle.frames.size())
    throw DimensionMismatch("apply_gauge: one rotation list per frame required");
  const auto& blocks = bundle.blocks();
  Bundle out = bundle;
  for (size_t k = 0; k < out.frames.size(); ++k) {
    if (block_unitaries[k].size() != blocks.size())
      throw DimensionMismatch("apply_gauge: one rotation per block required");
    for (size_t b = 0; b < blocks.size(); ++b) {
      const CMatrix& g = block_unitaries[k][b];
      const auto sz = static_cast<Eigen::Index>(blocks[b].size());
      if (g.rows() != sz || g.cols() != sz)
        throw DimensionMismatch("apply_gauge: rotation shape mismatch");
      CMatrix cols(bundle.dim(), sz);
      for (size_t j = 0; j < blocks[b].size(); ++j)
        cols.col(static_cast<Eigen::Index>(j)) = out.frames[k].vectors.col(blocks[b][j]);
      cols = cols * g;
      for (size_t j = 0; j < blocks[b].size(); ++j)
        out.frames[k].vectors.col(blocks[b][j]) = cols.col(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

namespace {

// maximize Re tr(G^† m^† G t) over block-diagonal unitary G by cyclic polar
// updates; near-exact data makes this converge in a handful of sweeps
double conj_min_impl(const CMatrix& m, const CMatrix& t,
                     const std::vector<std::vector<int>>& blocks) {
  if (m.rows() != t.rows() || m.cols() != t.cols())
    throw DimensionMismatch("conjugation_minimized_distance: shape mismatch");
  const CMatrix md = m.adjoint();
  std::vector<CMatrix> g(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b)
    g[b] = CMatrix::Identity(static_cast<Eigen::Index>(blocks[b].size()),
                             static_cast<Eigen::Index>(blocks[b].size()));

  const auto assemble = [&]() {
    CMatrix full = CMatrix::Zero(m.rows(), m.cols());
    for (size_t b = 0; b < blocks.size(); ++b) set_subblock(full, blocks[b], blocks[b], g[b]);
    return full;
  };
  const auto distance = [&]() {
    const CMatrix full = assemble();
    return (full.adjoint() * m * full - t).norm();
  };

  double best = distance();
  for (int sweep = 0; sweep < 500; ++sweep) {
    for (size_t i = 0; i < blocks.size(); ++i) {
      CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(blocks[i].size()),
                                static_cast<Eigen::Index>(blocks[i].size()));
      for (size_t k = 0; k < blocks.size(); ++k)
        c += subblock(md, blocks[i], blocks[k]) * g[k] * subblock(t, blocks[k], blocks[i]);
      Eigen::JacobiSVD<CMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
      g[i] = svd.matrixU() * svd.matrixV().adjoint();
    }
    const double d = distance();
    if (best - d < 1e-15 && sweep > 2) {
      best = std::min(best, d);
      break;
    }
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

double conjugation_minimized_distance(const CMatrix& m, const CMatrix& target) {
  std::vector<std::vector<int>> blocks;
  for (int j = 0; j < m.cols(); ++j) blocks.push_back({j});
  return conj_min_impl(m, target, blocks);
}

double conjugation_minimized_distance(const CMatrix& m, const CMatrix& target,
                                      const std::vector<std::vector<int>>& blocks) {
  return conj_min_impl(m, target, blocks);
}

}  // namespace holo
