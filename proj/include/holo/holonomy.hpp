#pragma once

#include <optional>
#include <vector>

#include "holo/eigenframe.hpp"

namespace holo {

// Discrete connection sample at grid point k. A is the Hermitian generator of
// the unitarized overlap divided by the step (symmetric average at interior
// points), A_diag the corresponding generator of the block-diagonal overlap —
// exactly the object the ordered B factor integrates.
struct ConnectionSample {
  int k = 0;
  CMatrix A;
  CMatrix A_diag;
};

struct HolonomyResult {
  CMatrix W;  // path-ordered displacement factor
  CMatrix B;  // (block-)diagonal ordered exponential
  CMatrix M;  // W * B
  std::optional<std::vector<int>> permutation;  // column-level map n -> pi(n)
  std::vector<cplx> phases;                     // per band (nondegenerate case)
  std::vector<CMatrix> block_unitaries;         // per block (degenerate case)
  std::vector<int> delta_n;                     // energy-label shift per band
  std::vector<double> dynamical_phases;         // filled by the propagation front end
  std::vector<std::vector<int>> blocks;         // base-point degeneracy structure
};

struct PermutationPhases {
  std::vector<int> permutation;
  std::vector<cplx> phases;
};

struct BlockPermutation {
  std::vector<int> block_map;            // source block -> target block
  std::vector<CMatrix> block_unitaries;  // dominant sub-block per source block
  std::vector<int> column_map;           // order-preserving column-level map
};

ConnectionSample connection_at(const Bundle& bundle, int k);

// Discrete Wilson line: ordered product of unitarized consecutive overlaps,
// earlier path points on the left. Accumulated so that the continued final
// frame expands as |v_m(end)> = sum_l |v_l(start)> W_lm.
CMatrix wilson_W(const Bundle& bundle);
// Partial product over links [k0, k1); composes as W(a,c) = W(a,b) W(b,c).
CMatrix wilson_W(const Bundle& bundle, int k0, int k1);

// Reverse-ordered product of the block-diagonal overlap factors (later path
// points multiplied on the left). Diagonal when no degeneracy is present.
CMatrix ordered_B(const Bundle& bundle);

HolonomyResult holonomy_M(const Bundle& bundle, double perm_tol = 1e-3);

// Diagonal gauge twist g[k][n] applied as |v_n(a_k)> -> e^{i g} |v_n(a_k)>;
// the twist at k = K may differ from k = 0 (multi-valued gauges allowed).
Bundle apply_gauge(const Bundle& bundle, const std::vector<std::vector<double>>& diag_phases);
// Full per-point block rotations, one unitary per degenerate block.
Bundle apply_gauge(const Bundle& bundle,
                   const std::vector<std::vector<CMatrix>>& block_unitaries);

std::optional<PermutationPhases> classify_permutation(const CMatrix& m, double tol);
std::optional<BlockPermutation> classify_block_permutation(
    const CMatrix& m, const std::vector<std::vector<int>>& blocks, double tol);

// Integer ladder shift per band from the tracked quasienergies: how many
// rungs of the base-point quasienergy ladder each band climbed over the loop.
std::vector<int> delta_n_from_tracking(const Bundle& bundle);

// min over diagonal (or block-diagonal) unitaries G of ||G^† m G - target||_F
double conjugation_minimized_distance(const CMatrix& m, const CMatrix& target);
double conjugation_minimized_distance(const CMatrix& m, const CMatrix& target,
                                      const std::vector<std::vector<int>>& blocks);

}  // namespace holo
