#pragma once

#include <optional>
#include <vector>

#include "sense/sampling.hpp"

namespace sense {

/// Finite MMV system V = A U with row-sparse U (r = 1 gives the single
/// measurement vector case).
struct MMVProblem {
  MatC A;
  MatC V;
  int sparsity = 0;
};

struct SupportEstimate {
  std::vector<int> indices;  // sorted ascending
  VecD scores;               // selection score per index, aligned with indices
  bool converged = true;

  bool contains(int idx) const;
};

struct OmpOptions {
  double residual_tol = 1e-6;  // stop when ||R||_F / ||V||_F drops below
};

/// Orthogonal matching pursuit; greedy column selection by residual
/// projection with least-squares refits. Ties break toward the lowest index.
/// Throws "rank-deficient" if the selected submatrix loses column rank.
std::pair<SupportEstimate, VecC> omp(const MMVProblem& problem, const OmpOptions& opts = {});

/// Simultaneous OMP over all columns of V; with r = 1 the selections match
/// omp exactly.
SupportEstimate somp(const MMVProblem& problem, const OmpOptions& opts = {});

/// Coefficients of the SOMP least-squares refit on the final support.
std::pair<SupportEstimate, MatC> somp_with_coefficients(const MMVProblem& problem,
                                                        const OmpOptions& opts = {});

struct IhtOptions {
  int max_iters = 200;
  double step_tol = 1e-10;  // fixed-point detection on the iterate change
};

/// Iterative hard thresholding: gradient step of size mu followed by
/// restriction to the k largest-magnitude entries. Requires mu in
/// (0, 2/||A||^2) for the monotone-objective guarantee; the returned flag
/// reports convergence within the iteration budget.
std::pair<SupportEstimate, VecC> iht(const MMVProblem& problem, double mu,
                                     const IhtOptions& opts = {});

/// Largest step size with the default convergence guarantee is 2/||A||^2;
/// this returns 1/||A||^2.
double iht_default_step(const MatC& A);

struct CtfOptions {
  double rel_eigenvalue_cutoff = 1e-6;          // relative to the largest eigenvalue
  std::optional<double> abs_eigenvalue_floor;   // noise mode: absolute cutoff
};

/// Continuous-to-finite block: Q = sum_n z[n] z[n]^H decomposed as Q = V V^H
/// with V spanning the dominant eigenspace. Column count equals the numerical
/// rank of Q under the declared cutoff.
MatC ctf(const MatC& snapshots, const CtfOptions& opts = {});

/// x_S = pinv(A_S) z for every snapshot column; rows outside S are zero.
/// Throws "rank-deficient" when A_S loses column rank.
MatC recover_slices(const SamplingMatrix& A, const MatC& snapshots, const SupportEstimate& S);

/// The spectrum-sensing entry point: corrected slice snapshots -> CTF -> SOMP.
SupportEstimate sense_support(const ChannelStreams& z, const SamplingMatrix& A, int k,
                              int n_frames = 1, const CtfOptions& ctf_opts = {});

/// Drops support entries whose recovered slice energy is below `rel_floor`
/// times the strongest slice; used to undo deliberate over-selection.
SupportEstimate prune_support_by_energy(const SupportEstimate& S, const MatC& slices,
                                        double rel_floor = 1e-3);

}  // namespace sense
