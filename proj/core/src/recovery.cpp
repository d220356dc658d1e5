#include "sense/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace sense {

namespace {

MatC columns(const MatC& A, const std::vector<int>& idx) {
  MatC out(A.rows(), Eigen::Index(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) out.col(Eigen::Index(j)) = A.col(idx[j]);
  return out;
}

/// Least squares V ~= A_S X with a rank check on A_S.
MatC solve_ls(const MatC& As, const MatC& V) {
  Eigen::ColPivHouseholderQR<MatC> qr(As);
  qr.setThreshold(1e-10);
  require(qr.rank() == As.cols(), "rank-deficient",
          "selected column set is rank deficient");
  return qr.solve(V);
}

struct GreedyResult {
  SupportEstimate support;
  MatC coeffs;
};

GreedyResult greedy_pursuit(const MMVProblem& problem, const OmpOptions& opts) {
  const MatC& A = problem.A;
  const MatC& V = problem.V;
  require(A.rows() == V.rows(), "bad-shape", "A and V row mismatch");
  require(problem.sparsity <= int(A.rows()), "bad-sparsity", "k must not exceed M");
  const Eigen::Index N = A.cols();

  VecD col_norm2(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    col_norm2[j] = A.col(j).squaredNorm();
    require(col_norm2[j] > 0.0, "zero-column", "sampling matrix has a zero column");
  }

  GreedyResult res;
  const double v_norm = V.norm();
  if (v_norm == 0.0) {
    res.coeffs = MatC::Zero(0, V.cols());
    return res;
  }

  std::vector<int> picked;
  MatC residual = V;
  VecD pick_scores;
  while (int(picked.size()) < problem.sparsity) {
    // Index most correlated to the residual, summed over measurement columns.
    int best = -1;
    double best_score = -1.0;
    for (Eigen::Index j = 0; j < N; ++j) {
      if (std::find(picked.begin(), picked.end(), int(j)) != picked.end()) continue;
      const double score = (A.col(j).adjoint() * residual).squaredNorm() / col_norm2[j];
      if (score > best_score + 1e-15 * std::max(1.0, best_score)) {
        best_score = score;
        best = int(j);
      }
    }
    if (best < 0 || best_score <= 0.0) break;
    picked.push_back(best);

    MatC As = columns(A, picked);
    MatC X = solve_ls(As, V);
    residual = V - As * X;
    res.coeffs = X;
    if (residual.norm() / v_norm < opts.residual_tol) break;
  }

  // Sort the support, keeping coefficients and scores aligned.
  std::vector<size_t> order(picked.size());
  std::iota(order.begin(), order.end(), size_t(0));
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return picked[a] < picked[b]; });
  SupportEstimate& sup = res.support;
  sup.indices.resize(picked.size());
  sup.scores.resize(Eigen::Index(picked.size()));
  MatC sorted_coeffs(Eigen::Index(picked.size()), V.cols());
  for (size_t r = 0; r < order.size(); ++r) {
    sup.indices[r] = picked[order[r]];
    const MatC As_r = problem.A.col(sup.indices[r]);
    sup.scores[Eigen::Index(r)] = (As_r.adjoint() * V).norm();
    sorted_coeffs.row(Eigen::Index(r)) = res.coeffs.row(Eigen::Index(order[r]));
  }
  res.coeffs = sorted_coeffs;
  return res;
}

}  // namespace

bool SupportEstimate::contains(int idx) const {
  return std::binary_search(indices.begin(), indices.end(), idx);
}

std::pair<SupportEstimate, VecC> omp(const MMVProblem& problem, const OmpOptions& opts) {
  require(problem.V.cols() == 1, "bad-shape", "omp expects a single measurement vector");
  auto res = greedy_pursuit(problem, opts);
  VecC x = VecC::Zero(problem.A.cols());
  for (size_t r = 0; r < res.support.indices.size(); ++r)
    x[res.support.indices[r]] = res.coeffs(Eigen::Index(r), 0);
  return {std::move(res.support), std::move(x)};
}

SupportEstimate somp(const MMVProblem& problem, const OmpOptions& opts) {
  return greedy_pursuit(problem, opts).support;
}

std::pair<SupportEstimate, MatC> somp_with_coefficients(const MMVProblem& problem,
                                                        const OmpOptions& opts) {
  auto res = greedy_pursuit(problem, opts);
  return {std::move(res.support), std::move(res.coeffs)};
}

double iht_default_step(const MatC& A) {
  Eigen::JacobiSVD<MatC> svd(A);
  const double s = svd.singularValues()[0];
  require(s > 0.0, "zero-column", "zero sampling matrix");
  return 1.0 / (s * s);
}

std::pair<SupportEstimate, VecC> iht(const MMVProblem& problem, double mu, const IhtOptions& opts) {
  require(problem.V.cols() == 1, "bad-shape", "iht expects a single measurement vector");
  const MatC& A = problem.A;
  const VecC z = problem.V.col(0);
  const Eigen::Index N = A.cols();
  const int k = problem.sparsity;

  auto threshold_to_k = [&](VecC& x) {
    if (k >= int(N)) return;
    std::vector<Eigen::Index> idx(size_t(N));
    std::iota(idx.begin(), idx.end(), Eigen::Index(0));
    std::nth_element(idx.begin(), idx.begin() + k, idx.end(), [&](Eigen::Index a, Eigen::Index b) {
      const double na = std::norm(x[a]), nb = std::norm(x[b]);
      if (na != nb) return na > nb;
      return a < b;  // deterministic tie break
    });
    VecC out = VecC::Zero(N);
    for (int r = 0; r < k; ++r) out[idx[size_t(r)]] = x[idx[size_t(r)]];
    x = out;
  };

  VecC x = VecC::Zero(N);
  bool converged = false;
  for (int it = 0; it < opts.max_iters; ++it) {
    VecC next = x + mu * (A.adjoint() * (z - A * x));
    threshold_to_k(next);
    const double delta = (next - x).norm();
    x = next;
    if (delta < opts.step_tol * std::max(1.0, x.norm())) {
      converged = true;
      break;
    }
  }

  SupportEstimate sup;
  sup.converged = converged;
  for (Eigen::Index j = 0; j < N; ++j)
    if (x[j] != cd(0.0, 0.0)) sup.indices.push_back(int(j));
  sup.scores.resize(Eigen::Index(sup.indices.size()));
  for (size_t r = 0; r < sup.indices.size(); ++r)
    sup.scores[Eigen::Index(r)] = std::abs(x[sup.indices[r]]);
  return {std::move(sup), std::move(x)};
}

MatC ctf(const MatC& snapshots, const CtfOptions& opts) {
  require(snapshots.size() > 0, "zero-input", "ctf needs at least one snapshot");
  const Eigen::Index M = snapshots.rows();
  MatC Q = snapshots * snapshots.adjoint();
  Eigen::SelfAdjointEigenSolver<MatC> eig(Q);
  require(eig.info() == Eigen::Success, "eig-failure", "eigendecomposition failed");
  const VecD& lam = eig.eigenvalues();  // ascending
  const double lam_max = lam[M - 1];
  double cutoff = std::max(0.0, lam_max) * opts.rel_eigenvalue_cutoff;
  if (opts.abs_eigenvalue_floor) cutoff = std::max(cutoff, *opts.abs_eigenvalue_floor);

  int rank = 0;
  for (Eigen::Index i = 0; i < M; ++i)
    if (lam[i] > cutoff) ++rank;
  MatC V(M, rank);
  for (int r = 0; r < rank; ++r) {
    const Eigen::Index i = M - 1 - r;  // strongest first
    V.col(r) = eig.eigenvectors().col(i) * std::sqrt(std::max(0.0, lam[i]));
  }
  return V;
}

MatC recover_slices(const SamplingMatrix& A, const MatC& snapshots, const SupportEstimate& S) {
  require(int(S.indices.size()) <= int(A.channels()), "bad-sparsity",
          "support larger than the channel count");
  MatC out = MatC::Zero(A.slices(), snapshots.cols());
  if (S.indices.empty()) return out;
  MatC As = columns(A.entries, S.indices);
  MatC Xs = solve_ls(As, snapshots);
  for (size_t r = 0; r < S.indices.size(); ++r) out.row(S.indices[r]) = Xs.row(Eigen::Index(r));
  return out;
}

SupportEstimate sense_support(const ChannelStreams& z, const SamplingMatrix& A, int k,
                              int n_frames, const CtfOptions& ctf_opts) {
  const SnapshotFrames snaps = slice_snapshots(z, n_frames);
  MatC V = ctf(snaps.snapshots, ctf_opts);
  if (V.cols() == 0) return {};
  MMVProblem problem{A.entries, V, k};
  return somp(problem);
}

SupportEstimate prune_support_by_energy(const SupportEstimate& S, const MatC& slices,
                                        double rel_floor) {
  double strongest = 0.0;
  for (int idx : S.indices) strongest = std::max(strongest, slices.row(idx).squaredNorm());
  SupportEstimate out;
  std::vector<double> kept_scores;
  for (int idx : S.indices) {
    const double e = slices.row(idx).squaredNorm();
    if (e > rel_floor * strongest) {
      out.indices.push_back(idx);
      kept_scores.push_back(e);
    }
  }
  out.scores = Eigen::Map<VecD>(kept_scores.data(), Eigen::Index(kept_scores.size()));
  out.converged = S.converged;
  return out;
}

}  // namespace sense
