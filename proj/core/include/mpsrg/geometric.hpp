#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mpsrg/transfer.hpp"

namespace mpsrg {

inline constexpr int kDmaxRestarts = 20;
inline constexpr double kDmaxTol = 1e-12;      // relative, on the objective
inline constexpr long kIterationCap = 10000;   // per start
inline constexpr int kBruteRestarts = 50;
inline constexpr double kBruteTol = 1e-11;     // absolute, on Lambda^2

struct EntanglementReport {
  int block_size = 1;
  double dmax_sq = 0.0;      // maximized overlap form (may overflow for
                             // extreme couplings; log_dmax_sq never does)
  double log_dmax_sq = 0.0;
  double per_block = 0.0;    // E_L in nats
  std::optional<double> total;       // finite-chain E_L
  std::optional<double> overlap_sq;  // Lambda^2 in (0, 1]
  Vector maximizer;                  // optimal bond vector r (ket copy)
  std::vector<Vector> factors;       // optimal product factors (brute force)
  bool odd_block_warning = false;    // closed forms assume even L
};

struct DmaxResult {
  double value = 0.0;      // |d_max|^2, unnormalized
  double log_value = 0.0;  // log of the above, safe at any scale
  Vector r;                // ket maximizer
  Vector l;                // bra maximizer (equals r when the optimum is
                           // attained on the diagonal r (x) r*)
};

// max over unit vectors of |(l (x) l*)^dag E^L (r (x) r*)| made achievable:
// alternating bilinear iteration. Fix the bra copy, update the ket copy as
// the dominant eigenvector of the contracted D x D matrix
// B_{ab} = sum_c [A_c]_{ab} conj(l^dag A_c r) (c runs over L-site strings),
// then alternate to the bra side; the reported value |lambda_1(B)|^2 / Q with
// Q = (l (x) l*)^dag E^L (r (x) r*) is the squared per-block overlap of the
// product state built from phi_c ∝ conj(l^dag A_c r). Starts: the D canonical
// basis vectors plus `restarts` seeded random vectors. Near-tied product
// structures (crossover couplings) bend the ascent into an almost flat
// valley, so the iteration periodically extrapolates the dominant drift
// mode (Aitken with a halving line search, kept only on improvement) and
// stops once the geometric-tail estimate of the remaining gap is below tol
// (relative) and a final extrapolation attempt finds nothing better; a
// start that exceeds the iteration cap is discarded, and NoConvergence is
// thrown only if every start failed.
DmaxResult dmax_sq(const TransferOperator& e, long L,
                   int restarts = kDmaxRestarts, double tol = kDmaxTol,
                   std::uint64_t seed = 0);

// per_block = L log(lambda_dom) - log(dmax_sq); values in [-1e-10, 0] clamp
// to 0, anything lower is an internal-consistency error.
EntanglementReport entanglement_per_block(const TransferOperator& e, long L,
                                          int restarts = kDmaxRestarts,
                                          double tol = kDmaxTol,
                                          std::uint64_t seed = 0);

// Exact n-block ring optimum, not the large-n asymptote: subleading
// eigenvalues of the tied block matrix still contribute to Tr M_phi^n at
// finite n, so total = log Tr(E^{nL}) - log max_phi |Tr M_phi^n|^2 with
// M_phi = sum_k conj(phi_k) B_k over a Kraus family {B_k} of E^L (spectral
// split of the reshuffled block power; gauge-equivalent to the physical
// L-site string products, alphabet <= D^2). per_block = total / n,
// overlap_sq = exp(-total), and maximizer holds the optimal tied block
// factor in the {B_k} basis. n = 1 is the closed form total = 0.
EntanglementReport total_block_entanglement(const TransferOperator& e, long L,
                                            long n,
                                            int restarts = kDmaxRestarts,
                                            double tol = kDmaxTol,
                                            std::uint64_t seed = 0);

enum class AnsatzKind {
  kIdentical,       // one site factor everywhere
  kAlternating,     // period-2 site factors
  kArbitrary,       // independent site factors
  kBlockIdentical,  // one L-site block factor everywhere
  kBlockArbitrary,  // independent L-site block factors
};

// Maximizes |<Phi|psi>|^2 / <psi|psi> over the ansatz family by cyclic
// Cauchy-Schwarz updates (each factor set to the normalized partial
// contraction of psi against all other factors); the identical ansatz uses
// the site-averaged update mixed 50/50 with the previous factor, which damps
// the even-odd oscillation of antiferromagnetic-type states.
EntanglementReport brute_force_geometric(const Vector& state, int d,
                                         AnsatzKind ansatz, int block_size = 1,
                                         int restarts = kBruteRestarts,
                                         double tol = kBruteTol,
                                         std::uint64_t seed = 0);

}  // namespace mpsrg
