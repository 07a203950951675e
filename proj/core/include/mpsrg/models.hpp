#pragma once

#include <string>

#include "mpsrg/mps.hpp"

namespace mpsrg {

enum class ModelId {
  kAklt,
  kGhz,
  kAntiferroGhz,
  kCluster,
  kModel1,  // spin-1/2 chain, D=2, matrices {[[0,0],[1,1]], [[1,g],[0,0]]}
  kModel2,  // spin-1 chain, D=2, matrices {sigma+, -sigma_z, g sigma-}
};

struct ModelPoint {
  ModelId model;
  double g = 0.0;  // ignored (and rejected if passed) for parameter-free models
};

// Parses "aklt", "ghz", "cluster", "model1", "model2", "afm-ghz".
ModelId parse_model(const std::string& name);
std::string model_name(ModelId id);
bool model_has_coupling(ModelId id);

// Exact catalog matrices. Model 2 physical labels are ordered (m=+1, m=0,
// m=-1) so that the Sz = diag(1,0,-1) convention of the parent Hamiltonian
// matches the amplitude basis; the transfer operator is order-independent.
UniformMps catalog_mps(const ModelPoint& point);

// Closed-form per-block entanglement E_L, L even. Three branches for g > 0
// selected by (1+g)^L |1-g|^(-L) sqrt(g) vs (1+g); |g| = 1 handled as the
// printed limits (0 at g=1, log 2 at g=-1 for L >= 2).
double model1_per_block(double g, long L);

// E_inf: log2 + log(1+g) - 2 log(1+sqrt(g)) for g>0; 0 at g=0; log2 for g<0.
double model1_fixed_point(double g);

// E_L(-g) = E_L(g); log2 - log[1+(1+|g|)^(-L)] for 0 <= |g| < 2 and
// log2 - log[1+(1+|g|)^(-L) (|g|-1)^L] for |g| > 2; L even.
double model2_per_block(double g, long L);

// log 2 for g != 0; 0 at g = 0.
double model2_fixed_point(double g);

// Shared by both models: log[(1+sqrt(g1 g2))^2/((1+|g1|)(1+|g2|))] for
// g1 g2 >= 0, log[(1+|g1 g2|)/((1+|g1|)(1+|g2|))] for g1 g2 < 0.
double fidelity_closed_form(double g1, double g2);

// AKLT closed form log2 - log[1 + (-1/3)^L], any L >= 1.
double aklt_per_block(long L);

// Dense periodic parent Hamiltonian, d^m x d^m, Hermitian.
// Model 1: sum_i [2(g^2-1) sz_i sz_{i+1} - (1+g)^2 sx_i + (g-1)^2 sz_{i-1} sx_i sz_{i+1}].
// Model 2: sum_i [(2+g^2) S_i.S_{i+1} + 2 (S_i.S_{i+1})^2 + 2(4-g^2)(Sz_i)^2
//                 - (g+2)^2 (Sz_i Sz_{i+1})^2 + g(g+2){Sz_i Sz_{i+1}, S_i.S_{i+1}}].
Matrix hamiltonian(const ModelPoint& point, int m);

}  // namespace mpsrg
