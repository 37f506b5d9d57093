// Copyright 2026 The cvwigner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "cvwigner/core.hpp"
#include "cvwigner/phase_space.hpp"

/// Truncated Fock-space building blocks. Multimode states use the dense
/// multi-index basis |n_1 ... n_m> with index sum_j n_j cutoff^{m-1-j}, so
/// operators on mode 0 are the leftmost Kronecker factor.
namespace cvw::fock {

/// cutoff^modes; throws InadequacyError past the dense-storage cap.
int dimension(int modes, int cutoff);

/// Largest dense Fock dimension the library will allocate.
inline constexpr int kMaxDimension = 4096;

SpCMat annihilation(int cutoff);
SpCMat identity(int dim);
SpCMat kron(const SpCMat& a, const SpCMat& b);
CMat kron(const CMat& a, const CMat& b);

/// Embeds a single-mode operator on `mode` into the m-mode space.
SpCMat embed(const SpCMat& single, int mode, int modes, int cutoff);

/// Exact truncations P q P and P p P of the single-mode quadratures
/// (hbar = 1, q = (a + a^dag)/sqrt(2)).
SpCMat position(int cutoff);
SpCMat momentum(int cutoff);

/// Per-mode quadrature list R = (q_1..q_m, p_1..p_m) on the m-mode space.
std::vector<SpCMat> quadratures(int modes, int cutoff);

/// <row|D(alpha)|col> for all row, col < cutoff, from the associated-Laguerre
/// closed form. D(alpha) = exp(alpha a^dag - conj(alpha) a).
CMat displacement(cplx alpha, int cutoff);

/// Fills only the entries with |row - col| <= band; others are left zero.
void displacement_band(cplx alpha, int cutoff, int band, CMat& out);

/// Complex amplitude alpha = (x + i p)/sqrt(2) of the displacement D(zeta)
/// restricted to one mode.
inline cplx mode_amplitude(double x, double p) { return cplx(x, p) / std::sqrt(2.0); }

/// Wigner kernels W_{|m><n|}(q, p) for all m, n < cutoff, written into out(m, n).
/// Normalized so that sum_mn rho_mn W_{|m><n|} integrates to tr(rho).
void wigner_kernels(double q, double p, int cutoff, CMat& out);

/// Hermite functions psi_0..psi_{count-1} at x, built by the three-term
/// recurrence with running rescaling so large orders and |x| do not overflow.
std::vector<double> hermite_functions(int count, double x);

/// Coefficients <n|alpha> of a coherent state for n < cutoff.
CVec coherent_amplitudes(cplx alpha, int cutoff);

/// Indices of the multi-index basis states whose per-mode levels are all
/// below `keep`, in a space with per-mode cutoff `cutoff`.
std::vector<int> low_level_indices(int modes, int cutoff, int keep);

/// Gaussian unitary G on the per-mode `cutoff` space with
/// G^dag R G = S R (means transform as mean -> S mean). Built from the polar
/// decomposition S = O P: the passive factor is exp(-i a^dag A a) with
/// e^{-iA} the U(m) image of O, the positive factor is exp(-i/2 R^T H R)
/// with H = omega log P. Exponentials are taken on the truncated space, so
/// callers should pass a cutoff with headroom above the levels they keep.
CMat gaussian_unitary(const SymplecticMatrix& s, int cutoff);

/// G = left * (tensor_j squeezes[j]) * right, with passive (number-conserving,
/// hence sparse) outer factors.
struct GaussianFactors {
  SpCMat left;
  std::vector<CMat> squeezes;
  SpCMat right;
};
GaussianFactors gaussian_factors(const SymplecticMatrix& s, int cutoff);

/// Passive unitary with G^dag R G = O R for orthogonal symplectic O.
SpCMat passive_unitary(const Mat& o, int cutoff);
/// Single-mode S(r) = exp(r/2 (a^2 - a^dag^2)), S^dag q S = e^{-r} q.
CMat squeeze_unitary(double r, int cutoff);

/// G rho G^dag, applied factor by factor.
CMat conjugate(const GaussianFactors& f, const CMat& rho);
/// (tensor_j U_j) rho (tensor_j U_j)^dag, one mode at a time.
CMat conjugate_local(const std::vector<CMat>& per_mode, const CMat& rho);
CMat local_product(const std::vector<CMat>& per_mode);
/// D(zeta) rho D(zeta)^dag.
CMat conjugate_displacement(const SymplecticVector& zeta, int cutoff, const CMat& rho);

/// Multimode displacement D(zeta) = tensor_j D(alpha_j) on the truncated space.
CMat displacement(const SymplecticVector& zeta, int cutoff);

/// Restriction of a matrix on the `from` per-mode cutoff space to `to`.
CMat restrict_levels(const CMat& m, int modes, int from, int to);
/// Zero-extension of a matrix from the `from` space into the larger `to` space.
CMat extend_levels(const CMat& m, int modes, int from, int to);

}  // namespace cvw::fock
