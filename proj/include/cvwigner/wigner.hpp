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

#include <string>

#include "json.hpp"

#include "cvwigner/grid.hpp"
#include "cvwigner/states.hpp"

namespace cvw {

/// Default phase-space grid for a state: [-6, 6] per axis (a wider [-10, 10]
/// for gkp, whose comb reaches past 6), 257 nodes per axis for one mode and
/// 33 for two or more.
GridSpec default_wigner_grid(const StateSpec& spec);
GridSpec default_wigner_grid(int modes);

/// Closed-form Gaussian Wigner function.
WignerGrid wigner_gaussian(const GaussianState& s, const GridSpec& grid);

/// chi(v) = tr[rho D(v)] with D(v) = exp(i v^T omega R), from the Laguerre
/// matrix elements of D.
CharacteristicGrid characteristic_function(const FockDensityOperator& rho, const GridSpec& grid);
CharacteristicGrid characteristic_function(const GaussianState& s, const GridSpec& grid);
cplx characteristic_at(const FockDensityOperator& rho, const Vec& v);
cplx characteristic_at(const GaussianState& s, const Vec& v);

/// W(z) = (2 pi)^{-2m} sum_v chi(v) exp(-i [v, z]) dV evaluated on `out`,
/// as a separable transform along each axis. Throws InadequacyError when
/// |chi| exceeds 1e-8 on the boundary of its grid or the result keeps an
/// imaginary part above 1e-8.
WignerGrid wigner_from_characteristic(const CharacteristicGrid& chi, const GridSpec& out);

/// sum_v chi(v) exp(-i [v, z]) dV on the nodes of `out`, without prefactor
/// or checks.
std::vector<cplx> symplectic_fourier(const CharacteristicGrid& chi, const GridSpec& out);

/// Default v-grid for the Fourier route: [-16, 16] with 321 nodes per axis
/// at one mode.
GridSpec default_characteristic_grid(int modes);

/// sum_mn rho_mn W_{|m><n|} from the closed-form Laguerre kernels.
WignerGrid wigner_fock_direct(const FockDensityOperator& rho, const GridSpec& grid);

/// Closed form for Gaussian states, direct kernels for Fock states.
WignerGrid wigner(const State& state, const GridSpec& grid);

/// sum |W| dV - sum W dV.
double negativity_volume(const WignerGrid& w);
/// log sum |W| dV.
double log_negativity(const WignerGrid& w);

struct MinValue {
  double value;
  Vec location;
};
MinValue min_value(const WignerGrid& w);

/// JSON sidecar {axes, cell_volume, normalization, min, min_location,
/// negativity_volume, log_negativity}.
nlohmann::json wigner_summary(const WignerGrid& w);

enum class HudsonClass { gaussian_nonnegative, negative };
std::string to_string(HudsonClass c);

struct HudsonReport {
  HudsonClass classification;
  double purity;
  double min_value;
  double max_abs;
  /// Largest |excess kurtosis| of the quadrature marginals at angles
  /// 0, pi/4, pi/2, 3pi/4 on each mode.
  double max_excess_kurtosis;
  /// The kurtosis test (< 1e-3) agrees with the negativity classification.
  bool gaussianity_consistent;
};

/// Pure-state classifier: nonnegative iff min W >= -1e-6 max|W|. Throws
/// PreconditionError when the purity is below 1 - 1e-6.
HudsonReport hudson_classify(const State& state, const GridSpec& grid);

}  // namespace cvw
