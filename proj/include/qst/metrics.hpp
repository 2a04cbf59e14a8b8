#pragma once

#include "qst/density_matrix.hpp"

namespace qst {

// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), computed via Hermitian
// eigendecompositions with negative eigenvalues clipped to zero before each
// square root.
//
// NOTE the convention: F is NOT squared here, so for pure states
// F = |<u|v>|, not |<u|v>|^2. Both conventions circulate; this library uses
// the unsquared one throughout.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// (1/2) sum |eigenvalues(rho - sigma)|, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// tr(rho^2), in [1/d, 1].
double purity(const DensityMatrix& rho);

}  // namespace qst
