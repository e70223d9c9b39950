#pragma once

#include <vector>

#include "diskdft/types.hpp"

namespace diskdft::detail {

struct ExtendedRowDft {
  std::vector<cplx> first_row;     // C_l rounded to double
  std::vector<double> eigenvalues; // Re DFT(C)_j rounded to double
  double imag_residue = 0.0;       // max |Im DFT(C)_j|
  double row_abs_max = 0.0;        // max_l |C_l|_1
};

/// Unit roundoff of the extended type used below.
double extended_unit_roundoff() noexcept;

ExtendedRowDft circulant_row_dft_extended(int twice_s, double r, int n);

}  // namespace diskdft::detail
