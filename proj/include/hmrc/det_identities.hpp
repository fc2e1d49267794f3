#pragma once

// Block determinant identities for matrices of the form
//   [ C_1  0   ...  0  ]
//   [ 0    C_2 ...  0  ]
//   [ ...              ]
//   [ D_1  D_2 ... D_h ]
// with C_i of shape a x (a+m_i) and every D_i with sum(m_i) rows.

#include <vector>

#include "hmrc/matrix.hpp"

namespace hmrc {

/// The stacked matrix above. Throws ShapeMismatch.
FMatrix stacked_block_matrix(const std::vector<FMatrix>& c, const std::vector<FMatrix>& d);

/// det of the stacked matrix by Laplace expansion along the D rows: a signed
/// sum over assignments of D rows to blocks of prod det([C_i; chosen rows of D_i]).
Elem block_laplace_det(const std::vector<FMatrix>& c, const std::vector<FMatrix>& d);

/// m_i = 1 for every block, h = number of blocks:
/// (-1)^(a h (h-1)/2) det[ det[C_j; D_j row i] ]_{i,j}.
Elem diag_id_rhs(const std::vector<FMatrix>& c, const std::vector<FMatrix>& d);

/// m = (1, 2), three D rows with the stated signs.
Elem prod2_id_rhs(const FMatrix& c1, const FMatrix& c2, const FMatrix& d1, const FMatrix& d2);

/// m = (1, 1, 2), four D rows with D_3 row 1, D_1 row 2 and D_2 row 2 zero with the stated signs.
Elem prod3_id_rhs(const FMatrix& c1, const FMatrix& c2, const FMatrix& c3, const FMatrix& d1, const FMatrix& d2,
                  const FMatrix& d3);

}  // namespace hmrc
