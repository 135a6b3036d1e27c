#pragma once

#include <cstdint>
#include <vector>

namespace symdesign {

/// Second frame potential of the SU(2)-symmetric Haar ensemble on n qubits,
/// summed sector by sector: each sector contributes m^4 times E|tr V|^4
/// (2 for a Haar unitary of dimension >= 2, 1 for a bare phase), and each
/// ordered pair of distinct sectors 2 m_a^2 m_b^2.
std::int64_t frame_potential_exact_k2(int n);

/// The closed-form qubit expression (n+1)^4 + 2 sum_{r>=1} (n-2r+1)^4 +
/// 2 sum_{r != s} (n-2r+1)^2 (n-2s+1)^2 evaluated literally, with the
/// r != s sum over ordered pairs. It treats every r >= 1 sector as having
/// E|tr V|^4 = 2, which is wrong for the one-dimensional (1,1) sector at n = 2.
std::int64_t frame_potential_paper_k2(int n);

/// Sum of m_lambda^2 over qubit sectors: the k = 1 commutant dimension.
std::int64_t commutant_dim_k1(int n);

/// Rows l = 0..l_max of V[l][r] = s_r^l, where s_r is the content sum of the
/// qubit shape (n-r, r).
std::vector<std::vector<std::int64_t>> phase_basis_matrix(int n, int l_max);

/// Exact rank of phase_basis_matrix (fraction-free elimination over big integers).
int phase_basis_rank(int n, int l_max);

}  // namespace symdesign
