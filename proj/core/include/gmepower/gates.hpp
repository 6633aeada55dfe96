// Copyright 2026 The gmepower Authors
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

#include <cstdint>
#include <span>
#include <string_view>

#include "gmepower/quantum_core.hpp"

namespace gmepower {

/// Kronecker product of single-qubit Paulis, e.g. "XXZ" or "IIX".
CMatrix pauli_string(std::string_view ops);

UnitaryMatrix identity_gate(int n);

/// diag(e^{i phi_1}, ..., e^{i phi_{2^N}}); the phase count fixes N.
UnitaryMatrix diag_general(std::span<const double> phases);

/// Identity except the last diagonal entry, e^{i phi}.
UnitaryMatrix diag_one_phase(double phi, int n);

/// Swaps computational basis states i-1 and j-1 (1-based labels, 1 <= i < j
/// <= 2^n). Label m names the bitstring of m-1, so (1,4) swaps |000> and
/// |011>.
UnitaryMatrix transposition(int i, int j, int n);

/// Hermitian generators of the three-qubit special families.
CMatrix usp1_generator(double jx, double jy, double jz);
CMatrix usp2_generator(double jx, double jy, double jz, double j4);
CMatrix usp3_generator(double jx, double jy, double jz);

/// exp[i (Jx XXZ + Jy YYZ + Jz ZZZ)]
UnitaryMatrix usp1(double jx, double jy, double jz);
/// exp[i (Jx XXX + Jy YYX + Jz ZZX + J4 IIX)]
UnitaryMatrix usp2(double jx, double jy, double jz, double j4);
/// exp[-i (Jx XXX + Jy YYY + Jz ZZZ)]
UnitaryMatrix usp3(double jx, double jy, double jz);

/// Haar-distributed unitary: complex Ginibre matrix, Householder QR, then each
/// column of Q rescaled by the phase of the matching diagonal entry of R.
UnitaryMatrix haar_random(int n, std::uint64_t seed);

/// Kronecker product of 2x2 factors in party order.
UnitaryMatrix local_product(std::span<const UnitaryMatrix> factors);

/// Rz(alpha) Ry(beta) Rz(gamma).
UnitaryMatrix single_qubit_euler(double alpha, double beta, double gamma);

/// Independent Haar single-qubit factors on every party.
UnitaryMatrix random_local_product(int n, std::uint64_t seed);

}  // namespace gmepower
