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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gmepower {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxParties = 6;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;

/// Number of qubits whose Hilbert space has dimension `dim`; throws unless
/// `dim` is 2^N with 1 <= N <= kMaxParties.
int parties_for_dimension(std::size_t dim);

class UnitaryMatrix;

/// Normalized amplitude vector of an N-qubit pure state.
///
/// Basis index i encodes the bitstring b0 b1 ... b_{N-1} with party 0 as the
/// most significant bit, so |011> is index 3.
class StateVector {
 public:
  /// Throws std::invalid_argument if the length is not a power of two or the
  /// norm differs from 1 by more than kNormTolerance.
  explicit StateVector(CVector amplitudes);

  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(CVector amplitudes);
  static StateVector basis(int num_parties, std::size_t index);
  /// Computational basis state from a bitstring such as "011".
  static StateVector from_bits(std::string_view bits);

  const CVector& amplitudes() const { return amplitudes_; }
  int num_parties() const { return num_parties_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

 private:
  struct Trusted {};
  StateVector(CVector amplitudes, int num_parties, Trusted)
      : amplitudes_(std::move(amplitudes)), num_parties_(num_parties) {}

  friend StateVector tensor_product(const StateVector&, const StateVector&);
  friend StateVector apply_unitary(const UnitaryMatrix&, const StateVector&);

  CVector amplitudes_;
  int num_parties_ = 0;
};

enum class GateFamily {
  kIdentity,
  kDiagonalGeneral,
  kDiagonalOnePhase,
  kTransposition,
  kUsp1,
  kUsp2,
  kUsp3,
  kHaar,
  kLocalProduct,
  kCustom,
};

std::string_view to_string(GateFamily family);
/// Accepts the names produced by to_string(); throws std::invalid_argument.
GateFamily parse_gate_family(std::string_view name);

/// Dense 2^N x 2^N unitary, tagged with the family and parameters it was
/// built from.
class UnitaryMatrix {
 public:
  /// Throws std::invalid_argument unless `entries` is square of side 2^N and
  /// ||U^dagger U - I||_F <= kUnitaryTolerance.
  explicit UnitaryMatrix(CMatrix entries, GateFamily family = GateFamily::kCustom,
                         std::vector<double> params = {});

  const CMatrix& entries() const { return entries_; }
  int num_parties() const { return num_parties_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  GateFamily family() const { return family_; }
  std::span<const double> params() const { return params_; }

  double unitarity_residual() const;
  UnitaryMatrix adjoint() const;
  UnitaryMatrix retagged(GateFamily family, std::vector<double> params) const&;
  UnitaryMatrix retagged(GateFamily family, std::vector<double> params) &&;

 private:
  CMatrix entries_;
  int num_parties_ = 0;
  GateFamily family_ = GateFamily::kCustom;
  std::vector<double> params_;
};

/// Product U * V, tagged custom.
UnitaryMatrix operator*(const UnitaryMatrix& lhs, const UnitaryMatrix& rhs);

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates hermiticity (1e-12), trace (1e-10) and eigenvalues >= -1e-10.
  explicit DensityMatrix(CMatrix entries);

  const CMatrix& entries() const { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  /// Ascending.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  CMatrix entries_;
  Eigen::VectorXd eigenvalues_;
};

/// One side of a cut through an N-party system. `part_a` is sorted, nonempty
/// and holds at most floor(N/2) parties; the complement is implied.
class Bipartition {
 public:
  Bipartition(std::vector<int> part_a, int num_parties);

  std::span<const int> part_a() const { return part_a_; }
  std::vector<int> complement() const;
  int num_parties() const { return num_parties_; }
  /// Bit p set for each party p in part_a.
  unsigned mask() const;
  /// "{0,2}"
  std::string label() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
  friend auto operator<=>(const Bipartition& a, const Bipartition& b) { return a.part_a_ <=> b.part_a_; }

 private:
  std::vector<int> part_a_;
  int num_parties_ = 0;
};

/// Kronecker product; `a` supplies the leading parties.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Throws std::invalid_argument on a dimension mismatch or if the norm drifts
/// by more than kUnitaryTolerance.
StateVector apply_unitary(const UnitaryMatrix& u, const StateVector& psi);

/// Partial trace over the complement of `cut`.
DensityMatrix reduced_density_matrix(const StateVector& psi, const Bipartition& cut);
/// Same for an arbitrary nonempty proper subset of parties (kept in the
/// order given; no size restriction).
DensityMatrix reduced_density_matrix(const StateVector& psi, std::span<const int> parties);

/// Ascending eigenvalues of a Hermitian matrix. 2x2 in closed form, larger
/// sizes through Eigen's tridiagonalizing self-adjoint solver. Throws on
/// non-Hermitian input.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& h);

double max_eigenvalue(const DensityMatrix& rho);
/// Throws std::invalid_argument if `h` is not Hermitian.
double max_eigenvalue(const CMatrix& h);

/// All cuts with 1 <= |part_a| <= floor(n/2), smaller sizes first, each size
/// in lexicographic order. For even n, a half/half cut is listed once, by the
/// side containing party 0.
std::vector<Bipartition> enumerate_bipartitions(int n);

/// exp(i * sign * h) through the eigendecomposition of `h`.
UnitaryMatrix hermitian_exponential(const CMatrix& h, int sign);

bool is_hermitian(const CMatrix& h, double tol = kHermitianTolerance);

}  // namespace gmepower
