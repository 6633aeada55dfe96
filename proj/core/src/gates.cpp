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

#include "gmepower/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "gmepower/seeding.hpp"

namespace gmepower {

namespace {

const Complex kI(0.0, 1.0);

Eigen::Matrix2cd pauli(char op) {
  Eigen::Matrix2cd m;
  switch (op) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -kI, kI, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument(std::string("unknown Pauli '") + op + "'");
  }
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void check_n(int n) {
  if (n < 1 || n > kMaxParties) {
    throw std::invalid_argument("party count must lie in 1.." + std::to_string(kMaxParties));
  }
}

}  // namespace

CMatrix pauli_string(std::string_view ops) {
  if (ops.empty()) throw std::invalid_argument("empty Pauli string");
  CMatrix out = pauli(ops.front());
  for (char op : ops.substr(1)) out = kron(out, pauli(op));
  return out;
}

UnitaryMatrix identity_gate(int n) {
  check_n(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  return UnitaryMatrix(CMatrix::Identity(dim, dim), GateFamily::kIdentity);
}

UnitaryMatrix diag_general(std::span<const double> phases) {
  parties_for_dimension(phases.size());
  CVector d(static_cast<Eigen::Index>(phases.size()));
  for (std::size_t j = 0; j < phases.size(); ++j) d[static_cast<Eigen::Index>(j)] = std::polar(1.0, phases[j]);
  return UnitaryMatrix(CMatrix(d.asDiagonal()), GateFamily::kDiagonalGeneral,
                       std::vector<double>(phases.begin(), phases.end()));
}

UnitaryMatrix diag_one_phase(double phi, int n) {
  if (n < 2 || n > kMaxParties) {
    throw std::invalid_argument("diag_one_phase needs 2 <= n <= " + std::to_string(kMaxParties));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix u = CMatrix::Identity(dim, dim);
  u(dim - 1, dim - 1) = std::polar(1.0, phi);
  return UnitaryMatrix(std::move(u), GateFamily::kDiagonalOnePhase, {phi});
}

UnitaryMatrix transposition(int i, int j, int n) {
  check_n(n);
  const int dim = 1 << n;
  if (i == j || i < 1 || j < 1 || i > dim || j > dim) {
    throw std::invalid_argument("transposition (" + std::to_string(i) + "," + std::to_string(j) +
                                ") needs distinct labels in 1.." + std::to_string(dim));
  }
  CMatrix u = CMatrix::Identity(dim, dim);
  u(i - 1, i - 1) = 0.0;
  u(j - 1, j - 1) = 0.0;
  u(i - 1, j - 1) = 1.0;
  u(j - 1, i - 1) = 1.0;
  return UnitaryMatrix(std::move(u), GateFamily::kTransposition,
                       {static_cast<double>(std::min(i, j)), static_cast<double>(std::max(i, j))});
}

CMatrix usp1_generator(double jx, double jy, double jz) {
  return jx * pauli_string("XXZ") + jy * pauli_string("YYZ") + jz * pauli_string("ZZZ");
}

CMatrix usp2_generator(double jx, double jy, double jz, double j4) {
  return jx * pauli_string("XXX") + jy * pauli_string("YYX") + jz * pauli_string("ZZX") +
         j4 * pauli_string("IIX");
}

CMatrix usp3_generator(double jx, double jy, double jz) {
  return jx * pauli_string("XXX") + jy * pauli_string("YYY") + jz * pauli_string("ZZZ");
}

UnitaryMatrix usp1(double jx, double jy, double jz) {
  return hermitian_exponential(usp1_generator(jx, jy, jz), +1).retagged(GateFamily::kUsp1, {jx, jy, jz});
}

UnitaryMatrix usp2(double jx, double jy, double jz, double j4) {
  return hermitian_exponential(usp2_generator(jx, jy, jz, j4), +1)
      .retagged(GateFamily::kUsp2, {jx, jy, jz, j4});
}

UnitaryMatrix usp3(double jx, double jy, double jz) {
  return hermitian_exponential(usp3_generator(jx, jy, jz), -1).retagged(GateFamily::kUsp3, {jx, jy, jz});
}

UnitaryMatrix haar_random(int n, std::uint64_t seed) {
  check_n(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Rng rng = make_rng(seed);
  CMatrix z(dim, dim);
  // Column-major fill keeps the draw order independent of Eigen internals.
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) z(r, c) = complex_gaussian(rng);
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Complex diag = r(c, c);
    const double mag = std::abs(diag);
    q.col(c) *= mag > 0.0 ? diag / mag : Complex(1.0);
  }
  return UnitaryMatrix(std::move(q), GateFamily::kHaar);
}

UnitaryMatrix local_product(std::span<const UnitaryMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("local_product needs at least one factor");
  CMatrix out;
  for (const auto& f : factors) {
    if (f.dim() != 2) {
      throw std::invalid_argument("local_product factors must be single-qubit (2x2) unitaries");
    }
    out = out.size() == 0 ? f.entries() : kron(out, f.entries());
  }
  return UnitaryMatrix(std::move(out), GateFamily::kLocalProduct);
}

UnitaryMatrix single_qubit_euler(double alpha, double beta, double gamma) {
  auto rz = [](double t) {
    Eigen::Matrix2cd m;
    m << std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2);
    return m;
  };
  Eigen::Matrix2cd ry;
  ry << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
  return UnitaryMatrix(CMatrix(rz(alpha) * ry * rz(gamma)), GateFamily::kLocalProduct, {alpha, beta, gamma});
}

UnitaryMatrix random_local_product(int n, std::uint64_t seed) {
  check_n(n);
  std::vector<UnitaryMatrix> factors;
  factors.reserve(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    factors.push_back(haar_random(1, derive_seed(seed, {static_cast<std::uint64_t>(p)})));
  }
  return local_product(factors);
}

}  // namespace gmepower
