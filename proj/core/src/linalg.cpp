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

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "gmepower/detail/cuts.hpp"
#include "gmepower/quantum_core.hpp"

namespace gmepower {

int parties_for_dimension(std::size_t dim) {
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  const int n = std::countr_zero(dim);
  if (n > kMaxParties) {
    throw std::invalid_argument("at most " + std::to_string(kMaxParties) + " parties are supported");
  }
  return n;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(CVector amplitudes)
    : amplitudes_(std::move(amplitudes)),
      num_parties_(parties_for_dimension(static_cast<std::size_t>(amplitudes_.size()))) {
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("state is not normalized (norm " + std::to_string(norm) + ")");
  }
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  const int n = parties_for_dimension(static_cast<std::size_t>(amplitudes.size()));
  return StateVector(std::move(amplitudes), n, Trusted{});
}

StateVector StateVector::basis(int num_parties, std::size_t index) {
  if (num_parties < 1 || num_parties > kMaxParties) {
    throw std::invalid_argument("party count out of range");
  }
  const std::size_t dim = std::size_t{1} << num_parties;
  if (index >= dim) {
    throw std::out_of_range("basis index out of range");
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v), num_parties, Trusted{});
}

StateVector StateVector::from_bits(std::string_view bits) {
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring may only contain 0 and 1: " + std::string(bits));
    }
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return basis(static_cast<int>(bits.size()), index);
}

// ---------------------------------------------------------------------------
// GateFamily

namespace {

struct FamilyName {
  GateFamily family;
  std::string_view name;
};

constexpr std::array<FamilyName, 10> kFamilyNames{{
    {GateFamily::kIdentity, "identity"},
    {GateFamily::kDiagonalGeneral, "diag-general"},
    {GateFamily::kDiagonalOnePhase, "diag-one-phase"},
    {GateFamily::kTransposition, "transposition"},
    {GateFamily::kUsp1, "usp1"},
    {GateFamily::kUsp2, "usp2"},
    {GateFamily::kUsp3, "usp3"},
    {GateFamily::kHaar, "haar"},
    {GateFamily::kLocalProduct, "local-product"},
    {GateFamily::kCustom, "custom"},
}};

}  // namespace

std::string_view to_string(GateFamily family) {
  for (const auto& entry : kFamilyNames) {
    if (entry.family == family) return entry.name;
  }
  return "custom";
}

GateFamily parse_gate_family(std::string_view name) {
  for (const auto& entry : kFamilyNames) {
    if (entry.name == name) return entry.family;
  }
  throw std::invalid_argument("unknown gate family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(CMatrix entries, GateFamily family, std::vector<double> params)
    : entries_(std::move(entries)), family_(family), params_(std::move(params)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("unitary must be square");
  }
  num_parties_ = parties_for_dimension(static_cast<std::size_t>(entries_.rows()));
  const double residual = unitarity_residual();
  if (!(residual <= kUnitaryTolerance)) {
    throw std::invalid_argument("matrix is not unitary (residual " + std::to_string(residual) + ")");
  }
}

double UnitaryMatrix::unitarity_residual() const {
  const auto n = entries_.rows();
  return (entries_.adjoint() * entries_ - CMatrix::Identity(n, n)).norm();
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(entries_.adjoint(), GateFamily::kCustom);
}

UnitaryMatrix UnitaryMatrix::retagged(GateFamily family, std::vector<double> params) const& {
  UnitaryMatrix copy = *this;
  return std::move(copy).retagged(family, std::move(params));
}

UnitaryMatrix UnitaryMatrix::retagged(GateFamily family, std::vector<double> params) && {
  family_ = family;
  params_ = std::move(params);
  return std::move(*this);
}

UnitaryMatrix operator*(const UnitaryMatrix& lhs, const UnitaryMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw std::invalid_argument("unitary dimensions differ");
  }
  return UnitaryMatrix(lhs.entries() * rhs.entries(), GateFamily::kCustom);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and nonempty");
  }
  if (!is_hermitian(entries_, 1e-12)) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const double trace = entries_.trace().real();
  if (!(std::abs(trace - 1.0) <= 1e-10)) {
    throw std::invalid_argument("density matrix trace is " + std::to_string(trace));
  }
  eigenvalues_ = hermitian_eigenvalues(entries_);
  if (eigenvalues_[0] < -1e-10) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

// ---------------------------------------------------------------------------
// Bipartition

Bipartition::Bipartition(std::vector<int> part_a, int num_parties)
    : part_a_(std::move(part_a)), num_parties_(num_parties) {
  if (num_parties_ < 2 || num_parties_ > kMaxParties) {
    throw std::invalid_argument("bipartition needs 2.." + std::to_string(kMaxParties) + " parties");
  }
  std::sort(part_a_.begin(), part_a_.end());
  if (part_a_.empty() || std::adjacent_find(part_a_.begin(), part_a_.end()) != part_a_.end()) {
    throw std::invalid_argument("bipartition side must be a nonempty set");
  }
  if (part_a_.front() < 0 || part_a_.back() >= num_parties_) {
    throw std::invalid_argument("party index out of range in bipartition");
  }
  if (static_cast<int>(part_a_.size()) > num_parties_ / 2) {
    throw std::invalid_argument("bipartition side larger than half the system");
  }
}

std::vector<int> Bipartition::complement() const {
  std::vector<int> rest;
  for (int p = 0; p < num_parties_; ++p) {
    if (!std::binary_search(part_a_.begin(), part_a_.end(), p)) rest.push_back(p);
  }
  return rest;
}

unsigned Bipartition::mask() const {
  unsigned m = 0;
  for (int p : part_a_) m |= 1u << p;
  return m;
}

std::string Bipartition::label() const {
  std::string s = "{";
  for (std::size_t i = 0; i < part_a_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(part_a_[i]);
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// Free operations

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  const int n = a.num_parties() + b.num_parties();
  if (n > kMaxParties) {
    throw std::invalid_argument("tensor product exceeds the supported party count");
  }
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  CVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out.segment(i * y.size(), y.size()) = x[i] * y;
  }
  return StateVector(std::move(out), n, StateVector::Trusted{});
}

StateVector apply_unitary(const UnitaryMatrix& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) {
    throw std::invalid_argument("unitary of dimension " + std::to_string(u.dim()) +
                                " applied to a state of dimension " + std::to_string(psi.dim()));
  }
  CVector out = u.entries() * psi.amplitudes();
  const double norm = out.norm();
  if (!(std::abs(norm - 1.0) <= kUnitaryTolerance)) {
    throw std::invalid_argument("unitary application lost normalization");
  }
  return StateVector(std::move(out), psi.num_parties(), StateVector::Trusted{});
}

namespace {

// Row/column reshape for an ordered list of kept parties; the kept parties
// index rows in the given order, the traced parties index columns.
CMatrix reshape_for(const StateVector& psi, std::span<const int> kept) {
  const int n = psi.num_parties();
  unsigned mask = 0;
  for (int p : kept) {
    if (p < 0 || p >= n) throw std::invalid_argument("party index out of range");
    if (mask & (1u << p)) throw std::invalid_argument("duplicate party index");
    mask |= 1u << p;
  }
  if (kept.empty() || static_cast<int>(kept.size()) >= n) {
    throw std::invalid_argument("reduced state needs a nonempty proper subset of parties");
  }
  std::vector<int> traced;
  for (int p = 0; p < n; ++p) {
    if (!(mask & (1u << p))) traced.push_back(p);
  }
  const Eigen::Index rows = Eigen::Index{1} << kept.size();
  const Eigen::Index cols = Eigen::Index{1} << traced.size();
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    auto bit = [&](int party) { return (i >> (n - 1 - party)) & 1u; };
    Eigen::Index r = 0;
    for (int p : kept) r = (r << 1) | bit(p);
    Eigen::Index c = 0;
    for (int p : traced) c = (c << 1) | bit(p);
    m(r, c) = psi[i];
  }
  return m;
}

}  // namespace

DensityMatrix reduced_density_matrix(const StateVector& psi, const Bipartition& cut) {
  if (cut.num_parties() != psi.num_parties()) {
    throw std::invalid_argument("bipartition party count does not match the state");
  }
  return reduced_density_matrix(psi, cut.part_a());
}

DensityMatrix reduced_density_matrix(const StateVector& psi, std::span<const int> parties) {
  const CMatrix m = reshape_for(psi, parties);
  CMatrix rho = m * m.adjoint();
  // Symmetrize away rounding so the Hermiticity check at 1e-12 is meaningful.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

bool is_hermitian(const CMatrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& h) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("matrix is not Hermitian");
  }
  if (h.rows() == 1) {
    return Eigen::VectorXd::Constant(1, h(0, 0).real());
  }
  if (h.rows() == 2) {
    const double a = h(0, 0).real();
    const double b = h(1, 1).real();
    const Complex c = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double hi = detail::max_eig_2x2(a, b, c);
    Eigen::VectorXd ev(2);
    ev << (a + b) - hi, hi;
    return ev;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver failed");
  }
  return solver.eigenvalues();
}

double max_eigenvalue(const DensityMatrix& rho) { return rho.eigenvalues()[rho.eigenvalues().size() - 1]; }

double max_eigenvalue(const CMatrix& h) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(h);
  return ev[ev.size() - 1];
}

std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2 || n > kMaxParties) {
    throw std::invalid_argument("enumerate_bipartitions needs 2 <= n <= " + std::to_string(kMaxParties));
  }
  std::vector<Bipartition> cuts;
  for (int size = 1; size <= n / 2; ++size) {
    // Lexicographic subsets of the given size.
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      if (!(2 * size == n && idx.front() != 0)) cuts.emplace_back(idx, n);
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i) {
        idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  }
  return cuts;
}

UnitaryMatrix hermitian_exponential(const CMatrix& h, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("sign must be +1 or -1");
  }
  if (!is_hermitian(h)) {
    throw std::invalid_argument("generator is not Hermitian");
  }
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver failed");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  CVector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    phases[i] = std::polar(1.0, static_cast<double>(sign) * w[i]);
  }
  const CMatrix& v = solver.eigenvectors();
  return UnitaryMatrix(v * phases.asDiagonal() * v.adjoint(), GateFamily::kCustom);
}

// ---------------------------------------------------------------------------
// Cut tables

namespace detail {

namespace {

CutIndex build_cut(int n, unsigned mask) {
  const unsigned full = (1u << n) - 1u;
  // Index rows by the smaller side.
  if (std::popcount(mask) > n - std::popcount(mask)) mask = full & ~mask;
  CutIndex ci;
  ci.n = n;
  ci.mask = mask;
  ci.rows = 1 << std::popcount(mask);
  ci.cols = 1 << (n - std::popcount(mask));
  const std::size_t dim = std::size_t{1} << n;
  ci.row_of.resize(dim);
  ci.col_of.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    unsigned r = 0;
    unsigned c = 0;
    for (int p = 0; p < n; ++p) {
      const unsigned b = (i >> (n - 1 - p)) & 1u;
      if (mask & (1u << p)) {
        r = (r << 1) | b;
      } else {
        c = (c << 1) | b;
      }
    }
    ci.row_of[i] = static_cast<std::uint8_t>(r);
    ci.col_of[i] = static_cast<std::uint8_t>(c);
  }
  return ci;
}

struct CutTables {
  // tables[n][mask], n in 1..kMaxParties.
  std::array<std::vector<CutIndex>, kMaxParties + 1> tables;
  std::array<std::vector<const CutIndex*>, kMaxParties + 1> canonical;

  CutTables() {
    for (int n = 1; n <= kMaxParties; ++n) {
      const unsigned count = 1u << n;
      tables[n].reserve(count);
      for (unsigned mask = 0; mask < count; ++mask) tables[n].push_back(build_cut(n, mask));
      if (n >= 2) {
        for (const auto& cut : enumerate_bipartitions(n)) canonical[n].push_back(&tables[n][cut.mask()]);
      }
    }
  }
};

const CutTables& cut_tables() {
  static const CutTables tables;
  return tables;
}

}  // namespace

const CutIndex& cut_index(int n, unsigned mask) {
  if (n < 1 || n > kMaxParties || mask >= (1u << n)) {
    throw std::invalid_argument("cut index out of range");
  }
  return cut_tables().tables[static_cast<std::size_t>(n)][mask];
}

std::span<const CutIndex* const> canonical_cuts(int n) {
  if (n < 2 || n > kMaxParties) {
    throw std::invalid_argument("canonical cuts need 2 <= n <= " + std::to_string(kMaxParties));
  }
  return cut_tables().canonical[static_cast<std::size_t>(n)];
}

double max_schmidt_weight(std::span<const Complex> amplitudes, const CutIndex& cut) {
  if (cut.rows == 1) {
    // Trivial cut: the whole state sits on one side.
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
  }
  constexpr std::size_t kMaxDim = std::size_t{1} << kMaxParties;
  std::array<Complex, kMaxDim> m{};
  const int cols = cut.cols;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    m[static_cast<std::size_t>(cut.row_of[i] * cols + cut.col_of[i])] = amplitudes[i];
  }
  auto gram = [&](int r1, int r2) {
    Complex s = 0.0;
    const Complex* a = &m[static_cast<std::size_t>(r1 * cols)];
    const Complex* b = &m[static_cast<std::size_t>(r2 * cols)];
    for (int c = 0; c < cols; ++c) s += a[c] * std::conj(b[c]);
    return s;
  };
  if (cut.rows == 2) {
    return max_eig_2x2(gram(0, 0).real(), gram(1, 1).real(), gram(0, 1));
  }
  if (cut.rows == 4) {
    Eigen::Matrix4cd g;
    for (int r1 = 0; r1 < 4; ++r1) {
      g(r1, r1) = gram(r1, r1).real();
      for (int r2 = r1 + 1; r2 < 4; ++r2) {
        g(r1, r2) = gram(r1, r2);
        g(r2, r1) = std::conj(g(r1, r2));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(g, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()[3];
  }
  CMatrix g(cut.rows, cut.rows);
  for (int r1 = 0; r1 < cut.rows; ++r1) {
    for (int r2 = r1; r2 < cut.rows; ++r2) {
      g(r1, r2) = gram(r1, r2);
      g(r2, r1) = std::conj(g(r1, r2));
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(g, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[cut.rows - 1];
}

}  // namespace detail

}  // namespace gmepower
