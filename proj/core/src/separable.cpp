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

#include "gmepower/separable.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gmepower/ggm.hpp"
#include "gmepower/seeding.hpp"

namespace gmepower {

namespace {

constexpr std::size_t kMaxDim = std::size_t{1} << kMaxParties;

std::size_t block_dim(const std::vector<int>& block) { return std::size_t{1} << block.size(); }

// Index of the block-local basis state selected by full basis index i.
std::size_t sub_index(std::size_t i, int n, const std::vector<int>& block) {
  std::size_t s = 0;
  for (int p : block) s = (s << 1) | ((i >> (n - 1 - p)) & 1u);
  return s;
}

void check_party_count(int n) {
  if (n < 2 || n > kMaxParties) {
    throw std::invalid_argument("separable families need 2 <= n <= " + std::to_string(kMaxParties));
  }
}

void check_arity(const Layout& layout, std::span<const double> angles, std::span<const double> phases) {
  const auto expected = static_cast<std::size_t>(layout.angle_count());
  if (angles.size() != expected) {
    throw std::invalid_argument("layout " + layout.label() + " needs " + std::to_string(expected) +
                                " angles, got " + std::to_string(angles.size()));
  }
  if (!phases.empty() && phases.size() != expected) {
    throw std::invalid_argument("layout " + layout.label() + " needs " + std::to_string(expected) +
                                " phases, got " + std::to_string(phases.size()));
  }
}

double wrap_phase(double x) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// std::polar is undefined for negative magnitudes, which unconstrained
// optimizer angles produce.
Complex phased(double mag, double phase) { return {mag * std::cos(phase), mag * std::sin(phase)}; }

std::string block_label(const std::vector<int>& block) {
  std::string s;
  for (int p : block) s += std::to_string(p);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Layout

int Layout::angle_count() const {
  int count = 0;
  for (const auto& b : blocks) count += (1 << b.size()) - 1;
  return count;
}

std::string Layout::label() const {
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) s += '|';
    s += block_label(blocks[b]);
  }
  return s;
}

Layout make_layout(int n, std::vector<std::vector<int>> blocks) {
  check_party_count(n);
  unsigned seen = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("layout block is empty");
    std::sort(b.begin(), b.end());
    for (int p : b) {
      if (p < 0 || p >= n) throw std::invalid_argument("layout party out of range");
      if (seen & (1u << p)) throw std::invalid_argument("party listed twice in layout");
      seen |= 1u << p;
    }
  }
  if (seen != (1u << n) - 1u) {
    throw std::invalid_argument("layout does not cover every party");
  }
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Layout{n, std::move(blocks)};
}

Layout parse_layout(std::string_view text, int n) {
  std::vector<std::vector<int>> blocks(1);
  for (char c : text) {
    if (c == '|') {
      blocks.emplace_back();
    } else if (c >= '0' && c <= '9') {
      blocks.back().push_back(c - '0');
    } else if (c != ' ') {
      throw std::invalid_argument("bad layout '" + std::string(text) + "' (expected e.g. 0|12)");
    }
  }
  return make_layout(n, std::move(blocks));
}

std::vector<Layout> enumerate_layouts(int n, int k) {
  check_party_count(n);
  if (k < 1 || k > n) {
    throw std::invalid_argument("separability class k must lie in 1..n");
  }
  std::vector<Layout> out;
  // Restricted-growth strings: rgs[0] = 0, rgs[i] <= max(rgs[0..i-1]) + 1.
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  auto emit = [&] {
    const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    if (blocks != k) return;
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(blocks));
    for (int p = 0; p < n; ++p) parts[static_cast<std::size_t>(rgs[static_cast<std::size_t>(p)])].push_back(p);
    out.push_back(make_layout(n, std::move(parts)));
  };
  while (true) {
    emit();
    int i = n - 1;
    for (; i > 0; --i) {
      const int prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[static_cast<std::size_t>(i)] <= prefix_max) break;
    }
    if (i == 0) break;
    ++rgs[static_cast<std::size_t>(i)];
    std::fill(rgs.begin() + i + 1, rgs.end(), 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Errors

EntFloorViolation::EntFloorViolation(std::vector<int> block, double entanglement, double floor)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "block {" << block_label(block) << "} has entanglement " << entanglement
           << " below the floor " << floor;
        return os.str();
      }()),
      block_(std::move(block)),
      entanglement_(entanglement) {}

// ---------------------------------------------------------------------------
// Coordinates

void hyperspherical_amplitudes(std::span<const double> angles, std::span<const double> phases,
                               std::span<Complex> out) {
  const std::size_t d = out.size();
  double sin_prod = 1.0;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    const double mag = sin_prod * std::cos(angles[j]);
    out[j] = (j == 0 || phases.empty()) ? Complex(mag, 0.0) : phased(mag, phases[j - 1]);
    sin_prod *= std::sin(angles[j]);
  }
  out[d - 1] = (d == 1 || phases.empty()) ? Complex(sin_prod, 0.0) : phased(sin_prod, phases[d - 2]);
}

void hyperspherical_coordinates(std::span<const Complex> amplitudes, std::span<double> angles,
                                std::span<double> phases) {
  const std::size_t d = amplitudes.size();
  std::array<double, kMaxDim + 1> tail{};
  for (std::size_t j = d; j-- > 0;) tail[j] = tail[j + 1] + std::norm(amplitudes[j]);
  for (std::size_t j = 0; j <= d; ++j) tail[j] = std::sqrt(tail[j]);

  // Global phase: make the first non-negligible amplitude real and positive.
  double reference = 0.0;
  for (const auto& a : amplitudes) {
    if (std::abs(a) > 1e-300) {
      reference = std::arg(a);
      break;
    }
  }
  for (std::size_t j = 0; j + 1 < d; ++j) {
    angles[j] = std::atan2(tail[j + 1], std::abs(amplitudes[j]));
  }
  for (std::size_t j = 1; j < d; ++j) {
    phases[j - 1] = std::abs(amplitudes[j]) > 1e-300 ? wrap_phase(std::arg(amplitudes[j]) - reference) : 0.0;
  }
}

void realize_into(const Layout& layout, std::span<const double> angles, std::span<const double> phases,
                  std::span<Complex> out) {
  const int n = layout.n;
  std::array<std::array<Complex, kMaxDim>, kMaxParties> block_amps;
  std::size_t offset = 0;
  for (std::size_t b = 0; b < layout.blocks.size(); ++b) {
    const std::size_t d = block_dim(layout.blocks[b]);
    hyperspherical_amplitudes(angles.subspan(offset, d - 1),
                              phases.empty() ? phases : phases.subspan(offset, d - 1),
                              std::span<Complex>(block_amps[b].data(), d));
    offset += d - 1;
  }
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t i = 0; i < dim; ++i) {
    Complex amp = 1.0;
    for (std::size_t b = 0; b < layout.blocks.size(); ++b) {
      amp *= block_amps[b][sub_index(i, n, layout.blocks[b])];
    }
    out[i] = amp;
  }
}

double min_block_entanglement(const Layout& layout, std::span<const double> angles,
                              std::span<const double> phases) {
  double lowest = 1.0;
  std::array<Complex, kMaxDim> amps;
  std::size_t offset = 0;
  for (const auto& block : layout.blocks) {
    const std::size_t d = block_dim(block);
    if (block.size() >= 2) {
      hyperspherical_amplitudes(angles.subspan(offset, d - 1),
                                phases.empty() ? phases : phases.subspan(offset, d - 1),
                                std::span<Complex>(amps.data(), d));
      lowest = std::min(lowest, ggm_value(std::span<const Complex>(amps.data(), d), static_cast<int>(block.size())));
    }
    offset += d - 1;
  }
  return lowest;
}

StateVector realize(const KSeparableParams& params) {
  const Layout& layout = params.layout;
  check_party_count(layout.n);
  if (layout.k() < 2) {
    throw std::invalid_argument("k-separable families need k >= 2");
  }
  check_arity(layout, params.angles, params.phases);
  if (params.ent_floor < 0.0) {
    throw std::invalid_argument("ent_floor must be non-negative");
  }

  std::array<Complex, kMaxDim> amps;
  std::size_t offset = 0;
  for (const auto& block : layout.blocks) {
    const std::size_t d = block_dim(block);
    if (block.size() >= 2 && params.ent_floor > 0.0) {
      const std::span<const double> ph = params.phases;
      hyperspherical_amplitudes(std::span<const double>(params.angles).subspan(offset, d - 1),
                                ph.empty() ? ph : ph.subspan(offset, d - 1), std::span<Complex>(amps.data(), d));
      const double e = ggm_value(std::span<const Complex>(amps.data(), d), static_cast<int>(block.size()));
      if (e < params.ent_floor) throw EntFloorViolation(block, e, params.ent_floor);
    }
    offset += d - 1;
  }

  CVector out(Eigen::Index{1} << layout.n);
  realize_into(layout, params.angles, params.phases, std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())));
  return StateVector::normalized(std::move(out));
}

KSeparableParams params_from_state(const Layout& layout, const StateVector& psi, double ent_floor) {
  if (psi.num_parties() != layout.n) {
    throw std::invalid_argument("state and layout have different party counts");
  }
  KSeparableParams params{layout, std::vector<double>(static_cast<std::size_t>(layout.angle_count())),
                          std::vector<double>(static_cast<std::size_t>(layout.angle_count())), ent_floor};
  std::size_t offset = 0;
  for (const auto& block : layout.blocks) {
    const std::size_t d = block_dim(block);
    const CMatrix rho = reduced_density_matrix(psi, block).entries();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
    const CVector top = solver.eigenvectors().col(static_cast<Eigen::Index>(d) - 1);
    hyperspherical_coordinates(std::span<const Complex>(top.data(), d),
                               std::span<double>(params.angles).subspan(offset, d - 1),
                               std::span<double>(params.phases).subspan(offset, d - 1));
    offset += d - 1;
  }

  CVector rebuilt(static_cast<Eigen::Index>(psi.dim()));
  realize_into(layout, params.angles, params.phases, std::span<Complex>(rebuilt.data(), psi.dim()));
  const double overlap = std::norm(rebuilt.dot(psi.amplitudes()));
  if (overlap < 1.0 - 1e-8) {
    throw std::invalid_argument("state does not factorize as " + layout.label());
  }
  return params;
}

KSeparableParams sample_uniform(int n, int k, std::optional<Layout> layout, double ent_floor,
                                std::uint64_t seed) {
  check_party_count(n);
  if (k < 2 || k > n) {
    throw std::invalid_argument("k must lie in 2..n");
  }
  if (ent_floor < 0.0) {
    throw std::invalid_argument("ent_floor must be non-negative");
  }
  Rng rng = make_rng(seed);
  if (!layout) {
    const auto all = enumerate_layouts(n, k);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    layout = all[pick(rng)];
  } else if (layout->n != n || layout->k() != k) {
    throw std::invalid_argument("layout " + layout->label() + " is not an n=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + " layout");
  }

  KSeparableParams params{*layout, std::vector<double>(static_cast<std::size_t>(layout->angle_count())),
                          std::vector<double>(static_cast<std::size_t>(layout->angle_count())), ent_floor};
  std::array<Complex, kMaxDim> amps;
  int draws = 0;
  std::size_t offset = 0;
  for (const auto& block : layout->blocks) {
    const std::size_t d = block_dim(block);
    const std::span<Complex> v(amps.data(), d);
    while (true) {
      if (++draws > kRejectionBudget) {
        throw RejectionBudgetExhausted("could not draw block {" + block_label(block) +
                                       "} above ent_floor " + std::to_string(ent_floor) + " within " +
                                       std::to_string(kRejectionBudget) + " draws");
      }
      double norm2 = 0.0;
      for (auto& a : v) {
        a = complex_gaussian(rng);
        norm2 += std::norm(a);
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& a : v) a *= inv;
      if (block.size() < 2 || ent_floor <= 0.0) break;
      if (ggm_value(v, static_cast<int>(block.size())) >= ent_floor) break;
    }
    hyperspherical_coordinates(v, std::span<double>(params.angles).subspan(offset, d - 1),
                               std::span<double>(params.phases).subspan(offset, d - 1));
    offset += d - 1;
  }
  return params;
}

StateVector optimal_ghz_like_input(int n, int split) {
  check_party_count(n);
  if (split < 1 || split >= n) {
    throw std::invalid_argument("split must satisfy 1 <= split < n");
  }
  auto ghz = [](int m) {
    CVector v = CVector::Zero(Eigen::Index{1} << m);
    v[0] = 1.0;
    v[v.size() - 1] = 1.0;
    return StateVector::normalized(std::move(v));
  };
  return tensor_product(ghz(split), ghz(n - split));
}

}  // namespace gmepower
