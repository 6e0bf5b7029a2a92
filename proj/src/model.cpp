#include "dicke/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

ModelParams::ModelParams(double omega, double omega0, double gamma, int two_j,
                         double epsilon)
    : omega_(omega), omega0_(omega0), gamma_(gamma), two_j_(two_j), epsilon_(epsilon) {
  // Negated comparisons so that NaN is rejected too.
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw InvalidParameter("omega must be positive, got " + std::to_string(omega));
  if (!(omega0 >= 0.0) || !std::isfinite(omega0))
    throw InvalidParameter("omega0 must be non-negative, got " + std::to_string(omega0));
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw InvalidParameter("gamma must be non-negative, got " + std::to_string(gamma));
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidParameter("epsilon must be positive, got " + std::to_string(epsilon));
  if (two_j < 1) throw InvalidParameter("2j must be a positive integer, got " + std::to_string(two_j));
}

ModelParams ModelParams::from_j(double omega, double omega0, double gamma, double j,
                                double epsilon) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!std::isfinite(j) || std::abs(twice - rounded) > 1e-9 || rounded < 1.0 ||
      rounded > std::numeric_limits<int>::max())
    throw InvalidParameter("j must be a positive integer or half-integer, got " + std::to_string(j));
  return ModelParams(omega, omega0, gamma, static_cast<int>(rounded), epsilon);
}

double ModelParams::shift_constant() const noexcept {
  return 2.0 * gamma_ / (omega_ * std::sqrt(static_cast<double>(two_j_)));
}

double ModelParams::critical_coupling() const noexcept {
  return dicke::critical_coupling(omega_, omega0_);
}

ModelParams ModelParams::with_omega0(double omega0) const {
  return ModelParams(omega_, omega0, gamma_, two_j_, epsilon_);
}
ModelParams ModelParams::with_gamma(double gamma) const {
  return ModelParams(omega_, omega0_, gamma, two_j_, epsilon_);
}
ModelParams ModelParams::with_two_j(int two_j) const {
  return ModelParams(omega_, omega0_, gamma_, two_j, epsilon_);
}
ModelParams ModelParams::with_epsilon(double epsilon) const {
  return ModelParams(omega_, omega0_, gamma_, two_j_, epsilon);
}

double critical_coupling(double omega, double omega0) {
  if (!(omega > 0.0)) throw InvalidParameter("omega must be positive");
  if (!(omega0 >= 0.0)) throw InvalidParameter("omega0 must be non-negative");
  return 0.5 * std::sqrt(omega * omega0);
}

bool is_superradiant(const ModelParams& params) {
  // gamma > gamma_c, i.e. omega omega0 < 4 gamma^2; reduces to omega0 < 4 gamma^2 at omega = 1.
  return params.gamma() > params.critical_coupling();
}

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Fock:
      return "fock";
    case BasisKind::Coherent:
      return "coherent";
  }
  return "unknown";
}

BasisKind parse_basis_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fock") return BasisKind::Fock;
  if (lower == "coherent") return BasisKind::Coherent;
  throw InvalidParameter("unknown basis '" + std::string(text) + "' (expected fock or coherent)");
}

std::int64_t BasisSpec::dimension() const {
  if (cutoff < 0) throw InvalidParameter("cutoff must be non-negative");
  if (two_j < 1) throw InvalidParameter("2j must be positive");
  // Sparse storage indexes with int, so that is the binding limit.
  constexpr std::int64_t kMax = std::numeric_limits<int>::max();
  const std::int64_t bosons = static_cast<std::int64_t>(cutoff) + 1;
  const std::int64_t spins = static_cast<std::int64_t>(two_j) + 1;
  if (bosons > kMax / spins)
    throw std::overflow_error("basis dimension (" + std::to_string(bosons) + " x " +
                              std::to_string(spins) + ") exceeds the index range");
  return bosons * spins;
}

std::int64_t flatten(const BasisSpec& basis, BasisIndex state) {
  if (state.boson < 0 || state.boson > basis.cutoff)
    throw InvalidParameter("boson number out of range");
  if (std::abs(state.two_m) > basis.two_j || (state.two_m + basis.two_j) % 2 != 0)
    throw InvalidParameter("m out of range");
  return static_cast<std::int64_t>(state.boson) * (basis.two_j + 1) +
         (state.two_m + basis.two_j) / 2;
}

BasisIndex unflatten(const BasisSpec& basis, std::int64_t flat) {
  if (flat < 0 || flat >= basis.dimension()) throw InvalidParameter("flat index out of range");
  const std::int64_t spins = basis.two_j + 1;
  const auto boson = static_cast<int>(flat / spins);
  const auto offset = static_cast<int>(flat % spins);
  return BasisIndex{boson, 2 * offset - basis.two_j};
}

double jz_element(int two_j, int two_m) {
  if (std::abs(two_m) > two_j) throw InvalidParameter("m out of range");
  return 0.5 * two_m;
}

double jpm_element(int two_j, int two_m, Ladder direction) {
  if (std::abs(two_m) > two_j) throw InvalidParameter("m out of range");
  const int step = direction == Ladder::Raise ? 2 : -2;
  if (std::abs(two_m + step) > two_j) return 0.0;
  // 4 [j(j+1) - m(m +- 1)] in exact integer arithmetic.
  const long long quad = static_cast<long long>(two_j) * (two_j + 2) -
                         static_cast<long long>(two_m) * (two_m + step);
  return 0.5 * std::sqrt(static_cast<double>(quad));
}

}  // namespace dicke
