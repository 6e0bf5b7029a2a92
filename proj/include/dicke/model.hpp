#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace dicke {

/// Physical parameters of the finite-size Dicke model.
///
/// The pseudospin length is stored as `two_j` (the atom count) so that
/// half-integer j never goes through floating-point comparisons.
class ModelParams {
 public:
  static constexpr double kDefaultEpsilon = 1e-6;

  /// Throws InvalidParameter unless omega > 0, omega0 >= 0, gamma >= 0,
  /// epsilon > 0 and two_j >= 1.
  ModelParams(double omega, double omega0, double gamma, int two_j,
              double epsilon = kDefaultEpsilon);

  /// Same as the constructor but takes j directly; 2j must be a positive integer.
  static ModelParams from_j(double omega, double omega0, double gamma, double j,
                            double epsilon = kDefaultEpsilon);

  double omega() const noexcept { return omega_; }
  double omega0() const noexcept { return omega0_; }
  double gamma() const noexcept { return gamma_; }
  double epsilon() const noexcept { return epsilon_; }
  int two_j() const noexcept { return two_j_; }
  double j() const noexcept { return 0.5 * two_j_; }
  int atoms() const noexcept { return two_j_; }
  int spin_multiplicity() const noexcept { return two_j_ + 1; }

  /// Displacement constant G = 2 gamma / (omega sqrt(N)) of A = a + G Jz.
  double shift_constant() const noexcept;
  double critical_coupling() const noexcept;

  ModelParams with_omega0(double omega0) const;
  ModelParams with_gamma(double gamma) const;
  ModelParams with_two_j(int two_j) const;
  ModelParams with_epsilon(double epsilon) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double omega_;
  double omega0_;
  double gamma_;
  int two_j_;
  double epsilon_;
};

/// gamma_c = sqrt(omega * omega0) / 2.
double critical_coupling(double omega, double omega0);

/// True iff gamma > gamma_c. The boundary gamma = gamma_c is normal.
bool is_superradiant(const ModelParams& params);

enum class BasisKind { Fock, Coherent };

std::string_view to_string(BasisKind kind);
/// Accepts "fock" / "coherent" (case-insensitive).
BasisKind parse_basis_kind(std::string_view text);

/// A truncated product basis: bosonic states 0..cutoff times the 2j+1 spin states.
struct BasisSpec {
  BasisKind kind = BasisKind::Fock;
  int cutoff = 0;
  int two_j = 1;

  /// (cutoff + 1)(2j + 1); throws std::overflow_error if that does not fit
  /// the index type used by the matrix storage.
  std::int64_t dimension() const;
};

/// A product state (boson, m). `two_m` runs over -2j, -2j+2, ..., 2j.
struct BasisIndex {
  int boson = 0;
  int two_m = 0;

  double m() const noexcept { return 0.5 * two_m; }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// flat = boson (2j + 1) + (m + j)
std::int64_t flatten(const BasisSpec& basis, BasisIndex state);
BasisIndex unflatten(const BasisSpec& basis, std::int64_t flat);

/// <j, m | Jz | j, m> = m.
double jz_element(int two_j, int two_m);

enum class Ladder { Raise, Lower };

/// <j, m +- 1 | J+- | j, m> = sqrt(j(j+1) - m(m +- 1)); zero when m +- 1
/// leaves [-j, j].
double jpm_element(int two_j, int two_m, Ladder direction);

}  // namespace dicke
