#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace recoilq {

// Mass in units of hbar*omega0/c^2.  The stationary atom is a separate state,
// never a large float.
class Mass {
 public:
  static Mass finite(double m) { return Mass(m, false); }
  static Mass infinite() { return Mass(0.0, true); }

  bool is_infinite() const { return inf_; }
  double value() const;  // throws for the infinite marker
  // 1/(2M), zero when infinite
  double inv2m() const { return inf_ ? 0.0 : 0.5 / m_; }
  std::string str() const;

  bool operator==(const Mass&) const = default;

 private:
  Mass(double m, bool inf) : m_(m), inf_(inf) {}
  double m_;
  bool inf_;
};

struct ModelParams {
  double omega0 = 1.0;
  Mass mstar = Mass::infinite();
  double lambda = 0.1;
  double sigma = 1.0;
  double cutoff = 50.0;
  double tmax = 40.0;
  int nsamples = 200;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Empty when all invariants hold.
std::vector<std::string> check(const ModelParams& p);
// Returns p unchanged or throws ValidationError listing every violation.
ModelParams validate(const ModelParams& p);

// SI inputs -> internal units (hbar = c = omega0 = 1).
// cutoff_ratio is Lambda/omega0; lambda is already dimensionless.
ModelParams nondimensionalize(double mass_kg, double omega0_rad_s, double lambda_phys,
                              double sigma_m, double cutoff_ratio);

struct Wavepacket {
  double sigma = 1.0;
  // |Phi(r)|^2 for the centred minimum-uncertainty packet
  double density(double r) const;
  // 4 pi int r^2 |Phi|^2 dr, by quadrature
  double norm() const;
};

namespace si {
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double c = 299792458.0;
inline constexpr double amu = 1.66053906660e-27;
}  // namespace si

}  // namespace recoilq
