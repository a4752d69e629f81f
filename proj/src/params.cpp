#include "recoilq/params.hpp"

#include "recoilq/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace recoilq {

double Mass::value() const {
  if (inf_) throw std::logic_error("mstar is infinite");
  return m_;
}

std::string Mass::str() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << m_;
  return os.str();
}

namespace {
std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& e : v) s += (s.empty() ? "" : "; ") + e;
  return s;
}
}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::invalid_argument(join(problems)), problems_(std::move(problems)) {}

std::vector<std::string> check(const ModelParams& p) {
  std::vector<std::string> out;
  if (!(p.omega0 > 0.0)) out.push_back("omega0 must be positive");
  if (!p.mstar.is_infinite() && !(p.mstar.value() > 0.0 && std::isfinite(p.mstar.value())))
    out.push_back("mstar must be positive");
  if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda)) out.push_back("lambda must be non-negative");
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) out.push_back("sigma must be positive");
  if (!(p.cutoff > p.omega0) || !std::isfinite(p.cutoff)) out.push_back("cutoff must exceed omega0");
  if (!(p.tmax > 0.0) || !std::isfinite(p.tmax)) out.push_back("tmax must be positive");
  if (p.nsamples < 2) out.push_back("nsamples must be at least 2");
  return out;
}

ModelParams validate(const ModelParams& p) {
  auto problems = check(p);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return p;
}

ModelParams nondimensionalize(double mass_kg, double omega0_rad_s, double lambda_phys,
                              double sigma_m, double cutoff_ratio) {
  std::vector<std::string> bad;
  if (!(mass_kg > 0.0)) bad.push_back("mass_kg must be positive");
  if (!(omega0_rad_s > 0.0)) bad.push_back("omega0_rad_s must be positive");
  if (!(lambda_phys > 0.0)) bad.push_back("lambda_phys must be positive");
  if (!(sigma_m > 0.0)) bad.push_back("sigma_m must be positive");
  if (!(cutoff_ratio > 0.0)) bad.push_back("cutoff_ratio must be positive");
  if (!bad.empty()) throw ValidationError(std::move(bad));

  ModelParams p;
  p.mstar = Mass::finite(mass_kg * si::c * si::c / (si::hbar * omega0_rad_s));
  p.lambda = lambda_phys;
  p.sigma = sigma_m * omega0_rad_s / si::c;
  p.cutoff = cutoff_ratio;
  return p;
}

double Wavepacket::density(double r) const {
  double n = std::pow(std::numbers::pi, -1.5) * std::pow(sigma, -3.0);
  return n * std::exp(-r * r / (sigma * sigma));
}

double Wavepacket::norm() const {
  std::vector<double> edges;
  for (int i = 0; i <= 16; ++i) edges.push_back(sigma * 0.5 * i);
  Rule r = composite_rule(edges, 20);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * r.x[i] * r.x[i] * density(r.x[i]);
  return 4.0 * std::numbers::pi * s;
}

}  // namespace recoilq
