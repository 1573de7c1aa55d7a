#include "ruminlab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rumin {

namespace {

double theta(const std::vector<double>& eigs, double t) {
  double s = 0;
  for (auto it = eigs.rbegin(); it != eigs.rend(); ++it) s += std::exp(-*it * t);
  return s;
}

}  // namespace

double coverage_tmin(const std::vector<double>& eigenvalues, double rel_tol) {
  if (eigenvalues.empty()) return 0;
  std::vector<double> eigs = eigenvalues;
  std::sort(eigs.begin(), eigs.end());
  double lam_max = eigs.back();
  double t = 1.0 / lam_max;
  for (int it = 0; it < 500; ++it) {
    if (eigs.size() * std::exp(-lam_max * t) <= rel_tol * theta(eigs, t)) break;
    t *= 1.1;
  }
  return t;
}

HeatTraceSeries heat_trace(const std::vector<double>& eigenvalues,
                           const std::vector<double>& t_grid) {
  HeatTraceSeries out;
  if (eigenvalues.empty()) {
    out.t = t_grid;
    out.trace.assign(t_grid.size(), 0.0);
    out.tail_bound.assign(t_grid.size(), 0.0);
    return out;
  }
  std::vector<double> eigs = eigenvalues;
  std::sort(eigs.begin(), eigs.end());
  double t_min = coverage_tmin(eigs);
  double lam_max = eigs.back();
  for (double t : t_grid) {
    if (t <= 0) throw std::domain_error("heat_trace: t must be positive");
    if (t < t_min)
      throw std::domain_error("heat_trace: t below truncation coverage limit");
    out.t.push_back(t);
    out.trace.push_back(theta(eigs, t));
    out.tail_bound.push_back(eigs.size() * std::exp(-lam_max * t));
  }
  return out;
}

ExponentFit leading_exponent(const HeatTraceSeries& series) {
  if (series.t.size() < 8)
    throw std::invalid_argument("leading_exponent: need at least 8 points");
  // Use the smallest usable decade.
  double t0 = series.t.front();
  std::vector<double> lx, ly;
  for (size_t i = 0; i < series.t.size(); ++i) {
    if (series.t[i] > 10 * t0) break;
    lx.push_back(std::log(series.t[i]));
    ly.push_back(std::log(series.trace[i]));
  }
  if (lx.size() < 8) throw std::invalid_argument("leading_exponent: insufficient range");
  auto slope_of = [](const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  ExponentFit fit;
  fit.slope = slope_of(lx, ly);
  size_t half = lx.size() / 2;
  std::vector<double> x1(lx.begin(), lx.begin() + half), y1(ly.begin(), ly.begin() + half);
  std::vector<double> x2(lx.begin() + half, lx.end()), y2(ly.begin() + half, ly.end());
  double s1 = slope_of(x1, y1), s2 = slope_of(x2, y2);
  fit.error = std::max(std::abs(s1 - fit.slope), std::abs(s2 - fit.slope));
  return fit;
}

ExponentFit leading_exponent_of(const std::vector<double>& eigenvalues,
                                int points_per_decade) {
  double t0 = coverage_tmin(eigenvalues);
  std::vector<double> grid;
  for (int i = 0; i <= points_per_decade; ++i)
    grid.push_back(t0 * std::pow(10.0, static_cast<double>(i) / points_per_decade));
  return leading_exponent(heat_trace(eigenvalues, grid));
}

DegenerationResult degeneration_experiment(double lambda, double mu, double nu,
                                           const std::vector<double>& r_list,
                                           const GradedMetric& g, int q,
                                           const TruncationConfig& trunc) {
  if (nu >= 0)
    throw std::invalid_argument("degeneration_experiment: nu < 0 required");
  if (r_list.size() < 3)
    throw std::invalid_argument("degeneration_experiment: need at least 3 r values");
  DegenerationResult out;
  for (double r : r_list) {
    if (r <= 0 || r > 1)
      throw std::invalid_argument("degeneration_experiment: r in (0, 1] required");
    DegenerationRow row;
    row.r = r;
    GenericRep rep{r * lambda, r * mu, nu};
    ZetaValue zv = delta_zeta_prime0(rep, g, q, trunc, &row.diag);
    row.zeta_prime0 = zv.zeta_prime0;
    out.rows.push_back(row);
  }
  // Extrapolate zeta'(0)(r) = z0 r^{-2} + z1 + z2 r^2 (+ z3 r^4 with enough
  // points) and read off the constant term.
  const int nparam = r_list.size() >= 4 ? 4 : 3;
  Eigen::MatrixXd A(static_cast<int>(r_list.size()), nparam);
  Eigen::VectorXd rhs(static_cast<int>(r_list.size()));
  for (size_t i = 0; i < r_list.size(); ++i) {
    double r = out.rows[i].r;
    A(static_cast<int>(i), 0) = 1.0 / (r * r);
    A(static_cast<int>(i), 1) = 1.0;
    A(static_cast<int>(i), 2) = r * r;
    if (nparam > 3) A(static_cast<int>(i), 3) = r * r * r * r;
    rhs(static_cast<int>(i)) = out.rows[i].zeta_prime0;
  }
  Eigen::VectorXd z = A.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  out.extrapolated_constant = z(1);
  out.fit_residual = (A * z - rhs).cwiseAbs().maxCoeff();

  double hb = std::sqrt(-nu);
  if (g.is_normal_form() && metric_invariants(g).a == 1 &&
      metric_invariants(g).b == ExactMatrix::identity(2)) {
    out.schroedinger_pair = 2 * delta_zeta_prime0_schroedinger_closed(hb, q);
  } else {
    MellinDiagnostics d1;
    SchroedingerRep sp{hb};
    ZetaValue zv = delta_zeta_prime0(sp, g, q, trunc, &d1);
    out.schroedinger_pair = 2 * zv.zeta_prime0;
  }
  out.discrepancy = std::abs(out.extrapolated_constant - out.schroedinger_pair);
  return out;
}

}  // namespace rumin
