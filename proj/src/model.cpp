#include "qsde/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qsde {

namespace {

std::optional<double> fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  // Least-squares slope of log y against log x, skipping points at the
  // noise floor.
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > 1e-13) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  const std::size_t n = lx.size();
  if (n < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = double(n) * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return std::nullopt;
  return (double(n) * sxy - sx * sy) / denom;
}

Matrix2 richardson_first_order(const Matrix2& f1, double l1, const Matrix2& f2, double l2) {
  // f(l) ~ f0 + a l; eliminates the linear term from the two smallest steps.
  return f2 + (f2 - f1) * (l2 / (l1 - l2));
}

}  // namespace

void ModelParams::validate() const {
  if (!(std::isfinite(kappa) && std::isfinite(omega) && std::isfinite(Omega) &&
        std::isfinite(lambda)))
    throw std::invalid_argument("model parameters must be finite");
  if (kappa < 0.0) throw std::invalid_argument("kappa must be non-negative");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

ModelParams ModelParams::from_lambda2(double kappa, double omega, double Omega, double lambda2) {
  if (!(lambda2 > 0.0)) throw std::invalid_argument("lambda2 must be positive");
  ModelParams p{kappa, omega, Omega, std::sqrt(lambda2)};
  p.validate();
  return p;
}

ModelParams ModelParams::from_horizon(double kappa, double omega, double Omega, double T,
                                      std::int64_t N) {
  if (!(T > 0.0) || N < 1) throw std::invalid_argument("horizon requires T > 0 and N >= 1");
  ModelParams p{kappa, omega, Omega, std::sqrt(T / double(N))};
  p.validate();
  return p;
}

InteractionUnitary build_interaction_unitary(const ModelParams& p) {
  p.validate();
  const double l = p.lambda;
  const double l2 = l * l;
  const double C = std::cos(std::sqrt(p.kappa) * l);
  const double S = std::sin(std::sqrt(p.kappa) * l);
  const double c = std::cos(0.5 * p.Omega * l2);
  const double s = std::sin(0.5 * p.Omega * l2);
  const Complex ph = std::exp(Complex(0.0, -p.omega * l2));

  Matrix4 u;
  u << C * ph * c, -S * s, -C * ph * s, -S * c,  //
      0.0, ph * c, 0.0, -ph * s,                 //
      s, 0.0, c, 0.0,                            //
      S * ph * c, C * s, -S * ph * s, C * c;
  return {u};
}

CoefficientSet extract_coefficients(const InteractionUnitary& u, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double l2 = lambda * lambda;
  const Matrix4 d = u.matrix - Matrix4::Identity();
  CoefficientSet out;
  out.lambda = lambda;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      // Field-space block for the atom index pair (a, b); entry (f, f') is
      // the amplitude <a f| U - I |b f'>.
      const Matrix2 blk = d.block<2, 2>(2 * a, 2 * b);
      out.m0(a, b) = blk(0, 0) / l2;
      out.m_minus(a, b) = blk(0, 1) / lambda;
      out.m_plus(a, b) = blk(1, 0) / lambda;
      // dLambda and dt both contribute to the photon-photon entry; subtract
      // the dt part read off the vacuum-vacuum entry.
      out.m_pm(a, b) = blk(1, 1) - blk(0, 0);
    }
  return out;
}

CoefficientSet coefficients_for(const ModelParams& p) {
  return extract_coefficients(build_interaction_unitary(p), p.lambda);
}

LimitReport limit_triple(const ModelParams& base, std::span<const double> lambda_seq) {
  if (lambda_seq.size() < 2)
    throw std::invalid_argument("limit_triple needs at least two step values");
  for (std::size_t i = 0; i < lambda_seq.size(); ++i) {
    if (!(lambda_seq[i] > 0.0)) throw std::invalid_argument("steps must be positive");
    if (i > 0 && !(lambda_seq[i] < lambda_seq[i - 1]))
      throw std::invalid_argument("step sequence must be strictly decreasing");
  }

  const std::size_t n = lambda_seq.size();
  std::vector<Matrix2> s_vals(n), l_vals(n), h_vals(n);
  LimitReport rep;
  rep.lambdas.assign(lambda_seq.begin(), lambda_seq.end());
  rep.ldag_mismatch.resize(n);
  rep.pm_norm.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    ModelParams p = base;
    p.lambda = lambda_seq[i];
    const CoefficientSet c = coefficients_for(p);
    const Matrix2 s = c.m_pm + Matrix2::Identity();
    const Matrix2 l = c.m_plus;
    const Matrix2 ldag = -c.m_minus * s.adjoint();
    const Matrix2 h =
        Complex(0.0, 1.0) * c.m0 + Complex(0.0, 0.5) * (l.adjoint() * l);
    s_vals[i] = s;
    l_vals[i] = l;
    h_vals[i] = h;
    rep.ldag_mismatch[i] = max_abs(ldag.adjoint() - l);
    rep.pm_norm[i] = max_abs(c.m_pm);
  }

  const double l1 = lambda_seq[n - 2], l2 = lambda_seq[n - 1];
  rep.limit.s = richardson_first_order(s_vals[n - 2], l1, s_vals[n - 1], l2);
  rep.limit.l = richardson_first_order(l_vals[n - 2], l1, l_vals[n - 1], l2);
  rep.limit.h = richardson_first_order(h_vals[n - 2], l1, h_vals[n - 1], l2);
  rep.h_hermiticity = max_abs(rep.limit.h - rep.limit.h.adjoint());

  rep.err_s.resize(n);
  rep.err_l.resize(n);
  rep.err_h.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep.err_s[i] = max_abs(s_vals[i] - rep.limit.s);
    rep.err_l[i] = max_abs(l_vals[i] - rep.limit.l);
    rep.err_h[i] = max_abs(h_vals[i] - rep.limit.h);
  }
  rep.rate_s = fit_loglog_slope(rep.lambdas, rep.err_s);
  rep.rate_l = fit_loglog_slope(rep.lambdas, rep.err_l);
  rep.rate_h = fit_loglog_slope(rep.lambdas, rep.err_h);
  rep.rate_ldag = fit_loglog_slope(rep.lambdas, rep.ldag_mismatch);
  rep.rate_pm = fit_loglog_slope(rep.lambdas, rep.pm_norm);
  return rep;
}

}  // namespace qsde
