#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "infhom/lie_builder.hpp"
#include "infhom/subalgebra.hpp"
#include "infhom/tensors.hpp"

namespace infhom {

struct RealizerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Plain dense double matrix; the float tier mirrors only what the chart
/// computations need.
class DMatrix {
 public:
  DMatrix() = default;
  DMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static DMatrix identity(std::size_t n) {
    DMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DMatrix& operator+=(const DMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DMatrix& operator-=(const DMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DMatrix& operator*=(double c) {
    for (auto& x : data_) x *= c;
    return *this;
  }
  friend DMatrix operator+(DMatrix a, const DMatrix& b) { return a += b; }
  friend DMatrix operator-(DMatrix a, const DMatrix& b) { return a -= b; }
  friend DMatrix operator*(double c, DMatrix m) { return m *= c; }
  friend DMatrix operator*(const DMatrix& a, const DMatrix& b) {
    DMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }
  double frobenius() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
  }
  bool all_finite() const {
    for (double x : data_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  static DMatrix from_exact(const Matrix& m) {
    DMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        out(i, j) = static_cast<double>(m(i, j));
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

namespace detail {

/// Solves the square system a x = b by partial-pivot elimination.
inline std::vector<double> dsolve(DMatrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) < 1e-300) throw RealizerError("singular float system");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      std::swap(b[p], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace detail

/// Matrix exponential by scaling-and-squaring with the (6,6) Pade
/// approximant; ample for the well-scaled chart arguments used here.
inline DMatrix expm(const DMatrix& a) {
  const std::size_t n = a.rows();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j) r += std::abs(a(i, j));
    norm = std::max(norm, r);
  }
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  DMatrix x = a;
  x *= std::pow(2.0, -s);

  const int q = 6;
  DMatrix num = DMatrix::identity(n);
  DMatrix den = DMatrix::identity(n);
  DMatrix pow_term = DMatrix::identity(n);
  double c = 1.0;
  for (int k = 1; k <= q; ++k) {
    c = c * (q - k + 1) / (k * (2 * q - k + 1));
    pow_term = pow_term * x;
    DMatrix t = pow_term;
    t *= c;
    num += t;
    if (k % 2 == 0)
      den += t;
    else
      den -= t;
  }
  // e = den^-1 num, column by column
  DMatrix e(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = num(i, j);
    const auto sol = detail::dsolve(den, std::move(col));
    for (std::size_t i = 0; i < n; ++i) e(i, j) = sol[i];
  }
  for (int k = 0; k < s; ++k) e = e * e;
  return e;
}

struct RealizationConfig {
  double fd_step = 1e-4;
  double tolerance = 1e-6;
  std::size_t random_points = 6;
  double sample_radius = 0.1;
  std::uint64_t seed = 7;
  // explicit offset coordinates; when empty, random_points are drawn instead.
  // The identity is always sampled first either way.
  std::vector<std::vector<double>> sample_points;
};

inline void validate(const RealizationConfig& cfg) {
  if (!(cfg.fd_step > 0.0)) throw RealizerError("fd_step must be positive");
  if (!(cfg.tolerance > 0.0)) throw RealizerError("tolerance must be positive");
}

/// ad-matrices of the basis of a, or a declared "unsupported" outcome when
/// the adjoint representation is not faithful (nontrivial center).
struct AdjointRealization {
  bool supported = false;
  std::string reason;
  std::vector<Matrix> ad_exact;      // rational ad-matrices, basis order
  std::vector<DMatrix> ad;           // the same, as doubles
  std::vector<Vector> center_basis;  // exact kernel of ad when unsupported
};

inline AdjointRealization adjoint_realization(const LieAlgebraStructure& a) {
  const std::size_t d = a.dim();
  AdjointRealization out;
  out.ad_exact.reserve(d);
  for (std::size_t i = 0; i < d; ++i) out.ad_exact.push_back(a.ad(i));

  // center = { x : sum_a x_a ad_a = 0 }, computed exactly
  Matrix stacked(d * d, d);
  for (std::size_t aix = 0; aix < d; ++aix) {
    const Vector v = vec(out.ad_exact[aix]);
    for (std::size_t r = 0; r < d * d; ++r) stacked(r, aix) = v[r];
  }
  auto sol = solve_linear(stacked, Vector(d * d));
  if (!sol.kernel.empty()) {
    out.supported = false;
    out.reason = "nontrivial center: the adjoint representation is not faithful";
    out.center_basis = std::move(sol.kernel);
    return out;
  }
  out.supported = true;
  for (const auto& m : out.ad_exact) out.ad.push_back(DMatrix::from_exact(m));
  return out;
}

namespace detail {

/// Chart machinery around the identity of the adjoint group: points are
/// x(t) = exp(sum_i t_i ad_{e_i}), and the left logarithmic derivative
/// x^-1 d_i x is evaluated through the dexp series
///   psi(ad_G)(A_i),   psi(z) = (1 - e^-z)/z = sum (-z)^k / (k+1)!
/// which converges fast for the small chart radii used here.
class Chart {
 public:
  Chart(const LieAlgebraStructure& a, const AdjointRealization& adj,
        const LieSubalgebra& h, const Lifting& lam, const CurvatureTensor& r)
      : k_(a.h_dim), n_(a.m_dim), dim_(a.dim()), ad_(adj.ad) {
    for (std::size_t s = 0; s < k_; ++s) h_mats_.push_back(DMatrix::from_exact(h[s]));
    for (std::size_t i = 0; i < n_; ++i) lam_mats_.push_back(DMatrix::from_exact(lam[i]));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        r_comp_.push_back(DMatrix::from_exact(r.component(i, j)));

    // Gram matrix of vec(ad_a); the basis is independent (faithful ad), so
    // this is SPD and fixes the coordinate read-back once and for all.
    gram_ = DMatrix(dim_, dim_);
    for (std::size_t p = 0; p < dim_; ++p)
      for (std::size_t q = 0; q < dim_; ++q) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
          for (std::size_t j = 0; j < dim_; ++j) s += ad_[p](i, j) * ad_[q](i, j);
        gram_(p, q) = s;
      }
  }

  std::size_t n() const { return n_; }

  DMatrix generator(const std::vector<double>& t) const {
    DMatrix g(dim_, dim_);
    for (std::size_t i = 0; i < n_; ++i) {
      DMatrix s = ad_[k_ + i];
      s *= t[i];
      g += s;
    }
    return g;
  }

  /// Coordinates of x(t)^-1 d_i x(t) in the ad-basis.
  std::vector<double> log_derivative_coords(const std::vector<double>& t,
                                            std::size_t i) const {
    const DMatrix g = generator(t);
    DMatrix term = ad_[k_ + i];
    DMatrix w = term;
    double factorial = 1.0;
    for (int m = 1; m <= 40; ++m) {
      term = g * term - term * g;
      factorial *= static_cast<double>(m + 1);
      DMatrix contrib = term;
      contrib *= ((m % 2 == 0) ? 1.0 : -1.0) / factorial;
      w += contrib;
      if (term.max_abs() / factorial < 1e-18 * (1.0 + w.max_abs())) break;
    }
    if (!w.all_finite())
      throw RealizerError("matrix exponential series overflow: chart step too large");
    return decompose(w);
  }

  /// omega_i(t) = lambda_bar(x^-1 d_i x) and kappa_i(t) = its m-part.
  std::pair<DMatrix, std::vector<double>> connection_form(const std::vector<double>& t,
                                                          std::size_t i) const {
    const auto coords = log_derivative_coords(t, i);
    DMatrix omega(n_, n_);
    for (std::size_t s = 0; s < k_; ++s) {
      DMatrix c = h_mats_[s];
      c *= coords[s];
      omega += c;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      DMatrix c = lam_mats_[j];
      c *= coords[k_ + j];
      omega += c;
    }
    std::vector<double> kappa(coords.begin() + static_cast<std::ptrdiff_t>(k_),
                              coords.end());
    return {std::move(omega), std::move(kappa)};
  }

  DMatrix eval_R(const std::vector<double>& u, const std::vector<double>& v) const {
    DMatrix out(n_, n_);
    std::size_t flat = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j, ++flat) {
        const double c = u[i] * v[j] - u[j] * v[i];
        if (c != 0.0) {
          DMatrix m = r_comp_[flat];
          m *= c;
          out += m;
        }
      }
    return out;
  }

  DMatrix eval_lambda(const std::vector<double>& u) const {
    DMatrix out(n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      DMatrix c = lam_mats_[j];
      c *= u[j];
      out += c;
    }
    return out;
  }

  /// Frobenius distance from `m` to the span of the h-basis matrices.
  double h_complement_norm(const DMatrix& m) const {
    if (k_ == 0) return m.frobenius();
    DMatrix gram(k_, k_);
    std::vector<double> rhs(k_);
    for (std::size_t p = 0; p < k_; ++p) {
      for (std::size_t q = 0; q < k_; ++q) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
          for (std::size_t j = 0; j < n_; ++j) s += h_mats_[p](i, j) * h_mats_[q](i, j);
        gram(p, q) = s;
      }
      double s = 0.0;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) s += h_mats_[p](i, j) * m(i, j);
      rhs[p] = s;
    }
    const auto beta = dsolve(gram, std::move(rhs));
    DMatrix res = m;
    for (std::size_t p = 0; p < k_; ++p) {
      DMatrix c = h_mats_[p];
      c *= beta[p];
      res -= c;
    }
    return res.frobenius();
  }

 private:
  std::vector<double> decompose(const DMatrix& w) const {
    std::vector<double> rhs(dim_);
    for (std::size_t p = 0; p < dim_; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) s += ad_[p](i, j) * w(i, j);
      rhs[p] = s;
    }
    return dsolve(gram_, std::move(rhs));
  }

  std::size_t k_, n_, dim_;
  std::vector<DMatrix> ad_;
  std::vector<DMatrix> h_mats_;
  std::vector<DMatrix> lam_mats_;
  std::vector<DMatrix> r_comp_;
  DMatrix gram_;
};

inline std::vector<std::vector<double>> sample_points(const RealizationConfig& cfg,
                                                      std::size_t n) {
  std::vector<std::vector<double>> pts;
  pts.push_back(std::vector<double>(n, 0.0));  // the identity
  if (!cfg.sample_points.empty()) {
    for (const auto& t : cfg.sample_points) {
      if (t.size() != n) throw RealizerError("sample point has wrong dimension");
      pts.push_back(t);
    }
    return pts;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(-cfg.sample_radius, cfg.sample_radius);
  for (std::size_t p = 0; p < cfg.random_points; ++p) {
    std::vector<double> t(n);
    double norm2 = 0.0;
    for (auto& x : t) {
      x = dist(rng);
      norm2 += x * x;
    }
    const double norm = std::sqrt(norm2);
    if (norm > cfg.sample_radius)
      for (auto& x : t) x *= cfg.sample_radius / norm;
    pts.push_back(std::move(t));
  }
  return pts;
}

}  // namespace detail

struct PointDeviation {
  std::vector<double> coords;
  double deviation = 0.0;
};

struct FdReport {
  std::vector<PointDeviation> points;
  double max_deviation = 0.0;
  double deviation_at_identity = 0.0;
  bool pass = false;
  double tolerance = 0.0;
  double fd_step = 0.0;
};

/// Verifies Omega_bar = d omega_bar + omega_bar ^ omega_bar against
/// R0(kappa ., kappa .) at each sample point.  omega_bar is evaluated
/// analytically through the dexp series; only the exterior derivative is
/// approximated, by central differences of step cfg.fd_step.  Passes when
/// the deviation is <= tolerance at the identity and <= 10x tolerance at
/// offset points.
inline FdReport curvature_fd_check(const LieAlgebraStructure& a,
                                   const AdjointRealization& adj,
                                   const LieSubalgebra& h, const Lifting& lam,
                                   const CurvatureTensor& r,
                                   const RealizationConfig& cfg) {
  if (!adj.supported) throw RealizerError("curvature_fd_check: realization unsupported");
  validate(cfg);
  const detail::Chart chart(a, adj, h, lam, r);
  const std::size_t n = chart.n();
  const double hstep = cfg.fd_step;

  FdReport report;
  report.tolerance = cfg.tolerance;
  report.fd_step = hstep;

  const auto pts = detail::sample_points(cfg, n);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& t = pts[p];
    double dev = 0.0;

    std::vector<DMatrix> omega_here(n);
    std::vector<std::vector<double>> kappa_here(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto [w, kap] = chart.connection_form(t, i);
      omega_here[i] = std::move(w);
      kappa_here[i] = std::move(kap);
    }

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto shift = [&](std::size_t axis, double delta) {
          auto s = t;
          s[axis] += delta;
          return s;
        };
        DMatrix di_oj = chart.connection_form(shift(i, hstep), j).first;
        di_oj -= chart.connection_form(shift(i, -hstep), j).first;
        di_oj *= 1.0 / (2.0 * hstep);
        DMatrix dj_oi = chart.connection_form(shift(j, hstep), i).first;
        dj_oi -= chart.connection_form(shift(j, -hstep), i).first;
        dj_oi *= 1.0 / (2.0 * hstep);

        DMatrix curv = di_oj - dj_oi;
        curv += omega_here[i] * omega_here[j] - omega_here[j] * omega_here[i];
        curv -= chart.eval_R(kappa_here[i], kappa_here[j]);
        if (!curv.all_finite())
          throw RealizerError("matrix exponential overflow during FD sweep");
        dev = std::max(dev, curv.max_abs());
      }

    report.points.push_back({t, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
    if (p == 0) report.deviation_at_identity = dev;
  }

  report.pass = report.deviation_at_identity <= cfg.tolerance;
  for (std::size_t p = 1; p < report.points.size(); ++p)
    report.pass = report.pass && report.points[p].deviation <= 10.0 * cfg.tolerance;
  return report;
}

/// Verifies that omega_bar agrees with lambda(kappa .) modulo h at each
/// sample point: the residual, projected onto the orthogonal complement of
/// span(h), must stay below tolerance (10x at offset points).
inline FdReport inner_torsion_fd_check(const LieAlgebraStructure& a,
                                       const AdjointRealization& adj,
                                       const LieSubalgebra& h, const Lifting& lam,
                                       const RealizationConfig& cfg) {
  if (!adj.supported)
    throw RealizerError("inner_torsion_fd_check: realization unsupported");
  validate(cfg);
  const CurvatureTensor dummy(a.m_dim);
  const detail::Chart chart(a, adj, h, lam, dummy);
  const std::size_t n = chart.n();

  FdReport report;
  report.tolerance = cfg.tolerance;
  report.fd_step = cfg.fd_step;

  const auto pts = detail::sample_points(cfg, n);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& t = pts[p];
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto [omega, kappa] = chart.connection_form(t, i);
      DMatrix residual = omega - chart.eval_lambda(kappa);
      dev = std::max(dev, chart.h_complement_norm(residual));
    }
    report.points.push_back({t, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
    if (p == 0) report.deviation_at_identity = dev;
  }

  report.pass = report.deviation_at_identity <= cfg.tolerance;
  for (std::size_t p = 1; p < report.points.size(); ++p)
    report.pass = report.pass && report.points[p].deviation <= 10.0 * cfg.tolerance;
  return report;
}

}  // namespace infhom
