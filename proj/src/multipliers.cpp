#include "spherewave/multipliers.hpp"

#include <cmath>
#include <sstream>

#include "spherewave/decomp.hpp"
#include "spherewave/gamma.hpp"

namespace spherewave {

using std::complex;

double SymbolClass::m() const {
  double acc = 0.0;
  for (double r : rho) acc += r;
  return acc;
}

std::vector<std::string> SymbolClass::violations(const std::vector<int>& factors) const {
  std::vector<std::string> out;
  if (rho.size() != factors.size()) {
    out.push_back("rho: length must match the number of factors");
    return out;
  }
  int n_total = 0;
  for (int f : factors) n_total += f;
  double mm = m();
  for (double r : rho)
    if (r < 0.0) out.push_back("rho: entries must be nonnegative");
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double upper = factors[i] / 2.0;
    if (!(rho[i] < upper)) {
      std::ostringstream msg;
      msg << "rho[" << i << "] = " << rho[i] << " violates rho_i < N_i/2 (upper " << upper
          << ")";
      out.push_back(msg.str());
    }
  }
  if (mm > 0.0 && mm <= (n_total - 1) / 2.0) {
    for (std::size_t i = 0; i < rho.size(); ++i) {
      double lower = (factors[i] - 1.0) / (n_total - 1.0) * mm;
      if (!(lower < rho[i])) {
        std::ostringstream msg;
        msg << "rho[" << i << "] = " << rho[i] << " violates (N_i-1)/(N-1) m < rho_i (lower "
            << lower << ")";
        out.push_back(msg.str());
      }
    }
  }
  return out;
}

complex<double> omega_hat(std::complex<double> alpha, double xi_norm, int dim_total) {
  if (xi_norm < 0.0) throw std::domain_error("omega_hat: xi_norm must be >= 0");
  const complex<double> nu = dim_total / 2.0 + alpha - 1.0;
  if (xi_norm == 0.0) return std::pow(complex<double>(M_PI), nu) * crgamma(nu + 1.0);
  complex<double> j = bessel_j({nu.real(), nu.imag()}, 2.0 * M_PI * xi_norm);
  return std::exp(-nu * std::log(xi_norm)) * j;
}

complex<double> omega_hat(const OmegaParams& params, double xi_norm, int dim_total) {
  return omega_hat(params.alpha, xi_norm, dim_total);
}

complex<double> omega_hat_series(std::complex<double> z, double xi_norm, int dim_total,
                                 int terms) {
  if (terms < 1) throw std::domain_error("omega_hat_series: terms must be >= 1");
  const double rho = 2.0 * M_PI * xi_norm;
  // term_0 = pi^{(N-1)/2 - z} Gamma(1/2) / Gamma(N/2 + 1 - z)
  complex<double> term = std::pow(complex<double>(M_PI), (dim_total - 1) / 2.0 - z) *
                         std::sqrt(M_PI) * crgamma(dim_total / 2.0 + 1.0 - z);
  complex<double> sum = term;
  for (int k = 1; k < terms; ++k) {
    double kk = static_cast<double>(k);
    complex<double> ratio = -rho * rho / ((2.0 * kk - 1.0) * (2.0 * kk)) *
                            (kk - 0.5) / (kk - 0.5 + dim_total / 2.0 + 0.5 - z);
    term *= ratio;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

complex<double> omega_kernel(std::complex<double> alpha, double x_norm) {
  if (!(alpha.real() > 0.0))
    throw regime_error("omega_kernel: requires Re alpha > 0 on the kernel side");
  if (x_norm >= 1.0) return 0.0;
  complex<double> pref = std::pow(complex<double>(M_PI), alpha - 1.0) * crgamma(alpha);
  return pref * std::exp((alpha - 1.0) * std::log1p(-x_norm * x_norm));
}

Field sample_omega_kernel(const GridSpec& spec, std::complex<double> alpha, int threads) {
  if (!(alpha.real() > 0.0))
    throw regime_error("sample_omega_kernel: requires Re alpha > 0");
  Field f = make_field(spec, Side::physical);
  const double h = spec.spacing();
  const int sub = 16;
  const int N = spec.dim_total;
  parallel_for(spec.point_count(), threads, [&](std::size_t i) {
    std::vector<int> idx;
    spec.decode(i, idx);
    std::vector<double> x(N);
    double r2_min = 0.0, r2_max = 0.0;
    for (int d = 0; d < N; ++d) {
      x[d] = spec.coord(idx[d]);
      double lo = std::abs(x[d]) - 0.5 * h, hi = std::abs(x[d]) + 0.5 * h;
      lo = std::max(lo, 0.0);
      r2_min += lo * lo;
      r2_max += hi * hi;
    }
    complex<double> v;
    if (r2_max < 1.0 || r2_min > 1.0) {
      double r2 = 0.0;
      for (int d = 0; d < N; ++d) r2 += x[d] * x[d];
      v = omega_kernel(alpha, std::sqrt(r2));
    } else {
      // rim cell: average the kernel over a sub^N subdivision
      complex<double> acc = 0.0;
      std::vector<int> s(N, 0);
      const double hs = h / sub;
      for (;;) {
        double r2 = 0.0;
        for (int d = 0; d < N; ++d) {
          double c = x[d] - 0.5 * h + (s[d] + 0.5) * hs;
          r2 += c * c;
        }
        acc += omega_kernel(alpha, std::sqrt(r2));
        int d = N - 1;
        while (d >= 0 && ++s[d] == sub) s[d--] = 0;
        if (d < 0) break;
      }
      v = acc / std::pow(static_cast<double>(sub), N);
    }
    f.values[static_cast<Eigen::Index>(i)] = v;
  });
  return f;
}

double b_s_hat(const std::vector<double>& s, const std::vector<double>& xi_block_norms) {
  if (s.size() != xi_block_norms.size())
    throw validation_error("b_s_hat: s length must match the number of factor blocks");
  double acc = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    acc *= std::pow(1.0 + xi_block_norms[i] * xi_block_norms[i], 0.5 * s[i]);
  return acc;
}

complex<double> sigma_symbol(const OmegaParams& params, const std::vector<double>& s,
                             int correction_terms, const std::vector<double>& xi_block_norms,
                             int dim_total, PhaseSign sign) {
  double xi2 = 0.0;
  for (double b : xi_block_norms) xi2 += b * b;
  const double xi = std::sqrt(xi2);
  const double cut = 1.0 - bump(xi);
  if (cut == 0.0) return 0.0;

  const complex<double> alpha = params.alpha;
  complex<double> brace =
      std::exp(-((dim_total - 1) / 2.0 + alpha) * std::log(xi));
  const BesselOrder order{dim_total / 2.0 + alpha.real() - 1.0, alpha.imag()};
  const double rho = 2.0 * M_PI * xi;
  const complex<double> half_i{0.0, 0.5};  // 1/(2i) = -i/2
  for (int k = 1; k <= correction_terms; ++k) {
    AsymptoticCoeffs cf = asymptotic_coeffs(order, k);
    complex<double> term = 0.5 * cf.a_k * std::pow(rho, -2 * k);
    complex<double> odd = -half_i * cf.b_k * std::pow(rho, -2 * k + 1);
    brace += term + (sign == PhaseSign::plus ? odd : -odd);
  }

  double prod = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    prod *= std::pow(1.0 + xi_block_norms[i] * xi_block_norms[i], -0.5 * s[i]);

  return std::pow(1.0 + xi2, 0.5 * params.r) * brace * cut * prod;
}

MultiplierTable make_table(const GridSpec& spec, Provenance prov, const SymbolFn& fn) {
  MultiplierTable t;
  t.spec = spec;
  t.provenance = prov;
  t.values = ArrayXc::Zero(static_cast<Eigen::Index>(spec.point_count()));
  std::vector<int> idx;
  std::vector<double> xi(spec.dim_total);
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    for (int d = 0; d < spec.dim_total; ++d) xi[d] = spec.freq(idx[d]);
    t.values[static_cast<Eigen::Index>(i)] = fn(xi);
  }
  return t;
}

namespace {
double vec_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

std::vector<double> blocks_of(const GridSpec& spec, const std::vector<double>& xi) {
  std::vector<double> b(spec.block_count(), 0.0);
  int axis = 0;
  for (int i = 0; i < spec.block_count(); ++i) {
    double acc = 0.0;
    for (int d = 0; d < spec.factors[i]; ++d, ++axis) acc += xi[axis] * xi[axis];
    b[i] = std::sqrt(acc);
  }
  return b;
}
}  // namespace

MultiplierTable make_omega_table(const GridSpec& spec, const OmegaParams& params) {
  return make_table(spec, Provenance::omega_hat, [&](const std::vector<double>& xi) {
    return omega_hat(params, vec_norm(xi), spec.dim_total);
  });
}

MultiplierTable make_b_s_table(const GridSpec& spec, const std::vector<double>& s,
                               bool reciprocal) {
  return make_table(spec, Provenance::b_s, [&](const std::vector<double>& xi) {
    double v = b_s_hat(s, blocks_of(spec, xi));
    return complex<double>(reciprocal ? 1.0 / v : v);
  });
}

MultiplierTable make_sigma_table(const GridSpec& spec, const OmegaParams& params,
                                 const std::vector<double>& s, int correction_terms,
                                 PhaseSign sign) {
  return make_table(spec, Provenance::sigma, [&](const std::vector<double>& xi) {
    return sigma_symbol(params, s, correction_terms, blocks_of(spec, xi), spec.dim_total, sign);
  });
}

MultiplierTable make_phase_table(const GridSpec& spec, PhaseSign sign) {
  const double sg = sign == PhaseSign::plus ? 1.0 : -1.0;
  return make_table(spec, Provenance::custom, [&](const std::vector<double>& xi) {
    return std::polar(1.0, sg * 2.0 * M_PI * vec_norm(xi));
  });
}

MultiplierTable with_phase(const MultiplierTable& table, PhaseSign sign) {
  MultiplierTable out = table;
  MultiplierTable phase = make_phase_table(table.spec, sign);
  out.values *= phase.values;
  return out;
}

namespace {

// lattice in ascending frequency order for finite differencing
struct Lattice {
  GridSpec spec;
  ArrayXc values;  // index m along an axis means xi = (m - M/2) / (2L)

  double freq(int m) const { return (m - spec.samples_per_axis / 2) * spec.freq_spacing(); }
};

Lattice build_lattice(const SymbolFn& fn, const GridSpec& spec) {
  Lattice lat;
  lat.spec = spec;
  lat.values = ArrayXc::Zero(static_cast<Eigen::Index>(spec.point_count()));
  std::vector<int> idx;
  std::vector<double> xi(spec.dim_total);
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    for (int d = 0; d < spec.dim_total; ++d) xi[d] = lat.freq(idx[d]);
    lat.values[static_cast<Eigen::Index>(i)] = fn(xi);
  }
  return lat;
}

// multi-indices with |alpha| <= max_order over N axes
std::vector<std::vector<int>> derivative_indices(int dims, int max_order) {
  std::vector<std::vector<int>> out;
  out.push_back(std::vector<int>(dims, 0));
  if (max_order >= 1)
    for (int d = 0; d < dims; ++d) {
      std::vector<int> a(dims, 0);
      a[d] = 1;
      out.push_back(a);
    }
  if (max_order >= 2)
    for (int d = 0; d < dims; ++d)
      for (int e = d; e < dims; ++e) {
        std::vector<int> a(dims, 0);
        a[d] += 1;
        a[e] += 1;
        out.push_back(a);
      }
  return out;
}

double sup_ratio(const Lattice& lat, const std::vector<int>& alpha, const SymbolClass& cls) {
  const GridSpec& spec = lat.spec;
  const int M = spec.samples_per_axis;
  const int N = spec.dim_total;
  const double dxi = spec.freq_spacing();
  int order = 0;
  for (int a : alpha) order += a;

  std::vector<std::size_t> strides(N);
  {
    std::size_t s = 1;
    for (int d = N - 1; d >= 0; --d) {
      strides[d] = s;
      s *= M;
    }
  }

  double worst = 0.0;
  std::vector<int> idx;
  std::vector<double> xi(N);
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    bool interior = true;
    for (int d = 0; d < N; ++d)
      if (idx[d] < order || idx[d] >= M - order) interior = false;
    if (!interior) continue;

    // central differences, applied axis by axis
    const auto at = [&](std::size_t flat) {
      return lat.values[static_cast<Eigen::Index>(flat)];
    };
    complex<double> est;
    if (order == 0) {
      est = at(i);
    } else if (order == 1) {
      int d = 0;
      while (alpha[d] == 0) ++d;
      est = (at(i + strides[d]) - at(i - strides[d])) / (2.0 * dxi);
    } else {
      int d1 = -1, d2 = -1;
      for (int d = 0; d < N; ++d) {
        if (alpha[d] == 2) d1 = d2 = d;
        if (alpha[d] == 1) (d1 < 0 ? d1 : d2) = d;
      }
      if (d1 == d2) {
        est = (at(i + strides[d1]) - 2.0 * at(i) + at(i - strides[d1])) / (dxi * dxi);
      } else {
        est = (at(i + strides[d1] + strides[d2]) - at(i + strides[d1] - strides[d2]) -
               at(i - strides[d1] + strides[d2]) + at(i - strides[d1] - strides[d2])) /
              (4.0 * dxi * dxi);
      }
    }

    for (int d = 0; d < N; ++d) xi[d] = lat.freq(idx[d]);
    int axis = 0;
    double weight = 1.0;
    for (int b = 0; b < spec.block_count(); ++b) {
      double bn = 0.0;
      int a_i = 0;
      for (int d = 0; d < spec.factors[b]; ++d, ++axis) {
        bn += xi[axis] * xi[axis];
        a_i += alpha[axis];
      }
      bn = std::sqrt(bn);
      weight *= std::pow(1.0 + bn, a_i + cls.rho[b]);
    }
    worst = std::max(worst, std::abs(est) * weight);
  }
  return worst;
}

}  // namespace

ClassCheckReport symbol_class_check(const SymbolFn& fn, const GridSpec& spec,
                                    const SymbolClass& cls, int max_order) {
  if (max_order > 2)
    throw validation_error("symbol_class_check: max_order must be <= 2 (central differences)");
  if (static_cast<int>(cls.rho.size()) != spec.block_count())
    throw validation_error("symbol_class_check: rho length must match the factor count");
  // Doubling M at fixed L doubles the frequency extent M/(4L) while keeping
  // the lattice spacing 1/(2L); growth-type symbols fail the drift bound.
  GridSpec fine = spec;
  fine.samples_per_axis *= 2;
  Lattice coarse_lat = build_lattice(fn, spec);
  Lattice fine_lat = build_lattice(fn, fine);

  ClassCheckReport report;
  report.pass = true;
  for (const auto& alpha : derivative_indices(spec.dim_total, max_order)) {
    ClassCheckRow row;
    row.multi_index = alpha;
    row.sup_coarse = sup_ratio(coarse_lat, alpha, cls);
    row.sup_fine = sup_ratio(fine_lat, alpha, cls);
    row.drift = row.sup_fine / std::max(row.sup_coarse, 1e-300);
    bool ok = std::isfinite(row.sup_coarse) && std::isfinite(row.sup_fine) && row.drift < 2.0;
    report.pass = report.pass && ok;
    report.worst_ratio = std::max(report.worst_ratio, row.sup_fine);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ClassCheckReport symbol_class_check(const MultiplierTable& coarse, const MultiplierTable& fine,
                                    const SymbolClass& cls, int max_order) {
  if (coarse.spec.samples_per_axis * 2 != fine.spec.samples_per_axis ||
      coarse.spec.half_width != fine.spec.half_width)
    throw contract_error("symbol_class_check: fine table must double samples_per_axis");
  // Reuse the generator path by looking values up from the tables.
  auto lookup = [](const MultiplierTable& t) {
    return [&t](const std::vector<double>& xi) {
      std::size_t flat = 0;
      const int M = t.spec.samples_per_axis;
      for (int d = 0; d < t.spec.dim_total; ++d) {
        long k = std::lround(xi[d] / t.spec.freq_spacing());
        int m = static_cast<int>(k < 0 ? k + M : k);
        flat = flat * M + static_cast<std::size_t>(m);
      }
      return t.values[static_cast<Eigen::Index>(flat)];
    };
  };
  GridSpec spec = coarse.spec;
  Lattice coarse_lat = build_lattice(lookup(coarse), spec);
  Lattice fine_lat = build_lattice(lookup(fine), fine.spec);
  ClassCheckReport report;
  report.pass = true;
  for (const auto& alpha : derivative_indices(spec.dim_total, max_order)) {
    ClassCheckRow row;
    row.multi_index = alpha;
    row.sup_coarse = sup_ratio(coarse_lat, alpha, cls);
    row.sup_fine = sup_ratio(fine_lat, alpha, cls);
    row.drift = row.sup_fine / std::max(row.sup_coarse, 1e-300);
    bool ok = std::isfinite(row.sup_coarse) && std::isfinite(row.sup_fine) && row.drift < 2.0;
    report.pass = report.pass && ok;
    report.worst_ratio = std::max(report.worst_ratio, row.sup_fine);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Field apply_multiplier(const Field& f, const MultiplierTable& table, int threads) {
  if (f.side != Side::physical)
    throw contract_error("apply_multiplier: field must be physical side");
  if (!(f.spec == table.spec))
    throw contract_error("apply_multiplier: field and table grids must match");
  Field hat = transform(f, Direction::forward, threads);
  hat.values *= table.values;
  return transform(hat, Direction::inverse, threads);
}

}  // namespace spherewave
