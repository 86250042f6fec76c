#include "spherewave/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace spherewave {

std::size_t GridSpec::point_count() const {
  std::size_t n = 1;
  for (int d = 0; d < dim_total; ++d) n *= static_cast<std::size_t>(samples_per_axis);
  return n;
}

int GridSpec::block_offset(int i) const {
  int off = 0;
  for (int k = 0; k < i; ++k) off += factors[k];
  return off;
}

void GridSpec::decode(std::size_t flat, std::vector<int>& axis_indices) const {
  axis_indices.resize(dim_total);
  for (int d = dim_total - 1; d >= 0; --d) {
    axis_indices[d] = static_cast<int>(flat % samples_per_axis);
    flat /= samples_per_axis;
  }
}

GridSpec make_grid(int dim_total, std::vector<int> factors, int samples_per_axis,
                   double half_width) {
  if (dim_total < 1) throw validation_error("dim_total: must be a positive integer");
  int sum = 0;
  for (int f : factors) {
    if (f < 1) throw validation_error("factors: every factor must be >= 1");
    sum += f;
  }
  if (sum != dim_total) {
    std::ostringstream msg;
    msg << "factors: sum " << sum << " != dim_total " << dim_total;
    throw validation_error(msg.str());
  }
  if (samples_per_axis < 4 || samples_per_axis % 2 != 0)
    throw validation_error("samples_per_axis: must be even and >= 4");
  if (!(half_width > 0.0)) throw validation_error("half_width: must be > 0");
  return GridSpec{dim_total, std::move(factors), samples_per_axis, half_width};
}

Field make_field(const GridSpec& spec, Side side) {
  Field f;
  f.spec = spec;
  f.side = side;
  f.values = ArrayXc::Zero(static_cast<Eigen::Index>(spec.point_count()));
  return f;
}

Field sample_field(const GridSpec& spec, Side side,
                   const std::function<std::complex<double>(const std::vector<double>&)>& fn) {
  Field f = make_field(spec, side);
  std::vector<int> idx;
  std::vector<double> pt(spec.dim_total);
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    spec.decode(i, idx);
    for (int d = 0; d < spec.dim_total; ++d)
      pt[d] = side == Side::physical ? spec.coord(idx[d]) : spec.freq(idx[d]);
    f.values[static_cast<Eigen::Index>(i)] = fn(pt);
  }
  return f;
}

namespace {

// Unnormalized DFT along every axis: X_k = sum_m x_m e^{sign 2 pi i m k / M}.
void dft_all_axes(ArrayXc& data, const GridSpec& spec, int sign, int threads) {
  const int M = spec.samples_per_axis;
  const std::size_t total = spec.point_count();
  for (int axis = 0; axis < spec.dim_total; ++axis) {
    std::size_t stride = 1;
    for (int d = axis + 1; d < spec.dim_total; ++d) stride *= M;
    const std::size_t lines = total / M;
    parallel_for(lines, threads, [&, stride](std::size_t line) {
      thread_local Eigen::FFT<double> fft;
      // line -> base offset: positions with the axis index zeroed
      std::size_t outer = line / stride;
      std::size_t inner = line % stride;
      std::size_t base = outer * stride * M + inner;
      std::vector<std::complex<double>> in(M), out(M);
      for (int m = 0; m < M; ++m) in[m] = data[base + m * stride];
      if (sign > 0)
        for (auto& v : in) v = std::conj(v);
      fft.fwd(out, in);
      if (sign > 0)
        for (auto& v : out) v = std::conj(v);
      for (int m = 0; m < M; ++m) data[base + m * stride] = out[m];
    });
  }
}

// (-1)^{k_1+...+k_N} for the centered-domain phase
double parity(const GridSpec& spec, std::size_t flat) {
  int s = 0;
  const int M = spec.samples_per_axis;
  for (int d = 0; d < spec.dim_total; ++d) {
    s += static_cast<int>(flat % M);
    flat /= M;
  }
  return (s % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

Field transform(const Field& field, Direction direction, int threads) {
  const GridSpec& spec = field.spec;
  if (direction == Direction::forward && field.side != Side::physical)
    throw contract_error("transform: forward requires a physical-side field");
  if (direction == Direction::inverse && field.side != Side::frequency)
    throw contract_error("transform: inverse requires a frequency-side field");

  Field out;
  out.spec = spec;
  out.values = field.values;
  const std::size_t total = spec.point_count();
  if (direction == Direction::forward) {
    double scale = std::pow(spec.spacing(), spec.dim_total);
    dft_all_axes(out.values, spec, -1, threads);
    for (std::size_t i = 0; i < total; ++i)
      out.values[static_cast<Eigen::Index>(i)] *= scale * parity(spec, i);
    out.side = Side::frequency;
  } else {
    double scale = std::pow(2.0 * spec.half_width, -spec.dim_total);
    for (std::size_t i = 0; i < total; ++i)
      out.values[static_cast<Eigen::Index>(i)] *= parity(spec, i);
    dft_all_axes(out.values, spec, +1, threads);
    out.values *= scale;
    out.side = Side::physical;
  }
  return out;
}

double norm(const Field& field, const std::vector<double>& p_per_factor) {
  const GridSpec& spec = field.spec;
  if (static_cast<int>(p_per_factor.size()) != spec.block_count())
    throw validation_error("p_per_factor: length must match the number of factors");
  for (double p : p_per_factor)
    if (!(p >= 1.0)) throw std::domain_error("p_per_factor: every exponent must be >= 1");

  const double cell_axis =
      field.side == Side::physical ? spec.spacing() : spec.freq_spacing();
  const int M = spec.samples_per_axis;

  std::vector<double> mags(field.values.size());
  for (Eigen::Index i = 0; i < field.values.size(); ++i) mags[i] = std::abs(field.values[i]);

  // reduce trailing (fastest) blocks first
  for (int b = spec.block_count() - 1; b >= 0; --b) {
    std::size_t chunk = 1;
    for (int d = 0; d < spec.factors[b]; ++d) chunk *= M;
    double p = p_per_factor[b];
    double weight = std::pow(cell_axis, spec.factors[b]);
    std::size_t out_size = mags.size() / chunk;
    std::vector<double> reduced(out_size);
    for (std::size_t o = 0; o < out_size; ++o) {
      const double* v = mags.data() + o * chunk;
      if (std::isinf(p)) {
        double mx = 0.0;
        for (std::size_t i = 0; i < chunk; ++i) mx = std::max(mx, v[i]);
        reduced[o] = mx;
      } else {
        double acc = 0.0;
        for (std::size_t i = 0; i < chunk; ++i) acc += std::pow(v[i], p);
        reduced[o] = std::pow(acc * weight, 1.0 / p);
      }
    }
    mags.swap(reduced);
  }
  return mags[0];
}

double norm_lp(const Field& field, double p) {
  std::vector<double> ps(field.spec.block_count(), p);
  return norm(field, ps);
}

void block_norms(const GridSpec& spec, const std::vector<int>& axis_indices,
                 std::vector<double>& out) {
  out.assign(spec.block_count(), 0.0);
  int axis = 0;
  for (int b = 0; b < spec.block_count(); ++b) {
    double acc = 0.0;
    for (int d = 0; d < spec.factors[b]; ++d, ++axis) {
      double x = spec.freq(axis_indices[axis]);
      acc += x * x;
    }
    out[b] = std::sqrt(acc);
  }
}

void write_field(const Field& field, std::ostream& out) {
  nlohmann::json header = {{"dim_total", field.spec.dim_total},
                           {"factors", field.spec.factors},
                           {"samples_per_axis", field.spec.samples_per_axis},
                           {"half_width", field.spec.half_width},
                           {"side", field.side == Side::physical ? "physical" : "frequency"}};
  out << header.dump() << "\n";
  for (Eigen::Index i = 0; i < field.values.size(); ++i) {
    double re = field.values[i].real(), im = field.values[i].imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof(double));
    out.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
}

Field read_field(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw validation_error("field header: missing JSON line");
  nlohmann::json header = nlohmann::json::parse(line);
  GridSpec spec = make_grid(header.at("dim_total").get<int>(),
                            header.at("factors").get<std::vector<int>>(),
                            header.at("samples_per_axis").get<int>(),
                            header.at("half_width").get<double>());
  Field f = make_field(spec, header.at("side").get<std::string>() == "physical"
                                 ? Side::physical
                                 : Side::frequency);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), sizeof(double));
    in.read(reinterpret_cast<char*>(&im), sizeof(double));
    if (!in) throw validation_error("field payload: truncated sample data");
    f.values[i] = {re, im};
  }
  return f;
}

void write_field(const Field& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_field(field, out);
}

Field read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_field(in);
}

void write_field_csv(const Field& field, std::ostream& out) {
  for (int d = 0; d < field.spec.dim_total; ++d) out << "i" << d << ",";
  out << "re,im\n";
  std::vector<int> idx;
  for (std::size_t i = 0; i < field.spec.point_count(); ++i) {
    field.spec.decode(i, idx);
    for (int d = 0; d < field.spec.dim_total; ++d) out << idx[d] << ",";
    out << format_g17(field.values[static_cast<Eigen::Index>(i)].real()) << ","
        << format_g17(field.values[static_cast<Eigen::Index>(i)].imag()) << "\n";
  }
}

}  // namespace spherewave
