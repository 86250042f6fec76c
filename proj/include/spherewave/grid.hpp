#ifndef SPHEREWAVE_GRID_HPP
#define SPHEREWAVE_GRID_HPP

#include <Eigen/Core>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "spherewave/common.hpp"

namespace spherewave {

using ArrayXc = Eigen::ArrayX<std::complex<double>>;

// Periodic discretization of R^N with the coordinate axes split into factor
// blocks N = N_1 + ... + N_n. Each axis carries M uniform samples covering
// [-L, L); the dual lattice is the centered integer lattice scaled by 1/(2L).
//
// Storage order is row-major: axis 0 is slowest, the last axis is fastest.
// On the frequency side an axis index m stands for the integer frequency
// k = m for m < M/2 and k = m - M otherwise.
struct GridSpec {
  int dim_total = 0;
  std::vector<int> factors;
  int samples_per_axis = 0;
  double half_width = 0.0;

  std::size_t point_count() const;
  double spacing() const { return 2.0 * half_width / samples_per_axis; }
  double freq_spacing() const { return 1.0 / (2.0 * half_width); }
  // largest representable frequency magnitude per axis, M/(4L)
  double max_freq() const { return samples_per_axis / (4.0 * half_width); }

  int block_count() const { return static_cast<int>(factors.size()); }
  int block_offset(int i) const;

  double coord(int axis_index) const { return -half_width + spacing() * axis_index; }
  int freq_int(int axis_index) const {
    return axis_index < samples_per_axis / 2 ? axis_index : axis_index - samples_per_axis;
  }
  double freq(int axis_index) const { return freq_int(axis_index) * freq_spacing(); }

  void decode(std::size_t flat, std::vector<int>& axis_indices) const;

  bool operator==(const GridSpec& other) const = default;
};

GridSpec make_grid(int dim_total, std::vector<int> factors, int samples_per_axis,
                   double half_width);

enum class Side { physical, frequency };
enum class Direction { forward, inverse };

struct Field {
  GridSpec spec;
  Side side = Side::physical;
  ArrayXc values;
};

Field make_field(const GridSpec& spec, Side side = Side::physical);

// Fill from a callback receiving the point coordinates of the field's side.
Field sample_field(const GridSpec& spec, Side side,
                   const std::function<std::complex<double>(const std::vector<double>&)>& fn);

// Trapezoid-weighted discrete Fourier pair
//   forward:  F(xi) = sum_x f(x) e^{-2 pi i x.xi} h^N
//   inverse:  f(x)  = sum_xi F(xi) e^{+2 pi i x.xi} (2L)^{-N}
// so forward(inverse(F)) and inverse(forward(f)) are identities.
Field transform(const Field& field, Direction direction, int threads = 0);

// Iterated mixed norm over factor blocks, innermost block last. Entries of
// p_per_factor may be std::numeric_limits<double>::infinity(). The cell
// weight is h^N on the physical side and (2L)^-N on the frequency side.
double norm(const Field& field, const std::vector<double>& p_per_factor);
// plain L^p over all of R^N
double norm_lp(const Field& field, double p);

// per-point block norms |xi_i| of a frequency point given axis indices
void block_norms(const GridSpec& spec, const std::vector<int>& axis_indices,
                 std::vector<double>& out);

// Serialization: one JSON header line, then little-endian interleaved
// (re, im) doubles. CSV export has index columns followed by re, im.
void write_field(const Field& field, std::ostream& out);
Field read_field(std::istream& in);
void write_field(const Field& field, const std::string& path);
Field read_field(const std::string& path);
void write_field_csv(const Field& field, std::ostream& out);

}  // namespace spherewave

#endif
