#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fblab/grid.hpp"

namespace fblab {

/// Pair weights for the singular interaction |x-y|^-(2+sigma) between grid
/// cells. Offsets within near_radius cells carry exact cell-pair integrals
/// (adaptive quadrature in unit-cell coordinates, scaled by h^(2-sigma));
/// farther offsets use the midpoint rule h^4 / |Delta|^(2+sigma). The
/// self-pair weight is zero: L(A,B) is only evaluated on disjoint sets.
class InteractionKernel {
  public:
    double sigma = 0.5;
    double h = 0.0;
    int near_radius = 4;
    double tolerance = 1e-8;
    double tail_coefficient = 0.0;  // 2*pi/sigma, bounds the per-area tail beyond the box

    /// Weight for the integer cell offset (dx, dy).
    double pair_weight(int dx, int dy) const;
    /// Cell-versus-point weight h^2 * dist^-(2+sigma) (midpoint rule).
    double point_weight(double dist) const;
    /// Near-field table entry in unit-cell units; 0 outside the table.
    double near_entry(int dx, int dy) const;

    /// phi(i) = sum_j w(i-j) chi(j) over all box cells, by FFT on the padded
    /// grid. chi entries are treated as real weights (masks pass 0/1).
    std::vector<double> convolve(const Grid& grid, const std::vector<std::uint8_t>& chi) const;
    std::vector<double> convolve(const Grid& grid, const std::vector<double>& x) const;

    /// FNV-1a checksum of the near-field table bytes.
    std::uint64_t table_checksum() const;

    const std::vector<double>& near_table() const { return near_table_; }

    struct FftState;

  private:
    friend InteractionKernel make_kernel(double, double, int, double, const std::string&);
    std::vector<double> near_table_;  // (near_radius+1)^2, indexed dy*(nr+1)+dx, unit-cell units
    std::shared_ptr<FftState> fft_;  // lazy per-grid kernel transform
};

/// Builds (or loads from cache_dir) the kernel for the given resolution.
/// The cache file is a JSON header (sigma, h, near_radius, tolerance) plus a
/// float64 array, regenerated when the header mismatches.
InteractionKernel make_kernel(double sigma, double h, int near_radius = 4,
                              double tolerance = 1e-8, const std::string& cache_dir = "");

/// Exact unit-cell pair integral over cell(0,0) x cell(dx,dy) of
/// |x-y|^-(2+sigma), by adaptive quadrature to the given relative tolerance.
double near_pair_integral(int dx, int dy, double sigma, double rel_tol);

}  // namespace fblab
