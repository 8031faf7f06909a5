#include "fblab/kernel.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fblab/quadrature.hpp"
#include "json.hpp"

namespace fblab {

namespace {

std::mutex g_fftw_mutex;  // FFTW planning is not thread-safe

}  // namespace

namespace {

// Adjacent cells (offset (1,0)): the pair integral reduces exactly to
//   int_0^2 g(z1) q(z1) dz1,  g = min(z1, 2 - z1),
//   q(z1) = 2 int_0^1 (1 - z2) (z1^2 + z2^2)^-p dz2
//         = 2 [ z1^(-1-sigma) F(1/z1) - (z1^-sigma - (1+z1^2)^(-sigma/2)) / sigma ],
// with F(V) = int_0^V (1+v^2)^-p dv evaluated numerically up to a knee and by
// the v^(-2p) series beyond it; z1 = 2 t^16 absorbs the outer singularity.
double adjacent_pair_integral(double sigma, double rel_tol) {
    const double p = 0.5 * (2.0 + sigma);
    const double knee = 16.0;
    const double f_knee = integrate_1d(
        [&](double v) { return std::pow(1.0 + v * v, -p); }, 0.0, knee, 1e-12, 30);
    const auto F = [&](double v_cap) {
        if (v_cap <= knee)
            return integrate_1d([&](double v) { return std::pow(1.0 + v * v, -p); }, 0.0, v_cap,
                                1e-12, 30);
        // int_knee^V v^-2p (1 - p v^-2 + p(p+1)/2 v^-4) dv, accurate to ~1e-9
        const auto prim = [&](double v) {
            return std::pow(v, 1.0 - 2.0 * p) / (1.0 - 2.0 * p) -
                   p * std::pow(v, -1.0 - 2.0 * p) / (-1.0 - 2.0 * p) +
                   0.5 * p * (p + 1.0) * std::pow(v, -3.0 - 2.0 * p) / (-3.0 - 2.0 * p);
        };
        return f_knee + prim(v_cap) - prim(knee);
    };
    const auto q = [&](double z1) {
        const double first = std::pow(z1, -1.0 - sigma) * F(1.0 / z1);
        const double second =
            (std::pow(z1, -sigma) - std::pow(1.0 + z1 * z1, -0.5 * sigma)) / sigma;
        return 2.0 * (first - second);
    };
    return integrate_1d(
        [&](double t) {
            if (t <= 0.0) return 0.0;
            const double t15 = std::pow(t, 15);
            const double z1 = t15 * t * 2.0;  // z1 in [0, 2]
            if (z1 >= 2.0) return 0.0;
            const double g = std::min(z1, 2.0 - z1);
            return g * q(z1) * 32.0 * t15;
        },
        0.0, 1.0, rel_tol, 30);
}

// Diagonal cells (offset (1,1)): on [0,1]^2 the tent weight is exactly
// z1 z2, and int_{[0,1]^2} z1 z2 (z1^2+z2^2)^-p has the closed form
// (2^(2-p) - 2) / (4 (1-p)(2-p)); the remaining three boxes are smooth.
double diagonal_pair_integral(double sigma, double rel_tol) {
    const double p = 0.5 * (2.0 + sigma);
    auto f = [&](double zx, double zy) {
        const double ax = 1.0 - std::abs(zx - 1.0);
        const double ay = 1.0 - std::abs(zy - 1.0);
        if (ax <= 0.0 || ay <= 0.0) return 0.0;
        return ax * ay * std::pow(zx * zx + zy * zy, -p);
    };
    const double core = (std::pow(2.0, 2.0 - p) - 2.0) / (4.0 * (1.0 - p) * (2.0 - p));
    return core + integrate_2d(f, 1.0, 2.0, 0.0, 1.0, rel_tol, 20) +
           integrate_2d(f, 0.0, 1.0, 1.0, 2.0, rel_tol, 20) +
           integrate_2d(f, 1.0, 2.0, 1.0, 2.0, rel_tol, 20);
}

}  // namespace

double near_pair_integral(int dx, int dy, double sigma, double rel_tol) {
    if (dx == 0 && dy == 0) throw std::invalid_argument("self-pair weight is excluded");
    dx = std::abs(dx);
    dy = std::abs(dy);
    if (dx < dy) std::swap(dx, dy);
    if (dx == 1 && dy == 0) return adjacent_pair_integral(sigma, rel_tol);
    if (dx == 1 && dy == 1) return diagonal_pair_integral(sigma, rel_tol);

    // farther offsets: the cells do not touch the singularity
    const double p = 0.5 * (2.0 + sigma);
    auto f = [&](double zx, double zy) {
        const double ax = 1.0 - std::abs(zx - dx);
        const double ay = 1.0 - std::abs(zy - dy);
        if (ax <= 0.0 || ay <= 0.0) return 0.0;
        return ax * ay * std::pow(zx * zx + zy * zy, -p);
    };
    return integrate_2d(f, dx - 1.0, dx + 1.0, dy - 1.0, dy + 1.0, rel_tol, 20);
}

double InteractionKernel::near_entry(int dx, int dy) const {
    dx = std::abs(dx);
    dy = std::abs(dy);
    if (dx * dx + dy * dy > near_radius * near_radius) return 0.0;
    return near_table_[static_cast<std::size_t>(dy) * (near_radius + 1) + dx];
}

double InteractionKernel::pair_weight(int dx, int dy) const {
    if (dx == 0 && dy == 0) return 0.0;
    const double d2 = double(dx) * dx + double(dy) * dy;
    const double hs = std::pow(h, 2.0 - sigma);
    if (d2 <= double(near_radius) * near_radius) return hs * near_entry(dx, dy);
    return hs * std::pow(d2, -0.5 * (2.0 + sigma));
}

double InteractionKernel::point_weight(double dist) const {
    return h * h * std::pow(dist, -(2.0 + sigma));
}

std::uint64_t InteractionKernel::table_checksum() const {
    std::uint64_t hash = 1469598103934665603ull;
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(near_table_.data());
    for (std::size_t i = 0; i < near_table_.size() * sizeof(double); ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

struct InteractionKernel::FftState {
    int nx = 0, ny = 0;
    std::vector<double> kf_re, kf_im;  // r2c transform of the padded kernel grid
    std::mutex build_mutex;
    bool built = false;
};

namespace {

struct PlanPair {
    fftw_plan fwd;
    fftw_plan inv;
    int pad;
};

// One forward/inverse plan per padded size; executed with the new-array
// interface so concurrent convolutions can share them.
PlanPair get_plans(int pad) {
    static std::vector<PlanPair> cache;
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    for (const auto& p : cache)
        if (p.pad == pad) return p;
    const int nc = pad * (pad / 2 + 1);
    double* in = fftw_alloc_real(static_cast<std::size_t>(pad) * pad);
    fftw_complex* out = fftw_alloc_complex(nc);
    PlanPair p;
    p.pad = pad;
    p.fwd = fftw_plan_dft_r2c_2d(pad, pad, in, out, FFTW_ESTIMATE);
    p.inv = fftw_plan_dft_c2r_2d(pad, pad, out, in, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    cache.push_back(p);
    return p;
}

}  // namespace

template <typename T>
static std::vector<double> convolve_impl(const InteractionKernel& k,
                                         InteractionKernel::FftState* state, const Grid& grid,
                                         const std::vector<T>& x) {
    const int nx = grid.nx, ny = grid.ny;
    if (x.size() != grid.cell_count()) throw std::invalid_argument("field size mismatch");
    const int pad = 2 * std::max(nx, ny);
    const int nc = pad * (pad / 2 + 1);
    const PlanPair plans = get_plans(pad);

    {
        std::lock_guard<std::mutex> lock(state->build_mutex);
        if (!state->built || state->nx != nx || state->ny != ny) {
            std::vector<double> kgrid(static_cast<std::size_t>(pad) * pad, 0.0);
            for (int b = 0; b < pad; ++b) {
                const int dy = b <= pad / 2 ? b : b - pad;
                for (int a = 0; a < pad; ++a) {
                    const int dx = a <= pad / 2 ? a : a - pad;
                    kgrid[static_cast<std::size_t>(b) * pad + a] = k.pair_weight(dx, dy);
                }
            }
            double* in = fftw_alloc_real(static_cast<std::size_t>(pad) * pad);
            fftw_complex* out = fftw_alloc_complex(nc);
            std::memcpy(in, kgrid.data(), kgrid.size() * sizeof(double));
            fftw_execute_dft_r2c(plans.fwd, in, out);
            state->kf_re.resize(nc);
            state->kf_im.resize(nc);
            for (int i = 0; i < nc; ++i) {
                state->kf_re[i] = out[i][0];
                state->kf_im[i] = out[i][1];
            }
            state->nx = nx;
            state->ny = ny;
            state->built = true;
            fftw_free(in);
            fftw_free(out);
        }
    }

    double* buf = fftw_alloc_real(static_cast<std::size_t>(pad) * pad);
    fftw_complex* spec = fftw_alloc_complex(nc);
    std::memset(buf, 0, static_cast<std::size_t>(pad) * pad * sizeof(double));
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            buf[static_cast<std::size_t>(iy) * pad + ix] =
                static_cast<double>(x[grid.index(ix, iy)]);
    fftw_execute_dft_r2c(plans.fwd, buf, spec);
    for (int i = 0; i < nc; ++i) {
        const double re = spec[i][0] * state->kf_re[i] - spec[i][1] * state->kf_im[i];
        const double im = spec[i][0] * state->kf_im[i] + spec[i][1] * state->kf_re[i];
        spec[i][0] = re;
        spec[i][1] = im;
    }
    fftw_execute_dft_c2r(plans.inv, spec, buf);
    const double scale = 1.0 / (static_cast<double>(pad) * pad);
    std::vector<double> phi(grid.cell_count());
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            phi[grid.index(ix, iy)] = buf[static_cast<std::size_t>(iy) * pad + ix] * scale;
    fftw_free(buf);
    fftw_free(spec);
    return phi;
}

std::vector<double> InteractionKernel::convolve(const Grid& grid,
                                                const std::vector<std::uint8_t>& chi) const {
    return convolve_impl(*this, fft_.get(), grid, chi);
}

std::vector<double> InteractionKernel::convolve(const Grid& grid,
                                                const std::vector<double>& x) const {
    return convolve_impl(*this, fft_.get(), grid, x);
}

namespace {

std::string cache_file_name(double sigma, double h, int near_radius) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "kernel_s" << sigma << "_h" << h << "_nr" << near_radius << ".tbl";
    return ss.str();
}

bool load_table(const std::string& path, double sigma, double h, int near_radius,
                double tolerance, std::vector<double>& table) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::uint32_t hlen = 0;
    in.read(reinterpret_cast<char*>(&hlen), 4);
    if (!in || hlen == 0 || hlen > 4096) return false;
    std::string header(hlen, '\0');
    in.read(header.data(), hlen);
    if (!in) return false;
    try {
        const auto j = nlohmann::json::parse(header);
        if (j.at("sigma").get<double>() != sigma || j.at("h").get<double>() != h ||
            j.at("near_radius").get<int>() != near_radius ||
            j.at("tolerance").get<double>() != tolerance)
            return false;
    } catch (...) {
        return false;
    }
    const std::size_t n = static_cast<std::size_t>(near_radius + 1) * (near_radius + 1);
    table.resize(n);
    in.read(reinterpret_cast<char*>(table.data()), static_cast<std::streamsize>(n * sizeof(double)));
    return static_cast<bool>(in);
}

void store_table(const std::string& path, double sigma, double h, int near_radius,
                 double tolerance, const std::vector<double>& table) {
    nlohmann::json j;
    j["sigma"] = sigma;
    j["h"] = h;
    j["near_radius"] = near_radius;
    j["tolerance"] = tolerance;
    const std::string header = j.dump();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    const std::uint32_t hlen = static_cast<std::uint32_t>(header.size());
    out.write(reinterpret_cast<const char*>(&hlen), 4);
    out.write(header.data(), hlen);
    out.write(reinterpret_cast<const char*>(table.data()),
              static_cast<std::streamsize>(table.size() * sizeof(double)));
}

}  // namespace

InteractionKernel make_kernel(double sigma, double h, int near_radius, double tolerance,
                              const std::string& cache_dir) {
    if (!(sigma > 0.0) || sigma >= 1.0)
        throw std::invalid_argument("kernel sigma must lie in (0, 1)");
    if (!(h > 0.0)) throw std::invalid_argument("cell width must be positive");
    if (near_radius < 1) throw std::invalid_argument("near_radius must be >= 1");

    InteractionKernel k;
    k.sigma = sigma;
    k.h = h;
    k.near_radius = near_radius;
    k.tolerance = tolerance;
    k.tail_coefficient = 2.0 * std::numbers::pi / sigma;
    k.fft_ = std::make_shared<InteractionKernel::FftState>();

    std::string path;
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        path = (std::filesystem::path(cache_dir) / cache_file_name(sigma, h, near_radius)).string();
        if (load_table(path, sigma, h, near_radius, tolerance, k.near_table_)) return k;
    }

    const int n = near_radius + 1;
    k.near_table_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int dy = 0; dy < n; ++dy)
        for (int dx = dy; dx < n; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (dx * dx + dy * dy > near_radius * near_radius) continue;
            const double v = near_pair_integral(dx, dy, sigma, tolerance);
            k.near_table_[static_cast<std::size_t>(dy) * n + dx] = v;
            k.near_table_[static_cast<std::size_t>(dx) * n + dy] = v;
        }
    if (!path.empty()) store_table(path, sigma, h, near_radius, tolerance, k.near_table_);
    return k;
}

}  // namespace fblab
