#include "rgg/dgg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "rgg/error.hpp"
#include "rgg/geometry.hpp"

namespace rgg {

std::size_t DggSpec::order() const { return checked_power(side, d); }

DggSpec make_dgg_spec(std::size_t side, int d, double r) {
  if (side < 1) throw Error(ErrorCode::InvalidArgument, "grid side must be >= 1");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const double scaled = std::floor(static_cast<double>(side) * r);
  const auto reach = scaled >= static_cast<double>(side) ? side : static_cast<std::size_t>(scaled);
  DggSpec spec{side, d, r, reach, 0};
  std::uint64_t width = 1;
  for (int k = 0; k < d; ++k) width *= 2 * reach + 1;
  spec.degree = width - 1;
  return spec;
}

DggSpec dgg_spec_from_reach(std::size_t side, int d, std::size_t reach) {
  return make_dgg_spec(side, d, (static_cast<double>(reach) + 0.5) / static_cast<double>(side));
}

namespace {

void require_analytic(const DggSpec& spec) {
  if (!spec.analytic())
    throw Error(ErrorCode::AnalyticRangeExceeded,
                "2k+1 = " + std::to_string(2 * spec.reach + 1) + " exceeds N = " + std::to_string(spec.side));
}

}  // namespace

std::uint64_t dgg_degree(std::size_t side, int d, double r) {
  const DggSpec spec = make_dgg_spec(side, d, r);
  require_analytic(spec);
  return spec.degree;
}

std::vector<double> dgg_eigenvalues_closed_form(const DggSpec& spec) {
  require_analytic(spec);
  const std::size_t N = spec.side;
  const double width = static_cast<double>(2 * spec.reach + 1);
  // Per-axis Dirichlet-kernel factor; its value at m = 0 is the limit 2k+1.
  std::vector<double> factor(N);
  factor[0] = width;
  for (std::size_t m = 1; m < N; ++m) {
    const double angle = std::numbers::pi * static_cast<double>(m) / static_cast<double>(N);
    factor[m] = std::sin(angle * width) / std::sin(angle);
  }
  const std::size_t n = spec.order();
  std::vector<double> out(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    double prod = 1.0;
    std::size_t rest = idx;
    for (int s = 0; s < spec.d; ++s) {
      prod *= factor[rest % N];
      rest /= N;
    }
    out[idx] = prod - 1.0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> dgg_eigenvalues_dft(const DggSpec& spec) {
  require_analytic(spec);
  const std::size_t N = spec.side;
  const std::size_t k = spec.reach;
  const std::size_t n = spec.order();
  const auto in_band = [&](std::size_t h) { return h <= k || h + k >= N; };

  std::vector<std::complex<double>> tensor(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    bool inside = idx != 0;
    std::size_t rest = idx;
    for (int s = 0; s < spec.d && inside; ++s) {
      inside = in_band(rest % N);
      rest /= N;
    }
    tensor[idx] = inside ? 1.0 : 0.0;
  }

  std::vector<std::complex<double>> twiddle(N);
  for (std::size_t q = 0; q < N; ++q)
    twiddle[q] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(N));

  // Separable transform: one naive length-N DFT along each axis.
  std::vector<std::complex<double>> line(N), result(N);
  std::size_t stride = 1;
  for (int axis = 0; axis < spec.d; ++axis, stride *= N) {
    const std::size_t block = stride * N;
    for (std::size_t outer = 0; outer < n; outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t h = 0; h < N; ++h) line[h] = tensor[base + h * stride];
        for (std::size_t m = 0; m < N; ++m) {
          std::complex<double> acc = 0.0;
          for (std::size_t h = 0; h < N; ++h) acc += line[h] * twiddle[(m * h) % N];
          result[m] = acc;
        }
        for (std::size_t m = 0; m < N; ++m) tensor[base + m * stride] = result[m];
      }
    }
  }

  std::vector<double> out(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (std::fabs(tensor[idx].imag()) > 1e-8)
      throw Error(ErrorCode::InternalConsistency, "DFT eigenvalue has imaginary part " +
                                                      std::to_string(tensor[idx].imag()));
    out[idx] = tensor[idx].real();
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rgg
