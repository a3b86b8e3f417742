#include "nlc/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <mutex>
#include <string>

#include "nlc/error.hpp"

namespace nlc {
namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool smooth_number(int n) {
  for (int p : {2, 3, 5, 7}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

int padded_length(int minimum) {
  int n = std::max(minimum, 1);
  while (!smooth_number(n)) ++n;
  return n;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  std::memset(static_cast<void*>(p), 0, sizeof(T) * n);
  return FftwBuffer<T>(p);
}

}  // namespace

std::string_view to_string(ConvolutionMethod method) {
  switch (method) {
    case ConvolutionMethod::automatic: return "auto";
    case ConvolutionMethod::direct: return "direct";
    case ConvolutionMethod::fft: return "fft";
  }
  return "?";
}

ConvolutionMethod convolution_method_from_string(std::string_view name) {
  if (name == "auto") return ConvolutionMethod::automatic;
  if (name == "direct") return ConvolutionMethod::direct;
  if (name == "fft") return ConvolutionMethod::fft;
  throw ParameterError("unknown convolution method '" + std::string(name) + "'");
}

struct GradientConvolver::FftPlan {
  int p0 = 1;
  int p1 = 1;
  std::size_t real_size = 0;
  std::size_t complex_size = 0;
  double scale = 1.0;
  FftwBuffer<double> real;
  FftwBuffer<fftw_complex> spectrum;
  FftwBuffer<fftw_complex> product;
  FftwBuffer<fftw_complex> kernel[2];
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

GradientConvolver::GradientConvolver(const Kernel& kernel, const Grid& grid,
                                     ConvolutionMethod method)
    : kernel_(kernel), grid_(grid), method_(method) {
  if (!kernel_.is_bound_to(grid_)) {
    throw ConfigError("kernel stencil was not built for this grid");
  }
  const Stencil& st = kernel_.stencil();
  const int pad0 = padded_length(grid_.cells[0] + st.reach0);
  const int pad1 = grid_.dim == 2 ? padded_length(grid_.cells[1] + st.reach1) : 1;
  if (method_ == ConvolutionMethod::automatic) {
    const double direct = static_cast<double>(grid_.size()) * static_cast<double>(st.size());
    const double points = static_cast<double>(pad0) * pad1;
    const double fft = kFftCostFactor * (1 + grid_.dim) * points * std::log2(points);
    method_ = direct <= fft ? ConvolutionMethod::direct : ConvolutionMethod::fft;
  }
  if (method_ != ConvolutionMethod::fft) return;

  auto plan = std::make_unique<FftPlan>();
  // Linear convolution without wrap-around needs P >= N + reach.
  plan->p0 = pad0;
  plan->p1 = pad1;
  const std::size_t p0 = plan->p0;
  const std::size_t p1 = plan->p1;
  plan->real_size = p0 * p1;
  plan->complex_size = grid_.dim == 2 ? p0 * (p1 / 2 + 1) : p0 / 2 + 1;
  plan->scale = 1.0 / static_cast<double>(plan->real_size);
  plan->real = fftw_buffer<double>(plan->real_size);
  plan->spectrum = fftw_buffer<fftw_complex>(plan->complex_size);
  plan->product = fftw_buffer<fftw_complex>(plan->complex_size);
  {
    // FFTW_ESTIMATE keeps plan selection, and therefore round-off, deterministic.
    std::lock_guard lock(planner_mutex());
    if (grid_.dim == 2) {
      plan->forward = fftw_plan_dft_r2c_2d(plan->p0, plan->p1, plan->real.get(),
                                           plan->spectrum.get(), FFTW_ESTIMATE);
      plan->backward = fftw_plan_dft_c2r_2d(plan->p0, plan->p1, plan->product.get(),
                                            plan->real.get(), FFTW_ESTIMATE);
    } else {
      plan->forward = fftw_plan_dft_r2c_1d(plan->p0, plan->real.get(), plan->spectrum.get(),
                                           FFTW_ESTIMATE);
      plan->backward = fftw_plan_dft_c2r_1d(plan->p0, plan->product.get(), plan->real.get(),
                                            FFTW_ESTIMATE);
    }
  }
  for (int axis = 0; axis < grid_.dim; ++axis) {
    std::fill(plan->real.get(), plan->real.get() + plan->real_size, 0.0);
    const auto& w = axis == 0 ? st.w0 : st.w1;
    for (std::size_t e = 0; e < st.size(); ++e) {
      const std::size_t i = static_cast<std::size_t>((st.d0[e] + plan->p0) % plan->p0);
      const std::size_t j = static_cast<std::size_t>((st.d1[e] + plan->p1) % plan->p1);
      plan->real[i * p1 + j] = w[e];
    }
    fftw_execute(plan->forward);
    plan->kernel[axis] = fftw_buffer<fftw_complex>(plan->complex_size);
    std::memcpy(plan->kernel[axis].get(), plan->spectrum.get(),
                sizeof(fftw_complex) * plan->complex_size);
  }
  fft_ = std::move(plan);
}

GradientConvolver::~GradientConvolver() = default;
GradientConvolver::GradientConvolver(GradientConvolver&&) noexcept = default;
GradientConvolver& GradientConvolver::operator=(GradientConvolver&&) noexcept = default;

GradientField GradientConvolver::apply(const DensityField& field) {
  GradientField out(grid_, field.populations());
  apply(field, out);
  return out;
}

void GradientConvolver::apply(const DensityField& field, GradientField& out) {
  if (!(field.grid() == grid_)) {
    throw ConfigError("density field grid does not match the convolution stencil grid");
  }
  if (!(out.grid() == grid_) || out.populations() != field.populations()) {
    out = GradientField(grid_, field.populations());
  }
  if (method_ == ConvolutionMethod::fft) {
    apply_fft(field, out);
  } else {
    apply_direct(field, out);
  }
}

void GradientConvolver::apply_direct(const DensityField& field, GradientField& out) const {
  const Stencil& st = kernel_.stencil();
  const int n0 = grid_.cells[0];
  const int n1 = grid_.cells[1];
  const int entries = static_cast<int>(st.size());
  for (int p = 0; p < field.populations(); ++p) {
    const double* rho = field.population(p).data();
    double* g0 = out.component(p, 0).data();
    double* g1 = grid_.dim == 2 ? out.component(p, 1).data() : nullptr;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n0; ++i) {
      for (int j = 0; j < n1; ++j) {
        double s0 = 0.0;
        double s1 = 0.0;
        for (int e = 0; e < entries; ++e) {
          const int si = i - st.d0[e];
          const int sj = j - st.d1[e];
          if (si < 0 || si >= n0 || sj < 0 || sj >= n1) continue;
          const double r = rho[static_cast<std::size_t>(si) * n1 + sj];
          s0 += r * st.w0[e];
          s1 += r * st.w1[e];
        }
        const std::size_t c = static_cast<std::size_t>(i) * n1 + j;
        g0[c] = s0;
        if (g1) g1[c] = s1;
      }
    }
  }
}

void GradientConvolver::apply_fft(const DensityField& field, GradientField& out) {
  FftPlan& plan = *fft_;
  const int n0 = grid_.cells[0];
  const int n1 = grid_.cells[1];
  const std::size_t p1 = plan.p1;
  for (int p = 0; p < field.populations(); ++p) {
    auto rho = field.population(p);
    std::fill(plan.real.get(), plan.real.get() + plan.real_size, 0.0);
    for (int i = 0; i < n0; ++i) {
      for (int j = 0; j < n1; ++j) {
        plan.real[static_cast<std::size_t>(i) * p1 + j] = rho[grid_.flat(i, j)];
      }
    }
    fftw_execute(plan.forward);
    for (int axis = 0; axis < grid_.dim; ++axis) {
      const fftw_complex* k = plan.kernel[axis].get();
      for (std::size_t c = 0; c < plan.complex_size; ++c) {
        const double ar = plan.spectrum[c][0];
        const double ai = plan.spectrum[c][1];
        plan.product[c][0] = ar * k[c][0] - ai * k[c][1];
        plan.product[c][1] = ar * k[c][1] + ai * k[c][0];
      }
      fftw_execute(plan.backward);
      auto g = out.component(p, axis);
      for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
          g[grid_.flat(i, j)] = plan.real[static_cast<std::size_t>(i) * p1 + j] * plan.scale;
        }
      }
    }
  }
}

GradientField convolve_gradient(const DensityField& field, const Kernel& kernel,
                                ConvolutionMethod method) {
  GradientConvolver conv(kernel, field.grid(), method);
  return conv.apply(field);
}

}  // namespace nlc
