#include "petra/fft.hpp"

#include "petra/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace petra::fft {
namespace {

// FFTW's planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

template <class T>
struct FftwDeleter {
    void operator()(T* p) const { fftw_free(p); }
};
template <class T>
using Buffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <class T>
Buffer<T> allocate(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
    if (p == nullptr) throw std::bad_alloc();
    return Buffer<T>(p);
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) throw DomainError("fft of an empty record");
    const std::size_t bins = n / 2 + 1;
    auto in = allocate<double>(n);
    auto out = allocate<fftw_complex>(bins);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(x.begin(), x.end(), in.get());
    fftw_execute(plan.get());
    std::vector<std::complex<double>> result(bins);
    for (std::size_t k = 0; k < bins; ++k) result[k] = {out[k][0], out[k][1]};
    return result;
}

std::vector<double> inverse(std::span<const std::complex<double>> bins, std::size_t n) {
    if (n == 0 || bins.size() != n / 2 + 1) throw DomainError("inverse fft: bin count does not match record length");
    auto in = allocate<fftw_complex>(bins.size());
    auto out = allocate<double>(n);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    for (std::size_t k = 0; k < bins.size(); ++k) {
        in[k][0] = bins[k].real();
        in[k][1] = bins[k].imag();
    }
    in[0][1] = 0.0;
    if (n % 2 == 0) in[n / 2][1] = 0.0;
    fftw_execute(plan.get());
    std::vector<double> result(out.get(), out.get() + n);
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : result) v *= scale;
    return result;
}

}  // namespace petra::fft
