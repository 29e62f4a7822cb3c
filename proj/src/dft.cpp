#include "ambc/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ambc {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

Dft::Dft(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Dft: size must be positive");
    std::lock_guard lock(planner_mutex());
    CVector scratch_in(n), scratch_out(n);
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
    const int size = static_cast<int>(n);
    fwd_ = fftw_plan_dft_1d(size, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    inv_ = fftw_plan_dft_1d(size, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!fwd_ || !inv_) throw std::runtime_error("Dft: FFTW planning failed");
}

Dft::~Dft() {
    if (!fwd_ && !inv_) return;
    std::lock_guard lock(planner_mutex());
    if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    if (inv_) fftw_destroy_plan(static_cast<fftw_plan>(inv_));
}

Dft::Dft(Dft&& other) noexcept : n_(other.n_), fwd_(other.fwd_), inv_(other.inv_) {
    other.fwd_ = nullptr;
    other.inv_ = nullptr;
}

Dft& Dft::operator=(Dft&& other) noexcept {
    if (this != &other) {
        std::swap(n_, other.n_);
        std::swap(fwd_, other.fwd_);
        std::swap(inv_, other.inv_);
    }
    return *this;
}

void Dft::run(void* plan, std::span<const Complex> in, std::span<Complex> out) const {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("Dft: length mismatch");
    // FFTW may overwrite its input for some plans; copy to keep `in` const.
    CVector buf(in.begin(), in.end());
    fftw_execute_dft(static_cast<fftw_plan>(plan), reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
    for (auto& v : out) v *= scale;
}

void Dft::forward(std::span<const Complex> in, std::span<Complex> out) const { run(fwd_, in, out); }
void Dft::inverse(std::span<const Complex> in, std::span<Complex> out) const { run(inv_, in, out); }

CVector Dft::forward(std::span<const Complex> in) const {
    CVector out(n_);
    forward(in, out);
    return out;
}

CVector Dft::inverse(std::span<const Complex> in) const {
    CVector out(n_);
    inverse(in, out);
    return out;
}

CVector frequency_response(std::span<const Complex> taps, std::size_t n) {
    CVector twiddle(n);
    for (std::size_t m = 0; m < n; ++m)
        twiddle[m] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) /
                                         static_cast<double>(n));
    CVector out(n, Complex{0.0, 0.0});
    for (std::size_t l = 0; l < n; ++l) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < taps.size(); ++k) acc += taps[k] * twiddle[(l * k) % n];
        out[l] = acc;
    }
    return out;
}

}  // namespace ambc
