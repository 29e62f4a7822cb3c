#pragma once

#include <cstddef>
#include <span>

#include "ambc/types.hpp"

namespace ambc {

/// Unitary DFT of a fixed size backed by FFTW plans. Both directions scale by
/// 1/sqrt(n), so Parseval holds without extra factors.
class Dft {
public:
    explicit Dft(std::size_t n);
    ~Dft();
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;
    Dft(Dft&& other) noexcept;
    Dft& operator=(Dft&& other) noexcept;

    std::size_t size() const { return n_; }

    void forward(std::span<const Complex> in, std::span<Complex> out) const;
    void inverse(std::span<const Complex> in, std::span<Complex> out) const;

    CVector forward(std::span<const Complex> in) const;
    CVector inverse(std::span<const Complex> in) const;

private:
    void run(void* plan, std::span<const Complex> in, std::span<Complex> out) const;

    std::size_t n_ = 0;
    void* fwd_ = nullptr;
    void* inv_ = nullptr;
};

/// Plain (unnormalised) DFT of `taps` zero-padded to n bins: the frequency
/// response seen by a CP-protected symbol.
CVector frequency_response(std::span<const Complex> taps, std::size_t n);

}  // namespace ambc
