#pragma once

#include <complex>

namespace thermocq {

using Complex = std::complex<double>;

// Modified Bessel functions of a complex argument with Re z >= 0, z != 0.
// Pure imaginary arguments are routed through the J/Y connection formulas;
// otherwise: ascending series for small |z|, continued fraction in the
// cancellation-prone middle band, large-argument expansion from |z| = 18.
struct BesselK01 {
    Complex k0;
    Complex k1;
};
BesselK01 bessel_k01(Complex z);
Complex bessel_k0(Complex z);

// I0(z) and the entire function K0(z) + log(z) I0(z); these are the two
// factors of the kernel splitting used by the log-weighted panel quadrature
Complex bessel_i0(Complex z);
Complex bessel_k0_smooth(Complex z);

} // namespace thermocq
