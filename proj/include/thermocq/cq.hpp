#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace thermocq {

using Complex = std::complex<double>;

enum class CqRule { BDF2, Trapezoidal };

// generating function delta(z) of the time stepping rule
Complex cq_delta(CqRule rule, Complex z);

// scaling radius for a transform over N+1 steps at roundoff eps:
// R = eps^(1/(2(N+1))), balancing aliasing against roundoff amplification
double choose_radius(int num_steps, double eps = 2.220446049250313e-16);

// first `count` convolution weights of the rule applied to a scalar symbol.
// Uses a fixed moderate contour radius: polynomial and disk-analytic symbols
// come out at roundoff accuracy for small indices.
std::vector<Complex> cq_weights(CqRule rule, const std::function<Complex(Complex)>& symbol,
                                int count, double dt);

// in-place radix-2 FFT; inverse includes the 1/N scaling
void fft_radix2(std::vector<Complex>& a, bool inverse);

// scalar convolution u = (K * g) with K the CQ kernel of the symbol; g holds
// the samples g(0), g(dt), ..., and the symbol must map conjugates to
// conjugates (real time-domain kernel)
std::vector<double> cq_scalar(CqRule rule, double dt, const std::vector<double>& g,
                              const std::function<Complex(Complex)>& symbol);

struct CqOptions {
    int num_threads = 1;
    // optional per-frequency derived quantities (e.g. field evaluations);
    // the observer output gets its own inverse transform
    int observer_dim = 0;
    std::function<Eigen::VectorXcd(Complex, const Eigen::VectorXcd&)> observer;
};

struct CqSolution {
    std::vector<Eigen::VectorXd> steps;     // u_0 .. u_N
    std::vector<Eigen::VectorXd> observed;  // observer samples per step
};

// All-at-once CQ solve of an operator family: scale the data sequence by R^n,
// transform, apply hat-u = apply(s_l, hat-g) at the L/2+1 upper-half contour
// frequencies (the rest follow by conjugation), transform back, unscale.
CqSolution cq_solve(CqRule rule, double dt, const std::vector<Eigen::VectorXd>& g,
                    const std::function<Eigen::VectorXcd(Complex, const Eigen::VectorXcd&)>& apply,
                    const CqOptions& opt = {});

// Marching reference for small dense operator families: builds the matrix
// convolution weights by contour quadrature and forward-substitutes.
std::vector<Eigen::VectorXd> cq_march_dense(CqRule rule, double dt,
                                            const std::vector<Eigen::VectorXd>& g,
                                            const std::function<Eigen::MatrixXcd(Complex)>& op);

} // namespace thermocq
