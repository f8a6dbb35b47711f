#include "thermocq/cq.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <Eigen/LU>

namespace thermocq {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace

Complex cq_delta(CqRule rule, Complex z) {
    switch (rule) {
        case CqRule::BDF2:
            return 1.5 - 2.0 * z + 0.5 * z * z;
        case CqRule::Trapezoidal:
            return 2.0 * (1.0 - z) / (1.0 + z);
    }
    throw std::logic_error("cq_delta: unknown rule");
}

double choose_radius(int num_steps, double eps) {
    if (num_steps < 0) throw std::invalid_argument("choose_radius: negative step count");
    return std::pow(eps, 1.0 / (2.0 * (num_steps + 1)));
}

std::vector<Complex> cq_weights(CqRule rule, const std::function<Complex(Complex)>& symbol,
                                int count, double dt) {
    if (count < 1) throw std::invalid_argument("cq_weights: count must be positive");
    const double R = std::max(0.8, choose_radius(count - 1));
    const size_t L = std::max<size_t>(1024, next_pow2(4 * (size_t)count));
    std::vector<Complex> vals(L);
    for (size_t l = 0; l < L; ++l) {
        const Complex z = std::polar(R, kTwoPi * (double)l / (double)L);
        vals[l] = symbol(cq_delta(rule, z) / dt);
    }
    std::vector<Complex> w((size_t)count);
    for (int n = 0; n < count; ++n) {
        Complex acc(0.0, 0.0);
        for (size_t l = 0; l < L; ++l)
            acc += vals[l] * std::polar(1.0, -kTwoPi * (double)n * (double)l / (double)L);
        w[(size_t)n] = acc * std::pow(R, -n) / (double)L;
    }
    return w;
}

void fft_radix2(std::vector<Complex>& a, bool inverse) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_radix2: length must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 1.0 : -1.0) * kTwoPi / (double)len;
        const Complex wl = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= (double)n;
}

std::vector<double> cq_scalar(CqRule rule, double dt, const std::vector<double>& g,
                              const std::function<Complex(Complex)>& symbol) {
    if (g.empty()) return {};
    const int N = (int)g.size() - 1;
    const double R = choose_radius(N);
    const size_t L = next_pow2(2 * (size_t)(N + 1));
    std::vector<Complex> buf(L, Complex(0.0, 0.0));
    double rn = 1.0;
    for (int n = 0; n <= N; ++n) {
        buf[(size_t)n] = g[(size_t)n] * rn;
        rn *= R;
    }
    // generating function on the contour: ghat(z_l) = sum_n g_n z_l^n needs the
    // +i kernel; the trailing 1/L of the inverse direction is exactly the 1/L
    // of the Cauchy coefficient recovery below
    fft_radix2(buf, true);
    for (size_t l = 0; l < L; ++l) {
        const Complex z = std::polar(R, kTwoPi * (double)l / (double)L);
        buf[l] *= symbol(cq_delta(rule, z) / dt);
    }
    fft_radix2(buf, false);
    std::vector<double> u((size_t)N + 1);
    rn = 1.0;
    for (int n = 0; n <= N; ++n) {
        u[(size_t)n] = buf[(size_t)n].real() * rn;
        rn /= R;
    }
    return u;
}

CqSolution cq_solve(CqRule rule, double dt, const std::vector<Eigen::VectorXd>& g,
                    const std::function<Eigen::VectorXcd(Complex, const Eigen::VectorXcd&)>& apply,
                    const CqOptions& opt) {
    if (g.empty()) return {};
    const int N = (int)g.size() - 1;
    const int d = (int)g[0].size();
    const double R = choose_radius(N);
    const size_t L = next_pow2(2 * (size_t)(N + 1));
    const size_t Lh = L / 2;

    // generating functions of the scaled data on the contour (+i kernel, the
    // 1/L belongs to the final coefficient recovery), upper half plane only
    std::vector<Eigen::VectorXcd> freq(Lh + 1, Eigen::VectorXcd(d));
    {
        std::vector<Complex> buf(L);
        for (int c = 0; c < d; ++c) {
            std::fill(buf.begin(), buf.end(), Complex(0.0, 0.0));
            double rn = 1.0;
            for (int n = 0; n <= N; ++n) {
                buf[(size_t)n] = g[(size_t)n](c) * rn;
                rn *= R;
            }
            fft_radix2(buf, true);
            for (size_t l = 0; l <= Lh; ++l) freq[l](c) = buf[l];
        }
    }

    // frequency solves (conjugate-pair symmetry: only l = 0..L/2)
    std::vector<Eigen::VectorXcd> obs;
    if (opt.observer_dim > 0) obs.assign(Lh + 1, Eigen::VectorXcd::Zero(opt.observer_dim));
    {
        std::atomic<size_t> next(0);
        std::exception_ptr error;
        std::mutex error_mtx;
        const int nthreads = std::max(1, opt.num_threads);
        auto worker = [&]() {
            for (;;) {
                const size_t l = next.fetch_add(1);
                if (l > Lh) return;
                try {
                    const Complex z = std::polar(R, kTwoPi * (double)l / (double)L);
                    const Complex s = cq_delta(rule, z) / dt;
                    freq[l] = apply(s, freq[l]);
                    if (opt.observer_dim > 0) obs[l] = opt.observer(s, freq[l]);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mtx);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        };
        if (nthreads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        if (error) std::rethrow_exception(error);
    }

    // coefficient recovery (-i kernel) with Hermitian completion
    auto invert = [&](const std::vector<Eigen::VectorXcd>& spec, int dim) {
        std::vector<Eigen::VectorXd> out((size_t)N + 1, Eigen::VectorXd(dim));
        std::vector<Complex> buf(L);
        for (int c = 0; c < dim; ++c) {
            for (size_t l = 0; l <= Lh; ++l) buf[l] = spec[l](c);
            for (size_t l = 1; l < Lh; ++l) buf[L - l] = std::conj(spec[l](c));
            fft_radix2(buf, false);
            double rn = 1.0;
            for (int n = 0; n <= N; ++n) {
                out[(size_t)n](c) = buf[(size_t)n].real() * rn;
                rn /= R;
            }
        }
        return out;
    };

    CqSolution sol;
    sol.steps = invert(freq, d);
    if (opt.observer_dim > 0) sol.observed = invert(obs, opt.observer_dim);
    return sol;
}

std::vector<Eigen::VectorXd> cq_march_dense(CqRule rule, double dt,
                                            const std::vector<Eigen::VectorXd>& g,
                                            const std::function<Eigen::MatrixXcd(Complex)>& op) {
    if (g.empty()) return {};
    const int N = (int)g.size() - 1;
    const int d = (int)g[0].size();
    const double R = choose_radius(N);
    const size_t L = next_pow2(2 * (size_t)(N + 1));

    std::vector<Eigen::MatrixXcd> vals(L);
    for (size_t l = 0; l < L; ++l) {
        const Complex z = std::polar(R, kTwoPi * (double)l / (double)L);
        vals[l] = op(cq_delta(rule, z) / dt);
    }
    std::vector<Eigen::MatrixXd> w((size_t)N + 1);
    for (int n = 0; n <= N; ++n) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
        for (size_t l = 0; l < L; ++l)
            acc += vals[l] * std::polar(1.0, -kTwoPi * (double)n * (double)l / (double)L);
        w[(size_t)n] = (acc * std::pow(R, -n) / (double)L).real();
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(w[0]);
    std::vector<Eigen::VectorXd> u((size_t)N + 1);
    for (int n = 0; n <= N; ++n) {
        Eigen::VectorXd rhs = g[(size_t)n];
        for (int j = 1; j <= n; ++j) rhs -= w[(size_t)j] * u[(size_t)(n - j)];
        u[(size_t)n] = lu.solve(rhs);
    }
    return u;
}

} // namespace thermocq
