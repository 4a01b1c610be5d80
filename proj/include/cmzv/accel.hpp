#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cmzv/precision.hpp"

namespace cmzv {

namespace detail {

// Solve A x = b by Gaussian elimination with partial pivoting (values only;
// conditioning is absorbed into the caller's empirical error estimate).
inline std::vector<Real> solve_linear(std::vector<std::vector<Real>> A, std::vector<Real> b)
{
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = A[col][col].abs_double();
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = A[r][col].abs_double();
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0)
            throw std::runtime_error("solve_linear: singular system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            Real f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c)
                A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Real> x(n, b[0]);
    for (std::size_t i = n; i-- > 0;) {
        Real acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c)
            acc -= A[i][c] * x[c];
        x[i] = acc / A[i][i];
    }
    return x;
}

} // namespace detail

// Richardson extrapolation of the limit of partial sums S(N) whose error has
// an asymptotic expansion  sum_j (c_j + d_j log N) N^{-j*step}  (step = 1/2
// for central-binomial scales, 1 for plain power decay). The limit estimate
// solves the Vandermonde-type system exactly in high precision; the reported
// error is the spread between the order-J and order-(J-1) extrapolants.
struct RichardsonOptions {
    bool half_powers = true;
    bool with_log = false;
    int order = 9;       // J
    long n0 = 64;        // first sample size
};

inline Real richardson_limit(const std::function<Real(long)>& term, mpfr_prec_t prec,
                             const RichardsonOptions& opt, long start_index = 1)
{
    auto run = [&](int J) -> Real {
        int K = (opt.with_log ? 2 * J : J) + 1;
        std::vector<long> Ns;
        double nd = static_cast<double>(opt.n0);
        while (static_cast<int>(Ns.size()) < K) {
            long candidate = static_cast<long>(nd);
            if (Ns.empty() || candidate > Ns.back())
                Ns.push_back(candidate);
            else
                Ns.push_back(Ns.back() + std::max<long>(1, Ns.back() / 7));
            nd *= 1.4142135623730951;
        }
        std::vector<Real> S;
        Real acc(0, prec);
        long last = start_index - 1;
        for (long N : Ns) {
            for (long n = last + 1; n <= N; ++n)
                acc += term(n);
            last = N;
            S.push_back(acc);
        }
        std::vector<std::vector<Real>> A(K, std::vector<Real>(K, Real(0, prec)));
        std::vector<Real> b(K, Real(0, prec));
        double step = opt.half_powers ? 0.5 : 1.0;
        for (int i = 0; i < K; ++i) {
            Real N(Ns[i], prec);
            Real lN = log(N);
            A[i][0] = Real(1, prec);
            int col = 1;
            for (int j = 1; j <= J; ++j) {
                Real p(prec);
                mpfr_set_d(p.raw(), -step * j, MPFR_RNDN);
                Real Npow = exp(p * lN);
                A[i][col++] = Npow;
                if (opt.with_log)
                    A[i][col++] = Npow * lN;
            }
            b[i] = S[i];
        }
        return detail::solve_linear(std::move(A), std::move(b))[0];
    };

    Real full = run(opt.order);
    Real lower = run(opt.order - 1);
    Real diff = full - lower;
    full.widen_err(10.0 * diff.abs_double() + lower.err());
    return full;
}

// Alternating-series acceleration (Cohen-Rodriguez Villegas-Zagier):
//   sum_{k>=0} (-1)^k c(k), convergence like (3+sqrt(8))^{-n}.
// The empirical error is the spread between depth n and n+8 runs.
inline Real alternating_sum(const std::function<Real(long)>& c, mpfr_prec_t prec, int digits)
{
    auto run = [&](long n) -> Real {
        Real d = pow_int(Real(3, prec) + sqrt(Real(8, prec)), n);
        d = (d + Real(1, prec) / d) / 2;
        Real b(-1, prec);
        Real cc = -d;
        Real s(0, prec);
        for (long k = 0; k < n; ++k) {
            cc = b - cc;
            s += cc * c(k);
            b = (b * (k + n)) * (k - n) / ((2 * k + 1));
            b = b / (k + 1) * 2;
        }
        return s / d;
    };
    long n = static_cast<long>(digits * 1.31) + 12;
    Real a = run(n);
    Real b = run(n + 8);
    Real diff = a - b;
    b.widen_err(8.0 * diff.abs_double() + a.err());
    return b;
}

} // namespace cmzv
