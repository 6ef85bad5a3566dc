/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "ergo/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ergo {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Plane rotation [c s; -conj(s) c] with real c mapping [f; g] to [r; 0].
struct Givens {
    double c;
    Complex s;
    Complex r;
};

Givens make_givens(const Complex& f, const Complex& g) {
    if (g == 0.0) return {1.0, Complex(0.0), f};
    if (f == 0.0) {
        const double ag = std::abs(g);
        return {0.0, std::conj(g) / ag, Complex(ag)};
    }
    const double af = std::abs(f);
    const double ag = std::abs(g);
    const double d = std::hypot(af, ag);
    const Complex fu = f / af;
    return {af / d, fu * std::conj(g) / d, fu * d};
}

// Unitary similarity reduction to upper Hessenberg form, in place.
void reduce_to_hessenberg(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<Complex> v(n);
    std::vector<Complex> t(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;

        const Complex x0 = a(k + 1, k);
        const double ax0 = std::abs(x0);
        const Complex phase = (ax0 == 0.0) ? Complex(1.0) : x0 / ax0;
        const Complex alpha = -phase * xnorm;

        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
        const double vnorm2 = std::norm(v[k + 1]) + std::max(xnorm2 - ax0 * ax0, 0.0);
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;

        // left: A <- (I - tau v v†) A on rows k+1..n-1, columns k..n-1
        std::fill(t.begin() + static_cast<std::ptrdiff_t>(k), t.end(), Complex(0.0));
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex vi = std::conj(v[i]);
            const Complex* ai = a.row(i);
            for (std::size_t j = k; j < n; ++j) t[j] += vi * ai[j];
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex vi = tau * v[i];
            Complex* ai = a.row(i);
            for (std::size_t j = k; j < n; ++j) ai[j] -= vi * t[j];
        }
        // right: A <- A (I - tau v v†) on all rows, columns k+1..n-1
        for (std::size_t i = 0; i < n; ++i) {
            Complex* ai = a.row(i);
            Complex s(0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += ai[j] * v[j];
            s *= tau;
            for (std::size_t j = k + 1; j < n; ++j) ai[j] -= s * std::conj(v[j]);
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

// Eigenvalues of the trailing 2x2 [[a,b],[c,d]]; mean +- sqrt discriminant.
std::pair<Complex, Complex> eig2x2(const Complex& a, const Complex& b, const Complex& c,
                                   const Complex& d) {
    const Complex mean = 0.5 * (a + d);
    const Complex half = 0.5 * (a - d);
    const Complex disc = std::sqrt(half * half + b * c);
    return {mean + disc, mean - disc};
}

// One explicit-shift QR sweep on the Hessenberg block [l, hi]: factor
// H - sigma I = QR by plane rotations, form RQ + sigma I.
void qr_sweep(ComplexMatrix& h, std::size_t l, std::size_t hi, const Complex& sigma,
              std::vector<Givens>& rots) {
    for (std::size_t i = l; i <= hi; ++i) h(i, i) -= sigma;
    rots.resize(hi - l);
    for (std::size_t i = l + 1; i <= hi; ++i) {
        Givens g = make_givens(h(i - 1, i - 1), h(i, i - 1));
        h(i - 1, i - 1) = g.r;
        h(i, i - 1) = 0.0;
        rots[i - 1 - l] = g;
        Complex* above = h.row(i - 1);
        Complex* below = h.row(i);
        for (std::size_t j = i; j <= hi; ++j) {
            const Complex x = above[j];
            const Complex y = below[j];
            above[j] = g.c * x + g.s * y;
            below[j] = -std::conj(g.s) * x + g.c * y;
        }
    }
    for (std::size_t i = l + 1; i <= hi; ++i) {
        const Givens& g = rots[i - 1 - l];
        const Complex sc = std::conj(g.s);
        for (std::size_t r = l; r <= i; ++r) {
            Complex* hr = h.row(r);
            const Complex x = hr[i - 1];
            const Complex y = hr[i];
            hr[i - 1] = g.c * x + sc * y;
            hr[i] = -g.s * x + g.c * y;
        }
    }
    for (std::size_t i = l; i <= hi; ++i) h(i, i) += sigma;
}

std::vector<Complex> hessenberg_eigenvalues(ComplexMatrix& h, std::size_t max_sweeps,
                                            const Provenance& source) {
    const std::size_t n = h.rows();
    std::vector<Complex> values(n);
    const double anorm = max_abs(h);
    if (anorm == 0.0) return values;

    std::vector<Givens> rots;
    std::size_t hi = n - 1;
    std::size_t sweeps_total = 0;
    std::size_t iter_here = 0;
    while (true) {
        // split at the first negligible subdiagonal below hi
        std::size_t l = hi;
        while (l > 0) {
            double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (s == 0.0) s = anorm;
            if (std::abs(h(l, l - 1)) <= kEps * s) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            values[hi] = h(hi, hi);
            iter_here = 0;
            if (hi == 0) break;
            --hi;
            continue;
        }
        if (l + 1 == hi) {
            auto [e1, e2] = eig2x2(h(l, l), h(l, hi), h(hi, l), h(hi, hi));
            values[hi] = e1;
            values[l] = e2;
            iter_here = 0;
            if (l == 0) break;
            hi = l - 1;
            continue;
        }
        if (sweeps_total >= max_sweeps) {
            std::ostringstream msg;
            msg << "eigenvalues: QR iteration did not converge after " << sweeps_total
                << " sweeps (n=" << n << ", block " << l << ".." << hi << ")";
            if (!source.kind.empty()) msg << " for " << source.describe();
            throw ConvergenceError(msg.str());
        }
        Complex sigma;
        if (iter_here > 0 && iter_here % 10 == 0) {
            // exceptional shift to break rare limit cycles
            sigma = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            auto [e1, e2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            sigma = (std::abs(e1 - h(hi, hi)) <= std::abs(e2 - h(hi, hi))) ? e1 : e2;
        }
        qr_sweep(h, l, hi, sigma, rots);
        ++sweeps_total;
        ++iter_here;
    }
    return values;
}

void require_square_finite(const ComplexMatrix& a, const char* who) {
    if (!a.square()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }
    if (!all_finite(a)) {
        throw std::invalid_argument(std::string(who) + ": matrix entries must be finite");
    }
}

// --- Hermitian path -------------------------------------------------------

struct Reflector {
    std::vector<Complex> v;  // supported on indices k+1..n-1
    double tau = 0.0;
};

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form. Returns diagonal d, off-diagonal e (length n-1, non-negative) and the
// column phases making the subdiagonal real. Reflectors are collected for the
// optional accumulation of the full transform.
void tridiagonalize(ComplexMatrix& w, std::vector<double>& d, std::vector<double>& e,
                    std::vector<Complex>& phi, std::vector<Reflector>& reflectors) {
    const std::size_t n = w.rows();
    d.assign(n, 0.0);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    phi.assign(n, Complex(1.0));
    reflectors.assign(n >= 3 ? n - 2 : 0, {});

    std::vector<Complex> p(n), q(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(w(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;

        const Complex x0 = w(k + 1, k);
        const double ax0 = std::abs(x0);
        const Complex phase = (ax0 == 0.0) ? Complex(1.0) : x0 / ax0;
        const Complex alpha = -phase * xnorm;

        Reflector& refl = reflectors[k];
        refl.v.assign(n, Complex(0.0));
        refl.v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) refl.v[i] = w(i, k);
        const double vnorm2 =
            std::norm(refl.v[k + 1]) + std::max(xnorm2 - ax0 * ax0, 0.0);
        if (vnorm2 == 0.0) {
            refl.v.clear();
            continue;
        }
        refl.tau = 2.0 / vnorm2;
        const std::vector<Complex>& v = refl.v;

        // rank-2 Hermitian update of the trailing block:
        // B <- B - v q† - q v† with p = tau B v, q = p - (tau/2)(v†p) v
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex* wi = w.row(i);
            Complex acc(0.0);
            for (std::size_t j = k + 1; j < n; ++j) acc += wi[j] * v[j];
            p[i] = refl.tau * acc;
        }
        Complex vp(0.0);
        for (std::size_t i = k + 1; i < n; ++i) vp += std::conj(v[i]) * p[i];
        const Complex kappa = 0.5 * refl.tau * vp;
        for (std::size_t i = k + 1; i < n; ++i) q[i] = p[i] - kappa * v[i];
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex* wi = w.row(i);
            const Complex vi = v[i];
            const Complex qi = q[i];
            for (std::size_t j = k + 1; j < n; ++j) {
                wi[j] -= vi * std::conj(q[j]) + qi * std::conj(v[j]);
            }
        }
        w(k + 1, k) = alpha;
        w(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            w(i, k) = 0.0;
            w(k, i) = 0.0;
        }
    }

    for (std::size_t i = 0; i < n; ++i) d[i] = w(i, i).real();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Complex sub = w(k + 1, k);
        const double m = std::abs(sub);
        e[k] = m;
        const Complex unit = (m == 0.0) ? Complex(1.0) : sub / m;
        phi[k + 1] = phi[k] * unit;
        phi[k + 1] /= std::abs(phi[k + 1]);
    }
}

// Accumulate Q = P_0 ... P_{n-3} diag(phi); applied backwards so each step
// touches only the trailing block.
ComplexMatrix accumulate_transform(std::size_t n, const std::vector<Reflector>& reflectors,
                                   const std::vector<Complex>& phi) {
    ComplexMatrix q = ComplexMatrix::identity(n);
    std::vector<Complex> t(n);
    for (std::size_t kk = reflectors.size(); kk-- > 0;) {
        const Reflector& refl = reflectors[kk];
        if (refl.tau == 0.0 || refl.v.empty()) continue;
        const std::size_t k = kk;
        std::fill(t.begin(), t.end(), Complex(0.0));
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex vi = std::conj(refl.v[i]);
            const Complex* qi = q.row(i);
            for (std::size_t j = k + 1; j < n; ++j) t[j] += vi * qi[j];
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex vi = refl.tau * refl.v[i];
            Complex* qi = q.row(i);
            for (std::size_t j = k + 1; j < n; ++j) qi[j] -= vi * t[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        Complex* qi = q.row(i);
        for (std::size_t j = 0; j < n; ++j) qi[j] *= phi[j];
    }
    return q;
}

// Implicit-shift QL on a real symmetric tridiagonal matrix; rotations are
// optionally accumulated into the complex columns of q.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, ComplexMatrix* q) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    std::vector<double> f(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) f[i] = e[i];
    f[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        while (true) {
            std::size_t m = l;
            while (m + 1 < n) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(f[m]) <= kEps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > kSweepFactor) {
                throw ConvergenceError("hermitian_eigen: QL iteration did not converge");
            }
            double g = (d[l + 1] - d[l]) / (2.0 * f[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + f[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t ii = m; ii-- > l;) {
                double ff = s * f[ii];
                const double b = c * f[ii];
                r = std::hypot(ff, g);
                f[ii + 1] = r;
                if (r == 0.0) {
                    d[ii + 1] -= p;
                    f[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = ff / r;
                c = g / r;
                g = d[ii + 1] - p;
                r = (d[ii] - g) * s + 2.0 * c * b;
                p = s * r;
                d[ii + 1] = g + p;
                g = c * r - b;
                if (q != nullptr) {
                    for (std::size_t row = 0; row < q->rows(); ++row) {
                        Complex* qr = q->row(row);
                        const Complex tmp = qr[ii + 1];
                        qr[ii + 1] = s * qr[ii] + c * tmp;
                        qr[ii] = c * qr[ii] - s * tmp;
                    }
                }
            }
            if (underflow) continue;
            d[l] -= p;
            f[l] = g;
            f[m] = 0.0;
        }
    }
}

void sort_pairs_ascending(std::vector<double>& d, ComplexMatrix* q) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    for (std::size_t i = 0; i < n; ++i) ds[i] = d[order[i]];
    d = std::move(ds);
    if (q != nullptr) {
        ComplexMatrix qs(q->rows(), q->cols());
        for (std::size_t i = 0; i < q->rows(); ++i) {
            for (std::size_t j = 0; j < n; ++j) qs(i, j) = (*q)(i, order[j]);
        }
        *q = std::move(qs);
    }
}

// Gram-Schmidt within clusters of near-equal eigenvalues. Accumulated
// rotations already give orthonormal columns; this guards the degenerate path.
void reorthonormalize_clusters(const std::vector<double>& d, ComplexMatrix& q) {
    const std::size_t n = d.size();
    double scale = 0.0;
    for (double x : d) scale = std::max(scale, std::abs(x));
    const double gap = 1e-12 * std::max(scale, 1.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && d[j] - d[j - 1] <= gap) ++j;
        for (std::size_t c = i; c < j; ++c) {
            for (std::size_t prev = i; prev < c; ++prev) {
                Complex proj(0.0);
                for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, prev)) * q(r, c);
                for (std::size_t r = 0; r < n; ++r) q(r, c) -= proj * q(r, prev);
            }
            double nrm2 = 0.0;
            for (std::size_t r = 0; r < n; ++r) nrm2 += std::norm(q(r, c));
            const double inv = 1.0 / std::sqrt(nrm2);
            for (std::size_t r = 0; r < n; ++r) q(r, c) *= inv;
        }
        i = j;
    }
}

void require_hermitian(const ComplexMatrix& a, const char* who) {
    require_square_finite(a, who);
    const double scale = std::max(max_abs(a), 1.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - std::conj(a(j, i))) > 1e-10 * scale) {
                throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
            }
        }
    }
}

}  // namespace

std::string Provenance::describe() const {
    std::ostringstream os;
    os << (kind.empty() ? "matrix" : kind) << " member " << member_index << " (chunk "
       << chunk_index << ", seed " << seed << ")";
    return os.str();
}

double principal_phase(const Complex& z) {
    double p = std::arg(z);
    if (p == std::numbers::pi) p = -std::numbers::pi;
    return p;
}

void sort_spectrum(std::vector<Complex>& values) {
    std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
        const double pa = principal_phase(a), pb = principal_phase(b);
        if (pa != pb) return pa < pb;
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

EigenSpectrum eigenvalues(const ComplexMatrix& a, const Provenance& source,
                          std::size_t sweep_factor) {
    require_square_finite(a, "eigenvalues");
    ComplexMatrix h = a;
    reduce_to_hessenberg(h);
    std::vector<Complex> values = hessenberg_eigenvalues(h, sweep_factor * h.rows(), source);
    sort_spectrum(values);
    return {a.rows(), std::move(values), source};
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
    require_hermitian(a, "hermitian_eigen");
    const std::size_t n = a.rows();
    ComplexMatrix w = a;
    std::vector<double> d, e;
    std::vector<Complex> phi;
    std::vector<Reflector> reflectors;
    tridiagonalize(w, d, e, phi, reflectors);
    ComplexMatrix q = accumulate_transform(n, reflectors, phi);
    tridiagonal_ql(d, e, &q);
    sort_pairs_ascending(d, &q);
    reorthonormalize_clusters(d, q);
    return {std::move(d), std::move(q)};
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    require_hermitian(a, "hermitian_eigenvalues");
    ComplexMatrix w = a;
    std::vector<double> d, e;
    std::vector<Complex> phi;
    std::vector<Reflector> reflectors;
    tridiagonalize(w, d, e, phi, reflectors);
    tridiagonal_ql(d, e, nullptr);
    sort_pairs_ascending(d, nullptr);
    return d;
}

}  // namespace ergo
