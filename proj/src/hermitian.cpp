#include "ehg/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ehg/errors.hpp"

namespace ehg {

HermitianMatrix HermitianMatrix::identity(std::size_t dim, double scale) {
    HermitianMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = scale;
    return m;
}

HermitianMatrix HermitianMatrix::outer(const cxvec& h) {
    HermitianMatrix m(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j)
            m.at(i, j) = h[i] * std::conj(h[j]);
    return m;
}

HermitianMatrix HermitianMatrix::weighted_sum(const std::vector<HermitianMatrix>& mats,
                                              const std::vector<double>& weights) {
    if (mats.empty() || mats.size() != weights.size())
        throw validation_error("weighted_sum: size mismatch");
    HermitianMatrix acc(mats[0].dim());
    for (std::size_t k = 0; k < mats.size(); ++k) acc.add_scaled(mats[k], weights[k]);
    return acc;
}

void HermitianMatrix::add_scaled_identity(double s) {
    for (std::size_t i = 0; i < dim_; ++i) at(i, i) += s;
}

void HermitianMatrix::add_scaled(const HermitianMatrix& other, double s) {
    if (other.dim() != dim_) throw validation_error("add_scaled: dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += s * other.a_[k];
}

void HermitianMatrix::scale(double s) {
    for (cxd& c : a_) c *= s;
}

double HermitianMatrix::trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i).real();
    return t;
}

double HermitianMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cxd& c : a_) s += std::norm(c);
    return std::sqrt(s);
}

double HermitianMatrix::max_asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
}

cxvec HermitianMatrix::apply(const cxvec& v) const {
    if (v.size() != dim_) throw validation_error("apply: dimension mismatch");
    cxvec out(dim_, cxd(0.0, 0.0));
    for (std::size_t i = 0; i < dim_; ++i) {
        cxd acc(0.0, 0.0);
        for (std::size_t j = 0; j < dim_; ++j) acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

cxd hdot(const cxvec& a, const cxvec& b) {
    if (a.size() != b.size()) throw validation_error("hdot: length mismatch");
    cxd acc(0.0, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
    return acc;
}

double vec_norm(const cxvec& v) {
    double s = 0.0;
    for (const cxd& c : v) s += std::norm(c);
    return std::sqrt(s);
}

void check_unit(const cxvec& w) {
    if (w.empty()) throw validation_error("weight vector must be nonempty");
    double n2 = 0.0;
    for (const cxd& c : w) n2 += std::norm(c);
    if (std::abs(n2 - 1.0) > 1e-12)
        throw validation_error("weight vector is not unit norm");
}

double quad_form(const HermitianMatrix& a, const cxvec& w) {
    if (w.size() != a.dim()) throw validation_error("quad_form: dimension mismatch");
    // Sum the diagonal part plus twice the real part of the upper triangle.
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += a.at(i, i).real() * std::norm(w[i]);
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            acc += 2.0 * (std::conj(w[i]) * a.at(i, j) * w[j]).real();
    }
    return acc;
}

namespace {

double offdiag_norm_sq(const HermitianMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) s += 2.0 * std::norm(a.at(i, j));
    return s;
}

// Phase-normalize in place: the first entry of largest modulus becomes
// real nonnegative.
void normalize_phase(cxvec& v) {
    std::size_t best = 0;
    double best_mod = std::abs(v[0]);
    for (std::size_t k = 1; k < v.size(); ++k) {
        double m = std::abs(v[k]);
        if (m > best_mod) {
            best_mod = m;
            best = k;
        }
    }
    if (best_mod == 0.0) return;
    cxd phase = std::conj(v[best]) / best_mod;
    for (cxd& c : v) c *= phase;
    v[best] = cxd(best_mod, 0.0);
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& input) {
    const std::size_t m = input.dim();
    if (m == 0) throw validation_error("eigh: empty matrix");
    if (input.max_asymmetry() > 1e-8)
        throw validation_error("eigh: matrix is not Hermitian");

    // Work on the exactly symmetrized copy.
    HermitianMatrix a(m);
    for (std::size_t i = 0; i < m; ++i) {
        a.at(i, i) = cxd(input.at(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < m; ++j) {
            cxd avg = 0.5 * (input.at(i, j) + std::conj(input.at(j, i)));
            a.at(i, j) = avg;
            a.at(j, i) = std::conj(avg);
        }
    }

    std::vector<cxvec> vcols(m, cxvec(m, cxd(0.0, 0.0)));
    for (std::size_t k = 0; k < m; ++k) vcols[k][k] = 1.0;

    const double fro = a.frobenius_norm();
    const double stop_tol = 1e-14 * fro;
    const double accept_tol = 1e-12 * fro;
    const int max_sweeps = 100;

    if (m > 1 && fro > 0.0) {
        int sweep = 0;
        for (; sweep < max_sweeps; ++sweep) {
            double off = std::sqrt(offdiag_norm_sq(a));
            if (off <= stop_tol) break;
            for (std::size_t p = 0; p < m - 1; ++p) {
                for (std::size_t q = p + 1; q < m; ++q) {
                    cxd apq = a.at(p, q);
                    double b = std::abs(apq);
                    if (b == 0.0) continue;
                    double app = a.at(p, p).real();
                    double aqq = a.at(q, q).real();
                    // Rotate within the (p,q) plane to zero a(p,q). The 2x2
                    // block [[app, b u],[b conj(u), aqq]] with u = apq/|apq|
                    // is diagonalized by G = [[c, -s u],[s conj(u), c]].
                    cxd u = apq / b;
                    double zeta = (app - aqq) / (2.0 * b);
                    double t;
                    if (std::abs(zeta) > 1e153) {
                        t = 1.0 / (2.0 * zeta);  // avoid overflow in zeta^2
                    } else {
                        double sgn = zeta >= 0.0 ? 1.0 : -1.0;
                        t = sgn / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
                    }
                    double c = 1.0 / std::sqrt(t * t + 1.0);
                    double s = t * c;

                    a.at(p, p) = cxd(app + t * b, 0.0);
                    a.at(q, q) = cxd(aqq - t * b, 0.0);
                    a.at(p, q) = cxd(0.0, 0.0);
                    a.at(q, p) = cxd(0.0, 0.0);
                    for (std::size_t k = 0; k < m; ++k) {
                        if (k == p || k == q) continue;
                        cxd akp = a.at(k, p);
                        cxd akq = a.at(k, q);
                        cxd nkp = akp * c + akq * s * std::conj(u);
                        cxd nkq = -akp * s * u + akq * c;
                        a.at(k, p) = nkp;
                        a.at(p, k) = std::conj(nkp);
                        a.at(k, q) = nkq;
                        a.at(q, k) = std::conj(nkq);
                    }
                    for (std::size_t k = 0; k < m; ++k) {
                        cxd vkp = vcols[p][k];
                        cxd vkq = vcols[q][k];
                        vcols[p][k] = vkp * c + vkq * s * std::conj(u);
                        vcols[q][k] = -vkp * s * u + vkq * c;
                    }
                }
            }
        }
        if (sweep == max_sweeps && std::sqrt(offdiag_norm_sq(a)) > accept_tol)
            throw numeric_error("eigh: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(m);
    for (std::size_t k = 0; k < m; ++k) diag[k] = a.at(k, k).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    EigenDecomposition out;
    out.eigenvalues.resize(m);
    out.eigenvectors.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        cxvec v = vcols[order[k]];
        normalize_phase(v);
        out.eigenvectors[k] = std::move(v);
    }
    return out;
}

std::pair<double, cxvec> max_eigenpair(const HermitianMatrix& a) {
    EigenDecomposition d = eigh(a);
    double top = d.eigenvalues.back();
    // lowest original index among exactly equal eigenvalues
    std::size_t k = 0;
    while (d.eigenvalues[k] != top) ++k;
    return {top, d.eigenvectors[k]};
}

double min_eigenvalue(const HermitianMatrix& a) {
    return eigh(a).eigenvalues.front();
}

double rayleigh(const HermitianMatrix& a, const cxvec& w) {
    check_unit(w);
    return quad_form(a, w);
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
    EigenDecomposition d = eigh(a);
    if (d.eigenvalues.front() < -1e-10)
        throw validation_error("psd_sqrt: matrix is not positive semidefinite");
    const std::size_t m = a.dim();
    HermitianMatrix out(m);
    for (std::size_t k = 0; k < m; ++k) {
        double lam = std::max(0.0, d.eigenvalues[k]);
        if (lam == 0.0) continue;
        double root = std::sqrt(lam);
        const cxvec& v = d.eigenvectors[k];
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                out.at(i, j) += root * v[i] * std::conj(v[j]);
    }
    return out;
}

}  // namespace ehg
