#ifndef EHG_HERMITIAN_HPP
#define EHG_HERMITIAN_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "ehg/rng.hpp"

namespace ehg {

// Dense complex Hermitian matrix, row-major. Sized for antenna counts
// (M <= 64); no sparse or non-Hermitian support.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static HermitianMatrix identity(std::size_t dim, double scale = 1.0);
    // h h^dagger
    static HermitianMatrix outer(const cxvec& h);
    static HermitianMatrix weighted_sum(const std::vector<HermitianMatrix>& mats,
                                        const std::vector<double>& weights);

    std::size_t dim() const { return dim_; }

    cxd& at(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cxd& at(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    void add_scaled_identity(double s);
    void add_scaled(const HermitianMatrix& other, double s);
    void scale(double s);

    double trace_real() const;
    double frobenius_norm() const;
    // max_{i,j} |a(i,j) - conj(a(j,i))|
    double max_asymmetry() const;

    cxvec apply(const cxvec& v) const;

    const std::vector<cxd>& data() const { return a_; }

  private:
    std::size_t dim_ = 0;
    std::vector<cxd> a_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;   // ascending
    std::vector<cxvec> eigenvectors;   // orthonormal columns, same order
};

// a^dagger b
cxd hdot(const cxvec& a, const cxvec& b);
double vec_norm(const cxvec& v);
// Throws validation_error unless | ||w||^2 - 1 | <= 1e-12.
void check_unit(const cxvec& w);

// Real part of w^dagger A w (exact real for Hermitian A up to rounding).
double quad_form(const HermitianMatrix& a, const cxvec& w);

// Full eigendecomposition by cyclic Jacobi rotations. Eigenvalues ascend;
// ties keep original index order (stable). Each eigenvector is phase
// normalized so its first entry of largest modulus is real nonnegative,
// making the output deterministic. Throws validation_error for inputs
// with componentwise asymmetry > 1e-8 and numeric_error if the sweep cap
// is reached before the off-diagonal norm drops below 1e-12 * ||A||_F.
EigenDecomposition eigh(const HermitianMatrix& a);

// Largest eigenvalue and its eigenvector; among equal eigenvalues the
// lowest original index wins.
std::pair<double, cxvec> max_eigenpair(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);

// w^dagger A w for unit w; lies in [lambda_min, lambda_max].
double rayleigh(const HermitianMatrix& a, const cxvec& w);

// Hermitian square root of a PSD matrix, clamping roundoff-negative
// eigenvalues to zero. Throws validation_error if lambda_min < -1e-10.
HermitianMatrix psd_sqrt(const HermitianMatrix& a);

}  // namespace ehg

#endif
