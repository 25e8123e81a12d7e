#ifndef EHG_RNG_HPP
#define EHG_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace ehg {

using cxd = std::complex<double>;
using cxvec = std::vector<cxd>;

// Value-type handle for a reproducible random stream. Identical
// (seed, stream_id) pairs reproduce identical draws; split() derives
// decorrelated child streams, which is how replications and Monte-Carlo
// shards stay independent of execution order.
struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RandomStream split(std::uint64_t child) const;
    std::mt19937_64 engine() const;
};

// Uniform on [0,1), 53-bit resolution. All samplers below avoid
// std::*_distribution so that draws are identical across standard
// library implementations.
double uniform01(std::mt19937_64& eng);

// Pair of independent standard normals (Box-Muller).
void normal_pair(std::mt19937_64& eng, double& n0, double& n1);

// Standard circularly symmetric complex Gaussian: E|z|^2 = 1, i.e.
// real and imaginary parts each have variance 1/2.
cxd complex_gaussian(std::mt19937_64& eng);

cxvec gaussian_vector(std::size_t m, std::mt19937_64& eng);

// Uniform direction on the complex unit sphere in C^m.
cxvec sample_unit_sphere(std::size_t m, std::mt19937_64& eng);
cxvec sample_unit_sphere(std::size_t m, const RandomStream& stream);

}  // namespace ehg

#endif
