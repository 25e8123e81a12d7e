#include "ehg/rng.hpp"

#include <cmath>

#include "ehg/errors.hpp"

namespace ehg {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

RandomStream RandomStream::split(std::uint64_t child) const {
    // Fold the parent identity into the seed so sibling streams and
    // nested splits never collide.
    std::uint64_t folded = splitmix64(splitmix64(seed) ^ (stream_id * kGolden + 0x6A09E667F3BCC909ull));
    return RandomStream{folded, child};
}

std::mt19937_64 RandomStream::engine() const {
    std::uint64_t s = splitmix64(splitmix64(seed) + splitmix64(stream_id ^ 0x5851F42D4C957F2Dull));
    return std::mt19937_64(s);
}

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

void normal_pair(std::mt19937_64& eng, double& n0, double& n1) {
    // Box-Muller; shift the first uniform into (0,1] to keep log finite.
    double u = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
    double v = uniform01(eng);
    double r = std::sqrt(-2.0 * std::log(u));
    double ang = 2.0 * M_PI * v;
    n0 = r * std::cos(ang);
    n1 = r * std::sin(ang);
}

cxd complex_gaussian(std::mt19937_64& eng) {
    double a, b;
    normal_pair(eng, a, b);
    return cxd(a * M_SQRT1_2, b * M_SQRT1_2);
}

cxvec gaussian_vector(std::size_t m, std::mt19937_64& eng) {
    cxvec z(m);
    for (std::size_t k = 0; k < m; ++k) z[k] = complex_gaussian(eng);
    return z;
}

cxvec sample_unit_sphere(std::size_t m, std::mt19937_64& eng) {
    if (m == 0) throw validation_error("sample_unit_sphere: dimension must be >= 1");
    for (;;) {
        cxvec z = gaussian_vector(m, eng);
        double nrm2 = 0.0;
        for (const cxd& c : z) nrm2 += std::norm(c);
        if (nrm2 > 1e-280) {
            double inv = 1.0 / std::sqrt(nrm2);
            for (cxd& c : z) c *= inv;
            return z;
        }
    }
}

cxvec sample_unit_sphere(std::size_t m, const RandomStream& stream) {
    auto eng = stream.engine();
    return sample_unit_sphere(m, eng);
}

}  // namespace ehg
