#include "ehg/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ehg/errors.hpp"

namespace ehg {

double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double Rect::xmin() const {
    return std::min({corners[0].x, corners[1].x, corners[2].x, corners[3].x});
}
double Rect::xmax() const {
    return std::max({corners[0].x, corners[1].x, corners[2].x, corners[3].x});
}
double Rect::ymin() const {
    return std::min({corners[0].y, corners[1].y, corners[2].y, corners[3].y});
}
double Rect::ymax() const {
    return std::max({corners[0].y, corners[1].y, corners[2].y, corners[3].y});
}

void Rect::validate(const char* path) const {
    const double x0 = xmin(), x1 = xmax(), y0 = ymin(), y1 = ymax();
    if (!(x1 > x0) || !(y1 > y0))
        throw validation_error(std::string(path) + ": rectangle is degenerate");
    // every corner must sit on one of the four axis-aligned combinations,
    // and all four combinations must be present
    bool seen[2][2] = {{false, false}, {false, false}};
    for (const Vec2& c : corners) {
        int ix = c.x == x0 ? 0 : (c.x == x1 ? 1 : -1);
        int iy = c.y == y0 ? 0 : (c.y == y1 ? 1 : -1);
        if (ix < 0 || iy < 0)
            throw validation_error(std::string(path) + ": corners are not axis-aligned");
        seen[ix][iy] = true;
    }
    if (!(seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1]))
        throw validation_error(std::string(path) + ": corners do not form a rectangle");
}

void Scenario::validate() const {
    if (!(tau > 0.0 && tau < 1.0)) throw validation_error("scenario.tau: must be in (0,1)");
    if (!(beta > 0.0)) throw validation_error("scenario.beta: must be > 0");
    if (!(alpha > 0.0)) throw validation_error("scenario.alpha: must be > 0");
    if (!(cost > 0.0)) throw validation_error("scenario.c: must be > 0");
    if (!(noise_var > 0.0)) throw validation_error("scenario.sigma2: must be > 0");
    if (!(path_loss > 0.0)) throw validation_error("scenario.gamma: must be > 0");
    if (antennas < 1) throw validation_error("scenario.M: must be >= 1");
    if (sensors < 1) throw validation_error("scenario.N: must be >= 1");
    sensor_region.validate("geometry.sensor_region");
}

std::vector<Vec2> place_sensors(const Scenario& scenario, const RandomStream& stream) {
    scenario.sensor_region.validate("geometry.sensor_region");
    const Rect& r = scenario.sensor_region;
    auto eng = stream.engine();
    std::vector<Vec2> pts(scenario.sensors);
    for (Vec2& p : pts) {
        p.x = r.xmin() + uniform01(eng) * (r.xmax() - r.xmin());
        p.y = r.ymin() + uniform01(eng) * (r.ymax() - r.ymin());
    }
    return pts;
}

ChannelState build_channels(const Scenario& scenario,
                            const std::vector<Vec2>& sensor_positions,
                            const RandomStream& stream) {
    const std::size_t n = scenario.sensors;
    const std::size_t m = scenario.antennas;
    if (sensor_positions.size() != n)
        throw validation_error("build_channels: sensor position count mismatch");

    auto eng = stream.engine();
    ChannelState st;
    st.sensor_positions = sensor_positions;
    st.h_hat.reserve(n);
    st.sigma_mat.reserve(n);
    st.h_s.reserve(n);
    st.q_mat.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double d_pb = distance(sensor_positions[i], scenario.pb_position);
        const double d_bs = distance(sensor_positions[i], scenario.bs_position);
        if (d_pb <= 0.0 || d_bs <= 0.0)
            throw validation_error("build_channels: sensor coincides with a node");

        const double mag = std::pow(d_pb, -scenario.path_loss / 2.0);
        cxvec h(m);
        for (std::size_t k = 0; k < m; ++k) {
            double phase = 2.0 * M_PI * uniform01(eng);
            h[k] = cxd(mag * std::cos(phase), mag * std::sin(phase));
        }

        HermitianMatrix sigma =
            HermitianMatrix::identity(m, std::pow(d_pb, -scenario.path_loss));

        double bs_phase = 2.0 * M_PI * uniform01(eng);
        double bs_mag = std::pow(d_bs, -scenario.path_loss / 2.0);
        cxd hs(bs_mag * std::cos(bs_phase), bs_mag * std::sin(bs_phase));

        HermitianMatrix q = HermitianMatrix::outer(h);
        q.add_scaled(sigma, 1.0);

        st.h_hat.push_back(std::move(h));
        st.sigma_mat.push_back(std::move(sigma));
        st.h_s.push_back(hs);
        st.q_mat.push_back(std::move(q));
    }
    return st;
}

ChannelState with_uncertainty(const ChannelState& state, std::size_t i, double zeta) {
    if (i >= state.sensors()) throw validation_error("with_uncertainty: sensor index out of range");
    if (!(zeta >= 0.0)) throw validation_error("with_uncertainty: zeta must be >= 0");
    ChannelState st = state;
    st.sigma_mat[i].at(0, 0) = cxd(zeta, 0.0);
    HermitianMatrix q = HermitianMatrix::outer(st.h_hat[i]);
    q.add_scaled(st.sigma_mat[i], 1.0);
    st.q_mat[i] = std::move(q);
    return st;
}

cxvec sample_error(const HermitianMatrix& sigma, const RandomStream& stream) {
    ErrorSampler sampler(sigma);
    auto eng = stream.engine();
    return sampler.draw(eng);
}

ErrorSampler::ErrorSampler(const HermitianMatrix& sigma) : factor_(psd_sqrt(sigma)) {}

cxvec ErrorSampler::draw(std::mt19937_64& eng) const {
    cxvec z = gaussian_vector(factor_.dim(), eng);
    return factor_.apply(z);
}

}  // namespace ehg
