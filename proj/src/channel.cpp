#include "wiretap/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace wiretap {

Dmc::Dmc(int input_size, int output_size, std::vector<double> transition)
    : in_(input_size), out_(output_size), t_(std::move(transition)) {
    if (in_ < 1 || out_ < 1 || t_.size() != size_t(in_) * out_)
        throw std::invalid_argument("Dmc: bad shape");
    for (int x = 0; x < in_; ++x) {
        double s = 0.0;
        for (int y = 0; y < out_; ++y) {
            double v = w(x, y);
            if (v < 0.0 || v > 1.0)
                throw std::invalid_argument("Dmc: entry outside [0,1]");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw std::invalid_argument("Dmc: row does not sum to 1");
    }
}

Bec::Bec(double p) : erasure_prob(p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("Bec: erasure probability outside [0,1]");
}

Dmc bec_to_dmc(const Bec& c) {
    double p = c.erasure_prob;
    return Dmc(2, 3, {1.0 - p, p, 0.0,
                      0.0,     p, 1.0 - p});
}

Dmc bsc(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("bsc: bad q");
    return Dmc(2, 2, {1.0 - q, q,
                      q,       1.0 - q});
}

Dmc bec_extension(double p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("bec_extension: bad p0");
    return Dmc(3, 3, {1.0 - p0, p0, 0.0,
                      0.0,      1.0, 0.0,
                      0.0,      p0, 1.0 - p0});
}

double t_information(const Dmc& w, const std::vector<double>& p_x) {
    if (p_x.size() != size_t(w.input_size()))
        throw std::invalid_argument("t_information: input distribution size mismatch");
    double s = 0.0;
    for (double v : p_x) {
        if (v < 0.0) throw std::invalid_argument("t_information: negative probability");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-9)
        throw std::invalid_argument("t_information: distribution does not sum to 1");

    std::vector<double> p_y(size_t(w.output_size()), 0.0);
    for (int x = 0; x < w.input_size(); ++x)
        for (int y = 0; y < w.output_size(); ++y)
            p_y[size_t(y)] += p_x[size_t(x)] * w.w(x, y);

    double t = 0.0;
    for (int x = 0; x < w.input_size(); ++x)
        for (int y = 0; y < w.output_size(); ++y)
            t += std::abs(p_x[size_t(x)] * w.w(x, y) - p_x[size_t(x)] * p_y[size_t(y)]);
    return t;
}

double tvd_of_channel(const Dmc& w, bool assume_symmetric, int grid_points) {
    if (assume_symmetric) {
        std::vector<double> uniform(size_t(w.input_size()), 1.0 / w.input_size());
        return t_information(w, uniform);
    }
    if (w.input_size() != 2)
        throw std::invalid_argument("tvd_of_channel: grid mode needs a binary input");
    if (grid_points < 2)
        throw std::invalid_argument("tvd_of_channel: need at least 2 grid points");
    double best = 0.0;
    for (int k = 0; k < grid_points; ++k) {
        double a = double(k) / (grid_points - 1);
        double t = t_information(w, {a, 1.0 - a});
        if (t > best) best = t;
    }
    return best;
}

double bhattacharyya(const Dmc& w) {
    if (w.input_size() != 2)
        throw std::invalid_argument("bhattacharyya: input alphabet not binary");
    double z = 0.0;
    for (int y = 0; y < w.output_size(); ++y)
        z += std::sqrt(w.w(0, y) * w.w(1, y));
    return z;
}

double capacity_uniform(const Dmc& w) {
    double px = 1.0 / w.input_size();
    std::vector<double> p_y(size_t(w.output_size()), 0.0);
    for (int x = 0; x < w.input_size(); ++x)
        for (int y = 0; y < w.output_size(); ++y)
            p_y[size_t(y)] += px * w.w(x, y);
    double mi = 0.0;
    for (int x = 0; x < w.input_size(); ++x)
        for (int y = 0; y < w.output_size(); ++y) {
            double v = w.w(x, y);
            if (v > 0.0 && p_y[size_t(y)] > 0.0)
                mi += px * v * std::log2(v / p_y[size_t(y)]);
        }
    return mi;
}

Dmc degrade(const Dmc& w, const Dmc& p) {
    if (p.input_size() != w.output_size())
        throw std::invalid_argument("degrade: shape mismatch");
    std::vector<double> q(size_t(w.input_size()) * p.output_size(), 0.0);
    for (int x = 0; x < w.input_size(); ++x)
        for (int z = 0; z < p.output_size(); ++z) {
            double s = 0.0;
            for (int y = 0; y < w.output_size(); ++y)
                s += w.w(x, y) * p.w(y, z);
            // clamp accumulation noise so the Dmc invariants hold exactly
            q[size_t(x) * p.output_size() + z] = std::min(1.0, std::max(0.0, s));
        }
    return Dmc(w.input_size(), p.output_size(), std::move(q));
}

BecMetrics bec_metrics(const Bec& c) {
    double p = c.erasure_prob;
    return BecMetrics{1.0 - p, p, 1.0 - p};
}

} // namespace wiretap
