#pragma once

#include <vector>

namespace wiretap {

/// Discrete memoryless channel: transition(x, y) = W(y|x).
/// Rows must sum to 1 within 1e-12, entries in [0,1].
class Dmc {
public:
    Dmc(int input_size, int output_size, std::vector<double> transition);

    int input_size() const { return in_; }
    int output_size() const { return out_; }
    double w(int x, int y) const { return t_[size_t(x) * out_ + y]; }

private:
    int in_, out_;
    std::vector<double> t_;
};

/// Binary erasure channel parameter.
struct Bec {
    double erasure_prob = 0.0;
    Bec() = default;
    explicit Bec(double p);
};

/// BEC as a 2x3 channel over outputs {0, erasure, 1}.
Dmc bec_to_dmc(const Bec& c);
/// Binary symmetric channel with crossover q.
Dmc bsc(double q);
/// Erasure post-processing on {0, erasure, 1}: symbols erased with prob p0,
/// an existing erasure stays erased. Cascading a BEC(p) with this yields
/// BEC(p + (1-p)p0).
Dmc bec_extension(double p0);

/// T(W, p_X) = sum_{x,y} |p(x,y) - p(x)p(y)|, the un-halved TVD information.
/// p_x must sum to 1 within 1e-9.
double t_information(const Dmc& w, const std::vector<double>& p_x);

/// Channel TVD T(W). With assume_symmetric the uniform input is the exact
/// maximizer and is evaluated directly; otherwise a grid of binary input
/// biases is searched (diagnostic mode, binary-input channels only).
double tvd_of_channel(const Dmc& w, bool assume_symmetric,
                      int grid_points = 101);

/// Bhattacharyya parameter Z(W) = sum_y sqrt(W(y|0) W(y|1)).
double bhattacharyya(const Dmc& w);

/// Mutual information I(X;Y) in bits at uniform input, 0 log 0 = 0.
double capacity_uniform(const Dmc& w);

/// Cascade w with p: Q(z|x) = sum_y W(y|x) P(z|y). Output of w feeds p.
Dmc degrade(const Dmc& w, const Dmc& p);

struct BecMetrics {
    double tvd;
    double bhattacharyya;
    double capacity;
};

/// Closed forms for a BEC: (1-eps, eps, 1-eps).
BecMetrics bec_metrics(const Bec& c);

} // namespace wiretap
