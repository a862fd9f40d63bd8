#include "bornuq/baselines.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bornuq/textio.hpp"

namespace bornuq::baselines {

namespace {

double softplus(double s) {
    return s > 30.0 ? s : std::log1p(std::exp(s));
}

double sigmoid(double s) {
    return s >= 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
}

// softplus(x) = v  =>  x = log(exp(v) - 1)
double softplus_inverse(double v) {
    return std::log(std::expm1(v));
}

} // namespace

std::size_t DenseNet::parameter_count() const {
    std::size_t n = 0;
    for (int l = 0; l < layer_count(); ++l)
        n += weights[l].size() + biases[l].size();
    return n;
}

void DenseNet::validate() const {
    if (widths.size() < 2)
        throw std::invalid_argument("DenseNet: need at least input and output widths");
    for (int w : widths)
        if (w < 1)
            throw std::invalid_argument("DenseNet: widths must be positive");
    if (weights.size() != static_cast<std::size_t>(layer_count()) ||
        biases.size() != weights.size())
        throw std::invalid_argument("DenseNet: layer array sizes do not match widths");
    for (int l = 0; l < layer_count(); ++l) {
        if (weights[l].size() != static_cast<std::size_t>(widths[l + 1]) * widths[l])
            throw std::invalid_argument("DenseNet: weight matrix shape mismatch");
        if (biases[l].size() != static_cast<std::size_t>(widths[l + 1]))
            throw std::invalid_argument("DenseNet: bias vector shape mismatch");
    }
}

DenseNet make_net(const std::vector<int>& widths, rng::Stream& rng) {
    DenseNet net;
    net.widths = widths;
    net.weights.resize(widths.size() - 1);
    net.biases.resize(widths.size() - 1);
    for (int l = 0; l < net.layer_count(); ++l) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(widths[l]));
        net.weights[l].resize(static_cast<std::size_t>(widths[l + 1]) * widths[l]);
        for (double& w : net.weights[l])
            w = scale * rng.normal();
        net.biases[l].assign(widths[l + 1], 0.0);
    }
    net.validate();
    return net;
}

DropoutMasks sample_masks(const DenseNet& net, double dropout_rate, rng::Stream& rng) {
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
        throw std::invalid_argument("sample_masks: dropout_rate must be in [0, 1)");
    DropoutMasks masks;
    if (dropout_rate == 0.0)
        return masks;
    const double keep = 1.0 - dropout_rate;
    masks.resize(net.layer_count() - 1); // hidden layers only
    for (int l = 0; l + 1 < net.layer_count(); ++l) {
        masks[l].resize(net.widths[l + 1]);
        for (double& m : masks[l])
            m = rng.uniform() < keep ? 1.0 / keep : 0.0;
    }
    return masks;
}

namespace {

// forward pass storing pre-activations and (masked) activations
struct ForwardTrace {
    std::vector<std::vector<double>> pre;  // per layer
    std::vector<std::vector<double>> act;  // act[0] is the input
};

void run_forward(const DenseNet& net, std::span<const double> x, const DropoutMasks& masks,
                 ForwardTrace& trace) {
    if (static_cast<int>(x.size()) != net.input_dim())
        throw std::invalid_argument("forward: input dimension mismatch");
    const int layers = net.layer_count();
    trace.pre.resize(layers);
    trace.act.resize(layers + 1);
    trace.act[0].assign(x.begin(), x.end());

    for (int l = 0; l < layers; ++l) {
        const int out_n = net.widths[l + 1];
        const int in_n = net.widths[l];
        const std::vector<double>& a = trace.act[l];
        std::vector<double>& pre = trace.pre[l];
        pre.assign(out_n, 0.0);
        const double* w = net.weights[l].data();
        for (int o = 0; o < out_n; ++o) {
            double s = net.biases[l][o];
            const double* row = w + static_cast<std::size_t>(o) * in_n;
            for (int i = 0; i < in_n; ++i)
                s += row[i] * a[i];
            pre[o] = s;
        }
        std::vector<double>& next = trace.act[l + 1];
        next.resize(out_n);
        if (l + 1 == layers) {
            next = pre; // linear output
        } else {
            for (int o = 0; o < out_n; ++o)
                next[o] = std::tanh(pre[o]);
            if (!masks.empty())
                for (int o = 0; o < out_n; ++o)
                    next[o] *= masks[l][o];
        }
    }
}

} // namespace

std::vector<double> forward(const DenseNet& net, std::span<const double> x) {
    ForwardTrace trace;
    run_forward(net, x, {}, trace);
    return trace.act.back();
}

std::vector<double> forward_masked(const DenseNet& net, std::span<const double> x,
                                   const DropoutMasks& masks) {
    ForwardTrace trace;
    run_forward(net, x, masks, trace);
    return trace.act.back();
}

double backprop(const DenseNet& net, std::span<const double> x, double target, LossKind loss,
                const DropoutMasks& masks, NetGrads& grads) {
    net.validate();
    const int layers = net.layer_count();
    if (loss == LossKind::gaussian_nll && net.output_dim() < 2)
        throw std::invalid_argument("backprop: gaussian_nll needs a two-output head");

    if (grads.weights.size() != static_cast<std::size_t>(layers)) {
        grads.weights.resize(layers);
        grads.biases.resize(layers);
        for (int l = 0; l < layers; ++l) {
            grads.weights[l].assign(net.weights[l].size(), 0.0);
            grads.biases[l].assign(net.biases[l].size(), 0.0);
        }
    }

    ForwardTrace trace;
    run_forward(net, x, masks, trace);
    const std::vector<double>& out = trace.act.back();

    double value = 0.0;
    std::vector<double> delta(net.output_dim(), 0.0);
    if (loss == LossKind::mse) {
        const double err = out[0] - target;
        value = err * err;
        delta[0] = 2.0 * err;
    } else {
        const double mu = out[0];
        const double s = out[1];
        const double var = softplus(s) + variance_floor;
        const double err = target - mu;
        value = 0.5 * (std::log(var) + err * err / var);
        delta[0] = -err / var;
        delta[1] = 0.5 * (1.0 / var - err * err / (var * var)) * sigmoid(s);
    }

    // walk layers backwards; delta holds dloss/dpre of the current layer
    for (int l = layers - 1; l >= 0; --l) {
        const int out_n = net.widths[l + 1];
        const int in_n = net.widths[l];
        const std::vector<double>& a = trace.act[l];
        double* gw = grads.weights[l].data();
        for (int o = 0; o < out_n; ++o) {
            const double d = delta[o];
            grads.biases[l][o] += d;
            double* row = gw + static_cast<std::size_t>(o) * in_n;
            for (int i = 0; i < in_n; ++i)
                row[i] += d * a[i];
        }
        if (l == 0)
            break;
        std::vector<double> prev(in_n, 0.0);
        const double* w = net.weights[l].data();
        for (int o = 0; o < out_n; ++o) {
            const double d = delta[o];
            const double* row = w + static_cast<std::size_t>(o) * in_n;
            for (int i = 0; i < in_n; ++i)
                prev[i] += d * row[i];
        }
        // through the mask and the tanh of layer l-1
        const std::vector<double>& pre = trace.pre[l - 1];
        for (int i = 0; i < in_n; ++i) {
            const double th = std::tanh(pre[i]);
            double g = (1.0 - th * th);
            if (!masks.empty())
                g *= masks[l - 1][i];
            prev[i] *= g;
        }
        delta = std::move(prev);
    }
    return value;
}

DenseNet train_net(DenseNet net, const Dataset& data, const NetTrainConfig& config,
                   rng::Stream& rng) {
    net.validate();
    data.validate();
    if (data.empty())
        throw std::invalid_argument("train_net: empty dataset");
    if (!(config.dropout_rate >= 0.0 && config.dropout_rate < 1.0))
        throw std::invalid_argument("train_net: dropout_rate must be in [0, 1)");

    const int layers = net.layer_count();
    NetGrads grads, velocity;
    grads.weights.resize(layers);
    grads.biases.resize(layers);
    velocity.weights.resize(layers);
    velocity.biases.resize(layers);
    for (int l = 0; l < layers; ++l) {
        grads.weights[l].assign(net.weights[l].size(), 0.0);
        grads.biases[l].assign(net.biases[l].size(), 0.0);
        velocity.weights[l].assign(net.weights[l].size(), 0.0);
        velocity.biases[l].assign(net.biases[l].size(), 0.0);
    }

    const double inv_n = 1.0 / static_cast<double>(data.size());
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        for (int l = 0; l < layers; ++l) {
            std::fill(grads.weights[l].begin(), grads.weights[l].end(), 0.0);
            std::fill(grads.biases[l].begin(), grads.biases[l].end(), 0.0);
        }

        double total = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const DropoutMasks masks = config.dropout_rate > 0.0
                                           ? sample_masks(net, config.dropout_rate, rng)
                                           : DropoutMasks{};
            total += backprop(net, data.inputs[i], data.targets[i], config.loss, masks, grads);
        }
        if (!std::isfinite(total))
            throw NetTrainingError("train_net: non-finite loss", epoch);

        for (int l = 0; l < layers; ++l) {
            for (std::size_t k = 0; k < net.weights[l].size(); ++k) {
                velocity.weights[l][k] = config.momentum * velocity.weights[l][k] -
                                         config.step * grads.weights[l][k] * inv_n;
                net.weights[l][k] += velocity.weights[l][k];
            }
            for (std::size_t k = 0; k < net.biases[l].size(); ++k) {
                velocity.biases[l][k] = config.momentum * velocity.biases[l][k] -
                                        config.step * grads.biases[l][k] * inv_n;
                net.biases[l][k] += velocity.biases[l][k];
            }
        }
    }
    return net;
}

McDropoutResult mc_dropout_predict(const DenseNet& net, std::span<const double> x, int passes,
                                   double dropout_rate, rng::Stream& rng) {
    if (passes < 2)
        throw std::invalid_argument("mc_dropout_predict: need at least 2 passes");
    McDropoutResult result;
    result.samples.reserve(passes);
    for (int t = 0; t < passes; ++t) {
        const DropoutMasks masks =
            dropout_rate > 0.0 ? sample_masks(net, dropout_rate, rng) : DropoutMasks{};
        result.samples.push_back(forward_masked(net, x, masks)[0]);
    }
    double mean = 0.0;
    for (double s : result.samples)
        mean += s;
    mean /= static_cast<double>(passes);
    double ss = 0.0;
    for (double s : result.samples)
        ss += (s - mean) * (s - mean);
    result.mean = mean;
    result.variance = ss / static_cast<double>(passes - 1);
    return result;
}

MeanVar member_predict(const DenseNet& net, std::span<const double> x) {
    if (net.output_dim() < 2)
        throw std::invalid_argument("member_predict: needs a two-output head");
    const std::vector<double> out = forward(net, x);
    return {out[0], softplus(out[1]) + variance_floor};
}

void EnsembleModel::validate() const {
    if (members.size() < 2)
        throw std::invalid_argument("EnsembleModel: need at least 2 members");
    for (const DenseNet& net : members) {
        net.validate();
        if (net.output_dim() != 2)
            throw std::invalid_argument("EnsembleModel: members need two-output heads");
    }
}

EnsembleModel train_ensemble(int members, const std::vector<int>& hidden_widths, int input_dim,
                             const Dataset& data, const NetTrainConfig& config,
                             rng::Stream& rng) {
    if (members < 2)
        throw std::invalid_argument("train_ensemble: need at least 2 members");
    std::vector<int> widths;
    widths.push_back(input_dim);
    widths.insert(widths.end(), hidden_widths.begin(), hidden_widths.end());
    widths.push_back(2);

    NetTrainConfig member_config = config;
    member_config.loss = LossKind::gaussian_nll;
    member_config.dropout_rate = 0.0;

    EnsembleModel ensemble;
    for (int m = 0; m < members; ++m) {
        rng::Stream member_rng = rng.split(static_cast<std::uint64_t>(m));
        DenseNet net = make_net(widths, member_rng);
        // start the variance head around 0.25 so early NLL steps stay tame
        net.biases.back()[1] = softplus_inverse(0.25);
        ensemble.members.push_back(train_net(std::move(net), data, member_config, member_rng));
    }
    ensemble.validate();
    return ensemble;
}

MeanVar ensemble_predict(const EnsembleModel& ensemble, std::span<const double> x) {
    ensemble.validate();
    const double m_count = static_cast<double>(ensemble.members.size());
    double mean = 0.0;
    double second = 0.0;
    for (const DenseNet& net : ensemble.members) {
        const MeanVar mv = member_predict(net, x);
        mean += mv.mean;
        second += mv.variance + mv.mean * mv.mean;
    }
    mean /= m_count;
    second /= m_count;
    return {mean, second - mean * mean};
}

std::string net_to_text(const DenseNet& net) {
    using textio::format_double;
    net.validate();
    std::ostringstream out;
    out << "format = bornuq-dense/1\n";
    out << "widths =";
    for (int w : net.widths)
        out << ' ' << w;
    out << "\nactivation = tanh\n";
    for (int l = 0; l < net.layer_count(); ++l) {
        out << 'w' << l << " =";
        for (double v : net.weights[l])
            out << ' ' << format_double(v);
        out << '\n' << 'b' << l << " =";
        for (double v : net.biases[l])
            out << ' ' << format_double(v);
        out << '\n';
    }
    return out.str();
}

DenseNet net_from_text(std::string_view text) {
    const auto kv = textio::KvFile::parse(text);
    if (kv.require("format") != "bornuq-dense/1")
        throw std::invalid_argument("net_from_text: unknown format tag");
    if (kv.require("activation") != "tanh")
        throw std::invalid_argument("net_from_text: unknown activation");
    DenseNet net;
    for (long w : textio::parse_long_list(kv.require("widths"), ' '))
        net.widths.push_back(static_cast<int>(w));
    for (int l = 0; l + 1 < static_cast<int>(net.widths.size()); ++l) {
        net.weights.push_back(
            textio::parse_double_list(kv.require("w" + std::to_string(l)), ' '));
        net.biases.push_back(textio::parse_double_list(kv.require("b" + std::to_string(l)), ' '));
    }
    net.validate();
    return net;
}

std::string ensemble_to_text(const EnsembleModel& ensemble) {
    ensemble.validate();
    std::ostringstream out;
    out << "format = bornuq-ensemble/1\n";
    out << "members = " << ensemble.members.size() << '\n';
    for (std::size_t m = 0; m < ensemble.members.size(); ++m) {
        std::istringstream member(net_to_text(ensemble.members[m]));
        std::string line;
        while (std::getline(member, line))
            out << 'm' << m << '.' << line << '\n';
    }
    return out.str();
}

EnsembleModel ensemble_from_text(std::string_view text) {
    const auto kv = textio::KvFile::parse(text);
    if (kv.require("format") != "bornuq-ensemble/1")
        throw std::invalid_argument("ensemble_from_text: unknown format tag");
    const long members = textio::parse_long(kv.require("members"));
    EnsembleModel ensemble;
    for (long m = 0; m < members; ++m) {
        const std::string prefix = "m" + std::to_string(m) + ".";
        std::ostringstream member;
        for (const auto& [k, v] : kv.entries)
            if (k.rfind(prefix, 0) == 0)
                member << k.substr(prefix.size()) << " = " << v << '\n';
        ensemble.members.push_back(net_from_text(member.str()));
    }
    ensemble.validate();
    return ensemble;
}

} // namespace bornuq::baselines
