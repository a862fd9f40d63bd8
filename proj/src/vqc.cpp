#include "bornuq/vqc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bornuq/textio.hpp"

namespace bornuq::vqc {

void AnsatzSpec::validate() const {
    if (n_qubits < 1 || n_qubits > qsim::max_qubits)
        throw std::invalid_argument("AnsatzSpec: n_qubits out of range");
    if (n_layers < 1)
        throw std::invalid_argument("AnsatzSpec: n_layers must be >= 1");
}

void VqcModel::validate() const {
    spec.validate();
    if (static_cast<int>(theta.size()) != spec.parameter_count())
        throw std::invalid_argument("VqcModel: theta length " + std::to_string(theta.size()) +
                                    " does not match parameter count " +
                                    std::to_string(spec.parameter_count()));
    for (int q : readout.qubits)
        if (q < 0 || q >= spec.n_qubits)
            throw std::invalid_argument("VqcModel: readout qubit out of range");
    if (!std::isfinite(encoding_scale))
        throw std::invalid_argument("VqcModel: encoding_scale must be finite");
}

std::vector<int> VqcModel::readout_qubits() const {
    if (!readout.qubits.empty())
        return readout.qubits;
    std::vector<int> all(spec.n_qubits);
    for (int q = 0; q < spec.n_qubits; ++q)
        all[q] = q;
    return all;
}

VqcModel random_model(const AnsatzSpec& spec, rng::Stream& rng, double init_range,
                      double encoding_scale) {
    spec.validate();
    VqcModel m;
    m.spec = spec;
    m.encoding_scale = encoding_scale;
    m.theta.resize(spec.parameter_count());
    for (double& t : m.theta)
        t = rng.uniform(-init_range, init_range);
    return m;
}

std::vector<qsim::Gate> encode(const AnsatzSpec& spec, double encoding_scale,
                               std::span<const double> x) {
    if (x.empty())
        throw std::invalid_argument("encode: empty input vector");
    for (double v : x)
        if (!std::isfinite(v))
            throw std::invalid_argument("encode: non-finite input component");
    std::vector<qsim::Gate> gates;
    gates.reserve(spec.n_qubits);
    for (int q = 0; q < spec.n_qubits; ++q)
        gates.push_back(qsim::Gate::ry(q, encoding_scale * x[q % x.size()]));
    return gates;
}

qsim::StateVector encode_state(const VqcModel& model, std::span<const double> x) {
    qsim::StateVector state(model.spec.n_qubits);
    const auto gates = encode(model.spec, model.encoding_scale, x);
    qsim::apply_circuit(state, gates);
    return state;
}

void apply_ansatz(const AnsatzSpec& spec, std::span<const double> theta,
                  const qsim::StateVector& encoded, qsim::StateVector& work) {
    work = encoded;
    const int n = spec.n_qubits;
    for (int layer = 0; layer < spec.n_layers; ++layer) {
        for (int q = 0; q < n; ++q) {
            const std::size_t base = (static_cast<std::size_t>(layer) * n + q) * 2;
            qsim::apply_gate(work, qsim::Gate::ry(q, theta[base]));
            qsim::apply_gate(work, qsim::Gate::rz(q, theta[base + 1]));
        }
        for (int q = 0; q + 1 < n; ++q)
            qsim::apply_gate(work, qsim::Gate::cnot(q, q + 1));
    }
}

double readout_value(const VqcModel& model, const qsim::StateVector& prepared) {
    const auto qubits = model.readout_qubits();
    double sum = 0.0;
    for (int q : qubits)
        sum += qsim::expectation_z(prepared, q);
    const double mean_z = sum / static_cast<double>(qubits.size());
    return model.readout.scale * mean_z + model.readout.offset;
}

Prediction predict_exact(const VqcModel& model, std::span<const double> x) {
    model.validate();
    const qsim::StateVector encoded = encode_state(model, x);
    qsim::StateVector work(model.spec.n_qubits);
    apply_ansatz(model.spec, model.theta, encoded, work);
    return Prediction{readout_value(model, work), 0.0, std::nullopt};
}

Prediction predict_shots(const VqcModel& model, std::span<const double> x, long n_shots,
                         rng::Stream& rng) {
    model.validate();
    if (n_shots < 1)
        throw std::invalid_argument("predict_shots: n_shots must be >= 1");
    const qsim::StateVector encoded = encode_state(model, x);
    qsim::StateVector work(model.spec.n_qubits);
    apply_ansatz(model.spec, model.theta, encoded, work);

    const auto qubits = model.readout_qubits();
    double sum = 0.0;
    for (int q : qubits)
        sum += qsim::shot_mean(qsim::sample_shots(work, q, n_shots, rng));
    const double mean_z = sum / static_cast<double>(qubits.size());
    const double mean = model.readout.scale * mean_z + model.readout.offset;
    const double clamped = std::clamp(mean, -1.0, 1.0);
    return Prediction{mean, qsim::born_variance(clamped, n_shots), n_shots};
}

std::vector<double> prediction_grad(const VqcModel& model, std::span<const double> x) {
    model.validate();
    const qsim::StateVector encoded = encode_state(model, x);
    qsim::StateVector work(model.spec.n_qubits);

    std::vector<double> shifted(model.theta.begin(), model.theta.end());
    std::vector<double> grad(model.theta.size());
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        const double original = shifted[k];
        shifted[k] = original + M_PI_2;
        apply_ansatz(model.spec, shifted, encoded, work);
        const double plus = readout_value(model, work);
        shifted[k] = original - M_PI_2;
        apply_ansatz(model.spec, shifted, encoded, work);
        const double minus = readout_value(model, work);
        shifted[k] = original;
        grad[k] = 0.5 * (plus - minus);
    }
    return grad;
}

std::vector<double> parameter_shift_grad(const VqcModel& model, std::span<const double> x,
                                         const std::function<double(double)>& dloss_dmean) {
    const double y = predict_exact(model, x).mean;
    const double chain = dloss_dmean(y);
    std::vector<double> grad = prediction_grad(model, x);
    for (double& g : grad)
        g *= chain;
    return grad;
}

std::string model_to_text(const VqcModel& model) {
    using textio::format_double;
    model.validate();
    std::ostringstream out;
    out << "format = bornuq-vqc/1\n";
    out << "n_qubits = " << model.spec.n_qubits << '\n';
    out << "n_layers = " << model.spec.n_layers << '\n';
    out << "entangler = cnot_chain\n";
    out << "encoding_scale = " << format_double(model.encoding_scale) << '\n';
    out << "readout_scale = " << format_double(model.readout.scale) << '\n';
    out << "readout_offset = " << format_double(model.readout.offset) << '\n';
    out << "readout_qubits =";
    if (model.readout.qubits.empty()) {
        out << " all";
    } else {
        for (int q : model.readout.qubits)
            out << ' ' << q;
    }
    out << '\n';
    out << "theta =";
    for (double t : model.theta)
        out << ' ' << format_double(t);
    out << '\n';
    return out.str();
}

VqcModel model_from_text(std::string_view text) {
    const auto kv = textio::KvFile::parse(text);
    if (kv.require("format") != "bornuq-vqc/1")
        throw std::invalid_argument("model_from_text: unknown format tag");
    VqcModel m;
    m.spec.n_qubits = static_cast<int>(textio::parse_long(kv.require("n_qubits")));
    m.spec.n_layers = static_cast<int>(textio::parse_long(kv.require("n_layers")));
    if (kv.require("entangler") != "cnot_chain")
        throw std::invalid_argument("model_from_text: unknown entangler");
    m.encoding_scale = textio::parse_double(kv.require("encoding_scale"));
    m.readout.scale = textio::parse_double(kv.require("readout_scale"));
    m.readout.offset = textio::parse_double(kv.require("readout_offset"));
    const std::string qubits = kv.require("readout_qubits");
    if (textio::trim(qubits) != "all")
        for (long q : textio::parse_long_list(qubits, ' '))
            m.readout.qubits.push_back(static_cast<int>(q));
    m.theta = textio::parse_double_list(kv.require("theta"), ' ');
    m.validate();
    return m;
}

void save_model(const VqcModel& model, const std::string& path) {
    textio::write_file(path, model_to_text(model));
}

VqcModel load_model(const std::string& path) {
    return model_from_text(textio::read_file(path));
}

} // namespace bornuq::vqc
