#ifndef BORNUQ_DATASET_HPP
#define BORNUQ_DATASET_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bornuq {

// Labeled regression data in model input space (components in [-1, 1]).
struct Dataset {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;

    std::size_t size() const { return inputs.size(); }
    bool empty() const { return inputs.empty(); }

    void add(std::vector<double> x, double y) {
        inputs.push_back(std::move(x));
        targets.push_back(y);
    }

    void validate() const {
        if (inputs.size() != targets.size())
            throw std::invalid_argument("Dataset: inputs/targets length mismatch");
    }
};

} // namespace bornuq

#endif
