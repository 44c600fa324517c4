#pragma once

// Classifier assembled from a declarative spec: a stack of hidden layers per
// ensemble member, an output layer emitting code bits, and the ablation mode
// that decides how competition and inclusion variables behave.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lwta/codes.hpp"
#include "lwta/layers.hpp"

namespace lwta {

enum class Ablation {
    Baseline,    // ReLU units, no latent variables
    LwtaMax,     // deterministic winner, no IBP
    LwtaMaxIbp,  // deterministic winner, sampled inclusion
    Lwta,        // stochastic winner, no IBP
    LwtaIbp,     // stochastic winner, sampled inclusion
};

std::string to_string(Ablation a);
Ablation parse_ablation(const std::string& name);
bool uses_ibp(Ablation a);
bool stochastic_winners(Ablation a);

struct LayerSpec {
    std::string kind;  // dense_lwta | conv_lwta | max_pool | flatten
    std::size_t blocks = 0;
    std::size_t units = 0;
    std::size_t kernel = 3;
    std::size_t stride = 1;
    std::size_t window = 2;
    Padding padding = Padding::Same;
    bool bias = false;
};

struct ModelSpec {
    std::vector<std::size_t> input_shape{28, 28, 1};  // H, W, C
    std::vector<LayerSpec> layers;
    std::size_t classes = 10;
    std::string code = "identity";  // identity | hadamard
    std::size_t code_length = 10;
    OutputHead head = OutputHead::Softmax;
    std::size_t members = 1;
    Ablation ablation = Ablation::LwtaIbp;
    bool output_bias = false;

    CodeMatrix code_matrix() const;
    EnsembleSpec ensemble() const;
    /// Throws DomainError describing the first inconsistency.
    void validate() const;
};

struct ForwardOptions {
    Phase phase = Phase::EvalSample;
    double temperature = 0.67;
    bool track_params = true;
    bool collect_winners = false;
};

struct ForwardResult {
    Tensor bits;                       // [B,L]
    std::vector<Tensor> winner_probs;  // [B,K,U] per LWTA layer, when collected
};

struct KlTerms {
    Tensor z = Tensor::scalar(0.0);
    Tensor u = Tensor::scalar(0.0);
};

class Classifier {
public:
    Classifier(ModelSpec spec, std::uint64_t init_seed);
    Classifier(const Classifier& other);
    Classifier& operator=(const Classifier& other);
    Classifier(Classifier&&) noexcept = default;
    Classifier& operator=(Classifier&&) noexcept = default;

    const ModelSpec& spec() const { return spec_; }
    const CodeMatrix& code() const { return code_; }
    OutputHead head() const { return spec_.head; }
    LayerMode mode(Phase phase, double temperature = 0.67) const;

    ForwardResult forward(const Tensor& x, const ForwardOptions& opt, RngStream& rng) const;
    /// Eval-mode code bits with parameters held constant.
    Tensor bits(const Tensor& x, RngStream& rng, Phase phase = Phase::EvalSample) const;

    KlTerms kl(RngStream& rng, double alpha) const;

    std::vector<Parameter*> parameters();
    std::vector<const Parameter*> parameters() const;
    /// Parameters keyed "m<member>.l<layer>.<name>", stable across runs.
    std::vector<std::pair<std::string, Parameter*>> named_parameters();
    std::size_t param_count() const;

    std::size_t members() const { return members_.size(); }
    const std::vector<std::unique_ptr<Layer>>& member(std::size_t m) const { return members_.at(m); }
    /// Hidden LWTA layers of member 0, in order.
    std::vector<const Layer*> lwta_layers() const;
    /// Every layer carrying IBP state across members (for sparsity reports).
    std::vector<const Layer*> ibp_layers() const;

private:
    ModelSpec spec_;
    CodeMatrix code_;
    EnsembleSpec ensemble_;
    std::vector<std::vector<std::unique_ptr<Layer>>> members_;
};

/// Named output-head presets over the given hidden stack.
ModelSpec preset(const std::string& name, std::vector<LayerSpec> hidden, Ablation ablation);

}  // namespace lwta
