#pragma once

// Layer kinds of a stochastic LWTA network.
//
// Dense LWTA: W[J,K,U], inclusion logits over (j,k), sticks per block k.
//   h[b,k,u] = sum_j W[j,k,u] z[j,k] x[b,j];  y[b,k,u] = xi[b,k,u] h[b,k,u]
// Conv LWTA: kernels W[h,l,C,K*U] (block k owns channels kU..kU+U-1), one
//   inclusion variable and one stick per kernel; the winner of a block is
//   shared by every spatial position.
// IBP output: W[J,C] masked by z[J,C], raw code-bit activations.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lwta/rng.hpp"
#include "lwta/tensor.hpp"

namespace lwta {

enum class Phase {
    TrainRelaxed,  // Concrete relaxations of xi and z
    EvalSample,    // hard posterior samples
};

/// How a forward pass treats the latent variables. The three usual modes
/// TrainRelaxed / EvalSample / DeterministicMax are the named factories; the
/// deterministic competition keeps a phase because z may still be sampled.
struct LayerMode {
    Phase phase = Phase::EvalSample;
    bool deterministic_max = false;
    bool ibp_enabled = true;
    double temperature = 0.67;

    static LayerMode train_relaxed(bool ibp = true) { return {Phase::TrainRelaxed, false, ibp}; }
    static LayerMode eval_sample(bool ibp = true) { return {Phase::EvalSample, false, ibp}; }
    static LayerMode deterministic(Phase phase = Phase::EvalSample, bool ibp = false) {
        return {phase, true, ibp};
    }
};

/// Named trainable tensor. Copies are deep, so copying a layer yields
/// independent parameters.
struct Parameter {
    std::string name;
    Tensor value;

    Parameter(std::string n, Tensor v) : name(std::move(n)), value(std::move(v)) {}
    Parameter(const Parameter& other) : name(other.name), value(other.value.clone()) {}
    Parameter& operator=(const Parameter& other) {
        name = other.name;
        value = other.value.clone();
        return *this;
    }
    Parameter(Parameter&&) = default;
    Parameter& operator=(Parameter&&) = default;
};

/// Per-pass scratch: where layers report winner probabilities.
struct ForwardContext {
    LayerMode mode;
    RngStream* rng = nullptr;
    /// When false, parameters enter the graph as constants (input-gradient
    /// attacks never touch parameter gradients).
    bool track_params = true;
    std::vector<Tensor>* winner_probs = nullptr;  // one [B,K,U] entry per LWTA layer
};

struct LayerKl {
    Tensor z;  // scalar or undefined
    Tensor u;  // scalar or undefined
};

class Layer {
public:
    virtual ~Layer() = default;
    virtual std::string kind() const = 0;
    virtual Tensor forward(const Tensor& x, ForwardContext& ctx) const = 0;
    virtual std::vector<Parameter*> parameters() = 0;
    virtual std::unique_ptr<Layer> clone() const = 0;
    virtual bool is_lwta() const { return false; }
    virtual bool has_ibp() const { return false; }
    /// kl_u and kl_z under one Kumaraswamy draw of the sticks.
    virtual LayerKl kl(RngStream&, double /*alpha*/) const { return {}; }
    /// Posterior inclusion probabilities (empty when the layer has none).
    virtual std::vector<double> inclusion_probs() const { return {}; }

    std::vector<const Parameter*> parameters_view() const;
    std::size_t param_count() const;
};

/// Variational state shared by every IBP-masked layer.
struct IbpState {
    Parameter z_logits;  // any shape; the stick index is the last axis
    Parameter log_a;     // [sticks]
    Parameter log_b;     // [sticks]

    IbpState(const std::string& prefix, Shape z_shape, std::size_t sticks, double a_init);
    Tensor inclusion() const;
    /// z sample for one forward pass (relaxed or hard per phase).
    Tensor sample_z(const LayerMode& mode, RngStream& rng, bool track) const;
    LayerKl kl(RngStream& rng, double alpha) const;
};

class DenseLwtaLayer final : public Layer {
public:
    DenseLwtaLayer(std::size_t in, std::size_t blocks, std::size_t units, bool bias, RngStream& init,
                   bool ibp = true);

    std::string kind() const override { return "dense_lwta"; }
    Tensor forward(const Tensor& x, ForwardContext& ctx) const override;
    std::vector<Parameter*> parameters() override;
    std::unique_ptr<Layer> clone() const override { return std::make_unique<DenseLwtaLayer>(*this); }
    bool is_lwta() const override { return true; }
    bool has_ibp() const override { return ibp_.has_value(); }
    LayerKl kl(RngStream& rng, double alpha) const override { return ibp_ ? ibp_->kl(rng, alpha) : LayerKl{}; }
    std::vector<double> inclusion_probs() const override;

    std::size_t in() const { return in_; }
    std::size_t blocks() const { return blocks_; }
    std::size_t units() const { return units_; }
    Tensor& weight() { return weight_.value; }                 // [J,K,U]
    Tensor& z_logits() { return ibp_->z_logits.value; }         // [J,K]
    Tensor& log_a() { return ibp_->log_a.value; }
    Tensor& log_b() { return ibp_->log_b.value; }
    std::optional<Parameter>& bias() { return bias_; }

private:
    std::size_t in_, blocks_, units_;
    Parameter weight_;
    std::optional<Parameter> bias_;
    std::optional<IbpState> ibp_;
};

class ConvLwtaLayer final : public Layer {
public:
    ConvLwtaLayer(std::size_t channels, std::size_t kernel, std::size_t blocks, std::size_t units,
                  std::size_t stride, Padding padding, bool bias, RngStream& init, bool ibp = true);

    std::string kind() const override { return "conv_lwta"; }
    Tensor forward(const Tensor& x, ForwardContext& ctx) const override;
    std::vector<Parameter*> parameters() override;
    std::unique_ptr<Layer> clone() const override { return std::make_unique<ConvLwtaLayer>(*this); }
    bool is_lwta() const override { return true; }
    bool has_ibp() const override { return ibp_.has_value(); }
    LayerKl kl(RngStream& rng, double alpha) const override { return ibp_ ? ibp_->kl(rng, alpha) : LayerKl{}; }
    std::vector<double> inclusion_probs() const override;

    std::size_t blocks() const { return blocks_; }
    std::size_t units() const { return units_; }
    Tensor& weight() { return weight_.value; }          // [h,l,C,K*U]
    Tensor& z_logits() { return ibp_->z_logits.value; }  // [K]

private:
    std::size_t channels_, kernel_, blocks_, units_, stride_;
    Padding padding_;
    Parameter weight_;
    std::optional<Parameter> bias_;
    std::optional<IbpState> ibp_;
};

class IbpDenseOutput final : public Layer {
public:
    IbpDenseOutput(std::size_t in, std::size_t out, bool bias, RngStream& init, bool ibp = true);

    std::string kind() const override { return "ibp_output"; }
    Tensor forward(const Tensor& x, ForwardContext& ctx) const override;
    std::vector<Parameter*> parameters() override;
    std::unique_ptr<Layer> clone() const override { return std::make_unique<IbpDenseOutput>(*this); }
    bool has_ibp() const override { return ibp_.has_value(); }
    LayerKl kl(RngStream& rng, double alpha) const override { return ibp_ ? ibp_->kl(rng, alpha) : LayerKl{}; }
    std::vector<double> inclusion_probs() const override;

    Tensor& weight() { return weight_.value; }          // [J,C]
    Tensor& z_logits() { return ibp_->z_logits.value; }  // [J,C]
    std::optional<Parameter>& bias() { return bias_; }

private:
    std::size_t in_, out_;
    Parameter weight_;
    std::optional<Parameter> bias_;
    std::optional<IbpState> ibp_;
};

/// Baseline: affine map followed by ReLU.
class DenseReluLayer final : public Layer {
public:
    DenseReluLayer(std::size_t in, std::size_t out, RngStream& init);
    std::string kind() const override { return "dense_relu"; }
    Tensor forward(const Tensor& x, ForwardContext& ctx) const override;
    std::vector<Parameter*> parameters() override { return {&weight_, &bias_}; }
    std::unique_ptr<Layer> clone() const override;

private:
    std::size_t in_, out_;
    Parameter weight_, bias_;
};

class ConvReluLayer final : public Layer {
public:
    ConvReluLayer(std::size_t channels, std::size_t kernel, std::size_t out, std::size_t stride,
                  Padding padding, RngStream& init);
    std::string kind() const override { return "conv_relu"; }
    Tensor forward(const Tensor& x, ForwardContext& ctx) const override;
    std::vector<Parameter*> parameters() override { return {&weight_, &bias_}; }
    std::unique_ptr<Layer> clone() const override;

private:
    std::size_t channels_, kernel_, out_, stride_;
    Padding padding_;
    Parameter weight_, bias_;
};

class MaxPoolLayer final : public Layer {
public:
    MaxPoolLayer(std::size_t window, std::size_t stride) : window_(window), stride_(stride) {}
    std::string kind() const override { return "max_pool"; }
    Tensor forward(const Tensor& x, ForwardContext&) const override { return max_pool2d(x, window_, stride_); }
    std::vector<Parameter*> parameters() override { return {}; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<MaxPoolLayer>(*this); }

private:
    std::size_t window_, stride_;
};

class FlattenLayer final : public Layer {
public:
    std::string kind() const override { return "flatten"; }
    Tensor forward(const Tensor& x, ForwardContext&) const override;
    std::vector<Parameter*> parameters() override { return {}; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<FlattenLayer>(*this); }
};

/// Sum over LWTA blocks of KL(winner probs || uniform), averaged over the batch.
Tensor kl_winners(const std::vector<Tensor>& winner_probs);

}  // namespace lwta
