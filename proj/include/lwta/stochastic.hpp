#pragma once

// Reparameterized samplers and closed-form KL terms for the three latent
// families of a stochastic LWTA network: winner indicators (Categorical,
// relaxed with Gumbel-Softmax), inclusion variables (Bernoulli, relaxed with
// the binary Concrete), and IBP stick variables (Kumaraswamy surrogate for
// the Beta(alpha, 1) prior).
//
// Each sampler has a scalar form and a differentiable Tensor form that takes
// pre-drawn noise, so noise can be frozen for gradient checks.

#include <span>
#include <vector>

#include "lwta/rng.hpp"
#include "lwta/tensor.hpp"

namespace lwta {

inline constexpr double kProbFloor = 1e-6;

double clamp_prob(double p);

// ------------------------------------------------------------------ scalars

double gumbel_from_uniform(double v);
std::vector<double> gumbel_softmax(std::span<const double> logits, double temperature,
                                   std::span<const double> gumbel_noise);
std::vector<double> sample_gumbel_softmax(std::span<const double> logits, double temperature,
                                          RngStream& rng);

double bin_concrete(double logit, double temperature, double v);
double sample_bin_concrete(double logit, double temperature, RngStream& rng);

double kumaraswamy_from_uniform(double a, double b, double v);
double sample_kumaraswamy(double a, double b, RngStream& rng);
/// E[u] = b * B(1 + 1/a, b).
double kumaraswamy_mean(double a, double b);

std::vector<double> stick_products(std::span<const double> u);

double kl_categorical_uniform(std::span<const double> probs);
double kl_bernoulli(double q, double p);
double kl_kumaraswamy_beta(double a, double b, double alpha);

/// Exact inverse-CDF categorical draw, returned one-hot.
std::vector<double> sample_discrete_hard(std::span<const double> probs, RngStream& rng);

// ------------------------------------------------------------------ tensors

/// Gumbel(0,1) noise of the given shape.
Tensor gumbel_noise(const Shape& shape, RngStream& rng);
/// log v - log(1 - v) with v uniform.
Tensor logistic_noise(const Shape& shape, RngStream& rng);
Tensor uniform_noise(const Shape& shape, RngStream& rng);

/// softmax((logits + noise) / temperature) over the last axis.
Tensor gumbel_softmax(const Tensor& logits, double temperature, const Tensor& noise);
/// sigmoid((logits + noise) / temperature), elementwise.
Tensor bin_concrete(const Tensor& logits, double temperature, const Tensor& noise);
/// (1 - (1 - v)^(1/b))^(1/a), differentiable in a and b.
Tensor kumaraswamy(const Tensor& a, const Tensor& b, const Tensor& uniforms);
/// Cumulative product along a 1-D tensor.
Tensor stick_products(const Tensor& u);

/// Sum over every block (last axis = units) of KL(probs || uniform).
Tensor kl_categorical_uniform(const Tensor& probs);
/// Sum over elements of KL(Bernoulli(q) || Bernoulli(p)), p broadcast to q.
Tensor kl_bernoulli(const Tensor& q, const Tensor& p);
/// Sum over sticks of KL(Kumaraswamy(a, b) || Beta(alpha, 1)).
Tensor kl_kumaraswamy_beta(const Tensor& a, const Tensor& b, double alpha);

/// Hard one-hot samples along the last axis (no gradient).
Tensor sample_categorical(const Tensor& probs, RngStream& rng);
/// One-hot argmax along the last axis, lowest index on ties (no gradient).
Tensor argmax_one_hot(const Tensor& scores);
/// Hard Bernoulli draws (no gradient).
Tensor sample_bernoulli(const Tensor& probs, RngStream& rng);

}  // namespace lwta
