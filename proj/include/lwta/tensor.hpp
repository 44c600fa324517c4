#pragma once

// Dense row-major tensors of doubles with reverse-mode differentiation.
//
// Every primitive creates a result node holding references to its operands
// and a closure that pushes the result gradient back onto them. Nodes that do
// not depend on any requires_grad leaf are never linked into the graph.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lwta {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& shape);
std::string shape_str(const Shape& shape);

namespace detail {

struct Node {
    Shape shape;
    std::shared_ptr<std::vector<double>> data;
    std::vector<double> grad;  // empty until a backward pass reaches the node
    bool requires_grad = false;
    bool is_leaf = true;
    const char* op = "leaf";
    std::vector<std::shared_ptr<Node>> inputs;
    std::function<void(Node&)> backward;
};

}  // namespace detail

class Tensor {
public:
    Tensor() = default;

    static Tensor zeros(Shape shape, bool requires_grad = false);
    static Tensor full(Shape shape, double value, bool requires_grad = false);
    static Tensor from(Shape shape, std::vector<double> values, bool requires_grad = false);
    static Tensor scalar(double value);

    bool defined() const { return node_ != nullptr; }
    const Shape& shape() const;
    std::size_t dim(std::size_t axis) const;
    std::size_t rank() const { return shape().size(); }
    std::size_t numel() const;

    std::span<const double> values() const;
    // In-place access for parameter updates and test fixtures. Mutating a
    // tensor that already participates in a recorded graph is undefined.
    std::span<double> mutable_values();
    double item() const;
    double operator[](std::size_t i) const { return values()[i]; }

    bool requires_grad() const;
    void set_requires_grad(bool flag);
    bool has_grad() const;
    std::span<const double> grad() const;
    void zero_grad();

    /// Constant view sharing storage; gradients do not flow through it.
    Tensor detach() const;
    /// Deep copy of values as a fresh leaf.
    Tensor clone() const;

    const char* op_name() const;

    // internal
    explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}
    const std::shared_ptr<detail::Node>& node() const { return node_; }

private:
    std::shared_ptr<detail::Node> node_;
};

/// Reverse topological record of the graph behind a scalar result.
class Tape {
public:
    explicit Tape(const Tensor& result);

    /// Sets grad = d(result)/d(node) on every requires_grad node of the graph.
    /// Gradients are overwritten, not accumulated, so replays are idempotent.
    void backward() const;
    std::size_t size() const { return order_.size(); }

private:
    std::shared_ptr<detail::Node> root_;
    std::vector<std::shared_ptr<detail::Node>> order_;  // inputs before consumers
};

/// Convenience for Tape(result).backward(). Throws ShapeError for non-scalars.
void backward(const Tensor& result);

// ---------------------------------------------------------------- primitives

enum class Padding { Valid, Same };

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);
Tensor neg(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
Tensor pow(const Tensor& a, double exponent);
Tensor pow(const Tensor& a, const Tensor& exponent);
Tensor sigmoid(const Tensor& a);
Tensor tanh(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor clamp(const Tensor& a, double lo, double hi);
Tensor digamma(const Tensor& a);

Tensor matmul(const Tensor& a, const Tensor& b);
/// Input [B,H,W,C], kernel [kh,kw,C,O]; result [B,H',W',O].
Tensor conv2d(const Tensor& input, const Tensor& kernel, std::size_t stride, Padding padding);
/// Patch gather used by conv2d: [B,H,W,C] -> [B*H'*W', kh*kw*C].
Tensor im2col(const Tensor& input, std::size_t kh, std::size_t kw, std::size_t stride,
              Padding padding);
Tensor max_pool2d(const Tensor& input, std::size_t window, std::size_t stride);

Tensor reshape(const Tensor& a, Shape shape);
Tensor transpose(const Tensor& a);
Tensor permute(const Tensor& a, const std::vector<std::size_t>& axes);
Tensor concat(const std::vector<Tensor>& parts, std::size_t axis);
Tensor sum(const Tensor& a, std::size_t axis, bool keepdim = false);
Tensor sum(const Tensor& a);
Tensor mean(const Tensor& a, std::size_t axis, bool keepdim = false);
Tensor mean(const Tensor& a);
Tensor index_select(const Tensor& a, std::size_t axis, const std::vector<std::size_t>& index);
Tensor broadcast_to(const Tensor& a, const Shape& shape);
Tensor softmax(const Tensor& a, std::size_t axis);
Tensor logsumexp(const Tensor& a, std::size_t axis, bool keepdim = false);
Tensor log_softmax(const Tensor& a, std::size_t axis);

Shape broadcast_shape(const Shape& a, const Shape& b, const char* op);
std::size_t conv_output_size(std::size_t in, std::size_t k, std::size_t stride, Padding padding);

inline Tensor operator+(const Tensor& a, const Tensor& b) { return add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return sub(a, b); }
inline Tensor operator*(const Tensor& a, const Tensor& b) { return mul(a, b); }
inline Tensor operator/(const Tensor& a, const Tensor& b) { return div(a, b); }
inline Tensor operator-(const Tensor& a) { return neg(a); }
inline Tensor operator+(const Tensor& a, double b) { return add(a, Tensor::scalar(b)); }
inline Tensor operator-(const Tensor& a, double b) { return sub(a, Tensor::scalar(b)); }
inline Tensor operator*(const Tensor& a, double b) { return mul(a, Tensor::scalar(b)); }
inline Tensor operator/(const Tensor& a, double b) { return div(a, Tensor::scalar(b)); }
inline Tensor operator+(double a, const Tensor& b) { return add(Tensor::scalar(a), b); }
inline Tensor operator-(double a, const Tensor& b) { return sub(Tensor::scalar(a), b); }
inline Tensor operator*(double a, const Tensor& b) { return mul(Tensor::scalar(a), b); }
inline Tensor operator/(double a, const Tensor& b) { return div(Tensor::scalar(a), b); }

// ------------------------------------------------------------ gradient check

/// Largest |analytic - central| / (|analytic| + |central| + 1e-12) over the
/// coordinates of x. `f` must be a deterministic scalar function of x.
double grad_check(const std::function<Tensor(const Tensor&)>& f, const Tensor& x,
                  double step = 1e-5);

}  // namespace lwta
