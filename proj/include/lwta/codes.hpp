#pragma once

// Error-correcting output codes: code matrices, output heads, decoding to
// class probabilities, training targets, and bit-partitioned ensembles.

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lwta/tensor.hpp"

namespace lwta {

enum class OutputHead { Softmax, Logistic, Tanh };

std::string to_string(OutputHead head);
OutputHead parse_head(const std::string& name);

/// C x L matrix of +-1 codewords, row-major.
class CodeMatrix {
public:
    CodeMatrix() = default;
    CodeMatrix(std::size_t classes, std::size_t length, std::vector<double> entries);

    /// 2*I - 1: +1 on the diagonal, -1 elsewhere.
    static CodeMatrix identity(std::size_t classes);
    /// Sylvester construction, first `classes` rows (all rows when 0).
    static CodeMatrix hadamard(std::size_t length, std::size_t classes = 0);

    std::size_t classes() const { return classes_; }
    std::size_t length() const { return length_; }
    double at(std::size_t c, std::size_t l) const { return entries_[c * length_ + l]; }
    std::span<const double> row(std::size_t c) const { return {entries_.data() + c * length_, length_}; }
    const std::vector<double>& entries() const { return entries_; }
    bool is_identity() const;
    Tensor as_tensor() const;  // [C,L]

    void write_csv(std::ostream& os) const;

private:
    std::size_t classes_ = 0;
    std::size_t length_ = 0;
    std::vector<double> entries_;
};

/// Contiguous partition of the L code bits among ensemble members.
struct EnsembleSpec {
    std::vector<std::size_t> bits_per_member;

    static EnsembleSpec single(std::size_t length) { return {{length}}; }
    static EnsembleSpec even(std::size_t members, std::size_t length);
    std::size_t members() const { return bits_per_member.size(); }
    std::size_t total_bits() const;
    std::size_t offset(std::size_t member) const;
    void validate(std::size_t length) const;
};

void check_head_code(OutputHead head, const CodeMatrix& code);

/// Bits activated per head: sigmoid rescaled to [-1,1] or tanh (not softmax).
Tensor activate_bits(const Tensor& bits, OutputHead head);
/// Pre-normalization class scores: the logits themselves for a softmax head,
/// otherwise correlations s_c = <t, row_c> / L.
Tensor class_scores(const Tensor& bits, OutputHead head, const CodeMatrix& code);
/// Class probabilities [B,C]; differentiable in the bits.
Tensor decode(const Tensor& bits, OutputHead head, const CodeMatrix& code);
/// Mean over the batch of -log p(true class), probabilities floored at 1e-12.
Tensor decoded_nll(const Tensor& bits, const std::vector<std::size_t>& labels, OutputHead head,
                   const CodeMatrix& code);

/// Training targets [B,L]: one-hot, {0,1} rows, or +-1 rows.
Tensor encode_labels(const std::vector<std::size_t>& labels, const CodeMatrix& code, OutputHead head);
/// Per-head training loss, averaged over the batch: cross-entropy for softmax
/// and logistic heads, squared error for tanh.
Tensor head_loss(const Tensor& bits, const std::vector<std::size_t>& labels, OutputHead head,
                 const CodeMatrix& code);

/// Concatenates member outputs in bit-group order.
Tensor ensemble_forward(const std::vector<Tensor>& member_bits, const EnsembleSpec& spec);

}  // namespace lwta
