#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "topicid/kernels.hpp"
#include "topicid/tensor.hpp"

namespace topicid::ad {

struct Node;
using Var = std::shared_ptr<Node>;

// One tape node. The graph is dynamic: ops allocate nodes that hold the
// forward value and a closure propagating the node's gradient into its
// inputs. A graph is single-threaded; distinct graphs may live on distinct
// threads. Leaves (parameters) outlive the graphs built on top of them and
// accumulate gradients across backward calls until explicitly zeroed.
struct Node {
  Tensor value;
  Tensor grad;
  bool requires_grad = false;
  std::vector<Var> inputs;
  std::function<void(Node&)> backprop;

  Tensor& ensure_grad() {
    if (grad.empty()) grad = Tensor::zeros(value.shape());
    return grad;
  }
  bool has_grad() const { return !grad.empty(); }
  void zero_grad() { grad = Tensor(); }
};

Var constant(Tensor value);
Var leaf(Tensor value, bool requires_grad = true);

// Reverse pass from a scalar root; seeds d(root)/d(root) = 1 and accumulates
// into every reachable node with requires_grad set.
void backward(const Var& root);

// While a guard is alive on this thread, ops produce constants: no closures,
// no graph growth. Used for inference and metric evaluation.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;
};
bool grad_enabled();

// Elementwise and shape ops. All shape mismatches throw with both shapes.
Var add(const Var& a, const Var& b);
Var add_rowvec(const Var& a, const Var& v);
Var add_scalar(const Var& a, double s);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var scale(const Var& a, double c);
Var matmul(const Var& a, const Var& b);
Var transpose(const Var& a);
Var concat_cols(const std::vector<Var>& parts);
Var concat_rows(const std::vector<Var>& parts);
Var slice_rows(const Var& a, int r0, int r1);
Var slice_cols(const Var& a, int c0, int c1);
Var reshape(const Var& a, std::vector<int> shape);
Var sum_all(const Var& a);
Var mean_all(const Var& a);
Var sum_rows(const Var& a);   // [m x n] -> [1 x n]
Var mean_rows(const Var& a);  // [m x n] -> [1 x n]
Var tanh(const Var& a);
Var sigmoid(const Var& a);
Var relu(const Var& a);
Var abs(const Var& a);
Var exp(const Var& a);
Var sqrt_eps(const Var& a, double eps = 1e-10);
Var log_softmax_rows(const Var& a);
Var pick_cols(const Var& a, const std::vector<int>& ids);     // [m x n] -> [m x 1]
Var embedding_rows(const Var& table, const std::vector<int>& ids);

// conv weight layouts: conv2d w is [out_channels, in_channels*kh*kw],
// conv1d w is [channels*kernel, out_channels].
Var conv2d(const Var& x, const Var& w, const Var& b, const kernels::Conv2dGeom& geom);
Var conv1d_dilated(const Var& x, const Var& w, const Var& b, int kernel, int dilation);

// [c, h, w] -> [h, c*w]; row t concatenates all channels at time t.
Var chw_to_time_major(const Var& a);

}  // namespace topicid::ad
