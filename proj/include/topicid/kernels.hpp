#pragma once

#include <cstddef>

namespace topicid::kernels {

// Dense kernels used by the autodiff ops. Every parallel variant assigns each
// output element to exactly one thread and keeps the per-element accumulation
// order identical to the serial reference, so results are bit-identical for
// any thread count. The *_serial functions are the reference implementations
// the tests and the benchmark compare against.

// c[m x n] = a[m x k] * b[k x n]; accumulate adds into c instead.
void matmul_serial(const double* a, const double* b, double* c, int m, int k, int n,
                   bool accumulate = false);
void matmul(const double* a, const double* b, double* c, int m, int k, int n,
            bool accumulate = false);

// c[m x n] = a[k x m]^T * b[k x n]
void matmul_tn_serial(const double* a, const double* b, double* c, int m, int k, int n,
                      bool accumulate = false);
void matmul_tn(const double* a, const double* b, double* c, int m, int k, int n,
               bool accumulate = false);

// c[m x n] = a[m x k] * b[n x k]^T
void matmul_nt_serial(const double* a, const double* b, double* c, int m, int k, int n,
                      bool accumulate = false);
void matmul_nt(const double* a, const double* b, double* c, int m, int k, int n,
               bool accumulate = false);

struct Conv2dGeom {
  int in_channels = 1;
  int in_h = 0;
  int in_w = 0;
  int kernel_h = 3;
  int kernel_w = 3;
  int stride_h = 1;
  int stride_w = 1;
  int pad_h = 1;
  int pad_w = 1;

  int out_h() const { return (in_h + 2 * pad_h - kernel_h) / stride_h + 1; }
  int out_w() const { return (in_w + 2 * pad_w - kernel_w) / stride_w + 1; }
  int patch_len() const { return in_channels * kernel_h * kernel_w; }
};

// Lowers x[c,h,w] into patches[out_h*out_w, patch_len]; out-of-bounds taps
// read zero. Each patch row is independent, hence parallel-safe.
void im2col_serial(const double* x, double* patches, const Conv2dGeom& g);
void im2col(const double* x, double* patches, const Conv2dGeom& g);

// Scatter-add of patch gradients back into dx[c,h,w]. Overlapping taps make
// this a serial accumulation.
void col2im_add(const double* patches, double* dx, const Conv2dGeom& g);

// Dilated 1-D convolution over time lowered the same way: x is [t, c],
// patches are [t, c*kernel] with symmetric zero padding of (kernel-1)*dilation/2.
struct Conv1dGeom {
  int steps = 0;
  int channels = 0;
  int kernel = 1;
  int dilation = 1;

  int pad() const { return (kernel - 1) * dilation / 2; }
  int patch_len() const { return channels * kernel; }
};

void im2row_serial(const double* x, double* patches, const Conv1dGeom& g);
void im2row(const double* x, double* patches, const Conv1dGeom& g);
void row2im_add(const double* patches, double* dx, const Conv1dGeom& g);

int max_threads();

}  // namespace topicid::kernels
