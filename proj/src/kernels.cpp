#include "topicid/kernels.hpp"

#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace topicid::kernels {

namespace {

inline void matmul_row(const double* a_row, const double* b, double* c_row, int k, int n,
                       bool accumulate) {
  if (!accumulate) std::memset(c_row, 0, sizeof(double) * static_cast<std::size_t>(n));
  for (int p = 0; p < k; ++p) {
    const double av = a_row[p];
    if (av == 0.0) continue;
    const double* b_row = b + static_cast<std::size_t>(p) * n;
    for (int j = 0; j < n; ++j) c_row[j] += av * b_row[j];
  }
}

}  // namespace

void matmul_serial(const double* a, const double* b, double* c, int m, int k, int n,
                   bool accumulate) {
  for (int i = 0; i < m; ++i) {
    matmul_row(a + static_cast<std::size_t>(i) * k, b, c + static_cast<std::size_t>(i) * n, k, n,
               accumulate);
  }
}

void matmul(const double* a, const double* b, double* c, int m, int k, int n, bool accumulate) {
#pragma omp parallel for schedule(static) if (static_cast<long long>(m) * k * n > 16384)
  for (int i = 0; i < m; ++i) {
    matmul_row(a + static_cast<std::size_t>(i) * k, b, c + static_cast<std::size_t>(i) * n, k, n,
               accumulate);
  }
}

void matmul_tn_serial(const double* a, const double* b, double* c, int m, int k, int n,
                      bool accumulate) {
  for (int i = 0; i < m; ++i) {
    double* c_row = c + static_cast<std::size_t>(i) * n;
    if (!accumulate) std::memset(c_row, 0, sizeof(double) * static_cast<std::size_t>(n));
    for (int p = 0; p < k; ++p) {
      const double av = a[static_cast<std::size_t>(p) * m + i];
      if (av == 0.0) continue;
      const double* b_row = b + static_cast<std::size_t>(p) * n;
      for (int j = 0; j < n; ++j) c_row[j] += av * b_row[j];
    }
  }
}

void matmul_tn(const double* a, const double* b, double* c, int m, int k, int n, bool accumulate) {
#pragma omp parallel for schedule(static) if (static_cast<long long>(m) * k * n > 16384)
  for (int i = 0; i < m; ++i) {
    double* c_row = c + static_cast<std::size_t>(i) * n;
    if (!accumulate) std::memset(c_row, 0, sizeof(double) * static_cast<std::size_t>(n));
    for (int p = 0; p < k; ++p) {
      const double av = a[static_cast<std::size_t>(p) * m + i];
      if (av == 0.0) continue;
      const double* b_row = b + static_cast<std::size_t>(p) * n;
      for (int j = 0; j < n; ++j) c_row[j] += av * b_row[j];
    }
  }
}

void matmul_nt_serial(const double* a, const double* b, double* c, int m, int k, int n,
                      bool accumulate) {
  for (int i = 0; i < m; ++i) {
    const double* a_row = a + static_cast<std::size_t>(i) * k;
    double* c_row = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* b_row = b + static_cast<std::size_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += a_row[p] * b_row[p];
      if (accumulate) {
        c_row[j] += acc;
      } else {
        c_row[j] = acc;
      }
    }
  }
}

void matmul_nt(const double* a, const double* b, double* c, int m, int k, int n, bool accumulate) {
#pragma omp parallel for schedule(static) if (static_cast<long long>(m) * k * n > 16384)
  for (int i = 0; i < m; ++i) {
    const double* a_row = a + static_cast<std::size_t>(i) * k;
    double* c_row = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* b_row = b + static_cast<std::size_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += a_row[p] * b_row[p];
      if (accumulate) {
        c_row[j] += acc;
      } else {
        c_row[j] = acc;
      }
    }
  }
}

namespace {

inline void im2col_patch(const double* x, double* patch, const Conv2dGeom& g, int oy, int ox) {
  int idx = 0;
  for (int c = 0; c < g.in_channels; ++c) {
    const double* plane = x + static_cast<std::size_t>(c) * g.in_h * g.in_w;
    for (int ky = 0; ky < g.kernel_h; ++ky) {
      const int iy = oy * g.stride_h - g.pad_h + ky;
      for (int kx = 0; kx < g.kernel_w; ++kx) {
        const int ix = ox * g.stride_w - g.pad_w + kx;
        const bool inside = iy >= 0 && iy < g.in_h && ix >= 0 && ix < g.in_w;
        patch[idx++] = inside ? plane[static_cast<std::size_t>(iy) * g.in_w + ix] : 0.0;
      }
    }
  }
}

}  // namespace

void im2col_serial(const double* x, double* patches, const Conv2dGeom& g) {
  const int ow = g.out_w();
  const int oh = g.out_h();
  const int plen = g.patch_len();
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      im2col_patch(x, patches + static_cast<std::size_t>(oy * ow + ox) * plen, g, oy, ox);
    }
  }
}

void im2col(const double* x, double* patches, const Conv2dGeom& g) {
  const int ow = g.out_w();
  const int oh = g.out_h();
  const int plen = g.patch_len();
#pragma omp parallel for schedule(static)
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      im2col_patch(x, patches + static_cast<std::size_t>(oy * ow + ox) * plen, g, oy, ox);
    }
  }
}

void col2im_add(const double* patches, double* dx, const Conv2dGeom& g) {
  const int ow = g.out_w();
  const int oh = g.out_h();
  const int plen = g.patch_len();
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      const double* patch = patches + static_cast<std::size_t>(oy * ow + ox) * plen;
      int idx = 0;
      for (int c = 0; c < g.in_channels; ++c) {
        double* plane = dx + static_cast<std::size_t>(c) * g.in_h * g.in_w;
        for (int ky = 0; ky < g.kernel_h; ++ky) {
          const int iy = oy * g.stride_h - g.pad_h + ky;
          for (int kx = 0; kx < g.kernel_w; ++kx, ++idx) {
            const int ix = ox * g.stride_w - g.pad_w + kx;
            if (iy >= 0 && iy < g.in_h && ix >= 0 && ix < g.in_w) {
              plane[static_cast<std::size_t>(iy) * g.in_w + ix] += patch[idx];
            }
          }
        }
      }
    }
  }
}

namespace {

inline void im2row_step(const double* x, double* patch, const Conv1dGeom& g, int t) {
  int idx = 0;
  for (int k = 0; k < g.kernel; ++k) {
    const int src = t - g.pad() + k * g.dilation;
    if (src >= 0 && src < g.steps) {
      const double* row = x + static_cast<std::size_t>(src) * g.channels;
      for (int c = 0; c < g.channels; ++c) patch[idx++] = row[c];
    } else {
      for (int c = 0; c < g.channels; ++c) patch[idx++] = 0.0;
    }
  }
}

}  // namespace

void im2row_serial(const double* x, double* patches, const Conv1dGeom& g) {
  const int plen = g.patch_len();
  for (int t = 0; t < g.steps; ++t) {
    im2row_step(x, patches + static_cast<std::size_t>(t) * plen, g, t);
  }
}

void im2row(const double* x, double* patches, const Conv1dGeom& g) {
  const int plen = g.patch_len();
#pragma omp parallel for schedule(static)
  for (int t = 0; t < g.steps; ++t) {
    im2row_step(x, patches + static_cast<std::size_t>(t) * plen, g, t);
  }
}

void row2im_add(const double* patches, double* dx, const Conv1dGeom& g) {
  const int plen = g.patch_len();
  for (int t = 0; t < g.steps; ++t) {
    const double* patch = patches + static_cast<std::size_t>(t) * plen;
    int idx = 0;
    for (int k = 0; k < g.kernel; ++k) {
      const int src = t - g.pad() + k * g.dilation;
      if (src >= 0 && src < g.steps) {
        double* row = dx + static_cast<std::size_t>(src) * g.channels;
        for (int c = 0; c < g.channels; ++c) row[c] += patch[idx++];
      } else {
        idx += g.channels;
      }
    }
  }
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace topicid::kernels
