#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "playpen/rng.hpp"

namespace playpen {

template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowX = Eigen::Matrix<S, 1, Eigen::Dynamic>;

/// Parameter matrix with its gradient and Adam moments.
template <class S>
struct Tensor {
  MatX<S> value, grad, m, v;

  void init(int rows, int cols) {
    value.setZero(rows, cols);
    grad.setZero(rows, cols);
    m.setZero(rows, cols);
    v.setZero(rows, cols);
  }
  void zero_grad() { grad.setZero(); }
};

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One Adam update with bias correction; `t` counts from 1.
template <class S>
void adam_step(Tensor<S>& p, const AdamConfig& cfg, long t) {
  const S b1 = static_cast<S>(cfg.beta1), b2 = static_cast<S>(cfg.beta2);
  p.m = b1 * p.m + (S(1) - b1) * p.grad;
  p.v = b2 * p.v + (S(1) - b2) * p.grad.cwiseProduct(p.grad);
  const S corr1 = S(1) - static_cast<S>(std::pow(cfg.beta1, static_cast<double>(t)));
  const S corr2 = S(1) - static_cast<S>(std::pow(cfg.beta2, static_cast<double>(t)));
  const S lr = static_cast<S>(cfg.lr);
  const S eps = static_cast<S>(cfg.eps);
  p.value.array() -=
      lr * (p.m.array() / corr1) / ((p.v.array() / corr2).sqrt() + eps);
}

template <class S>
struct Linear {
  Tensor<S> W;  // out x in
  Tensor<S> b;  // out x 1

  void init(int in, int out, Rng& rng) {
    W.init(out, in);
    b.init(out, 1);
    const double limit = std::sqrt(6.0 / (in + out));
    for (int j = 0; j < in; ++j) {
      for (int i = 0; i < out; ++i) {
        W.value(i, j) = static_cast<S>(rng.uniform(-limit, limit));
      }
    }
  }

  void forward(const MatX<S>& x, MatX<S>& y) const {
    y.noalias() = W.value * x;
    y.colwise() += b.value.col(0);
  }

  /// Accumulates parameter gradients (unless skipped) and optionally the
  /// input gradient. `x` must be the forward input.
  void backward(const MatX<S>& x, const MatX<S>& dy, MatX<S>* dx, bool param_grads = true) {
    if (param_grads) {
      W.grad.noalias() += dy * x.transpose();
      b.grad.col(0).noalias() += dy.rowwise().sum();
    }
    if (dx) dx->noalias() = W.value.transpose() * dy;
  }

  void params(std::vector<Tensor<S>*>& out) {
    out.push_back(&W);
    out.push_back(&b);
  }
};

/// Feature-wise layer normalization over each column (sample), with affine
/// scale and shift.
template <class S>
struct LayerNorm {
  Tensor<S> gamma, beta;  // n x 1
  static constexpr S kEps = static_cast<S>(1e-5);

  void init(int n) {
    gamma.init(n, 1);
    gamma.value.setOnes();
    beta.init(n, 1);
  }

  void forward(const MatX<S>& x, MatX<S>& y) {
    mu_ = x.colwise().mean();
    xc_ = x.rowwise() - mu_;
    istd_ = (xc_.array().square().colwise().mean() + kEps).rsqrt().matrix();
    xhat_ = (xc_.array().rowwise() * istd_.array()).matrix();
    y = ((xhat_.array().colwise() * gamma.value.col(0).array()).colwise() +
         beta.value.col(0).array())
            .matrix();
  }

  void backward(const MatX<S>& dy, MatX<S>& dx, bool param_grads = true) {
    if (param_grads) {
      gamma.grad.col(0).noalias() += dy.cwiseProduct(xhat_).rowwise().sum();
      beta.grad.col(0).noalias() += dy.rowwise().sum();
    }
    g_ = (dy.array().colwise() * gamma.value.col(0).array()).matrix();
    const RowX<S> mean_g = g_.colwise().mean();
    const RowX<S> mean_gx = g_.cwiseProduct(xhat_).colwise().mean();
    dx = (((g_.rowwise() - mean_g).array() - xhat_.array().rowwise() * mean_gx.array())
              .rowwise() *
          istd_.array())
             .matrix();
  }

  void params(std::vector<Tensor<S>*>& out) {
    out.push_back(&gamma);
    out.push_back(&beta);
  }

 private:
  RowX<S> mu_, istd_;
  MatX<S> xc_, xhat_, g_;
};

/// Two hidden layers with ReLU, optionally layer-normalized before each
/// activation. Caches activations between forward and backward.
template <class S>
class MlpTrunk {
 public:
  void init(int in, int hidden, bool layer_norm, Rng& rng) {
    ln_ = layer_norm;
    l1_.init(in, hidden, rng);
    l2_.init(hidden, hidden, rng);
    if (ln_) {
      n1_.init(hidden);
      n2_.init(hidden);
    }
  }

  const MatX<S>& forward(const MatX<S>& x) {
    x_ = x;
    l1_.forward(x_, z1_);
    if (ln_) {
      n1_.forward(z1_, a1_);
    } else {
      a1_ = z1_;
    }
    h1_ = a1_.cwiseMax(S(0));
    l2_.forward(h1_, z2_);
    if (ln_) {
      n2_.forward(z2_, a2_);
    } else {
      a2_ = z2_;
    }
    h2_ = a2_.cwiseMax(S(0));
    return h2_;
  }

  const MatX<S>& output() const { return h2_; }

  /// `dout` is the gradient at the trunk output. Fills `dx` when requested.
  void backward(const MatX<S>& dout, MatX<S>* dx, bool param_grads = true) {
    da2_ = dout.cwiseProduct((a2_.array() > S(0)).template cast<S>().matrix());
    if (ln_) {
      n2_.backward(da2_, dz2_, param_grads);
    } else {
      dz2_ = da2_;
    }
    l2_.backward(h1_, dz2_, &dh1_, param_grads);
    da1_ = dh1_.cwiseProduct((a1_.array() > S(0)).template cast<S>().matrix());
    if (ln_) {
      n1_.backward(da1_, dz1_, param_grads);
    } else {
      dz1_ = da1_;
    }
    l1_.backward(x_, dz1_, dx, param_grads);
  }

  void params(std::vector<Tensor<S>*>& out) {
    l1_.params(out);
    if (ln_) n1_.params(out);
    l2_.params(out);
    if (ln_) n2_.params(out);
  }

 private:
  bool ln_ = false;
  Linear<S> l1_, l2_;
  LayerNorm<S> n1_, n2_;
  MatX<S> x_, z1_, a1_, h1_, z2_, a2_, h2_;
  MatX<S> da2_, dz2_, dh1_, da1_, dz1_;
};

template <class S>
void zero_grads(std::vector<Tensor<S>*>& params) {
  for (auto* p : params) p->zero_grad();
}

template <class S>
void adam_step_all(std::vector<Tensor<S>*>& params, const AdamConfig& cfg, long t) {
  for (auto* p : params) adam_step(*p, cfg, t);
}

}  // namespace playpen
