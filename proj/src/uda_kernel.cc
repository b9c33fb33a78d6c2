/* Copyright 2026 The UW-VOS Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "uwvos/uda_kernel.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uwvos/error.h"

namespace uwvos {

namespace {

[[noreturn]] void Shape(const std::string& what) {
  throw Error(ErrorCode::kShapeMismatch, what);
}

void CheckSize(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    Shape(std::string(what) + " has size " + std::to_string(got) + ", expected " +
          std::to_string(want));
  }
}

void CheckFinite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kNonFiniteValue, std::string(what) + " contains a non-finite value");
    }
  }
}

void CheckMatrix(const Matrix2D& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows != rows || m.cols != cols || m.data.size() != rows * cols) {
    Shape(std::string(what) + " is " + std::to_string(m.rows) + "x" + std::to_string(m.cols) +
          ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void CheckFeatureMap(const FeatureMap& f) {
  if (f.data.size() != f.channels * f.positions) Shape("feature map storage does not match shape");
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Vector AddVec(Vector a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

Vector FeatureMap::column(std::size_t i) const {
  Vector v(channels);
  for (std::size_t c = 0; c < channels; ++c) v[c] = (*this)(c, i);
  return v;
}

void FeatureMap::set_column(std::size_t i, std::span<const double> v) {
  for (std::size_t c = 0; c < channels; ++c) (*this)(c, i) = v[c];
}

double Gelu(double x) { return 0.5 * x * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

double GeluDerivative(double x) {
  const double cdf = 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
  const double pdf = std::exp(-0.5 * x * x) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
  return cdf + x * pdf;
}

Vector GeluMap(std::span<const double> x) {
  Vector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), Gelu);
  return out;
}

Vector RowTimes(std::span<const double> x, const Matrix2D& m) {
  CheckSize(x.size(), m.rows, "row vector");
  Vector out(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double xi = x[i];
    const double* row = &m.data[i * m.cols];
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += xi * row[j];
  }
  return out;
}

void CheckAdapterParams(const AdapterParams& p) {
  const std::size_t d = p.w_in.rows;
  const std::size_t r = p.w_in.cols;
  if (d == 0 || r == 0) Shape("adapter dimensions must be positive");
  CheckMatrix(p.w_in, d, r, "w_in");
  CheckMatrix(p.w_out, r, d, "w_out");
  CheckSize(p.b_in.size(), r, "b_in");
  CheckSize(p.b_out.size(), d, "b_out");
  CheckFinite(p.w_in.data, "w_in");
  CheckFinite(p.w_out.data, "w_out");
  CheckFinite(p.b_in, "b_in");
  CheckFinite(p.b_out, "b_out");
}

void CheckScgParams(const ScgParams& p) {
  const std::size_t d = p.down_w.rows;
  const std::size_t r = p.down_w.cols;
  if (d == 0 || r == 0) Shape("gate dimensions must be positive");
  CheckMatrix(p.down_w, d, r, "phi_down weights");
  CheckMatrix(p.up_w, r, d, "phi_up weights");
  CheckSize(p.down_b.size(), r, "phi_down bias");
  CheckSize(p.up_b.size(), d, "phi_up bias");
  CheckFinite(p.down_w.data, "phi_down weights");
  CheckFinite(p.up_w.data, "phi_up weights");
  CheckFinite(p.down_b, "phi_down bias");
  CheckFinite(p.up_b, "phi_up bias");
}

std::size_t BottleneckFor(std::size_t d) {
  if (d == 0 || d % kBottleneckRatio != 0) {
    throw Error(ErrorCode::kIndivisibleDim,
                "channel dim " + std::to_string(d) + " is not a positive multiple of 16");
  }
  return d / kBottleneckRatio;
}

UniformSource::UniformSource(std::uint64_t seed) : engine_(seed) {}

double UniformSource::next(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Vector UniformSource::vector(std::size_t n, double lo, double hi) {
  Vector v(n);
  for (double& x : v) x = next(lo, hi);
  return v;
}

AdapterParams ZeroAdapter(std::size_t d, std::size_t r) {
  return {Matrix2D(d, r), Vector(r, 0.0), Matrix2D(r, d), Vector(d, 0.0)};
}

AdapterParams ZeroAdapter(std::size_t d) { return ZeroAdapter(d, BottleneckFor(d)); }

AdapterParams RandomAdapter(std::size_t d, std::size_t r, std::uint64_t seed, double scale) {
  UniformSource u(seed);
  AdapterParams p = ZeroAdapter(d, r);
  p.w_in.data = u.vector(d * r, -scale, scale);
  p.b_in = u.vector(r, -scale, scale);
  p.w_out.data = u.vector(r * d, -scale, scale);
  p.b_out = u.vector(d, -scale, scale);
  return p;
}

AdapterParams RandomAdapter(std::size_t d, std::uint64_t seed, double scale) {
  return RandomAdapter(d, BottleneckFor(d), seed, scale);
}

ScgParams IdentityGateScg(std::size_t d) {
  const std::size_t r = BottleneckFor(d);
  return {Matrix2D(d, r), Vector(r, 0.0), Matrix2D(r, d), Vector(d, 1.0)};
}

ScgParams RandomScg(std::size_t d, std::size_t r, std::uint64_t seed, double scale) {
  UniformSource u(seed);
  ScgParams p{Matrix2D(d, r), {}, Matrix2D(r, d), {}};
  p.down_w.data = u.vector(d * r, -scale, scale);
  p.down_b = u.vector(r, -scale, scale);
  p.up_w.data = u.vector(r * d, -scale, scale);
  p.up_b = u.vector(d, -scale, scale);
  return p;
}

ScgParams RandomScg(std::size_t d, std::uint64_t seed, double scale) {
  return RandomScg(d, BottleneckFor(d), seed, scale);
}

Vector DomainAdapterForward(std::span<const double> x, const AdapterParams& p) {
  CheckAdapterParams(p);
  CheckSize(x.size(), p.dim(), "adapter input");
  const Vector hidden = GeluMap(AddVec(RowTimes(x, p.w_in), p.b_in));
  return AddVec(RowTimes(hidden, p.w_out), p.b_out);
}

Vector DomainAdapterJvp(std::span<const double> x, const AdapterParams& p,
                        std::span<const double> dx, const AdapterParams& dp) {
  CheckAdapterParams(p);
  CheckAdapterParams(dp);
  if (dp.dim() != p.dim() || dp.bottleneck() != p.bottleneck()) {
    Shape("adapter tangent does not match adapter shape");
  }
  CheckSize(x.size(), p.dim(), "adapter input");
  CheckSize(dx.size(), p.dim(), "adapter input tangent");

  const Vector pre = AddVec(RowTimes(x, p.w_in), p.b_in);
  Vector dpre = AddVec(AddVec(RowTimes(dx, p.w_in), RowTimes(x, dp.w_in)), dp.b_in);
  Vector hidden(pre.size());
  for (std::size_t k = 0; k < pre.size(); ++k) {
    hidden[k] = Gelu(pre[k]);
    dpre[k] *= GeluDerivative(pre[k]);
  }
  return AddVec(AddVec(RowTimes(dpre, p.w_out), RowTimes(hidden, dp.w_out)), dp.b_out);
}

FeatureMap DomainAdapterForward(const FeatureMap& f, const AdapterParams& p) {
  CheckFeatureMap(f);
  CheckSize(f.channels, p.dim(), "feature map channels");
  FeatureMap out(f.channels, f.positions);
  for (std::size_t i = 0; i < f.positions; ++i) {
    out.set_column(i, DomainAdapterForward(f.column(i), p));
  }
  return out;
}

Vector GlobalAveragePool(const FeatureMap& f) {
  CheckFeatureMap(f);
  if (f.positions == 0) Shape("cannot pool a feature map with no positions");
  Vector g(f.channels, 0.0);
  for (std::size_t c = 0; c < f.channels; ++c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < f.positions; ++i) sum += f(c, i);
    g[c] = sum / static_cast<double>(f.positions);
  }
  return g;
}

Vector ScgGate(const FeatureMap& f, const ScgParams& p, ScgOptions options) {
  CheckScgParams(p);
  CheckSize(f.channels, p.dim(), "feature map channels");
  const Vector hidden = GeluMap(AddVec(RowTimes(GlobalAveragePool(f), p.down_w), p.down_b));
  Vector gate = AddVec(RowTimes(hidden, p.up_w), p.up_b);
  if (options.outer_sigmoid) {
    for (double& g : gate) g = Sigmoid(g);
  }
  return gate;
}

FeatureMap ScgForward(const FeatureMap& f, const ScgParams& p, ScgOptions options) {
  const Vector gate = ScgGate(f, p, options);
  FeatureMap out(f.channels, f.positions);
  for (std::size_t c = 0; c < f.channels; ++c) {
    for (std::size_t i = 0; i < f.positions; ++i) out(c, i) = f(c, i) * gate[c];
  }
  return out;
}

FeatureMap ScgJvp(const FeatureMap& f, const ScgParams& p, const FeatureMap& df,
                  const ScgParams& dp, ScgOptions options) {
  CheckScgParams(p);
  CheckScgParams(dp);
  CheckFeatureMap(df);
  if (dp.dim() != p.dim() || dp.bottleneck() != p.bottleneck()) {
    Shape("gate tangent does not match gate shape");
  }
  CheckSize(f.channels, p.dim(), "feature map channels");
  if (df.channels != f.channels || df.positions != f.positions) {
    Shape("feature map tangent does not match feature map shape");
  }

  const Vector g = GlobalAveragePool(f);
  const Vector dg = GlobalAveragePool(df);
  const Vector pre = AddVec(RowTimes(g, p.down_w), p.down_b);
  Vector dpre = AddVec(AddVec(RowTimes(dg, p.down_w), RowTimes(g, dp.down_w)), dp.down_b);
  Vector hidden(pre.size());
  for (std::size_t k = 0; k < pre.size(); ++k) {
    hidden[k] = Gelu(pre[k]);
    dpre[k] *= GeluDerivative(pre[k]);
  }
  Vector gate = AddVec(RowTimes(hidden, p.up_w), p.up_b);
  Vector dgate = AddVec(AddVec(RowTimes(dpre, p.up_w), RowTimes(hidden, dp.up_w)), dp.up_b);
  if (options.outer_sigmoid) {
    for (std::size_t c = 0; c < gate.size(); ++c) {
      const double s = Sigmoid(gate[c]);
      gate[c] = s;
      dgate[c] *= s * (1.0 - s);
    }
  }

  FeatureMap out(f.channels, f.positions);
  for (std::size_t c = 0; c < f.channels; ++c) {
    for (std::size_t i = 0; i < f.positions; ++i) {
      out(c, i) = df(c, i) * gate[c] + f(c, i) * dgate[c];
    }
  }
  return out;
}

FeatureMap Add(const FeatureMap& a, const FeatureMap& b) {
  CheckFeatureMap(a);
  CheckFeatureMap(b);
  if (a.channels != b.channels || a.positions != b.positions) {
    Shape("cannot add feature maps of different shapes");
  }
  FeatureMap out = a;
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] += b.data[k];
  return out;
}

FeatureMap HostBlockForward(const FeatureMap& attn_out, const FeatureFn& ffn) {
  return Add(attn_out, ffn(attn_out));
}

FeatureMap UdaBlockForward(const FeatureMap& attn_out, const FeatureFn& ffn,
                           const AdapterParams& da1, const AdapterParams& da2,
                           const ScgParams& scg, UdaBlockOptions options) {
  FeatureMap h = Add(attn_out, DomainAdapterForward(attn_out, da1));
  if (options.placement == ScgPlacement::kPreFfn) {
    h = ScgForward(h, scg, options.scg);
    return Add(Add(h, ffn(h)), DomainAdapterForward(h, da2));
  }
  return ScgForward(Add(Add(h, ffn(h)), DomainAdapterForward(h, da2)), scg, options.scg);
}

double FiniteDiffGradcheck(const DifferentiableMap& op, std::span<const double> point,
                           std::span<const double> direction, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::kInvalidArgument, "gradcheck step must be positive and finite");
  }
  CheckSize(point.size(), op.input_dim, "gradcheck point");
  CheckSize(direction.size(), op.input_dim, "gradcheck direction");
  CheckFinite(point, "gradcheck point");
  CheckFinite(direction, "gradcheck direction");

  Vector plus(point.begin(), point.end());
  Vector minus(point.begin(), point.end());
  for (std::size_t k = 0; k < plus.size(); ++k) {
    plus[k] += h * direction[k];
    minus[k] -= h * direction[k];
  }
  const Vector f_plus = op.eval(plus);
  const Vector f_minus = op.eval(minus);
  const Vector jvp = op.jvp(point, direction);
  CheckFinite(f_plus, "gradcheck output");
  CheckFinite(f_minus, "gradcheck output");
  CheckFinite(jvp, "analytic JVP");
  CheckSize(f_minus.size(), f_plus.size(), "gradcheck output");
  CheckSize(jvp.size(), f_plus.size(), "analytic JVP");

  double worst = 0.0;
  for (std::size_t k = 0; k < jvp.size(); ++k) {
    const double fd = (f_plus[k] - f_minus[k]) / (2.0 * h);
    const double scale = std::max({1.0, std::abs(jvp[k]), std::abs(fd)});
    worst = std::max(worst, std::abs(jvp[k] - fd) / scale);
  }
  return worst;
}

std::size_t AdapterInputDim(std::size_t d, std::size_t r) { return d + 2 * d * r + r + d; }

std::size_t ScgInputDim(std::size_t d, std::size_t r, std::size_t n) {
  return d * n + 2 * d * r + r + d;
}

namespace {

void Append(Vector& out, std::span<const double> v) { out.insert(out.end(), v.begin(), v.end()); }

class Reader {
 public:
  explicit Reader(std::span<const double> v) : v_(v) {}
  std::vector<double> take(std::size_t n) {
    auto s = v_.subspan(pos_, n);
    pos_ += n;
    return {s.begin(), s.end()};
  }

 private:
  std::span<const double> v_;
  std::size_t pos_ = 0;
};

AdapterParams ReadAdapter(Reader& r, std::size_t d, std::size_t b) {
  AdapterParams p = ZeroAdapter(d, b);
  p.w_in.data = r.take(d * b);
  p.b_in = r.take(b);
  p.w_out.data = r.take(b * d);
  p.b_out = r.take(d);
  return p;
}

ScgParams ReadScg(Reader& r, std::size_t d, std::size_t b) {
  ScgParams p{Matrix2D(d, b), {}, Matrix2D(b, d), {}};
  p.down_w.data = r.take(d * b);
  p.down_b = r.take(b);
  p.up_w.data = r.take(b * d);
  p.up_b = r.take(d);
  return p;
}

FeatureMap ReadFeatureMap(Reader& r, std::size_t d, std::size_t n) {
  FeatureMap f(d, n);
  f.data = r.take(d * n);
  return f;
}

}  // namespace

Vector PackAdapter(std::span<const double> x, const AdapterParams& p) {
  Vector out;
  Append(out, x);
  Append(out, p.w_in.data);
  Append(out, p.b_in);
  Append(out, p.w_out.data);
  Append(out, p.b_out);
  return out;
}

Vector PackScg(const FeatureMap& f, const ScgParams& p) {
  Vector out;
  Append(out, f.data);
  Append(out, p.down_w.data);
  Append(out, p.down_b);
  Append(out, p.up_w.data);
  Append(out, p.up_b);
  return out;
}

DifferentiableMap AdapterMap(std::size_t d, std::size_t r) {
  DifferentiableMap m;
  m.input_dim = AdapterInputDim(d, r);
  m.eval = [d, r](std::span<const double> v) {
    CheckSize(v.size(), AdapterInputDim(d, r), "packed adapter input");
    Reader in(v);
    const Vector x = in.take(d);
    return DomainAdapterForward(x, ReadAdapter(in, d, r));
  };
  m.jvp = [d, r](std::span<const double> v, std::span<const double> t) {
    CheckSize(v.size(), AdapterInputDim(d, r), "packed adapter input");
    CheckSize(t.size(), AdapterInputDim(d, r), "packed adapter tangent");
    Reader in(v);
    Reader dir(t);
    const Vector x = in.take(d);
    const Vector dx = dir.take(d);
    return DomainAdapterJvp(x, ReadAdapter(in, d, r), dx, ReadAdapter(dir, d, r));
  };
  return m;
}

DifferentiableMap ScgMap(std::size_t d, std::size_t r, std::size_t n, ScgOptions options) {
  DifferentiableMap m;
  m.input_dim = ScgInputDim(d, r, n);
  m.eval = [d, r, n, options](std::span<const double> v) {
    CheckSize(v.size(), ScgInputDim(d, r, n), "packed gate input");
    Reader in(v);
    const FeatureMap f = ReadFeatureMap(in, d, n);
    return ScgForward(f, ReadScg(in, d, r), options).data;
  };
  m.jvp = [d, r, n, options](std::span<const double> v, std::span<const double> t) {
    CheckSize(v.size(), ScgInputDim(d, r, n), "packed gate input");
    CheckSize(t.size(), ScgInputDim(d, r, n), "packed gate tangent");
    Reader in(v);
    Reader dir(t);
    const FeatureMap f = ReadFeatureMap(in, d, n);
    const FeatureMap df = ReadFeatureMap(dir, d, n);
    return ScgJvp(f, ReadScg(in, d, r), df, ReadScg(dir, d, r), options).data;
  };
  return m;
}

namespace {

DifferentiableMap GeluVectorMap(std::size_t n) {
  DifferentiableMap m;
  m.input_dim = n;
  m.eval = [](std::span<const double> x) { return GeluMap(x); };
  m.jvp = [](std::span<const double> x, std::span<const double> v) {
    Vector out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = GeluDerivative(x[k]) * v[k];
    return out;
  };
  return m;
}

}  // namespace

std::vector<GradcheckOpResult> RunGradcheckSuite(const GradcheckSuiteSpec& spec) {
  const std::size_t d = spec.dim;
  const std::size_t r = BottleneckFor(d);
  const std::size_t n = spec.positions;
  const std::vector<std::pair<std::string, DifferentiableMap>> ops = {
      {"gelu", GeluVectorMap(d)},
      {"domain_adapter", AdapterMap(d, r)},
      {"spectral_channel_gate", ScgMap(d, r, n)},
      {"spectral_channel_gate_sigmoid", ScgMap(d, r, n, {.outer_sigmoid = true})},
  };
  UniformSource u(spec.seed);
  std::vector<GradcheckOpResult> results;
  for (const auto& [name, op] : ops) {
    GradcheckOpResult result;
    result.op = name;
    for (std::size_t k = 0; k < spec.points; ++k) {
      const Vector point = u.vector(op.input_dim, -1.0, 1.0);
      const Vector direction = u.vector(op.input_dim, -1.0, 1.0);
      const double err = FiniteDiffGradcheck(op, point, direction, spec.step);
      result.errors.push_back(err);
      result.max_error = std::max(result.max_error, err);
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace uwvos
