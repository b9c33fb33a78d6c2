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

#ifndef UWVOS_UDA_KERNEL_H_
#define UWVOS_UDA_KERNEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace uwvos {

using Vector = std::vector<double>;

// Row-major rows x cols.
struct Matrix2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix2D() = default;
  Matrix2D(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Channels x spatial positions, channel-major.
struct FeatureMap {
  std::size_t channels = 0;
  std::size_t positions = 0;
  std::vector<double> data;

  FeatureMap() = default;
  FeatureMap(std::size_t d, std::size_t n) : channels(d), positions(n), data(d * n, 0.0) {}

  double& operator()(std::size_t c, std::size_t i) { return data[c * positions + i]; }
  double operator()(std::size_t c, std::size_t i) const { return data[c * positions + i]; }
  Vector column(std::size_t i) const;
  void set_column(std::size_t i, std::span<const double> v);
};

// x * Phi(x) with the exact normal CDF.
double Gelu(double x);
double GeluDerivative(double x);
Vector GeluMap(std::span<const double> x);

// Row vector times matrix: (x M)[j] = sum_i x[i] M(i, j).
Vector RowTimes(std::span<const double> x, const Matrix2D& m);

inline constexpr std::size_t kBottleneckRatio = 16;

// DA(x) = gelu(x W_in + b_in) W_out + b_out.
struct AdapterParams {
  Matrix2D w_in;   // d x r
  Vector b_in;     // r
  Matrix2D w_out;  // r x d
  Vector b_out;    // d

  std::size_t dim() const { return w_in.rows; }
  std::size_t bottleneck() const { return w_in.cols; }
};

// gate = phi_up(gelu(phi_down(GAP(F)))), both phis 1x1 convolutions.
struct ScgParams {
  Matrix2D down_w;  // d x r
  Vector down_b;    // r
  Matrix2D up_w;    // r x d
  Vector up_b;      // d

  std::size_t dim() const { return down_w.rows; }
  std::size_t bottleneck() const { return down_w.cols; }
};

// Throws Error{kShapeMismatch, kNonFiniteValue}.
void CheckAdapterParams(const AdapterParams& p);
void CheckScgParams(const ScgParams& p);

// r = d / 16. Throws Error{kIndivisibleDim}.
std::size_t BottleneckFor(std::size_t d);

AdapterParams ZeroAdapter(std::size_t d);
// Entries uniform in [-scale, scale].
AdapterParams RandomAdapter(std::size_t d, std::uint64_t seed, double scale = 0.5);
// phi_down and phi_up weights zero, phi_up bias one: the gate is identically 1.
ScgParams IdentityGateScg(std::size_t d);
ScgParams RandomScg(std::size_t d, std::uint64_t seed, double scale = 0.5);

// Same layouts with any positive r.
AdapterParams ZeroAdapter(std::size_t d, std::size_t r);
AdapterParams RandomAdapter(std::size_t d, std::size_t r, std::uint64_t seed, double scale);
ScgParams RandomScg(std::size_t d, std::size_t r, std::uint64_t seed, double scale);

// Throws Error{kShapeMismatch}.
Vector DomainAdapterForward(std::span<const double> x, const AdapterParams& p);
// Directional derivative at (x, p) along (dx, dp).
Vector DomainAdapterJvp(std::span<const double> x, const AdapterParams& p,
                        std::span<const double> dx, const AdapterParams& dp);
// DA applied to every spatial position.
FeatureMap DomainAdapterForward(const FeatureMap& f, const AdapterParams& p);

struct ScgOptions {
  // Squash the gate with a logistic sigmoid. Off by default.
  bool outer_sigmoid = false;
};

Vector GlobalAveragePool(const FeatureMap& f);
Vector ScgGate(const FeatureMap& f, const ScgParams& p, ScgOptions options = {});
FeatureMap ScgForward(const FeatureMap& f, const ScgParams& p, ScgOptions options = {});
FeatureMap ScgJvp(const FeatureMap& f, const ScgParams& p, const FeatureMap& df,
                  const ScgParams& dp, ScgOptions options = {});

using FeatureFn = std::function<FeatureMap(const FeatureMap&)>;

enum class ScgPlacement { kBlockOutput, kPreFfn };

struct UdaBlockOptions {
  ScgPlacement placement = ScgPlacement::kBlockOutput;
  ScgOptions scg;
};

// h = attn_out + DA1(attn_out); out = SCG(h + ffn(h) + DA2(h)).
// With kPreFfn: h' = SCG(h); out = h' + ffn(h') + DA2(h').
FeatureMap UdaBlockForward(const FeatureMap& attn_out, const FeatureFn& ffn,
                           const AdapterParams& da1, const AdapterParams& da2,
                           const ScgParams& scg, UdaBlockOptions options = {});
// The frozen block: attn_out + ffn(attn_out).
FeatureMap HostBlockForward(const FeatureMap& attn_out, const FeatureFn& ffn);

FeatureMap Add(const FeatureMap& a, const FeatureMap& b);

// A map R^input_dim -> R^m with its analytic JVP.
struct DifferentiableMap {
  std::size_t input_dim = 0;
  std::function<Vector(std::span<const double>)> eval;
  std::function<Vector(std::span<const double> x, std::span<const double> v)> jvp;
};

// Max over outputs of |jvp - fd| / max(1, |jvp|, |fd|) with the central
// difference fd = (f(x + h v) - f(x - h v)) / 2h.
// Throws Error{kInvalidArgument, kShapeMismatch, kNonFiniteValue}.
double FiniteDiffGradcheck(const DifferentiableMap& op, std::span<const double> point,
                           std::span<const double> direction, double h);

// Flattened layouts [x, w_in, b_in, w_out, b_out] and
// [F, down_w, down_b, up_w, up_b].
std::size_t AdapterInputDim(std::size_t d, std::size_t r);
std::size_t ScgInputDim(std::size_t d, std::size_t r, std::size_t n);
Vector PackAdapter(std::span<const double> x, const AdapterParams& p);
Vector PackScg(const FeatureMap& f, const ScgParams& p);
DifferentiableMap AdapterMap(std::size_t d, std::size_t r);
DifferentiableMap ScgMap(std::size_t d, std::size_t r, std::size_t n, ScgOptions options = {});

struct GradcheckSuiteSpec {
  std::size_t dim = 32;
  std::size_t positions = 4;
  std::size_t points = 20;
  std::uint64_t seed = 0;
  double step = 1e-6;
};

struct GradcheckOpResult {
  std::string op;
  std::vector<double> errors;  // one per random point
  double max_error = 0.0;
};

// Random points and directions for gelu, the domain adapter and the gate
// (with and without the outer sigmoid), r = dim / 16.
std::vector<GradcheckOpResult> RunGradcheckSuite(const GradcheckSuiteSpec& spec);

// Uniform doubles in [lo, hi) from a seeded 64-bit Mersenne twister.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed);
  double next(double lo, double hi);
  Vector vector(std::size_t n, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace uwvos

#endif  // UWVOS_UDA_KERNEL_H_
