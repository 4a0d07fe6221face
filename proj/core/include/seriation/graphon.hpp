#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace seriation {

enum class KernelFamily { AffineDistance, Rbf, Step, Custom };

std::string family_name(KernelFamily family);

/// A symmetric kernel w : [0,1]^2 -> [0,1] together with the metadata the
/// validator and the samplers need (family, parameters, Lipschitz constant
/// when known). Instances are immutable and cheap to copy.
class Graphon {
 public:
  // w(x,y) = 1 - a|x-y|^b, requires 0 < a <= 1 and b >= 1.
  static Graphon affine_distance(double a, double b);
  // w(x,y) = exp(-(x-y)^2 / (2 s^2)), s > 0.
  static Graphon rbf(double s);
  // w(x,y) = p * 1[|x-y| <= c].
  static Graphon step(double p, double c);
  // Tabulated kernel on a uniform (m x m) grid over [0,1]^2, bilinearly
  // interpolated. Symmetry is enforced by averaging (k(x,y)+k(y,x))/2.
  static Graphon custom(Eigen::MatrixXd grid,
                        std::optional<double> lipschitz = std::nullopt);

  double operator()(double x, double y) const;

  KernelFamily family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  std::optional<double> lipschitz() const { return lipschitz_; }
  std::string spec_string() const;

 private:
  Graphon(KernelFamily family, std::vector<double> params,
          std::optional<double> lipschitz,
          std::function<double(double, double)> kernel);

  KernelFamily family_;
  std::vector<double> params_;
  std::optional<double> lipschitz_;
  std::function<double(double, double)> kernel_;
};

// Parses a one-line graphon spec: "affine <a> <b>", "rbf <s>", or
// "step <p> <c>". Throws std::invalid_argument on malformed input.
Graphon parse_graphon_spec(const std::string& spec);

// True when the spec only makes sense at a fixed vertex count. Currently
// that is "banded <b>": vertices i, j connect iff |i-j| <= b, realized as
// the deterministic step kernel step(1, (b+1/2)/n).
bool spec_needs_resolution(const std::string& spec);

// Resolves either kind of spec at vertex count n.
Graphon resolve_graphon_spec(const std::string& spec, int n);

// Model matrix P with P(i,j) = w((i+1)/n, (j+1)/n) for 0-based i, j.
// Vertex i sits at latent position (i+1)/n throughout the library.
Eigen::MatrixXd model_matrix(const Graphon& graphon, int n);

// Latent position of 0-based vertex `i` in a graph of size `n`.
inline double latent_position(int i, int n) {
  return static_cast<double>(i + 1) / static_cast<double>(n);
}

// Composite-midpoint quadrature of d(x) = \int_0^1 w(x,y) dy.
double degree_function(const Graphon& graphon, double x,
                       int quad_points = 512);

struct PsiPair {
  double right;  // \int_{1-alpha}^{1} w(x,y) dy
  double left;   // \int_{0}^{alpha} w(x,y) dy
};

PsiPair psi_functions(const Graphon& graphon, double alpha, double x,
                      int quad_points = 512);

}  // namespace seriation
