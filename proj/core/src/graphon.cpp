#include "seriation/graphon.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace seriation {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) +
                                " must lie in [0,1], got " +
                                std::to_string(v));
  }
}

}  // namespace

std::string family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::AffineDistance:
      return "affine";
    case KernelFamily::Rbf:
      return "rbf";
    case KernelFamily::Step:
      return "step";
    case KernelFamily::Custom:
      return "custom";
  }
  return "unknown";
}

Graphon::Graphon(KernelFamily family, std::vector<double> params,
                 std::optional<double> lipschitz,
                 std::function<double(double, double)> kernel)
    : family_(family),
      params_(std::move(params)),
      lipschitz_(lipschitz),
      kernel_(std::move(kernel)) {}

Graphon Graphon::affine_distance(double a, double b) {
  if (!(a > 0.0 && a <= 1.0) || !(b >= 1.0)) {
    throw std::invalid_argument(
        "affine-distance kernel needs 0 < a <= 1 and b >= 1");
  }
  // sup |R'| = a*b on [0,1].
  return Graphon(KernelFamily::AffineDistance, {a, b}, a * b,
                 [a, b](double x, double y) {
                   return 1.0 - a * std::pow(std::abs(x - y), b);
                 });
}

Graphon Graphon::rbf(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("rbf kernel needs s > 0");
  // sup |R'(r)| = exp(-1/2)/s, attained at r = s.
  const double lip = std::exp(-0.5) / s;
  return Graphon(KernelFamily::Rbf, {s}, lip, [s](double x, double y) {
    const double d = x - y;
    return std::exp(-d * d / (2.0 * s * s));
  });
}

Graphon Graphon::step(double p, double c) {
  if (!(p >= 0.0 && p <= 1.0) || !(c >= 0.0)) {
    throw std::invalid_argument("step kernel needs p in [0,1] and c >= 0");
  }
  return Graphon(KernelFamily::Step, {p, c},
                 std::nullopt,  // discontinuous, no Lipschitz constant
                 [p, c](double x, double y) {
                   return std::abs(x - y) <= c ? p : 0.0;
                 });
}

Graphon Graphon::custom(Eigen::MatrixXd grid,
                        std::optional<double> lipschitz) {
  if (grid.rows() < 2 || grid.rows() != grid.cols()) {
    throw std::invalid_argument("custom kernel grid must be square, m >= 2");
  }
  if (grid.minCoeff() < 0.0 || grid.maxCoeff() > 1.0) {
    throw std::invalid_argument("custom kernel grid values must lie in [0,1]");
  }
  // Symmetrize at load.
  Eigen::MatrixXd sym = 0.5 * (grid + grid.transpose());
  const int m = static_cast<int>(sym.rows());
  auto kernel = [sym, m](double x, double y) {
    const double fx = x * (m - 1);
    const double fy = y * (m - 1);
    const int i0 = std::min(static_cast<int>(fx), m - 2);
    const int j0 = std::min(static_cast<int>(fy), m - 2);
    const double tx = fx - i0;
    const double ty = fy - j0;
    return (1 - tx) * (1 - ty) * sym(i0, j0) + tx * (1 - ty) * sym(i0 + 1, j0) +
           (1 - tx) * ty * sym(i0, j0 + 1) + tx * ty * sym(i0 + 1, j0 + 1);
  };
  return Graphon(KernelFamily::Custom, {static_cast<double>(m)}, lipschitz,
                 std::move(kernel));
}

double Graphon::operator()(double x, double y) const {
  check_unit_interval(x, "x");
  check_unit_interval(y, "y");
  return kernel_(x, y);
}

std::string Graphon::spec_string() const {
  std::ostringstream out;
  out << family_name(family_);
  if (family_ != KernelFamily::Custom) {
    for (double p : params_) out << ' ' << p;
  }
  return out.str();
}

Graphon parse_graphon_spec(const std::string& spec) {
  std::istringstream in(spec);
  std::string family;
  if (!(in >> family)) throw std::invalid_argument("empty graphon spec");
  auto read = [&in, &spec](const char* what) {
    double v;
    if (!(in >> v)) {
      throw std::invalid_argument("graphon spec '" + spec + "' missing " +
                                  what);
    }
    return v;
  };
  if (family == "affine" || family == "affine-distance") {
    const double a = read("a");
    const double b = read("b");
    return Graphon::affine_distance(a, b);
  }
  if (family == "rbf") return Graphon::rbf(read("s"));
  if (family == "step") {
    const double p = read("p");
    const double c = read("c");
    return Graphon::step(p, c);
  }
  if (family == "banded") {
    throw std::invalid_argument(
        "'banded' spec needs a vertex count; use resolve_graphon_spec");
  }
  throw std::invalid_argument("unknown graphon family '" + family + "'");
}

bool spec_needs_resolution(const std::string& spec) {
  std::istringstream in(spec);
  std::string family;
  return (in >> family) && family == "banded";
}

Graphon resolve_graphon_spec(const std::string& spec, int n) {
  if (!spec_needs_resolution(spec)) return parse_graphon_spec(spec);
  std::istringstream in(spec);
  std::string family;
  double bandwidth = 0;
  in >> family;
  if (!(in >> bandwidth) || bandwidth < 0) {
    throw std::invalid_argument("banded spec needs a bandwidth >= 0");
  }
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  return Graphon::step(1.0, (bandwidth + 0.5) / static_cast<double>(n));
}

Eigen::MatrixXd model_matrix(const Graphon& graphon, int n) {
  if (n < 1) throw std::invalid_argument("model_matrix needs n >= 1");
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i) {
    const double xi = latent_position(i, n);
    for (int j = i; j < n; ++j) {
      const double v = graphon(xi, latent_position(j, n));
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return p;
}

double degree_function(const Graphon& graphon, double x, int quad_points) {
  if (quad_points < 2) {
    throw std::invalid_argument("degree_function needs quad_points >= 2");
  }
  const double h = 1.0 / quad_points;
  double sum = 0.0;
  for (int k = 0; k < quad_points; ++k) {
    sum += graphon(x, (k + 0.5) * h);
  }
  return sum * h;
}

PsiPair psi_functions(const Graphon& graphon, double alpha, double x,
                      int quad_points) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw std::invalid_argument("psi_functions needs alpha in (0, 0.5)");
  }
  if (quad_points < 2) {
    throw std::invalid_argument("psi_functions needs quad_points >= 2");
  }
  const double h = alpha / quad_points;
  double right = 0.0;
  double left = 0.0;
  for (int k = 0; k < quad_points; ++k) {
    right += graphon(x, (1.0 - alpha) + (k + 0.5) * h);
    left += graphon(x, (k + 0.5) * h);
  }
  return {right * h, left * h};
}

}  // namespace seriation
