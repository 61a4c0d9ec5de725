#include "n32/radial.hpp"

namespace n32::radial {

namespace {

// Indices are cyclic; c(i) reduces any nonnegative offset.
constexpr std::size_t c(std::size_t i) { return i % 3; }

} // namespace

FirstProofCertificate first_proof_certificate(const algebra::MultiPoly& f, const Point6Q& g)
{
  const auto& x = g.x;
  const auto& y = g.y;
  auto gam = [&](std::size_t i) { return Rational(x[c(i)] * y[c(i + 1)] - x[c(i + 1)] * y[c(i)]); };
  FirstProofCertificate cert;
  cert.gamma_norm2 = gam(0) * gam(0) + gam(1) * gam(1) + gam(2) * gam(2);
  if (cert.gamma_norm2 == 0)
    throw DegenerateError("first_proof_certificate: |gamma|^2 = 0 (x parallel to y)");

  const auto d = algebra::derivatives_at(f, g);
  auto Xf = [&](std::size_t i) -> const Rational& { return d.Xf[c(i)]; };
  auto XX = [&](std::size_t i, std::size_t j) -> const Rational& { return d.XXf[c(i)][c(j)]; };
  // alpha_k = x_k X_{k-1} f - x_{k-1} X_k f, same shape for beta with y.
  auto alpha = [&](std::size_t k) { return Rational(x[c(k)] * Xf(k + 2) - x[c(k + 2)] * Xf(k)); };
  auto beta = [&](std::size_t k) { return Rational(y[c(k)] * Xf(k + 2) - y[c(k + 2)] * Xf(k)); };
  auto A = [&](std::size_t i) {
    return Rational(gam(1) * XX(0, i + 1) + gam(2) * XX(1, i + 1) + gam(0) * XX(2, i + 1));
  };

  cert.lhs = cert.gamma_norm2 * d.gamma2();
  cert.rhs = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    Rational b = 2 * beta(i) - A(i);
    cert.beta_terms[i] = b * b;
    cert.rhs += cert.beta_terms[i];
    for (std::size_t j = 0; j < 3; ++j) {
      Rational t = gam(i + j) * XX(i + j, i + 1) - gam(i + j + 1) * XX(i + j + 2, i + 1) - alpha(i) * x[c(i + j + 1)];
      cert.cross_terms[3 * i + j] = t * t;
      cert.rhs += cert.cross_terms[3 * i + j];
    }
  }
  cert.residual = cert.lhs - cert.rhs;

  const Rational r1 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  auto xn2 = [&](std::size_t i) { return Rational(x[c(i)] * x[c(i)] + x[c(i + 1)] * x[c(i + 1)]); };
  auto eta = [&](std::size_t i) { return Rational(x[c(i)] * y[c(i)] + x[c(i + 1)] * y[c(i + 1)]); };
  auto xi = [&](std::size_t i) -> const Rational& { return x[c(i)]; };
  auto yi = [&](std::size_t i) -> const Rational& { return y[c(i)]; };
  const Rational scale = Rational(-1) / (2 * cert.gamma_norm2);
  for (std::size_t i = 0; i < 3; ++i) {
    const Rational u = xi(i + 2) * XX(i + 1, i) - xi(i + 1) * XX(i + 2, i);
    const Rational v = xi(i + 1) * XX(i, i) - xi(i) * XX(i + 1, i) - Xf(i + 1);
    const Rational w = xi(i) * XX(i + 2, i) - xi(i + 2) * XX(i, i) + Xf(i + 2);
    Rational next_form =
        scale * ((xi(i) * xi(i + 1) * r1 + 2 * yi(i + 2) * xn2(i) - 2 * xi(i + 2) * eta(i) + 4 * yi(i) * yi(i + 1)) * u +
                 (xi(i + 1) * xi(i + 2) * r1 - 2 * yi(i) * xn2(i + 1) + 2 * xi(i) * eta(i + 1) +
                  4 * yi(i + 1) * yi(i + 2)) * v +
                 (xi(i + 1) * xi(i + 1) * r1 + 4 * yi(i + 1) * yi(i + 1)) * w);
    Rational after_form =
        scale * ((xi(i) * xi(i + 2) * r1 - 2 * yi(i + 1) * xn2(i + 2) + 2 * xi(i + 1) * eta(i + 2) +
                  4 * yi(i + 2) * yi(i)) * u +
                 (xi(i + 1) * xi(i + 2) * r1 + 2 * yi(i) * xn2(i + 1) - 2 * xi(i) * eta(i + 1) +
                  4 * yi(i + 1) * yi(i + 2)) * w +
                 (xi(i + 2) * xi(i + 2) * r1 + 4 * yi(i + 2) * yi(i + 2)) * v);
    cert.closed_form_residuals[2 * i] = d.XYf[i][c(i + 1)] - next_form;
    cert.closed_form_residuals[2 * i + 1] = d.XYf[i][c(i + 2)] - after_form;
  }
  return cert;
}

FirstProofCertificate first_proof_certificate(const RadialPoly& f, const Point6Q& g)
{
  return first_proof_certificate(lift_radial(f), g);
}

} // namespace n32::radial
