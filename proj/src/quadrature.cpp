#include "winner/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "winner/errors.hpp"

namespace winner {

GaussLaguerreRule gauss_laguerre(int n) {
  if (n < 2 || n > 192) {
    throw std::invalid_argument("gauss_laguerre: n must lie in [2, 192]");
  }
  GaussLaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  // The recurrence plateaus near 1e-16 relative for n around 192; anything
  // below one double ulp is converged for our purposes.
  const long double eps = 2e-16L;
  const int max_newton = 100;

  long double z = 0.0L;
  for (int i = 0; i < n; ++i) {
    // Stroud-Secrest style initial guesses, refined by Newton.
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const long double ai = i - 1;
      z += ((1.0L + 2.55L * ai) / (1.9L * ai)) *
           (z - static_cast<long double>(rule.nodes[i - 2]));
    }
    long double p1 = 1.0L;
    long double p2 = 0.0L;
    long double pp = 0.0L;
    bool converged = false;
    for (int it = 0; it < max_newton; ++it) {
      p1 = 1.0L;
      p2 = 0.0L;
      for (int j = 1; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L - z) * p2 - (j - 1.0L) * p3) / j;
      }
      pp = n * (p1 - p2) / z;  // d/dz L_n via L_{n-1}
      const long double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= eps * std::abs(z)) {
        converged = true;
        break;
      }
    }
    if (!converged || !std::isfinite(static_cast<double>(z))) {
      std::ostringstream os;
      os << "gauss_laguerre: Newton failed to converge for node " << i
         << " of " << n;
      throw NumericalError(os.str());
    }
    rule.nodes[i] = static_cast<double>(z);
    rule.weights[i] = static_cast<double>(-1.0L / (pp * n * p2));
  }
  return rule;
}

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  double k15 = 0.0;
  double err = 0.0;
};

PanelEstimate gk15_panel(const std::function<double(double)>& f, double a,
                         double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_g = kWg[3] * fc;
  double result_k = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double abscissa = half * kXgk[j];
    const double v = f(center - abscissa) + f(center + abscissa);
    result_k += kWgk[j] * v;
    if (j % 2 == 1) {  // odd Kronrod indices are the embedded Gauss nodes
      result_g += kWg[j / 2] * v;
    }
  }
  PanelEstimate est;
  est.k15 = result_k * half;
  est.err = std::abs((result_k - result_g) * half);
  return est;
}

struct Panel {
  double a, b;
  PanelEstimate est;
};

}  // namespace

QuadratureResult adaptive_gauss_kronrod(const std::function<double(double)>& f,
                                        double a, double b, double abs_tol,
                                        int max_segments) {
  if (!(b > a)) {
    throw std::invalid_argument("adaptive_gauss_kronrod: need a < b");
  }
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("adaptive_gauss_kronrod: abs_tol must be > 0");
  }
  std::vector<Panel> stack;
  stack.push_back(Panel{a, b, gk15_panel(f, a, b)});

  QuadratureResult out;
  const double length = b - a;
  int processed = 0;
  while (!stack.empty()) {
    const Panel panel = stack.back();
    stack.pop_back();
    if (++processed > max_segments) {
      throw NumericalError(
          "adaptive_gauss_kronrod: grid refinement exceeds budget without "
          "meeting tolerance");
    }
    const double local_tol = abs_tol * (panel.b - panel.a) / length;
    const double width = panel.b - panel.a;
    if (panel.est.err <= local_tol || width <= 1e-14 * length) {
      out.value += panel.est.k15;
      out.error_estimate += panel.est.err;
      ++out.segments;
      continue;
    }
    const double mid = 0.5 * (panel.a + panel.b);
    stack.push_back(Panel{panel.a, mid, gk15_panel(f, panel.a, mid)});
    stack.push_back(Panel{mid, panel.b, gk15_panel(f, mid, panel.b)});
  }
  return out;
}

}  // namespace winner
