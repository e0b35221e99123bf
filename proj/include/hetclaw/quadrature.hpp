#ifndef HETCLAW_QUADRATURE_HPP_
#define HETCLAW_QUADRATURE_HPP_

#include <utility>
#include <vector>

namespace hetclaw {

// Gauss-Legendre rule on [-1, 1]; nodes/weights computed once per order and cached.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_rule(int n);

// Integrates fn over [a, b] with an n-point Gauss rule. Orientation-aware: a > b
// yields the negated integral.
template <typename Fn>
double gauss_integrate(Fn&& fn, double a, double b, int n = 32) {
  const GaussRule& rule = gauss_rule(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  }
  return acc * half;
}

}  // namespace hetclaw

#endif  // HETCLAW_QUADRATURE_HPP_
