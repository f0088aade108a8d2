#include "dhred/minkowski.hpp"

#include <stdexcept>

namespace dhred {

Gradient gradient(const ExprPtr& u, const VariableSpace& space) {
  Gradient g{space, {}};
  g.comp.reserve(space.spacetime.size());
  for (const auto& x : space.spacetime) g.comp.push_back(differentiate(u, x));
  return g;
}

ExprPtr mdot(const Gradient& a, const Gradient& b) {
  if (a.comp.size() != b.comp.size()) throw std::invalid_argument("mdot: dimension mismatch");
  std::vector<ExprPtr> terms;
  terms.reserve(a.comp.size());
  terms.push_back(a.comp[0] * b.comp[0]);
  for (std::size_t i = 1; i < a.comp.size(); ++i)
    terms.push_back(constant(-1) * a.comp[i] * b.comp[i]);
  return sum(std::move(terms));
}

Rational mdot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("mdot: dimension mismatch");
  Rational acc = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) acc -= a[i] * b[i];
  return acc;
}

ExprPtr dalembertian(const ExprPtr& u, const VariableSpace& space) {
  std::vector<ExprPtr> terms;
  terms.reserve(space.spacetime.size());
  for (std::size_t i = 0; i < space.spacetime.size(); ++i) {
    ExprPtr dd = differentiate(differentiate(u, space.spacetime[i]), space.spacetime[i]);
    terms.push_back(i == 0 ? dd : constant(-1) * dd);
  }
  return sum(std::move(terms));
}

ExprPtr MixedHessian::trace() const {
  std::vector<ExprPtr> d;
  for (std::size_t i = 0; i < h.size(); ++i) d.push_back(h[i][i]);
  return sum(std::move(d));
}

MixedHessian mixed_hessian(const ExprPtr& u, const VariableSpace& space) {
  const std::size_t m = space.spacetime.size();
  MixedHessian out{space, u, std::vector<std::vector<ExprPtr>>(m, std::vector<ExprPtr>(m))};
  std::vector<ExprPtr> first;
  first.reserve(m);
  for (const auto& x : space.spacetime) first.push_back(differentiate(u, x));
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t nu = 0; nu < m; ++nu) {
      ExprPtr dd = differentiate(first[mu], space.spacetime[nu]);
      out.h[mu][nu] = mu == 0 ? dd : constant(-1) * dd;
    }
  return out;
}

QuadMat eval_matrix(const std::vector<std::vector<ExprPtr>>& m,
                    const std::map<std::string, Quad>& point) {
  QuadMat out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out.at(i, j) = eval_quad(m[i][j], point).value;
  return out;
}

namespace {

std::vector<Quad> minors_at_one(const std::vector<std::vector<ExprPtr>>& m,
                                const std::map<std::string, Rational>& pt) {
  try {
    QuadMat num = eval_matrix(m, to_quad_point(pt));
    return minor_sums(num);
  } catch (const std::exception&) {  // nothing may escape the parallel region
    return {};
  }
}

}  // namespace

std::vector<std::vector<Quad>> minor_sums_at_points_serial(
    const std::vector<std::vector<ExprPtr>>& m, const SampleSet& samples) {
  std::vector<std::vector<Quad>> out(samples.points.size());
  for (std::size_t i = 0; i < samples.points.size(); ++i)
    out[i] = minors_at_one(m, samples.points[i]);
  return out;
}

std::vector<std::vector<Quad>> minor_sums_at_points(const std::vector<std::vector<ExprPtr>>& m,
                                                    const SampleSet& samples) {
  std::vector<std::vector<Quad>> out(samples.points.size());
  const long n = static_cast<long>(samples.points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = minors_at_one(m, samples.points[i]);
  return out;
}

}  // namespace dhred
