#include "rfl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

namespace rfl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline Complex scaled_disc_term(Point z, Point c, double r) {
  const Complex inv = 1.0 / (z - c);
  const Complex inv2 = inv * inv;
  return r * std::conj(z - c) * inv2 - r * r * r * inv2 * inv;
}

struct Pending {
  double bound;
  int level;
  std::size_t index;

  bool operator<(const Pending& o) const {
    // Max-heap on bound; among equal bounds the earliest node first.
    return std::tie(bound, o.level, o.index) < std::tie(o.bound, level, index);
  }
};

struct Term {
  std::size_t first_leaf;
  int level;
  Complex value;
};

}  // namespace

FastEvaluator::FastEvaluator(const LevelMeasure& m) : m_(&m) {
  const auto& t = m.tree();
  const int n = m.level();
  const double rn = m.disc_radius();
  centroid_.resize(n);
  second_moment_.resize(n);
  proxy_hull_.resize(n);
  for (int k = n - 1; k >= 0; --k) {
    const std::uint64_t q = t.children_per_node(k);
    centroid_[k].resize(t.count(k));
    second_moment_[k].resize(t.count(k));
    proxy_hull_[k].resize(t.count(k));
    const double rk = t.radius(k);
    for (std::size_t j = 0; j < t.count(k); ++j) {
      // Children carry equal mass, so the centroid is their plain average.
      CompensatedSum gx, gy;
      for (std::size_t c = j * q; c < (j + 1) * q; ++c) {
        const Point g = k + 1 == n ? t.centers(n)[c] : centroid_[k + 1][c];
        gx.add(g.real());
        gy.add(g.imag());
      }
      const Point g(gx.value() / double(q), gy.value() / double(q));
      const double child_mass = t.radius(k + 1);
      double s2 = 0.0;
      for (std::size_t c = j * q; c < (j + 1) * q; ++c) {
        const Point gc = k + 1 == n ? t.centers(n)[c] : centroid_[k + 1][c];
        const double own = k + 1 == n ? 0.5 * rn * rn * rn : second_moment_[k + 1][c];
        s2 += own + child_mass * std::norm(gc - g);
      }
      centroid_[k][j] = g;
      second_moment_[k][j] = s2;
      proxy_hull_[k][j] = std::max(m.hull_radius(k, j), std::abs(g - t.centers(k)[j]) + rk);
    }
  }
}

IntegralResult FastEvaluator::evaluate(Point z, double tol, FastStats* stats) const {
  if (!(tol > 0.0)) throw std::invalid_argument("t1_fast: tol must be positive");
  const LevelMeasure& m = *m_;
  m.require_off_support(z);
  const auto& t = m.tree();
  const int n = m.level();
  const double rn = m.disc_radius();

  std::priority_queue<Pending> heap;
  std::vector<Term> terms;
  double budget = 0.0;
  FastStats st;

  const auto consider = [&](int k, std::size_t j) {
    if (k == n) {
      terms.push_back({j, n, scaled_disc_term(z, t.centers(n)[j], rn)});
      ++st.terms;
      return false;
    }
    const double d = std::abs(z - t.centers(k)[j]) - proxy_hull_[k][j];
    if (d <= 0.0) return true;
    const double rk = t.radius(k);
    const double e = 5.0 * (second_moment_[k][j] + 0.5 * rk * rk * rk) / (d * d * d);
    heap.push({e, k, j});
    budget += e;
    return false;
  };
  // Returns nodes that must be split without ever being approximated.
  std::vector<std::pair<int, std::size_t>> stack;
  const auto expand = [&](int k, std::size_t j) {
    ++st.expansions;
    const std::uint64_t q = t.children_per_node(k);
    for (std::size_t c = j * q; c < (j + 1) * q; ++c)
      if (consider(k + 1, c)) stack.emplace_back(k + 1, c);
  };

  if (consider(0, 0)) stack.emplace_back(0, 0);
  while (!stack.empty()) {
    const auto [k, j] = stack.back();
    stack.pop_back();
    expand(k, j);
  }
  while (budget > tol && !heap.empty()) {
    const Pending p = heap.top();
    heap.pop();
    budget -= p.bound;
    expand(p.level, p.index);
    while (!stack.empty()) {
      const auto [k, j] = stack.back();
      stack.pop_back();
      expand(k, j);
    }
  }

  double spent = 0.0;
  while (!heap.empty()) {
    const Pending p = heap.top();
    heap.pop();
    spent += p.bound;
    const double rk = t.radius(p.level);
    const Point g = centroid_[p.level][p.index];
    terms.push_back({t.descendants(p.level, p.index, n).first, p.level, scaled_disc_term(z, g, rk)});
    ++st.terms;
  }

  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return std::tie(a.first_leaf, a.level) < std::tie(b.first_leaf, b.level);
  });
  CompensatedComplexSum acc;
  for (const auto& term : terms) acc.add(term.value);

  IntegralResult out;
  out.method = Method::closed_form;
  out.value = acc.value();
  out.error_bound = spent + 16.0 * kEps * acc.abs_total();
  out.converged = spent <= tol;
  if (stats) *stats = st;
  return out;
}

IntegralResult t1_fast(const LevelMeasure& m, Point z, double tol) {
  return FastEvaluator(m).evaluate(z, tol);
}

}  // namespace rfl
