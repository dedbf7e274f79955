#include <algorithm>
#include <cmath>

#include "vbe/optimize.hpp"

namespace vbe {

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::TargetReached: return "target_reached";
    case StopReason::GradientSmall: return "gradient_small";
    case StopReason::IterationCap: return "iteration_cap";
    case StopReason::LineSearchFailed: return "line_search_failed";
  }
  return "?";
}

namespace {

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  double d = 0.0;  // directional derivative
  RealVector x;
  RealVector g;
};

class LineSearch {
 public:
  LineSearch(const Objective& f, const RealVector& x, const RealVector& p, double f0, double d0,
             const BfgsOptions& o)
      : f_(f), x_(x), p_(p), f0_(f0), d0_(d0), c1_(o.c1), c2_(o.c2) {}

  // Strong-Wolfe step. Returns false when no acceptable point was found.
  bool run(double alpha0, Point& out) {
    Point prev{0.0, f0_, d0_, x_, {}};
    double alpha = alpha0;
    for (int i = 0; i < kMaxBracket; ++i) {
      Point cur = eval(alpha);
      if (!std::isfinite(cur.f)) {
        alpha = 0.5 * (prev.alpha + alpha);
        continue;
      }
      if (cur.f > f0_ + c1_ * alpha * d0_ || (i > 0 && cur.f >= prev.f)) return zoom(prev, cur, out);
      if (std::abs(cur.d) <= -c2_ * d0_) {
        out = std::move(cur);
        return true;
      }
      if (cur.d >= 0) return zoom(cur, prev, out);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return fallback(out);
  }

 private:
  static constexpr int kMaxBracket = 40;
  static constexpr int kMaxZoom = 40;

  Point eval(double alpha) {
    Point pt;
    pt.alpha = alpha;
    pt.x = x_ + alpha * p_;
    pt.f = f_(pt.x, pt.g);
    pt.d = pt.g.dot(p_);
    if (std::isfinite(pt.f) && pt.f <= f0_ + c1_ * alpha * d0_ && (!best_ || pt.f < best_->f)) best_ = pt;
    return pt;
  }

  static double cubic_min(const Point& a, const Point& b) {
    const double d1 = a.d + b.d - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.d * b.d;
    if (disc < 0) return std::numeric_limits<double>::quiet_NaN();
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    return b.alpha - (b.alpha - a.alpha) * (b.d + d2 - d1) / (b.d - a.d + 2.0 * d2);
  }

  bool zoom(Point lo, Point hi, Point& out) {
    for (int j = 0; j < kMaxZoom; ++j) {
      const double a = std::min(lo.alpha, hi.alpha), b = std::max(lo.alpha, hi.alpha);
      const double width = b - a;
      if (width <= 1e-16 * std::max(1.0, b)) break;
      double alpha = cubic_min(lo, hi);
      if (!std::isfinite(alpha) || alpha < a + 0.1 * width || alpha > b - 0.1 * width) alpha = 0.5 * (a + b);
      Point cur = eval(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0_ + c1_ * alpha * d0_ || cur.f >= lo.f) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.d) <= -c2_ * d0_) {
          out = std::move(cur);
          return true;
        }
        if (cur.d * (hi.alpha - lo.alpha) >= 0) hi = lo;
        lo = std::move(cur);
      }
    }
    return fallback(out);
  }

  // Accept the best sufficient-decrease point if curvature could not be met.
  bool fallback(Point& out) {
    if (!best_ || !(best_->f < f0_)) return false;
    out = *best_;
    return true;
  }

  const Objective& f_;
  const RealVector& x_;
  const RealVector& p_;
  double f0_, d0_, c1_, c2_;
  std::optional<Point> best_;
};

}  // namespace

BfgsResult bfgs_minimize(const Objective& f, const RealVector& x0, const BfgsOptions& opts) {
  const Eigen::Index n = x0.size();
  BfgsResult res;
  res.x = x0;
  RealVector g(n);
  double fx = f(res.x, g);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  bool h_is_identity = true;
  bool scaled = false;

  for (int it = 0;; ++it) {
    const double gn = g.norm();
    res.f = fx;
    res.grad_norm = gn;
    res.iterations = it;
    if (opts.record_trace) res.trace.push_back({it, fx, gn});
    if (fx <= opts.f_target) {
      res.converged = true;
      res.reason = StopReason::TargetReached;
      break;
    }
    const double tol = opts.grad_tol_relative_to_sqrt ? 2.0 * std::sqrt(std::max(fx, 0.0)) * opts.grad_tol
                                                      : opts.grad_tol;
    if (gn <= tol || n == 0) {
      res.converged = true;
      res.reason = StopReason::GradientSmall;
      break;
    }
    if (it >= opts.max_iterations) {
      res.reason = StopReason::IterationCap;
      break;
    }

    Point step;
    bool ok = false;
    for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
      if (attempt == 1) {
        if (h_is_identity) break;
        h.setIdentity();
        h_is_identity = true;
        scaled = false;
      }
      RealVector p = -(h * g);
      double d0 = g.dot(p);
      if (!(d0 < 0)) {
        h.setIdentity();
        h_is_identity = true;
        scaled = false;
        p = -g;
        d0 = -gn * gn;
      }
      const double alpha0 = h_is_identity ? std::min(1.0, 1.0 / gn) : 1.0;
      LineSearch ls(f, res.x, p, fx, d0, opts);
      ok = ls.run(alpha0, step);
    }
    if (!ok) {
      res.reason = StopReason::LineSearchFailed;
      break;
    }

    const RealVector s = step.x - res.x;
    const RealVector y = step.g - g;
    const double sy = s.dot(y);
    res.x = std::move(step.x);
    g = std::move(step.g);
    fx = step.f;
    if (sy > 1e-14 * s.norm() * y.norm() && sy > 0) {
      if (!scaled) {
        h = Eigen::MatrixXd::Identity(n, n) * (sy / y.squaredNorm());
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const RealVector hy = h * y;
      const double yhy = y.dot(hy);
      h.noalias() -= rho * (hy * s.transpose() + s * hy.transpose());
      h.noalias() += (rho * rho * yhy + rho) * (s * s.transpose());
      h_is_identity = false;
    }
  }
  return res;
}

}  // namespace vbe
