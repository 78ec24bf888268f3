#pragma once

// Derivative-free local minimization: GSL's nmsimplex2 behind an
// evaluation-budgeted interface.

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "twistcvx/error.hpp"

namespace twistcvx {

struct MinimizeOptions {
  double step = 0.1;          // initial simplex edge
  int budget = 2000;          // function evaluations
  double size_tolerance = 1e-10;
  double target = -std::numeric_limits<double>::infinity();  // stop once f <= target
};

struct MinimizeResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

namespace detail {

struct GslCall {
  const Objective* f;
  int evaluations = 0;
  std::exception_ptr error;
  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();
};

inline double gsl_trampoline(const gsl_vector* v, void* params) {
  auto* call = static_cast<GslCall*>(params);
  if (call->error) return std::numeric_limits<double>::infinity();
  try {
    const std::span<const double> x(gsl_vector_const_ptr(v, 0), v->size);
    ++call->evaluations;
    const double y = (*call->f)(x);
    if (y < call->best) {
      call->best = y;
      call->best_x.assign(x.begin(), x.end());
    }
    return std::isfinite(y) ? y : std::numeric_limits<double>::max();
  } catch (...) {
    call->error = std::current_exception();
    return std::numeric_limits<double>::infinity();
  }
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

}  // namespace detail

/// Minimizes f from x0. Stops on budget, on simplex size below tolerance, or
/// once f reaches the target. The returned point is the best one evaluated.
inline MinimizeResult nelder_mead(const Objective& f, const std::vector<double>& x0, const MinimizeOptions& opt = {}) {
  static std::once_flag handler_off;
  std::call_once(handler_off, [] { gsl_set_error_handler_off(); });

  MinimizeResult out;
  out.x = x0;
  detail::GslCall call{&f};
  if (opt.budget <= 0 || x0.empty()) {
    if (!x0.empty() && opt.budget > 0) out.value = f(x0);
    return out;
  }
  const std::size_t n = x0.size();
  std::unique_ptr<gsl_vector, detail::VectorDeleter> start(gsl_vector_alloc(n)), steps(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(start.get(), i, x0[i]);
    gsl_vector_set(steps.get(), i, opt.step);
  }
  std::unique_ptr<gsl_multimin_fminimizer, detail::MinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_function fn{&detail::gsl_trampoline, n, &call};
  if (gsl_multimin_fminimizer_set(m.get(), &fn, start.get(), steps.get()) != GSL_SUCCESS)
    throw NumericError("nelder_mead: initialization failed");
  while (call.evaluations < opt.budget && !call.error && call.best > opt.target) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), opt.size_tolerance) == GSL_SUCCESS) break;
  }
  if (call.error) std::rethrow_exception(call.error);
  out.x = call.best_x;
  out.value = call.best;
  out.evaluations = call.evaluations;
  return out;
}

}  // namespace twistcvx
