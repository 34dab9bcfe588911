#ifndef LWXI_ODE_HPP
#define LWXI_ODE_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace lwxi {

// Right-hand side y' = f(t, y); writes dim values into dydt.
using OdeRhs = std::function<void(double t, const double* y, double* dydt)>;

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0 -> automatic
  std::size_t max_steps = 20'000'000;
  // Sorted interior points where a step must end (integration restarts there,
  // preserving order across right-hand-side discontinuities).
  std::vector<double> breakpoints;
  // Termination guard: integration stops where stop_event(t, y) crosses zero
  // from above (located on the dense output of the offending step).
  std::function<double(double t, const double* y)> stop_event;
};

// Continuous DOPRI5 solution: 5th-order accepted steps with the classic
// 4th-order dense interpolant.
class OdeSolution {
 public:
  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  bool stopped_by_event() const { return stopped_by_event_; }
  std::size_t step_count() const { return ts_.size() > 0 ? ts_.size() - 1 : 0; }
  std::size_t rhs_evaluations() const { return n_rhs_; }
  int dim() const { return dim_; }

  void eval(double t, double* out) const;
  std::vector<double> eval(double t) const;
  double eval_component(double t, int i) const;

 private:
  friend OdeSolution integrate_ode(int dim, const OdeRhs& rhs, const double* y0,
                                   double t0, double t1, const OdeOptions& opts);
  std::size_t locate(double t) const;

  int dim_ = 0;
  double t_begin_ = 0.0, t_end_ = 0.0;
  bool stopped_by_event_ = false;
  std::size_t n_rhs_ = 0;
  std::vector<double> ts_;      // accepted step boundaries, strictly increasing
  std::vector<double> rcont_;   // 5 * dim coefficients per step
};

OdeSolution integrate_ode(int dim, const OdeRhs& rhs, const double* y0, double t0,
                          double t1, const OdeOptions& opts = {});

}  // namespace lwxi

#endif
