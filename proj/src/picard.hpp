#pragma once

#include <string>
#include <vector>

#include "model.hpp"

namespace ch6 {

// Successive-approximation solver on [0, T1].  Iterate j+1 solves the linear
// equation obtained by freezing the coefficients of the nonlinear bracket at
// iterate j:
//
//   v_t = delta lap^3 v - kappa0 lap^2 v
//         - lap[ kappa1 (w^2 - kappa2^2) lap v + kappa1 w grad w . grad v
//                - (w-1)^2 (w+1) (w^2 + h0) (v+1) ],   w = previous iterate,
//
// starting from w == 0 and always from the same initial state.  The iterate
// trajectories are kept at half-step resolution so the RK4 stages of the next
// sweep see exact coefficient samples.
struct PicardConfig {
  double t1 = 0.1;
  int jmax = 6;
  int inner_steps = 128;
  bool dealias = true;
};

struct PicardResult {
  std::vector<double> sup_h2;    // sup_t ||A^j||_{H2}, j = 1..jmax
  std::vector<double> diff_sup;  // d_j = sup_t ||A^j - A^{j-1}||_{H2}
  std::vector<double> ratios;    // lambda_j = d_{j+1} / d_j
  bool contraction = false;      // every measured ratio < 1
  bool degenerate = false;       // differences at roundoff, ratios meaningless
  std::string message;
  RealField final_iterate;       // A^{jmax}(T1)
};

PicardResult picard_local_solve(const RealField& u0, const PhysicalParams& p,
                                const PicardConfig& cfg);

}  // namespace ch6
