// Speed-limit time of a maximally coherent qubit hovering near the horizon,
// for both bath models, compared with the numeric bound.

#include <cstdio>

#include "qsl_horizon/qsl_horizon.hpp"

int main() {
  qsl::ParameterRecord rec;
  rec.omega = 10.0;
  rec.r0 = 1.03;
  rec.tau = 0.5;
  rec.tau_d = 1.0;

  for (double gamma0 : {0.1, 10.0}) {
    rec.gamma0 = gamma0;
    const auto closed = qsl::evaluate_qsl(qsl::Model::jc, rec);
    const auto numeric = qsl::evaluate_oracle(qsl::Model::jc, rec);
    std::printf("jc gamma0=%-5g tau_qsl=%.10f numeric=%.10f\n", gamma0, closed.tau_qsl, numeric.tau_qsl);
  }
  for (double s : {0.5, 4.5}) {
    rec.s = s;
    const auto closed = qsl::evaluate_qsl(qsl::Model::dephasing, rec);
    std::printf("dephasing s=%-4g tau_qsl=%.10f ratio=%.10f\n", s, closed.tau_qsl, closed.ratio);
  }
}
