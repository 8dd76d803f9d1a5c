#include "thermogas/reports.hpp"

#include <cstdio>

namespace thermogas {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << format_number(values[i]);
  }
  out << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "time,h2_a,h2_theta,besov_a,besov_theta,linf_a,linf_theta,mass,min_rho,min_theta\n";
  for (std::size_t i = 0; i < traj.norms.size(); ++i) {
    const auto& r = traj.norms[i];
    row(out, {traj.times[i], r.h2_a, r.h2_theta, r.besov_a, r.besov_theta, r.linf_a, r.linf_theta, r.mass,
              r.min_rho, r.min_theta});
  }
}

void write_energy_csv(std::ostream& out, const EnergyReport& report) {
  out << "time,X,mass,min_rho,min_theta,identity_residual_1,identity_residual_2,I1,I2,I3,I4,I5,I6,I7,I8\n";
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const auto& id = report.identity[i];
    std::vector<double> v{report.times[i], report.X[i],        report.mass[i],   report.min_rho[i],
                          report.min_theta[i], id.residual1, id.residual2};
    v.insert(v.end(), id.I.begin(), id.I.end());
    row(out, v);
  }
}

void write_fixedpoint_csv(std::ostream& out, const FixedPointReport& report) {
  out << "iteration,e_norm,difference,ratio\n";
  for (std::size_t i = 0; i < report.differences.size(); ++i) {
    out << (i + 1) << ',' << format_number(report.iterates[i]) << ',' << format_number(report.differences[i])
        << ',';
    if (i > 0) out << format_number(report.contraction_ratios[i - 1]);
    out << '\n';
  }
}

void write_fixedpoint_summary(std::ostream& out, const FixedPointReport& report) {
  const auto& s = report.smallness;
  out << "status=" << to_string(report.status) << '\n';
  out << "converged=" << (report.converged ? "true" : "false") << '\n';
  out << "iterations=" << report.differences.size() << '\n';
  out << "final_residual=" << format_number(report.final_residual) << '\n';
  out << "data_norm=" << format_number(s.data_norm) << '\n';
  out << "radius_c=" << format_number(s.radius) << '\n';
  out << "bound_c_over_2M=" << format_number(s.bound) << '\n';
  out << "data_small=" << (s.data_small ? "true" : "false") << '\n';
  if (s.solution_norm) out << "solution_e_norm=" << format_number(*s.solution_norm) << '\n';
  if (s.contained) out << "solution_within_c=" << (*s.contained ? "true" : "false") << '\n';
  out << "direct_e_distance=" << format_number(report.direct_e_distance) << '\n';
  out << "direct_l2_distance=" << format_number(report.direct_l2_distance) << '\n';
  if (!report.message.empty()) out << "message=" << report.message << '\n';
}

void write_besov_csv(std::ostream& out, const std::vector<BesovBlock>& blocks) {
  out << "j,weighted,cumulative\n";
  for (const auto& b : blocks) out << b.j << ',' << format_number(b.weighted) << ',' << format_number(b.cumulative) << '\n';
}

void write_scaling_csv(std::ostream& out, const ScalingRow& r) {
  out << "lambda,T,dt,discrepancy,reference_norm,critical_norm_ratio\n";
  out << r.lambda << ',' << format_number(r.T) << ',' << format_number(r.dt) << ','
      << format_number(r.result.discrepancy) << ',' << format_number(r.result.reference_norm) << ','
      << format_number(r.critical_norm_ratio) << '\n';
}

}  // namespace thermogas
