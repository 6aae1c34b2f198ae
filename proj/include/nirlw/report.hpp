#pragma once
// CSV emission. Numbers are written with std::to_chars (shortest round-trip
// form, '.' decimal separator, independent of the global locale); optional
// columns are left empty when a value was not recorded.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "nirlw/experiments.hpp"

namespace nirlw {

std::string format_number(double v);

/// <name>_p<p>_r<r>_seed<seed>, the file stem of a run's outputs.
std::string output_stem(const RunReport& report);

/// n,k,t,t_tilde,omega,alpha,r_n,F_residual,d2,gamma
void write_iterations_csv(std::ostream& out, const IterationLog& log);

/// preset,p,r,delta,seed,n_star,N_p,err_L2,err_Lp,reason,wall_ms
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const RunReport& report);

/// x[,y],c_true,c_rec
void write_profile_csv(std::ostream& out, const RunReport& report, const GridFunction& truth);

/// Writes <stem>_iterations.csv, <stem>_profile.csv and <stem>_summary.csv
/// into dir (created if missing). Returns the paths written.
std::vector<std::filesystem::path> write_run_outputs(const std::filesystem::path& dir,
                                                     const RunReport& report,
                                                     const GridFunction& truth);

/// Writes summary.csv with one row per report.
std::filesystem::path write_summary_csv(const std::filesystem::path& dir,
                                        const std::vector<RunReport>& reports);

}  // namespace nirlw
